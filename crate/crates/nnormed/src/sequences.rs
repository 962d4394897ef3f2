//! Finite-prefix convergence, Cauchy, and closed-graph checking. Verdicts
//! here are evidence at sample scale, never proofs: the definitions quantify
//! over infinite tails and all anchor choices, which a finite run cannot
//! observe. Every report carries an `evidence_only` flag for that reason.

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::nnorm::NNorm;
use crate::vector::Vector;

/// A finite prefix of a sequence together with the anchor sets to quantify
/// over. When `anchor_sets` is empty, the standard-basis (n-1)-subsets are
/// used as the spanning surrogate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SequenceSample {
    pub terms: Vec<Element>,
    #[serde(default, rename = "anchors")]
    pub anchor_sets: Vec<Vec<Element>>,
}

impl SequenceSample {
    pub fn new(terms: Vec<Element>, anchor_sets: Vec<Vec<Element>>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyTuple);
        }
        for t in &terms[1..] {
            if !terms[0].same_kind(t) {
                return Err(Error::KindMismatch { index: 0 });
            }
        }
        Ok(SequenceSample { terms, anchor_sets })
    }

    /// Anchor sets to use: the provided ones plus, when none were given, all
    /// (n-1)-subsets of a spanning family for the element kind.
    fn effective_anchor_sets(&self, arity: usize) -> Result<Vec<Vec<Element>>> {
        if !self.anchor_sets.is_empty() {
            for (i, set) in self.anchor_sets.iter().enumerate() {
                if set.len() != arity - 1 {
                    return Err(Error::ArityMismatch {
                        expected: arity - 1,
                        got: self.anchor_sets[i].len(),
                    });
                }
            }
            return Ok(self.anchor_sets.clone());
        }
        let basis: Vec<Element> = match &self.terms[0] {
            Element::Vector(v) => (0..v.dim())
                .map(|i| Element::Vector(Vector::basis(v.dim(), i)))
                .collect(),
            Element::Polynomial(_) => {
                let len = Element::common_pad(&self.terms).max(arity);
                (0..len)
                    .map(|j| {
                        let mut c = vec![0.0; j + 1];
                        c[j] = 1.0;
                        Element::polynomial(c)
                    })
                    .collect::<Result<_>>()?
            }
            Element::Pair(_) => {
                return Err(Error::Precondition(
                    "anchor sets must be given explicitly for product-space sequences".into(),
                ))
            }
        };
        let sets = combinations(&basis, arity - 1);
        if sets.is_empty() {
            return Err(Error::Precondition(
                "spanning family too small for the norm arity".into(),
            ));
        }
        Ok(sets)
    }
}

fn combinations(items: &[Element], k: usize) -> Vec<Vec<Element>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, item) in items.iter().enumerate() {
        for mut rest in combinations(&items[i + 1..], k - 1) {
            let mut set = vec![item.clone()];
            set.append(&mut rest);
            out.push(set);
        }
    }
    out
}

/// Verdict on finite-sample convergence or Cauchy behavior.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceReport {
    pub converged: bool,
    pub limit: Option<Element>,
    pub max_tail_norm: f64,
    pub per_anchor_tail: Vec<f64>,
    pub tolerance: f64,
    /// Always true: a finite prefix can only supply evidence.
    pub evidence_only: bool,
}

fn tail_start(len: usize, tail_fraction: f64) -> Result<usize> {
    if !(tail_fraction > 0.0 && tail_fraction <= 1.0) {
        return Err(Error::InvalidInput(
            "tail_fraction must lie in (0, 1]".into(),
        ));
    }
    let tail_len = ((len as f64) * tail_fraction).ceil().max(1.0) as usize;
    Ok(len - tail_len.min(len))
}

/// Evaluates `||x_k - x, a_2, ..., a_n||` for every anchor set over the
/// trailing fraction of terms; converged iff all values stay within `tol`.
pub fn check_convergence(
    norm: &NNorm,
    seq: &SequenceSample,
    candidate_limit: &Element,
    tail_fraction: f64,
    tol: f64,
) -> Result<ConvergenceReport> {
    if !seq.terms[0].same_kind(candidate_limit) {
        return Err(Error::KindMismatch { index: 0 });
    }
    let start = tail_start(seq.terms.len(), tail_fraction)?;
    let anchor_sets = seq.effective_anchor_sets(norm.arity())?;
    let mut per_anchor = Vec::with_capacity(anchor_sets.len());
    for anchors in &anchor_sets {
        let mut worst = 0.0_f64;
        for term in &seq.terms[start..] {
            let mut tuple = vec![term.sub(candidate_limit)?];
            tuple.extend(anchors.iter().cloned());
            worst = worst.max(norm.eval(&tuple)?);
        }
        per_anchor.push(worst);
    }
    let max_tail = per_anchor.iter().fold(0.0_f64, |m, &v| m.max(v));
    Ok(ConvergenceReport {
        converged: max_tail <= tol,
        limit: Some(candidate_limit.clone()),
        max_tail_norm: max_tail,
        per_anchor_tail: per_anchor,
        tolerance: tol,
        evidence_only: true,
    })
}

/// Cauchy check over all pairs (l, k) in the trailing fraction of terms.
pub fn check_cauchy(
    norm: &NNorm,
    seq: &SequenceSample,
    tail_fraction: f64,
    tol: f64,
) -> Result<ConvergenceReport> {
    let start = tail_start(seq.terms.len(), tail_fraction)?;
    let tail = &seq.terms[start..];
    let anchor_sets = seq.effective_anchor_sets(norm.arity())?;
    let mut per_anchor = Vec::with_capacity(anchor_sets.len());
    for anchors in &anchor_sets {
        let mut worst = 0.0_f64;
        for (l, xl) in tail.iter().enumerate() {
            for xk in &tail[l + 1..] {
                let mut tuple = vec![xl.sub(xk)?];
                tuple.extend(anchors.iter().cloned());
                worst = worst.max(norm.eval(&tuple)?);
            }
        }
        per_anchor.push(worst);
    }
    let max_tail = per_anchor.iter().fold(0.0_f64, |m, &v| m.max(v));
    Ok(ConvergenceReport {
        converged: max_tail <= tol,
        limit: None,
        max_tail_norm: max_tail,
        per_anchor_tail: per_anchor,
        tolerance: tol,
        evidence_only: true,
    })
}

/// Closed-graph verdict for a matrix operator at sample scale.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphReport {
    pub premises_hold: bool,
    pub x_convergence: ConvergenceReport,
    pub y_convergence: ConvergenceReport,
    /// Graph-norm residual of (x_limit, y_limit) against (x_limit, T x_limit):
    /// the X part vanishes, so this equals the Y residual exactly.
    pub residual: f64,
    pub closed_at_sample_scale: bool,
    pub evidence_only: bool,
}

fn apply_operator(matrix: &[Vec<f64>], x: &Vector) -> Result<Vector> {
    let mut out = Vec::with_capacity(matrix.len());
    for (i, row) in matrix.iter().enumerate() {
        if row.len() != x.dim() {
            return Err(Error::DimensionMismatch {
                index: i,
                expected: x.dim(),
                got: row.len(),
            });
        }
        out.push(crate::linalg::dot(row, x.coords()));
    }
    Vector::new(out)
}

/// Checks, at sample scale, that `x_k -> x_limit` and `T x_k -> y_limit`
/// imply `T(x_limit) = y_limit`, using the sum-form graph norm on the
/// product space for the residual.
#[allow(clippy::too_many_arguments)]
pub fn check_closed_graph(
    norm_x: &NNorm,
    norm_y: &NNorm,
    operator: &[Vec<f64>],
    seq: &SequenceSample,
    x_limit: &Element,
    y_limit: &Element,
    tail_fraction: f64,
    tol: f64,
) -> Result<GraphReport> {
    let x_lim = x_limit.as_vector()?;
    let y_lim = y_limit.as_vector()?;

    let x_report = check_convergence(norm_x, seq, x_limit, tail_fraction, tol)?;

    let image_terms: Vec<Element> = seq
        .terms
        .iter()
        .map(|t| Ok(Element::Vector(apply_operator(operator, t.as_vector()?)?)))
        .collect::<Result<_>>()?;
    let image_seq = SequenceSample::new(image_terms, vec![])?;
    let y_report = check_convergence(norm_y, &image_seq, y_limit, tail_fraction, tol)?;

    // Residual through the product graph norm: pair (x_limit, T x_limit)
    // against (x_limit, y_limit) over all anchor pairs.
    let graph_norm = NNorm::product_sum(norm_x.clone(), norm_y.clone())?;
    let t_x_limit = apply_operator(operator, x_lim)?;
    let defect = Element::Vector(t_x_limit.sub(y_lim));
    let x_anchor_sets = seq.effective_anchor_sets(norm_x.arity())?;
    let y_anchor_sets = image_seq.effective_anchor_sets(norm_y.arity())?;
    let zero_x = Element::Vector(Vector::zeros(x_lim.dim()));
    let mut residual = 0.0_f64;
    for xa in &x_anchor_sets {
        for ya in &y_anchor_sets {
            let mut tuple = vec![Element::pair(zero_x.clone(), defect.clone())?];
            for (a, b) in xa.iter().zip(ya) {
                tuple.push(Element::pair(a.clone(), b.clone())?);
            }
            residual = residual.max(graph_norm.eval(&tuple)?);
        }
    }

    let premises_hold = x_report.converged && y_report.converged;
    Ok(GraphReport {
        premises_hold,
        x_convergence: x_report,
        y_convergence: y_report,
        residual,
        closed_at_sample_scale: premises_hold && residual <= tol,
        evidence_only: true,
    })
}

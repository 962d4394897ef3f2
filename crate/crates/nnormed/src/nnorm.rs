//! The four concrete n-norms, linear-dependence detection, axiom checking,
//! and ball membership.

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg;

/// Relative pivot threshold coupling the algebraic and numeric notions of
/// linear dependence.
pub const RANK_TOL: f64 = 1e-9;

/// Values below `ZERO_TOL * scale` count as a zero n-norm in axiom checks.
pub const ZERO_TOL: f64 = 1e-9;

/// An n-norm evaluator over n-tuples of elements.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNNorm", into = "RawNNorm")]
pub struct NNorm {
    arity: usize,
    kind: NNormKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum NNormKind {
    /// `|det|` of the n x n matrix of rows; requires ambient dimension n.
    Determinant,
    /// Product of largest absolute coefficients, zero on dependent tuples.
    PolyCoeffProduct,
    /// Sum of two component norms on a product space.
    ProductSum(Box<(NNorm, NNorm)>),
    /// Max of two component norms on a product space.
    ProductMax(Box<(NNorm, NNorm)>),
}

#[derive(Serialize, Deserialize)]
struct RawNNorm {
    kind: String,
    arity: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    components: Vec<NNorm>,
}

impl TryFrom<RawNNorm> for NNorm {
    type Error = Error;
    fn try_from(raw: RawNNorm) -> Result<Self> {
        match raw.kind.as_str() {
            "determinant" => NNorm::determinant(raw.arity),
            "poly_coeff_product" => NNorm::poly_coeff_product(raw.arity),
            "product_sum" | "product_max" => {
                let mut it = raw.components.into_iter();
                let (a, b) = match (it.next(), it.next()) {
                    (Some(a), Some(b)) => (a, b),
                    _ => {
                        return Err(Error::InvalidInput(
                            "product norm needs exactly two components".into(),
                        ))
                    }
                };
                if raw.kind == "product_sum" {
                    NNorm::product_sum(a, b)
                } else {
                    NNorm::product_max(a, b)
                }
            }
            other => Err(Error::InvalidInput(format!("unknown norm kind '{other}'"))),
        }
    }
}

impl From<NNorm> for RawNNorm {
    fn from(norm: NNorm) -> Self {
        let (kind, components) = match norm.kind {
            NNormKind::Determinant => ("determinant", vec![]),
            NNormKind::PolyCoeffProduct => ("poly_coeff_product", vec![]),
            NNormKind::ProductSum(c) => ("product_sum", vec![c.0, c.1]),
            NNormKind::ProductMax(c) => ("product_max", vec![c.0, c.1]),
        };
        RawNNorm {
            kind: kind.to_string(),
            arity: norm.arity,
            components,
        }
    }
}

/// Outcome of the linear-dependence check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DependenceVerdict {
    pub dependent: bool,
    pub rank: usize,
    pub tolerance_used: f64,
}

impl NNorm {
    pub fn determinant(arity: usize) -> Result<NNorm> {
        if arity < 2 {
            return Err(Error::InvalidInput("n-norm arity must be at least 2".into()));
        }
        Ok(NNorm {
            arity,
            kind: NNormKind::Determinant,
        })
    }

    pub fn poly_coeff_product(arity: usize) -> Result<NNorm> {
        if arity < 2 {
            return Err(Error::InvalidInput("n-norm arity must be at least 2".into()));
        }
        Ok(NNorm {
            arity,
            kind: NNormKind::PolyCoeffProduct,
        })
    }

    pub fn product_sum(left: NNorm, right: NNorm) -> Result<NNorm> {
        if left.arity != right.arity {
            return Err(Error::ArityMismatch {
                expected: left.arity,
                got: right.arity,
            });
        }
        Ok(NNorm {
            arity: left.arity,
            kind: NNormKind::ProductSum(Box::new((left, right))),
        })
    }

    pub fn product_max(left: NNorm, right: NNorm) -> Result<NNorm> {
        if left.arity != right.arity {
            return Err(Error::ArityMismatch {
                expected: left.arity,
                got: right.arity,
            });
        }
        Ok(NNorm {
            arity: left.arity,
            kind: NNormKind::ProductMax(Box::new((left, right))),
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn kind(&self) -> &NNormKind {
        &self.kind
    }

    /// Evaluates the n-norm on a tuple of exactly `arity` elements.
    pub fn eval(&self, tuple: &[Element]) -> Result<f64> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: tuple.len(),
            });
        }
        match &self.kind {
            NNormKind::Determinant => {
                let n = self.arity;
                let mut rows = Vec::with_capacity(n);
                for (i, e) in tuple.iter().enumerate() {
                    let v = e.as_vector().map_err(|_| Error::KindMismatch { index: i })?;
                    if v.dim() != n {
                        return Err(Error::DimensionMismatch {
                            index: i,
                            expected: n,
                            got: v.dim(),
                        });
                    }
                    rows.push(v.coords().to_vec());
                }
                Ok(linalg::det(&rows).abs())
            }
            NNormKind::PolyCoeffProduct => {
                let mut product = 1.0;
                for (i, e) in tuple.iter().enumerate() {
                    let p = e
                        .as_polynomial()
                        .map_err(|_| Error::KindMismatch { index: i })?;
                    product *= p.max_abs_coeff();
                }
                let verdict = is_linearly_dependent(tuple, RANK_TOL)?;
                if verdict.dependent {
                    Ok(0.0)
                } else {
                    Ok(product)
                }
            }
            NNormKind::ProductSum(c) => {
                let (lt, rt) = split_pairs(tuple)?;
                Ok(c.0.eval(&lt)? + c.1.eval(&rt)?)
            }
            NNormKind::ProductMax(c) => {
                let (lt, rt) = split_pairs(tuple)?;
                Ok(c.0.eval(&lt)?.max(c.1.eval(&rt)?))
            }
        }
    }

    /// Ball membership: `||point - center, e_2, ..., e_n|| < r` (open) or
    /// `<= r` (closed), with the anchors filling slots 2..n.
    pub fn ball_contains(
        &self,
        anchors: &[Element],
        center: &Element,
        radius: f64,
        open: bool,
        point: &Element,
    ) -> Result<bool> {
        if radius <= 0.0 {
            return Err(Error::InvalidInput("ball radius must be positive".into()));
        }
        if anchors.len() + 1 != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity - 1,
                got: anchors.len(),
            });
        }
        let mut tuple = vec![point.sub(center)?];
        tuple.extend(anchors.iter().cloned());
        let value = self.eval(&tuple)?;
        Ok(if open { value < radius } else { value <= radius })
    }
}

fn split_pairs(tuple: &[Element]) -> Result<(Vec<Element>, Vec<Element>)> {
    let mut left = Vec::with_capacity(tuple.len());
    let mut right = Vec::with_capacity(tuple.len());
    for (i, e) in tuple.iter().enumerate() {
        let p = e.as_pair().map_err(|_| Error::KindMismatch { index: i })?;
        left.push(p.left.clone());
        right.push(p.right.clone());
    }
    Ok((left, right))
}

/// Determines whether the tuple is linearly dependent: rank by row
/// elimination with pivot threshold `tol` times the largest absolute entry.
/// Polynomials embed as coefficient vectors padded to a common length; for
/// pairs both sides must be dependent (the product-space nullity condition).
pub fn is_linearly_dependent(tuple: &[Element], tol: f64) -> Result<DependenceVerdict> {
    if tuple.is_empty() {
        return Err(Error::EmptyTuple);
    }
    if tol <= 0.0 {
        return Err(Error::InvalidInput("dependence tolerance must be positive".into()));
    }
    if let Element::Pair(_) = tuple[0] {
        let (lt, rt) = split_pairs(tuple)?;
        let left = is_linearly_dependent(&lt, tol)?;
        let right = is_linearly_dependent(&rt, tol)?;
        let rank = left.rank.max(right.rank);
        return Ok(DependenceVerdict {
            dependent: left.dependent && right.dependent,
            rank,
            tolerance_used: tol,
        });
    }
    let pad = Element::common_pad(tuple);
    let rows: Vec<Vec<f64>> = tuple.iter().map(|e| e.embed(pad)).collect();
    let width = rows[0].len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(Error::DimensionMismatch {
                index: i,
                expected: width,
                got: r.len(),
            });
        }
    }
    let rank = linalg::rank(&rows, tol);
    Ok(DependenceVerdict {
        dependent: rank < tuple.len(),
        rank,
        tolerance_used: tol,
    })
}

/// A single axiom violation with its witness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomViolation {
    pub axiom: String,
    pub sample_index: usize,
    pub detail: String,
    pub witness: Vec<Element>,
}

/// Result of checking the four n-norm axioms over a sample set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxiomReport {
    pub samples_checked: usize,
    pub violations: Vec<AxiomViolation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the n-norm axioms on every sample tuple:
/// nullity vs the dependence verdict, invariance under all n! permutations,
/// absolute homogeneity in the first slot for each scalar, and the triangle
/// inequality in the first slot across consecutive sample pairs.
pub fn check_axioms(
    norm: &NNorm,
    samples: &[Vec<Element>],
    scalars: &[f64],
    tol: f64,
) -> Result<AxiomReport> {
    if samples.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let mut violations = Vec::new();
    for (idx, tuple) in samples.iter().enumerate() {
        let value = norm.eval(tuple)?;

        // N1: zero value iff dependence verdict.
        let verdict = is_linearly_dependent(tuple, RANK_TOL)?;
        let scale = tuple_scale(tuple);
        let is_zero = value <= ZERO_TOL * scale.max(1.0);
        if is_zero != verdict.dependent {
            violations.push(AxiomViolation {
                axiom: "N1".into(),
                sample_index: idx,
                detail: format!(
                    "value {value:.6e}, dependent={}, rank={}",
                    verdict.dependent, verdict.rank
                ),
                witness: tuple.clone(),
            });
        }

        // N2: invariance under all n! permutations.
        for perm in permutations(tuple.len()) {
            let permuted: Vec<Element> = perm.iter().map(|&i| tuple[i].clone()).collect();
            let pv = norm.eval(&permuted)?;
            if (pv - value).abs() > tol * (1.0 + value) {
                violations.push(AxiomViolation {
                    axiom: "N2".into(),
                    sample_index: idx,
                    detail: format!("permutation {perm:?}: {pv:.6e} vs {value:.6e}"),
                    witness: permuted,
                });
                break;
            }
        }

        // N3: |alpha|-homogeneity in the first slot.
        for &alpha in scalars {
            let mut scaled = tuple.clone();
            scaled[0] = scaled[0].scale(alpha);
            let sv = norm.eval(&scaled)?;
            let expected = alpha.abs() * value;
            if (sv - expected).abs() > tol * (1.0 + expected) {
                violations.push(AxiomViolation {
                    axiom: "N3".into(),
                    sample_index: idx,
                    detail: format!("alpha={alpha}: {sv:.6e} vs {expected:.6e}"),
                    witness: scaled,
                });
            }
        }

        // N4: triangle inequality with the next sample's first slot.
        if idx + 1 < samples.len() {
            let y = &samples[idx + 1][0];
            if tuple[0].same_kind(y) {
                let mut summed = tuple.clone();
                summed[0] = tuple[0].add(y)?;
                let lhs = norm.eval(&summed)?;
                let mut swapped = tuple.clone();
                swapped[0] = y.clone();
                let rhs = value + norm.eval(&swapped)?;
                if lhs > rhs + tol {
                    violations.push(AxiomViolation {
                        axiom: "N4".into(),
                        sample_index: idx,
                        detail: format!("{lhs:.6e} > {rhs:.6e}"),
                        witness: summed,
                    });
                }
            }
        }
    }
    Ok(AxiomReport {
        samples_checked: samples.len(),
        violations,
    })
}

fn tuple_scale(tuple: &[Element]) -> f64 {
    let pad = Element::common_pad(tuple);
    tuple
        .iter()
        .flat_map(|e| e.embed(pad))
        .fold(0.0_f64, |m, v| m.max(v.abs()))
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    heap(&mut idx, n, &mut out);
    out
}

fn heap(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == 1 {
        out.push(idx.clone());
        return;
    }
    for i in 0..k {
        heap(idx, k - 1, out);
        if k % 2 == 0 {
            idx.swap(i, k - 1);
        } else {
            idx.swap(0, k - 1);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vecs(rows: &[&[f64]]) -> Vec<Element> {
        rows.iter()
            .map(|r| Element::vector(r.to_vec()).unwrap())
            .collect()
    }

    #[test]
    fn determinant_basics() {
        let norm = NNorm::determinant(2).unwrap();
        assert_eq!(norm.eval(&vecs(&[&[1.0, 0.0], &[0.0, 1.0]])).unwrap(), 1.0);
        assert_eq!(norm.eval(&vecs(&[&[1.0, 0.0], &[2.0, 0.0]])).unwrap(), 0.0);
    }

    #[test]
    fn determinant_dimension_errors() {
        let norm = NNorm::determinant(2).unwrap();
        let bad = vecs(&[&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]]);
        assert!(matches!(
            norm.eval(&bad),
            Err(Error::DimensionMismatch { index: 0, .. })
        ));
        assert!(matches!(
            norm.eval(&vecs(&[&[1.0, 0.0]])),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn poly_coeff_product_direct() {
        let norm = NNorm::poly_coeff_product(2).unwrap();
        let tuple = vec![
            Element::polynomial(vec![1.0, 2.0]).unwrap(),
            Element::polynomial(vec![0.0, 1.0]).unwrap(),
        ];
        assert_eq!(norm.eval(&tuple).unwrap(), 2.0);
        // Dependent branch.
        let dep = vec![
            Element::polynomial(vec![1.0, 1.0]).unwrap(),
            Element::polynomial(vec![2.0, 2.0]).unwrap(),
        ];
        assert_eq!(norm.eval(&dep).unwrap(), 0.0);
        // Zero polynomial makes the tuple trivially dependent.
        let zero = vec![
            Element::polynomial(vec![0.0]).unwrap(),
            Element::polynomial(vec![1.0, 1.0]).unwrap(),
        ];
        assert_eq!(norm.eval(&zero).unwrap(), 0.0);
    }

    #[test]
    fn counterexample_witness_norm() {
        // ||1 + t + ... + t^k, b_2, ..., b_n|| = |b_2 ... b_n| as printed,
        // here with n = 2 and b_2 = 3.
        let norm = NNorm::poly_coeff_product(2).unwrap();
        let tuple = vec![
            Element::Polynomial(crate::polynomial::Polynomial::ones_up_to(4)),
            Element::polynomial(vec![3.0]).unwrap(),
        ];
        assert_eq!(norm.eval(&tuple).unwrap(), 3.0);
    }

    #[test]
    fn dependence_verdicts() {
        let v = vecs(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let verdict = is_linearly_dependent(&v, 1e-9).unwrap();
        assert!(!verdict.dependent);
        assert_eq!(verdict.rank, 2);

        let d = vecs(&[&[1.0, 2.0], &[2.0, 4.0]]);
        let verdict = is_linearly_dependent(&d, 1e-9).unwrap();
        assert!(verdict.dependent);
        assert_eq!(verdict.rank, 1);

        let p = vec![
            Element::polynomial(vec![1.0, 1.0]).unwrap(),
            Element::polynomial(vec![2.0, 2.0]).unwrap(),
        ];
        assert!(is_linearly_dependent(&p, 1e-9).unwrap().dependent);

        assert!(matches!(
            is_linearly_dependent(&[], 1e-9),
            Err(Error::EmptyTuple)
        ));
    }

    #[test]
    fn product_norms_are_exact_sum_and_max() {
        let det2 = NNorm::determinant(2).unwrap();
        let sum = NNorm::product_sum(det2.clone(), det2.clone()).unwrap();
        let max = NNorm::product_max(det2.clone(), det2).unwrap();
        let x = vecs(&[&[2.0, 0.0], &[0.0, 1.0]]);
        let y = vecs(&[&[3.0, 0.0], &[0.0, 1.0]]);
        let tuple: Vec<Element> = (0..2)
            .map(|i| Element::pair(x[i].clone(), y[i].clone()).unwrap())
            .collect();
        assert_eq!(sum.eval(&tuple).unwrap(), 5.0);
        assert_eq!(max.eval(&tuple).unwrap(), 3.0);
    }

    #[test]
    fn homogeneity_forced_example() {
        let norm = NNorm::determinant(2).unwrap();
        let base = vecs(&[&[1.0, 2.0], &[0.0, 1.0]]);
        let scaled = vec![base[0].scale(-3.0), base[1].clone()];
        assert_eq!(
            norm.eval(&scaled).unwrap(),
            3.0 * norm.eval(&base).unwrap()
        );
    }

    #[test]
    fn ball_membership() {
        let norm = NNorm::determinant(2).unwrap();
        let anchors = vec![Element::vector(vec![0.0, 1.0]).unwrap()];
        let center = Element::vector(vec![0.0, 0.0]).unwrap();
        let point = Element::vector(vec![2.0, 0.0]).unwrap();
        // Center is always inside.
        assert!(norm
            .ball_contains(&anchors, &center, 0.5, true, &center)
            .unwrap());
        // Distance 2 > radius 1.
        assert!(!norm
            .ball_contains(&anchors, &center, 1.0, true, &point)
            .unwrap());
        // Boundary membership in the closed ball.
        assert!(norm
            .ball_contains(&anchors, &center, 2.0, false, &point)
            .unwrap());
        assert!(!norm
            .ball_contains(&anchors, &center, 2.0, true, &point)
            .unwrap());
    }

    #[test]
    fn norm_json_round_trip() {
        let det2 = NNorm::determinant(2).unwrap();
        let sum = NNorm::product_sum(det2.clone(), det2).unwrap();
        let s = serde_json::to_string(&sum).unwrap();
        let back: NNorm = serde_json::from_str(&s).unwrap();
        assert_eq!(back, sum);
        let bad: std::result::Result<NNorm, _> =
            serde_json::from_str(r#"{"kind":"bogus","arity":2}"#);
        assert!(bad.is_err());
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(4).len(), 24);
    }
}

//! b-linear functionals: fixed anchors filling slots 2..n plus a linear
//! action in the first slot. Covers construction, evaluation, linearity and
//! continuity checks, and both exact and sampled norm computation.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::linalg;
use crate::nnorm::{NNorm, NNormKind, RANK_TOL};
use crate::polynomial::Polynomial;
use crate::sampling;
use crate::sequences::{self, SequenceSample};
use crate::subspace::{Subspace, DECOMP_TOL};
use crate::vector::Vector;

/// Default degree cap for sampled polynomials: the desk-scale slice of the
/// infinite-dimensional polynomial space.
pub const MAX_SAMPLED_DEGREE: usize = 32;

/// Sampled norm ratios are capped here; anything at the cap is treated as
/// numerically unbounded.
pub const RATIO_CAP: f64 = 1e15;

/// Relative threshold for declaring a weight-form functional unbounded: the
/// component of `w` orthogonal to the cofactor vector must stay below
/// `UNBOUNDED_TOL * |w|`.
pub const UNBOUNDED_TOL: f64 = 1e-9;

/// Number of rungs in the geometric delta ladder of the epsilon-delta check.
pub const DELTA_LADDER_RUNGS: u32 = 60;

/// The fixed elements b_2, ..., b_n. Vector anchors must be linearly
/// independent among themselves; constant anchors (the polynomial-space
/// demo) must be nonzero, entering only through their product as printed in
/// the source construction.
#[derive(Debug, Clone, PartialEq)]
pub enum BAnchors {
    Vectors(Vec<Vector>),
    Constants(Vec<f64>),
}

impl BAnchors {
    pub fn vectors(anchors: Vec<Vector>) -> Result<BAnchors> {
        if anchors.is_empty() {
            return Err(Error::EmptyTuple);
        }
        let dim = anchors[0].dim();
        for (i, a) in anchors.iter().enumerate() {
            if a.dim() != dim {
                return Err(Error::DimensionMismatch {
                    index: i,
                    expected: dim,
                    got: a.dim(),
                });
            }
        }
        let rows: Vec<Vec<f64>> = anchors.iter().map(|a| a.coords().to_vec()).collect();
        if linalg::rank(&rows, RANK_TOL) < anchors.len() {
            return Err(Error::DependentAnchors);
        }
        Ok(BAnchors::Vectors(anchors))
    }

    pub fn constants(values: Vec<f64>) -> Result<BAnchors> {
        if values.is_empty() {
            return Err(Error::EmptyTuple);
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
            if *v == 0.0 {
                return Err(Error::DependentAnchors);
            }
        }
        Ok(BAnchors::Constants(values))
    }

    /// Number of anchors, i.e. n - 1 for the ambient arity n.
    pub fn count(&self) -> usize {
        match self {
            BAnchors::Vectors(v) => v.len(),
            BAnchors::Constants(c) => c.len(),
        }
    }

    /// Product b_2 * b_3 * ... * b_n of constant anchors.
    pub fn constant_product(&self) -> Result<f64> {
        match self {
            BAnchors::Constants(c) => Ok(c.iter().product()),
            BAnchors::Vectors(_) => Err(Error::Precondition(
                "constant anchors required".into(),
            )),
        }
    }

    pub fn as_vectors(&self) -> Result<&[Vector]> {
        match self {
            BAnchors::Vectors(v) => Ok(v),
            BAnchors::Constants(_) => Err(Error::Precondition("vector anchors required".into())),
        }
    }

    /// Anchors as elements of their space, for filling norm slots.
    pub fn as_elements(&self) -> Vec<Element> {
        match self {
            BAnchors::Vectors(v) => v.iter().cloned().map(Element::Vector).collect(),
            BAnchors::Constants(c) => c
                .iter()
                .map(|&b| Element::Polynomial(Polynomial::constant(b)))
                .collect(),
        }
    }

    /// Cofactor vector of the anchor rows (vector anchors in R^n only).
    pub fn cofactor_vector(&self) -> Result<Vector> {
        let anchors = self.as_vectors()?;
        let n = anchors.len() + 1;
        for (i, a) in anchors.iter().enumerate() {
            if a.dim() != n {
                return Err(Error::DimensionMismatch {
                    index: i,
                    expected: n,
                    got: a.dim(),
                });
            }
        }
        let rows: Vec<Vec<f64>> = anchors.iter().map(|a| a.coords().to_vec()).collect();
        Vector::new(linalg::cofactor_vector(&rows))
    }
}

/// The linear action in the first slot.
#[derive(Debug, Clone, PartialEq)]
pub enum Action {
    /// Dot product with a fixed weight vector (vector coordinates or
    /// polynomial coefficients).
    Weight(Vector),
    /// `c * det(x, b_2, ..., b_n)` with the signed determinant.
    Determinant(f64),
    /// Partial-sum form `T_k`: `(a_0 + ... + a_k) * b_2 * ... * b_n`.
    PartialSum(usize),
}

/// A b-linear functional `T(., b_2, ..., b_n)`. Extensions built on a
/// proper subspace record their carrier; evaluating outside it is an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawFunctional", into = "RawFunctional")]
pub struct BLinearFunctional {
    anchors: BAnchors,
    action: Action,
    carrier: Option<Subspace>,
}

#[derive(Serialize, Deserialize)]
struct RawFunctional {
    #[serde(default)]
    anchors: Vec<Vector>,
    action: RawAction,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    carrier: Option<Subspace>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum RawAction {
    Weight { w: Vector },
    Determinant { c: f64 },
    PartialSum { k: usize, b_scalars: Vec<f64> },
}

impl TryFrom<RawFunctional> for BLinearFunctional {
    type Error = Error;
    fn try_from(raw: RawFunctional) -> Result<Self> {
        let f = match raw.action {
            RawAction::Weight { w } => {
                BLinearFunctional::weight_form(BAnchors::vectors(raw.anchors)?, w)?
            }
            RawAction::Determinant { c } => {
                BLinearFunctional::determinant_form(BAnchors::vectors(raw.anchors)?, c)?
            }
            RawAction::PartialSum { k, b_scalars } => {
                BLinearFunctional::partial_sum_form(BAnchors::constants(b_scalars)?, k)?
            }
        };
        match raw.carrier {
            Some(c) => f.restricted_to(c),
            None => Ok(f),
        }
    }
}

impl From<BLinearFunctional> for RawFunctional {
    fn from(f: BLinearFunctional) -> Self {
        let (anchors, action) = match (&f.anchors, &f.action) {
            (BAnchors::Vectors(v), Action::Weight(w)) => {
                (v.clone(), RawAction::Weight { w: w.clone() })
            }
            (BAnchors::Vectors(v), Action::Determinant(c)) => {
                (v.clone(), RawAction::Determinant { c: *c })
            }
            (BAnchors::Constants(b), Action::PartialSum(k)) => (
                vec![],
                RawAction::PartialSum {
                    k: *k,
                    b_scalars: b.clone(),
                },
            ),
            // Constant-anchor weight forms (polynomial coefficient
            // functionals) serialize as a weight with no vector anchors.
            (BAnchors::Constants(_), Action::Weight(w)) => {
                (vec![], RawAction::Weight { w: w.clone() })
            }
            (a, act) => unreachable!("invalid anchor/action combination: {a:?} / {act:?}"),
        };
        RawFunctional {
            anchors,
            action,
            carrier: f.carrier,
        }
    }
}

impl BLinearFunctional {
    pub fn weight_form(anchors: BAnchors, w: Vector) -> Result<Self> {
        if let BAnchors::Vectors(v) = &anchors {
            if w.dim() != v[0].dim() {
                return Err(Error::DimensionMismatch {
                    index: 0,
                    expected: v[0].dim(),
                    got: w.dim(),
                });
            }
        }
        Ok(BLinearFunctional {
            anchors,
            action: Action::Weight(w),
            carrier: None,
        })
    }

    pub fn determinant_form(anchors: BAnchors, c: f64) -> Result<Self> {
        let vs = anchors.as_vectors()?;
        let n = vs.len() + 1;
        if vs[0].dim() != n {
            return Err(Error::DimensionMismatch {
                index: 0,
                expected: n,
                got: vs[0].dim(),
            });
        }
        if !c.is_finite() {
            return Err(Error::NonFinite { index: 0 });
        }
        Ok(BLinearFunctional {
            anchors,
            action: Action::Determinant(c),
            carrier: None,
        })
    }

    pub fn partial_sum_form(anchors: BAnchors, k: usize) -> Result<Self> {
        anchors.constant_product()?;
        Ok(BLinearFunctional {
            anchors,
            action: Action::PartialSum(k),
            carrier: None,
        })
    }

    /// The same functional with its domain restricted to (and recorded as)
    /// the given carrier subspace.
    pub fn restricted_to(mut self, carrier: Subspace) -> Result<Self> {
        if let BAnchors::Vectors(v) = &self.anchors {
            if carrier.ambient_dim() != v[0].dim() {
                return Err(Error::DimensionMismatch {
                    index: 0,
                    expected: v[0].dim(),
                    got: carrier.ambient_dim(),
                });
            }
        }
        self.carrier = Some(carrier);
        Ok(self)
    }

    pub fn anchors(&self) -> &BAnchors {
        &self.anchors
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn carrier(&self) -> Option<&Subspace> {
        self.carrier.as_ref()
    }

    /// Scalar multiple of this functional. Partial-sum forms have no scaled
    /// counterpart in their family and are rejected.
    pub fn scaled(&self, alpha: f64) -> Result<Self> {
        let action = match &self.action {
            Action::Weight(w) => Action::Weight(w.scale(alpha)),
            Action::Determinant(c) => Action::Determinant(alpha * c),
            Action::PartialSum(_) => {
                return Err(Error::Precondition(
                    "partial-sum functionals do not support scaling".into(),
                ))
            }
        };
        Ok(BLinearFunctional {
            anchors: self.anchors.clone(),
            action,
            carrier: self.carrier.clone(),
        })
    }

    /// Evaluates `T(x, b_2, ..., b_n)`.
    pub fn evaluate(&self, x: &Element) -> Result<f64> {
        if let (Some(carrier), Element::Vector(v)) = (&self.carrier, x) {
            let (_, residual) = carrier.decompose(v)?;
            if residual > DECOMP_TOL {
                return Err(Error::OutsideCarrier { residual });
            }
        }
        match &self.action {
            Action::Weight(w) => match x {
                Element::Vector(v) => {
                    if v.dim() != w.dim() {
                        return Err(Error::DimensionMismatch {
                            index: 0,
                            expected: w.dim(),
                            got: v.dim(),
                        });
                    }
                    Ok(w.dot(v))
                }
                Element::Polynomial(p) => {
                    Ok(linalg::dot(w.coords(), &p.padded_coeffs(w.dim())))
                }
                Element::Pair(_) => Err(Error::KindMismatch { index: 0 }),
            },
            Action::Determinant(c) => {
                let v = x.as_vector()?;
                let anchors = self.anchors.as_vectors()?;
                let n = anchors.len() + 1;
                if v.dim() != n {
                    return Err(Error::DimensionMismatch {
                        index: 0,
                        expected: n,
                        got: v.dim(),
                    });
                }
                let mut rows = vec![v.coords().to_vec()];
                rows.extend(anchors.iter().map(|a| a.coords().to_vec()));
                Ok(c * linalg::det(&rows))
            }
            Action::PartialSum(k) => {
                let p = x.as_polynomial()?;
                let partial: f64 = (0..=*k).map(|j| p.coeff(j)).sum();
                Ok(partial * self.anchors.constant_product()?)
            }
        }
    }

    /// `||x, b_2, ..., b_n||` with this functional's anchors filling slots
    /// 2..n of the given norm. For constant anchors the coefficient-product
    /// norm is evaluated as printed in the source construction,
    /// `max_j |a_j| * |b_2 ... b_n|`, bypassing the dependence branch that
    /// the constant anchors would otherwise trigger.
    pub fn anchored_norm(&self, norm: &NNorm, x: &Element) -> Result<f64> {
        anchored_norm(norm, &self.anchors, x)
    }

    /// A random element of this functional's space (unit box coordinates,
    /// polynomial degree capped at `MAX_SAMPLED_DEGREE`).
    fn sample_raw(&self, rng: &mut rand_chacha::ChaCha8Rng) -> Element {
        match (&self.anchors, &self.action) {
            (BAnchors::Vectors(v), _) => {
                Element::Vector(Vector::from(sampling::random_coords(rng, v[0].dim())))
            }
            (BAnchors::Constants(_), Action::Weight(w)) => {
                let deg = rng.gen_range(0..=MAX_SAMPLED_DEGREE.max(w.dim() - 1));
                Element::Polynomial(
                    Polynomial::new(sampling::random_coords(rng, deg + 1)).unwrap(),
                )
            }
            (BAnchors::Constants(_), _) => {
                let deg = rng.gen_range(0..=MAX_SAMPLED_DEGREE);
                Element::Polynomial(
                    Polynomial::new(sampling::random_coords(rng, deg + 1)).unwrap(),
                )
            }
        }
    }
}

/// `||x, b_2, ..., b_n||` for a free anchor set.
pub fn anchored_norm(norm: &NNorm, anchors: &BAnchors, x: &Element) -> Result<f64> {
    if anchors.count() + 1 != norm.arity() {
        return Err(Error::ArityMismatch {
            expected: norm.arity() - 1,
            got: anchors.count(),
        });
    }
    match (norm.kind(), anchors) {
        (NNormKind::PolyCoeffProduct, BAnchors::Constants(bs)) => {
            let p = x.as_polynomial()?;
            let prod: f64 = bs.iter().product();
            Ok(p.max_abs_coeff() * prod.abs())
        }
        (_, BAnchors::Vectors(_)) => {
            let mut tuple = vec![x.clone()];
            tuple.extend(anchors.as_elements());
            norm.eval(&tuple)
        }
        _ => Err(Error::Precondition(
            "anchor kind does not match the norm kind".into(),
        )),
    }
}

/// Lower bound with witness, plus an exact value when a certificate exists.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NormEstimate {
    pub lower: f64,
    pub witness: Option<Element>,
    pub exact: Option<f64>,
    pub exactness_certificate: Certificate,
    pub unbounded: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Certificate {
    CofactorDecomposition,
    None,
}

/// One failed check with its witness description.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyViolation {
    pub index: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PropertyReport {
    pub checked: usize,
    pub violations: Vec<PropertyViolation>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Additivity and homogeneity residuals over sample pairs and scalars.
pub fn check_b_linearity(
    t: &BLinearFunctional,
    samples: &[(Element, Element)],
    scalars: &[f64],
    tol: f64,
) -> Result<PropertyReport> {
    if samples.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let mut violations = Vec::new();
    for (i, (x, y)) in samples.iter().enumerate() {
        let tx = t.evaluate(x)?;
        let ty = t.evaluate(y)?;
        let additive = t.evaluate(&x.add(y)?)?;
        let scale = 1.0 + tx.abs() + ty.abs();
        if (additive - (tx + ty)).abs() > tol * scale {
            violations.push(PropertyViolation {
                index: i,
                detail: format!("additivity residual {:.3e}", (additive - tx - ty).abs()),
            });
        }
        for &alpha in scalars {
            let scaled = t.evaluate(&x.scale(alpha))?;
            if (scaled - alpha * tx).abs() > tol * (1.0 + (alpha * tx).abs()) {
                violations.push(PropertyViolation {
                    index: i,
                    detail: format!(
                        "homogeneity residual {:.3e} at alpha={alpha}",
                        (scaled - alpha * tx).abs()
                    ),
                });
            }
        }
    }
    Ok(PropertyReport {
        checked: samples.len(),
        violations,
    })
}

/// Exact norm for weight- and determinant-form functionals over the
/// determinant n-norm, via the cofactor decomposition
/// `det(x, b_2, ..., b_n) = v . x`. A weight form not proportional to `v`
/// is unbounded: its kernel-of-`v` component produces arbitrarily large
/// ratios.
pub fn exact_norm_determinant(t: &BLinearFunctional, tol: f64) -> Result<NormEstimate> {
    let v = t.anchors().cofactor_vector()?;
    let v_sq = v.dot(&v);
    if v_sq <= 0.0 {
        return Err(Error::DependentAnchors);
    }
    // Unit-norm witness direction: ||v / (v.v), b_2, ..., b_n|| = 1.
    let unit_witness = Element::Vector(v.scale(1.0 / v_sq));
    match t.action() {
        Action::Determinant(c) => Ok(NormEstimate {
            lower: c.abs(),
            witness: Some(unit_witness),
            exact: Some(c.abs()),
            exactness_certificate: Certificate::CofactorDecomposition,
            unbounded: false,
        }),
        Action::Weight(w) => {
            let c = w.dot(&v) / v_sq;
            let orthogonal = w.sub(&v.scale(c));
            let w_norm = w.euclid();
            if orthogonal.euclid() > tol * w_norm.max(1e-300) {
                // Witness of unboundedness: in ker(v) but not in ker(w).
                Ok(NormEstimate {
                    lower: 0.0,
                    witness: Some(Element::Vector(orthogonal)),
                    exact: None,
                    exactness_certificate: Certificate::None,
                    unbounded: true,
                })
            } else {
                Ok(NormEstimate {
                    lower: c.abs(),
                    witness: Some(unit_witness),
                    exact: Some(c.abs()),
                    exactness_certificate: Certificate::CofactorDecomposition,
                    unbounded: false,
                })
            }
        }
        Action::PartialSum(_) => Err(Error::Precondition(
            "partial-sum functionals live on the polynomial space".into(),
        )),
    }
}

/// Exact norm where a closed form exists: the cofactor route for
/// determinant-space functionals, `k + 1` for the partial-sum forms.
pub fn exact_norm(t: &BLinearFunctional) -> Result<NormEstimate> {
    match (t.anchors(), t.action()) {
        (BAnchors::Vectors(_), _) => exact_norm_determinant(t, UNBOUNDED_TOL),
        (BAnchors::Constants(_), Action::PartialSum(k)) => Ok(NormEstimate {
            lower: (*k as f64) + 1.0,
            witness: Some(Element::Polynomial(Polynomial::ones_up_to(*k))),
            exact: Some((*k as f64) + 1.0),
            exactness_certificate: Certificate::None,
            unbounded: false,
        }),
        _ => Err(Error::Precondition(
            "no exact norm formula for this functional".into(),
        )),
    }
}

fn raw_coords(e: &Element) -> Vec<f64> {
    match e {
        Element::Vector(v) => v.coords().to_vec(),
        Element::Polynomial(p) => p.coeffs().to_vec(),
        Element::Pair(_) => unreachable!("pairs are never sampled"),
    }
}

fn rebuild_like(e: &Element, coords: Vec<f64>) -> Element {
    match e {
        Element::Vector(_) => Element::Vector(Vector::from(coords)),
        Element::Polynomial(_) => Element::Polynomial(Polynomial::new(coords).unwrap()),
        Element::Pair(_) => unreachable!("pairs are never sampled"),
    }
}

/// Sampled lower bound on `||T||`: seeded random unit-sphere directions plus
/// coordinate-wise local refinement of the best ratio. Never claims
/// exactness; deterministic for a fixed seed and budget.
pub fn estimate_norm_sampling(
    t: &BLinearFunctional,
    norm: &NNorm,
    budget: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if budget < 1 {
        return Err(Error::InvalidInput("budget must be at least 1".into()));
    }
    let ratio = |x: &Element| -> Result<f64> {
        let nv = anchored_norm(norm, t.anchors(), x)?;
        let tv = t.evaluate(x)?.abs();
        if nv < 1e-300 {
            return Ok(if tv > 1e-300 { RATIO_CAP } else { 0.0 });
        }
        let r = tv / nv;
        Ok(if r.is_finite() { r.min(RATIO_CAP) } else { RATIO_CAP })
    };

    let mut best: Option<(f64, Element)> = None;
    for i in 0..budget {
        let mut rng = sampling::rng_for(seed, i as u64);
        // Candidates are rescaled to the unit sphere; near-degenerate
        // directions are resampled a bounded number of times.
        let mut candidate = None;
        for _ in 0..8 {
            let x = t.sample_raw(&mut rng);
            let nv = anchored_norm(norm, t.anchors(), &x)?;
            if nv >= 1e-12 {
                candidate = Some(x.scale(1.0 / nv));
                break;
            }
        }
        let Some(x) = candidate else { continue };
        let r = ratio(&x)?;
        if best.as_ref().map_or(true, |(b, _)| r > *b) {
            best = Some((r, x));
        }
    }
    let Some((mut best_r, mut best_x)) = best else {
        return Ok(NormEstimate {
            lower: 0.0,
            witness: None,
            exact: None,
            exactness_certificate: Certificate::None,
            unbounded: false,
        });
    };

    // Coordinate-wise hill climbing on the ratio. For bounded functionals
    // the ratio is flat or peaks quickly; for unbounded ones each round can
    // roughly halve the distance to the kernel, so the ratio grows until
    // the cap is hit.
    let mut coords = raw_coords(&best_x);
    let mut step = 0.25;
    for _ in 0..220 {
        if best_r >= RATIO_CAP || step < 1e-30 {
            break;
        }
        let mut improved = false;
        for j in 0..coords.len() {
            for s in [step, -step] {
                let mut trial = coords.clone();
                trial[j] += s;
                let x = rebuild_like(&best_x, trial.clone());
                let r = ratio(&x)?;
                if r > best_r * (1.0 + 1e-12) {
                    best_r = r;
                    coords = trial;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    best_x = rebuild_like(&best_x, coords);
    let nv = anchored_norm(norm, t.anchors(), &best_x)?;
    let witness = if nv >= 1e-300 {
        best_x.scale(1.0 / nv)
    } else {
        best_x
    };
    Ok(NormEstimate {
        lower: best_r,
        witness: Some(witness),
        exact: None,
        exactness_certificate: Certificate::None,
        unbounded: best_r >= RATIO_CAP,
    })
}

/// Lipschitz check: `|T(x) - T(y)| <= norm_bound * ||x - y, b...|| + tol`.
pub fn check_lipschitz(
    t: &BLinearFunctional,
    norm: &NNorm,
    norm_bound: f64,
    pairs: &[(Element, Element)],
    tol: f64,
) -> Result<PropertyReport> {
    let mut violations = Vec::new();
    for (i, (x, y)) in pairs.iter().enumerate() {
        let lhs = (t.evaluate(x)? - t.evaluate(y)?).abs();
        let rhs = norm_bound * anchored_norm(norm, t.anchors(), &x.sub(y)?)?;
        if lhs > rhs + tol {
            violations.push(PropertyViolation {
                index: i,
                detail: format!("{lhs:.6e} > {rhs:.6e} + {tol:.1e}"),
            });
        }
    }
    Ok(PropertyReport {
        checked: pairs.len(),
        violations,
    })
}

/// b-sequential continuity at the given limit: the precondition (the
/// sequence converges to the limit under the anchors) is verified first and
/// its failure is an error, not a property violation.
pub fn check_b_sequential_continuity(
    t: &BLinearFunctional,
    norm: &NNorm,
    seq: &SequenceSample,
    limit: &Element,
    tol: f64,
) -> Result<PropertyReport> {
    let tail_fraction = 0.25;
    let converges = match t.anchors() {
        BAnchors::Vectors(_) => {
            let anchored = SequenceSample::new(
                seq.terms.clone(),
                vec![t.anchors().as_elements()],
            )?;
            sequences::check_convergence(norm, &anchored, limit, tail_fraction, tol)?.converged
        }
        BAnchors::Constants(_) => {
            let start = seq.terms.len() - ((seq.terms.len() as f64 * tail_fraction).ceil() as usize)
                .max(1)
                .min(seq.terms.len());
            seq.terms[start..].iter().try_fold(true, |ok, term| {
                Ok::<_, Error>(
                    ok && anchored_norm(norm, t.anchors(), &term.sub(limit)?)? <= tol,
                )
            })?
        }
    };
    if !converges {
        return Err(Error::Precondition(
            "sequence does not converge to the limit at sample scale".into(),
        ));
    }
    let t_limit = t.evaluate(limit)?;
    let start = seq.terms.len() - ((seq.terms.len() as f64 * tail_fraction).ceil() as usize)
        .max(1)
        .min(seq.terms.len());
    let mut violations = Vec::new();
    for (i, term) in seq.terms[start..].iter().enumerate() {
        let gap = (t.evaluate(term)? - t_limit).abs();
        if gap > tol {
            violations.push(PropertyViolation {
                index: start + i,
                detail: format!("|T(x_k) - T(x)| = {gap:.6e}"),
            });
        }
    }
    Ok(PropertyReport {
        checked: seq.terms.len() - start,
        violations,
    })
}

/// Result of the epsilon-delta search at one epsilon.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpsilonDeltaResult {
    pub epsilon: f64,
    /// The first ladder rung (1, 1/2, 1/4, ...) at which all probes landed
    /// within epsilon, or absent if the ladder was exhausted.
    pub delta: Option<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ContinuityReport {
    pub per_epsilon: Vec<EpsilonDeltaResult>,
    pub all_found: bool,
}

/// Searches a geometric delta ladder for each epsilon: probes the open
/// delta-ball around the point (anchors as ball directions, including
/// near-boundary probes) and accepts the first rung whose probes all map
/// within epsilon of `T(point)`.
pub fn check_epsilon_delta_continuity(
    t: &BLinearFunctional,
    norm: &NNorm,
    point: &Element,
    epsilons: &[f64],
    probe_budget: usize,
    seed: u64,
) -> Result<ContinuityReport> {
    if probe_budget < 1 {
        return Err(Error::InvalidInput("probe budget must be at least 1".into()));
    }
    let t_point = t.evaluate(point)?;
    let directions = probe_budget.min(64).max(1);
    let mut per_epsilon = Vec::with_capacity(epsilons.len());
    for (ei, &eps) in epsilons.iter().enumerate() {
        if eps <= 0.0 {
            return Err(Error::InvalidInput("epsilon must be positive".into()));
        }
        let mut found = None;
        'ladder: for rung in 0..DELTA_LADDER_RUNGS {
            let delta = 0.5_f64.powi(rung as i32);
            for d in 0..directions {
                let mut rng = sampling::rng_for(seed, (ei as u64) << 32 | (rung as u64) << 16 | d as u64);
                // Unit direction in the anchored norm; degenerate draws are
                // retried a bounded number of times.
                let mut unit = None;
                for _ in 0..8 {
                    let u = t.sample_raw(&mut rng);
                    let nv = anchored_norm(norm, t.anchors(), &u)?;
                    if nv >= 1e-12 {
                        unit = Some(u.scale(1.0 / nv));
                        break;
                    }
                }
                let Some(u) = unit else { continue };
                let interior = rng.gen_range(0.0..1.0) * delta;
                for radius in [interior, delta * (1.0 - 1e-9)] {
                    let x = point.add(&u.scale(radius))?;
                    if (t.evaluate(&x)? - t_point).abs() >= eps {
                        continue 'ladder;
                    }
                }
            }
            found = Some(delta);
            break;
        }
        per_epsilon.push(EpsilonDeltaResult {
            epsilon: eps,
            delta: found,
        });
    }
    let all_found = per_epsilon.iter().all(|r| r.delta.is_some());
    Ok(ContinuityReport {
        per_epsilon,
        all_found,
    })
}

//! Pointwise versus uniform boundedness for families of b-linear
//! functionals: the polynomial partial-sum counterexample, net-propagated
//! uniform convergence, Cauchy-family bounds, pointwise limit functionals,
//! and weak* convergence checks. Finite slices of infinite families can
//! refute uniform bounds but never certify them, so every verdict is
//! evidence-flagged.

use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};
use crate::functional::{
    anchored_norm, estimate_norm_sampling, exact_norm, BLinearFunctional, NormEstimate,
};
use crate::linalg;
use crate::nnorm::{NNorm, RANK_TOL};
use crate::sampling;
use crate::vector::Vector;

/// Default absolute Cauchy tolerance over the last quarter of a slice.
pub const CAUCHY_TOL: f64 = 1e-8;

/// An ordered slice of a functional family sharing one anchor set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FunctionalFamily {
    members: Vec<BLinearFunctional>,
    labels: Vec<String>,
}

impl FunctionalFamily {
    pub fn new(members: Vec<BLinearFunctional>, labels: Vec<String>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyTuple);
        }
        for m in &members[1..] {
            if m.anchors() != members[0].anchors() {
                return Err(Error::Precondition(
                    "family members must share one anchor set".into(),
                ));
            }
        }
        let labels = if labels.is_empty() {
            (0..members.len()).map(|i| format!("T_{i}")).collect()
        } else if labels.len() == members.len() {
            labels
        } else {
            return Err(Error::InvalidInput(
                "label count must match member count".into(),
            ));
        };
        Ok(FunctionalFamily { members, labels })
    }

    pub fn members(&self) -> &[BLinearFunctional] {
        &self.members
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Boundedness evidence for a family slice.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    /// Max over the family of |T(x, b...)| per sample point, in point order.
    pub per_point_bounds: Vec<f64>,
    pub per_member_norm_lower: Vec<NormEstimate>,
    /// Max over the per-member lower bounds.
    pub uniform_lower: f64,
    pub pointwise_bounded_evidence: bool,
    pub uniform_bound_refuted: bool,
    /// Per-point Cauchy verdicts when a Cauchy check ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_point_cauchy: Option<Vec<bool>>,
    pub evidence_only: bool,
}

fn max_of(values: impl Iterator<Item = f64>) -> f64 {
    values.fold(0.0_f64, f64::max)
}

/// Per-point maxima of |T(x, b...)| over the family slice.
pub fn pointwise_bounds(family: &FunctionalFamily, points: &[Element]) -> Result<BoundReport> {
    let mut per_point = Vec::with_capacity(points.len());
    for x in points {
        let mut bound = 0.0_f64;
        for t in family.members() {
            bound = bound.max(t.evaluate(x)?.abs());
        }
        per_point.push(bound);
    }
    let pointwise_ok = per_point.iter().all(|b| b.is_finite());
    Ok(BoundReport {
        per_point_bounds: per_point,
        per_member_norm_lower: vec![],
        uniform_lower: 0.0,
        pointwise_bounded_evidence: pointwise_ok,
        uniform_bound_refuted: false,
        per_point_cauchy: None,
        evidence_only: true,
    })
}

/// True when the last half of the values (at least two) strictly increases.
fn strictly_increasing_tail(values: &[f64]) -> bool {
    if values.len() < 2 {
        return false;
    }
    let start = values.len() / 2;
    let tail = &values[start.min(values.len() - 2)..];
    tail.windows(2).all(|w| w[1] > w[0])
}

fn member_norm_lower(
    t: &BLinearFunctional,
    norm: &NNorm,
    witness: Option<&Element>,
    budget: usize,
    seed: u64,
) -> Result<NormEstimate> {
    if let Some(x) = witness {
        let nv = anchored_norm(norm, t.anchors(), x)?;
        if nv <= 0.0 {
            return Err(Error::Precondition(
                "witness has zero anchored norm".into(),
            ));
        }
        let lower = t.evaluate(x)?.abs() / nv;
        return Ok(NormEstimate {
            lower,
            witness: Some(x.clone()),
            exact: None,
            exactness_certificate: crate::functional::Certificate::None,
            unbounded: false,
        });
    }
    exact_norm(t).or_else(|_| estimate_norm_sampling(t, norm, budget, seed))
}

/// Refutation of a uniform bound: per-member norm lower bounds from the
/// given witness rule (falling back to exact formulas, then sampling), with
/// the refutation flag set when the lower bounds strictly increase across
/// the tail of the slice.
pub fn uniform_bound_refutation(
    family: &FunctionalFamily,
    norm: &NNorm,
    witness_builder: Option<&dyn Fn(usize, &BLinearFunctional) -> Option<Element>>,
    budget: usize,
    seed: u64,
) -> Result<BoundReport> {
    let mut estimates = Vec::with_capacity(family.len());
    for (i, t) in family.members().iter().enumerate() {
        let witness = witness_builder.and_then(|rule| rule(i, t));
        estimates.push(member_norm_lower(
            t,
            norm,
            witness.as_ref(),
            budget,
            sampling::subseed(seed, i as u64),
        )?);
    }
    let lowers: Vec<f64> = estimates.iter().map(|e| e.lower).collect();
    let refuted =
        strictly_increasing_tail(&lowers) || estimates.iter().any(|e| e.unbounded);
    Ok(BoundReport {
        per_point_bounds: vec![],
        uniform_lower: max_of(lowers.into_iter()),
        per_member_norm_lower: estimates,
        pointwise_bounded_evidence: false,
        uniform_bound_refuted: refuted,
        per_point_cauchy: None,
        evidence_only: true,
    })
}

/// A finite epsilon-net: centers plus the covering radius.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EpsNet {
    pub centers: Vec<Element>,
    pub radius: f64,
}

impl EpsNet {
    pub fn new(centers: Vec<Element>, radius: f64) -> Result<Self> {
        if radius <= 0.0 {
            return Err(Error::InvalidInput("net radius must be positive".into()));
        }
        if centers.is_empty() {
            return Err(Error::EmptyTuple);
        }
        Ok(EpsNet { centers, radius })
    }
}

/// Uniform convergence of a functional sequence on a totally bounded set,
/// witnessed on a finite net.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConvergenceOnSetReport {
    /// Per member: sup over net centers of |T_k(x, b...) - T(x, b...)|.
    pub per_member_sup_on_net: Vec<f64>,
    /// Net sup inflated by (cap + 1 + limit_norm) * radius, bounding the
    /// deviation over the whole covered set.
    pub per_member_propagated_bound: Vec<f64>,
    pub member_norm_cap: f64,
    pub limit_norm: f64,
    pub decreasing_tail: bool,
    pub evidence_only: bool,
}

fn norm_lower_for_cap(t: &BLinearFunctional, norm: &NNorm, stream: u64) -> Result<f64> {
    let est = exact_norm(t).or_else(|_| estimate_norm_sampling(t, norm, 500, stream))?;
    if est.unbounded {
        return Ok(f64::INFINITY);
    }
    Ok(est.exact.unwrap_or(est.lower))
}

/// Sup deviation from the limit over the net per member, with the bound
/// propagated to the full set through the net radius. The cap must dominate
/// every member's computed norm lower bound.
pub fn uniform_convergence_on_net(
    family: &[BLinearFunctional],
    limit: &BLinearFunctional,
    net: &EpsNet,
    member_norm_cap: f64,
    norm: &NNorm,
) -> Result<ConvergenceOnSetReport> {
    if family.is_empty() {
        return Err(Error::EmptyTuple);
    }
    for (i, t) in family.iter().enumerate() {
        if t.anchors() != limit.anchors() {
            return Err(Error::Precondition(format!(
                "member {i} does not share the limit's anchors"
            )));
        }
        let lower = norm_lower_for_cap(t, norm, i as u64)?;
        if lower > member_norm_cap + 1e-9 {
            return Err(Error::Precondition(format!(
                "member {i} has norm lower bound {lower:.6e} above the cap {member_norm_cap:.6e}"
            )));
        }
    }
    let limit_norm = norm_lower_for_cap(limit, norm, u64::MAX)?;

    let mut sups = Vec::with_capacity(family.len());
    for t in family {
        let mut sup = 0.0_f64;
        for x in &net.centers {
            sup = sup.max((t.evaluate(x)? - limit.evaluate(x)?).abs());
        }
        sups.push(sup);
    }
    let inflation = (member_norm_cap + 1.0 + limit_norm) * net.radius;
    let propagated: Vec<f64> = sups.iter().map(|s| s + inflation).collect();
    let decreasing = sups.len() >= 2 && {
        let start = sups.len() / 2;
        sups[start.min(sups.len() - 2)..]
            .windows(2)
            .all(|w| w[1] <= w[0])
    };
    Ok(ConvergenceOnSetReport {
        per_member_sup_on_net: sups,
        per_member_propagated_bound: propagated,
        member_norm_cap,
        limit_norm,
        decreasing_tail: decreasing,
        evidence_only: true,
    })
}

fn cauchy_tail(values: &[f64], tol: f64) -> bool {
    let start = values.len() - (values.len() / 4).max(1).min(values.len());
    let tail = &values[start..];
    tail.iter()
        .flat_map(|a| tail.iter().map(move |b| (a - b).abs()))
        .all(|d| d <= tol)
}

/// Per-point Cauchy behavior of {T_k(x, b...)} plus per-member norm lower
/// bounds; bounded norms are evidence for the Cauchy-family bound theorem.
pub fn cauchy_family_bound(
    family: &FunctionalFamily,
    norm: &NNorm,
    points: &[Element],
    tol: f64,
) -> Result<BoundReport> {
    let mut per_point = Vec::with_capacity(points.len());
    let mut cauchy = Vec::with_capacity(points.len());
    for x in points {
        let values: Vec<f64> = family
            .members()
            .iter()
            .map(|t| t.evaluate(x))
            .collect::<Result<_>>()?;
        per_point.push(max_of(values.iter().map(|v| v.abs())));
        cauchy.push(cauchy_tail(&values, tol));
    }
    let mut estimates = Vec::with_capacity(family.len());
    for (i, t) in family.members().iter().enumerate() {
        estimates.push(
            exact_norm(t).or_else(|_| estimate_norm_sampling(t, norm, 500, i as u64))?,
        );
    }
    let lowers: Vec<f64> = estimates.iter().map(|e| e.lower).collect();
    let refuted =
        strictly_increasing_tail(&lowers) || estimates.iter().any(|e| e.unbounded);
    Ok(BoundReport {
        per_point_bounds: per_point,
        uniform_lower: max_of(lowers.into_iter()),
        per_member_norm_lower: estimates,
        pointwise_bounded_evidence: cauchy.iter().all(|&c| c),
        uniform_bound_refuted: refuted,
        per_point_cauchy: Some(cauchy),
        evidence_only: true,
    })
}

/// Builds the pointwise limit functional of a weight- or determinant-form
/// sequence from limiting values on a spanning basis, then verifies the
/// M-bound |T(x, b...)| <= M * ||x, b...|| for M the largest member norm on
/// seeded samples.
pub fn pointwise_limit_functional(
    family: &FunctionalFamily,
    norm: &NNorm,
    basis: &[Element],
    tol: f64,
    seed: u64,
) -> Result<BLinearFunctional> {
    let anchors = family.members()[0].anchors().clone();
    let dim = anchors.as_vectors()?[0].dim();
    if basis.len() != dim {
        return Err(Error::ArityMismatch {
            expected: dim,
            got: basis.len(),
        });
    }
    let mut limits = Vec::with_capacity(basis.len());
    for (j, e) in basis.iter().enumerate() {
        let values: Vec<f64> = family
            .members()
            .iter()
            .map(|t| t.evaluate(e))
            .collect::<Result<_>>()?;
        if !cauchy_tail(&values, tol) {
            return Err(Error::Precondition(format!(
                "values on basis element {j} do not converge at tolerance {tol:.1e}"
            )));
        }
        limits.push(*values.last().unwrap());
    }
    // Solve basis_j . w = limit_j for the weight vector.
    let rows: Vec<Vec<f64>> = basis
        .iter()
        .map(|e| Ok(e.as_vector()?.coords().to_vec()))
        .collect::<Result<_>>()?;
    let w = Vector::new(linalg::solve(&rows, &limits)?)?;
    let limit_fn = BLinearFunctional::weight_form(anchors, w)?;

    // M-bound verification on seeded samples.
    let mut m = 0.0_f64;
    for (i, t) in family.members().iter().enumerate() {
        let est = exact_norm(t).or_else(|_| estimate_norm_sampling(t, norm, 500, i as u64))?;
        if est.unbounded {
            return Err(Error::Unbounded(format!("family member {i} is unbounded")));
        }
        m = m.max(est.exact.unwrap_or(est.lower));
    }
    for i in 0..1000_u64 {
        let mut rng = sampling::rng_for(seed, i);
        let x = Element::Vector(Vector::from(sampling::random_coords(&mut rng, dim)));
        let lhs = limit_fn.evaluate(&x)?.abs();
        let rhs = m * anchored_norm(norm, limit_fn.anchors(), &x)? + 1e-9;
        if lhs > rhs {
            return Err(Error::Precondition(format!(
                "limit functional violates the M-bound at sample {i}: {lhs:.6e} > {rhs:.6e}"
            )));
        }
    }
    Ok(limit_fn)
}

/// Weak* convergence evidence per the total-set characterization.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WeakStarReport {
    /// Condition I evidence: member norm lower bounds stay bounded.
    pub norms_bounded: bool,
    pub member_norm_lowers: Vec<f64>,
    /// Condition II: {T_k(x, b...)} Cauchy for every x in the total set.
    pub cauchy_on_total_set: bool,
    /// Direct pointwise convergence to the candidate on the probe points.
    pub converges_on_points: bool,
    pub max_point_residual: f64,
    pub verdict: bool,
    pub evidence_only: bool,
}

/// Checks conditions I and II on a spanning total set against direct
/// pointwise convergence to the candidate on probe points.
pub fn weakstar_check(
    family: &FunctionalFamily,
    candidate_limit: &BLinearFunctional,
    total_set: &[Element],
    points: &[Element],
    norm: &NNorm,
    tol: f64,
) -> Result<WeakStarReport> {
    if total_set.is_empty() {
        return Err(Error::EmptyTuple);
    }
    let pad = Element::common_pad(total_set);
    let rows: Vec<Vec<f64>> = total_set.iter().map(|e| e.embed(pad)).collect();
    let width = rows[0].len();
    if rows.iter().any(|r| r.len() != width) || linalg::rank(&rows, RANK_TOL) < width {
        return Err(Error::Precondition(
            "total set does not span the ambient space".into(),
        ));
    }

    let mut lowers = Vec::with_capacity(family.len());
    let mut unbounded = false;
    for (i, t) in family.members().iter().enumerate() {
        let est = exact_norm(t).or_else(|_| estimate_norm_sampling(t, norm, 500, i as u64))?;
        unbounded |= est.unbounded;
        lowers.push(est.exact.unwrap_or(est.lower));
    }
    let norms_bounded = !unbounded && !strictly_increasing_tail(&lowers);

    let mut cauchy_ok = true;
    for x in total_set {
        let values: Vec<f64> = family
            .members()
            .iter()
            .map(|t| t.evaluate(x))
            .collect::<Result<_>>()?;
        cauchy_ok &= cauchy_tail(&values, tol);
    }

    let mut max_residual = 0.0_f64;
    let tail_start = family.len() - (family.len() / 4).max(1).min(family.len());
    for x in points {
        let target = candidate_limit.evaluate(x)?;
        for t in &family.members()[tail_start..] {
            max_residual = max_residual.max((t.evaluate(x)? - target).abs());
        }
    }
    let converges = max_residual <= tol;
    Ok(WeakStarReport {
        norms_bounded,
        member_norm_lowers: lowers,
        cauchy_on_total_set: cauchy_ok,
        converges_on_points: converges,
        max_point_residual: max_residual,
        verdict: norms_bounded && cauchy_ok && converges,
        evidence_only: true,
    })
}

/// Uniform-implies-pointwise: per-point bounds of a family with norms <= cap
/// never exceed cap * ||x, b...|| + slack.
pub fn uniform_implies_pointwise(
    family: &FunctionalFamily,
    norm: &NNorm,
    norm_cap: f64,
    points: &[Element],
    slack: f64,
) -> Result<crate::functional::PropertyReport> {
    let report = pointwise_bounds(family, points)?;
    let anchors = family.members()[0].anchors();
    let mut violations = Vec::new();
    for (i, (x, bound)) in points.iter().zip(&report.per_point_bounds).enumerate() {
        let rhs = norm_cap * anchored_norm(norm, anchors, x)? + slack;
        if *bound > rhs {
            violations.push(crate::functional::PropertyViolation {
                index: i,
                detail: format!("{bound:.6e} > {rhs:.6e}"),
            });
        }
    }
    Ok(crate::functional::PropertyReport {
        checked: points.len(),
        violations,
    })
}

/// The partial-sum family T_0, ..., T_kmax on the polynomial space with the
/// given constant anchors.
pub fn partial_sum_family(
    anchors: &crate::functional::BAnchors,
    kmax: usize,
) -> Result<FunctionalFamily> {
    let members: Vec<BLinearFunctional> = (0..=kmax)
        .map(|k| BLinearFunctional::partial_sum_form(anchors.clone(), k))
        .collect::<Result<_>>()?;
    let labels = (0..=kmax).map(|k| format!("T_{k}")).collect();
    FunctionalFamily::new(members, labels)
}

/// The witness rule of the partial-sum counterexample: x(t) = 1 + t + ... + t^k.
pub fn partial_sum_witness(_index: usize, t: &BLinearFunctional) -> Option<Element> {
    match t.action() {
        crate::functional::Action::PartialSum(k) => Some(Element::Polynomial(
            crate::polynomial::Polynomial::ones_up_to(*k),
        )),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functional::BAnchors;

    fn det_family(cs: &[f64]) -> FunctionalFamily {
        let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();
        let members = cs
            .iter()
            .map(|&c| BLinearFunctional::determinant_form(anchors.clone(), c).unwrap())
            .collect();
        FunctionalFamily::new(members, vec![]).unwrap()
    }

    #[test]
    fn zero_family_all_bounds_zero() {
        let family = det_family(&[0.0, 0.0]);
        let points = vec![
            Element::vector(vec![1.0, 0.0]).unwrap(),
            Element::vector(vec![3.0, -2.0]).unwrap(),
        ];
        let report = pointwise_bounds(&family, &points).unwrap();
        assert_eq!(report.per_point_bounds, vec![0.0, 0.0]);
        assert!(report.pointwise_bounded_evidence);
    }

    #[test]
    fn single_determinant_pointwise_bound() {
        let family = det_family(&[1.0]);
        let points = vec![Element::vector(vec![1.0, 0.0]).unwrap()];
        let report = pointwise_bounds(&family, &points).unwrap();
        assert_eq!(report.per_point_bounds, vec![1.0]);
    }

    #[test]
    fn partial_sum_family_pointwise_bound_formula() {
        // max over k of |T_k(x, b...)| <= (N_x + 1) * max_j |a_j b_2 ... b_n|.
        let anchors = BAnchors::constants(vec![2.0, -3.0]).unwrap();
        let family = partial_sum_family(&anchors, 50).unwrap();
        let x = Element::polynomial(vec![1.0, -2.0, 0.5, 4.0]).unwrap();
        let report = pointwise_bounds(&family, &[x.clone()]).unwrap();
        let prod: f64 = 6.0;
        let cap = 4.0 * 4.0 * prod;
        assert!(report.per_point_bounds[0] <= cap + 1e-12);
    }

    #[test]
    fn counterexample_refutes_uniform_bound() {
        let anchors = BAnchors::constants(vec![1.0]).unwrap();
        let family = partial_sum_family(&anchors, 10).unwrap();
        let norm = NNorm::poly_coeff_product(2).unwrap();
        let report =
            uniform_bound_refutation(&family, &norm, Some(&partial_sum_witness), 10, 42)
                .unwrap();
        for (k, est) in report.per_member_norm_lower.iter().enumerate() {
            assert!((est.lower - (k as f64 + 1.0)).abs() <= 1e-9);
        }
        assert!(report.uniform_bound_refuted);
        assert_eq!(report.uniform_lower, 11.0);
    }

    #[test]
    fn scaled_family_refuted_constant_family_not() {
        let norm = NNorm::determinant(2).unwrap();
        let growing = det_family(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let report = uniform_bound_refutation(&growing, &norm, None, 10, 1).unwrap();
        assert!(report.uniform_bound_refuted);
        assert_eq!(report.uniform_lower, 5.0);

        let constant = det_family(&[2.0, 2.0, 2.0]);
        let report = uniform_bound_refutation(&constant, &norm, None, 10, 1).unwrap();
        assert!(!report.uniform_bound_refuted);
    }

    #[test]
    fn net_convergence_exact_family() {
        let norm = NNorm::determinant(2).unwrap();
        let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();
        let limit = BLinearFunctional::determinant_form(anchors.clone(), 1.0).unwrap();
        // T_k = (1 + 1/k) T.
        let family: Vec<BLinearFunctional> = (1..=8)
            .map(|k| {
                BLinearFunctional::determinant_form(anchors.clone(), 1.0 + 1.0 / k as f64)
                    .unwrap()
            })
            .collect();
        let centers: Vec<Element> = (0..5)
            .map(|i| Element::vector(vec![1.0, i as f64]).unwrap())
            .collect();
        let net = EpsNet::new(centers, 0.1).unwrap();
        let report = uniform_convergence_on_net(&family, &limit, &net, 2.0, &norm).unwrap();
        // Sup over the net at member k is exactly 1/k (all centers have
        // anchored norm 1).
        for (k, sup) in report.per_member_sup_on_net.iter().enumerate() {
            assert!((sup - 1.0 / (k as f64 + 1.0)).abs() < 1e-12);
        }
        assert!(report.decreasing_tail);
        // Propagated bound: sup + (cap + 1 + ||T||) * radius.
        assert!((report.per_member_propagated_bound[0] - (1.0 + 4.0 * 0.1)).abs() < 1e-12);
    }

    #[test]
    fn net_convergence_rejects_cap_violation() {
        let norm = NNorm::determinant(2).unwrap();
        let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();
        let limit = BLinearFunctional::determinant_form(anchors.clone(), 1.0).unwrap();
        let family = vec![BLinearFunctional::determinant_form(anchors, 5.0).unwrap()];
        let net = EpsNet::new(vec![Element::vector(vec![1.0, 0.0]).unwrap()], 0.1).unwrap();
        let err = uniform_convergence_on_net(&family, &limit, &net, 2.0, &norm).unwrap_err();
        assert!(err.to_string().contains("member 0"));
    }

    #[test]
    fn alternating_family_no_decreasing_tail() {
        let norm = NNorm::determinant(2).unwrap();
        let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();
        let limit = BLinearFunctional::determinant_form(anchors.clone(), 1.0).unwrap();
        let family: Vec<BLinearFunctional> = (0..8)
            .map(|k| {
                BLinearFunctional::determinant_form(
                    anchors.clone(),
                    if k % 2 == 0 { 1.0 } else { -1.0 },
                )
                .unwrap()
            })
            .collect();
        let net = EpsNet::new(vec![Element::vector(vec![1.0, 0.0]).unwrap()], 0.1).unwrap();
        let report = uniform_convergence_on_net(&family, &limit, &net, 1.5, &norm).unwrap();
        assert!(!report.decreasing_tail);
    }

    #[test]
    fn cauchy_family_bounded() {
        let cs: Vec<f64> = (1..=40).map(|k| 1.0 + 0.5_f64.powi(k)).collect();
        let family = det_family(&cs);
        let norm = NNorm::determinant(2).unwrap();
        let points = vec![Element::vector(vec![1.0, 0.0]).unwrap()];
        let report = cauchy_family_bound(&family, &norm, &points, CAUCHY_TOL).unwrap();
        assert!(report.pointwise_bounded_evidence);
        assert!(!report.uniform_bound_refuted);
        assert!(report.uniform_lower <= 2.0);
    }

    #[test]
    fn growing_family_not_cauchy() {
        let cs: Vec<f64> = (1..=20).map(|k| k as f64).collect();
        let family = det_family(&cs);
        let norm = NNorm::determinant(2).unwrap();
        let points = vec![Element::vector(vec![1.0, 0.0]).unwrap()];
        let report = cauchy_family_bound(&family, &norm, &points, CAUCHY_TOL).unwrap();
        assert!(!report.pointwise_bounded_evidence);
        assert!(report.uniform_bound_refuted);
    }

    #[test]
    fn limit_functional_recovers_cofactor_weight() {
        // c_k = 1 + 1/k times the determinant form: limit is the weight form
        // with the cofactor vector (1, 0)... up to the last-slice value.
        let cs: Vec<f64> = (1..=200).map(|k| 1.0 + 1.0 / k as f64).collect();
        let family = det_family(&cs);
        let norm = NNorm::determinant(2).unwrap();
        let basis = vec![
            Element::vector(vec![1.0, 0.0]).unwrap(),
            Element::vector(vec![0.0, 1.0]).unwrap(),
        ];
        let limit = pointwise_limit_functional(&family, &norm, &basis, 1e-2, 42).unwrap();
        let x = Element::vector(vec![3.0, -7.0]).unwrap();
        assert!((limit.evaluate(&x).unwrap() - 1.005 * 3.0).abs() < 1e-9);
    }

    #[test]
    fn limit_functional_rejects_alternating_family() {
        let cs: Vec<f64> = (0..40).map(|k| if k % 2 == 0 { 1.0 } else { -1.0 }).collect();
        let family = det_family(&cs);
        let norm = NNorm::determinant(2).unwrap();
        let basis = vec![
            Element::vector(vec![1.0, 0.0]).unwrap(),
            Element::vector(vec![0.0, 1.0]).unwrap(),
        ];
        let err = pointwise_limit_functional(&family, &norm, &basis, 1e-6, 42).unwrap_err();
        assert!(err.to_string().contains("basis element 0"));
    }

    #[test]
    fn weakstar_pass_and_wrong_candidate() {
        let cs: Vec<f64> = (1..=30).map(|k| 1.0 + 0.5_f64.powi(k)).collect();
        let family = det_family(&cs);
        let norm = NNorm::determinant(2).unwrap();
        let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();
        let total_set = vec![
            Element::vector(vec![1.0, 0.0]).unwrap(),
            Element::vector(vec![0.0, 1.0]).unwrap(),
        ];
        let points = vec![Element::vector(vec![2.0, 5.0]).unwrap()];

        let good = BLinearFunctional::determinant_form(anchors.clone(), 1.0).unwrap();
        let report =
            weakstar_check(&family, &good, &total_set, &points, &norm, 1e-6).unwrap();
        assert!(report.norms_bounded && report.cauchy_on_total_set);
        assert!(report.converges_on_points);
        assert!(report.verdict);

        let wrong = BLinearFunctional::determinant_form(anchors, 2.0).unwrap();
        let report =
            weakstar_check(&family, &wrong, &total_set, &points, &norm, 1e-6).unwrap();
        assert!(report.norms_bounded && report.cauchy_on_total_set);
        assert!(!report.converges_on_points);
        assert!(!report.verdict);
    }

    #[test]
    fn weakstar_rejects_non_spanning_total_set() {
        let family = det_family(&[1.0, 1.0]);
        let norm = NNorm::determinant(2).unwrap();
        let total_set = vec![Element::vector(vec![1.0, 0.0]).unwrap()];
        let candidate = family.members()[0].clone();
        assert!(
            weakstar_check(&family, &candidate, &total_set, &[], &norm, 1e-8).is_err()
        );
    }

    #[test]
    fn uniform_implies_pointwise_holds() {
        let family = det_family(&[0.5, 1.0, 0.25]);
        let norm = NNorm::determinant(2).unwrap();
        let points: Vec<Element> = (0..20)
            .map(|i| Element::vector(vec![i as f64 - 10.0, 0.5 * i as f64]).unwrap())
            .collect();
        let report = uniform_implies_pointwise(&family, &norm, 1.0, &points, 1e-9).unwrap();
        assert!(report.passed());
    }
}

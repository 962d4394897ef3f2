//! Boundedness of functional sequences: Cauchy families have bounded norms,
//! pointwise limits are again bounded functionals, and weak* convergence is
//! characterized by norm bounds plus Cauchy behavior on a total set.

use nnormed::element::Element;
use nnormed::functional::{BAnchors, BLinearFunctional};
use nnormed::nnorm::NNorm;
use nnormed::ubp::{
    cauchy_family_bound, pointwise_limit_functional, weakstar_check, FunctionalFamily, CAUCHY_TOL,
};
use nnormed::vector::Vector;

fn main() {
    let norm = NNorm::determinant(2).unwrap();
    let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();
    // T_k = (1 + 2^-k) times the unit determinant form.
    let members: Vec<BLinearFunctional> = (1..=40)
        .map(|k| {
            BLinearFunctional::determinant_form(anchors.clone(), 1.0 + 0.5_f64.powi(k)).unwrap()
        })
        .collect();
    let family = FunctionalFamily::new(members, vec![]).unwrap();

    let points = vec![
        Element::vector(vec![1.0, 0.0]).unwrap(),
        Element::vector(vec![2.0, -3.0]).unwrap(),
    ];
    let report = cauchy_family_bound(&family, &norm, &points, CAUCHY_TOL).unwrap();
    println!(
        "Cauchy family: per-point Cauchy = {:?}, norms bounded by {:.6}",
        report.per_point_cauchy.unwrap(),
        report.uniform_lower
    );

    let basis = vec![
        Element::vector(vec![1.0, 0.0]).unwrap(),
        Element::vector(vec![0.0, 1.0]).unwrap(),
    ];
    let limit = pointwise_limit_functional(&family, &norm, &basis, CAUCHY_TOL, 42).unwrap();
    println!(
        "pointwise limit at (1,0): {:.9}",
        limit.evaluate(&basis[0]).unwrap()
    );

    let candidate = BLinearFunctional::determinant_form(anchors, 1.0).unwrap();
    let report = weakstar_check(&family, &candidate, &basis, &points, &norm, 1e-6).unwrap();
    println!(
        "weak*: norms bounded {}, Cauchy on total set {}, converges on points {} -> verdict {}",
        report.norms_bounded,
        report.cauchy_on_total_set,
        report.converges_on_points,
        report.verdict
    );
}

//! The partial-sum family on the polynomial space: each member is bounded,
//! the family is pointwise bounded on every fixed polynomial, yet the norms
//! grow without bound — so no uniform bound exists and the space cannot be
//! complete in its n-norm.

use nnormed::element::Element;
use nnormed::functional::BAnchors;
use nnormed::nnorm::NNorm;
use nnormed::polynomial::Polynomial;
use nnormed::ubp::{partial_sum_family, partial_sum_witness, pointwise_bounds, uniform_bound_refutation};

fn main() {
    let anchors = BAnchors::constants(vec![1.0]).unwrap();
    let norm = NNorm::poly_coeff_product(2).unwrap();
    let family = partial_sum_family(&anchors, 20).unwrap();

    // Pointwise: on a fixed polynomial of degree N the whole family stays
    // below (N + 1) * max |coefficient|.
    let x = Element::Polynomial(Polynomial::new(vec![0.5, -2.0, 1.5, 0.25]).unwrap());
    let report = pointwise_bounds(&family, std::slice::from_ref(&x)).unwrap();
    println!(
        "pointwise bound at a degree-3 polynomial: {:.6} (cap 4 * 2 = 8)",
        report.per_point_bounds[0]
    );

    // Uniform: the witness x(t) = 1 + t + ... + t^k drives the k-th norm to
    // at least k + 1.
    let report =
        uniform_bound_refutation(&family, &norm, Some(&partial_sum_witness), 100, 42).unwrap();
    for (i, est) in report.per_member_norm_lower.iter().enumerate() {
        if i % 5 == 0 {
            println!("||T_{i}|| >= {:.1}", est.lower);
        }
    }
    println!("uniform bound refuted: {}", report.uniform_bound_refuted);
}

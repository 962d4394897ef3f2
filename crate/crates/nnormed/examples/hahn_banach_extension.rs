//! Norm-preserving extension, two ways: the sampled one-step construction
//! through the admissible alpha interval, and the exact determinant-case
//! extension via the cofactor vector.

use nnormed::element::Element;
use nnormed::functional::{BAnchors, BLinearFunctional};
use nnormed::hahn_banach::{extend_determinant_form, extend_with_validated_alpha};
use nnormed::nnorm::NNorm;
use nnormed::subspace::Subspace;
use nnormed::vector::Vector;

fn main() {
    // One-step extension in R^2: T_W = 0 on the vertical line, extended to
    // span{(0,1), (1,0)} with alpha from the sampled interval.
    let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();
    let norm = NNorm::determinant(2).unwrap();
    let w = Subspace::new(vec![Vector::new(vec![0.0, 1.0]).unwrap()], 2).unwrap();
    let t_w = BLinearFunctional::weight_form(anchors, Vector::zeros(2)).unwrap();
    let x0 = Vector::new(vec![1.0, 0.0]).unwrap();
    let (interval, result) =
        extend_with_validated_alpha(&t_w, &w, &x0, &norm, 1.0, 200, 42).unwrap();
    println!(
        "one-step: alpha interval [{:.6}, {:.6}], restriction residual {:.2e}, preserved {}",
        interval.lo, interval.hi, result.restriction_residual, result.preserved
    );

    // Exact extension from the last-coordinate-zero subspace for n = 2, 3, 4
    // with the one-zero anchor pattern; both norms come out exactly 1.
    for n in [2usize, 3, 4] {
        let anchors: Vec<Vector> = (1..n)
            .map(|i| {
                Vector::new((0..n).map(|j| if j == i - 1 { 0.0 } else { 1.0 }).collect())
                    .unwrap()
            })
            .collect();
        let anchors = BAnchors::vectors(anchors).unwrap();
        let w = Subspace::new((0..n - 1).map(|i| Vector::basis(n, i)).collect(), n).unwrap();
        let v = anchors.cofactor_vector().unwrap();
        let t_w = BLinearFunctional::weight_form(anchors, v)
            .unwrap()
            .restricted_to(w.clone())
            .unwrap();
        let norm = NNorm::determinant(n).unwrap();
        let result = extend_determinant_form(&t_w, &w, &norm, 1e-9).unwrap();
        println!(
            "n = {n}: ||T_W|| = {}, ||T|| = {}, residual {:.2e}",
            result.norm_original,
            result.norm_extended_exact.unwrap(),
            result.restriction_residual
        );
        // The extension really does agree with T_W on W.
        let probe = Element::Vector(w.member(&vec![0.5; n - 1]));
        let gap = (result.extended.evaluate(&probe).unwrap()
            - t_w.evaluate(&probe).unwrap())
        .abs();
        println!("  agreement on a W probe: gap {gap:.2e}");
    }
}

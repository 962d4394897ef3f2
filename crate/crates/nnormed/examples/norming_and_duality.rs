//! The dual side of the toolkit: norming functionals, recovering the n-norm
//! as a sup over the dual ball, annihilators of a subspace, and the distance
//! duality identity.

use nnormed::element::Element;
use nnormed::functional::{anchored_norm, BAnchors, BLinearFunctional};
use nnormed::hahn_banach::{
    annihilator_functional, distance_duality_check, distance_to_subspace, norm_via_dual_sup,
    norming_functional,
};
use nnormed::nnorm::NNorm;
use nnormed::subspace::Subspace;
use nnormed::vector::Vector;

fn main() {
    let norm = NNorm::determinant(2).unwrap();
    let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();

    // A norm-one functional attaining ||x0, b|| at x0.
    let x0 = Element::vector(vec![2.5, -4.0]).unwrap();
    let t = norming_functional(&x0, &norm, &anchors).unwrap();
    println!(
        "norming functional: T(x0) = {} = ||x0, b|| = {}",
        t.evaluate(&x0).unwrap(),
        anchored_norm(&norm, &anchors, &x0).unwrap()
    );

    // With that functional in the pool, the dual sup recovers the norm; a
    // pool of other bounded forms only ever under-shoots it.
    let pool = vec![
        t,
        BLinearFunctional::determinant_form(anchors.clone(), 0.3).unwrap(),
        BLinearFunctional::determinant_form(anchors.clone(), -2.0).unwrap(),
    ];
    println!(
        "dual sup over the pool: {}",
        norm_via_dual_sup(&x0, &norm, &anchors, &pool).unwrap()
    );

    // Distance to a subspace inside ker(v) is exact, and the annihilator
    // functional attains it with norm one.
    let w = Subspace::new(vec![Vector::new(vec![0.0, 1.0]).unwrap()], 2).unwrap();
    let x1 = Element::vector(vec![3.0, 5.0]).unwrap();
    let h = distance_to_subspace(&x1, &w, &norm, &anchors, 1, 0).unwrap();
    println!("distance from (3,5) to span{{(0,1)}}: {} (exact: {})", h.distance, h.exact);

    let ann = annihilator_functional(&x1, &w, &norm, &anchors).unwrap();
    println!(
        "annihilator: T((0,7)) = {}, T(x1) = {}",
        ann.evaluate(&Element::vector(vec![0.0, 7.0]).unwrap()).unwrap(),
        ann.evaluate(&x1).unwrap()
    );

    let duality = distance_duality_check(&x1, &w, &norm, &anchors).unwrap();
    println!(
        "duality: distance {} vs dual sup {} (gap {:.1e})",
        duality.lhs_distance, duality.rhs_sup, duality.gap
    );
}

//! Exact versus sampled functional norms, unboundedness detection, and the
//! three continuity notions (Lipschitz, sequential, epsilon-delta) agreeing
//! on a bounded functional.

use nnormed::element::Element;
use nnormed::functional::{
    check_b_sequential_continuity, check_epsilon_delta_continuity, check_lipschitz,
    estimate_norm_sampling, exact_norm_determinant, BAnchors, BLinearFunctional, UNBOUNDED_TOL,
};
use nnormed::nnorm::NNorm;
use nnormed::sampling;
use nnormed::sequences::SequenceSample;
use nnormed::vector::Vector;

fn main() {
    let norm = NNorm::determinant(2).unwrap();
    let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();
    let t = BLinearFunctional::determinant_form(anchors.clone(), 1.5).unwrap();

    // The cofactor decomposition gives the norm in closed form; sampling
    // reproduces it from below.
    let exact = exact_norm_determinant(&t, UNBOUNDED_TOL).unwrap();
    let sampled = estimate_norm_sampling(&t, &norm, 2000, 42).unwrap();
    println!(
        "exact norm {} vs sampled lower bound {:.9}",
        exact.exact.unwrap(),
        sampled.lower
    );

    // A weight with a component in ker(v) is unbounded; the sampler's hill
    // climb pushes the ratio past any fixed bound.
    let bad = BLinearFunctional::weight_form(anchors, Vector::new(vec![1.0, 1.0]).unwrap())
        .unwrap();
    let exact = exact_norm_determinant(&bad, UNBOUNDED_TOL).unwrap();
    let sampled = estimate_norm_sampling(&bad, &norm, 500, 42).unwrap();
    println!(
        "weight (1,1): unbounded = {} (exact analysis), sampled ratio {:.3e}",
        exact.unbounded, sampled.lower
    );

    // Lipschitz with the exact norm as the constant.
    let pairs: Vec<(Element, Element)> = (0..200)
        .map(|i| {
            let mut rng = sampling::rng_for(7, i);
            (
                Element::Vector(Vector::from(sampling::random_coords(&mut rng, 2))),
                Element::Vector(Vector::from(sampling::random_coords(&mut rng, 2))),
            )
        })
        .collect();
    let report = check_lipschitz(&t, &norm, 1.5, &pairs, 1e-9).unwrap();
    println!(
        "Lipschitz: {} pairs, {} violations",
        report.checked,
        report.violations.len()
    );

    // Sequential continuity along x_k = x + u / k.
    let x = Element::vector(vec![1.0, 1.0]).unwrap();
    let u = Element::vector(vec![1.0, 0.0]).unwrap();
    let terms: Vec<Element> = (1..=500)
        .map(|k| x.add(&u.scale(1.0 / k as f64)).unwrap())
        .collect();
    let seq = SequenceSample::new(terms, vec![]).unwrap();
    let report = check_b_sequential_continuity(&t, &norm, &seq, &x, 1e-2).unwrap();
    println!(
        "sequential continuity: {} tail terms, {} violations",
        report.checked,
        report.violations.len()
    );

    // Epsilon-delta at the origin: each epsilon gets a rung of the geometric
    // delta ladder.
    let origin = Element::vector(vec![0.0, 0.0]).unwrap();
    let report =
        check_epsilon_delta_continuity(&t, &norm, &origin, &[0.5, 0.1, 0.01], 32, 42).unwrap();
    for r in &report.per_epsilon {
        println!("epsilon {:>5}: delta = {:?}", r.epsilon, r.delta);
    }
}

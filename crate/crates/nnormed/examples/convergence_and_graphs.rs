//! Finite-prefix convergence and Cauchy checks in an n-norm, and the
//! closed-graph test for a matrix operator along a convergent sequence.

use nnormed::element::Element;
use nnormed::nnorm::NNorm;
use nnormed::sequences::{check_cauchy, check_closed_graph, check_convergence, SequenceSample};

fn vec_el(coords: &[f64]) -> Element {
    Element::vector(coords.to_vec()).unwrap()
}

fn main() {
    let norm = NNorm::determinant(2).unwrap();

    // x_k = (1/k, 0) converges to the origin; the tail maximum over the
    // default spanning anchor sets decays like 1/k.
    let terms: Vec<Element> = (1..=1000).map(|k| vec_el(&[1.0 / k as f64, 0.0])).collect();
    let seq = SequenceSample::new(terms, vec![]).unwrap();
    let limit = vec_el(&[0.0, 0.0]);
    let report = check_convergence(&norm, &seq, &limit, 0.1, 1e-2).unwrap();
    println!(
        "1/k sequence: converged = {}, max tail norm {:.3e}",
        report.converged, report.max_tail_norm
    );

    // Geometric partial sums are Cauchy at any tolerance the tail supports.
    let mut acc = 0.0;
    let terms: Vec<Element> = (1..=60)
        .map(|k| {
            acc += 0.5_f64.powi(k);
            vec_el(&[acc, 0.0])
        })
        .collect();
    let seq2 = SequenceSample::new(terms, vec![]).unwrap();
    let report = check_cauchy(&norm, &seq2, 0.25, 1e-4).unwrap();
    println!(
        "geometric sums: Cauchy = {}, worst tail gap {:.3e}",
        report.converged, report.max_tail_norm
    );

    // Closed graph of the diagonal operator diag(2, 3) along x_k -> 0: the
    // correct image limit passes, a deliberately shifted one is caught with
    // residual exactly equal to the shift.
    let op = vec![vec![2.0, 0.0], vec![0.0, 3.0]];
    let terms: Vec<Element> = (1..=400)
        .map(|k| vec_el(&[1.0 / k as f64, 1.0 / k as f64]))
        .collect();
    let seq3 = SequenceSample::new(terms, vec![]).unwrap();
    let x_limit = vec_el(&[0.0, 0.0]);
    for (label, y_limit) in [("true limit", vec_el(&[0.0, 0.0])), ("shifted", vec_el(&[1.0, 0.0]))]
    {
        let report = check_closed_graph(
            &norm, &norm, &op, &seq3, &x_limit, &y_limit, 0.05, 1e-1,
        )
        .unwrap();
        println!(
            "{label}: premises {}, residual {:.3}, closed at sample scale {}",
            report.premises_hold, report.residual, report.closed_at_sample_scale
        );
    }
}

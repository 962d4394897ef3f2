//! Checks the four n-norm axioms on seeded random tuples for each of the
//! concrete norms: determinant, polynomial coefficient product, and the two
//! product-space norms.

use nnormed::element::Element;
use nnormed::nnorm::{check_axioms, NNorm};
use nnormed::polynomial::Polynomial;
use nnormed::sampling;
use nnormed::vector::Vector;

fn vector_tuples(n: usize, count: usize, seed: u64) -> Vec<Vec<Element>> {
    (0..count)
        .map(|i| {
            let mut rng = sampling::rng_for(seed, i as u64);
            (0..n)
                .map(|_| Element::Vector(Vector::from(sampling::random_coords(&mut rng, n))))
                .collect()
        })
        .collect()
}

fn poly_tuples(n: usize, count: usize, seed: u64) -> Vec<Vec<Element>> {
    (0..count)
        .map(|i| {
            let mut rng = sampling::rng_for(seed, i as u64);
            (0..n)
                .map(|j| {
                    let coeffs = sampling::random_coords(&mut rng, j + 2);
                    Element::Polynomial(Polynomial::new(coeffs).unwrap())
                })
                .collect()
        })
        .collect()
}

fn main() {
    let scalars = [-2.0, -1.0, -0.5, 0.0, 0.5, 3.0];
    let tol = 1e-9;

    let det3 = NNorm::determinant(3).unwrap();
    let report = check_axioms(&det3, &vector_tuples(3, 500, 42), &scalars, tol).unwrap();
    println!(
        "determinant (n=3): {} tuples, {} violations",
        report.samples_checked,
        report.violations.len()
    );

    let poly2 = NNorm::poly_coeff_product(2).unwrap();
    let report = check_axioms(&poly2, &poly_tuples(2, 500, 7), &scalars, tol).unwrap();
    println!(
        "poly coeff product (n=2): {} tuples, {} violations",
        report.samples_checked,
        report.violations.len()
    );

    // Product-space norms over pairs of R^2 tuples.
    let det2 = NNorm::determinant(2).unwrap();
    let pair_tuples: Vec<Vec<Element>> = vector_tuples(2, 500, 11)
        .into_iter()
        .zip(vector_tuples(2, 500, 13))
        .map(|(left, right)| {
            left.into_iter()
                .zip(right)
                .map(|(l, r)| Element::pair(l, r).unwrap())
                .collect()
        })
        .collect();
    for (name, norm) in [
        ("product sum", NNorm::product_sum(det2.clone(), det2.clone()).unwrap()),
        ("product max", NNorm::product_max(det2.clone(), det2).unwrap()),
    ] {
        let report = check_axioms(&norm, &pair_tuples, &scalars, tol).unwrap();
        println!(
            "{name} (n=2 x n=2): {} tuples, {} violations",
            report.samples_checked,
            report.violations.len()
        );
    }
}

//! Acceptance gate: one test per criterion, each printing a PASS/FAIL line.
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.
//!
//! The determinant oracle used for cross-checks is an independent cofactor
//! expansion, deliberately not sharing code with the library's
//! elimination-based evaluator.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use nnormed::element::Element;
use nnormed::functional::{
    anchored_norm, check_b_sequential_continuity, check_epsilon_delta_continuity,
    check_lipschitz, estimate_norm_sampling, exact_norm, exact_norm_determinant, BAnchors,
    BLinearFunctional, UNBOUNDED_TOL,
};
use nnormed::hahn_banach::{
    distance_duality_check, extend_determinant_form, extend_with_validated_alpha,
    norm_via_dual_sup, norming_functional,
};
use nnormed::nnorm::{check_axioms, NNorm};
use nnormed::polynomial::Polynomial;
use nnormed::sampling;
use nnormed::sequences::SequenceSample;
use nnormed::subspace::Subspace;
use nnormed::ubp::{
    partial_sum_family, pointwise_bounds, pointwise_limit_functional,
    uniform_convergence_on_net, uniform_implies_pointwise, weakstar_check, EpsNet,
    FunctionalFamily, CAUCHY_TOL,
};
use nnormed::vector::Vector;

/// Reference determinant by first-row cofactor expansion.
fn det_oracle(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    let mut acc = 0.0;
    for j in 0..n {
        if m[0][j] == 0.0 {
            continue;
        }
        let minor: Vec<Vec<f64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * m[0][j] * det_oracle(&minor);
    }
    acc
}

fn verdict(label: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("{label}: PASS"),
        Err(e) => {
            println!("{label}: FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

fn random_vector(seed: u64, stream: u64, dim: usize) -> Vector {
    let mut rng = sampling::rng_for(seed, stream);
    Vector::from(sampling::random_coords(&mut rng, dim))
}

/// Random independent vector anchors for arity-n determinant fixtures.
fn random_anchors(seed: u64, dim: usize) -> BAnchors {
    for attempt in 0..64 {
        let candidates: Vec<Vector> = (0..dim - 1)
            .map(|i| random_vector(seed, (attempt * 8 + i) as u64, dim))
            .collect();
        if let Ok(a) = BAnchors::vectors(candidates) {
            return a;
        }
    }
    unreachable!("random anchors kept colliding");
}

#[test]
fn criterion_1_ubp_counterexample_cli() {
    verdict("criterion 1 (partial-sum family demo)", || {
        let start = Instant::now();
        let output = Command::new(env!("CARGO_BIN_EXE_nnormed"))
            .args(["ubp-demo", "--kmax", "50"])
            .output()
            .unwrap();
        assert!(start.elapsed().as_secs_f64() < 1.0, "demo took too long");
        assert_eq!(output.status.code(), Some(0));
        let report: serde_json::Value = serde_json::from_slice(&output.stdout).unwrap();
        let rows = report["members"].as_array().unwrap();
        assert_eq!(rows.len(), 50);
        let mut previous = f64::NEG_INFINITY;
        for (i, row) in rows.iter().enumerate() {
            let k = (i + 1) as f64;
            let lower = row["norm_lower"].as_f64().unwrap();
            assert!((lower - (k + 1.0)).abs() <= 1e-9, "row {i}: {lower}");
            assert!(lower > previous, "ladder not strictly increasing at {i}");
            previous = lower;
        }
        assert_eq!(report["verdicts"]["uniform_bound_refuted"], true);
        // k = 0 through the library: the norm of T_0 is exactly 1.
        let anchors = BAnchors::constants(vec![1.0]).unwrap();
        let t0 = BLinearFunctional::partial_sum_form(anchors, 0).unwrap();
        assert_eq!(exact_norm(&t0).unwrap().exact, Some(1.0));
    });
}

#[test]
fn criterion_2_pointwise_bound() {
    verdict("criterion 2 (pointwise bound on fixed polynomials)", || {
        let b = vec![2.0, -1.5];
        let prod: f64 = b.iter().product();
        let anchors = BAnchors::constants(b).unwrap();
        let family = partial_sum_family(&anchors, 50).unwrap();
        for i in 0..20_u64 {
            let mut rng = sampling::rng_for(2024, i);
            let degree = (i % 11) as usize;
            let coeffs = sampling::random_coords(&mut rng, degree + 1);
            let poly = Polynomial::new(coeffs.clone()).unwrap();
            let n_x = poly.degree() as f64;
            let cap = (n_x + 1.0)
                * coeffs
                    .iter()
                    .map(|a| (a * prod).abs())
                    .fold(0.0_f64, f64::max);
            let x = Element::Polynomial(poly);
            let report = pointwise_bounds(&family, std::slice::from_ref(&x)).unwrap();
            assert!(
                report.per_point_bounds[0] <= cap + 1e-12,
                "fixture {i}: {} > {cap}",
                report.per_point_bounds[0]
            );
        }
    });
}

#[test]
fn criterion_3_exact_extension() {
    verdict("criterion 3 (exact extension, n = 2, 3, 4)", || {
        for n in [2usize, 3, 4] {
            // W = last coordinate zero; anchor i has a zero at slot i-1 and
            // ones elsewhere.
            let anchors: Vec<Vector> = (1..n)
                .map(|i| {
                    Vector::new(
                        (0..n).map(|j| if j == i - 1 { 0.0 } else { 1.0 }).collect(),
                    )
                    .unwrap()
                })
                .collect();
            let anchors = BAnchors::vectors(anchors).unwrap();
            let w = Subspace::new((0..n - 1).map(|i| Vector::basis(n, i)).collect(), n)
                .unwrap();
            let v = anchors.cofactor_vector().unwrap();
            let t_w = BLinearFunctional::weight_form(anchors, v)
                .unwrap()
                .restricted_to(w.clone())
                .unwrap();
            let norm = NNorm::determinant(n).unwrap();
            let result = extend_determinant_form(&t_w, &w, &norm, 1e-9).unwrap();
            assert!(result.restriction_residual <= 1e-12, "n = {n}");
            assert!((result.norm_original - 1.0).abs() <= 1e-12, "n = {n}");
            assert!(
                (result.norm_extended_exact.unwrap() - 1.0).abs() <= 1e-12,
                "n = {n}"
            );
        }
    });
}

#[test]
fn criterion_4_axiom_suite() {
    verdict("criterion 4 (axiom suite, 4 norms x 10^4 tuples)", || {
        let start = Instant::now();
        let scalars = [-2.0, -1.0, -0.5, 0.0, 0.5, 3.0];
        let tol = 1e-9;
        let count = 10_000;

        // Determinant in R^3, cross-checked against the cofactor oracle.
        let det3 = NNorm::determinant(3).unwrap();
        let tuples: Vec<Vec<Element>> = (0..count)
            .map(|i| {
                (0..3)
                    .map(|j| Element::Vector(random_vector(100, (i * 3 + j) as u64, 3)))
                    .collect()
            })
            .collect();
        for tuple in tuples.iter().step_by(100) {
            let rows: Vec<Vec<f64>> = tuple
                .iter()
                .map(|e| e.as_vector().unwrap().coords().to_vec())
                .collect();
            let expected = det_oracle(&rows).abs();
            let got = det3.eval(tuple).unwrap();
            assert!((got - expected).abs() <= 1e-9 * (1.0 + expected));
        }
        let report = check_axioms(&det3, &tuples, &scalars, tol).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations.first());

        // Polynomial coefficient product, arity 2.
        let poly2 = NNorm::poly_coeff_product(2).unwrap();
        let tuples: Vec<Vec<Element>> = (0..count)
            .map(|i| {
                let mut rng = sampling::rng_for(101, i as u64);
                (0..2)
                    .map(|j| {
                        Element::Polynomial(
                            Polynomial::new(sampling::random_coords(&mut rng, j + 2)).unwrap(),
                        )
                    })
                    .collect()
            })
            .collect();
        let report = check_axioms(&poly2, &tuples, &scalars, tol).unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations.first());

        // Product-space sum and max over pairs of R^2 tuples.
        let det2 = NNorm::determinant(2).unwrap();
        let tuples: Vec<Vec<Element>> = (0..count)
            .map(|i| {
                (0..2)
                    .map(|j| {
                        Element::pair(
                            Element::Vector(random_vector(102, (i * 4 + j) as u64, 2)),
                            Element::Vector(random_vector(103, (i * 4 + j) as u64, 2)),
                        )
                        .unwrap()
                    })
                    .collect()
            })
            .collect();
        for norm in [
            NNorm::product_sum(det2.clone(), det2.clone()).unwrap(),
            NNorm::product_max(det2.clone(), det2.clone()).unwrap(),
        ] {
            let report = check_axioms(&norm, &tuples, &scalars, tol).unwrap();
            assert!(report.violations.is_empty(), "{:?}", report.violations.first());
        }
        assert!(start.elapsed().as_secs_f64() < 10.0, "axiom suite too slow");
    });
}

#[test]
fn criterion_5_norm_oracle_agreement() {
    verdict("criterion 5 (exact vs sampled norms, unbounded detection)", || {
        for i in 0..50_u64 {
            let dim = if i % 2 == 0 { 2 } else { 3 };
            let anchors = random_anchors(500 + i, dim);
            let v = anchors.cofactor_vector().unwrap();
            let mut rng = sampling::rng_for(600, i);
            let c = 3.0 * (sampling::random_coords(&mut rng, 1)[0] + 1.1);
            let t = if i % 3 == 0 {
                BLinearFunctional::determinant_form(anchors.clone(), c).unwrap()
            } else {
                BLinearFunctional::weight_form(anchors.clone(), v.scale(c)).unwrap()
            };
            let exact = exact_norm_determinant(&t, UNBOUNDED_TOL).unwrap();
            assert!(!exact.unbounded);
            let exact_value = exact.exact.unwrap();
            let norm = NNorm::determinant(dim).unwrap();
            let sampled = estimate_norm_sampling(&t, &norm, 100_000, 700 + i).unwrap();
            assert!(
                (sampled.lower - exact_value).abs() <= 1e-3 * exact_value.max(1e-12),
                "instance {i}: sampled {} vs exact {exact_value}",
                sampled.lower
            );
        }
        // Ten weights outside span(v): the exact analysis flags them and the
        // sampled ratio blows past 10^6.
        for i in 0..10_u64 {
            let dim = if i % 2 == 0 { 2 } else { 3 };
            let anchors = random_anchors(800 + i, dim);
            let v = anchors.cofactor_vector().unwrap();
            let mut w = random_vector(900, i, dim);
            // Strip a near-parallel draw of degeneracy by mixing in an
            // off-axis component.
            let c = w.dot(&v) / v.dot(&v);
            if w.sub(&v.scale(c)).euclid() < 1e-3 {
                w = w.add(&random_vector(901, i, dim));
            }
            let t = BLinearFunctional::weight_form(anchors, w).unwrap();
            assert!(exact_norm_determinant(&t, UNBOUNDED_TOL).unwrap().unbounded);
            let norm = NNorm::determinant(dim).unwrap();
            let sampled = estimate_norm_sampling(&t, &norm, 1000, 950 + i).unwrap();
            assert!(sampled.lower > 1e6, "instance {i}: ratio only {}", sampled.lower);
        }
    });
}

#[test]
fn criterion_6_one_step_soundness() {
    verdict("criterion 6 (one-step extension soundness, 20 instances)", || {
        let mut built = 0_u64;
        let mut attempt = 0_u64;
        while built < 20 {
            attempt += 1;
            let dim = if built % 2 == 0 { 2 } else { 3 };
            let w_dim = 1 + (built as usize % (dim - 1));
            let anchors = random_anchors(1000 + attempt, dim);
            let v = anchors.cofactor_vector().unwrap();
            let basis: Vec<Vector> = (0..w_dim)
                .map(|j| random_vector(1100 + attempt, j as u64, dim))
                .collect();
            let Ok(w) = Subspace::new(basis, dim) else { continue };
            let x0 = random_vector(1200 + attempt, 0, dim);
            if w.extended(&x0).is_err() {
                continue;
            }
            let mut rng = sampling::rng_for(1300, attempt);
            let c = sampling::random_coords(&mut rng, 1)[0] + 1.6;
            let t_w = BLinearFunctional::weight_form(anchors.clone(), v.scale(c))
                .unwrap()
                .restricted_to(w.clone())
                .unwrap();
            let norm = NNorm::determinant(dim).unwrap();
            let norm_tw = c.abs();
            let (_, result) =
                extend_with_validated_alpha(&t_w, &w, &x0, &norm, norm_tw, 200, 1400 + attempt)
                    .unwrap();

            // Fresh carrier samples, disjoint seed stream.
            let carrier = w.extended(&x0).unwrap();
            for s in 0..1000_u64 {
                let mut rng = sampling::rng_for(1500 + attempt, s);
                let y = carrier.member(&sampling::random_coords(&mut rng, carrier.dim()));
                let ye = Element::Vector(y);
                let value = result.extended.evaluate(&ye).unwrap().abs();
                let bound = norm_tw * anchored_norm(&norm, &anchors, &ye).unwrap();
                assert!(
                    value <= bound + 1e-6,
                    "instance {built}: {value} > {bound} + 1e-6"
                );
            }
            // Restriction to W.
            for s in 0..200_u64 {
                let mut rng = sampling::rng_for(1600 + attempt, s);
                let x = w.member(&sampling::random_coords(&mut rng, w.dim()));
                let xe = Element::Vector(x);
                let gap = (result.extended.evaluate(&xe).unwrap()
                    - t_w.evaluate(&xe).unwrap())
                .abs();
                assert!(gap <= 1e-9, "instance {built}: restriction gap {gap}");
            }
            built += 1;
        }
    });
}

#[test]
fn criterion_7_dual_identities() {
    verdict("criterion 7 (dual sup and distance duality)", || {
        // Dual-sup identity on 10^2 seeded instances in R^2 and R^3.
        for i in 0..100_u64 {
            let dim = if i % 2 == 0 { 2 } else { 3 };
            let anchors = random_anchors(2000 + i, dim);
            let norm = NNorm::determinant(dim).unwrap();
            let x = Element::Vector(random_vector(2100, i, dim));
            let expected = anchored_norm(&norm, &anchors, &x).unwrap();
            if expected <= 1e-9 {
                continue; // degenerate draw: no norming functional exists
            }
            let pool = vec![
                norming_functional(&x, &norm, &anchors).unwrap(),
                BLinearFunctional::determinant_form(anchors.clone(), 0.25).unwrap(),
            ];
            let sup = norm_via_dual_sup(&x, &norm, &anchors, &pool).unwrap();
            assert!(
                (sup - expected).abs() <= 1e-12 * expected,
                "instance {i}: {sup} vs {expected}"
            );
        }
        // Distance duality with subspaces inside ker(v): gap at most 1e-9.
        for i in 0..50_u64 {
            let dim = if i % 2 == 0 { 2 } else { 3 };
            let anchors = random_anchors(2200 + i, dim);
            let anchor_vecs = anchors.as_vectors().unwrap().to_vec();
            let s_dim = 1 + (i as usize % (dim - 1));
            let s = Subspace::new(anchor_vecs[..s_dim].to_vec(), dim).unwrap();
            let x = Element::Vector(random_vector(2300, i, dim));
            let norm = NNorm::determinant(dim).unwrap();
            let report = distance_duality_check(&x, &s, &norm, &anchors).unwrap();
            assert!(report.gap <= 1e-9, "instance {i}: gap {}", report.gap);
            // Oracle cross-check: the distance equals |det(x, anchors)|.
            let mut rows = vec![x.as_vector().unwrap().coords().to_vec()];
            rows.extend(anchor_vecs.iter().map(|a| a.coords().to_vec()));
            assert!((report.lhs_distance - det_oracle(&rows).abs()).abs() <= 1e-9);
        }
    });
}

#[test]
fn criterion_8_property_suites() {
    verdict("criterion 8 (theorem property suites)", || {
        let start = Instant::now();
        let norm = NNorm::determinant(2).unwrap();
        let anchors = BAnchors::vectors(vec![Vector::new(vec![0.0, 1.0]).unwrap()]).unwrap();
        let t = BLinearFunctional::determinant_form(anchors.clone(), 1.5).unwrap();

        // Lipschitz continuity with the exact norm as the constant.
        let pairs: Vec<(Element, Element)> = (0..500_u64)
            .map(|i| {
                (
                    Element::Vector(random_vector(3000, i, 2)),
                    Element::Vector(random_vector(3001, i, 2)),
                )
            })
            .collect();
        let report = check_lipschitz(&t, &norm, 1.5, &pairs, 1e-9).unwrap();
        assert!(report.passed());

        // Sequential and epsilon-delta continuity agree on bounded forms.
        let x = Element::vector(vec![1.0, 1.0]).unwrap();
        let u = Element::vector(vec![1.0, 0.0]).unwrap();
        let terms: Vec<Element> = (1..=500)
            .map(|k| x.add(&u.scale(1.0 / k as f64)).unwrap())
            .collect();
        let seq = SequenceSample::new(terms, vec![]).unwrap();
        let report = check_b_sequential_continuity(&t, &norm, &seq, &x, 1e-1).unwrap();
        assert!(report.passed());
        let report =
            check_epsilon_delta_continuity(&t, &norm, &x, &[0.5, 0.05, 0.005], 32, 3002)
                .unwrap();
        assert!(report.all_found);

        // Uniform implies pointwise at the exact norm cap.
        let family = FunctionalFamily::new(
            vec![
                t.clone(),
                BLinearFunctional::determinant_form(anchors.clone(), -1.0).unwrap(),
                BLinearFunctional::determinant_form(anchors.clone(), 0.5).unwrap(),
            ],
            vec![],
        )
        .unwrap();
        let points: Vec<Element> = (0..200_u64)
            .map(|i| Element::Vector(random_vector(3003, i, 2)))
            .collect();
        let report = uniform_implies_pointwise(&family, &norm, 1.5, &points, 1e-9).unwrap();
        assert!(report.passed());

        // Net-propagated uniform convergence: the inflated net sup bounds
        // the deviation at every sampled point within the net radius.
        let limit = BLinearFunctional::determinant_form(anchors.clone(), 1.0).unwrap();
        let seq_family: Vec<BLinearFunctional> = (1..=10)
            .map(|k| {
                BLinearFunctional::determinant_form(anchors.clone(), 1.0 + 1.0 / k as f64)
                    .unwrap()
            })
            .collect();
        let centers: Vec<Element> = (0..6_u64)
            .map(|i| Element::Vector(random_vector(3004, i, 2)))
            .collect();
        let radius = 0.2;
        let net = EpsNet::new(centers.clone(), radius).unwrap();
        let report = uniform_convergence_on_net(&seq_family, &limit, &net, 2.0, &norm).unwrap();
        assert!(report.decreasing_tail);
        for (k, member) in seq_family.iter().enumerate() {
            for (ci, center) in centers.iter().enumerate() {
                // Probe points within the net radius of this center.
                for s in 0..20_u64 {
                    let mut rng = sampling::rng_for(3005, (k as u64) << 32 | (ci as u64) << 16 | s);
                    let direction = Vector::from(sampling::random_coords(&mut rng, 2));
                    let dn = anchored_norm(&norm, &anchors, &Element::Vector(direction.clone()))
                        .unwrap();
                    if dn <= 1e-9 {
                        continue;
                    }
                    let probe = center
                        .add(&Element::Vector(direction.scale(0.9 * radius / dn)))
                        .unwrap();
                    let deviation =
                        (member.evaluate(&probe).unwrap() - limit.evaluate(&probe).unwrap()).abs();
                    assert!(
                        deviation <= report.per_member_propagated_bound[k] + 1e-9,
                        "member {k}, center {ci}: {deviation} > {}",
                        report.per_member_propagated_bound[k]
                    );
                }
            }
        }

        // Limit functional boundedness: convergent multiples of a fixed form
        // produce a bounded weight-form limit (the M-bound is verified
        // internally on 10^3 samples).
        let cauchy_family = FunctionalFamily::new(
            (1..=40)
                .map(|k| {
                    BLinearFunctional::determinant_form(
                        anchors.clone(),
                        1.0 + 0.5_f64.powi(k),
                    )
                    .unwrap()
                })
                .collect(),
            vec![],
        )
        .unwrap();
        let basis = vec![
            Element::vector(vec![1.0, 0.0]).unwrap(),
            Element::vector(vec![0.0, 1.0]).unwrap(),
        ];
        let limit_fn =
            pointwise_limit_functional(&cauchy_family, &norm, &basis, CAUCHY_TOL, 3006).unwrap();
        // Linearity residuals of the construction.
        let lin_pairs: Vec<(Element, Element)> = (0..100_u64)
            .map(|i| {
                (
                    Element::Vector(random_vector(3007, i, 2)),
                    Element::Vector(random_vector(3008, i, 2)),
                )
            })
            .collect();
        let report = nnormed::functional::check_b_linearity(
            &limit_fn,
            &lin_pairs,
            &[-1.0, 0.5, 2.0],
            1e-9,
        )
        .unwrap();
        assert!(report.passed());

        // Weak*: conditions I + II with the true limit pass the direct
        // check; a wrong candidate keeps I + II but fails direct convergence.
        let total_set = basis.clone();
        let probe_points = vec![Element::vector(vec![2.0, 5.0]).unwrap()];
        let good = weakstar_check(
            &cauchy_family,
            &limit,
            &total_set,
            &probe_points,
            &norm,
            1e-6,
        )
        .unwrap();
        assert!(good.norms_bounded && good.cauchy_on_total_set && good.converges_on_points);
        let wrong = BLinearFunctional::determinant_form(anchors, 2.0).unwrap();
        let bad = weakstar_check(
            &cauchy_family,
            &wrong,
            &total_set,
            &probe_points,
            &norm,
            1e-6,
        )
        .unwrap();
        assert!(bad.norms_bounded && bad.cauchy_on_total_set && !bad.converges_on_points);

        assert!(start.elapsed().as_secs_f64() < 30.0, "property suites too slow");
    });
}

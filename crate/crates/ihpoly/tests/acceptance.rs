//! Acceptance suite: one test per exit criterion, each exact (zero
//! tolerance) and time-bounded where a bound is stated. Run with
//! `cargo test --test acceptance -- --nocapture` to see the pass lines.

mod common;

use std::time::{Duration, Instant};

use common::{arb_two_strata, binomial, gauss_binomial_oracle, int_coeff, poly};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use ihpoly::blowup5::{self, HypersurfaceDatum};
use ihpoly::grassmann::q_poly;
use ihpoly::laurent::{Coeff, LaurentPoly};
use ihpoly::schubert::{self, Route, SchubertCase, SchubertDatum};
use ihpoly::twostrata;

/// All valid Schubert data with `l <= max_l` (the minimum condition forces
/// `i`), lexicographic in `(l, j, k)`.
fn valid_schubert_data(max_l: i64) -> Vec<SchubertDatum> {
    let mut out = Vec::new();
    for l in 1..=max_l {
        for j in 1..=l {
            for k in 1..=l {
                let datum = SchubertDatum::new(j.min(k) - 1, j, k, l);
                debug_assert!(schubert::validate(&datum).is_empty());
                out.push(datum);
            }
        }
    }
    out
}

fn best_of_three(mut run: impl FnMut()) -> Duration {
    (0..3)
        .map(|_| {
            let start = Instant::now();
            run();
            start.elapsed()
        })
        .min()
        .unwrap()
}

/// Criterion 1: for (i, j, k, l) = (1, 2, 2, 3) the routes f1, f2, f3 and
/// the generic engine all return exactly 1 + t^2 + t^4, in under 1 ms.
#[test]
fn criterion_1_schubert_worked_case() {
    let datum = SchubertDatum::new(1, 2, 2, 3);
    let expected = poly(&[1, 0, 1, 0, 1]);

    assert_eq!(
        schubert::ih_via_case_formula(&datum, SchubertCase::IPlusOneEqJ).unwrap(),
        expected
    );
    assert_eq!(
        schubert::ih_via_case_formula(&datum, SchubertCase::IPlusOneEqK).unwrap(),
        expected
    );
    assert_eq!(schubert::ih_via_f3(&datum).unwrap(), expected);
    let data = schubert::to_two_strata(&datum).unwrap();
    assert_eq!(twostrata::ih_poly(&data).unwrap(), expected);

    let result = schubert::ih(&datum).unwrap();
    assert_eq!(result.poly, expected);
    assert_eq!(result.routes, vec![Route::F1, Route::F2, Route::F3, Route::Generic]);

    let elapsed = best_of_three(|| {
        schubert::ih(&datum).unwrap();
    });
    assert!(elapsed < Duration::from_millis(1), "took {elapsed:?}");
    println!(
        "criterion 1 PASS: (1,2,2,3) gives 1 + t^2 + t^4 on every route in {elapsed:?}"
    );
}

/// Criterion 2: the polynomial identity sweep over all valid data with
/// l <= 10 and l <= j + k holds exactly, zero mismatches, in under 10 s.
#[test]
fn criterion_2_identity_sweep() {
    let start = Instant::now();
    let report = schubert::verify_identities(10);
    let elapsed = start.elapsed();

    assert_eq!(report.mismatches.len(), 0, "mismatches: {:?}", report.mismatches);
    // per l: sum over k <= l-1 of admissible j gives 95 per identity side
    assert_eq!(report.checked, 190, "sweep size changed");
    // the guard trips exactly on k = l (identity 1) and j = l (identity 2)
    assert_eq!(report.skipped.len(), 110);
    for skip in &report.skipped {
        assert!(skip.reason.contains("negative"), "unexpected skip {skip:?}");
    }
    assert!(elapsed < Duration::from_secs(10), "took {elapsed:?}");
    println!(
        "criterion 2 PASS: {} identities hold exactly ({} skipped on subscript guards) in {elapsed:?}",
        report.checked,
        report.skipped.len()
    );
}

/// Criterion 3: the small-resolution law. For every valid datum with
/// l <= 10 and l - j - k >= 0, ih equals the resolution polynomial exactly.
#[test]
fn criterion_3_small_resolution_law() {
    let mut checked = 0;
    for datum in valid_schubert_data(10) {
        if datum.l - datum.j - datum.k < 0 {
            continue;
        }
        let result = schubert::ih(&datum).unwrap();
        assert!(result.routes.contains(&Route::Cheeger), "{datum}");
        assert_eq!(result.poly, schubert::h_resolution(&datum).unwrap(), "{datum}");
        checked += 1;
    }
    assert!(checked > 100);
    println!("criterion 3 PASS: ih = h_resolution for all {checked} small cases with l <= 10");
}

/// Criterion 4: hypersurface closed-form oracle. For every balanced degree
/// vector with max d_i <= 6 the intersection-ring evaluation of the top
/// Chern number equals the closed form, anchored at (1,1,1,1) -> 12, in
/// under 5 s.
#[test]
fn criterion_4_c4_closed_form_oracle() {
    let start = Instant::now();
    let anchor = HypersurfaceDatum::new(1, 1, 1, 1).unwrap();
    assert_eq!(blowup5::c4_via_intersection_ring(&anchor), 12.into());
    assert_eq!(blowup5::c4_closed_form(&anchor), 12.into());

    let vectors = blowup5::degree_vectors(6);
    for datum in &vectors {
        assert_eq!(
            blowup5::c4_via_intersection_ring(datum),
            blowup5::c4_closed_form(datum),
            "paths disagree at {datum}"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!(
        "criterion 4 PASS: c4 intersection ring = closed form on {} degree vectors in {elapsed:?}",
        vectors.len()
    );
}

/// Criterion 5: the closed-form IH polynomial equals the generic engine on
/// the packaged data for every balanced degree vector with max d_i <= 6,
/// anchored at (1,1,1,1) -> 1 + 2t^2 + 2t^4 + 2t^6 + t^8.
#[test]
fn criterion_5_hypersurface_vs_generic_engine() {
    let anchor = HypersurfaceDatum::new(1, 1, 1, 1).unwrap();
    assert_eq!(blowup5::ih_closed_form(&anchor), poly(&[1, 0, 2, 0, 2, 0, 2, 0, 1]));

    let vectors = blowup5::degree_vectors(6);
    for datum in &vectors {
        let closed = blowup5::ih_closed_form(datum);
        let data = blowup5::to_two_strata(datum).unwrap();
        assert!(twostrata::validate(&data).is_empty(), "{datum}");
        let engine = twostrata::ih_poly(&data).unwrap();
        assert_eq!(closed, engine, "engine disagrees at {datum}");
    }
    println!(
        "criterion 5 PASS: closed-form IH = generic engine on {} degree vectors",
        vectors.len()
    );
}

/// Criterion 6: on at least 1000 randomized valid two-strata data sets
/// (palindromic nonnegative fibers, p <= 8, q <= 8, random H_delta),
/// f equals H_delta * g exactly.
#[test]
fn criterion_6_f_equals_h_delta_times_g_randomized() {
    let cases = 1200;
    let mut runner = TestRunner::new(Config { cases, ..Config::default() });
    runner
        .run(&arb_two_strata(), |data| {
            let g = twostrata::g_poly(&data).unwrap();
            prop_assert_eq!(twostrata::f_poly(&data), &data.h_delta * &g);
            Ok(())
        })
        .unwrap();
    println!("criterion 6 PASS: f = h_delta * g on {cases} randomized data sets");
}

/// Criterion 7: every IH polynomial produced by the model sweeps has
/// nonnegative coefficients, constant term 1, and is palindromic of degree
/// 2n.
#[test]
fn criterion_7_structural_ih_properties() {
    let mut checked = 0;
    for datum in valid_schubert_data(10) {
        let result = match schubert::ih(&datum) {
            Ok(result) => result,
            // single-stratum collapse produces no IH polynomial
            Err(schubert::SchubertError::Degenerate) => continue,
            Err(other) => panic!("{datum}: {other}"),
        };
        let n = schubert::invariants(&datum).unwrap().n;
        assert!(result.poly.has_nonnegative_coeffs(), "{datum}");
        assert_eq!(result.poly.coeff(0), int_coeff(1), "{datum}");
        assert!(result.poly.is_palindromic(2 * n), "{datum}");
        checked += 1;
    }
    for datum in blowup5::degree_vectors(6) {
        let ih = blowup5::ih_hypersurface(&datum).unwrap();
        assert!(ih.has_nonnegative_coeffs(), "{datum}");
        assert_eq!(ih.coeff(0), int_coeff(1), "{datum}");
        assert!(ih.is_palindromic(8), "{datum}");
        checked += 1;
    }
    println!("criterion 7 PASS: {checked} IH polynomials are nonnegative, monic-constant, palindromic");
}

/// Criterion 8: the Grassmannian suite for 0 <= k <= l <= 12 — exact
/// divisibility, palindromic of degree 2k(l-k), duality, and point count
/// binomial(l, k) at t = 1; plus agreement with the division-free
/// recurrence oracle.
#[test]
fn criterion_8_grassmannian_suite() {
    let mut checked = 0;
    for l in 0..=12i64 {
        for k in 0..=l {
            let q = q_poly(k, l).unwrap();
            assert_eq!(q, gauss_binomial_oracle(k, l), "oracle disagrees at ({k}, {l})");
            assert!(q.is_palindromic(2 * k * (l - k)), "({k}, {l})");
            assert_eq!(q, q_poly(l - k, l).unwrap(), "duality fails at ({k}, {l})");
            assert_eq!(
                q.eval_at_one(),
                Coeff::from_integer(binomial(l as u64, k as u64)),
                "point count fails at ({k}, {l})"
            );
            checked += 1;
        }
    }
    assert_eq!(checked, 91);
    println!("criterion 8 PASS: all {checked} Grassmannian polynomials verified");
}

/// The reciprocal construction and the block-sum shortcut for g agree on
/// the worked model data (regression anchor for the engine wiring).
#[test]
fn engine_worked_data_regression() {
    let datum = HypersurfaceDatum::new(1, 1, 1, 1).unwrap();
    let data = blowup5::to_two_strata(&datum).unwrap();
    assert_eq!(twostrata::g_poly(&data).unwrap(), poly(&[0, 0, 1, 0, 1]));
    assert_eq!(twostrata::f_poly(&data), poly(&[0, 0, 1, 0, 2, 0, 1]));
    let report = twostrata::decomposition_report(&data);
    assert_eq!(report.shifted_constants(), vec![(2, 1), (0, 1)]);
    assert_eq!(
        LaurentPoly::from_int_coeffs(0, &[1, 0, 3, 0, 4, 0, 3, 0, 1]),
        data.h_resolution
    );
}

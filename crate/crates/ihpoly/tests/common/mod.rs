//! Shared helpers and independent oracles for the integration suites.
//!
//! The Gaussian-binomial oracle here deliberately avoids the library's
//! exact-division route: it builds the polynomials by the Pascal-style
//! recurrence, so agreement with `grassmann::q_poly` checks the division
//! path against an independent computation.

#![allow(dead_code)]

use num_bigint::BigInt;
use proptest::prelude::*;

use ihpoly::laurent::{Coeff, LaurentPoly};
use ihpoly::twostrata::{BettiVector, TwoStrataData};

pub fn poly(coeffs: &[i64]) -> LaurentPoly {
    LaurentPoly::from_int_coeffs(0, coeffs)
}

/// Gaussian binomial `[l choose k]` in `q = t^2` via the recurrence
/// `[l k] = [l-1 k-1] + q^k [l-1 k]`, no division involved.
pub fn gauss_binomial_oracle(k: i64, l: i64) -> LaurentPoly {
    assert!(0 <= k && k <= l);
    if k == 0 || k == l {
        return LaurentPoly::one();
    }
    let smaller = gauss_binomial_oracle(k - 1, l - 1);
    let shifted = gauss_binomial_oracle(k, l - 1).shifted(2 * k);
    &smaller + &shifted
}

/// `binomial(l, k)` over big integers.
pub fn binomial(l: u64, k: u64) -> BigInt {
    if k > l {
        return BigInt::ZERO;
    }
    let mut result = BigInt::from(1);
    for i in 0..k.min(l - k) {
        result = result * BigInt::from(l - i) / BigInt::from(i + 1);
    }
    result
}

pub fn coeffwise_le(a: &LaurentPoly, b: &LaurentPoly) -> bool {
    let degrees: Vec<i64> = a.terms().map(|(d, _)| d).chain(b.terms().map(|(d, _)| d)).collect();
    degrees.into_iter().all(|d| a.coeff(d) <= b.coeff(d))
}

pub fn int_coeff(v: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(v))
}

/// Random Laurent polynomial with small rational coefficients.
pub fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-6i64..=6, -12i64..=12, 1i64..=4), 0..8).prop_map(|terms| {
        let mut p = LaurentPoly::zero();
        for (numer, degree, denom) in terms {
            p += &LaurentPoly::monomial(degree, Coeff::new(numer.into(), denom.into()));
        }
        p
    })
}

pub fn arb_nonzero_poly() -> impl Strategy<Value = LaurentPoly> {
    arb_poly().prop_filter("nonzero", |p| !p.is_zero())
}

/// Random valid two-strata data: palindromic nonnegative fiber with
/// `a^0 >= 1`, `p <= 8`, `q <= 8`, random `H_delta` with constant term
/// `>= 1` supported in `[0, 2m]`, and a resolution polynomial built as
/// `H_delta * g + extra` so the engine postconditions can hold.
pub fn arb_two_strata() -> impl Strategy<Value = TwoStrataData> {
    (0i64..=8, 1i64..=8, 0i64..=4).prop_flat_map(|(p, q, m)| {
        let fiber_half = prop::collection::vec(0u64..=3, p as usize);
        let a0 = 1u64..=3;
        let h_delta_tail = prop::collection::vec(0i64..=3, (2 * m) as usize);
        let extra_tail = prop::collection::vec(0i64..=2, (2 * (m + p + q)) as usize);
        (Just((p, q, m)), a0, fiber_half, h_delta_tail, extra_tail).prop_map(
            |((p, q, m), a0, fiber_half, h_delta_tail, extra_tail)| {
                let n = m + p + q;
                let mut dims = vec![0u64; 2 * p as usize + 1];
                dims[0] = a0;
                for (idx, value) in fiber_half.iter().enumerate() {
                    dims[idx + 1] = *value;
                }
                for alpha in 0..=(p as usize) {
                    dims[2 * p as usize - alpha] = dims[alpha];
                }
                let fiber = BettiVector::new(dims);

                let mut h_delta_coeffs = vec![1i64];
                h_delta_coeffs.extend(h_delta_tail);
                let h_delta = LaurentPoly::from_int_coeffs(0, &h_delta_coeffs);

                let mut extra_coeffs = vec![1i64];
                extra_coeffs.extend(extra_tail);
                let extra = LaurentPoly::from_int_coeffs(0, &extra_coeffs);

                let mut data = TwoStrataData {
                    n,
                    m,
                    p,
                    q,
                    fiber,
                    h_resolution: LaurentPoly::zero(),
                    h_delta,
                    resolution_is_projective: false,
                    delta_is_projective: false,
                };
                let g = ihpoly::twostrata::g_poly(&data).expect("g is integral");
                data.h_resolution = &(&data.h_delta * &g) + &extra;
                data
            },
        )
    })
}

//! The generic two-strata engine.
//!
//! From abstract resolution data — the dimensions `(n, m, p, q)`, the Betti
//! vector of the fiber over the singular locus, and the Poincaré polynomials
//! of the resolution and of the singular locus — this module computes the
//! correction polynomial `g(t)`, the pushforward summand polynomial `f(t)`,
//! the summand report of the decomposition, and the intersection-cohomology
//! Poincaré polynomial `IH(t) = H_res(t) - H_delta(t) * g(t)`.
//!
//! `f(t)` is deliberately computed by a different route than
//! `H_delta(t) * g(t)` (summand-by-summand convolution instead of the
//! reciprocal construction of `g`), so the identity `f = H_delta * g`
//! serves as an independent cross-check of both.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::laurent::{Coeff, LaurentPoly};

/// Betti numbers `a^0, ..., a^{2p}` of a smooth projective fiber.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiVector {
    dims: Vec<u64>,
}

impl BettiVector {
    pub fn new(dims: Vec<u64>) -> Self {
        Self { dims }
    }

    /// Betti vector of complex projective space `P^dim`: `1, 0, 1, ..., 1`.
    pub fn projective_space(dim: usize) -> Self {
        let dims = (0..=2 * dim).map(|a| u64::from(a % 2 == 0)).collect();
        Self { dims }
    }

    pub fn dims(&self) -> &[u64] {
        &self.dims
    }

    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `a^alpha`, zero outside the stored range.
    pub fn dim_at(&self, alpha: i64) -> u64 {
        if alpha < 0 {
            return 0;
        }
        self.dims.get(alpha as usize).copied().unwrap_or(0)
    }

    pub fn is_palindromic(&self) -> bool {
        let n = self.dims.len();
        (0..n).all(|a| self.dims[a] == self.dims[n - 1 - a])
    }
}

/// Input data for the generic engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoStrataData {
    /// Dimension of the singular variety.
    pub n: i64,
    /// Dimension of the singular locus.
    pub m: i64,
    /// Dimension of the fiber over the singular locus.
    pub p: i64,
    /// Rank of the normal bundle of the exceptional locus, `n - m - p`.
    pub q: i64,
    /// Betti numbers of the fiber.
    pub fiber: BettiVector,
    /// Poincaré polynomial of the resolution.
    pub h_resolution: LaurentPoly,
    /// Poincaré polynomial of the singular locus.
    pub h_delta: LaurentPoly,
    /// When set, `h_resolution` must be palindromic of degree `2n`.
    pub resolution_is_projective: bool,
    /// When set, `h_delta` must be palindromic of degree `2m`.
    pub delta_is_projective: bool,
}

/// A single invariant violation found by [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DimensionMismatch { n: i64, m: i64, p: i64, q: i64 },
    DimensionOutOfRange { name: &'static str, value: i64, min: i64 },
    FiberLength { expected: usize, actual: usize },
    FiberNotPalindromic,
    FiberNotConnected,
    DeltaCoefficientNotNonnegativeInteger { degree: i64 },
    DeltaConstantTermMissing,
    DeltaSupportOutOfRange { degree: i64, max: i64 },
    ResolutionCoefficientNotNonnegativeInteger { degree: i64 },
    ResolutionSupportOutOfRange { degree: i64, max: i64 },
    ResolutionNotPalindromic { expected_degree: i64 },
    DeltaNotPalindromic { expected_degree: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DimensionMismatch { n, m, p, q } => {
                write!(f, "dimension mismatch: n = {n} but m + p + q = {}", m + p + q)
            }
            Violation::DimensionOutOfRange { name, value, min } => {
                write!(f, "{name} = {value} is below the minimum {min}")
            }
            Violation::FiberLength { expected, actual } => {
                write!(f, "fiber Betti vector has {actual} entries, expected 2p+1 = {expected}")
            }
            Violation::FiberNotPalindromic => write!(f, "fiber not palindromic"),
            Violation::FiberNotConnected => write!(f, "fiber Betti number a^0 must be >= 1"),
            Violation::DeltaCoefficientNotNonnegativeInteger { degree } => {
                write!(f, "h_delta coefficient in degree {degree} is not a nonnegative integer")
            }
            Violation::DeltaConstantTermMissing => {
                write!(f, "h_delta constant term must be >= 1")
            }
            Violation::DeltaSupportOutOfRange { degree, max } => {
                write!(f, "h_delta has a term in degree {degree} outside [0, {max}]")
            }
            Violation::ResolutionCoefficientNotNonnegativeInteger { degree } => {
                write!(f, "h_resolution coefficient in degree {degree} is not a nonnegative integer")
            }
            Violation::ResolutionSupportOutOfRange { degree, max } => {
                write!(f, "h_resolution has a term in degree {degree} outside [0, {max}]")
            }
            Violation::ResolutionNotPalindromic { expected_degree } => {
                write!(f, "h_resolution is not palindromic of degree {expected_degree}")
            }
            Violation::DeltaNotPalindromic { expected_degree } => {
                write!(f, "h_delta is not palindromic of degree {expected_degree}")
            }
        }
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum EngineError {
    /// `r(t)` is only defined when `p - q >= 0`.
    #[error("case not applicable: p - q = {0} is negative")]
    CaseNotApplicable(i64),
    /// `g(t)` came out with a non-integer coefficient. The half term of
    /// `r(t)` always doubles back to an integer for integer Betti data, so
    /// this only fires on corrupted input.
    #[error("internal integrality failure: g(t) has non-integer coefficient {coeff} in degree {degree}")]
    IntegralityFailure { degree: i64, coeff: String },
    /// The computed IH polynomial is not a valid Poincaré polynomial, which
    /// proves the supplied data violated the model hypotheses.
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
}

/// One summand of the pushforward decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecompositionSummand {
    /// The intersection-cohomology complex of the base.
    IntersectionComplex,
    /// `multiplicity` copies of the constant sheaf on the singular locus,
    /// shifted by `shift`.
    ShiftedConstant { shift: i64, multiplicity: u64 },
}

/// The full summand list of the decomposition of the pushforward.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub summands: Vec<DecompositionSummand>,
}

impl DecompositionReport {
    /// Shifted-constant summands only, as `(shift, multiplicity)` pairs.
    pub fn shifted_constants(&self) -> Vec<(i64, u64)> {
        self.summands
            .iter()
            .filter_map(|s| match s {
                DecompositionSummand::ShiftedConstant { shift, multiplicity } => {
                    Some((*shift, *multiplicity))
                }
                DecompositionSummand::IntersectionComplex => None,
            })
            .collect()
    }

    /// Self-duality check: for every shifted summand at `m + b` (b > 0)
    /// there is one of equal multiplicity at `m - b`.
    pub fn is_symmetric_about(&self, m: i64) -> bool {
        let pairs = self.shifted_constants();
        pairs.iter().all(|&(shift, mult)| {
            let mirror = 2 * m - shift;
            shift == m || pairs.iter().any(|&(s, mu)| s == mirror && mu == mult)
        })
    }

    /// Bookkeeping polynomial: the sum of `multiplicity * t^(n - shift)`
    /// over the shifted summands. Convolved with `H_delta` it reproduces
    /// `f(t)`.
    pub fn support_poly(&self, n: i64) -> LaurentPoly {
        let mut p = LaurentPoly::zero();
        for (shift, mult) in self.shifted_constants() {
            p += &LaurentPoly::monomial(n - shift, Coeff::from_integer(BigInt::from(mult)));
        }
        p
    }
}

impl fmt::Display for DecompositionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for s in &self.summands {
            if !first {
                write!(f, " (+) ")?;
            }
            first = false;
            match s {
                DecompositionSummand::IntersectionComplex => write!(f, "IC")?,
                DecompositionSummand::ShiftedConstant { shift, multiplicity } => {
                    if *multiplicity == 1 {
                        write!(f, "Q_delta[{shift}]")?;
                    } else {
                        write!(f, "{multiplicity} Q_delta[{shift}]")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn check_coeff_poly(
    poly: &LaurentPoly,
    max_degree: i64,
    bad_coeff: impl Fn(i64) -> Violation,
    bad_support: impl Fn(i64, i64) -> Violation,
    out: &mut Vec<Violation>,
) {
    for (d, c) in poly.terms() {
        if !c.is_integer() || c.is_negative() {
            out.push(bad_coeff(d));
        }
        if d < 0 || d > max_degree {
            out.push(bad_support(d, max_degree));
        }
    }
}

/// Check every numerically decidable invariant of the input data. An empty
/// list is the precondition for [`ih_poly`] and [`decomposition_report`].
/// The cup-product surjectivity hypothesis of the underlying model is not
/// decidable from Betti data and stays an assumption.
pub fn validate(data: &TwoStrataData) -> Vec<Violation> {
    let mut out = Vec::new();
    if data.n != data.m + data.p + data.q {
        out.push(Violation::DimensionMismatch { n: data.n, m: data.m, p: data.p, q: data.q });
    }
    for (name, value, min) in [
        ("n", data.n, 1),
        ("m", data.m, 0),
        ("p", data.p, 0),
        ("q", data.q, 1),
    ] {
        if value < min {
            out.push(Violation::DimensionOutOfRange { name, value, min });
        }
    }
    if data.p >= 0 {
        let expected = 2 * data.p as usize + 1;
        if data.fiber.len() != expected {
            out.push(Violation::FiberLength { expected, actual: data.fiber.len() });
        } else if !data.fiber.is_palindromic() {
            out.push(Violation::FiberNotPalindromic);
        }
    }
    if data.fiber.dim_at(0) < 1 {
        out.push(Violation::FiberNotConnected);
    }
    check_coeff_poly(
        &data.h_delta,
        2 * data.m,
        |degree| Violation::DeltaCoefficientNotNonnegativeInteger { degree },
        |degree, max| Violation::DeltaSupportOutOfRange { degree, max },
        &mut out,
    );
    if data.h_delta.coeff(0) < Coeff::one() {
        out.push(Violation::DeltaConstantTermMissing);
    }
    check_coeff_poly(
        &data.h_resolution,
        2 * data.n,
        |degree| Violation::ResolutionCoefficientNotNonnegativeInteger { degree },
        |degree, max| Violation::ResolutionSupportOutOfRange { degree, max },
        &mut out,
    );
    if data.resolution_is_projective && !data.h_resolution.is_palindromic(2 * data.n) {
        out.push(Violation::ResolutionNotPalindromic { expected_degree: 2 * data.n });
    }
    if data.delta_is_projective && !data.h_delta.is_palindromic(2 * data.m) {
        out.push(Violation::DeltaNotPalindromic { expected_degree: 2 * data.m });
    }
    out
}

/// `r(t) = (1/2) a^{p-q} t^{p-q} + sum of a^alpha t^alpha for alpha < p-q`.
///
/// Only defined when `p - q >= 0`; the half coefficient is restored to an
/// integer by the reciprocal sum in [`g_poly`].
pub fn r_poly(data: &TwoStrataData) -> Result<LaurentPoly, EngineError> {
    let s = data.p - data.q;
    if s < 0 {
        return Err(EngineError::CaseNotApplicable(s));
    }
    let mut r = LaurentPoly::zero();
    for alpha in 0..s {
        r += &LaurentPoly::monomial(alpha, Coeff::from_integer(data.fiber.dim_at(alpha).into()));
    }
    let half = BigRational::new(data.fiber.dim_at(s).into(), 2.into());
    r += &LaurentPoly::monomial(s, half);
    Ok(r)
}

/// `g(t) = t^{2q} r(t) + t^{2p} r(1/t)`, and zero when `p - q < 0`.
///
/// The result always has integer coefficients for palindromic fiber data;
/// a non-integer coefficient is reported as corruption.
pub fn g_poly(data: &TwoStrataData) -> Result<LaurentPoly, EngineError> {
    if data.p - data.q < 0 {
        return Ok(LaurentPoly::zero());
    }
    let r = r_poly(data)?;
    let g = &r.shifted(2 * data.q) + &r.reciprocal(2 * data.p);
    if !g.is_integral() {
        let degree = g
            .terms()
            .find(|(_, c)| !c.is_integer())
            .map(|(d, _)| d)
            .unwrap_or_default();
        return Err(EngineError::IntegralityFailure { degree, coeff: g.coeff(degree).to_string() });
    }
    Ok(g)
}

/// Poincaré polynomial `f(t)` of the non-IC part of the pushforward,
/// computed by summand convolution: each shifted-constant summand
/// contributes its multiplicity at the matching degree, and the total is
/// convolved with `H_delta`. Zero when `p - q < 0`.
pub fn f_poly(data: &TwoStrataData) -> LaurentPoly {
    let s = data.p - data.q;
    if s < 0 {
        return LaurentPoly::zero();
    }
    let mut multiplicities = LaurentPoly::zero();
    for beta in 0..=s {
        multiplicities += &LaurentPoly::monomial(
            beta + 2 * data.q,
            Coeff::from_integer(data.fiber.dim_at(beta).into()),
        );
    }
    for beta in s + 1..=2 * s {
        multiplicities += &LaurentPoly::monomial(
            beta + 2 * data.q,
            Coeff::from_integer(data.fiber.dim_at(beta + 2 * data.q).into()),
        );
    }
    &multiplicities * &data.h_delta
}

/// `IH(t) = H_res(t) - H_delta(t) * g(t)`.
///
/// Callers must have [`validate`]d the data. The result is guaranteed to
/// have nonnegative integer coefficients, and to be palindromic of degree
/// `2n` when both projectivity flags are set; a violation means the data
/// cannot come from an actual two-strata resolution and is reported as
/// [`EngineError::HypothesisViolated`].
pub fn ih_poly(data: &TwoStrataData) -> Result<LaurentPoly, EngineError> {
    let g = g_poly(data)?;
    let ih = &data.h_resolution - &(&data.h_delta * &g);
    let bad = ih.non_nonneg_integer_degrees();
    if !bad.is_empty() {
        return Err(EngineError::HypothesisViolated(format!(
            "IH coefficient in degree {} is {}, not a nonnegative integer",
            bad[0],
            ih.coeff(bad[0]),
        )));
    }
    if data.resolution_is_projective
        && data.delta_is_projective
        && !ih.is_palindromic(2 * data.n)
    {
        return Err(EngineError::HypothesisViolated(format!(
            "IH = {ih} is not palindromic of degree {}",
            2 * data.n,
        )));
    }
    Ok(ih)
}

/// Summand list of the pushforward decomposition: the IC summand plus, for
/// `0 <= alpha <= p-q`, `a^alpha` copies of the constant sheaf shifted by
/// `n - 2q - alpha`, and for `p-q+1 <= alpha <= 2p-2q`, `a^{alpha+2q}`
/// copies shifted the same way. Zero multiplicities are dropped; the
/// shifted part is empty when `p - q < 0`.
pub fn decomposition_report(data: &TwoStrataData) -> DecompositionReport {
    let mut summands = vec![DecompositionSummand::IntersectionComplex];
    let s = data.p - data.q;
    if s >= 0 {
        for alpha in 0..=2 * s {
            let multiplicity = if alpha <= s {
                data.fiber.dim_at(alpha)
            } else {
                data.fiber.dim_at(alpha + 2 * data.q)
            };
            if multiplicity > 0 {
                summands.push(DecompositionSummand::ShiftedConstant {
                    shift: data.n - 2 * data.q - alpha,
                    multiplicity,
                });
            }
        }
    }
    DecompositionReport { summands }
}

/// Total Betti number of `IH`: the value of [`ih_poly`] at `t = 1`.
pub fn total_ih_dimension(ih: &LaurentPoly) -> Option<u64> {
    ih.eval_at_one().to_integer().to_u64()
}

//! Exact Laurent-polynomial arithmetic over the rationals.
//!
//! [`LaurentPoly`] is the universal value type of this crate: a finitely
//! supported map from integer (cohomological) degree to an exact
//! [`BigRational`] coefficient. Degrees may be negative and coefficients are
//! unbounded, so Grassmannian sweeps and the half-integer intermediate steps
//! of the fiber bookkeeping never overflow or round.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Exact rational coefficient with unbounded-precision integer parts.
pub type Coeff = BigRational;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LaurentError {
    /// Division by the zero polynomial.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// Exact division failed: the remainder is nonzero. Signals a formula
    /// misuse or invalid parameters upstream.
    #[error("not divisible: exact division leaves a nonzero remainder")]
    NotDivisible,
}

/// A Laurent polynomial with exact rational coefficients.
///
/// Canonical form: no stored coefficient is zero, so two values are equal
/// iff their coefficient maps are equal. All operations are pure and values
/// are immutable after construction.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::monomial(0, c)
    }

    /// The single term `c * t^degree` (zero polynomial when `c == 0`).
    pub fn monomial(degree: i64, c: Coeff) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(degree, c);
        }
        Self { coeffs }
    }

    /// Integer-coefficient convenience form of [`LaurentPoly::monomial`].
    pub fn int_monomial(degree: i64, c: i64) -> Self {
        Self::monomial(degree, Coeff::from_integer(BigInt::from(c)))
    }

    /// `t^degree`.
    pub fn t_pow(degree: i64) -> Self {
        Self::monomial(degree, Coeff::one())
    }

    /// Build from a dense integer coefficient slice starting at `min_degree`.
    pub fn from_int_coeffs(min_degree: i64, coeffs: &[i64]) -> Self {
        let mut poly = Self::zero();
        for (offset, &c) in coeffs.iter().enumerate() {
            poly.add_term(min_degree + offset as i64, Coeff::from_integer(BigInt::from(c)));
        }
        poly
    }

    /// Build from a dense [`BigInt`] coefficient slice starting at `min_degree`.
    pub fn from_bigint_coeffs(min_degree: i64, coeffs: &[BigInt]) -> Self {
        let mut poly = Self::zero();
        for (offset, c) in coeffs.iter().enumerate() {
            poly.add_term(min_degree + offset as i64, Coeff::from_integer(c.clone()));
        }
        poly
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The coefficient of `t^degree` (zero when absent).
    pub fn coeff(&self, degree: i64) -> Coeff {
        self.coeffs.get(&degree).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Iterate over the nonzero terms in ascending degree order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Coeff)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    fn add_term(&mut self, degree: i64, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.entry(degree) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Multiply by `t^offset`.
    pub fn shifted(&self, offset: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(d, c)| (d + offset, c.clone())).collect();
        Self { coeffs }
    }

    /// Multiply every coefficient by `c`.
    pub fn scaled(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let coeffs = self.coeffs.iter().map(|(d, v)| (*d, v * c)).collect();
        Self { coeffs }
    }

    /// Exact division: returns `q` with `self = den * q`, or
    /// [`LaurentError::NotDivisible`] when the remainder is nonzero.
    pub fn exact_div(&self, den: &Self) -> Result<Self, LaurentError> {
        if den.is_zero() {
            return Err(LaurentError::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let (nlo, nhi) = (self.min_degree().unwrap(), self.max_degree().unwrap());
        let (dlo, dhi) = (den.min_degree().unwrap(), den.max_degree().unwrap());
        let qlo = nlo - dlo;
        let qhi = nhi - dhi;
        if qhi < qlo {
            return Err(LaurentError::NotDivisible);
        }

        // Dense working copies; index = degree - nlo.
        let mut rem: Vec<Coeff> = vec![Coeff::zero(); (nhi - nlo + 1) as usize];
        for (d, c) in self.terms() {
            rem[(d - nlo) as usize] = c.clone();
        }
        let den_terms: Vec<(i64, Coeff)> = den.terms().map(|(d, c)| (d, c.clone())).collect();
        let lead = den.coeff(dhi);

        let mut quot: Vec<Coeff> = vec![Coeff::zero(); (qhi - qlo + 1) as usize];
        for qd in (qlo..=qhi).rev() {
            let top = (qd + dhi - nlo) as usize;
            if rem[top].is_zero() {
                continue;
            }
            let c = &rem[top] / &lead;
            for (d, v) in &den_terms {
                let idx = (qd + d - nlo) as usize;
                let delta = &c * v;
                rem[idx] -= delta;
            }
            quot[(qd - qlo) as usize] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(LaurentError::NotDivisible);
        }

        let mut out = Self::zero();
        for (offset, c) in quot.into_iter().enumerate() {
            out.add_term(qlo + offset as i64, c);
        }
        Ok(out)
    }

    /// The reflection `t^d * p(1/t)`: the coefficient of degree `d - a` in
    /// the output is the coefficient of degree `a` in the input.
    pub fn reciprocal(&self, d: i64) -> Self {
        let coeffs = self.coeffs.iter().map(|(deg, c)| (d - deg, c.clone())).collect();
        Self { coeffs }
    }

    /// Poincaré-duality test: `t^d * p(1/t) == p`.
    pub fn is_palindromic(&self, d: i64) -> bool {
        self.reciprocal(d) == *self
    }

    /// Sum of all coefficients (the value at `t = 1`).
    pub fn eval_at_one(&self) -> Coeff {
        let mut total = Coeff::zero();
        for (_, c) in self.terms() {
            total += c;
        }
        total
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coeffs(&self) -> bool {
        self.coeffs.values().all(|c| !c.is_negative())
    }

    /// Degrees at which a coefficient fails to be a nonnegative integer.
    pub fn non_nonneg_integer_degrees(&self) -> Vec<i64> {
        self.terms()
            .filter(|(_, c)| !c.is_integer() || c.is_negative())
            .map(|(d, _)| d)
            .collect()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (d, c) in rhs.terms() {
            out.add_term(d, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (da, ca) in self.terms() {
            for (db, cb) in rhs.terms() {
                out.add_term(da + db, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        let coeffs = self.coeffs.iter().map(|(d, c)| (*d, -c.clone())).collect();
        LaurentPoly { coeffs }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (d, c) in rhs.terms() {
            self.add_term(d, c.clone());
        }
    }
}

/// Text form: sum of `c*t^d` terms sorted by ascending degree, `c` an
/// integer or `a/b` rational. The coefficient is omitted when it is `±1`
/// (except in degree 0), and `*t^d` is omitted in degree 0.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (deg, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let abs = c.abs();
            if deg == 0 {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "t^{deg}")?;
            } else {
                write!(f, "{abs}*t^{deg}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
#[error("invalid polynomial text: {0}")]
pub struct ParsePolyError(String);

impl FromStr for LaurentPoly {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParsePolyError("empty input".into()));
        }
        // Split into signed terms. A '+'/'-' starts a new term unless it
        // follows '^' or '/' (exponent sign, rational slash).
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut current = String::new();
        let mut current_neg = false;
        let mut prev_meaningful = None::<char>;
        for ch in s.chars() {
            if (ch == '+' || ch == '-')
                && !matches!(prev_meaningful, Some('^') | Some('/') | None)
            {
                terms.push((current_neg, std::mem::take(&mut current)));
                current_neg = ch == '-';
            } else if ch == '-' && prev_meaningful.is_none() {
                current_neg = true;
            } else if !ch.is_whitespace() {
                current.push(ch);
            }
            if !ch.is_whitespace() {
                prev_meaningful = Some(ch);
            }
        }
        terms.push((current_neg, current));

        let mut poly = LaurentPoly::zero();
        for (neg, body) in terms {
            if body.is_empty() {
                return Err(ParsePolyError(format!("dangling sign in {s:?}")));
            }
            let (coeff_text, degree) = match body.find('t') {
                None => (body.as_str(), 0),
                Some(pos) => {
                    let head = body[..pos].trim_end_matches('*');
                    let tail = &body[pos + 1..];
                    let deg = if tail.is_empty() {
                        1
                    } else {
                        let exp = tail
                            .strip_prefix('^')
                            .ok_or_else(|| ParsePolyError(format!("bad term {body:?}")))?;
                        exp.parse::<i64>()
                            .map_err(|_| ParsePolyError(format!("bad exponent in {body:?}")))?
                    };
                    (head, deg)
                }
            };
            let mut c = if coeff_text.is_empty() {
                Coeff::one()
            } else {
                Coeff::from_str(coeff_text)
                    .map_err(|_| ParsePolyError(format!("bad coefficient {coeff_text:?}")))?
            };
            if neg {
                c = -c;
            }
            poly.add_term(degree, c);
        }
        Ok(poly)
    }
}

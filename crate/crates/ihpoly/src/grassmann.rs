//! Poincaré polynomials of Grassmannians and projective spaces.
//!
//! `Q_k^l`, the Poincaré polynomial of the Grassmannian of `k`-planes in
//! `C^l`, is computed as the exact quotient `P_l / (P_k * P_{l-k})` where
//! `P_a = h_0 * h_1 * ... * h_{a-1}` and `h_a = 1 + t^2 + ... + t^{2a}`.
//! The divisibility of that quotient is asserted; it failing would mean the
//! factorials were transcribed wrong.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::laurent::LaurentPoly;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GrassmannError {
    #[error("negative parameter {name} = {value}")]
    NegativeParameter { name: &'static str, value: i64 },
}

/// The Grassmannian of `k`-planes in `C^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassmannParams {
    pub k: i64,
    pub l: i64,
}

impl GrassmannParams {
    pub fn new(k: i64, l: i64) -> Result<Self, GrassmannError> {
        if k < 0 {
            return Err(GrassmannError::NegativeParameter { name: "k", value: k });
        }
        if l - k < 0 {
            return Err(GrassmannError::NegativeParameter { name: "l-k", value: l - k });
        }
        Ok(Self { k, l })
    }

    /// Complex dimension `k(l-k)`.
    pub fn dimension(&self) -> i64 {
        self.k * (self.l - self.k)
    }

    pub fn poincare_poly(&self) -> LaurentPoly {
        q_poly(self.k, self.l).expect("parameters validated at construction")
    }
}

impl std::fmt::Display for GrassmannParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Gr({}, C^{})", self.k, self.l)
    }
}

/// `h_alpha = 1 + t^2 + t^4 + ... + t^{2*alpha}`.
pub fn h_poly(alpha: i64) -> Result<LaurentPoly, GrassmannError> {
    if alpha < 0 {
        return Err(GrassmannError::NegativeParameter { name: "alpha", value: alpha });
    }
    let mut p = LaurentPoly::zero();
    for d in 0..=alpha {
        p += &LaurentPoly::t_pow(2 * d);
    }
    Ok(p)
}

static P_CACHE: OnceLock<Mutex<Vec<LaurentPoly>>> = OnceLock::new();

/// `P_alpha = h_0 * h_1 * ... * h_{alpha-1}`, with `P_0 = P_1 = 1`.
///
/// Values are memoized for the lifetime of the process; the cache is safe
/// to hit from any thread.
pub fn p_poly(alpha: i64) -> Result<LaurentPoly, GrassmannError> {
    if alpha < 0 {
        return Err(GrassmannError::NegativeParameter { name: "alpha", value: alpha });
    }
    let cache = P_CACHE.get_or_init(|| Mutex::new(vec![LaurentPoly::one()]));
    let mut values = cache.lock().unwrap();
    while values.len() <= alpha as usize {
        let next_index = values.len() as i64;
        let h = h_poly(next_index - 1)?;
        let next = values.last().unwrap() * &h;
        values.push(next);
    }
    Ok(values[alpha as usize].clone())
}

static Q_CACHE: OnceLock<Mutex<HashMap<(i64, i64), LaurentPoly>>> = OnceLock::new();

/// `Q_k^l = P_l / (P_k * P_{l-k})`, the Poincaré polynomial of
/// `Gr(k, C^l)`. The division is exact for all `0 <= k <= l`; a nonzero
/// remainder is a bug and panics. Results are memoized per process.
pub fn q_poly(k: i64, l: i64) -> Result<LaurentPoly, GrassmannError> {
    if k < 0 {
        return Err(GrassmannError::NegativeParameter { name: "k", value: k });
    }
    if l < 0 {
        return Err(GrassmannError::NegativeParameter { name: "l", value: l });
    }
    if l - k < 0 {
        return Err(GrassmannError::NegativeParameter { name: "l-k", value: l - k });
    }
    let cache = Q_CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&(k, l)) {
        return Ok(hit.clone());
    }
    let num = p_poly(l)?;
    let den = &p_poly(k)? * &p_poly(l - k)?;
    let q = num
        .exact_div(&den)
        .expect("P_l is exactly divisible by P_k * P_{l-k}");
    cache.lock().unwrap().insert((k, l), q.clone());
    Ok(q)
}

/// Poincaré polynomial of `P^n`; equals `h_poly(n)` and `q_poly(1, n+1)`.
pub fn projective_space(n: i64) -> Result<LaurentPoly, GrassmannError> {
    h_poly(n)
}

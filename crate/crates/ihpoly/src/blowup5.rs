//! Hypersurfaces of `P^5` with a one-dimensional singular locus.
//!
//! The model family: a smooth complete-intersection threefold `t_1 = t_2 = 0`
//! sits inside a general hypersurface `X` of equation `t_1 t_3 - t_2 t_4 = 0`,
//! whose singular locus is the smooth curve `t_1 = t_2 = t_3 = t_4 = 0`.
//! Blowing up `P^5` along that curve resolves `X`; the exceptional locus
//! fibers over the curve with smooth quadric surfaces as fibers, so the
//! generic two-strata engine applies with `n = 4, m = 1, p = 2, q = 1`.
//!
//! The Betti numbers of the resolution come from a Chern-class computation
//! in the blow-up intersection ring, carried out here symbolically in the
//! divisor classes `H` (hyperplane pullback) and `E` (exceptional divisor)
//! and checked against the closed form on every call.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::laurent::{Coeff, LaurentPoly};
use crate::twostrata::{self, BettiVector, EngineError, TwoStrataData};

/// Degrees `(d_1, d_2, d_3, d_4)` of the four equations cutting out the
/// model, with `d_1 + d_3 = d_2 + d_4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HypersurfaceDatum {
    d: [u32; 4],
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum Blowup5Error {
    #[error("invalid degrees: {0}")]
    InvalidDegrees(String),
    /// The intersection-ring evaluation disagrees with the closed form for
    /// the top Chern number. Fatal: one of the two was transcribed wrong.
    #[error("closed-form mismatch for c4: intersection ring gives {ring}, closed form gives {closed}")]
    ClosedFormMismatch { ring: BigInt, closed: BigInt },
    /// The middle Betti number fails the Gauss-Bonnet consistency relation
    /// `b4 = c4 + 4(2g - 2)`.
    #[error("internal mismatch: b4 = {b4} but c4 + 4(2g-2) = {expected}")]
    InternalMismatch { b4: BigInt, expected: BigInt },
    /// The closed-form IH polynomial disagrees with the generic engine.
    #[error("engine mismatch: closed form gives {closed}, generic engine gives {engine}")]
    EngineMismatch { closed: String, engine: String },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

impl HypersurfaceDatum {
    pub fn new(d1: u32, d2: u32, d3: u32, d4: u32) -> Result<Self, Blowup5Error> {
        let d = [d1, d2, d3, d4];
        if d.contains(&0) {
            return Err(Blowup5Error::InvalidDegrees("all degrees must be positive".into()));
        }
        if u64::from(d1) + u64::from(d3) != u64::from(d2) + u64::from(d4) {
            return Err(Blowup5Error::InvalidDegrees(format!(
                "d1 + d3 = {} differs from d2 + d4 = {}",
                u64::from(d1) + u64::from(d3),
                u64::from(d2) + u64::from(d4)
            )));
        }
        let datum = Self { d };
        // x = 2 forces (1,1,1,1) and genus 0; larger x makes genus positive.
        assert!(
            datum.genus() >= BigInt::ZERO,
            "genus is nonnegative for every balanced degree vector"
        );
        Ok(datum)
    }

    pub fn degrees(&self) -> [u32; 4] {
        self.d
    }

    /// Degree of the hypersurface, `x = d1 + d3 = d2 + d4`.
    pub fn x(&self) -> i64 {
        i64::from(self.d[0]) + i64::from(self.d[2])
    }

    /// Degree of the singular curve, `d1 d2 d3 d4`.
    pub fn delta(&self) -> BigInt {
        self.d.iter().map(|&v| BigInt::from(v)).product()
    }

    /// Genus of the singular curve, from `2g - 2 = (2x - 6) delta`.
    pub fn genus(&self) -> BigInt {
        (self.x() - 3) * self.delta() + 1
    }
}

impl fmt::Display for HypersurfaceDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.d[0], self.d[1], self.d[2], self.d[3])
    }
}

/// A formal integer polynomial in the commuting divisor symbols `H` and
/// `E`, graded by codimension. No ring relations are imposed; the
/// intersection numbers enter only in [`evaluate_top`].
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct BlowupClass {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BlowupClass {
    pub fn zero() -> Self {
        Self::default()
    }

    /// `c * H^a * E^b`.
    pub fn monomial(h_pow: u32, e_pow: u32, c: impl Into<BigInt>) -> Self {
        let mut terms = BTreeMap::new();
        let c = c.into();
        if !c.is_zero() {
            terms.insert((h_pow, e_pow), c);
        }
        Self { terms }
    }

    /// Build from `(H power, E power, coefficient)` triples.
    pub fn from_terms(entries: &[(u32, u32, i64)]) -> Self {
        let mut class = Self::zero();
        for &(a, b, c) in entries {
            class.add_term(a, b, BigInt::from(c));
        }
        class
    }

    fn add_term(&mut self, h_pow: u32, e_pow: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry((h_pow, e_pow)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &BigInt)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in other.terms() {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut out = Self::monomial(0, 0, 1);
        for _ in 0..exp {
            out = out.mul(self);
        }
        out
    }
}

impl fmt::Display for BlowupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, b, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{c}")?;
            if a > 0 {
                write!(f, "*H^{a}")?;
            }
            if b > 0 {
                write!(f, "*E^{b}")?;
            }
        }
        Ok(())
    }
}

/// Evaluate the codimension-5 part of a class against the intersection
/// numbers of the blow-up of `P^5` along a curve of degree `delta` and
/// genus `genus`:
/// `H^5 = 1`, `H^4 E = H^3 E^2 = H^2 E^3 = 0`, `H E^4 = -delta`,
/// `E^5 = 2 - 2 genus - 6 delta`. Terms of other codimension contribute 0.
pub fn evaluate_top(class: &BlowupClass, delta: &BigInt, genus: &BigInt) -> BigInt {
    let e5: BigInt = BigInt::from(2) - 2 * genus - 6 * delta;
    let mut total = BigInt::ZERO;
    for (a, b, c) in class.terms() {
        if a + b != 5 {
            continue;
        }
        let value = match (a, b) {
            (5, 0) => BigInt::from(1),
            (1, 4) => -delta.clone(),
            (0, 5) => e5.clone(),
            _ => BigInt::ZERO,
        };
        total += c * value;
    }
    total
}

/// Chern classes `c_1, ..., c_4` of the tangent bundle of the blow-up, for
/// a hypersurface of degree `x`:
/// `c1 = 6H - 3E`,
/// `c2 = 15H^2 + 2(x-9)HE + 2E^2`,
/// `c3 = 20H^3 + 8x(x-3)H^2E + 4(3-x)HE^2 + 2E^3`,
/// `c4 = 15H^4 + 12HE^3 - 3E^4`.
pub fn chern_tangent_blowup(x: i64) -> [BlowupClass; 4] {
    let c1 = BlowupClass::from_terms(&[(1, 0, 6), (0, 1, -3)]);
    let c2 = BlowupClass::from_terms(&[(2, 0, 15), (1, 1, 2 * (x - 9)), (0, 2, 2)]);
    let c3 = BlowupClass::from_terms(&[
        (3, 0, 20),
        (2, 1, 8 * x * (x - 3)),
        (1, 2, 4 * (3 - x)),
        (0, 3, 2),
    ]);
    let c4 = BlowupClass::from_terms(&[(4, 0, 15), (1, 3, 12), (0, 4, -3)]);
    [c1, c2, c3, c4]
}

/// The class of the strict transform of the hypersurface: `xH - 2E`.
pub fn strict_transform_class(x: i64) -> BlowupClass {
    BlowupClass::from_terms(&[(1, 0, x), (0, 1, -2)])
}

/// Top Chern number of the resolution's tangent bundle, evaluated in the
/// intersection ring: the alternating sum
/// `X.c4 - X^2.c3 + X^3.c2 - X^4.c1 + X^5` with `X = xH - 2E`.
pub fn c4_via_intersection_ring(d: &HypersurfaceDatum) -> BigInt {
    let x = d.x();
    let delta = d.delta();
    let genus = d.genus();
    let xt = strict_transform_class(x);
    let [c1, c2, c3, c4] = chern_tangent_blowup(x);

    let mut total = BigInt::ZERO;
    let chern = [Some(&c4), Some(&c3), Some(&c2), Some(&c1), None];
    for (idx, c) in chern.iter().enumerate() {
        let power = xt.pow(idx as u32 + 1);
        let term = match c {
            Some(c) => power.mul(c),
            None => power,
        };
        let value = evaluate_top(&term, &delta, &genus);
        if idx % 2 == 0 {
            total += value;
        } else {
            total -= value;
        }
    }
    total
}

/// Closed form for the same Chern number:
/// `(x-2)(x^2-3x+3)(x^2-x+1) - 9(g-1) + 3(2-delta)`.
pub fn c4_closed_form(d: &HypersurfaceDatum) -> BigInt {
    let x = BigInt::from(d.x());
    let genus = d.genus();
    let delta = d.delta();
    (&x - 2) * (&x * &x - 3 * &x + 3) * (&x * &x - &x + 1) - 9 * (genus - 1)
        + 3 * (BigInt::from(2) - delta)
}

/// Top Chern number of the resolution, computed both ways; the agreement of
/// the intersection-ring evaluation with the closed form is asserted.
pub fn c4_tangent_resolution(d: &HypersurfaceDatum) -> Result<BigInt, Blowup5Error> {
    let ring = c4_via_intersection_ring(d);
    let closed = c4_closed_form(d);
    if ring != closed {
        return Err(Blowup5Error::ClosedFormMismatch { ring, closed });
    }
    Ok(ring)
}

/// Betti numbers `b0 ..= b8` of the resolution:
/// `1, 0, 3, 4g, b4, 4g, 3, 0, 1` with
/// `b4 = (x-2)(x^2-3x+3)(x^2-x+1) - (g-1) + 3(2-delta)`, checked against
/// the Gauss-Bonnet relation `b4 = c4 + 4(2g-2)`.
pub fn betti_resolution(d: &HypersurfaceDatum) -> Result<[BigInt; 9], Blowup5Error> {
    let x = BigInt::from(d.x());
    let genus = d.genus();
    let delta = d.delta();
    let b4 = (&x - 2) * (&x * &x - 3 * &x + 3) * (&x * &x - &x + 1) - (&genus - 1)
        + 3 * (BigInt::from(2) - delta);
    let expected = c4_tangent_resolution(d)? + 4 * (2 * &genus - 2);
    if b4 != expected {
        return Err(Blowup5Error::InternalMismatch { b4, expected });
    }
    let b3: BigInt = 4 * &genus;
    Ok([
        BigInt::from(1),
        BigInt::ZERO,
        BigInt::from(3),
        b3.clone(),
        b4,
        b3,
        BigInt::from(3),
        BigInt::ZERO,
        BigInt::from(1),
    ])
}

/// The IH polynomial of the hypersurface in closed form:
/// `1 + 2t^2 + 2g t^3 + [(x-2)(x^2-3x+3)(x^2-x+1) - (g-1) + (4-3delta)] t^4
///  + 2g t^5 + 2t^6 + t^8`.
pub fn ih_closed_form(d: &HypersurfaceDatum) -> LaurentPoly {
    let x = BigInt::from(d.x());
    let genus = d.genus();
    let delta = d.delta();
    let middle = (&x - 2) * (&x * &x - 3 * &x + 3) * (&x * &x - &x + 1) - (&genus - 1)
        + (BigInt::from(4) - 3 * delta);
    let two_g: BigInt = 2 * genus;
    let mut ih = LaurentPoly::one();
    ih += &LaurentPoly::int_monomial(2, 2);
    ih += &LaurentPoly::monomial(3, Coeff::from_integer(two_g.clone()));
    ih += &LaurentPoly::monomial(4, Coeff::from_integer(middle));
    ih += &LaurentPoly::monomial(5, Coeff::from_integer(two_g));
    ih += &LaurentPoly::int_monomial(6, 2);
    ih += &LaurentPoly::int_monomial(8, 1);
    ih
}

/// Package the datum for the generic engine: `n = 4, m = 1, p = 2, q = 1`,
/// quadric-surface fiber `(1, 0, 2, 0, 1)`, `H_delta = 1 + 2g t + t^2`,
/// and the resolution polynomial from [`betti_resolution`].
pub fn to_two_strata(d: &HypersurfaceDatum) -> Result<TwoStrataData, Blowup5Error> {
    let betti = betti_resolution(d)?;
    let two_g = 2 * d.genus();
    let mut h_delta = LaurentPoly::one();
    h_delta += &LaurentPoly::monomial(1, Coeff::from_integer(two_g));
    h_delta += &LaurentPoly::t_pow(2);
    let data = TwoStrataData {
        n: 4,
        m: 1,
        p: 2,
        q: 1,
        fiber: BettiVector::new(vec![1, 0, 2, 0, 1]),
        h_resolution: LaurentPoly::from_bigint_coeffs(0, &betti),
        h_delta,
        resolution_is_projective: true,
        delta_is_projective: true,
    };
    debug_assert!(twostrata::validate(&data).is_empty());
    Ok(data)
}

/// The IH polynomial, computed in closed form and revalidated against the
/// generic two-strata engine on every call.
pub fn ih_hypersurface(d: &HypersurfaceDatum) -> Result<LaurentPoly, Blowup5Error> {
    let closed = ih_closed_form(d);
    let engine = twostrata::ih_poly(&to_two_strata(d)?)?;
    if closed != engine {
        return Err(Blowup5Error::EngineMismatch {
            closed: closed.to_string(),
            engine: engine.to_string(),
        });
    }
    Ok(closed)
}

/// Every balanced degree vector with `max(d_i) <= max_d`, in lexicographic
/// order.
pub fn degree_vectors(max_d: u32) -> Vec<HypersurfaceDatum> {
    let mut out = Vec::new();
    for d1 in 1..=max_d {
        for d2 in 1..=max_d {
            for d3 in 1..=max_d {
                for d4 in 1..=max_d {
                    if d1 + d3 == d2 + d4 {
                        out.push(HypersurfaceDatum::new(d1, d2, d3, d4).unwrap());
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(d1: u32, d2: u32, d3: u32, d4: u32) -> HypersurfaceDatum {
        HypersurfaceDatum::new(d1, d2, d3, d4).unwrap()
    }

    fn poly(coeffs: &[i64]) -> LaurentPoly {
        LaurentPoly::from_int_coeffs(0, coeffs)
    }

    #[test]
    fn datum_validation() {
        assert!(HypersurfaceDatum::new(1, 1, 1, 2).is_err());
        assert!(HypersurfaceDatum::new(0, 1, 1, 0).is_err());
        let d = datum(1, 1, 2, 2);
        assert_eq!(d.x(), 3);
        assert_eq!(d.delta(), BigInt::from(4));
        assert_eq!(d.genus(), BigInt::from(1));
    }

    #[test]
    fn quadric_cone_datum() {
        let d = datum(1, 1, 1, 1);
        assert_eq!(d.x(), 2);
        assert_eq!(d.delta(), BigInt::from(1));
        assert_eq!(d.genus(), BigInt::ZERO);
    }

    #[test]
    fn evaluate_top_table() {
        let one = BigInt::from(1);
        let h5 = BlowupClass::monomial(5, 0, 1);
        assert_eq!(evaluate_top(&h5, &one, &BigInt::ZERO), BigInt::from(1));
        let he4 = BlowupClass::monomial(1, 4, 1);
        assert_eq!(evaluate_top(&he4, &one, &BigInt::ZERO), BigInt::from(-1));
        let e5 = BlowupClass::monomial(0, 5, 1);
        assert_eq!(evaluate_top(&e5, &one, &BigInt::ZERO), BigInt::from(-4));
        // mixed middle monomials vanish, off-codimension terms contribute 0
        let mixed = BlowupClass::from_terms(&[(4, 1, 7), (3, 2, -2), (2, 3, 5), (1, 1, 9)]);
        assert_eq!(evaluate_top(&mixed, &one, &BigInt::ZERO), BigInt::ZERO);
    }

    #[test]
    fn chern_classes_as_printed() {
        let [c1, c2, c3, c4] = chern_tangent_blowup(2);
        assert_eq!(c1, BlowupClass::from_terms(&[(1, 0, 6), (0, 1, -3)]));
        assert_eq!(c2, BlowupClass::from_terms(&[(2, 0, 15), (1, 1, -14), (0, 2, 2)]));
        let [_, _, c3_at_3, _] = chern_tangent_blowup(3);
        assert_eq!(c3_at_3, BlowupClass::from_terms(&[(3, 0, 20), (0, 3, 2)]));
        assert_eq!(c4, BlowupClass::from_terms(&[(4, 0, 15), (1, 3, 12), (0, 4, -3)]));
        assert_eq!(c3, BlowupClass::from_terms(&[(3, 0, 20), (2, 1, -16), (1, 2, 4), (0, 3, 2)]));
    }

    #[test]
    fn c4_anchor_values() {
        // full hand evaluation: 36 - 48 + 24 - 0 + 0 = 12
        let d = datum(1, 1, 1, 1);
        assert_eq!(c4_via_intersection_ring(&d), BigInt::from(12));
        assert_eq!(c4_closed_form(&d), BigInt::from(12));
        assert_eq!(c4_tangent_resolution(&d).unwrap(), BigInt::from(12));

        // (1)(3)(7) - 0 + 3(-2) = 15
        let d = datum(1, 1, 2, 2);
        assert_eq!(c4_tangent_resolution(&d).unwrap(), BigInt::from(15));
    }

    #[test]
    fn betti_anchor_values() {
        let b = betti_resolution(&datum(1, 1, 1, 1)).unwrap();
        let expected: Vec<BigInt> = [1, 0, 3, 0, 4, 0, 3, 0, 1].map(BigInt::from).to_vec();
        assert_eq!(b.to_vec(), expected);

        let b = betti_resolution(&datum(1, 1, 2, 2)).unwrap();
        assert_eq!(b[3], BigInt::from(4));
        assert_eq!(b[4], BigInt::from(15));
    }

    #[test]
    fn betti_palindromic() {
        for d in degree_vectors(3) {
            let b = betti_resolution(&d).unwrap();
            for a in 0..=8 {
                assert_eq!(b[a], b[8 - a], "betti vector of {d} not palindromic");
            }
        }
    }

    #[test]
    fn ih_anchor_values() {
        assert_eq!(
            ih_hypersurface(&datum(1, 1, 1, 1)).unwrap(),
            poly(&[1, 0, 2, 0, 2, 0, 2, 0, 1])
        );
        assert_eq!(
            ih_hypersurface(&datum(1, 1, 2, 2)).unwrap(),
            poly(&[1, 0, 2, 2, 13, 2, 2, 0, 1])
        );
    }

    #[test]
    fn ih_structural_properties() {
        for d in degree_vectors(3) {
            let ih = ih_hypersurface(&d).unwrap();
            assert!(ih.is_palindromic(8));
            assert!(ih.has_nonnegative_coeffs());
            assert_eq!(ih.coeff(0), Coeff::from_integer(1.into()));
        }
    }

    #[test]
    fn euler_characteristic_consistency() {
        for d in degree_vectors(3) {
            let b = betti_resolution(&d).unwrap();
            let mut chi = BigInt::ZERO;
            for (idx, v) in b.iter().enumerate() {
                if idx % 2 == 0 {
                    chi += v;
                } else {
                    chi -= v;
                }
            }
            assert_eq!(chi, c4_tangent_resolution(&d).unwrap());
        }
    }

    #[test]
    fn class_arithmetic() {
        let a = BlowupClass::from_terms(&[(1, 0, 2), (0, 1, -1)]);
        let b = BlowupClass::from_terms(&[(1, 0, 1), (0, 1, 1)]);
        assert_eq!(a.mul(&b), b.mul(&a));
        assert_eq!(
            a.mul(&b),
            BlowupClass::from_terms(&[(2, 0, 2), (1, 1, 1), (0, 2, -1)])
        );
        assert_eq!(a.pow(0), BlowupClass::monomial(0, 0, 1));
        assert_eq!(a.pow(2), a.mul(&a));
        let cancel = a.add(&BlowupClass::from_terms(&[(1, 0, -2), (0, 1, 1)]));
        assert!(cancel.is_zero());
    }

    #[test]
    fn degree_vector_sweep_counts() {
        // for each x, the balanced pairs multiply up
        let vectors = degree_vectors(2);
        assert_eq!(vectors.len(), 6); // x=2: 1, x=3: 4, x=4: 1
    }

    mod class_properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_class() -> impl Strategy<Value = BlowupClass> {
            prop::collection::vec((0u32..4, 0u32..4, -9i64..=9), 0..5)
                .prop_map(|terms| BlowupClass::from_terms(&terms))
        }

        proptest! {
            #[test]
            fn mul_commutative(a in arb_class(), b in arb_class()) {
                prop_assert_eq!(a.mul(&b), b.mul(&a));
            }

            #[test]
            fn mul_associative(a in arb_class(), b in arb_class(), c in arb_class()) {
                prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            }
        }
    }
}

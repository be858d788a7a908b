//! Exact integer, rational and quadratic-ring arithmetic.
//!
//! Sequence values are unbounded [`Integer`]s. The characteristic roots of a
//! second order recurrence live in the ring `Q[√D]`, modelled by [`QuadElem`]
//! as a pair of rationals over a fixed discriminant. Arithmetic is formal in
//! `√D`: the product rule uses `√D · √D = D` and never simplifies `√D` when
//! `D` happens to be a perfect square, so `a - b` keeps its `√D` component.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Unbounded signed integer.
pub type Integer = BigInt;

/// Exact rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    #[error("quadratic ring elements over different discriminants ({left} and {right})")]
    DiscriminantMismatch { left: Integer, right: Integer },
    #[error("quadratic ring discriminant must be positive, got {0}")]
    NonPositiveDiscriminant(Integer),
}

/// Element `x + y·√d` of the quadratic ring over the discriminant `d > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadElem {
    x: Rational,
    y: Rational,
    d: Integer,
}

impl QuadElem {
    pub fn new(x: Rational, y: Rational, d: Integer) -> Result<Self, RingError> {
        if !d.is_positive() {
            return Err(RingError::NonPositiveDiscriminant(d));
        }
        Ok(Self { x, y, d })
    }

    /// Builds `x + y·√d` from integer numerator/denominator pairs.
    pub fn from_fractions(
        x: (i64, i64),
        y: (i64, i64),
        d: i64,
    ) -> Result<Self, RingError> {
        Self::new(ratio(x.0, x.1), ratio(y.0, y.1), Integer::from(d))
    }

    pub fn one(d: Integer) -> Result<Self, RingError> {
        Self::new(Rational::one(), Rational::zero(), d)
    }

    /// The characteristic roots `a = (P + √D)/2` and `b = (P - √D)/2` of
    /// `x² - Px + Q`, with `D = P² - 4Q`.
    pub fn lucas_roots(p: &Integer, q: &Integer) -> Result<(Self, Self), RingError> {
        let d = p * p - Integer::from(4) * q;
        let half = ratio(1, 2);
        let x = Rational::from_integer(p.clone()) * &half;
        let a = Self::new(x.clone(), half.clone(), d.clone())?;
        let b = Self::new(x, -half, d)?;
        Ok((a, b))
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn d(&self) -> &Integer {
        &self.d
    }

    pub fn conj(&self) -> Self {
        Self {
            x: self.x.clone(),
            y: -self.y.clone(),
            d: self.d.clone(),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<(), RingError> {
        if self.d != other.d {
            return Err(RingError::DiscriminantMismatch {
                left: self.d.clone(),
                right: other.d.clone(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        Ok(Self {
            x: &self.x + &other.x,
            y: &self.y + &other.y,
            d: self.d.clone(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        Ok(Self {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
            d: self.d.clone(),
        })
    }

    /// `(x1 + y1√d)(x2 + y2√d) = (x1x2 + y1y2d) + (x1y2 + x2y1)√d`.
    pub fn mul(&self, other: &Self) -> Result<Self, RingError> {
        self.same_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let d = Rational::from_integer(self.d.clone());
        Self {
            x: &self.x * &other.x + &self.y * &other.y * d,
            y: &self.x * &other.y + &other.x * &self.y,
            d: self.d.clone(),
        }
    }

    /// Square-and-multiply exponentiation. Runs on integer components
    /// scaled by a common denominator `c`: `(cx + cy√d)ⁿ / cⁿ`.
    pub fn pow(&self, mut n: u64) -> Self {
        let c = num_integer::Integer::lcm(self.x.denom(), self.y.denom());
        let scale = |r: &Rational| (r * Rational::from_integer(c.clone())).to_integer();
        let mut base = (scale(&self.x), scale(&self.y));
        let mut acc = (Integer::one(), Integer::zero());
        let mul = |a: &(Integer, Integer), b: &(Integer, Integer)| {
            (
                &a.0 * &b.0 + &a.1 * &b.1 * &self.d,
                &a.0 * &b.1 + &a.1 * &b.0,
            )
        };
        let den = int_pow(&c, n);
        while n > 0 {
            if n & 1 == 1 {
                acc = mul(&acc, &base);
            }
            n >>= 1;
            if n > 0 {
                base = mul(&base, &base);
            }
        }
        Self {
            x: Rational::new(acc.0, den.clone()),
            y: Rational::new(acc.1, den),
            d: self.d.clone(),
        }
    }
}

impl fmt::Display for QuadElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}·√{}", self.x, self.y, self.d)
    }
}

pub fn quad_mul(e1: &QuadElem, e2: &QuadElem) -> Result<QuadElem, RingError> {
    e1.mul(e2)
}

pub fn quad_pow(e: &QuadElem, n: u64) -> QuadElem {
    e.pow(n)
}

/// `num / den` reduced to lowest terms. Panics on a zero denominator.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(Integer::from(num), Integer::from(den))
}

/// `base^exp` for a machine-sized exponent, with `0^0 = 1`.
pub fn int_pow(base: &Integer, exp: u64) -> Integer {
    num_traits::pow::Pow::pow(base, exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(x: (i64, i64), y: (i64, i64), d: i64) -> QuadElem {
        QuadElem::from_fractions(x, y, d).unwrap()
    }

    #[test]
    fn golden_ratio_times_conjugate_is_minus_one() {
        let a = q((1, 2), (1, 2), 5);
        let b = q((1, 2), (-1, 2), 5);
        assert_eq!(quad_mul(&a, &b).unwrap(), q((-1, 1), (0, 1), 5));
    }

    #[test]
    fn identity_is_neutral() {
        let e = q((7, 3), (-2, 5), 13);
        let one = QuadElem::one(Integer::from(13)).unwrap();
        assert_eq!(quad_mul(&e, &one).unwrap(), e);
    }

    #[test]
    fn square_over_unit_discriminant_is_formal() {
        let e = q((3, 2), (1, 2), 1);
        assert_eq!(quad_mul(&e, &e).unwrap(), q((5, 2), (3, 2), 1));
    }

    #[test]
    fn pow_small_cases() {
        let e = q((5, 7), (1, 3), 2);
        assert_eq!(quad_pow(&e, 0), QuadElem::one(Integer::from(2)).unwrap());
        let phi = q((1, 2), (1, 2), 5);
        assert_eq!(quad_pow(&phi, 2), q((3, 2), (1, 2), 5));
        let two = q((2, 1), (0, 1), 1);
        assert_eq!(quad_pow(&two, 3), q((8, 1), (0, 1), 1));
    }

    #[test]
    fn mismatched_discriminants_are_rejected() {
        let a = q((1, 1), (1, 1), 2);
        let b = q((1, 1), (1, 1), 3);
        assert!(matches!(
            quad_mul(&a, &b),
            Err(RingError::DiscriminantMismatch { .. })
        ));
        assert!(a.add(&b).is_err());
        assert!(a.sub(&b).is_err());
    }

    #[test]
    fn non_positive_discriminant_is_rejected() {
        assert!(QuadElem::from_fractions((1, 1), (1, 1), 0).is_err());
        assert!(QuadElem::from_fractions((1, 1), (1, 1), -3).is_err());
    }

    #[test]
    fn rationals_are_normalised() {
        let r = ratio(4, -6);
        assert_eq!(*r.numer(), Integer::from(-2));
        assert_eq!(*r.denom(), Integer::from(3));
    }

    fn elem(d: i64) -> impl Strategy<Value = QuadElem> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6)
            .prop_map(move |(a, b, c, e)| q((a, b), (c, e), d))
    }

    proptest! {
        #[test]
        fn pow_is_additive_in_exponent(d in 1i64..30, m in 0u64..=64, n in 0u64..=64, seed in elem(1)) {
            let e = QuadElem::new(seed.x().clone(), seed.y().clone(), Integer::from(d)).unwrap();
            let lhs = quad_pow(&e, m + n);
            let rhs = quad_mul(&quad_pow(&e, m), &quad_pow(&e, n)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn mul_commutes_and_associates(a in elem(7), b in elem(7), c in elem(7)) {
            prop_assert_eq!(quad_mul(&a, &b).unwrap(), quad_mul(&b, &a).unwrap());
            let left = quad_mul(&quad_mul(&a, &b).unwrap(), &c).unwrap();
            let right = quad_mul(&a, &quad_mul(&b, &c).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn norm_is_rational(e in elem(11)) {
            let conj = e.conj();
            prop_assert_eq!(conj.x(), e.x());
            prop_assert_eq!(conj.y(), &-e.y().clone());
            prop_assert!(quad_mul(&e, &conj).unwrap().y().is_zero());
        }

        #[test]
        fn root_identities(p in -10i64..=10, q in -10i64..=10) {
            prop_assume!(p != 0 && q != 0 && p * p - 4 * q > 0);
            let (p, q) = (Integer::from(p), Integer::from(q));
            let (a, b) = QuadElem::lucas_roots(&p, &q).unwrap();
            let prod = quad_mul(&a, &b).unwrap();
            prop_assert!(prod.y().is_zero());
            prop_assert_eq!(prod.x(), &Rational::from_integer(q));
            let sum = a.add(&b).unwrap();
            prop_assert_eq!(sum.x(), &Rational::from_integer(p));
            prop_assert!(sum.y().is_zero());
            // a - b is √D, not P
            let diff = a.sub(&b).unwrap();
            prop_assert!(diff.x().is_zero());
            prop_assert!(diff.y().is_one());
        }
    }
}

//! Minimal ring/scalar abstraction shared by the matrix and polynomial code.
//!
//! The methods carry a `ring_` prefix so they never collide with the inherent
//! or `std::ops` methods of the implementing types.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational numbers, the coefficient type used throughout.
pub type Rational = BigRational;

/// A commutative ring with identity.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;

    fn ring_sub(&self, other: &Self) -> Self {
        self.ring_add(&other.ring_neg())
    }
    fn ring_is_zero(&self) -> bool {
        *self == Self::ring_zero()
    }
    fn ring_is_one(&self) -> bool {
        *self == Self::ring_one()
    }
}

/// A ring whose elements can be built from rationals and (partially) inverted.
/// Used as the value domain when evaluating polynomials at concrete points.
pub trait Scalar: Ring {
    fn from_rational(q: &Rational) -> Self;
    /// Multiplicative inverse, `None` for non-units.
    fn inv(&self) -> Option<Self>;

    /// `self^e` for any integer exponent; `None` when `e < 0` and `self` is not a unit.
    fn pow_i64(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::ring_one();
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.ring_mul(&b);
            }
            k >>= 1;
            if k > 0 {
                b = b.ring_mul(&b);
            }
        }
        Some(acc)
    }
}

impl Ring for BigRational {
    fn ring_zero() -> Self {
        BigRational::zero()
    }
    fn ring_one() -> Self {
        BigRational::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_is_one(&self) -> bool {
        self.is_one()
    }
}

impl Scalar for BigRational {
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Floating-point complex numbers. Zero/one tests use a small absolute
/// tolerance so that unimodularity checks do not trip over rounding; every
/// use of `Complex64` in this crate is verification at an explicit tolerance.
impl Ring for Complex64 {
    fn ring_zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn ring_one() -> Self {
        Complex64::new(1.0, 0.0)
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_is_zero(&self) -> bool {
        self.norm() < 1e-9
    }
    fn ring_is_one(&self) -> bool {
        (self - Complex64::new(1.0, 0.0)).norm() < 1e-9
    }
}

impl Scalar for Complex64 {
    fn from_rational(q: &Rational) -> Self {
        Complex64::new(rational_to_f64(q), 0.0)
    }
    fn inv(&self) -> Option<Self> {
        if self.ring_is_zero() {
            None
        } else {
            Some(Complex64::new(1.0, 0.0) / self)
        }
    }
}

/// Convert a big rational to `f64` (best effort for huge values).
pub fn rational_to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        if q.is_negative() {
            f64::NEG_INFINITY
        } else {
            f64::INFINITY
        }
    })
}

/// Shorthand for an integer rational.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(n.into(), d.into())
}

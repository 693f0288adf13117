//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::ring::{Rational, Ring, Scalar};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        GaussianRational { re: Rational::from_integer(n.into()), im: Rational::zero() }
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::one() }
    }

    pub fn conj(&self) -> Self {
        GaussianRational { re: self.re.clone(), im: -&self.im }
    }

    /// `re² + im²`.
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl Ring for GaussianRational {
    fn ring_zero() -> Self {
        GaussianRational { re: Rational::zero(), im: Rational::zero() }
    }
    fn ring_one() -> Self {
        GaussianRational { re: Rational::one(), im: Rational::zero() }
    }
    fn ring_add(&self, other: &Self) -> Self {
        GaussianRational { re: &self.re + &other.re, im: &self.im + &other.im }
    }
    fn ring_mul(&self, other: &Self) -> Self {
        GaussianRational {
            re: &self.re * &other.re - &self.im * &other.im,
            im: &self.re * &other.im + &self.im * &other.re,
        }
    }
    fn ring_neg(&self) -> Self {
        GaussianRational { re: -&self.re, im: -&self.im }
    }
}

impl Scalar for GaussianRational {
    fn from_rational(q: &Rational) -> Self {
        GaussianRational { re: q.clone(), im: Rational::zero() }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm();
        Some(GaussianRational { re: &self.re / &n, im: -&self.im / &n })
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", self.im);
        }
        if self.im.is_negative() {
            write!(f, "{} - {}*i", self.re, -&self.im)
        } else {
            write!(f, "{} + {}*i", self.re, self.im)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rat_int;

    #[test]
    fn i_squared_is_minus_one() {
        let i = GaussianRational::i();
        assert_eq!(i.ring_mul(&i), GaussianRational::from_int(-1));
    }

    #[test]
    fn field_inverse() {
        let z = GaussianRational::new(rat_int(3), rat_int(4));
        let inv = z.inv().unwrap();
        assert_eq!(z.ring_mul(&inv), GaussianRational::ring_one());
        assert_eq!(GaussianRational::ring_zero().inv(), None);
    }
}

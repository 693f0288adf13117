//! Generic 2×2 matrices over any [`Ring`].
//!
//! Inverses are taken via the adjugate, which is exact for unimodular
//! matrices; `inverse` refuses matrices whose determinant is not 1.

use crate::ring::Ring;

/// A 2×2 matrix in row-major order: `[[a, b], [c, d]]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat2<R> {
    pub e: [[R; 2]; 2],
}

impl<R: Ring> Mat2<R> {
    pub fn new(a: R, b: R, c: R, d: R) -> Self {
        Mat2 { e: [[a, b], [c, d]] }
    }

    pub fn identity() -> Self {
        Mat2::new(R::ring_one(), R::ring_zero(), R::ring_zero(), R::ring_one())
    }

    pub fn diag(a: R, d: R) -> Self {
        Mat2::new(a, R::ring_zero(), R::ring_zero(), d)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let m = &self.e;
        let n = &other.e;
        Mat2::new(
            m[0][0].ring_mul(&n[0][0]).ring_add(&m[0][1].ring_mul(&n[1][0])),
            m[0][0].ring_mul(&n[0][1]).ring_add(&m[0][1].ring_mul(&n[1][1])),
            m[1][0].ring_mul(&n[0][0]).ring_add(&m[1][1].ring_mul(&n[1][0])),
            m[1][0].ring_mul(&n[0][1]).ring_add(&m[1][1].ring_mul(&n[1][1])),
        )
    }

    pub fn det(&self) -> R {
        self.e[0][0]
            .ring_mul(&self.e[1][1])
            .ring_sub(&self.e[0][1].ring_mul(&self.e[1][0]))
    }

    pub fn trace(&self) -> R {
        self.e[0][0].ring_add(&self.e[1][1])
    }

    /// The adjugate: `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Self {
        Mat2::new(
            self.e[1][1].clone(),
            self.e[0][1].ring_neg(),
            self.e[1][0].ring_neg(),
            self.e[0][0].clone(),
        )
    }

    /// Exact inverse for unimodular matrices; `None` when `det != 1`.
    pub fn inverse(&self) -> Option<Self> {
        if self.det().ring_is_one() {
            Some(self.adjugate())
        } else {
            None
        }
    }

    /// `M^e` for any integer exponent. `None` when `e < 0` and `det != 1`.
    pub fn pow(&self, e: i64) -> Option<Self> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = Self::identity();
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Some(acc)
    }

    pub fn neg(&self) -> Self {
        self.map(|x| x.ring_neg())
    }

    pub fn add(&self, other: &Self) -> Self {
        Mat2::new(
            self.e[0][0].ring_add(&other.e[0][0]),
            self.e[0][1].ring_add(&other.e[0][1]),
            self.e[1][0].ring_add(&other.e[1][0]),
            self.e[1][1].ring_add(&other.e[1][1]),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, s: &R) -> Self {
        self.map(|x| x.ring_mul(s))
    }

    pub fn map<F: Fn(&R) -> R>(&self, f: F) -> Self {
        Mat2::new(f(&self.e[0][0]), f(&self.e[0][1]), f(&self.e[1][0]), f(&self.e[1][1]))
    }

    pub fn is_identity(&self) -> bool {
        self.e[0][0].ring_is_one()
            && self.e[0][1].ring_is_zero()
            && self.e[1][0].ring_is_zero()
            && self.e[1][1].ring_is_one()
    }

    pub fn is_minus_identity(&self) -> bool {
        self.neg().is_identity()
    }
}

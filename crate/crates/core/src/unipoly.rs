//! Dense univariate polynomials over ℚ and quotient rings ℚ[x]/(m).

use std::fmt;

use num_traits::{One, Zero};

use crate::laurent::{LaurentPoly, PolyError};
use crate::ring::Rational;

/// Dense univariate polynomial, coefficients in ascending degree order.
/// Canonical: empty vector for zero, last coefficient nonzero otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    var: String,
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero(var: &str) -> Self {
        UniPoly { var: var.to_string(), coeffs: Vec::new() }
    }

    pub fn constant(var: &str, c: Rational) -> Self {
        Self::from_coeffs(var, vec![c])
    }

    pub fn x(var: &str) -> Self {
        Self::from_coeffs(var, vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(var: &str, coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { var: var.to_string(), coeffs };
        p.normalize();
        p
    }

    pub fn from_i64(var: &str, coeffs: &[i64]) -> Self {
        Self::from_coeffs(var, coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Parse the canonical text form, e.g. `16*t^4 + 8*t^3 + 12*t^2 + 4*t + 1`.
    pub fn parse(text: &str, var: &str) -> Result<Self, PolyError> {
        let lp = LaurentPoly::parse(text, &[var])?;
        Self::from_laurent(&lp, var)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check_var(&self, other: &Self) {
        assert_eq!(self.var, other.var, "univariate variable mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_var(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Self::from_coeffs(&self.var, coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        UniPoly { var: self.var.clone(), coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_var(other);
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::from_coeffs(&self.var, coeffs)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(&self.var, self.coeffs.iter().map(|k| k * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(&self.var, Rational::one());
        let mut base = self.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Euclidean division over ℚ: `self = q·div + r` with `deg r < deg div`.
    /// Panics on a zero divisor.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        self.check_var(div);
        assert!(!div.is_zero(), "division by the zero polynomial");
        let dd = div.degree().unwrap();
        let lc = div.leading_coeff().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading_coeff().unwrap() / &lc;
            let shift = rd - dd;
            quot[shift] = factor.clone();
            for i in 0..=dd {
                let c = &div.coeffs[i] * &factor;
                rem.coeffs[i + shift] -= c;
            }
            rem.normalize();
        }
        (Self::from_coeffs(&self.var, quot), rem)
    }

    /// `Some(quotient)` iff `div` divides `self` exactly.
    pub fn divides_exactly(&self, div: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(div);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + crate::ring::rational_to_f64(c);
        }
        acc
    }

    /// Make the leading coefficient 1 (zero polynomial unchanged).
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            Some(lc) if !lc.is_one() => self.scale(&lc.recip()),
            _ => self.clone(),
        }
    }

    pub fn to_laurent(&self) -> LaurentPoly {
        let vars = [self.var.as_str()];
        let mut acc = LaurentPoly::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&LaurentPoly::monomial(&vars, &[i as i64], c.clone()));
            }
        }
        acc
    }

    /// Extract from a Laurent polynomial that only involves `var`, with
    /// nonnegative exponents.
    pub fn from_laurent(p: &LaurentPoly, var: &str) -> Result<Self, PolyError> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (mono, c) in p.terms() {
            let mut deg = 0i64;
            for (i, &x) in mono.0.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if p.vars()[i] != var {
                    return Err(PolyError::NotUnivariate(p.vars()[i].clone()));
                }
                deg = x;
            }
            if deg < 0 {
                return Err(PolyError::NegativeExponent(var.to_string()));
            }
            let d = deg as usize;
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] = c.clone();
        }
        Ok(Self::from_coeffs(var, coeffs))
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_laurent())
    }
}

/// Element of the quotient ring ℚ[x]/(modulus), fully reduced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniQuotient {
    modulus: UniPoly,
    value: UniPoly,
}

/// Reduce `value` modulo `modulus` (degree ≥ 1 required).
pub fn quotient_reduce(value: &UniPoly, modulus: &UniPoly) -> Result<UniQuotient, PolyError> {
    if modulus.degree().map_or(true, |d| d < 1) {
        return Err(PolyError::Parse("quotient modulus must have degree >= 1".into()));
    }
    let (_, r) = value.div_rem(modulus);
    Ok(UniQuotient { modulus: modulus.clone(), value: r })
}

impl UniQuotient {
    pub fn value(&self) -> &UniPoly {
        &self.value
    }

    pub fn modulus(&self) -> &UniPoly {
        &self.modulus
    }

    fn check(&self, other: &Self) {
        assert_eq!(self.modulus, other.modulus, "quotient ring modulus mismatch");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check(other);
        quotient_reduce(&self.value.add(&other.value), &self.modulus).unwrap()
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check(other);
        quotient_reduce(&self.value.mul(&other.value), &self.modulus).unwrap()
    }

    pub fn neg(&self) -> Self {
        UniQuotient { modulus: self.modulus.clone(), value: self.value.neg() }
    }

    /// Is this the constant `c` in the quotient?
    pub fn is_constant_value(&self, c: &Rational) -> bool {
        self.value == UniPoly::constant(self.modulus.var(), c.clone())
    }
}

impl fmt::Display for UniQuotient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

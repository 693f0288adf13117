//! Sparse multivariate Laurent polynomials over arbitrary-precision rationals.
//!
//! A polynomial carries its own ordered variable list; exponent vectors may be
//! negative. Terms are kept in a `BTreeMap` keyed by graded-lex monomial
//! order, with the first declared variable most significant, so iteration
//! order *is* the canonical order. The canonical text form (see [`Display`])
//! prints terms in descending canonical order with reduced fractional
//! coefficients, e.g. `7/36*t1^-1*t2^2 - 1`, and is stable enough to diff in
//! golden tests.
//!
//! Binary operations unify variable lists when one side's variables are a
//! subset of the other's (constants mix with anything); incompatible variable
//! sets are a programming error and panic.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::ring::{Rational, Ring, Scalar};

/// Exponent vector of a monomial, ordered graded-lex (total degree first,
/// then lexicographically, first variable most significant).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mono(pub Vec<i64>);

impl Mono {
    pub fn grade(&self) -> i64 {
        self.0.iter().sum()
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        self.grade().cmp(&other.grade()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyError {
    /// Negative power of a polynomial that is not a single invertible term.
    NonUnitPower,
    /// Evaluation assigned zero to a variable that occurs with negative exponent.
    ZeroAtInvertedVariable(String),
    /// A variable that should have been eliminated still occurs.
    VariableStillPresent(String),
    /// The polynomial is not univariate in the requested variable.
    NotUnivariate(String),
    /// A plain (non-Laurent) polynomial was required.
    NegativeExponent(String),
    /// Text could not be parsed as a polynomial.
    Parse(String),
    UnknownVariable(String),
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::NonUnitPower => write!(f, "negative power of a non-unit polynomial"),
            PolyError::ZeroAtInvertedVariable(v) => {
                write!(f, "zero assigned to inverted variable {v}")
            }
            PolyError::VariableStillPresent(v) => write!(f, "variable {v} still present"),
            PolyError::NotUnivariate(v) => write!(f, "polynomial is not univariate in {v}"),
            PolyError::NegativeExponent(v) => {
                write!(f, "negative exponent of {v} where a plain polynomial was required")
            }
            PolyError::Parse(m) => write!(f, "polynomial parse error: {m}"),
            PolyError::UnknownVariable(v) => write!(f, "unknown variable {v}"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Sparse multivariate Laurent polynomial over ℚ.
#[derive(Clone, Debug)]
pub struct LaurentPoly {
    vars: Vec<String>,
    terms: BTreeMap<Mono, Rational>,
}

impl LaurentPoly {
    // ---- Constructors ----

    pub fn zero() -> Self {
        LaurentPoly { vars: Vec::new(), terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono(Vec::new()), c);
        }
        LaurentPoly { vars: Vec::new(), terms }
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    /// The generator `name` inside the declared ring `vars`.
    pub fn var(name: &str, vars: &[&str]) -> Self {
        Self::monomial(vars, &Self::unit_exps(name, vars), Rational::one())
    }

    /// `name^e` inside the declared ring.
    pub fn var_pow(name: &str, e: i64, vars: &[&str]) -> Self {
        let exps: Vec<i64> = Self::unit_exps(name, vars).iter().map(|x| x * e).collect();
        Self::monomial(vars, &exps, Rational::one())
    }

    fn unit_exps(name: &str, vars: &[&str]) -> Vec<i64> {
        let idx = vars
            .iter()
            .position(|v| *v == name)
            .unwrap_or_else(|| panic!("variable {name} not in ring {vars:?}"));
        let mut exps = vec![0; vars.len()];
        exps[idx] = 1;
        exps
    }

    pub fn monomial(vars: &[&str], exps: &[i64], coeff: Rational) -> Self {
        assert_eq!(vars.len(), exps.len());
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(Mono(exps.to_vec()), coeff);
        }
        LaurentPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms }
    }

    /// All generators of the declared ring, in order.
    pub fn generators(vars: &[&str]) -> Vec<Self> {
        vars.iter().map(|v| Self::var(v, vars)).collect()
    }

    // ---- Queries ----

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e == 0))
    }

    /// `Some(c)` iff the polynomial is the constant `c` (zero included).
    pub fn constant_value(&self) -> Option<Rational> {
        if self.terms.is_empty() {
            return Some(Rational::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.0.iter().all(|&e| e == 0) {
                return Some(c.clone());
            }
        }
        None
    }

    /// A single term with a nonzero coefficient (a unit of the Laurent ring).
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Iterate terms in ascending canonical order as (exponents, coefficient).
    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &Rational)> {
        self.terms.iter()
    }

    /// Leading (canonically largest) term, if any.
    pub fn leading_term(&self) -> Option<(&Mono, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Max exponent of `name` across terms; `None` for the zero polynomial.
    pub fn degree_in(&self, name: &str) -> Option<i64> {
        let i = self.var_index(name)?;
        self.terms.keys().map(|m| m.0[i]).max()
    }

    pub fn min_degree_in(&self, name: &str) -> Option<i64> {
        let i = self.var_index(name)?;
        self.terms.keys().map(|m| m.0[i]).min()
    }

    /// Max total degree across terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.grade()).max()
    }

    /// True when every exponent is nonnegative (a plain polynomial).
    pub fn is_plain(&self) -> bool {
        self.terms.keys().all(|m| m.0.iter().all(|&e| e >= 0))
    }

    // ---- Variable plumbing ----

    /// Re-express in the superset ring `vars` (matched by name).
    pub fn embed(&self, vars: &[&str]) -> Self {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.iter()
                    .position(|w| w == v)
                    .unwrap_or_else(|| panic!("embed: {v} missing from {vars:?}"))
            })
            .collect();
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0; vars.len()];
            for (i, &e) in m.0.iter().enumerate() {
                exps[map[i]] = e;
            }
            terms.insert(Mono(exps), c.clone());
        }
        LaurentPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms }
    }

    /// Restrict to the ring `vars`; errors if a dropped variable occurs.
    pub fn project(&self, vars: &[&str]) -> Result<Self, PolyError> {
        let keep: Vec<Option<usize>> =
            self.vars.iter().map(|v| vars.iter().position(|w| w == v)).collect();
        for (i, k) in keep.iter().enumerate() {
            if k.is_none() && self.terms.keys().any(|m| m.0[i] != 0) {
                return Err(PolyError::VariableStillPresent(self.vars[i].clone()));
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = vec![0; vars.len()];
            for (i, &e) in m.0.iter().enumerate() {
                if let Some(j) = keep[i] {
                    exps[j] = e;
                }
            }
            terms.insert(Mono(exps), c.clone());
        }
        Ok(LaurentPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms })
    }

    fn subset_of(a: &[String], b: &[String]) -> bool {
        a.iter().all(|v| b.contains(v))
    }

    /// Bring two polynomials into a common ring. One side's variables must
    /// contain the other's; the superset's order wins.
    fn unified(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let sv: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let ov: Vec<&str> = other.vars.iter().map(|s| s.as_str()).collect();
        if Self::subset_of(&other.vars, &self.vars) {
            (self.clone(), other.embed(&sv))
        } else if Self::subset_of(&self.vars, &other.vars) {
            (self.embed(&ov), other.clone())
        } else {
            panic!("incompatible variable sets {:?} vs {:?}", self.vars, other.vars);
        }
    }

    // ---- Ring arithmetic ----

    fn insert_term(terms: &mut BTreeMap<Mono, Rational>, m: Mono, c: Rational) {
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.unified(other);
        let mut terms = a.terms;
        for (m, c) in b.terms {
            Self::insert_term(&mut terms, m, c);
        }
        LaurentPoly { vars: a.vars, terms }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.unified(other);
        let mut terms = BTreeMap::new();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let exps: Vec<i64> =
                    ma.0.iter().zip(mb.0.iter()).map(|(x, y)| x + y).collect();
                Self::insert_term(&mut terms, Mono(exps), ca * cb);
            }
        }
        LaurentPoly { vars: a.vars, terms }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect(),
        }
    }

    /// Multiply by the monomial with exponent vector `exps` (same ring).
    pub fn mul_monomial(&self, exps: &[i64], c: &Rational) -> Self {
        assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return LaurentPoly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, k)| {
                    (Mono(m.0.iter().zip(exps).map(|(a, b)| a + b).collect()), k * c)
                })
                .collect(),
        }
    }

    /// `self^e`. Negative exponents require a unit monomial.
    pub fn pow(&self, e: i64) -> Result<Self, PolyError> {
        if e < 0 {
            let inv = self.unit_inverse().ok_or(PolyError::NonUnitPower)?;
            return inv.pow(-e);
        }
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut k = e as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        Ok(acc)
    }

    /// Inverse of a unit monomial (single term, nonzero coefficient).
    pub fn unit_inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        let mut terms = BTreeMap::new();
        terms.insert(Mono(m.0.iter().map(|e| -e).collect()), c.recip());
        Some(LaurentPoly { vars: self.vars.clone(), terms })
    }

    // ---- Evaluation and substitution ----

    /// Exact substitution homomorphism at a full point.
    pub fn eval<S: Scalar>(&self, point: &[S]) -> Result<S, PolyError> {
        assert_eq!(point.len(), self.vars.len(), "point arity mismatch");
        let mut acc = S::ring_zero();
        for (m, c) in &self.terms {
            let mut t = S::from_rational(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let p = point[i]
                    .pow_i64(e)
                    .ok_or_else(|| PolyError::ZeroAtInvertedVariable(self.vars[i].clone()))?;
                t = t.ring_mul(&p);
            }
            acc = acc.ring_add(&t);
        }
        Ok(acc)
    }

    /// Substitute polynomials for variables; unmapped variables stay
    /// themselves. Images must live in (a subset of) this polynomial's ring.
    /// A variable occurring with negative exponents needs a unit-monomial image.
    pub fn subst(&self, map: &[(&str, LaurentPoly)]) -> Result<Self, PolyError> {
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let images: Vec<LaurentPoly> = self
            .vars
            .iter()
            .map(|v| match map.iter().find(|(n, _)| n == v) {
                Some((_, img)) => img.embed(&vars),
                None => Self::var(v, &vars),
            })
            .collect();
        let mut acc = Self::monomial(&vars, &vec![0; vars.len()], Rational::zero());
        for (m, c) in &self.terms {
            let mut t = Self::monomial(&vars, &vec![0; vars.len()], c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                t = t.mul(&images[i].pow(e)?);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitute `name -> -name` (exact, works with negative exponents).
    pub fn negate_var(&self, name: &str) -> Self {
        let i = match self.var_index(name) {
            Some(i) => i,
            None => return self.clone(),
        };
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let c = if m.0[i].rem_euclid(2) == 1 { -c } else { c.clone() };
                    (m.clone(), c)
                })
                .collect(),
        }
    }

    /// Split by the powers of `name`: returns `(exponent, coefficient)` pairs
    /// in descending exponent order, coefficients living in the ring without
    /// `name`. `Σ name^e · coeff_e` reconstructs the polynomial.
    pub fn coeff_split(&self, name: &str) -> Vec<(i64, LaurentPoly)> {
        let i = match self.var_index(name) {
            Some(i) => i,
            None => {
                return if self.is_zero() { Vec::new() } else { vec![(0, self.clone())] };
            }
        };
        let rest: Vec<&str> =
            self.vars.iter().filter(|v| *v != name).map(|s| s.as_str()).collect();
        let mut groups: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[i];
            let exps: Vec<i64> =
                m.0.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, &x)| x).collect();
            let piece = Self::monomial(&rest, &exps, c.clone());
            groups
                .entry(e)
                .and_modify(|p| *p = p.add(&piece))
                .or_insert(piece);
        }
        groups.into_iter().rev().filter(|(_, p)| !p.is_zero()).collect()
    }

    /// Extract the coefficient of `name^e` (in the ring without `name`).
    pub fn coeff_of(&self, name: &str, e: i64) -> LaurentPoly {
        self.coeff_split(name)
            .into_iter()
            .find(|(k, _)| *k == e)
            .map(|(_, p)| p)
            .unwrap_or_else(LaurentPoly::zero)
    }

    /// Flip the overall sign if the canonical leading coefficient is negative.
    /// Returns the normalized polynomial and the sign applied (`1` or `-1`).
    pub fn normalize_leading_sign(&self) -> (Self, i32) {
        match self.leading_term() {
            Some((_, c)) if c.is_negative() => (self.neg(), -1),
            _ => (self.clone(), 1),
        }
    }

    // ---- Parsing ----

    /// Parse the canonical text form (also accepts redundant whitespace and
    /// `**`-free Magma-style output), e.g. `-s^4*C^3 - 2*s^4*C^2*D + 1/2`.
    pub fn parse(text: &str, vars: &[&str]) -> Result<Self, PolyError> {
        let mut p = Parser { chars: text.chars().collect(), pos: 0 };
        let poly = p.parse_sum(vars)?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(PolyError::Parse(format!("trailing input at position {}", p.pos)));
        }
        Ok(poly)
    }
}

impl PartialEq for LaurentPoly {
    /// Mathematical equality: variable naming matters, ordering and unused
    /// variables do not.
    fn eq(&self, other: &Self) -> bool {
        self.named_terms() == other.named_terms()
    }
}

impl Eq for LaurentPoly {}

impl LaurentPoly {
    /// Variable-order-independent canonical term set, for equality tests.
    fn named_terms(&self) -> BTreeMap<Vec<(String, i64)>, Rational> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut named: Vec<(String, i64)> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e != 0)
                    .map(|(i, &e)| (self.vars[i].clone(), e))
                    .collect();
                named.sort();
                (named, c.clone())
            })
            .collect()
    }
}

impl Ring for LaurentPoly {
    fn ring_zero() -> Self {
        Self::zero()
    }
    fn ring_one() -> Self {
        Self::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_is_one(&self) -> bool {
        self.constant_value().map_or(false, |c| c.is_one())
    }
}

impl std::ops::Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl std::ops::Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::sub(self, rhs)
    }
}

impl std::ops::Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: Self) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl std::ops::Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly::neg(self)
    }
}

// ---- Canonical display ----

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = self.render_mono(m);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl LaurentPoly {
    fn render_mono(&self, m: &Mono) -> String {
        let mut parts = Vec::new();
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if e == 1 {
                parts.push(self.vars[i].clone());
            } else {
                parts.push(format!("{}^{}", self.vars[i], e));
            }
        }
        parts.join("*")
    }
}

// ---- Parser ----

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_sum(&mut self, vars: &[&str]) -> Result<LaurentPoly, PolyError> {
        let mut acc = LaurentPoly::zero();
        let mut sign = 1i64;
        match self.peek() {
            Some('-') => {
                self.pos += 1;
                sign = -1;
            }
            Some('+') => {
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let term = self.parse_term(vars, sign)?;
            acc = acc.add(&term);
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some('-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_term(&mut self, vars: &[&str], sign: i64) -> Result<LaurentPoly, PolyError> {
        let mut acc = LaurentPoly::int(sign);
        loop {
            let factor = self.parse_factor(vars)?;
            acc = acc.mul(&factor);
            if self.peek() == Some('*') {
                self.pos += 1;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self, vars: &[&str]) -> Result<LaurentPoly, PolyError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let num = self.parse_integer()?;
                if self.peek() == Some('/') {
                    self.pos += 1;
                    let den = self.parse_integer()?;
                    if den == 0 {
                        return Err(PolyError::Parse("zero denominator".into()));
                    }
                    Ok(LaurentPoly::constant(Rational::new(num.into(), den.into())))
                } else {
                    Ok(LaurentPoly::int(num))
                }
            }
            Some(c) if c.is_alphanumeric() || c == '_' => {
                let name = self.parse_name();
                if !vars.contains(&name.as_str()) {
                    return Err(PolyError::UnknownVariable(name));
                }
                let mut e = 1i64;
                if self.peek() == Some('^') {
                    self.pos += 1;
                    let neg = if self.peek() == Some('-') {
                        self.pos += 1;
                        true
                    } else {
                        false
                    };
                    e = self.parse_integer()?;
                    if neg {
                        e = -e;
                    }
                }
                Ok(LaurentPoly::var_pow(&name, e, vars))
            }
            other => Err(PolyError::Parse(format!(
                "unexpected {:?} at position {}",
                other, self.pos
            ))),
        }
    }

    fn parse_integer(&mut self) -> Result<i64, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(PolyError::Parse(format!("expected digits at position {start}")));
        }
        let s: String = self.chars[start..self.pos].iter().collect();
        s.parse().map_err(|_| PolyError::Parse(format!("integer overflow: {s}")))
    }

    fn parse_name(&mut self) -> String {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len()
            && (self.chars[self.pos].is_alphanumeric() || self.chars[self.pos] == '_')
        {
            self.pos += 1;
        }
        self.chars[start..self.pos].iter().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rat, rat_int};

    fn tvars() -> Vec<&'static str> {
        vec!["t1", "t2"]
    }

    #[test]
    fn ring_ops_examples() {
        let vars = tvars();
        let t1 = LaurentPoly::var("t1", &vars);
        let t1_inv = LaurentPoly::var_pow("t1", -1, &vars);
        // (t1 + t1^-1) * t1 = t1^2 + 1
        let p = t1.add(&t1_inv).mul(&t1);
        let expect = LaurentPoly::parse("t1^2 + 1", &vars).unwrap();
        assert_eq!(p, expect);

        // (λ-1)(λ+1) = λ^2 - 1
        let l = LaurentPoly::var("lambda", &["lambda"]);
        let p = l.sub(&LaurentPoly::one()).mul(&l.add(&LaurentPoly::one()));
        assert_eq!(p, LaurentPoly::parse("lambda^2 - 1", &["lambda"]).unwrap());

        // (t1^-1)^-2 = t1^2
        let p = t1_inv.pow(-2).unwrap();
        assert_eq!(p, LaurentPoly::parse("t1^2", &vars).unwrap());
    }

    #[test]
    fn negative_pow_of_non_monomial_fails() {
        let vars = tvars();
        let p = LaurentPoly::parse("t1 + 1", &vars).unwrap();
        assert_eq!(p.pow(-1), Err(PolyError::NonUnitPower));
    }

    #[test]
    fn eval_examples() {
        // t1^-1 + t1^-2*t2^-1 - t1^-1*t2^-2 - t2^-1 at (2,3) = 7/36
        let vars = tvars();
        let p = LaurentPoly::parse("t1^-1 + t1^-2*t2^-1 - t1^-1*t2^-2 - t2^-1", &vars).unwrap();
        let v = p.eval(&[rat_int(2), rat_int(3)]).unwrap();
        assert_eq!(v, rat(7, 36));
        // all-ones kills it
        assert_eq!(p.eval(&[rat_int(1), rat_int(1)]).unwrap(), rat_int(0));
        // zero at inverted variable errors
        assert!(matches!(
            p.eval(&[rat_int(0), rat_int(1)]),
            Err(PolyError::ZeroAtInvertedVariable(_))
        ));
    }

    #[test]
    fn eval_gaussian_point() {
        use crate::gaussian::GaussianRational;
        // λ(1-μ^2) at (1, i) = 2
        let vars = ["lambda", "mu"];
        let p = LaurentPoly::parse("lambda - lambda*mu^2", &vars).unwrap();
        let i = GaussianRational::i();
        let one = GaussianRational::from_int(1);
        assert_eq!(p.eval(&[one, i]).unwrap(), GaussianRational::from_int(2));
    }

    #[test]
    fn coeff_split_examples() {
        let vars = ["s", "C", "D"];
        let p = LaurentPoly::parse("s^4*C + s^2*D + 1", &vars).unwrap();
        let split = p.coeff_split("s");
        assert_eq!(split.len(), 3);
        assert_eq!(split[0].0, 4);
        assert_eq!(split[0].1, LaurentPoly::parse("C", &["C", "D"]).unwrap());
        assert_eq!(split[2].0, 0);
        // reconstruction
        let rebuilt = split.iter().fold(LaurentPoly::zero(), |acc, (e, c)| {
            acc.add(&LaurentPoly::var_pow("s", *e, &vars).mul(&c.embed(&vars)))
        });
        assert_eq!(rebuilt, p);

        // λ^2 μ − λ^2 by λ → single level (2, μ−1)
        let vars = ["lambda", "mu"];
        let p = LaurentPoly::parse("lambda^2*mu - lambda^2", &vars).unwrap();
        let split = p.coeff_split("lambda");
        assert_eq!(split.len(), 1);
        assert_eq!(split[0].0, 2);
        assert_eq!(split[0].1, LaurentPoly::parse("mu - 1", &["mu"]).unwrap());
    }

    #[test]
    fn canonical_display() {
        let vars = tvars();
        let p = LaurentPoly::parse("t1^-1 + t1^-2*t2^-1 - t1^-1*t2^-2 - t2^-1", &vars).unwrap();
        // graded-lex descending on signed exponent vectors, t1 most significant:
        // grade -1 ties break lex, where (0,-1) > (-1,0)
        assert_eq!(p.to_string(), "-t2^-1 + t1^-1 - t1^-1*t2^-2 + t1^-2*t2^-1");
        let q = LaurentPoly::parse(&p.to_string(), &vars).unwrap();
        assert_eq!(p, q);
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let c = LaurentPoly::parse("7/36*t1^-1*t2^2 - 1", &vars).unwrap();
        assert_eq!(c.to_string(), "7/36*t1^-1*t2^2 - 1");
    }

    #[test]
    fn subst_specializes() {
        let vars = ["s", "t", "u"];
        let p = LaurentPoly::parse("s^2 + t*u", &vars).unwrap();
        let q = p
            .subst(&[("t", LaurentPoly::int(3))])
            .unwrap();
        assert_eq!(q, LaurentPoly::parse("s^2 + 3*u", &vars).unwrap());
        // composition-style substitution
        let r = p
            .subst(&[("s", LaurentPoly::parse("t + u", &vars).unwrap())])
            .unwrap();
        assert_eq!(r, LaurentPoly::parse("t^2 + 2*t*u + u^2 + t*u", &vars).unwrap());
    }

    #[test]
    fn negate_var_parity() {
        let vars = ["lambda", "mu"];
        let p = LaurentPoly::parse("lambda - lambda*mu^2", &vars).unwrap();
        assert_eq!(p.negate_var("lambda"), p.neg());
        assert_eq!(p.negate_var("mu"), p);
    }

    #[test]
    fn mixed_ring_constants() {
        let vars = tvars();
        let t1 = LaurentPoly::var("t1", &vars);
        let c = LaurentPoly::int(5);
        assert_eq!(t1.add(&c).to_string(), "t1 + 5");
        assert_eq!(c.add(&t1).to_string(), "t1 + 5");
    }
}

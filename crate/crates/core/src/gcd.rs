//! Multivariate polynomial gcd (primitive subresultant remainder sequences),
//! exact division, and resultant elimination via fraction-free Sylvester
//! determinants.
//!
//! All routines require plain polynomials (no negative exponents); Laurent
//! callers clear denominators first, which only changes answers by units.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::laurent::LaurentPoly;
use crate::ring::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GcdError {
    /// An input had a negative exponent.
    LaurentInput,
    /// Both inputs have degree 0 in the elimination variable.
    BothConstantInVar(String),
    /// Division by the zero polynomial.
    ZeroDivision,
    /// Internal exact division failed (would indicate a bug).
    InexactDivision,
}

impl fmt::Display for GcdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GcdError::LaurentInput => write!(f, "plain polynomial required (negative exponent)"),
            GcdError::BothConstantInVar(v) => {
                write!(f, "both inputs are constant in {v}")
            }
            GcdError::ZeroDivision => write!(f, "division by the zero polynomial"),
            GcdError::InexactDivision => write!(f, "internal exact division failed"),
        }
    }
}

impl std::error::Error for GcdError {}

fn require_plain(p: &LaurentPoly) -> Result<(), GcdError> {
    if p.is_plain() {
        Ok(())
    } else {
        Err(GcdError::LaurentInput)
    }
}

/// Exact quotient `num / den`, or `None` when the division is not exact.
pub fn exact_quotient(num: &LaurentPoly, den: &LaurentPoly) -> Result<Option<LaurentPoly>, GcdError> {
    require_plain(num)?;
    require_plain(den)?;
    if den.is_zero() {
        return Err(GcdError::ZeroDivision);
    }
    if num.is_zero() {
        return Ok(Some(LaurentPoly::zero()));
    }
    // Work in the union ring.
    let num = num.add(&den.scale(&Rational::zero()));
    let den = den.add(&num.scale(&Rational::zero()));
    let (dm, dc) = den.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
    let mut rem = num.clone();
    let mut quot = LaurentPoly::zero();
    while !rem.is_zero() {
        let (rm, rc) = rem.leading_term().map(|(m, c)| (m.clone(), c.clone())).unwrap();
        let exps: Vec<i64> = rm.0.iter().zip(dm.0.iter()).map(|(a, b)| a - b).collect();
        if exps.iter().any(|&e| e < 0) {
            return Ok(None);
        }
        let t_coeff = &rc / &dc;
        rem = rem.sub(&den.mul_monomial(&exps, &t_coeff));
        let vars: Vec<&str> = num.vars().iter().map(|s| s.as_str()).collect();
        quot = quot.add(&LaurentPoly::monomial(&vars, &exps, t_coeff));
    }
    Ok(Some(quot))
}

/// The result of [`gcd_divides`].
#[derive(Debug, Clone)]
pub struct GcdDivides {
    /// gcd of the inputs, primitive with positive leading coefficient.
    pub gcd: LaurentPoly,
    /// Does `p` divide `q` exactly?
    pub divides: bool,
    /// The exact quotient `q / p` when it exists.
    pub quotient: Option<LaurentPoly>,
}

/// Gcd (up to units) plus an exact divisibility check of `p` into `q`.
pub fn gcd_divides(p: &LaurentPoly, q: &LaurentPoly) -> Result<GcdDivides, GcdError> {
    let g = multivar_gcd(p, q)?;
    let quotient = exact_quotient(q, p)?;
    Ok(GcdDivides { gcd: g, divides: quotient.is_some(), quotient })
}

/// Multivariate gcd by primitive subresultant remainder sequences,
/// normalized to an integer-primitive polynomial with positive leading
/// coefficient (so it is canonical up to the stated unit convention).
pub fn multivar_gcd(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, GcdError> {
    require_plain(p)?;
    require_plain(q)?;
    Ok(normalize_primitive(&gcd_inner(p, q)?))
}

fn gcd_inner(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, GcdError> {
    if p.is_zero() {
        return Ok(q.clone());
    }
    if q.is_zero() {
        return Ok(p.clone());
    }
    // Work in a common ring.
    let p = p.add(&q.scale(&Rational::zero()));
    let q = q.add(&p.scale(&Rational::zero()));
    let var = match main_var(&p, &q) {
        Some(v) => v,
        None => return Ok(LaurentPoly::one()), // both constants: unit gcd over Q
    };

    let (cont_p, prim_p) = content_primitive(&p, &var)?;
    let (cont_q, prim_q) = content_primitive(&q, &var)?;
    let cont = gcd_inner(&cont_p, &cont_q)?;

    let mut a = prim_p;
    let mut b = prim_q;
    if a.degree_in(&var).unwrap_or(0) < b.degree_in(&var).unwrap_or(0) {
        std::mem::swap(&mut a, &mut b);
    }

    // Subresultant PRS on the primitive parts.
    let mut g = LaurentPoly::one();
    let mut h = LaurentPoly::one();
    loop {
        let da = a.degree_in(&var).unwrap_or(0);
        let db = b.degree_in(&var).unwrap_or(0);
        if b.is_zero() {
            let (_, prim_a) = content_primitive(&a, &var)?;
            return Ok(cont.mul(&prim_a));
        }
        if db == 0 {
            // Constant in the main variable: the primitive parts are coprime there.
            return Ok(cont);
        }
        let delta = (da - db) as i64;
        let r = pseudo_rem(&a, &b, &var);
        a = b;
        if !r.is_zero() {
            let denom = g.mul(&h.pow(delta).map_err(|_| GcdError::InexactDivision)?);
            b = exact_quotient(&r, &denom)?.ok_or(GcdError::InexactDivision)?;
        } else {
            b = r;
        }
        g = lc_in(&a, &var);
        h = if delta == 0 {
            h
        } else if delta == 1 {
            g.clone()
        } else {
            let num = g.pow(delta).map_err(|_| GcdError::InexactDivision)?;
            let den = h.pow(delta - 1).map_err(|_| GcdError::InexactDivision)?;
            exact_quotient(&num, &den)?.ok_or(GcdError::InexactDivision)?
        };
    }
}

/// First variable with positive degree in either polynomial.
fn main_var(p: &LaurentPoly, q: &LaurentPoly) -> Option<String> {
    for v in p.vars() {
        if p.degree_in(v).unwrap_or(0) > 0 || q.degree_in(v).unwrap_or(0) > 0 {
            return Some(v.clone());
        }
    }
    None
}

/// Leading coefficient with respect to `var` (in the same full ring).
fn lc_in(p: &LaurentPoly, var: &str) -> LaurentPoly {
    let vars: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    match p.degree_in(var) {
        Some(d) => p.coeff_of(var, d).embed(&vars),
        None => LaurentPoly::zero(),
    }
}

/// Content (gcd of the `var`-coefficients) and primitive part.
fn content_primitive(p: &LaurentPoly, var: &str) -> Result<(LaurentPoly, LaurentPoly), GcdError> {
    let split = p.coeff_split(var);
    let mut cont = LaurentPoly::zero();
    for (_, c) in &split {
        cont = gcd_inner(&cont, c)?;
        if cont.is_constant() {
            break;
        }
    }
    if cont.is_constant() {
        return Ok((LaurentPoly::one(), p.clone()));
    }
    let vars: Vec<&str> = p.vars().iter().map(|s| s.as_str()).collect();
    let cont = cont.embed(&vars);
    let prim = exact_quotient(p, &cont)?.ok_or(GcdError::InexactDivision)?;
    Ok((cont, prim))
}

/// Pseudo-remainder of `a` by `b` with respect to `var`:
/// `lc(b)^(deg a - deg b + 1) * a = q*b + prem`.
fn pseudo_rem(a: &LaurentPoly, b: &LaurentPoly, var: &str) -> LaurentPoly {
    let db = b.degree_in(var).unwrap_or(0);
    let d = lc_in(b, var);
    let vars: Vec<&str> = a.vars().iter().map(|s| s.as_str()).collect();
    let mut r = a.clone();
    let da = a.degree_in(var).unwrap_or(0);
    let mut e = da - db + 1;
    while !r.is_zero() && r.degree_in(var).unwrap_or(0) >= db {
        let dr = r.degree_in(var).unwrap();
        let lr = lc_in(&r, var);
        let shift = LaurentPoly::var_pow(var, dr - db, &vars);
        r = r.mul(&d).sub(&lr.mul(&shift).mul(b));
        e -= 1;
        if r.degree_in(var).unwrap_or(db - 1) >= dr && !r.is_zero() {
            // Degree must strictly drop each round.
            debug_assert!(false, "pseudo_rem failed to reduce degree");
            break;
        }
    }
    // Pad the multiplier to exactly lc(b)^(da-db+1).
    let mut out = r;
    while e > 0 {
        out = out.mul(&d);
        e -= 1;
    }
    out
}

/// Scale to integer coefficients with gcd 1 and positive canonical leading
/// coefficient.
pub fn normalize_primitive(p: &LaurentPoly) -> LaurentPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut denom_lcm = BigInt::one();
    for (_, c) in p.terms() {
        let d = c.denom();
        denom_lcm = lcm(&denom_lcm, d);
    }
    let mut numer_gcd = BigInt::zero();
    for (_, c) in p.terms() {
        let scaled = c * Rational::from_integer(denom_lcm.clone());
        numer_gcd = gcd_int(&numer_gcd, scaled.numer());
    }
    let mut factor = Rational::new(denom_lcm, numer_gcd);
    if p.leading_term().map_or(false, |(_, c)| c.is_negative()) {
        factor = -factor;
    }
    p.scale(&factor)
}

fn gcd_int(a: &BigInt, b: &BigInt) -> BigInt {
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() || b.is_zero() {
        return BigInt::zero();
    }
    (a * b).abs() / gcd_int(a, b)
}

/// Resultant of `p` and `q` with respect to `var` (Sylvester convention,
/// `p`-rows first). Dispatches between the fraction-free Sylvester
/// determinant and the subresultant remainder sequence, which compute the
/// same value; the cross-agreement is asserted in the tests.
pub fn resultant(p: &LaurentPoly, q: &LaurentPoly, var: &str) -> Result<LaurentPoly, GcdError> {
    require_plain(p)?;
    require_plain(q)?;
    if p.is_zero() || q.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let m = p.degree_in(var).unwrap_or(0);
    let n = q.degree_in(var).unwrap_or(0);
    if m == 0 && n == 0 {
        return Err(GcdError::BothConstantInVar(var.to_string()));
    }
    if m + n <= 10 {
        return resultant_sylvester(p, q, var);
    }
    // Variables confined to the var-free coefficients can be specialized
    // without disturbing the Sylvester matrix shape, so the resultant can be
    // rebuilt from specialized values by Lagrange interpolation; this tames
    // the coefficient growth of the remainder sequence dramatically.
    let lin = interpolatable_vars(p, q, var, m, n);
    let grid: i64 = lin.iter().map(|(_, b)| b + 1).product();
    if !lin.is_empty() && grid <= 4096 {
        resultant_interp(p, q, var, &lin)
    } else {
        resultant_prs(p, q, var)
    }
}

/// Variables (other than `var`) that occur only in the `var`-free
/// coefficient of both inputs, paired with a degree bound for the resultant:
/// by row-degree counting, `deg_v(res) ≤ n·deg_v(p) + m·deg_v(q)`.
fn interpolatable_vars(
    p: &LaurentPoly,
    q: &LaurentPoly,
    var: &str,
    m: i64,
    n: i64,
) -> Vec<(String, i64)> {
    let mut out = Vec::new();
    let names: Vec<String> = p
        .vars()
        .iter()
        .chain(q.vars().iter())
        .filter(|v| v.as_str() != var)
        .cloned()
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for v in names {
        if !seen.insert(v.clone()) {
            continue;
        }
        let confined = |poly: &LaurentPoly| {
            let vi = match poly.var_index(&v) {
                Some(i) => i,
                None => return true,
            };
            let mi = poly.var_index(var);
            poly.terms().all(|(mono, _)| {
                mono.0[vi] == 0 || mi.map_or(true, |i| mono.0[i] == 0)
            })
        };
        if confined(p) && confined(q) {
            let dp = p.degree_in(&v).unwrap_or(0).max(0);
            let dq = q.degree_in(&v).unwrap_or(0).max(0);
            let bound = n * dp + m * dq;
            if bound > 0 {
                out.push((v, bound));
            }
        }
    }
    out
}

fn resultant_interp(
    p: &LaurentPoly,
    q: &LaurentPoly,
    var: &str,
    lin: &[(String, i64)],
) -> Result<LaurentPoly, GcdError> {
    let Some(((v, bound), rest)) = lin.split_first().map(|(f, r)| ((f.0.as_str(), f.1), r))
    else {
        return resultant_prs(p, q, var);
    };
    let mut values = Vec::with_capacity(bound as usize + 1);
    for node in 0..=bound {
        let at = |poly: &LaurentPoly| {
            poly.subst(&[(v, LaurentPoly::int(node))]).expect("constant substitution")
        };
        values.push(resultant_interp(&at(p), &at(q), var, rest)?);
    }
    Ok(lagrange_combine(v, &values))
}

/// `Σ_j values[j] · ∏_{k≠j} (v − k)/(j − k)` over the integer nodes `0..=b`.
fn lagrange_combine(v: &str, values: &[LaurentPoly]) -> LaurentPoly {
    let b = values.len() - 1;
    let mut acc = LaurentPoly::zero();
    for (j, val) in values.iter().enumerate() {
        if val.is_zero() {
            continue;
        }
        let ring: Vec<&str> = val.vars().iter().map(|s| s.as_str()).collect();
        debug_assert!(ring.contains(&v));
        let mut basis = LaurentPoly::one().embed(&ring);
        let mut denom = Rational::one();
        for k in 0..=b {
            if k == j {
                continue;
            }
            let factor = LaurentPoly::var(v, &ring).sub(&LaurentPoly::int(k as i64));
            basis = basis.mul(&factor);
            denom *= Rational::from_integer((j as i64 - k as i64).into());
        }
        acc = acc.add(&val.mul(&basis).scale(&denom.recip()));
    }
    acc
}

/// The resultant as a Bareiss-eliminated Sylvester determinant.
pub fn resultant_sylvester(
    p: &LaurentPoly,
    q: &LaurentPoly,
    var: &str,
) -> Result<LaurentPoly, GcdError> {
    require_plain(p)?;
    require_plain(q)?;
    if p.is_zero() || q.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let p = p.add(&q.scale(&Rational::zero()));
    let q = q.add(&p.scale(&Rational::zero()));
    let m = p.degree_in(var).unwrap_or(0) as usize;
    let n = q.degree_in(var).unwrap_or(0) as usize;
    if m == 0 && n == 0 {
        return Err(GcdError::BothConstantInVar(var.to_string()));
    }
    // Coefficient rows in descending degree.
    let pc: Vec<LaurentPoly> = (0..=m).rev().map(|e| strip(&p, var, e as i64)).collect();
    let qc: Vec<LaurentPoly> = (0..=n).rev().map(|e| strip(&q, var, e as i64)).collect();
    let size = m + n;
    let mut mat: Vec<Vec<LaurentPoly>> = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![LaurentPoly::zero(); size];
        for (j, c) in pc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        mat.push(row);
    }
    for i in 0..m {
        let mut row = vec![LaurentPoly::zero(); size];
        for (j, c) in qc.iter().enumerate() {
            row[i + j] = c.clone();
        }
        mat.push(row);
    }
    bareiss_det(mat)
}

/// Coefficient of `var^e` kept in the ring without `var`.
fn strip(p: &LaurentPoly, var: &str, e: i64) -> LaurentPoly {
    p.coeff_of(var, e)
}

/// The resultant via the subresultant remainder sequence, with the exact
/// Sylvester sign. Much faster than the determinant for large degrees.
pub fn resultant_prs(p: &LaurentPoly, q: &LaurentPoly, var: &str) -> Result<LaurentPoly, GcdError> {
    require_plain(p)?;
    require_plain(q)?;
    if p.is_zero() || q.is_zero() {
        return Ok(LaurentPoly::zero());
    }
    let p = p.add(&q.scale(&Rational::zero()));
    let q = q.add(&p.scale(&Rational::zero()));
    let dp = p.degree_in(var).unwrap_or(0);
    let dq = q.degree_in(var).unwrap_or(0);
    if dp == 0 && dq == 0 {
        return Err(GcdError::BothConstantInVar(var.to_string()));
    }
    // res(c, q) = c^{deg q}; res(p, c) = c^{deg p}
    if dp == 0 {
        return p.pow(dq).map_err(|_| GcdError::InexactDivision);
    }
    if dq == 0 {
        return q.pow(dp).map_err(|_| GcdError::InexactDivision);
    }
    let mut sign_total = 1i32;
    let (mut a, mut b) = if dp >= dq {
        (p, q)
    } else {
        if dp % 2 == 1 && dq % 2 == 1 {
            sign_total = -sign_total;
        }
        (q, p)
    };
    let mut g = LaurentPoly::one();
    let mut h = LaurentPoly::one();
    loop {
        let da = a.degree_in(var).unwrap_or(0);
        let db = b.degree_in(var).unwrap_or(0);
        let delta = da - db;
        if da % 2 == 1 && db % 2 == 1 {
            sign_total = -sign_total;
        }
        let r = pseudo_rem(&a, &b, var);
        a = b;
        if r.is_zero() {
            // deg b was > 0 here, so the inputs share a factor
            return Ok(LaurentPoly::zero());
        }
        let denom = g.mul(&h.pow(delta).map_err(|_| GcdError::InexactDivision)?);
        b = exact_quotient(&r, &denom)?.ok_or(GcdError::InexactDivision)?;
        g = lc_in(&a, var);
        h = if delta == 0 {
            h
        } else if delta == 1 {
            g.clone()
        } else {
            let num = g.pow(delta).map_err(|_| GcdError::InexactDivision)?;
            let den = h.pow(delta - 1).map_err(|_| GcdError::InexactDivision)?;
            exact_quotient(&num, &den)?.ok_or(GcdError::InexactDivision)?
        };
        if b.degree_in(var).unwrap_or(0) == 0 {
            break;
        }
    }
    // final correction: res = s · lc(B)^{deg A} / h^{deg A − 1}
    let da = a.degree_in(var).unwrap_or(0);
    let lc_b = lc_in(&b, var);
    let num = lc_b.pow(da).map_err(|_| GcdError::InexactDivision)?;
    let den = h.pow(da - 1).map_err(|_| GcdError::InexactDivision)?;
    let res = exact_quotient(&num, &den)?.ok_or(GcdError::InexactDivision)?;
    Ok(if sign_total < 0 { res.neg() } else { res })
}

/// Fraction-free determinant with row-swap pivoting.
fn bareiss_det(mut m: Vec<Vec<LaurentPoly>>) -> Result<LaurentPoly, GcdError> {
    let n = m.len();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let mut sign = 1i32;
    let mut prev = LaurentPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(LaurentPoly::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = exact_quotient(&num, &prev)?.ok_or(GcdError::InexactDivision)?;
            }
            m[i][k] = LaurentPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if sign < 0 { det.neg() } else { det })
}

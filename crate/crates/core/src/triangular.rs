//! Upper-triangular calculus for two-letter words.
//!
//! Evaluating a word at `x = [[λ,c],[0,λ⁻¹]]`, `y = [[μ,d],[0,μ⁻¹]]` gives
//! `[[λᴬμᴮ, cΦ̃+dΨ̃], [0, λ⁻ᴬμ⁻ᴮ]]`; the off-diagonal entry is exactly linear
//! in `c` and `d`. For words in the commutator subgroup (`A = B = 0`), the
//! pair `(Φ, Ψ)` also falls out of the basic-commutator tables, and its value
//! at `(λ, μ) = (1, i)` decides whether `-id` lies in the image. When instead
//! `A ≠ 0` or `B ≠ 0`, vanishing of the off-diagonal on the curve
//! `λᴬμᴮ = -1` is an obstruction to surjectivity, tested exactly through
//! small integer polynomials.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;

use crate::laurent::LaurentPoly;
use crate::magnus::{classify_derived_level, DerivedLevel};
use crate::mat2::Mat2;
use crate::unipoly::UniPoly;
use crate::word::{normalize_two_letter, TwoLetterError, TwoLetterForm, Word};

pub const UPPER_VARS: [&str; 4] = ["lambda", "mu", "c", "d"];
pub const PHI_VARS: [&str; 2] = ["lambda", "mu"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangularError {
    NotTwoLetter(usize),
    /// Operation requires a word in the commutator subgroup.
    NotInCommutatorSubgroup,
    /// Operation requires level InF1NotF2.
    WrongDerivedLevel(DerivedLevel),
    /// Curve criteria need a nonzero exponent sum.
    BothSumsZero,
    Form(TwoLetterError),
}

impl fmt::Display for TriangularError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TriangularError::NotTwoLetter(n) => {
                write!(f, "two-letter analysis needs 2 generators, word has {n}")
            }
            TriangularError::NotInCommutatorSubgroup => {
                write!(f, "word must have both exponent sums zero")
            }
            TriangularError::WrongDerivedLevel(l) => {
                write!(f, "criterion needs derived level InF1NotF2, word is {l}")
            }
            TriangularError::BothSumsZero => {
                write!(f, "curve criteria need a nonzero exponent sum")
            }
            TriangularError::Form(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for TriangularError {}

impl From<TwoLetterError> for TriangularError {
    fn from(e: TwoLetterError) -> Self {
        TriangularError::Form(e)
    }
}

/// `h_n(ζ) = (ζ^{2n}−1)/(ζ^{n−1}(ζ²−1))` expanded as the Laurent polynomial
/// `ζ^{1-n}(1 + ζ² + … + ζ^{2(n-1)})`; `h_n(1) = n`.
pub fn h_poly(n: u64) -> LaurentPoly {
    assert!(n >= 1, "h_n needs n >= 1");
    h_poly_in("z", &["z"], n)
}

fn h_poly_in(var: &str, vars: &[&str], n: u64) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for k in 0..n {
        acc = acc.add(&LaurentPoly::var_pow(var, 1 - n as i64 + 2 * k as i64, vars));
    }
    acc
}

/// Signed `h`: `sgn(e) · h_{|e|}` in the given variable, as used by the
/// syllable entries of the triangular matrices.
fn signed_h(var: &str, vars: &[&str], e: i64) -> LaurentPoly {
    let h = h_poly_in(var, vars, e.unsigned_abs());
    if e < 0 {
        h.neg()
    } else {
        h
    }
}

/// `w(x,y)` for the generic upper-triangular pair, decomposed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperEvalResult {
    /// Exponent of λ on the diagonal.
    pub a_exp: i64,
    /// Exponent of μ on the diagonal.
    pub b_exp: i64,
    /// Coefficient of `c` in the off-diagonal entry (in λ, μ).
    pub phi: LaurentPoly,
    /// Coefficient of `d` in the off-diagonal entry (in λ, μ).
    pub psi: LaurentPoly,
}

impl UpperEvalResult {
    /// The full off-diagonal entry `cΦ̃ + dΨ̃`.
    pub fn off_diagonal(&self) -> LaurentPoly {
        let c = LaurentPoly::var("c", &UPPER_VARS);
        let d = LaurentPoly::var("d", &UPPER_VARS);
        c.mul(&self.phi.embed(&UPPER_VARS)).add(&d.mul(&self.psi.embed(&UPPER_VARS)))
    }
}

/// Evaluate a two-letter word at the symbolic upper-triangular pair by a
/// direct matrix product over `ℚ[λ^{±1}, μ^{±1}, c, d]`.
pub fn eval_upper(w: &Word) -> Result<UpperEvalResult, TriangularError> {
    if w.num_generators() != 2 {
        return Err(TriangularError::NotTwoLetter(w.num_generators()));
    }
    let lambda = LaurentPoly::var("lambda", &UPPER_VARS);
    let mu = LaurentPoly::var("mu", &UPPER_VARS);
    let c = LaurentPoly::var("c", &UPPER_VARS);
    let d = LaurentPoly::var("d", &UPPER_VARS);
    let x = Mat2::new(
        lambda.clone(),
        c,
        LaurentPoly::zero(),
        lambda.unit_inverse().unwrap(),
    );
    let y = Mat2::new(mu.clone(), d, LaurentPoly::zero(), mu.unit_inverse().unwrap());
    let m = w.evaluate(&[x, y]).expect("triangular images are unimodular");

    let (a_exp, b_exp) = match m.e[0][0].leading_term() {
        Some((mono, _)) => (mono.0[0], mono.0[1]),
        None => unreachable!("diagonal entry of a unimodular matrix is nonzero"),
    };
    debug_assert!(m.e[0][0].is_unit_monomial());
    debug_assert!(m.e[1][0].is_zero());
    let off = &m.e[0][1];
    let phi = off.coeff_of("c", 1).project(&PHI_VARS).expect("off-diagonal is linear in c,d");
    let psi = off.coeff_of("d", 1).project(&PHI_VARS).expect("off-diagonal is linear in c,d");
    Ok(UpperEvalResult { a_exp, b_exp, phi, psi })
}

/// Closed form of the `(Φ̃, Ψ̃)` pair straight from the alternating exponents,
/// term by term:
///
/// ```text
/// Φ̃ = Σ_i sgn(a_i) h_{|a_i|}(λ) λ^{2A_i - a_i - A} μ^{2B_i - B}
/// Ψ̃ = Σ_i sgn(b_i) h_{|b_i|}(μ) λ^{2A_i - A}       μ^{2B_i + b_i - B}
/// ```
///
/// with `A_i = Σ_{j≤i} a_j` and `B_i = Σ_{j<i} b_j`.
pub fn closed_form_phipsi(form: &TwoLetterForm) -> (LaurentPoly, LaurentPoly) {
    let a_total: i64 = form.a.iter().sum();
    let b_total: i64 = form.b.iter().sum();
    let mut phi = LaurentPoly::zero();
    let mut psi = LaurentPoly::zero();
    let mut a_i = 0i64; // Σ_{j≤i} a_j, updated at loop head
    let mut b_i = 0i64; // Σ_{j<i} b_j, updated at loop tail
    for i in 0..form.k() {
        a_i += form.a[i];
        let h_l = signed_h("lambda", &PHI_VARS, form.a[i]);
        let mono = LaurentPoly::monomial(
            &PHI_VARS,
            &[2 * a_i - form.a[i] - a_total, 2 * b_i - b_total],
            crate::ring::rat_int(1),
        );
        phi = phi.add(&h_l.mul(&mono));

        let h_m = signed_h("mu", &PHI_VARS, form.b[i]);
        let mono = LaurentPoly::monomial(
            &PHI_VARS,
            &[2 * a_i - a_total, 2 * b_i + form.b[i] - b_total],
            crate::ring::rat_int(1),
        );
        psi = psi.add(&h_m.mul(&mono));
        b_i += form.b[i];
    }
    (phi, psi)
}

// ---- Basic commutator rewriting ----

/// One factor `w_{n,m}^{exp}` with `w_{n,m} = xⁿ yᵐ x⁻ⁿ y⁻ᵐ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasicFactor {
    pub n: i64,
    pub m: i64,
    pub exp: i64,
}

/// A word of the commutator subgroup expressed in the basic-commutator basis,
/// reduced (adjacent equal factors merged, zero exponents removed).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicCommutatorExpr {
    factors: Vec<BasicFactor>,
}

impl BasicCommutatorExpr {
    pub fn factors(&self) -> &[BasicFactor] {
        &self.factors
    }

    /// Stack-reduce a raw factor sequence (cancellation cascades included).
    fn from_raw(raw: impl IntoIterator<Item = BasicFactor>) -> Self {
        let mut factors: Vec<BasicFactor> = Vec::new();
        for f in raw {
            if f.exp == 0 || f.n == 0 || f.m == 0 {
                continue;
            }
            if let Some(top) = factors.last_mut() {
                if top.n == f.n && top.m == f.m {
                    top.exp += f.exp;
                    if top.exp == 0 {
                        factors.pop();
                    }
                    continue;
                }
            }
            factors.push(f);
        }
        BasicCommutatorExpr { factors }
    }

    /// The support: all pairs `(n, m)` that appear.
    pub fn support(&self) -> BTreeSet<(i64, i64)> {
        self.factors.iter().map(|f| (f.n, f.m)).collect()
    }

    /// Number of appearances of `w_{n,m}` in the reduced expression.
    pub fn appearance_count(&self, n: i64, m: i64) -> usize {
        self.factors.iter().filter(|f| f.n == n && f.m == m).count()
    }

    /// Sum of exponents over all appearances of `w_{n,m}`.
    pub fn exponent_sum(&self, n: i64, m: i64) -> i64 {
        self.factors.iter().filter(|f| f.n == n && f.m == m).map(|f| f.exp).sum()
    }

    /// The full `(n, m) -> (S, R)` table.
    pub fn tables(&self) -> BTreeMap<(i64, i64), (usize, i64)> {
        let mut t = BTreeMap::new();
        for f in &self.factors {
            let e = t.entry((f.n, f.m)).or_insert((0usize, 0i64));
            e.0 += 1;
            e.1 += f.exp;
        }
        t
    }

    /// Re-expand every factor to letters and reduce; the soundness oracle.
    pub fn expand(&self) -> Word {
        let x = Word::x();
        let y = Word::y();
        let mut acc = Word::identity(2);
        for f in &self.factors {
            let base = Word::commutator(&x.power(f.n), &y.power(f.m)).unwrap();
            acc = acc.concat(&base.power(f.exp)).unwrap();
        }
        acc
    }

    /// Serialized as `[n, m, exp]` triples.
    pub fn triples(&self) -> Vec<[i64; 3]> {
        self.factors.iter().map(|f| [f.n, f.m, f.exp]).collect()
    }
}

impl fmt::Display for BasicCommutatorExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for fac in &self.factors {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if fac.exp == 1 {
                write!(f, "w[{},{}]", fac.n, fac.m)?;
            } else {
                write!(f, "w[{},{}]^{}", fac.n, fac.m, fac.exp)?;
            }
        }
        Ok(())
    }
}

/// Rewrite a two-letter word of the commutator subgroup as a reduced product
/// of basic commutators `w_{n,m}`.
///
/// Scan the letters keeping the abelianized prefix `(p, q)`; an `x^{±1}`
/// letter read at prefix `(p, q)` contributes the Schreier generator
/// `x^p [y^q, x] x^{-p}` (trivial when `q = 0`), which expands to
/// `w_{p,q} w_{p±1,q}^{-1}` in the basis; `y`-letters contribute nothing.
/// A final stack pass merges adjacent equal factors.
pub fn rewrite_basic(w: &Word) -> Result<BasicCommutatorExpr, TriangularError> {
    if w.num_generators() != 2 {
        return Err(TriangularError::NotTwoLetter(w.num_generators()));
    }
    if w.exponent_sums().iter().any(|&s| s != 0) {
        return Err(TriangularError::NotInCommutatorSubgroup);
    }
    let mut raw: Vec<BasicFactor> = Vec::new();
    let mut p = 0i64;
    let mut q = 0i64;
    for (gen, step) in w.letters() {
        match gen {
            0 => {
                if step > 0 {
                    if q != 0 {
                        raw.push(BasicFactor { n: p, m: q, exp: 1 });
                        raw.push(BasicFactor { n: p + 1, m: q, exp: -1 });
                    }
                    p += 1;
                } else {
                    if q != 0 {
                        raw.push(BasicFactor { n: p, m: q, exp: 1 });
                        raw.push(BasicFactor { n: p - 1, m: q, exp: -1 });
                    }
                    p -= 1;
                }
            }
            _ => q += step,
        }
    }
    debug_assert_eq!((p, q), (0, 0));
    Ok(BasicCommutatorExpr::from_raw(raw))
}

/// `(Φ_w, Ψ_w)` from the exponent-sum tables of a basis expression:
///
/// ```text
/// Φ = Σ R(α,β) sgn(α) (1 - μ^{2β}) h_{|α|}(λ) λ^α
/// Ψ = Σ R(α,β) sgn(β) (λ^{2α} - 1) h_{|β|}(μ) μ^β
/// ```
pub fn phipsi_from_basis(expr: &BasicCommutatorExpr) -> (LaurentPoly, LaurentPoly) {
    let mut phi = LaurentPoly::zero();
    let mut psi = LaurentPoly::zero();
    for ((alpha, beta), (_, r)) in expr.tables() {
        if r == 0 {
            continue;
        }
        let r_const = LaurentPoly::int(r);

        let one_minus_mu2b = LaurentPoly::one().sub(&LaurentPoly::var_pow("mu", 2 * beta, &PHI_VARS));
        let term = signed_h("lambda", &PHI_VARS, alpha)
            .mul(&LaurentPoly::var_pow("lambda", alpha, &PHI_VARS))
            .mul(&one_minus_mu2b)
            .mul(&r_const);
        phi = phi.add(&term);

        let lam2a_minus_one =
            LaurentPoly::var_pow("lambda", 2 * alpha, &PHI_VARS).sub(&LaurentPoly::one());
        let term = signed_h("mu", &PHI_VARS, beta)
            .mul(&LaurentPoly::var_pow("mu", beta, &PHI_VARS))
            .mul(&lam2a_minus_one)
            .mul(&r_const);
        psi = psi.add(&term);
    }
    (phi, psi)
}

// ---- The -id criterion ----

/// Witness data for `-id` lying in the image of the word map.
#[derive(Debug, Clone)]
pub struct MinusIdWitness {
    /// `N = Φ(1, i) = Σ_{β odd} 2 R(α,β) α` after the gcd reduction (if any).
    pub n_value: i64,
    /// The order `k` of the root substituted for `y` (1 when no reduction).
    pub gcd_reduction: i64,
    /// Floating verification residual `‖w(x, z) + id‖_max`.
    pub residual: f64,
}

/// Outcome of the `-id` criterion.
#[derive(Debug, Clone)]
pub enum MinusIdOutcome {
    InImage(MinusIdWitness),
    /// The integer invariant vanished (also after the gcd fallback).
    NotApplicable {
        n_value: i64,
    },
}

/// Decide whether `-id` is in the image via the integer invariant
/// `N = Σ_{β odd} 2·R(α,β)·α`. If `N ≠ 0`, the explicit pair
/// `x = diag(a, a⁻¹)` with `a^N = -1` and `y = [[0,1],[-1,0]]` evaluates to
/// `-id`, verified here in floating complex arithmetic. When `N = 0` and the
/// second indices share a gcd `k > 1`, the reduced word is retried with a
/// `k`-th root of `y` (best effort).
pub fn minus_id_criterion(w: &Word) -> Result<MinusIdOutcome, TriangularError> {
    match classify_derived_level(w) {
        DerivedLevel::InF1NotF2 => {}
        level => return Err(TriangularError::WrongDerivedLevel(level)),
    }
    let expr = rewrite_basic(w)?;
    let n_plain = minus_id_invariant(&expr, 1);
    if n_plain != 0 {
        let residual = verify_minus_id(w, n_plain, 1);
        return Ok(MinusIdOutcome::InImage(MinusIdWitness {
            n_value: n_plain,
            gcd_reduction: 1,
            residual,
        }));
    }
    // gcd fallback: replace y by a k-th root, which divides every second index by k
    let k = expr
        .factors()
        .iter()
        .map(|f| f.m.unsigned_abs() as i64)
        .fold(0i64, |acc, m| {
            if acc == 0 {
                m
            } else {
                let (mut a, mut b) = (acc, m);
                while b != 0 {
                    let r = a % b;
                    a = b;
                    b = r;
                }
                a
            }
        });
    if k > 1 {
        let n_reduced = minus_id_invariant(&expr, k);
        if n_reduced != 0 {
            let residual = verify_minus_id(w, n_reduced, k);
            return Ok(MinusIdOutcome::InImage(MinusIdWitness {
                n_value: n_reduced,
                gcd_reduction: k,
                residual,
            }));
        }
    }
    Ok(MinusIdOutcome::NotApplicable { n_value: 0 })
}

/// `Σ 2·R(α,β)·α` over pairs with `β/k` odd.
fn minus_id_invariant(expr: &BasicCommutatorExpr, k: i64) -> i64 {
    expr.tables()
        .iter()
        .filter(|((_, beta), _)| (beta / k) % 2 != 0)
        .map(|((alpha, _), (_, r))| 2 * r * alpha)
        .sum()
}

/// Evaluate `w` at `x = diag(a, a⁻¹)`, `z = rotation(π/(2k))` with
/// `a = exp(iπ/N)` and return `‖w(x,z) + id‖_max`.
fn verify_minus_id(w: &Word, n_value: i64, k: i64) -> f64 {
    let a = Complex64::from_polar(1.0, std::f64::consts::PI / n_value as f64);
    let x = Mat2::new(a, Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0), a.inv());
    let theta = std::f64::consts::FRAC_PI_2 / k as f64;
    let (s, c) = theta.sin_cos();
    let z = Mat2::new(
        Complex64::new(c, 0.0),
        Complex64::new(s, 0.0),
        Complex64::new(-s, 0.0),
        Complex64::new(c, 0.0),
    );
    let value = w.evaluate(&[x, z]).expect("unimodular inputs");
    let target = Mat2::<Complex64>::identity().neg();
    value
        .sub(&target)
        .e
        .iter()
        .flatten()
        .map(|v| v.norm())
        .fold(0.0, f64::max)
}

// ---- Curve divisibility criteria ----

/// Verdict of the alternating-form criteria on the curve `λᴬμᴮ = -1`.
#[derive(Debug, Clone)]
pub enum CurveVerdict {
    /// The test polynomial has a nonzero coefficient: surjective on SL(2,ℂ)
    /// (per the statements of the source criteria; see the report note).
    SurjectiveSl2 {
        /// Which side produced the certificate.
        side: CurveSide,
        /// The test polynomial itself.
        test_poly: UniPoly,
        /// A nonzero coefficient `(power, value)` of the test polynomial.
        nonzero_at: (i64, i64),
    },
    /// The tests vanished, a one-sign hypothesis holds and the word is a
    /// square: the dichotomy returns the square root.
    SquareAlternative { root: Word },
    /// No criterion applied.
    Inconclusive { note: String },
}

/// Which exponent family fed the test polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum CurveSide {
    /// Test built from the `a_i` against roots of `z^B + 1`.
    ViaB,
    /// Test built from the `b_i` against roots of `z^A + 1`.
    ViaA,
}

/// The test polynomial `Σ_T z^T (Σ_{i: T_i = T} coeff_i (-1)^{k_i})` where
/// `2·prefix_i = k_i·total + T_i`, `0 ≤ T_i < |total|`. Its nonvanishing
/// certifies a point of the curve where the off-diagonal survives.
fn curve_test_poly(prefixes: &[i64], coeffs: &[i64], total: i64) -> UniPoly {
    debug_assert!(total != 0);
    let modulus = total.abs();
    let mut acc = vec![0i64; modulus as usize];
    for (pref, coeff) in prefixes.iter().zip(coeffs) {
        let t = (2 * pref).rem_euclid(modulus);
        let k = (2 * pref - t) / total;
        let sign = if k % 2 == 0 { 1 } else { -1 };
        acc[t as usize] += sign * coeff;
    }
    UniPoly::from_i64("z", &acc)
}

/// Apply the curve criteria to an alternating two-letter form with
/// `A ≠ 0` or `B ≠ 0`.
pub fn curve_divisibility(form: &TwoLetterForm) -> Result<CurveVerdict, TriangularError> {
    let a_total = form.a_sum();
    let b_total = form.b_sum();
    if a_total == 0 && b_total == 0 {
        return Err(TriangularError::BothSumsZero);
    }
    let k = form.k();

    // Prefix sums A_i = Σ_{j≤i} a_j and B_i = Σ_{j<i} b_j.
    let mut a_prefix = Vec::with_capacity(k);
    let mut b_prefix = Vec::with_capacity(k);
    let mut ai = 0i64;
    let mut bi = 0i64;
    for i in 0..k {
        ai += form.a[i];
        a_prefix.push(ai);
        b_prefix.push(bi);
        bi += form.b[i];
    }

    if b_total != 0 {
        let p1 = curve_test_poly(&b_prefix, &form.a, b_total);
        if let Some(at) = first_nonzero_coeff(&p1) {
            return Ok(CurveVerdict::SurjectiveSl2 { side: CurveSide::ViaB, test_poly: p1, nonzero_at: at });
        }
    }
    if a_total != 0 {
        let q1 = curve_test_poly(&a_prefix, &form.b, a_total);
        if let Some(at) = first_nonzero_coeff(&q1) {
            return Ok(CurveVerdict::SurjectiveSl2 { side: CurveSide::ViaA, test_poly: q1, nonzero_at: at });
        }
    }

    // Both tests vanish. Under a one-sign hypothesis the word is surjective
    // or a square; report the square only when it actually is one.
    let one_sign = form.b.iter().all(|&v| v > 0)
        || form.b.iter().all(|&v| v < 0)
        || form.a.iter().all(|&v| v > 0)
        || form.a.iter().all(|&v| v < 0);
    if one_sign {
        let (root, mult) = form.word().proper_power_root().expect("nonidentity form");
        if mult % 2 == 0 {
            return Ok(CurveVerdict::SquareAlternative { root: root.power(mult as i64 / 2) });
        }
        return Ok(CurveVerdict::SurjectiveSl2 {
            side: if form.b.iter().all(|&v| v > 0) || form.b.iter().all(|&v| v < 0) {
                CurveSide::ViaB
            } else {
                CurveSide::ViaA
            },
            test_poly: UniPoly::zero("z"),
            nonzero_at: (0, 0),
        });
    }
    Ok(CurveVerdict::Inconclusive {
        note: "curve tests vanish and no one-sign hypothesis applies".into(),
    })
}

fn first_nonzero_coeff(p: &UniPoly) -> Option<(i64, i64)> {
    for (i, c) in p.coeffs().iter().enumerate() {
        if !num_traits::Zero::is_zero(c) {
            let v = c.to_integer();
            let v: i64 = v.try_into().unwrap_or(i64::MAX);
            return Some((i as i64, v));
        }
    }
    None
}

/// Convenience: run the curve criteria on a word (normalizing first).
pub fn curve_divisibility_word(w: &Word) -> Result<CurveVerdict, TriangularError> {
    let form = normalize_two_letter(w)?;
    curve_divisibility(&form)
}

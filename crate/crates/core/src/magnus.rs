//! Magnus-style matrix homomorphisms of the free group.
//!
//! `mu1` sends `g_i` to `[[t_i, 0], [1, t_i⁻¹]]` over the Laurent ring
//! `Λ_n = ℤ[t_1^{±1}, …, t_n^{±1}]`; its kernel is the second derived
//! subgroup, which makes the lower-left entry of `mu1(w)` an exact membership
//! test: for `w` in the commutator subgroup the image is `[[1,0],[ℒ_w,1]]`,
//! and `ℒ_w = 0` iff `w` lies in the second derived subgroup.
//!
//! The same fold supports the `s_i`-weighted variant (`g_i ↦ [[t_i,0],[s_i,t_i⁻¹]]`)
//! and integer-weighted variants, plus constructive unipotent witnesses built
//! from a nonvanishing point of `ℒ_w`.

use std::fmt;

use num_traits::{One, Zero};

use crate::laurent::LaurentPoly;
use crate::mat2::Mat2;
use crate::ring::{rat_int, Rational};
use crate::word::{Syllable, Word};

/// Element of `ST(R)`: `[[κ, 0], [ℓ, κ⁻¹]]` with `κ` a unit monomial in the
/// `t`-variables and `ℓ` a Laurent polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StMatrix {
    /// Exponents of `κ = ∏ t_i^{t_exps[i]}`.
    t_exps: Vec<i64>,
    ell: LaurentPoly,
    vars: Vec<String>,
}

impl StMatrix {
    pub fn identity(vars: &[&str], n: usize) -> Self {
        StMatrix {
            t_exps: vec![0; n],
            ell: LaurentPoly::zero(),
            vars: vars.iter().map(|s| s.to_string()).collect(),
        }
    }

    /// The unit monomial κ as a polynomial.
    pub fn kappa(&self) -> LaurentPoly {
        let vars: Vec<&str> = self.vars.iter().map(|s| s.as_str()).collect();
        let mut exps = vec![0i64; self.vars.len()];
        exps[..self.t_exps.len()].copy_from_slice(&self.t_exps);
        LaurentPoly::monomial(&vars, &exps, Rational::one())
    }

    /// Exponent vector of κ over the `t`-variables.
    pub fn kappa_exponents(&self) -> &[i64] {
        &self.t_exps
    }

    pub fn ell(&self) -> &LaurentPoly {
        &self.ell
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.vars, other.vars);
        // [[κ,0],[ℓ,κ⁻¹]]·[[κ',0],[ℓ',κ'⁻¹]] = [[κκ',0],[ℓκ' + κ⁻¹ℓ', (κκ')⁻¹]]
        let kappa_other = other.kappa();
        let kappa_self_inv = self.kappa().unit_inverse().expect("κ is a unit");
        let ell = self.ell.mul(&kappa_other).add(&kappa_self_inv.mul(&other.ell));
        StMatrix {
            t_exps: self
                .t_exps
                .iter()
                .zip(&other.t_exps)
                .map(|(a, b)| a + b)
                .collect(),
            ell,
            vars: self.vars.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        // adjugate of a determinant-1 matrix: [[κ,0],[ℓ,κ⁻¹]]⁻¹ = [[κ⁻¹,0],[−ℓ,κ]]
        StMatrix {
            t_exps: self.t_exps.iter().map(|e| -e).collect(),
            ell: self.ell.neg(),
            vars: self.vars.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.t_exps.iter().all(|&e| e == 0) && self.ell.is_zero()
    }

    /// The full 2×2 matrix over the Laurent ring.
    pub fn to_mat2(&self) -> Mat2<LaurentPoly> {
        let kappa = self.kappa();
        let kappa_inv = kappa.unit_inverse().expect("κ is a unit");
        Mat2::new(kappa, LaurentPoly::zero(), self.ell.clone(), kappa_inv)
    }
}

impl fmt::Display for StMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, 0], [{}, {}]]",
            self.kappa(),
            self.ell,
            self.kappa().unit_inverse().unwrap()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MagnusError {
    /// The operation needs a word with all exponent sums zero.
    NotInCommutatorSubgroup,
    /// The obstruction polynomial vanished (word in the second derived subgroup).
    ZeroObstruction,
    /// Target matrix is not unipotent (trace 2, determinant 1).
    NotUnipotent,
    /// A weight vector entry was zero.
    ZeroWeight,
    /// Internal verification failed (would indicate a bug).
    VerificationFailed(String),
}

impl fmt::Display for MagnusError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MagnusError::NotInCommutatorSubgroup => {
                write!(f, "word has a nonzero exponent sum")
            }
            MagnusError::ZeroObstruction => write!(
                f,
                "obstruction polynomial is zero (word lies in the second derived subgroup)"
            ),
            MagnusError::NotUnipotent => write!(f, "target matrix is not unipotent"),
            MagnusError::ZeroWeight => write!(f, "weight vector entries must be nonzero"),
            MagnusError::VerificationFailed(m) => write!(f, "witness verification failed: {m}"),
        }
    }
}

impl std::error::Error for MagnusError {}

/// `t1..tn` variable names.
fn t_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

fn s_vars(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("s{i}")).collect()
}

/// The symmetric Laurent sum `t^{m-1} + t^{m-3} + … + t^{1-m}` for `m ≥ 1`;
/// this is the lower-left entry of `[[t,0],[1,t⁻¹]]^m`.
fn h_sym(var: &str, m: u64, vars: &[&str]) -> LaurentPoly {
    let mut acc = LaurentPoly::zero();
    for k in 0..m {
        let e = m as i64 - 1 - 2 * k as i64;
        acc = acc.add(&LaurentPoly::var_pow(var, e, vars));
    }
    acc
}

/// Image of a single syllable under the weighted fold: `κ = t_g^e`,
/// `ℓ = weight · sgn(e) · h_{|e|}(t_g)`.
fn syllable_image(syl: &Syllable, n: usize, vars: &[&str], weight: &LaurentPoly) -> StMatrix {
    let tname = format!("t{}", syl.gen + 1);
    let mut t_exps = vec![0i64; n];
    t_exps[syl.gen] = syl.exp;
    let mut ell = h_sym(&tname, syl.exp.unsigned_abs(), vars).mul(weight);
    if syl.exp < 0 {
        ell = ell.neg();
    }
    StMatrix { t_exps, ell, vars: vars.iter().map(|s| s.to_string()).collect() }
}

/// The homomorphic image of `w` under `g_i ↦ [[t_i,0],[1,t_i⁻¹]]`.
pub fn mu1_image(w: &Word) -> StMatrix {
    let n = w.num_generators();
    let tv = t_vars(n);
    let vars: Vec<&str> = tv.iter().map(|s| s.as_str()).collect();
    let mut acc = StMatrix::identity(&vars, n);
    for syl in w.syllables() {
        acc = acc.mul(&syllable_image(syl, n, &vars, &LaurentPoly::one()));
    }
    acc
}

/// Weighting mode for the generalized homomorphism.
#[derive(Debug, Clone)]
pub enum MuMode {
    /// `g_i ↦ [[t_i,0],[s_i,t_i⁻¹]]` over `Λ_n[s_1..s_n]`.
    WithSVars,
    /// `g_i ↦ [[t_i,0],[b_i,t_i⁻¹]]` for a vector of nonzero integers.
    IntegerWeights(Vec<i64>),
}

/// The generalized image; with every `s_i ↦ 1` the `WithSVars` image equals
/// [`mu1_image`].
pub fn mu_general(w: &Word, mode: &MuMode) -> Result<StMatrix, MagnusError> {
    let n = w.num_generators();
    match mode {
        MuMode::WithSVars => {
            let mut names = t_vars(n);
            names.extend(s_vars(n));
            let vars: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
            let mut acc = StMatrix::identity(&vars, n);
            for syl in w.syllables() {
                let weight = LaurentPoly::var(&format!("s{}", syl.gen + 1), &vars);
                acc = acc.mul(&syllable_image(syl, n, &vars, &weight));
            }
            Ok(acc)
        }
        MuMode::IntegerWeights(b) => {
            assert_eq!(b.len(), n, "one weight per generator");
            if b.iter().any(|&x| x == 0) {
                return Err(MagnusError::ZeroWeight);
            }
            let tv = t_vars(n);
            let vars: Vec<&str> = tv.iter().map(|s| s.as_str()).collect();
            let mut acc = StMatrix::identity(&vars, n);
            for syl in w.syllables() {
                let weight = LaurentPoly::int(b[syl.gen]);
                acc = acc.mul(&syllable_image(syl, n, &vars, &weight));
            }
            Ok(acc)
        }
    }
}

/// Position of a word in the derived series, as far as this module decides it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub enum DerivedLevel {
    /// Some exponent sum is nonzero: not in the commutator subgroup.
    NotInF1,
    /// All exponent sums vanish but the obstruction polynomial does not.
    InF1NotF2,
    /// The image under `mu1` is the identity.
    InF2,
}

impl fmt::Display for DerivedLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedLevel::NotInF1 => write!(f, "NotInF1"),
            DerivedLevel::InF1NotF2 => write!(f, "InF1NotF2"),
            DerivedLevel::InF2 => write!(f, "InF2"),
        }
    }
}

/// The obstruction polynomial `ℒ_w`: lower-left entry of `mu1(w)` for a word
/// with all exponent sums zero. Nonzero iff `w` is not in the second derived
/// subgroup.
pub fn obstruction_poly(w: &Word) -> Result<LaurentPoly, MagnusError> {
    if w.exponent_sums().iter().any(|&s| s != 0) {
        return Err(MagnusError::NotInCommutatorSubgroup);
    }
    Ok(mu1_image(w).ell().clone())
}

/// Classify against the derived series, computing `ℒ_w` only when all
/// exponent sums vanish.
pub fn classify_derived_level(w: &Word) -> DerivedLevel {
    if w.exponent_sums().iter().any(|&s| s != 0) {
        return DerivedLevel::NotInF1;
    }
    if mu1_image(w).ell().is_zero() {
        DerivedLevel::InF2
    } else {
        DerivedLevel::InF1NotF2
    }
}

/// Enumerate nonzero rationals in a deterministic height order:
/// `1, -1, 2, 1/2, -2, -1/2, 3, 1/3, 3/2, 2/3, -3, …`.
pub fn rational_stream(count: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(count);
    let mut height: i64 = 1;
    'outer: loop {
        let mut positives: Vec<Rational> = Vec::new();
        if height == 1 {
            positives.push(Rational::one());
        } else {
            for p in 1..height {
                if gcd_i64(p, height) == 1 {
                    positives.push(Rational::new(height.into(), p.into()));
                    positives.push(Rational::new(p.into(), height.into()));
                }
            }
        }
        for v in &positives {
            out.push(v.clone());
            if out.len() >= count {
                break 'outer;
            }
        }
        for v in &positives {
            out.push(-v);
            if out.len() >= count {
                break 'outer;
            }
        }
        height += 1;
    }
    out
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// First tuple of nonzero rationals (diagonal sweep over the height
/// enumeration) where `poly` does not vanish. Terminates because a nonzero
/// Laurent polynomial cannot vanish on the whole grid.
pub fn find_nonvanishing_point(poly: &LaurentPoly) -> Result<Vec<Rational>, MagnusError> {
    if poly.is_zero() {
        return Err(MagnusError::ZeroObstruction);
    }
    let n = poly.vars().len();
    if n == 0 {
        return Ok(Vec::new());
    }
    for diag in 0usize.. {
        let values = rational_stream(diag + 1);
        let mut idx = vec![0usize; n];
        'tuples: loop {
            if idx.iter().sum::<usize>() == diag {
                let point: Vec<Rational> = idx.iter().map(|&i| values[i].clone()).collect();
                if let Ok(v) = poly.eval(&point) {
                    if !v.is_zero() {
                        return Ok(point);
                    }
                }
            }
            // odometer with digits bounded by diag
            let mut i = 0;
            loop {
                if i == n {
                    break 'tuples;
                }
                idx[i] += 1;
                if idx[i] > diag {
                    idx[i] = 0;
                    i += 1;
                } else {
                    break;
                }
            }
        }
    }
    unreachable!("nonzero Laurent polynomial vanishes on every grid point")
}

/// A constructive preimage certificate: matrices `Z_i` with
/// `w(Z_1,…,Z_n) = X` exactly.
#[derive(Debug, Clone)]
pub struct UnipotentWitness {
    /// The nonvanishing point `a` of the obstruction polynomial.
    pub point: Vec<Rational>,
    /// `c = ℒ_w(a)`.
    pub c: Rational,
    /// Conjugator `S` with `S [[1,0],[c,1]] S⁻¹ = X`.
    pub conjugator: Mat2<Rational>,
    /// The generator images.
    pub images: Vec<Mat2<Rational>>,
}

fn is_unipotent(x: &Mat2<Rational>) -> bool {
    x.det() == Rational::one() && x.trace() == rat_int(2)
}

/// Produce `Z_i = S [[a_i,0],[1,a_i⁻¹]] S⁻¹` with `w(Z) = X` for a unipotent
/// target `X`, searching for the evaluation point automatically.
pub fn unipotent_witness(w: &Word, x: &Mat2<Rational>) -> Result<UnipotentWitness, MagnusError> {
    let ell = obstruction_poly(w)?;
    if ell.is_zero() {
        return Err(MagnusError::ZeroObstruction);
    }
    let point = find_nonvanishing_point(&ell)?;
    unipotent_witness_at(w, x, &point)
}

/// Same as [`unipotent_witness`] with an explicit evaluation point.
pub fn unipotent_witness_at(
    w: &Word,
    x: &Mat2<Rational>,
    point: &[Rational],
) -> Result<UnipotentWitness, MagnusError> {
    if !is_unipotent(x) {
        return Err(MagnusError::NotUnipotent);
    }
    let n = w.num_generators();
    if x.is_identity() {
        return Ok(UnipotentWitness {
            point: point.to_vec(),
            c: Rational::zero(),
            conjugator: Mat2::identity(),
            images: vec![Mat2::identity(); n],
        });
    }
    let ell = obstruction_poly(w)?;
    if ell.is_zero() {
        return Err(MagnusError::ZeroObstruction);
    }
    let c = ell.eval(point).map_err(|e| MagnusError::VerificationFailed(e.to_string()))?;
    if c.is_zero() {
        return Err(MagnusError::VerificationFailed(
            "obstruction vanishes at the supplied point".into(),
        ));
    }
    let base = Mat2::new(Rational::one(), Rational::zero(), c.clone(), Rational::one());
    let conjugator = if *x == base { Mat2::identity() } else { similarity_to(&c, x)? };
    let conj_inv = conjugator.adjugate().scalar_mul(&conjugator.det().recip());
    let images: Vec<Mat2<Rational>> = point
        .iter()
        .map(|a| {
            let z = Mat2::new(a.clone(), Rational::zero(), Rational::one(), a.recip());
            conjugator.mul(&z).mul(&conj_inv)
        })
        .collect();
    // Soundness: the identity must hold exactly.
    let value =
        w.evaluate(&images).map_err(|e| MagnusError::VerificationFailed(e.to_string()))?;
    if value != *x {
        return Err(MagnusError::VerificationFailed(format!(
            "w(Z) != X: got [[{},{}],[{},{}]]",
            value.e[0][0], value.e[0][1], value.e[1][0], value.e[1][1]
        )));
    }
    Ok(UnipotentWitness { point: point.to_vec(), c, conjugator, images })
}

/// Solve `S [[1,0],[c,1]] S⁻¹ = X` for `S ∈ GL(2,ℚ)`: pick `s₂` spanning
/// `ker(X − id)` (which equals `im(X − id)` for a rank-1 nilpotent), pick
/// `s₁` with `(X − id)s₁ = α s₂`, and rescale so `α` becomes `c`.
fn similarity_to(c: &Rational, x: &Mat2<Rational>) -> Result<Mat2<Rational>, MagnusError> {
    let nil = x.sub(&Mat2::identity());
    let col0 = (nil.e[0][0].clone(), nil.e[1][0].clone());
    let col1 = (nil.e[0][1].clone(), nil.e[1][1].clone());
    let (s2, s1_seed) = if !col0.0.is_zero() || !col0.1.is_zero() {
        (col0, (Rational::one(), Rational::zero()))
    } else if !col1.0.is_zero() || !col1.1.is_zero() {
        (col1, (Rational::zero(), Rational::one()))
    } else {
        return Err(MagnusError::NotUnipotent); // X == id handled by caller
    };
    // N·s1_seed = s2, so α = 1; rescale s1 by c.
    let s1 = (&s1_seed.0 * c, &s1_seed.1 * c);
    let s = Mat2::new(s1.0, s2.0, s1.1, s2.1);
    if s.det().is_zero() {
        return Err(MagnusError::VerificationFailed("singular conjugator".into()));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use rand::SeedableRng;

    fn w2(text: &str) -> Word {
        Word::parse(text, 2).unwrap()
    }

    #[test]
    fn mu1_generator_image() {
        let g1 = Word::generator(3, 0);
        let m = mu1_image(&g1);
        assert_eq!(m.kappa_exponents(), &[1, 0, 0]);
        assert!(m.ell().ring_is_one());
    }

    #[test]
    fn mu1_commutator_matches_direct_product() {
        // [x,y]: κ = 1, ℓ = t1^-1 + t1^-2 t2^-1 - t1^-1 t2^-2 - t2^-1,
        // cross-checked against an independent symbolic 2×2 product.
        let m = mu1_image(&w2("[x,y]"));
        assert_eq!(m.kappa_exponents(), &[0, 0]);
        let vars = ["t1", "t2"];
        let expect =
            LaurentPoly::parse("t1^-1 + t1^-2*t2^-1 - t1^-1*t2^-2 - t2^-1", &vars).unwrap();
        assert_eq!(*m.ell(), expect);

        // independent route: evaluate the word at generic Mat2<LaurentPoly>
        let t1 = LaurentPoly::var("t1", &vars);
        let t2 = LaurentPoly::var("t2", &vars);
        let gen = |t: &LaurentPoly| {
            Mat2::new(
                t.clone(),
                LaurentPoly::zero(),
                LaurentPoly::one(),
                t.unit_inverse().unwrap(),
            )
        };
        let direct = w2("[x,y]").evaluate(&[gen(&t1), gen(&t2)]).unwrap();
        assert_eq!(direct, m.to_mat2());
    }

    #[test]
    fn mu1_kernel_contains_second_derived() {
        let u = w2("[[x,y],[x,y^2]]");
        let m = mu1_image(&u);
        assert!(m.is_identity());
        assert_eq!(classify_derived_level(&u), DerivedLevel::InF2);
    }

    #[test]
    fn mu1_is_homomorphism_on_random_words() {
        use crate::word::tests::random_word;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let u = random_word(&mut rng, 3, 8);
            let v = random_word(&mut rng, 3, 8);
            let lhs = mu1_image(&u.concat(&v).unwrap());
            let rhs = mu1_image(&u).mul(&mu1_image(&v));
            assert_eq!(lhs, rhs);
            let inv = mu1_image(&u.inverse());
            assert!(mu1_image(&u).mul(&inv).is_identity());
        }
    }

    #[test]
    fn kappa_tracks_exponent_sums() {
        use crate::word::tests::random_word;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(6);
        for _ in 0..40 {
            let u = random_word(&mut rng, 3, 10);
            assert_eq!(mu1_image(&u).kappa_exponents(), u.exponent_sums().as_slice());
        }
    }

    #[test]
    fn mu_general_images() {
        let g1 = Word::generator(1, 0);
        let m = mu_general(&g1, &MuMode::WithSVars).unwrap();
        assert_eq!(m.ell(), &LaurentPoly::var("s1", &["t1", "s1"]));

        let m = mu_general(&g1, &MuMode::IntegerWeights(vec![3])).unwrap();
        assert_eq!(m.ell(), &LaurentPoly::int(3));

        assert!(matches!(
            mu_general(&g1, &MuMode::IntegerWeights(vec![0])),
            Err(MagnusError::ZeroWeight)
        ));
    }

    #[test]
    fn mu_w_specializes_to_mu1() {
        use crate::word::tests::random_word;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let u = random_word(&mut rng, 2, 8);
            let w_img = mu_general(&u, &MuMode::WithSVars).unwrap();
            let ell_spec = w_img
                .ell()
                .subst(&[("s1", LaurentPoly::one()), ("s2", LaurentPoly::one())])
                .unwrap()
                .project(&["t1", "t2"])
                .unwrap();
            assert_eq!(ell_spec, *mu1_image(&u).ell());
            assert_eq!(w_img.kappa_exponents(), mu1_image(&u).kappa_exponents());
        }
    }

    #[test]
    fn obstruction_examples() {
        assert!(!obstruction_poly(&w2("[x,y]")).unwrap().is_zero());
        assert!(obstruction_poly(&w2("[[x,y],[x,y^2]]")).unwrap().is_zero());
        assert!(!obstruction_poly(&Word::engel(2)).unwrap().is_zero());
        assert!(matches!(
            obstruction_poly(&w2("x^2 y")),
            Err(MagnusError::NotInCommutatorSubgroup)
        ));
    }

    #[test]
    fn engel_words_stay_outside_f2() {
        for n in 1..=8 {
            assert!(!obstruction_poly(&Word::engel(n)).unwrap().is_zero(), "e_{n}");
        }
    }

    #[test]
    fn classification_examples() {
        assert_eq!(classify_derived_level(&w2("x^2 y")), DerivedLevel::NotInF1);
        assert_eq!(classify_derived_level(&w2("[x,y]")), DerivedLevel::InF1NotF2);
        assert_eq!(classify_derived_level(&w2("[[x,[x,y]],[y,[x,y]]]")), DerivedLevel::InF2);
    }

    #[test]
    fn rational_stream_order() {
        let s = rational_stream(6);
        let expect: Vec<Rational> = vec![
            rat_int(1),
            rat_int(-1),
            rat_int(2),
            Rational::new(1.into(), 2.into()),
            rat_int(-2),
            Rational::new((-1).into(), 2.into()),
        ];
        assert_eq!(s, expect);
    }

    #[test]
    fn nonvanishing_point_examples() {
        // a nonzero constant needs no coordinates
        let p = LaurentPoly::int(5);
        assert_eq!(find_nonvanishing_point(&p).unwrap(), Vec::<Rational>::new());

        // t1 - 1: first enumerated tuple with t1 ≠ 1
        let p = LaurentPoly::parse("t1 - 1", &["t1"]).unwrap();
        let pt = find_nonvanishing_point(&p).unwrap();
        assert_eq!(pt, vec![rat_int(-1)]);

        // the [x,y] obstruction accepts (2,3) with value 7/36
        let ell = obstruction_poly(&w2("[x,y]")).unwrap();
        assert_eq!(
            ell.eval(&[rat_int(2), rat_int(3)]).unwrap(),
            Rational::new(7.into(), 36.into())
        );
        let pt = find_nonvanishing_point(&ell).unwrap();
        assert!(!ell.eval(&pt).unwrap().is_zero());

        assert!(find_nonvanishing_point(&LaurentPoly::zero()).is_err());
    }

    #[test]
    fn witness_for_commutator_at_2_3() {
        // target [[1,0],[7/36,1]] at a = (2,3): conjugator is the identity
        let x = Mat2::new(
            rat_int(1),
            rat_int(0),
            Rational::new(7.into(), 36.into()),
            rat_int(1),
        );
        let witness = unipotent_witness_at(&w2("[x,y]"), &x, &[rat_int(2), rat_int(3)]).unwrap();
        assert_eq!(witness.c, Rational::new(7.into(), 36.into()));
        assert!(witness.conjugator.is_identity());
        let value = w2("[x,y]").evaluate(&witness.images).unwrap();
        assert_eq!(value, x);
    }

    #[test]
    fn witness_for_upper_unipotent() {
        // X = [[1,5],[0,1]] needs a real conjugation
        let x = Mat2::new(rat_int(1), rat_int(5), rat_int(0), rat_int(1));
        let witness = unipotent_witness(&w2("[x,y]"), &x).unwrap();
        let value = w2("[x,y]").evaluate(&witness.images).unwrap();
        assert_eq!(value, x);
        for z in &witness.images {
            assert_eq!(z.det(), Rational::one());
        }
    }

    #[test]
    fn witness_identity_target() {
        let witness = unipotent_witness(&w2("[x,y]"), &Mat2::identity()).unwrap();
        assert!(witness.images.iter().all(|z| z.is_identity()));
    }

    #[test]
    fn witness_rejects_bad_targets() {
        let not_uni = Mat2::new(rat_int(2), rat_int(0), rat_int(0), rat_int(1));
        assert!(matches!(
            unipotent_witness(&w2("[x,y]"), &not_uni),
            Err(MagnusError::NotUnipotent)
        ));
        let x = Mat2::new(rat_int(1), rat_int(1), rat_int(0), rat_int(1));
        assert!(matches!(
            unipotent_witness(&w2("x y"), &x),
            Err(MagnusError::NotInCommutatorSubgroup)
        ));
        assert!(matches!(
            unipotent_witness(&w2("[[x,y],[x,y^2]]"), &x),
            Err(MagnusError::ZeroObstruction)
        ));
    }
}

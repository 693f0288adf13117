//! Reduced free-group words: parsing, algebra, exponent statistics, cyclic
//! normal forms and generic evaluation at 2×2 matrices.
//!
//! Commutator convention: `[u, v] = u v u⁻¹ v⁻¹`, so the basic commutators
//! read `w_{n,m} = [xⁿ, yᵐ] = xⁿ yᵐ x⁻ⁿ y⁻ᵐ`. The opposite convention would
//! silently flip the signs of the exponent-sum tables downstream, so this one
//! is fixed project-wide.
//!
//! Generators are named `g1..gn`, with the aliases `x = g1` and `y = g2`;
//! the identity word is written `1`.

use std::fmt;

use crate::mat2::Mat2;
use crate::ring::Ring;

/// One maximal block `generator^exponent` of a reduced word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Syllable {
    /// Zero-based generator index.
    pub gen: usize,
    /// Nonzero exponent.
    pub exp: i64,
}

/// A freely reduced word over `num_generators` generators.
///
/// Invariants: adjacent syllables use distinct generators, every exponent is
/// nonzero, and the empty syllable list is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    num_generators: usize,
    syllables: Vec<Syllable>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordError {
    Syntax { position: usize, message: String },
    GeneratorOutOfRange { position: usize, index: usize, max: usize },
    MismatchedGenerators { left: usize, right: usize },
    IdentityInput,
    SubstitutionArity { expected: usize, got: usize },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::Syntax { position, message } => {
                write!(f, "syntax error at position {position}: {message}")
            }
            WordError::GeneratorOutOfRange { position, index, max } => write!(
                f,
                "generator g{index} at position {position} out of range (word has {max} generators)"
            ),
            WordError::MismatchedGenerators { left, right } => {
                write!(f, "mismatched generator counts: {left} vs {right}")
            }
            WordError::IdentityInput => write!(f, "the identity word is not allowed here"),
            WordError::SubstitutionArity { expected, got } => {
                write!(f, "substitution needs {expected} images, got {got}")
            }
        }
    }
}

impl std::error::Error for WordError {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EvalError {
    ImageCount { expected: usize, got: usize },
    /// A negative exponent hit a matrix whose determinant is not 1.
    NotUnimodular { gen: usize },
}

impl fmt::Display for EvalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvalError::ImageCount { expected, got } => {
                write!(f, "evaluation needs {expected} matrices, got {got}")
            }
            EvalError::NotUnimodular { gen } => write!(
                f,
                "image of g{} must have determinant 1 to take negative powers",
                gen + 1
            ),
        }
    }
}

impl std::error::Error for EvalError {}

impl Word {
    // ---- Construction ----

    pub fn identity(num_generators: usize) -> Self {
        Word { num_generators, syllables: Vec::new() }
    }

    pub fn generator(num_generators: usize, gen: usize) -> Self {
        assert!(gen < num_generators);
        Word { num_generators, syllables: vec![Syllable { gen, exp: 1 }] }
    }

    /// `x` and `y` in the two-generator group.
    pub fn x() -> Self {
        Word::generator(2, 0)
    }

    pub fn y() -> Self {
        Word::generator(2, 1)
    }

    /// Build from raw syllables, freely reducing.
    pub fn from_syllables(num_generators: usize, raw: impl IntoIterator<Item = (usize, i64)>) -> Self {
        let mut syllables: Vec<Syllable> = Vec::new();
        for (gen, exp) in raw {
            assert!(gen < num_generators, "generator index out of range");
            if exp == 0 {
                continue;
            }
            if let Some(top) = syllables.last_mut() {
                if top.gen == gen {
                    top.exp += exp;
                    if top.exp == 0 {
                        syllables.pop();
                    }
                    continue;
                }
            }
            syllables.push(Syllable { gen, exp });
        }
        Word { num_generators, syllables }
    }

    // ---- Queries ----

    pub fn num_generators(&self) -> usize {
        self.num_generators
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_count(&self) -> usize {
        self.syllables.len()
    }

    /// Word length counted in letters.
    pub fn letter_len(&self) -> usize {
        self.syllables.iter().map(|s| s.exp.unsigned_abs() as usize).sum()
    }

    /// The word as a sequence of single letters `(gen, ±1)`.
    pub fn letters(&self) -> Vec<(usize, i64)> {
        let mut out = Vec::with_capacity(self.letter_len());
        for s in &self.syllables {
            let step = if s.exp > 0 { 1 } else { -1 };
            for _ in 0..s.exp.unsigned_abs() {
                out.push((s.gen, step));
            }
        }
        out
    }

    /// Signed exponent sum of each generator; all zero iff the word lies in
    /// the commutator subgroup.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.num_generators];
        for s in &self.syllables {
            sums[s.gen] += s.exp;
        }
        sums
    }

    // ---- Group algebra ----

    pub fn concat(&self, other: &Self) -> Result<Self, WordError> {
        if self.num_generators != other.num_generators {
            return Err(WordError::MismatchedGenerators {
                left: self.num_generators,
                right: other.num_generators,
            });
        }
        Ok(Word::from_syllables(
            self.num_generators,
            self.syllables
                .iter()
                .chain(other.syllables.iter())
                .map(|s| (s.gen, s.exp)),
        ))
    }

    pub fn inverse(&self) -> Self {
        Word {
            num_generators: self.num_generators,
            syllables: self.syllables.iter().rev().map(|s| Syllable { gen: s.gen, exp: -s.exp }).collect(),
        }
    }

    /// `self^k`; `k = 0` gives the identity.
    pub fn power(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity(self.num_generators);
        for _ in 0..k.unsigned_abs() {
            acc = acc.concat(&base).expect("same generator count");
        }
        acc
    }

    /// `[u, v] = u v u⁻¹ v⁻¹`.
    pub fn commutator(u: &Self, v: &Self) -> Result<Self, WordError> {
        u.concat(v)?.concat(&u.inverse())?.concat(&v.inverse())
    }

    /// Replace generator `i` by `images[i]` throughout, reducing eagerly.
    pub fn substitute(&self, images: &[Word]) -> Result<Self, WordError> {
        if images.len() != self.num_generators {
            return Err(WordError::SubstitutionArity {
                expected: self.num_generators,
                got: images.len(),
            });
        }
        let n = images.first().map_or(self.num_generators, |w| w.num_generators);
        for img in images {
            if img.num_generators != n {
                return Err(WordError::MismatchedGenerators {
                    left: n,
                    right: img.num_generators,
                });
            }
        }
        let mut acc = Word::identity(n);
        for s in &self.syllables {
            acc = acc.concat(&images[s.gen].power(s.exp))?;
        }
        Ok(acc)
    }

    /// The Engel word `e_n`: `e_1 = [x, y]`, `e_{k+1} = [e_k, y]`.
    pub fn engel(n: usize) -> Self {
        assert!(n >= 1, "Engel words start at n = 1");
        let y = Word::y();
        let mut e = Word::commutator(&Word::x(), &y).unwrap();
        for _ in 1..n {
            e = Word::commutator(&e, &y).unwrap();
        }
        e
    }

    // ---- Cyclic structure ----

    /// Decompose `w = c · core · c⁻¹` with `core` cyclically reduced
    /// (first and last letters not mutually inverse).
    pub fn cyclic_decomposition(&self) -> (Word, Word) {
        let mut letters = self.letters();
        let mut conj: Vec<(usize, i64)> = Vec::new();
        while letters.len() >= 2 {
            let first = letters[0];
            let last = *letters.last().unwrap();
            if first.0 == last.0 && first.1 == -last.1 {
                conj.push(first);
                letters.remove(0);
                letters.pop();
            } else {
                break;
            }
        }
        (
            Word::from_syllables(self.num_generators, conj),
            Word::from_syllables(self.num_generators, letters),
        )
    }

    /// Maximal root: the unique `(v, k)` with `self = v^k`, `k ≥ 1` maximal.
    ///
    /// Works by cyclic reduction followed by the smallest rotation period of
    /// the core's letter sequence.
    pub fn proper_power_root(&self) -> Result<(Word, u32), WordError> {
        if self.is_identity() {
            return Err(WordError::IdentityInput);
        }
        let (conj, core) = self.cyclic_decomposition();
        let letters = core.letters();
        let m = letters.len();
        for p in 1..=m {
            if m % p != 0 {
                continue;
            }
            if (0..m).all(|i| letters[i] == letters[(i + p) % m]) {
                let d = Word::from_syllables(self.num_generators, letters[..p].iter().copied());
                let root = conj
                    .concat(&d)
                    .and_then(|w| w.concat(&conj.inverse()))
                    .expect("same generator count");
                return Ok((root, (m / p) as u32));
            }
        }
        unreachable!("period m always matches");
    }

    // ---- Evaluation ----

    /// The noncommutative product `∏ images[gen]^exp`. Matrices hit by a
    /// negative exponent must be unimodular (inverse taken via adjugate).
    pub fn evaluate<R: Ring>(&self, images: &[Mat2<R>]) -> Result<Mat2<R>, EvalError> {
        if images.len() != self.num_generators {
            return Err(EvalError::ImageCount {
                expected: self.num_generators,
                got: images.len(),
            });
        }
        let mut acc = Mat2::identity();
        for s in &self.syllables {
            let m = images[s.gen]
                .pow(s.exp)
                .ok_or(EvalError::NotUnimodular { gen: s.gen })?;
            acc = acc.mul(&m);
        }
        Ok(acc)
    }

    // ---- Parsing ----

    /// Parse against the grammar (whitespace ignored):
    ///
    /// ```text
    /// word      = "1" | { factor } ;
    /// factor    = atom [ "^" integer ] ;
    /// atom      = generator | "(" word ")" | "[" word "," word "]" ;
    /// generator = "x" | "y" | "g" digits ;
    /// integer   = ["-"] digits .
    /// ```
    pub fn parse(text: &str, num_generators: usize) -> Result<Self, WordError> {
        let mut parser = WordParser { chars: text.chars().collect(), pos: 0, n: num_generators };
        let w = parser.parse_word(0)?;
        parser.skip_ws();
        if parser.pos != parser.chars.len() {
            return Err(WordError::Syntax {
                position: parser.pos,
                message: "trailing input".into(),
            });
        }
        Ok(w)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for s in &self.syllables {
            if !first {
                write!(f, " ")?;
            }
            first = false;
            let name = match s.gen {
                0 => "x".to_string(),
                1 => "y".to_string(),
                g => format!("g{}", g + 1),
            };
            if s.exp == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{}", s.exp)?;
            }
        }
        Ok(())
    }
}

struct WordParser {
    chars: Vec<char>,
    pos: usize,
    n: usize,
}

impl WordParser {
    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn parse_word(&mut self, depth: usize) -> Result<Word, WordError> {
        if depth > 200 {
            return Err(WordError::Syntax { position: self.pos, message: "nesting too deep".into() });
        }
        // Lone "1" is the identity.
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Word::identity(self.n));
        }
        let mut acc = Word::identity(self.n);
        loop {
            match self.peek() {
                Some(c) if c == 'x' || c == 'y' || c == 'g' || c == '(' || c == '[' => {
                    let f = self.parse_factor(depth)?;
                    acc = acc.concat(&f).expect("same generator count");
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn parse_factor(&mut self, depth: usize) -> Result<Word, WordError> {
        let atom = self.parse_atom(depth)?;
        if self.peek() == Some('^') {
            self.pos += 1;
            let e = self.parse_integer()?;
            Ok(atom.power(e))
        } else {
            Ok(atom)
        }
    }

    fn parse_atom(&mut self, depth: usize) -> Result<Word, WordError> {
        match self.peek() {
            Some('x') => {
                self.pos += 1;
                self.generator_word(1, self.pos - 1)
            }
            Some('y') => {
                self.pos += 1;
                self.generator_word(2, self.pos - 1)
            }
            Some('g') => {
                let at = self.pos;
                self.pos += 1;
                let idx = self.parse_unsigned()?;
                self.generator_word(idx, at)
            }
            Some('(') => {
                self.pos += 1;
                let w = self.parse_word(depth + 1)?;
                self.expect(')')?;
                Ok(w)
            }
            Some('[') => {
                self.pos += 1;
                let u = self.parse_word(depth + 1)?;
                self.expect(',')?;
                let v = self.parse_word(depth + 1)?;
                self.expect(']')?;
                Word::commutator(&u, &v)
            }
            other => Err(WordError::Syntax {
                position: self.pos,
                message: match other {
                    Some(c) => format!("unexpected character {c:?}"),
                    None => "unexpected end of input".into(),
                },
            }),
        }
    }

    /// `index` is 1-based as written in the source text.
    fn generator_word(&self, index: usize, position: usize) -> Result<Word, WordError> {
        if index == 0 || index > self.n {
            return Err(WordError::GeneratorOutOfRange { position, index, max: self.n });
        }
        Ok(Word::generator(self.n, index - 1))
    }

    fn expect(&mut self, c: char) -> Result<(), WordError> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(WordError::Syntax { position: self.pos, message: format!("expected {c:?}") })
        }
    }

    fn parse_integer(&mut self) -> Result<i64, WordError> {
        self.skip_ws();
        let neg = if self.chars.get(self.pos) == Some(&'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        let v = self.parse_unsigned()? as i64;
        Ok(if neg { -v } else { v })
    }

    fn parse_unsigned(&mut self) -> Result<usize, WordError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(WordError::Syntax { position: start, message: "expected digits".into() });
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        text.parse().map_err(|_| WordError::Syntax {
            position: start,
            message: format!("number too large: {text}"),
        })
    }
}

// ---- Two-letter normal form ----

/// Record of the reversible rewrites applied while normalizing a two-letter
/// word. Surjectivity verdicts are invariant under every variant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Transform {
    /// Replace `w` by `c⁻¹ w c` (a cyclic shift of the letter sequence).
    CyclicShift { conjugator: Word },
    /// Exchange the two generators.
    SwapGenerators,
    /// Replace `w` by `w⁻¹`.
    InvertWord,
    /// Replace a generator by its inverse throughout.
    InvertGenerator { gen: usize },
}

impl Transform {
    pub fn apply(&self, w: &Word) -> Word {
        match self {
            Transform::CyclicShift { conjugator } => conjugator
                .inverse()
                .concat(w)
                .and_then(|t| t.concat(conjugator))
                .expect("same generator count"),
            Transform::SwapGenerators => swap_generators(w),
            Transform::InvertWord => w.inverse(),
            Transform::InvertGenerator { gen } => invert_generator(w, *gen),
        }
    }

    pub fn undo(&self, w: &Word) -> Word {
        match self {
            Transform::CyclicShift { conjugator } => conjugator
                .concat(w)
                .and_then(|t| t.concat(&conjugator.inverse()))
                .expect("same generator count"),
            _ => self.apply(w),
        }
    }
}

/// Exchange generators x and y of a two-letter word.
pub fn swap_generators(w: &Word) -> Word {
    assert_eq!(w.num_generators(), 2);
    Word::from_syllables(2, w.syllables().iter().map(|s| (1 - s.gen, s.exp)))
}

/// Replace `gen` by its inverse throughout.
pub fn invert_generator(w: &Word, gen: usize) -> Word {
    Word::from_syllables(
        w.num_generators(),
        w.syllables()
            .iter()
            .map(|s| (s.gen, if s.gen == gen { -s.exp } else { s.exp })),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoLetterError {
    /// The word is a pure power of a single generator (handled elsewhere by
    /// the power rule).
    PurePower { gen: usize, exp: i64 },
    Identity,
    NotTwoGenerators(usize),
}

impl fmt::Display for TwoLetterError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TwoLetterError::PurePower { gen, exp } => {
                write!(f, "word is the pure power g{}^{}", gen + 1, exp)
            }
            TwoLetterError::Identity => write!(f, "identity word"),
            TwoLetterError::NotTwoGenerators(n) => {
                write!(f, "two-letter form needs 2 generators, word has {n}")
            }
        }
    }
}

impl std::error::Error for TwoLetterError {}

/// The alternating form `x^{a_1} y^{b_1} … x^{a_k} y^{b_k}` of a two-letter
/// word, together with the transforms that led to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoLetterForm {
    pub a: Vec<i64>,
    pub b: Vec<i64>,
    pub transforms: Vec<Transform>,
}

impl TwoLetterForm {
    pub fn k(&self) -> usize {
        self.a.len()
    }

    pub fn a_sum(&self) -> i64 {
        self.a.iter().sum()
    }

    pub fn b_sum(&self) -> i64 {
        self.b.iter().sum()
    }

    /// The word `x^{a_1} y^{b_1} … x^{a_k} y^{b_k}` itself.
    pub fn word(&self) -> Word {
        let mut raw = Vec::with_capacity(2 * self.a.len());
        for i in 0..self.a.len() {
            raw.push((0usize, self.a[i]));
            raw.push((1usize, self.b[i]));
        }
        Word::from_syllables(2, raw)
    }

    /// Undo the recorded transforms, recovering the original reduced word.
    pub fn original_word(&self) -> Word {
        let mut w = self.word();
        for t in self.transforms.iter().rev() {
            w = t.undo(&w);
        }
        w
    }
}

/// Bring a two-letter word into alternating form by cyclic shifts, recording
/// the conjugator so the normalization is reversible.
pub fn normalize_two_letter(w: &Word) -> Result<TwoLetterForm, TwoLetterError> {
    if w.num_generators() != 2 {
        return Err(TwoLetterError::NotTwoGenerators(w.num_generators()));
    }
    if w.is_identity() {
        return Err(TwoLetterError::Identity);
    }
    let (mut conj, mut core) = w.cyclic_decomposition();
    if core.syllable_count() == 1 {
        let s = core.syllables()[0];
        return Err(TwoLetterError::PurePower { gen: s.gen, exp: s.exp });
    }
    // A reduced two-letter word alternates generators automatically. Rotate
    // so the cyclic word starts with an x-block and ends with a y-block.
    loop {
        let syls = core.syllables();
        let first = syls[0];
        let last = *syls.last().unwrap();
        if first.gen == last.gen || first.gen != 0 {
            // Rotate the first syllable to the end (conjugate by it).
            let block = Word::from_syllables(2, [(first.gen, first.exp)]);
            core = block
                .inverse()
                .concat(&core)
                .and_then(|t| t.concat(&block))
                .expect("two generators");
            conj = conj.concat(&block).expect("two generators");
        } else {
            break;
        }
    }
    let syls = core.syllables();
    debug_assert!(syls.len() % 2 == 0);
    let mut a = Vec::new();
    let mut b = Vec::new();
    for pair in syls.chunks(2) {
        debug_assert_eq!(pair[0].gen, 0);
        debug_assert_eq!(pair[1].gen, 1);
        a.push(pair[0].exp);
        b.push(pair[1].exp);
    }
    let transforms = if conj.is_identity() {
        Vec::new()
    } else {
        vec![Transform::CyclicShift { conjugator: conj }]
    };
    Ok(TwoLetterForm { a, b, transforms })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::ring::{rat_int, Rational};

    fn w(text: &str) -> Word {
        Word::parse(text, 2).unwrap()
    }

    #[test]
    fn parse_examples() {
        // "[x,y]" expands to x y x^-1 y^-1
        let c = w("[x,y]");
        assert_eq!(c.to_string(), "x y x^-1 y^-1");
        // free reduction: "x y y^-1 x" = x^2
        assert_eq!(w("x y y^-1 x").to_string(), "x^2");
        // identity
        assert!(w("1").is_identity());
        assert!(w("x x^-1").is_identity());
        // nested word: 26 syllables after reduction
        let v = w("[[x,[x,y]],[y,[x,y]]]");
        assert_eq!(v.syllable_count(), 26);
        assert_eq!(v.letter_len(), 28);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            Word::parse("x )", 2),
            Err(WordError::Syntax { .. })
        ));
        assert!(matches!(
            Word::parse("g3", 2),
            Err(WordError::GeneratorOutOfRange { index: 3, .. })
        ));
        assert!(matches!(
            Word::parse("g0", 2),
            Err(WordError::GeneratorOutOfRange { index: 0, .. })
        ));
        assert!(Word::parse("y", 1).is_err());
    }

    #[test]
    fn parse_format_roundtrip() {
        for text in ["x^2 y^3 x", "[x,y]", "x^-5", "g2 x^2 g1^-1", "(x y)^3", "1"] {
            let a = w(text);
            let b = w(&a.to_string());
            assert_eq!(a, b, "round trip failed for {text}");
        }
    }

    #[test]
    fn algebra_examples() {
        assert_eq!(w("x y").inverse().to_string(), "y^-1 x^-1");
        assert_eq!(Word::commutator(&Word::x(), &Word::y()).unwrap(), w("[x,y]"));
        assert!(w("x y").power(0).is_identity());
        // substitution: w = [y x y^-1, x^-1], x -> w, y -> y gives v2 of the
        // iterated sequence
        let base = w("[y x y^-1, x^-1]");
        let v2 = base.substitute(&[base.clone(), Word::y()]).unwrap();
        assert!(!v2.is_identity());
        // substitution matches manual expansion
        let manual = {
            let u = Word::y()
                .concat(&base)
                .unwrap()
                .concat(&Word::y().inverse())
                .unwrap();
            Word::commutator(&u, &base.inverse()).unwrap()
        };
        assert_eq!(v2, manual);
    }

    #[test]
    fn exponent_sums_examples() {
        assert_eq!(w("[x,y]").exponent_sums(), vec![0, 0]);
        assert_eq!(w("x^2 y^3 x").exponent_sums(), vec![3, 3]);
        assert_eq!(Word::engel(3).exponent_sums(), vec![0, 0]);
        // additivity
        let u = w("x^2 y^-1");
        let v = w("y^3 x^-5");
        let uv = u.concat(&v).unwrap();
        let sums: Vec<i64> = u
            .exponent_sums()
            .iter()
            .zip(v.exponent_sums())
            .map(|(a, b)| a + b)
            .collect();
        assert_eq!(uv.exponent_sums(), sums);
    }

    #[test]
    fn engel_words() {
        assert_eq!(Word::engel(1), w("[x,y]"));
        let e2 = Word::engel(2);
        assert_eq!(e2, w("[[x,y],y]"));
        assert_eq!(e2.letter_len(), 8);
        assert_eq!(e2.to_string(), "x y x^-1 y x y^-1 x^-1 y^-1");
    }

    #[test]
    fn two_letter_form_examples() {
        let f = normalize_two_letter(&w("x^2 y^3")).unwrap();
        assert_eq!(f.a, vec![2]);
        assert_eq!(f.b, vec![3]);
        assert!(f.transforms.is_empty());

        let f = normalize_two_letter(&w("y^3 x^2")).unwrap();
        assert_eq!(f.a, vec![2]);
        assert_eq!(f.b, vec![3]);
        assert_eq!(f.transforms.len(), 1);
        assert_eq!(f.original_word(), w("y^3 x^2"));

        let f = normalize_two_letter(&w("x^-1 y x y^-1")).unwrap();
        assert_eq!(f.a, vec![-1, 1]);
        assert_eq!(f.b, vec![1, -1]);

        assert!(matches!(
            normalize_two_letter(&w("x^5")),
            Err(TwoLetterError::PurePower { gen: 0, exp: 5 })
        ));
    }

    #[test]
    fn two_letter_form_reconstructs_original() {
        let samples = ["x y x y^-1", "y^-2 x^3 y x^-1", "x y x^-1 y^-1 x y^2", "y x y x"];
        for text in samples {
            let word = w(text);
            let f = normalize_two_letter(&word).unwrap();
            assert_eq!(f.original_word(), word, "reconstruction failed for {text}");
            assert!(f.a.iter().all(|&v| v != 0));
            assert!(f.b.iter().all(|&v| v != 0));
        }
    }

    #[test]
    fn proper_power_examples() {
        let (v, k) = w("x y x y").proper_power_root().unwrap();
        assert_eq!((v.to_string().as_str(), k), ("x y", 2));

        let (v, k) = w("[x,y]").proper_power_root().unwrap();
        assert_eq!(k, 1);
        assert_eq!(v, w("[x,y]"));

        // (x y x^-1 y^-1)^3 written out flat
        let cube = w("[x,y]").power(3);
        let (v, k) = cube.proper_power_root().unwrap();
        assert_eq!(k, 3);
        assert_eq!(v, w("[x,y]"));

        // root is never a proper power
        let (v2, k2) = v.proper_power_root().unwrap();
        assert_eq!(k2, 1);
        assert_eq!(v2, v);

        // conjugated power
        let u = w("y^2 x");
        let conj = u
            .concat(&w("x y").power(4))
            .unwrap()
            .concat(&u.inverse())
            .unwrap();
        let (root, k) = conj.proper_power_root().unwrap();
        assert_eq!(k, 4);
        assert_eq!(root.power(4), conj);

        assert!(Word::identity(2).proper_power_root().is_err());
        // pure powers
        let (root, k) = w("x^-4").proper_power_root().unwrap();
        assert_eq!((root.to_string().as_str(), k), ("x^-1", 4));
    }

    #[test]
    fn evaluate_examples() {
        let unipotent =
            Mat2::new(rat_int(1), rat_int(1), rat_int(0), rat_int(1));
        let img = Word::generator(1, 0).evaluate(&[unipotent.clone()]).unwrap();
        assert_eq!(img, unipotent);

        // [x,y] at x = diag(a, a^-1), y = [[0,1],[-1,0]] is diag(a^2, a^-2)
        let a = Rational::new(3.into(), 2.into());
        let x = Mat2::diag(a.clone(), a.recip());
        let y = Mat2::new(rat_int(0), rat_int(1), rat_int(-1), rat_int(0));
        let img = w("[x,y]").evaluate(&[x, y]).unwrap();
        let aa = &a * &a;
        assert_eq!(img, Mat2::diag(aa.clone(), aa.recip()));
    }

    #[test]
    fn evaluate_rejects_non_unimodular_with_negative_exponent() {
        let m = Mat2::new(rat_int(2), rat_int(0), rat_int(0), rat_int(2));
        assert!(matches!(
            w("x^-1 y").evaluate(&[m, Mat2::identity()]),
            Err(EvalError::NotUnimodular { gen: 0 })
        ));
    }

    #[test]
    fn evaluate_is_homomorphism() {
        // evaluate(u v) = evaluate(u) evaluate(v) on random SL(2, Q) images
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let u = random_word(&mut rng, 2, 6);
            let v = random_word(&mut rng, 2, 6);
            let mats = [random_sl2(&mut rng), random_sl2(&mut rng)];
            let lhs = u.concat(&v).unwrap().evaluate(&mats).unwrap();
            let rhs = u.evaluate(&mats).unwrap().mul(&v.evaluate(&mats).unwrap());
            assert_eq!(lhs, rhs);
            let inv = u.inverse().evaluate(&mats).unwrap();
            assert!(u.evaluate(&mats).unwrap().mul(&inv).is_identity());
        }
    }

    pub(crate) fn random_word(rng: &mut impl rand::Rng, n: usize, max_letters: usize) -> Word {
        let len = rng.gen_range(1..=max_letters);
        Word::from_syllables(
            n,
            (0..len).map(|_| (rng.gen_range(0..n), if rng.gen_bool(0.5) { 1 } else { -1 })),
        )
    }

    pub(crate) fn random_sl2(rng: &mut impl rand::Rng) -> Mat2<Rational> {
        // product of elementary matrices keeps det = 1
        let mut m = Mat2::identity();
        for _ in 0..3 {
            let t = rat_int(rng.gen_range(-3..=3));
            let e = if rng.gen_bool(0.5) {
                Mat2::new(rat_int(1), t, rat_int(0), rat_int(1))
            } else {
                Mat2::new(rat_int(1), rat_int(0), t, rat_int(1))
            };
            m = m.mul(&e);
        }
        m
    }
}

//! Exact-arithmetic analysis of word maps on SL(2,ℂ) and PSL(2,ℂ).
//!
//! A word `w` in the free group on `n` generators induces an evaluation map
//! `G^n -> G` on any group `G`. This crate classifies such words against a
//! family of surjectivity criteria for `G = SL(2,K)` / `PSL(2,K)` over
//! algebraically closed fields of characteristic zero, and produces
//! machine-checkable certificates: explicit matrices, nonzero obstruction
//! polynomials, and divisibility witnesses.
//!
//! The main layers, bottom up:
//!
//! - [`ring`], [`mat2`] — a minimal commutative-ring abstraction and generic
//!   exact 2×2 matrices.
//! - [`laurent`], [`unipoly`], [`gcd`], [`gaussian`], [`roots`] — sparse
//!   multivariate Laurent polynomials over arbitrary-precision rationals,
//!   dense univariate polynomials and quotient rings, subresultant gcd and
//!   Sylvester resultants, Gaussian rationals, and a floating-point
//!   simultaneous-iteration root finder.
//! - [`word`] — free-group words: parsing, reduction, algebra, exponent
//!   statistics, two-letter normal forms, proper-power detection and generic
//!   evaluation at matrices.
//! - [`magnus`] — the Magnus-style homomorphisms into `ST(Λ_n)`, the
//!   obstruction polynomial of a word in the commutator subgroup, derived
//!   series classification, and constructive unipotent witnesses.
//! - [`triangular`] — the upper-triangular calculus for two-letter words:
//!   basic-commutator rewriting, the Φ/Ψ decompositions, the −id criterion
//!   and the curve divisibility criteria.
//! - [`fricke`] — trace polynomials P_w, Q_w via the rank-4 trace algebra,
//!   trace-map iteration, character lifting and semisimple preimages.
//! - [`big`] — the resultant-based "Big" slice criterion for almost
//!   surjectivity.
//! - [`ff`] — an exhaustive finite-field image explorer (heuristic only).
//! - [`analyze`], [`report`], [`verify`] — the verdict pipeline, JSON/text
//!   reports, and the bundled reference-computation verification suite.

pub mod analyze;
pub mod big;
pub mod ff;
pub mod fricke;
pub mod gaussian;
pub mod gcd;
pub mod laurent;
pub mod magnus;
pub mod mat2;
pub mod report;
pub mod ring;
pub mod roots;
pub mod triangular;
pub mod unipoly;
pub mod verify;
pub mod word;

pub use laurent::LaurentPoly;
pub use mat2::Mat2;
pub use ring::{Rational, Ring, Scalar};
pub use unipoly::{UniPoly, UniQuotient};
pub use word::Word;

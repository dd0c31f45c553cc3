//! Normal forms and verification harnesses for the algebra
//! `S = F[x]/(x^n) <q | xqx = x, qxq = q>` obtained by freely adjoining a
//! generalised inverse `q` to a nilpotent `x`, together with its
//! 2x2 matrix model over `F<a, b | a^(n-1) = 0>`.
//!
//! * [`word`] and [`rewrite`]: words, the rewriting rules, normal forms,
//!   the basis and confluence checks.
//! * [`confluence`]: empirical confluence of the rewriting rules.
//! * [`field`] and [`element`]: exact coefficients and ring arithmetic.
//! * [`structure`]: type I/II products, the C-set and its maximal word,
//!   the exhaustive unit-regularity search and the identity checks.
//! * [`matrix`]: the matrix algebra `T`, the map `S -> T`, and the
//!   determinant obstruction.

pub mod confluence;
pub mod element;
pub mod field;
pub mod linalg;
pub mod matrix;
pub mod par;
mod parse;
pub mod report;
pub mod rewrite;
pub mod structure;
pub mod word;

pub use element::{AlgebraElement, AlgebraError, FreeAlgElement};
pub use field::{Field, Fp, Gf2, Gf3, Rational};
pub use par::Execution;
pub use parse::{ParseError, ParseErrorKind};
pub use report::{Status, VerificationReport};
pub use rewrite::{CriticalPair, NormalForm, Presentation, ReductionOutcome, RewriteError, RewriteSystem, Rule};
pub use word::{lex_compare, Block, Letter, Word};

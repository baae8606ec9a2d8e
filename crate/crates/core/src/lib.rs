//! Exact invariant theory of binary forms.
//!
//! The crate works with polynomials in the coefficients `a0, ..., an` of a
//! binary form of order `n`:
//!
//! - [`algebra`]: sparse rational polynomials with degree/weight analysis.
//! - [`annihilators`]: the raising and lowering operators `D` and `Delta`
//!   and their commutator identities.
//! - [`transforms`]: GL2 substitutions acting on coefficient vectors, and
//!   randomized exact invariance checks.
//! - [`discovery`]: all invariants of a given degree, as the kernel of `D`
//!   on the isobaric monomials of the right weight.
//! - [`expr`]: the text syntax for coefficient polynomials.
//! - [`cli`]: the `binform` command-line front end.

pub mod algebra;
pub mod annihilators;
pub mod cli;
pub mod discovery;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod transforms;

pub use algebra::{CoeffMonomial, CoeffPolynomial, GradedAnalysis};
pub use annihilators::OperatorKind;
pub use error::{Error, Result};

/// Exact scalar used throughout: an arbitrary-precision fraction in lowest terms.
pub type Rational = num_rational::BigRational;

/// Shorthand for an integral [`Rational`].
pub fn rat(v: i64) -> Rational {
    Rational::from_integer(v.into())
}

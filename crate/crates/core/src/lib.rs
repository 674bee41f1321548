//! Exact tools for ideal Prouhet-Tarry-Escott solutions over the Gaussian integers.
//!
//! Two multisets `X`, `Y` of size `n` form a solution of degree `k` when their
//! power sums agree for exponents `1..=k`; the solution is *ideal* when `k = n - 1`.
//! For an ideal solution `prod(z - x) - prod(z - y)` is a constant `C`, and the
//! gcd `C_n` of all such constants drives both the divisibility bounds in
//! [`bounds`] and the congruence sieve in [`search`].
//!
//! Modules:
//! - [`gint`]: `Z[i]` and `Q(i)` arithmetic, factorization, divisors, square roots.
//! - [`symfunc`]: polynomials over `Q(i)`, Newton's identities, interpolation, roots.
//! - [`pte`]: the solution type, verification, constants, affine families, equivalence.
//! - [`bounds`]: factored lower bounds for `C_n` and gcd upper bounds.
//! - [`search`]: interpolation-based search with sieving, chunking and checkpoints.
//! - [`format`] and [`corpus`]: text formats and the bundled published data.

pub mod bounds;
pub mod corpus;
pub mod format;
pub mod gint;
pub mod pte;
pub mod search;
pub mod symfunc;

pub use gint::{GFactorization, GaussianInt, GaussianRational, Unit};
pub use pte::{AffineMap, PteSolution};
pub use symfunc::Polynomial;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0}: argument must be nonzero")]
    ZeroArgument(&'static str),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("line {line}: {msg}")]
    ParseLine { line: usize, msg: String },
    #[error("{0} is not a Gaussian prime")]
    NotPrime(String),
    #[error("invalid solution: {0}")]
    InvalidSolution(String),
    #[error("solution is not ideal (degree {degree}, size {n})")]
    NotIdeal { degree: usize, n: usize },
    #[error("value is not a Gaussian integer: {0}")]
    NotIntegral(String),
    #[error("duplicate interpolation abscissa {0}")]
    DuplicateAbscissa(String),
    #[error("polynomial must be nonzero, monic and integral")]
    BadPolynomial,
    #[error("constant term norm exceeds the factorization budget of {0} bits")]
    FactorBudget(u64),
    #[error("invalid discriminant {0}")]
    InvalidDiscriminant(i64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

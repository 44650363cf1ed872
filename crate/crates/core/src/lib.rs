//! Exact computation of the derangement polynomial families, their Hankel
//! determinants, and the Erlang-moment representation of the generalized
//! polynomials.
//!
//! Every sequence is produced by more than one independent route (explicit
//! sum, EGF expansion, recurrence) and every determinant by more than one
//! algorithm, so each closed-form identity can be checked exactly.

pub mod exact;
pub mod hankel;
pub mod oracle;
pub mod poly;
pub mod report;
pub mod series;
pub mod stochastic;
pub mod suite;

pub use exact::{Integer, Rational};
pub use hankel::{HankelReport, SquareMatrix};
pub use poly::Polynomial;
pub use report::{Cell, Summary, Verdict};
pub use series::{FamilySpec, TruncatedSeries};
pub use stochastic::{GammaParams, MomentEstimate};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("series orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParams(String),
    #[error("polynomial degree {degree} exceeds reflection order {n}")]
    DegreeTooHigh { degree: usize, n: usize },
    #[error("Hankel matrix of size {size} needs {needed} terms, got {got}")]
    InsufficientTerms { size: usize, needed: usize, got: usize },
    #[error("size {size} exceeds the limit {limit}")]
    SizeTooLarge { size: usize, limit: usize },
    #[error("no closed-form Hankel determinant is known for {0}")]
    NoClosedForm(String),
    #[error("z = 1 is a pole")]
    PoleAtOne,
    #[error("argument {0} is outside the domain")]
    OutOfDomain(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse {0:?} as a rational")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

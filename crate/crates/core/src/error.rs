use thiserror::Error;

use crate::report::PropertyReport;

#[derive(Debug, Error)]
pub enum Error {
    #[error("semiring `{0}` has no multiplicative unit")]
    NonUnital(String),
    #[error("intrinsic order of `{0}` needs an analytic rule: carrier is infinite")]
    NeedsAnalyticOrder(String),
    #[error("exhaustive strategy requires a finite carrier, `{0}` is infinite")]
    NeedsFiniteCarrier(String),
    #[error("`{property}` is undecidable on infinite semiring `{semiring}` without a declared verdict")]
    Undecidable { property: String, semiring: String },
    #[error("unknown semiring `{0}`")]
    UnknownSemiring(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid literal `{literal}` for semiring `{semiring}`")]
    Literal { literal: String, semiring: String },
    #[error("axiom violated: {0}")]
    AxiomViolation(String),
    #[error("semiring `{semiring}` is not symmetrizable: {reason}")]
    NotSymmetrizable { semiring: String, reason: String },
    #[error("arity mismatch: expected {expected} values, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("exponent vector {0:?} is not sorted non-increasingly")]
    UnsortedExponents(Vec<u32>),
    #[error("index {index} out of range 1..={n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("permutation enumeration limited to n <= {limit}, got n = {n}")]
    PermutationLimit { n: usize, limit: usize },
    #[error("polynomial is not symmetric: {0}")]
    NonSymmetric(String),
    #[error("wrong regime: {0}")]
    WrongRegime(String),
    #[error("decomposition failed verification: {}", .0.line("VERIFY"))]
    VerificationFailed(Box<PropertyReport>),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
    #[error("io error on `{path}`: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

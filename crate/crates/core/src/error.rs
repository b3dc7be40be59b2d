//! Error types shared by the series kernel, the path oracle, and the engines.

use thiserror::Error;

/// Errors raised by series arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    /// The operation needs a constant term equal to the marker-free
    /// integer 1 or -1 (reciprocal, square root).
    #[error("constant term is not the unit 1 or -1")]
    NonUnitConstantTerm,

    /// An exact division did not clear. Carries the x-degree of the first
    /// offending coefficient.
    #[error("coefficient of x^{order} is not integral")]
    NonIntegralResult { order: usize },

    /// Diagonal substitution hit a monomial x^n y^p with n < (r+2)p.
    #[error("monomial x^{n}*y^{p} maps to a negative x-exponent under the diagonal substitution")]
    NegativeExponent { n: usize, p: u32 },
}

/// Errors raised by the brute-force path oracle.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    /// Requested length is above the enumeration cap.
    #[error("path length {n} exceeds the enumeration cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

/// Errors raised by the generating-function engines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Series(#[from] SeriesError),

    /// A division that the underlying recursion guarantees to be exact
    /// left a remainder. Firing would falsify the recursion itself.
    #[error("integrality violation: {context}")]
    IntegralityViolation { context: String },

    /// The square-root branch mechanics failed: the numerator's x^0/x^1
    /// coefficients did not vanish, or halving hit an odd coefficient.
    #[error("square-root branch assertion failed: {context}")]
    BranchAssertionFailed { context: String },

    /// A diagonal numerator came out with the wrong degree.
    #[error("numerator of h_{k} has degree {got}, expected {want}")]
    DegreeMismatch { k: usize, got: usize, want: usize },

    /// A closed form disagrees with its authoritative continued-fraction
    /// evaluation.
    #[error("closed form disagrees with the continued fraction at x^{order}: {detail}")]
    ClosedFormMismatch { order: usize, detail: String },
}

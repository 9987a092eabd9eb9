//! Error type shared across the crate.

/// Everything that can go wrong while building moments, recurrence
/// coefficients, or quadrature rules.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    /// An argument was outside the documented domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value left the representable range of `f64`; `index` is the first
    /// failing position in the sequence being generated.
    #[error("overflow at index {index}: {what}")]
    Overflow { what: &'static str, index: usize },

    /// A moment-based algorithm lost positive definiteness.
    #[error("{algorithm} breakdown at index {index}: {detail}")]
    Breakdown {
        algorithm: &'static str,
        index: usize,
        detail: String,
    },

    /// The Cholesky factorization of the preconditioned system met a
    /// non-positive pivot; `size` is the leading block that failed.
    #[error("Cholesky factorization failed at leading block size {size}")]
    CholeskyFailure { size: usize },

    /// The eigenvalue iteration did not converge.
    #[error("eigenvalue {index} did not converge after {iterations} iterations")]
    EigenFailure { index: usize, iterations: usize },

    /// A series expansion did not reach its stopping criterion.
    #[error("{what}: series did not converge within {terms} terms")]
    SeriesDivergence { what: &'static str, terms: usize },

    /// The adaptive reference integrator exhausted its panel budget.
    #[error(
        "oracle did not converge: achieved error estimate {achieved:.3e} \
         (requested {requested:.3e}, {panels} panels)"
    )]
    OracleConvergence {
        achieved: f64,
        requested: f64,
        panels: usize,
    },

    /// An integrand produced NaN or infinity at a quadrature node.
    #[error("integrand returned a non-finite value at node {node}")]
    NonFiniteIntegrand { node: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

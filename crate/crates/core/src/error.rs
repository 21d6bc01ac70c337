//! Error type shared by the whole crate.

use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Failure modes of the analytic and simulation routines.
///
/// Diagnostic payloads are carried as `f64` regardless of the scalar type the
/// computation ran at.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument is outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A scenario or model description is invalid.
    #[error("configuration error: {0}")]
    Config(String),

    /// The fading law is not in the Gumbel (Type I) domain of attraction.
    #[error("unsupported extreme-value domain: {0}")]
    UnsupportedDomain(String),

    /// A closed-form expression degenerates for these parameters.
    #[error("degenerate regime: {0}")]
    Degenerate(String),

    /// An iterative numeric routine failed to reach its target accuracy.
    #[error("numerical failure: {0}")]
    Numeric(String),

    /// A function evaluation produced a non-finite value.
    #[error("non-finite evaluation of {context} at {abscissa}")]
    NonFinite {
        context: &'static str,
        abscissa: f64,
    },

    /// The high-SNR ladder did not settle within tolerance.
    #[error("high-snr limit did not converge: last two iterates {previous} and {last}")]
    LimitFailure { previous: f64, last: f64 },

    /// Every grid point mapped to zero spectral efficiency.
    #[error("curve is empty: no grid point has positive spectral efficiency")]
    EmptyCurve,
}

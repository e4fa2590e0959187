use thiserror::Error;

/// Errors produced by the algebra engine.
///
/// Everything here is a *caller* error or a structural defect in the input
/// data; internal invariant violations panic instead (they indicate bugs,
/// not bad inputs).
#[derive(Debug, Error)]
pub enum Error {
    /// Matrix shapes do not line up for the requested operation.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// Two objects live over different base rings.
    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    /// A purported chain complex fails d . d = 0 at the named degree.
    #[error("differential does not square to zero entering degree {degree}")]
    BrokenDifferential { degree: i64 },

    /// Input data is rejected for a stated reason (bad modulus, malformed
    /// presentation, out-of-range request, ...).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The requested construction needs an injective cogenerator, which the
    /// ambient ring does not provide at this scale.
    #[error("no injective cogenerator available over {0}")]
    NoInjectiveCogenerator(String),

    /// An internal cross-check between two independent computations failed.
    /// Surfaced as an error (not a panic) so verification drivers can report
    /// it as a finding.
    #[error("cross-check failed: {0}")]
    CrossCheck(String),

    /// Malformed textual/JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

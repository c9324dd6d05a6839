use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A Hilbert-space dimension was zero or otherwise unusable.
    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    /// Matrix shapes or subsystem dimensions disagree.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A matrix failed the density-matrix invariants.
    /// Carries the most negative eigenvalue when positivity is the problem.
    #[error("not a quantum state: {reason} (min eigenvalue {min_eigenvalue:.3e})")]
    NotAState { reason: String, min_eigenvalue: f64 },

    /// A quantity that must be (nearly) real or nonnegative came out wrong by
    /// more than the documented tolerance.
    #[error("numerical inconsistency: {0}")]
    NumericalInconsistency(String),

    /// Probability vector does not sum to one or has negative entries.
    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),

    /// A parameter was outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A measurement failed the projector-set invariants.
    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    /// The channel superoperator is too close to defective to diagonalize.
    #[error("unsupported map: superoperator not reliably diagonalizable ({diagnostic})")]
    UnsupportedMap { diagnostic: String },

    /// Every eigenvalue has unit modulus: unitary dynamics, no decoherence.
    #[error("no decoherence: all eigenvalues have unit modulus (unitary evolution)")]
    NoDecoherence,

    /// The eigenvalue-1 subspace of the channel has dimension > 1.
    #[error("non-unique steady state: eigenvalue 1 has multiplicity {multiplicity}")]
    NonUniqueSteadyState { multiplicity: usize },

    /// Configuration failed validation before a run started.
    #[error("invalid config: {0}")]
    InvalidConfig(String),

    /// Underlying linear-algebra routine failed.
    #[error("linear algebra error: {0}")]
    Linalg(#[from] ndarray_linalg::error::LinalgError),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the CLI: I/O problems exit 2, everything else 1.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Io(_) => 2,
            Error::Json(_) => 1,
            _ => 1,
        }
    }
}

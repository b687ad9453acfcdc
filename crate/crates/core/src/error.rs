//! Shared error type for the whole library.

use thiserror::Error;

/// Errors produced by environment construction, model fitting, planning,
/// dispatch and the scenario harness.
#[derive(Debug, Error)]
pub enum Error {
    /// An input specification (environment spec, scenario file, planner
    /// config) violates its declared invariants.
    #[error("invalid specification: {0}")]
    Spec(String),

    /// A function argument is outside its documented domain.
    #[error("invalid argument: {0}")]
    Argument(String),

    /// A structured text document could not be parsed or validated.
    #[error("parse error: {0}")]
    Parse(String),

    /// The regression design matrix is rank deficient or too
    /// ill-conditioned to fit.
    #[error("degenerate design matrix: {0}")]
    DegenerateDesign(String),

    /// A model evaluation produced a non-finite value.
    #[error("model error: {0}")]
    Model(String),

    /// An enumeration or iteration budget was exceeded.
    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code for the CLI: 2 validation, 3 runtime/budget, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Spec(_) | Error::Argument(_) | Error::Parse(_) | Error::DegenerateDesign(_) => 2,
            Error::Model(_) | Error::Budget(_) => 3,
            Error::Io(_) => 4,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

use thiserror::Error;

/// Errors produced by the solvers, the oracle layer and the sweep front-end.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument lies outside the domain of a mathematical operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A model value violates one of its invariants. `path` names the field.
    #[error("invalid {path}: {message}")]
    Validation { path: String, message: String },

    #[error("parse error: {0}")]
    Parse(String),

    /// A bracketing search was given endpoints that do not bracket a change.
    #[error("bracket error: {0}")]
    Bracket(String),

    /// The operation only exists for a particular demand family or size.
    #[error("unsupported model: {0}")]
    Unsupported(String),

    #[error("complexity error: {0}")]
    Complexity(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn validation(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Validation {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit code used by the command-line front-end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain(_)
            | Error::Validation { .. }
            | Error::Parse(_)
            | Error::Unsupported(_)
            | Error::Complexity(_) => 1,
            Error::Bracket(_) => 2,
            Error::Io(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

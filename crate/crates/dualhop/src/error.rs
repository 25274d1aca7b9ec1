//! Error type shared by the harness and the command line.

use std::io;

use thiserror::Error;

/// Errors surfaced by the harness and the command line, grouped by exit code.
#[derive(Debug, Error)]
pub enum AppError {
    /// Invalid or unparsable configuration (exit code 1).
    #[error("config error: {0}")]
    Config(String),
    /// File system failure while reading or writing (exit code 1).
    #[error("i/o error on {path}: {source}")]
    Io {
        /// Offending path.
        path: String,
        /// Underlying error.
        source: io::Error,
    },
    /// Argument outside the domain of a harness function (exit code 1).
    #[error("domain error: {0}")]
    Domain(String),
    /// Numeric diagnostic from the analytic engine (exit code 2).
    #[error("{context}{source}")]
    Numeric {
        /// Parameter context, possibly empty.
        context: String,
        /// Engine error.
        source: dualhop_core::Error,
    },
    /// A validation or diversity check failed (exit code 3).
    #[error("validation failed: {0}")]
    Validation(String),
}

/// Shorthand for results in this crate.
pub type AppResult<T> = Result<T, AppError>;

impl From<dualhop_core::Error> for AppError {
    fn from(source: dualhop_core::Error) -> Self {
        AppError::Numeric { context: String::new(), source }
    }
}

impl AppError {
    /// Process exit code: 1 config, 2 numeric, 3 validation.
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Config(_) | AppError::Io { .. } | AppError::Domain(_) => 1,
            AppError::Numeric { .. } => 2,
            AppError::Validation(_) => 3,
        }
    }

    /// Maps a parameter-validation failure to a config error naming the bundle.
    pub fn param(bundle: &'static str) -> impl Fn(dualhop_core::Error) -> AppError {
        move |e| AppError::Config(format!("{bundle}: {e}"))
    }

    /// Adds parameter context to a numeric diagnostic.
    pub fn context(ctx: impl Into<String>) -> impl FnOnce(dualhop_core::Error) -> AppError {
        let ctx = ctx.into();
        move |source| AppError::Numeric { context: format!("{ctx}: "), source }
    }

    pub(crate) fn io(path: &std::path::Path) -> impl FnOnce(io::Error) -> AppError + '_ {
        move |source| AppError::Io { path: path.display().to_string(), source }
    }
}

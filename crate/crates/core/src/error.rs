use core::fmt;

/// Errors raised by the analytic engine and the samplers.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument is outside the domain of the function.
    Domain(&'static str),
    /// An iterative method did not reach its tolerance.
    Convergence(&'static str),
    /// A result is numerically unreliable; carries the measured indicator.
    Numeric {
        /// What went wrong.
        what: &'static str,
        /// Diagnostic value (for example a cancellation ratio).
        value: f64,
    },
}

/// Shorthand for results in this crate.
pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain(msg) => write!(f, "domain error: {msg}"),
            Error::Convergence(msg) => write!(f, "no convergence: {msg}"),
            Error::Numeric { what, value } => write!(f, "numeric diagnostic: {what} ({value:e})"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn ensure(cond: bool, msg: &'static str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg))
    }
}

//! Monte-Carlo validation, configuration files, output writers and the
//! command-line interface for [`dualhop_core`].

#![warn(missing_docs)]

pub mod analytic;
pub mod cli;
pub mod config;
pub mod error;
pub mod output;
pub mod sim;
pub mod validate;

pub use error::{AppError, AppResult};

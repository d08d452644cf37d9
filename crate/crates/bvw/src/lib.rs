//! Model language, command driver and report rendering for the `bvw` tool.

pub mod commands;
pub mod dsl;
pub mod error;
pub mod report;
pub mod setup;

use bv_core::graded::Truncation;

pub use commands::{run, Cli, Command, Format};
pub use error::CliError;
pub use report::Report;
pub use setup::{load, Loaded, Setup};

/// Environment variable overriding the default `"Kh,Kl"` truncation.
pub const TRUNCATION_VAR: &str = "BVW_TRUNCATION";

/// Exit status for a completed command whose checked identity fails.
pub const EXIT_CHECK_FAILED: i32 = 1;
/// Exit status for every error.
pub const EXIT_ERROR: i32 = 2;

/// Truncation from an optional `"Kh,Kl"` override.
pub fn truncation(var: Option<&str>) -> Result<Truncation, CliError> {
    match var {
        Some(s) => Ok(s.parse()?),
        None => Ok(Truncation::default()),
    }
}

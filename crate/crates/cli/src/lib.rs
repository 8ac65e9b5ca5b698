//! Command implementations behind the `laguerre-dd` binary. Each command
//! writes its human-readable output to the given writer so tests can
//! capture it.

pub mod commands;
pub mod selfcheck;

pub use commands::{CliError, Outcome, RunConfig};

//! File formats and command implementations behind the `lahnet` binary.

pub mod commands;
pub mod error;
pub mod format;

pub use commands::{run, Cli, Command, Output};
pub use error::CliError;
pub use format::Format;

//! Library half of the `nilcx` command-line tool: the `.alg` format and the
//! report builders behind each subcommand.

pub mod alg;
pub mod commands;
mod error;
mod format;

pub use error::{CliError, ExitCode};

//! Command-line front end for `holonomica`: text and JSON formats plus
//! subcommand dispatch.

pub mod commands;
pub mod error;
pub mod json;
pub mod text;

pub use commands::{dispatch, Cli, Outcome};
pub use error::{CliError, Exit};

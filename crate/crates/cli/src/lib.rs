//! File formats and subcommands of the `behavnet` command-line tool.

pub mod commands;
pub mod error;
pub mod model;
pub mod trajectory;

pub use error::{CliError, Result};
pub use model::{parse_model, Model};

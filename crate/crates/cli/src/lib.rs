//! Command-line front-end for the recall experiments.

pub mod args;
pub mod commands;
pub mod error;
pub mod output;

pub use args::{parse_args, CliConfig, CommandKind, OutputFormat, THREADS_ENV};
pub use error::CliError;
pub use output::{csv_string, emit_csv, CSV_HEADER};

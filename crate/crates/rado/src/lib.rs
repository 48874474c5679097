//! File formats, threaded search drivers and the command-line front end for
//! `rado-core`.

pub mod cli;
pub mod error;
pub mod format;
pub mod runner;

pub use error::{CliError, CliResult};

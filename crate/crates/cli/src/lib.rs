//! File format, command dispatch and report rendering for the `compat-lie`
//! binary.

pub mod commands;
pub mod document;
pub mod report;

pub use commands::{run, run_property, CliError, Command, Mode};
pub use document::{parse, render, Document, ParseError};
pub use report::{Format, Report};

//! Command-line companion to `axialis-core`: JSON and LaTeX serialization,
//! verification subcommands, and the acceptance battery.
//!
//! The library surface exists so integration tests can drive the binary
//! in-process: [`run_captured`] returns the exit code and the report JSON
//! that `axialis` would print.

pub mod battery;
pub mod commands;
pub mod io;
pub mod report;

pub use commands::{run, run_captured};

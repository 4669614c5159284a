//! Command-line front end for the `qgenocchi` library: exact tables,
//! point evaluation in three independent modes, zeta values and the
//! verification suite, rendered as CSV, JSON or aligned text.

pub mod args;
pub mod commands;
pub mod parse;
pub mod render;

pub use commands::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};

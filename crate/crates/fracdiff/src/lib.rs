//! Command-line front end for `fracdiff-core`.
//!
//! The binary evaluates kernels on grids, solves the Cauchy problem for
//! sampled data, compares fractional moments and runs the validation
//! suites. Everything it needs beyond the numerics (flag parsing, config
//! files, CSV and JSON) lives here so the core stays `no_std`.

pub mod commands;
pub mod error;
pub mod grid;
pub mod io;
pub mod options;
pub mod report;
pub mod suites;

pub use commands::run;
pub use error::{CliError, CliResult, Failure};
pub use options::Cli;

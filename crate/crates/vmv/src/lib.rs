//! Command-line front end for `vmv-core`: argument parsing, `vmv.toml`
//! configuration, threaded counting, JSON/CSV artifacts and the per-run
//! `run.manifest.json`.
//!
//! Exit codes: 0 on success, 1 on invalid input (or any other failure),
//! 2 when a budget is exceeded.

pub mod args;
mod commands;
pub mod config;
pub mod error;
pub mod manifest;
pub mod parallel;
pub mod polyparse;
mod run;

pub use error::{CliError, EXIT_BUDGET, EXIT_INVALID, EXIT_OK};
pub use run::{run, run_with};

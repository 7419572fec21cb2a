//! File formats, bundled data, verification suites and the command layer on
//! top of `theta-kernel-core`.
//!
//! Everything written by this crate is exact and deterministic: rationals are
//! `"num/den"` strings, coefficients appear in canonical index order, and
//! suites aggregate their claims in a fixed order whatever the thread count.

pub mod commands;
pub mod data;
pub mod error;
pub mod format;
pub mod report;
pub mod suites;

pub use error::{CliError, Result};
pub use report::{Outcome, Report, SuiteReport};
pub use suites::{run_suite, RunConfig, Suite};

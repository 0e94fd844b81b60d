//! Verification suites, report formats and the `kdiv` command line.
//!
//! Each suite enumerates path families exhaustively with [`kdiv_core`] and
//! checks one claim exactly, producing a [`VerificationReport`]. Families are
//! split into rank ranges that may run in parallel; partial results merge in
//! rank order, so serial and parallel runs give identical reports.

pub mod bfile;
pub mod grid;
pub mod report;
pub mod suites;

pub use grid::{GridSpec, Span};
pub use report::{Format, VerificationReport, Witness};
pub use suites::{run_suite, RunConfig, Suite, SuiteError};

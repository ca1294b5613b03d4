//! Batch verification of the positivity conjectures over natural unit
//! interval orders, with a content-addressed result cache and JSON-lines
//! reports.

pub mod cache;
pub mod conjecture;
pub mod report;
pub mod runner;
pub mod table;

use std::path::PathBuf;

pub use conjecture::{check, Conjecture, Outcome, PosetContext, Status};
pub use report::{emit_report, Report, Summary};
pub use runner::{run_verification, RunConfig, RunOutput, RunStats, DEFAULT_N_CAP, EXTENDED_N_CAP};
pub use table::OvercountTable;

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown conjecture id {0:?}")]
    UnknownConjecture(String),
    #[error("n = {n} exceeds the cap {cap}; pass the extended-size flag to go up to {extended}")]
    SizeCap { n: usize, cap: usize, extended: usize },
    #[error("malformed discrepancy table: {0}")]
    Table(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("could not build the worker pool: {0}")]
    Pool(String),
    #[error(transparent)]
    Core(#[from] csflab_core::Error),
}

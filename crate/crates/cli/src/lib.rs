//! Verification harness for the `grassvol` library: a registry of named
//! checks, a parallel runner and JSON/CSV reports.

pub mod checks;
pub mod config;
pub mod error;
pub mod report;
pub mod suite;

pub use checks::{check_ids, registry, Check, Outcome};
pub use config::Config;
pub use error::{CliError, CliResult};
pub use report::{
    all_pass, emit_report, parse_json_report, render_report, ReportFormat, Status,
    VerificationRecord, CSV_HEADER,
};
pub use suite::{run_all, run_checks, run_suite};

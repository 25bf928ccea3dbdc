//! Verification records and their JSON/CSV renderings.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub check_id: String,
    /// Name of the identity the check exercises, or `plumbing`.
    pub paper_anchor: String,
    pub status: Status,
    pub max_error: f64,
    pub runtime_ms: f64,
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

pub const CSV_HEADER: &str = "check_id,paper_anchor,status,max_error,runtime_ms,seed";

/// Renders records; identical input gives identical bytes.
pub fn render_report(records: &[VerificationRecord], format: ReportFormat) -> CliResult<String> {
    if records.is_empty() {
        return Err(CliError::EmptySelection);
    }
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(records)
                .map_err(|e| CliError::Serialise(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
        ReportFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in records {
                w.serialize(r).map_err(|e| CliError::Serialise(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Serialise(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Serialise(e.to_string()))
        }
    }
}

/// Writes the report to `path`, or to stdout when `path` is `None`.
pub fn emit_report(
    records: &[VerificationRecord],
    format: ReportFormat,
    path: Option<&Path>,
) -> CliResult<()> {
    let text = render_report(records, format)?;
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.display().to_string(),
            source,
        }),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|source| CliError::Io {
                path: "<stdout>".into(),
                source,
            }),
    }
}

pub fn parse_json_report(text: &str) -> CliResult<Vec<VerificationRecord>> {
    serde_json::from_str(text).map_err(|e| CliError::Serialise(e.to_string()))
}

pub fn all_pass(records: &[VerificationRecord]) -> bool {
    records.iter().all(|r| r.status == Status::Pass)
}

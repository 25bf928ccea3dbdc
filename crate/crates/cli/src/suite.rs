//! Selecting and running checks.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::checks::{registry, Check};
use crate::config::Config;
use crate::error::{CliError, CliResult};
use crate::report::VerificationRecord;

/// Runs `checks` on up to `config.workers` threads; records come back sorted by id.
pub fn run_checks(checks: &[Check], config: &Config) -> CliResult<Vec<VerificationRecord>> {
    if checks.is_empty() {
        return Err(CliError::EmptySelection);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| CliError::Config(format!("worker pool: {e}")))?;
    let mut records: Vec<VerificationRecord> =
        pool.install(|| checks.par_iter().map(|c| c.execute(config)).collect());
    records.sort_by(|a, b| a.check_id.cmp(&b.check_id));
    Ok(records)
}

/// Runs the named checks. Duplicates collapse; unknown ids are an error.
pub fn run_suite(selection: &[String], config: &Config) -> CliResult<Vec<VerificationRecord>> {
    if selection.is_empty() {
        return Err(CliError::EmptySelection);
    }
    let wanted: BTreeSet<&str> = selection.iter().map(String::as_str).collect();
    let all = registry();
    if let Some(missing) = wanted.iter().find(|id| !all.iter().any(|c| c.id == **id)) {
        return Err(CliError::UnknownCheck(missing.to_string()));
    }
    let chosen: Vec<Check> = all.into_iter().filter(|c| wanted.contains(c.id.as_str())).collect();
    run_checks(&chosen, config)
}

/// Every registered check.
pub fn run_all(config: &Config) -> CliResult<Vec<VerificationRecord>> {
    run_checks(&registry(), config)
}

//! Run configuration: defaults, then a `key=value` file, then flags.

use std::path::{Path, PathBuf};

use crate::error::{CliError, CliResult};

/// Environment variable naming a config file when `--config` is absent.
pub const CONFIG_ENV: &str = "GRASSVOL_CONFIG";

#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub seed: u64,
    /// Replaces every deterministic check's own tolerance when set.
    pub tol: Option<f64>,
    /// Worker threads; 0 lets the pool decide.
    pub workers: usize,
    pub mc_samples: u64,
    pub flag_trials: usize,
    pub synth_trials: usize,
    pub holonomy_steps: usize,
    /// Record wall-clock runtimes. Off by default so reports stay byte-stable.
    pub timing: bool,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            seed: 42,
            tol: None,
            workers: 0,
            mc_samples: 1_000_000,
            flag_trials: 100,
            synth_trials: 50,
            holonomy_steps: 10_000,
            timing: false,
        }
    }
}

fn parse<T: std::str::FromStr>(key: &str, value: &str) -> CliResult<T> {
    value
        .parse()
        .map_err(|_| CliError::Config(format!("bad value '{value}' for {key}")))
}

impl Config {
    pub fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        match key {
            "seed" => self.seed = parse(key, value)?,
            "tol" => {
                let t: f64 = parse(key, value)?;
                if t.is_nan() || t < 0.0 {
                    return Err(CliError::Config(format!("tol must be ≥ 0, got {value}")));
                }
                self.tol = Some(t);
            }
            "workers" => self.workers = parse(key, value)?,
            "mc_samples" => self.mc_samples = parse(key, value)?,
            "flag_trials" => self.flag_trials = parse(key, value)?,
            "synth_trials" => self.synth_trials = parse(key, value)?,
            "holonomy_steps" => self.holonomy_steps = parse(key, value)?,
            "timing" => self.timing = parse(key, value)?,
            _ => return Err(CliError::Config(format!("unknown key '{key}'"))),
        }
        Ok(())
    }

    /// Applies `key=value` lines; blank lines and `#` comments are skipped.
    pub fn apply_text(&mut self, text: &str) -> CliResult<()> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key=value", no + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::Config(format!("line {}: {e}", no + 1)))?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let mut c = Self::default();
        c.apply_text(&text)?;
        Ok(c)
    }

    /// Defaults overlaid by the explicit file, or else the one named in
    /// [`CONFIG_ENV`].
    pub fn load(explicit: Option<&Path>) -> CliResult<Self> {
        let path = explicit
            .map(Path::to_path_buf)
            .or_else(|| std::env::var_os(CONFIG_ENV).map(PathBuf::from));
        match path {
            Some(p) => Self::from_file(&p),
            None => Ok(Self::default()),
        }
    }

    pub fn tolerance(&self, default: f64) -> f64 {
        self.tol.unwrap_or(default)
    }
}

//! Run configuration: built-in defaults, overridden by a flat
//! `key = value` config file, overridden in turn by command-line flags.
//! Reproducible figure recipes live in config files checked into a repo.

use crate::UsageError;
use anyhow::Result;
use clap::ValueEnum;
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UnitSystem {
    Atomic,
    Si,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BackendKind {
    PowerLaw,
    CantorAnalytic,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RadialModeArg {
    Squared,
    PaperLiteral,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub unit_system: UnitSystem,
    pub staircase_backend: BackendKind,
    pub radial_mode: RadialModeArg,
    pub output_format: OutputFormat,
    pub output_path: Option<PathBuf>,
    pub alpha: f64,
    pub beta: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            unit_system: UnitSystem::Atomic,
            staircase_backend: BackendKind::PowerLaw,
            radial_mode: RadialModeArg::Squared,
            output_format: OutputFormat::Csv,
            output_path: None,
            alpha: 1.0,
            beta: 1.0,
        }
    }
}

impl RunConfig {
    /// Loads `path` over the defaults. Unknown keys and malformed values
    /// are usage errors.
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| {
            UsageError(format!("cannot read config file {}: {e}", path.display()))
        })?;
        let mut cfg = Self::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                UsageError(format!(
                    "config line {} is not `key = value`: {raw:?}",
                    lineno + 1
                ))
            })?;
            let key = key.trim();
            let value = value.trim();
            match key {
                "unit_system" => cfg.unit_system = parse_enum(key, value)?,
                "staircase_backend" => cfg.staircase_backend = parse_enum(key, value)?,
                "radial_mode" => cfg.radial_mode = parse_enum(key, value)?,
                "output_format" => cfg.output_format = parse_enum(key, value)?,
                "output_path" => cfg.output_path = Some(PathBuf::from(value)),
                "alpha" => cfg.alpha = parse_exponent(key, value)?,
                "beta" => cfg.beta = parse_exponent(key, value)?,
                _ => {
                    return Err(UsageError(format!("unknown config key {key:?}")).into());
                }
            }
        }
        Ok(cfg)
    }
}

fn parse_enum<T: ValueEnum + Clone>(key: &str, value: &str) -> Result<T> {
    T::from_str(value, true)
        .map_err(|_| UsageError(format!("invalid value {value:?} for config key {key:?}")).into())
}

fn parse_exponent(key: &str, value: &str) -> Result<f64> {
    let v: f64 = value
        .parse()
        .map_err(|_| UsageError(format!("invalid number {value:?} for config key {key:?}")))?;
    if !(v > 0.0 && v <= 1.0) {
        return Err(UsageError(format!("config key {key:?} must lie in (0, 1], got {v}")).into());
    }
    Ok(v)
}

//! Run configuration: flat key = value file with bracketed section headers,
//! overridden by CLI flags.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use crate::CmdError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Effective settings after merging defaults, config file, and flags.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub n_max: Option<usize>,
    pub zero_file: Option<PathBuf>,
    pub zero_url: Option<String>,
    pub zero_sha256: Option<String>,
    pub lambda_cache: Option<PathBuf>,
    pub output_dir: Option<PathBuf>,
    pub format: OutputFormat,
    pub hard_cap: usize,
    pub grids: BTreeMap<String, String>,
    pub tolerances: BTreeMap<String, f64>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            n_max: None,
            zero_file: None,
            zero_url: None,
            zero_sha256: None,
            lambda_cache: None,
            output_dir: None,
            format: OutputFormat::Csv,
            hard_cap: goldbach_core::sieve::DEFAULT_HARD_CAP,
            grids: BTreeMap::new(),
            tolerances: BTreeMap::new(),
        }
    }
}

impl RunConfig {
    /// Parse a config file. Unknown keys in [grids] and [tolerances] are
    /// kept verbatim; unknown top-level keys are rejected.
    pub fn load(path: &Path) -> Result<Self, CmdError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CmdError::Data(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = Self::default();
        let mut section = String::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
                continue;
            }
            if line.starts_with('[') && line.ends_with(']') {
                section = line[1..line.len() - 1].trim().to_string();
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| {
                CmdError::Data(format!("config line {}: expected key = value", idx + 1))
            })?;
            let key = key.trim();
            let value = value.trim();
            match section.as_str() {
                "" => cfg.set_top_level(key, value, idx + 1)?,
                "grids" => {
                    cfg.grids.insert(key.to_string(), value.to_string());
                }
                "tolerances" => {
                    let v: f64 = value
                        .parse()
                        .map_err(|e| CmdError::Data(format!("config line {}: {e}", idx + 1)))?;
                    if v.is_nan() || v <= 0.0 {
                        return Err(CmdError::Data(format!(
                            "config line {}: tolerance {key} must be positive",
                            idx + 1
                        )));
                    }
                    cfg.tolerances.insert(key.to_string(), v);
                }
                other => {
                    return Err(CmdError::Data(format!(
                        "config line {}: unknown section [{other}]",
                        idx + 1
                    )));
                }
            }
        }
        Ok(cfg)
    }

    fn set_top_level(&mut self, key: &str, value: &str, line: usize) -> Result<(), CmdError> {
        let bad = |e: String| CmdError::Data(format!("config line {line}: {e}"));
        match key {
            "n_max" => self.n_max = Some(value.parse().map_err(|e| bad(format!("{e}")))?),
            "zero_file" => self.zero_file = Some(PathBuf::from(value)),
            "zero_url" => self.zero_url = Some(value.to_string()),
            "zero_sha256" => self.zero_sha256 = Some(value.to_string()),
            "lambda_cache" => self.lambda_cache = Some(PathBuf::from(value)),
            "output_dir" => self.output_dir = Some(PathBuf::from(value)),
            "hard_cap" => self.hard_cap = value.parse().map_err(|e| bad(format!("{e}")))?,
            "format" => {
                self.format = match value {
                    "csv" => OutputFormat::Csv,
                    "json" => OutputFormat::Json,
                    other => return Err(bad(format!("unknown format {other:?}"))),
                }
            }
            other => return Err(bad(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    pub fn tolerance(&self, name: &str, default: f64) -> f64 {
        self.tolerances.get(name).copied().unwrap_or(default)
    }

    /// Comma-separated grid values from [grids], if configured.
    pub fn grid_u64(&self, name: &str) -> Result<Option<Vec<u64>>, CmdError> {
        self.grids
            .get(name)
            .map(|s| {
                s.split(',')
                    .map(|v| {
                        v.trim()
                            .parse()
                            .map_err(|e| CmdError::Data(format!("grid {name}: {e}")))
                    })
                    .collect()
            })
            .transpose()
    }

    pub fn grid_f64(&self, name: &str) -> Result<Option<Vec<f64>>, CmdError> {
        self.grids
            .get(name)
            .map(|s| {
                s.split(',')
                    .map(|v| {
                        v.trim()
                            .parse()
                            .map_err(|e| CmdError::Data(format!("grid {name}: {e}")))
                    })
                    .collect()
            })
            .transpose()
    }
}

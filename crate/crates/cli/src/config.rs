//! Run configuration: JSON file plus command-line overrides.

use std::fs;
use std::path::Path;

use abentropy::reference::{self, DEFAULT_K};
use abentropy::{QuantumNumbers, SystemParams, Tolerances};
use serde::Deserialize;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsFile {
    pub m: Option<f64>,
    pub beta: Option<f64>,
    pub r0: Option<f64>,
    pub lz: Option<f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFile {
    pub n: u32,
    pub l: i32,
    pub k: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancesFile {
    pub quad: Option<f64>,
    pub norm: Option<f64>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputFile {
    pub format: Option<Format>,
    pub path: Option<String>,
}

/// On-disk form; every field optional.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    #[serde(default)]
    pub params: ParamsFile,
    pub grid: Option<Vec<StateFile>>,
    pub betas: Option<Vec<f64>>,
    #[serde(default)]
    pub tolerances: TolerancesFile,
    #[serde(default)]
    pub output: OutputFile,
}

/// Validated configuration with defaults filled.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub params: SystemParams,
    /// Whether `beta` was given explicitly (file or flag).
    pub beta_set: bool,
    /// Default wavenumber for states without an explicit `k`.
    pub k: f64,
    pub grid: Vec<QuantumNumbers>,
    pub betas: Vec<f64>,
    pub tolerances: Tolerances,
    pub format: Option<Format>,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        ConfigFile::default().resolve().expect("defaults are valid")
    }
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Usage(format!("config: {e}")))
    }

    /// Fill defaults and validate.
    pub fn resolve(self) -> Result<RunConfig, CliError> {
        let defaults = SystemParams {
            m: 1.0,
            beta: 0.0,
            r0: 1.0,
            lz: 1.0,
        };
        let params = SystemParams {
            m: self.params.m.unwrap_or(defaults.m),
            beta: self.params.beta.unwrap_or(defaults.beta),
            r0: self.params.r0.unwrap_or(defaults.r0),
            lz: self.params.lz.unwrap_or(defaults.lz),
        };
        let grid = match self.grid {
            Some(states) => states
                .into_iter()
                .map(|s| QuantumNumbers {
                    n: s.n,
                    l: s.l,
                    k: s.k.unwrap_or(DEFAULT_K),
                })
                .collect(),
            None => reference::BLOCKS
                .iter()
                .map(|&(n, l)| QuantumNumbers { n, l, k: DEFAULT_K })
                .collect(),
        };
        let base = Tolerances::default();
        let config = RunConfig {
            params,
            beta_set: self.params.beta.is_some(),
            k: DEFAULT_K,
            grid,
            betas: self.betas.unwrap_or_else(|| reference::BETAS.to_vec()),
            tolerances: Tolerances {
                quad: self.tolerances.quad.unwrap_or(base.quad),
                norm: self.tolerances.norm.unwrap_or(base.norm),
                ..base
            },
            format: self.output.format,
            out: self.output.path,
        };
        config.validate()?;
        Ok(config)
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        self.params.validate()?;
        if self.grid.is_empty() {
            return Err(CliError::Usage("grid: must list at least one state".into()));
        }
        for qn in &self.grid {
            qn.validate()?;
        }
        if self.betas.is_empty() {
            return Err(CliError::Usage("betas: must list at least one value".into()));
        }
        for &beta in &self.betas {
            SystemParams { beta, ..self.params }.validate()?;
        }
        positive("--tol", self.tolerances.quad)?;
        positive("tolerances.norm", self.tolerances.norm)?;
        Ok(())
    }
}

pub(crate) fn positive(name: &str, value: f64) -> Result<(), CliError> {
    if value.is_finite() && value > 0.0 {
        Ok(())
    } else {
        Err(CliError::Usage(format!("{name}: must be positive and finite, got {value}")))
    }
}

/// Read and resolve a config file.
pub fn load_config(path: &Path) -> Result<RunConfig, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("config {}: {e}", path.display())))?;
    ConfigFile::parse(&text)
        .map_err(|e| CliError::Usage(format!("{}: {}", path.display(), e.message())))?
        .resolve()
}

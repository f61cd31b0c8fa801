//! Run configuration: built-in defaults, optionally overlaid by a JSON file,
//! then by explicit command-line flags.

use std::fs;
use std::path::{Path, PathBuf};

use num_complex::Complex64;
use purity_core::model::ModelParams;
use purity_core::purification::DensityMatrix;
use purity_core::sweep::{Grid, MeasuredState, DEFAULT_ETA_CAP};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CommandKind {
    Simulate,
    Analyze,
    Sweep,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Measured {
    #[default]
    Up,
    Down,
}

impl From<Measured> for MeasuredState {
    fn from(m: Measured) -> Self {
        match m {
            Measured::Up => MeasuredState::Up,
            Measured::Down => MeasuredState::Down,
        }
    }
}

/// Model in units where ε = 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelConfig {
    pub omega_over_eps: f64,
    pub eps_tau: f64,
    pub theta: f64,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            omega_over_eps: 10.0,
            eps_tau: 1.0,
            theta: 0.0,
        }
    }
}

/// `ρ₀ = [[p_up, c], [c*, 1 - p_up]]` in the `{↑, ↓}` basis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct StateConfig {
    pub p_up: f64,
    pub coh_re: f64,
    pub coh_im: f64,
}

impl Default for StateConfig {
    fn default() -> Self {
        Self {
            p_up: 0.5,
            coh_re: 0.0,
            coh_im: 0.0,
        }
    }
}

/// Sweep grid over `p_up` and `x = 2ετ/π`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GridConfig {
    pub p_lo: f64,
    pub p_hi: f64,
    pub x_lo: f64,
    pub x_hi: f64,
    pub np: usize,
    pub nx: usize,
    pub eta_cap: f64,
    pub measured: Measured,
}

impl Default for GridConfig {
    fn default() -> Self {
        let grid = Grid::default();
        Self {
            p_lo: grid.p_range.0,
            p_hi: grid.p_range.1,
            x_lo: grid.x_range.0,
            x_hi: grid.x_range.1,
            np: grid.n_p,
            nx: grid.n_x,
            eta_cap: DEFAULT_ETA_CAP,
            measured: Measured::Up,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    /// `-` writes to stdout.
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub command: Option<CommandKind>,
    pub model: ModelConfig,
    pub rho0: StateConfig,
    pub steps: usize,
    pub grid: GridConfig,
    pub output: OutputConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            command: None,
            model: ModelConfig::default(),
            rho0: StateConfig::default(),
            steps: 50,
            grid: GridConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Config(format!("cannot parse {}: {e}", path.display())))
    }

    pub fn model_params(&self) -> Result<ModelParams, CliError> {
        let m = &self.model;
        Ok(ModelParams::dimensionless(
            m.omega_over_eps,
            m.eps_tau,
            m.theta,
        )?)
    }

    pub fn initial_state(&self) -> Result<DensityMatrix, CliError> {
        let s = &self.rho0;
        Ok(DensityMatrix::from_populations(
            s.p_up,
            Complex64::new(s.coh_re, s.coh_im),
        )?)
    }

    pub fn grid(&self) -> Grid {
        let g = &self.grid;
        Grid {
            p_range: (g.p_lo, g.p_hi),
            x_range: (g.x_lo, g.x_hi),
            n_p: g.np,
            n_x: g.nx,
        }
    }

    /// Checks everything the selected command consumes.
    pub fn validate(&self) -> Result<CommandKind, CliError> {
        let command = self
            .command
            .ok_or_else(|| CliError::Config("no command given".into()))?;
        if self.output.path.is_none() {
            return Err(CliError::Config("no output path given (use --out)".into()));
        }
        match command {
            CommandKind::Simulate | CommandKind::Analyze => {
                self.model_params()?;
                self.initial_state()?;
            }
            CommandKind::Sweep => {
                self.grid().validate()?;
                if self.grid.eta_cap.is_nan() || self.grid.eta_cap <= 0.0 {
                    return Err(CliError::Config("eta cap must be positive".into()));
                }
            }
        }
        Ok(command)
    }
}

use purity_core::linalg::{eig2_biorthogonal, DEFAULT_TOL};
use purity_core::model::v_operator;
use purity_core::purification::{analyze as analyze_pair, trajectory};
use purity_core::sweep::eta_map;
use purity_core::Error as CoreError;

use crate::config::RunConfig;
use crate::error::CliError;
use crate::output::{Cell, Table};

pub const TRAJECTORY_COLUMNS: [&str; 9] = [
    "k",
    "purity",
    "success_weight",
    "rho11_re",
    "rho11_im",
    "rho12_re",
    "rho12_im",
    "rho22_re",
    "rho22_im",
];

pub const ANALYSIS_COLUMNS: [&str; 10] = [
    "g",
    "a",
    "b",
    "c_tilde",
    "det_rho0",
    "local_min_at_1",
    "local_max_at_1_possible",
    "k_monotonic_sufficient",
    "k_monotonic_simplified",
    "simplified_is_exact",
];

pub const SWEEP_COLUMNS: [&str; 5] = ["p_up", "two_eps_tau_over_pi", "eta", "eta_raw", "monotonic"];

/// Purity trajectory of the configured model and initial state.
pub fn simulate(cfg: &RunConfig) -> Result<Table, CliError> {
    let v = v_operator(&cfg.model_params()?);
    // Defective maps still iterate fine; only the closed-form analysis needs a basis.
    if let Err(e @ (CoreError::NonExtractive { .. } | CoreError::NullMap)) =
        eig2_biorthogonal(&v, DEFAULT_TOL)
    {
        return Err(e.into());
    }
    let traj = trajectory(&cfg.initial_state()?, &v, cfg.steps).complete()?;
    let mut table = Table::new(TRAJECTORY_COLUMNS.to_vec());
    for rec in &traj.steps {
        let (r11, r12, r22) = (
            rec.state.get(0, 0),
            rec.state.get(0, 1),
            rec.state.get(1, 1),
        );
        table.push(vec![
            Cell::Int(rec.k as u64),
            Cell::Float(rec.purity),
            Cell::Float(rec.success_weight),
            Cell::Float(r11.re),
            Cell::Float(r11.im),
            Cell::Float(r12.re),
            Cell::Float(r12.im),
            Cell::Float(r22.re),
            Cell::Float(r22.im),
        ]);
    }
    Ok(table)
}

/// Decomposition, oscillation predicates and monotonicity thresholds.
pub fn analyze(cfg: &RunConfig) -> Result<Table, CliError> {
    let v = v_operator(&cfg.model_params()?);
    let analysis = analyze_pair(&cfg.initial_state()?, &v)?;
    let (d, r) = (analysis.decomposition, analysis.report);
    let mut table = Table::new(ANALYSIS_COLUMNS.to_vec());
    table.push(vec![
        Cell::Float(analysis.spectral.g),
        Cell::Float(d.a),
        Cell::Float(d.b),
        Cell::Float(d.c_tilde),
        Cell::Float(d.det_rho0),
        Cell::Bool(r.local_min_at_1),
        Cell::Bool(r.local_max_at_1_possible),
        r.k_monotonic_sufficient.into(),
        r.k_monotonic_simplified.into(),
        Cell::Bool(r.simplified_is_exact),
    ]);
    Ok(table)
}

/// Threshold map over the configured grid, `p_up`-major.
pub fn sweep(cfg: &RunConfig) -> Result<Table, CliError> {
    let cells = eta_map(&cfg.grid(), cfg.grid.measured.into(), cfg.grid.eta_cap)?;
    let mut table = Table::new(SWEEP_COLUMNS.to_vec());
    for c in cells {
        table.push(vec![
            Cell::Float(c.p_up),
            Cell::Float(c.two_eps_tau_over_pi),
            Cell::Float(c.eta),
            Cell::Float(c.eta_raw),
            Cell::Bool(c.monotonic),
        ]);
    }
    Ok(table)
}

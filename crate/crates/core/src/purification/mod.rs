//! Conditional evolution `ρ_k ∝ V^k ρ₀ (V†)^k` of a qubit and the closed-form
//! account of its purity.

mod conditions;
mod decomposition;
mod state;
mod trajectory;

pub use conditions::{
    k_threshold_simplified, k_threshold_sufficient, local_max_at_first_possible,
    local_min_at_first, monotonic_from, monotonic_lhs, oscillation_report, purity_closed_form,
    OscillationReport, SimplifiedThreshold, DENOMINATOR_FLOOR,
};
pub use decomposition::{decompose, InitialDecomposition, COHERENCE_TOL};
pub use state::{DensityMatrix, STATE_TOL};
pub use trajectory::{
    evolve_step, evolve_step_with_floor, trajectory, PurityTrajectory, Step, TrajectoryRecord,
    Truncation, DEFAULT_WEIGHT_FLOOR,
};

use crate::error::Result;
use crate::linalg::{eig2_biorthogonal, CMatrix, SpectralData, DEFAULT_TOL};

/// Spectral data, decomposition and oscillation report for one `(ρ₀, V)` pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Analysis {
    pub spectral: SpectralData,
    pub decomposition: InitialDecomposition,
    pub report: OscillationReport,
}

pub fn analyze(rho0: &DensityMatrix, v: &CMatrix) -> Result<Analysis> {
    let spectral = eig2_biorthogonal(v, DEFAULT_TOL)?;
    let decomposition = decompose(rho0, &spectral)?;
    let report = oscillation_report(&decomposition, spectral.g);
    Ok(Analysis {
        spectral,
        decomposition,
        report,
    })
}

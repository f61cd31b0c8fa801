use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;

/// Smallest single-step success probability accepted before a state is
/// considered annihilated.
pub const DEFAULT_WEIGHT_FLOOR: f64 = 1e-300;

/// Outcome of one conditional step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Step {
    pub state: DensityMatrix,
    /// `tr[V ρ V†]`, the probability of the measurement outcome.
    pub weight: f64,
}

/// Applies `ρ ↦ VρV† / tr[VρV†]`.
pub fn evolve_step(rho: &DensityMatrix, v: &CMatrix) -> Result<Step> {
    evolve_step_with_floor(rho, v, DEFAULT_WEIGHT_FLOOR)
}

pub fn evolve_step_with_floor(rho: &DensityMatrix, v: &CMatrix, floor: f64) -> Result<Step> {
    let mapped = v.sandwich(rho.matrix())?;
    let weight = mapped.trace().re;
    if weight.is_nan() || weight <= floor {
        return Err(Error::StateAnnihilated { step: 1, weight });
    }
    Ok(Step {
        state: DensityMatrix::from_unnormalized(&mapped)?,
        weight,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryRecord {
    pub k: usize,
    pub purity: f64,
    /// `tr[V^k ρ₀ (V†)^k]`, the probability of `k` consecutive successes.
    pub success_weight: f64,
    pub state: DensityMatrix,
}

/// Marks a trajectory that stopped because the conditional evolution
/// annihilated the state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Truncation {
    /// Step that could not be taken.
    pub step: usize,
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PurityTrajectory {
    pub steps: Vec<TrajectoryRecord>,
    pub truncated: Option<Truncation>,
}

impl PurityTrajectory {
    pub fn purities(&self) -> Vec<f64> {
        self.steps.iter().map(|r| r.purity).collect()
    }

    pub fn purity(&self, k: usize) -> Option<f64> {
        self.steps.get(k).map(|r| r.purity)
    }

    /// Converts a truncated trajectory into [`Error::StateAnnihilated`].
    pub fn complete(self) -> Result<Self> {
        match self.truncated {
            Some(t) => Err(Error::StateAnnihilated {
                step: t.step,
                weight: t.weight,
            }),
            None => Ok(self),
        }
    }
}

/// Iterates the conditional map `k_max` times starting from `rho0`.
pub fn trajectory(rho0: &DensityMatrix, v: &CMatrix, k_max: usize) -> PurityTrajectory {
    let mut steps = Vec::with_capacity(k_max + 1);
    steps.push(TrajectoryRecord {
        k: 0,
        purity: rho0.purity(),
        success_weight: 1.0,
        state: *rho0,
    });
    let mut truncated = None;
    for k in 1..=k_max {
        let prev = steps[k - 1];
        match evolve_step(&prev.state, v) {
            Ok(step) => steps.push(TrajectoryRecord {
                k,
                purity: step.state.purity(),
                success_weight: prev.success_weight * step.weight,
                state: step.state,
            }),
            Err(Error::StateAnnihilated { weight, .. }) => {
                truncated = Some(Truncation { step: k, weight });
                break;
            }
            Err(other) => panic!("qubit evolution failed unexpectedly: {other}"),
        }
    }
    PurityTrajectory { steps, truncated }
}

use std::f64::consts::TAU;

use super::state::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{Complex, SpectralData};

const NEGATIVE_TOL: f64 = 1e-12;
const DET_IDENTITY_TOL: f64 = 1e-10;

/// `c̃` values at or below this are treated as zero when fixing `beta`.
pub const COHERENCE_TOL: f64 = 1e-12;

/// Coefficients of `ρ₀ = a|u₁⟩⟨u₁| + b|u₂⟩⟨u₂| + c|u₁⟩⟨u₂| + c*|u₂⟩⟨u₁|`
/// and the derived quantities that drive the purity evolution.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialDecomposition {
    /// `⟨v₁|ρ₀|v₁⟩`, weight on the dominant eigenvector.
    pub a: f64,
    /// `⟨v₂|ρ₀|v₂⟩`.
    pub b: f64,
    /// `⟨v₁|ρ₀|v₂⟩`.
    pub c: Complex,
    /// `|c ⟨u₂|u₁⟩|`.
    pub c_tilde: f64,
    /// `arg(c ⟨u₂|u₁⟩)`, zero when `c_tilde` vanishes.
    pub beta: f64,
    /// `arg(λ₁ λ₂*)`.
    pub delta: f64,
    /// `⟨u₂|u₁⟩`.
    pub overlap_u2u1: Complex,
    pub det_rho0: f64,
    /// `|det ρ₀ - (ab - |c|²)|⟨u₂|u₁⊥⟩|²|`.
    pub det_identity_residual: f64,
}

impl InitialDecomposition {
    /// Interference phase after `k` steps: `arg[c⟨u₂|u₁⟩(λ₁λ₂*)^k]`.
    pub fn alpha(&self, k: u64) -> f64 {
        (self.beta + k as f64 * self.delta).rem_euclid(TAU)
    }

    pub fn cos_alpha(&self, k: u64) -> f64 {
        self.alpha(k).cos()
    }

    /// True when ρ₀ is pure within tolerance.
    pub fn is_pure(&self) -> bool {
        self.det_rho0 <= NEGATIVE_TOL
    }
}

/// Expands `rho0` in the biorthogonal eigenbasis of the conditional map.
pub fn decompose(rho0: &DensityMatrix, spectral: &SpectralData) -> Result<InitialDecomposition> {
    let m = rho0.matrix();
    let a_c = spectral.v1.sandwich(m, &spectral.v1);
    let b_c = spectral.v2.sandwich(m, &spectral.v2);
    let c = spectral.v1.sandwich(m, &spectral.v2);
    let (a, b) = (a_c.re, b_c.re);
    let scale = a.abs() + b.abs();
    if a < -NEGATIVE_TOL * scale.max(1.0) || b < -NEGATIVE_TOL * scale.max(1.0) {
        return Err(Error::InvariantViolation(format!(
            "negative diagonal weight in biorthogonal basis (a = {a:e}, b = {b:e})"
        )));
    }
    let (a, b) = (a.max(0.0), b.max(0.0));

    let overlap = spectral.u2.dot(&spectral.u1);
    let cross = c * overlap;
    let c_tilde = cross.norm();
    let beta = if c_tilde > COHERENCE_TOL {
        cross.arg()
    } else {
        0.0
    };
    let rotor = spectral.phase_rotor();
    let delta = if rotor.norm() > 0.0 { rotor.arg() } else { 0.0 };

    let det_rho0 = rho0.det();
    let perp_overlap = spectral.u2.dot(&spectral.u1_perp).norm_sqr();
    let factored = (a * b - c.norm_sqr()) * perp_overlap;
    let det_identity_residual = (det_rho0 - factored).abs();
    let magnitude = (a * b + c.norm_sqr()) * perp_overlap;
    if det_identity_residual > DET_IDENTITY_TOL * magnitude.max(1.0) {
        return Err(Error::InvariantViolation(format!(
            "determinant identity residual {det_identity_residual:e}"
        )));
    }

    Ok(InitialDecomposition {
        a,
        b,
        c,
        c_tilde,
        beta,
        delta,
        overlap_u2u1: overlap,
        det_rho0,
        det_identity_residual,
    })
}

//! Two qubits S and X with an excitation-preserving flip-flop coupling,
//! `H = Σ_i (Ω/2)(1 + σ_z^i) + ε(σ₊^S σ₋^X + σ₋^S σ₊^X)`.
//!
//! Product basis order is `{↑↑, ↑↓, ↓↑, ↓↓}` with S the left factor; qubit S
//! alone uses `{↑, ↓}`. X is measured in `|θ⟩ = cos(θ/2)|↑⟩ + sin(θ/2)|↓⟩`
//! after every interval `τ`.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, Complex, ONE, ZERO};

/// Distance from an integer multiple of π below which `ετ` is rejected.
pub const TAU_EXCLUSION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Bohr frequency Ω.
    pub omega: f64,
    /// Coupling ε.
    pub epsilon: f64,
    /// Time between measurements.
    pub tau: f64,
    /// Bloch angle of the measured state of X, in `[0, π]`.
    pub theta: f64,
}

impl ModelParams {
    /// Dimensionless parameters with ε = 1: `Ω/ε`, `ετ`, θ.
    pub fn dimensionless(omega_over_eps: f64, eps_tau: f64, theta: f64) -> Result<Self> {
        let p = Self {
            omega: omega_over_eps,
            epsilon: 1.0,
            tau: eps_tau,
            theta,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, x: f64| {
            if x.is_finite() && x > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParameter(format!(
                    "{name} must be positive, got {x}"
                )))
            }
        };
        positive("omega", self.omega)?;
        positive("epsilon", self.epsilon)?;
        if !(self.tau.is_finite() && self.tau >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "tau must be non-negative, got {}",
                self.tau
            )));
        }
        if !(0.0..=PI).contains(&self.theta) {
            return Err(Error::InvalidParameter(format!(
                "theta must lie in [0, pi], got {}",
                self.theta
            )));
        }
        Ok(())
    }

    pub fn eps_tau(&self) -> f64 {
        self.epsilon * self.tau
    }

    /// Rejects `ετ = qπ`, where measuring `|↑⟩` gives `g = 1`.
    pub fn check_extractive_up(&self) -> Result<()> {
        let x = self.eps_tau() / PI;
        if (x - x.round()).abs() * PI <= TAU_EXCLUSION {
            return Err(Error::DegenerateTau(self.eps_tau().cos().abs()));
        }
        Ok(())
    }

    /// `|θ⟩_X` in the `{↑, ↓}` basis.
    pub fn measured_state(&self) -> CVector {
        let half = 0.5 * self.theta;
        CVector::new2(Complex::from(half.cos()), Complex::from(half.sin()))
    }
}

pub fn hamiltonian(p: &ModelParams) -> CMatrix {
    let (w, e) = (Complex::from(p.omega), Complex::from(p.epsilon));
    CMatrix::from_rows4([
        [w * 2.0, ZERO, ZERO, ZERO],
        [ZERO, w, e, ZERO],
        [ZERO, e, w, ZERO],
        [ZERO, ZERO, ZERO, ZERO],
    ])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Level {
    /// `|↑↑⟩`
    Two,
    /// `(|↑↓⟩ + |↓↑⟩)/√2`
    One,
    /// `|↓↓⟩`
    Zero,
    /// `(|↑↓⟩ - |↓↑⟩)/√2`
    Singlet,
}

/// Triplet and singlet eigenstates with their energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem4 {
    pub levels: [Level; 4],
    pub states: [CVector; 4],
    pub energies: [f64; 4],
}

impl EigenSystem4 {
    pub fn get(&self, level: Level) -> (CVector, f64) {
        let i = self
            .levels
            .iter()
            .position(|&l| l == level)
            .expect("all levels present");
        (self.states[i], self.energies[i])
    }

    /// `exp(-iHt) = Σ_n e^{-iE_n t}|n⟩⟨n|`.
    pub fn propagator(&self, t: f64) -> CMatrix {
        self.states
            .iter()
            .zip(self.energies)
            .map(|(s, e)| CMatrix::outer(s, s).scale(Complex::from_polar(1.0, -e * t)))
            .fold(CMatrix::zeros(4).expect("dim 4"), |acc, m| acc + m)
    }
}

pub fn eigensystem(p: &ModelParams) -> EigenSystem4 {
    let r = Complex::from(FRAC_1_SQRT_2);
    let ket = |x: [Complex; 4]| CVector::from_slice(&x).expect("dim 4");
    EigenSystem4 {
        levels: [Level::Two, Level::One, Level::Zero, Level::Singlet],
        states: [
            ket([ONE, ZERO, ZERO, ZERO]),
            ket([ZERO, r, r, ZERO]),
            ket([ZERO, ZERO, ZERO, ONE]),
            ket([ZERO, r, -r, ZERO]),
        ],
        energies: [2.0 * p.omega, p.omega + p.epsilon, 0.0, p.omega - p.epsilon],
    }
}

/// Closed-form conditional map on S for X found in `|θ⟩` after time `τ`.
pub fn v_operator(p: &ModelParams) -> CMatrix {
    let t = p.tau;
    let (c2, s2) = ((0.5 * p.theta).cos().powi(2), (0.5 * p.theta).sin().powi(2));
    let cs = (0.5 * p.theta).sin() * (0.5 * p.theta).cos();
    let phase2 = Complex::from_polar(1.0, -2.0 * p.omega * t);
    let phase1 = Complex::from_polar(1.0, -p.omega * t);
    let (cos_et, sin_et) = ((p.epsilon * t).cos(), (p.epsilon * t).sin());
    let up_up = phase2 * c2 + phase1 * (cos_et * s2);
    let down_down = Complex::from(s2) + phase1 * (cos_et * c2);
    let flip = Complex::new(0.0, -1.0) * phase1 * (sin_et * cs);
    CMatrix::from_rows2([[up_up, flip], [flip, down_down]])
}

/// `⟨θ|_X exp(-iHτ) |θ⟩_X` computed from the full two-qubit propagator.
pub fn v_oracle(p: &ModelParams) -> CMatrix {
    let u = eigensystem(p).propagator(p.tau);
    let phi = p.measured_state();
    let mut v = CMatrix::zeros(2).expect("dim 2");
    for s in 0..2 {
        for s2 in 0..2 {
            let mut acc = ZERO;
            for x in 0..2 {
                for x2 in 0..2 {
                    acc += phi[x].conj() * u[(2 * s + x, 2 * s2 + x2)] * phi[x2];
                }
            }
            v[(s, s2)] = acc;
        }
    }
    v
}

/// Monotonicity threshold for repeatedly finding X in `|↑⟩`:
/// `η = max{0, ½(1 + log(p/(1-p)) / log|cos ετ|)}`.
///
/// At `|cos ετ| = 0` the map is rank one and the limit `η = ½` is returned.
pub fn eta_threshold(p_up: f64, eps_tau: f64) -> Result<f64> {
    if !(p_up > 0.0 && p_up < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "p_up must lie in (0, 1), got {p_up}"
        )));
    }
    let g = eps_tau.cos().abs();
    if !eps_tau.is_finite() || g >= 1.0 - TAU_EXCLUSION {
        return Err(Error::DegenerateTau(g));
    }
    let ratio = if g <= TAU_EXCLUSION {
        0.0
    } else {
        (p_up / (1.0 - p_up)).ln() / g.ln()
    };
    Ok((0.5 * (1.0 + ratio)).max(0.0))
}

/// The same threshold when X is found in `|↓⟩`, obtained by `p → 1 - p`.
pub fn down_state_threshold(p_up: f64, eps_tau: f64) -> Result<f64> {
    eta_threshold(1.0 - p_up, eps_tau)
}

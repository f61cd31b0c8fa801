//! Random samplers and independent oracles shared by the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use purity_core::linalg::{
    eig2_biorthogonal, CMatrix, CVector, Complex, SpectralData, DEFAULT_TOL,
};
use purity_core::purification::DensityMatrix;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn complex(rng: &mut StdRng) -> Complex {
    Complex::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn unit_vector(rng: &mut StdRng) -> CVector {
    loop {
        let v = CVector::new2(complex(rng), complex(rng));
        if v.norm() > 1e-3 {
            return v.normalized();
        }
    }
}

/// Uniform direction on the Bloch sphere with radius `r`.
pub fn bloch_state(rng: &mut StdRng, r: f64) -> DensityMatrix {
    let z: f64 = rng.random_range(-1.0..1.0);
    let phi = rng.random_range(0.0..2.0 * PI);
    let s = (1.0 - z * z).sqrt();
    let (x, y) = (r * s * phi.cos(), r * s * phi.sin());
    let p_up = 0.5 * (1.0 + r * z);
    DensityMatrix::from_populations(p_up, Complex::new(0.5 * x, -0.5 * y)).unwrap()
}

/// Mixed state with Bloch radius in `[0, 0.999]`.
pub fn mixed_state(rng: &mut StdRng) -> DensityMatrix {
    let r = rng.random_range(0.0..0.999);
    bloch_state(rng, r)
}

pub fn pure_state(rng: &mut StdRng) -> DensityMatrix {
    DensityMatrix::pure(&unit_vector(rng)).unwrap()
}

/// Random map with `g ≤ g_max` whose right eigenvectors are not nearly
/// parallel (`|⟨u₂|u₁⊥⟩| ≥ 0.1`), keeping the biorthogonal basis well conditioned.
pub fn extractive_map(rng: &mut StdRng, g_max: f64) -> (CMatrix, SpectralData) {
    loop {
        let v = CMatrix::from_fn(2, |_, _| complex(rng)).unwrap();
        let Ok(spectral) = eig2_biorthogonal(&v, DEFAULT_TOL) else {
            continue;
        };
        if spectral.g <= g_max && spectral.u2.dot(&spectral.u1_perp).norm() >= 0.1 {
            return (v, spectral);
        }
    }
}

/// `exp(M)` by scaling and squaring a truncated Taylor series; independent of
/// any eigendecomposition.
pub fn expm_taylor(m: &CMatrix) -> CMatrix {
    let norm = m.max_abs() * m.dim() as f64;
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = m.scale(Complex::from(0.5_f64.powi(squarings as i32)));
    let id = CMatrix::identity(m.dim()).unwrap();
    let mut term = id;
    let mut sum = id;
    for n in 1..=30 {
        term = (term * scaled).scale(Complex::from(1.0 / n as f64));
        sum = sum + term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// `tr ρ²` from `V^k ρ₀ (V†)^k` by repeated multiplication and a single
/// normalization at the end.
pub fn purity_by_powers(rho0: &DensityMatrix, v: &CMatrix, k: usize) -> f64 {
    let mut m = *rho0.matrix();
    for _ in 0..k {
        m = v.sandwich(&m).unwrap();
    }
    let tr = m.trace().re;
    let m = m.scale(Complex::from(1.0 / tr));
    (m * m).trace().re
}

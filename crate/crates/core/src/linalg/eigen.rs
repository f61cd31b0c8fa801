//! Closed-form biorthogonal eigendecomposition of a general 2×2 complex matrix.
//!
//! For a non-normal `V` the right eigenvectors `|u_j⟩` are not orthogonal.
//! The left eigenvectors `⟨v_i|` are the rows of `[u₁ u₂]⁻¹`, so that
//! `⟨v_i|u_j⟩ = δ_ij` and `V = λ₁|u₁⟩⟨v₁| + λ₂|u₂⟩⟨v₂|`.

use super::matrix::{CMatrix, CVector, Complex, ONE, ZERO};
use crate::error::{Error, Result};

/// Default relative tolerance for structural checks.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Components below this modulus count as zero when fixing phases.
const PHASE_ZERO: f64 = 1e-14;

/// Spectral data of a diagonalizable 2×2 map with a strictly dominant eigenvalue.
///
/// Left eigenvectors are stored as kets: `⟨v_i|x⟩ == v_i.dot(&x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    pub lambda1: Complex,
    pub lambda2: Complex,
    pub u1: CVector,
    pub u2: CVector,
    pub v1: CVector,
    pub v2: CVector,
    /// `|λ₂| / |λ₁|`, in `[0, 1)`.
    pub g: f64,
    /// Unit vector orthogonal to `u1`.
    pub u1_perp: CVector,
}

impl SpectralData {
    /// `λ₁|u₁⟩⟨v₁| + λ₂|u₂⟩⟨v₂|`.
    pub fn reconstruct(&self) -> CMatrix {
        CMatrix::outer(&self.u1, &self.v1).scale(self.lambda1)
            + CMatrix::outer(&self.u2, &self.v2).scale(self.lambda2)
    }

    /// Largest deviation of `⟨v_i|u_j⟩` from `δ_ij`.
    pub fn biorthonormality_error(&self) -> f64 {
        let pairs = [
            (self.v1.dot(&self.u1), ONE),
            (self.v1.dot(&self.u2), ZERO),
            (self.v2.dot(&self.u1), ZERO),
            (self.v2.dot(&self.u2), ONE),
        ];
        pairs
            .iter()
            .map(|(got, want)| (got - want).norm())
            .fold(0.0, f64::max)
    }

    /// `λ₁ λ₂*`, whose argument is the per-step advance of the interference phase.
    pub fn phase_rotor(&self) -> Complex {
        self.lambda1 * self.lambda2.conj()
    }
}

/// Rotates `x` so that the component selected by `pick` is real and positive.
fn fix_phase(x: CVector, pick: usize) -> CVector {
    let z = x[pick];
    if z.norm() == 0.0 {
        return x;
    }
    x.scale(z.conj() / z.norm())
}

fn largest_component(x: &CVector) -> usize {
    if x[1].norm() > x[0].norm() {
        1
    } else {
        0
    }
}

fn first_nonzero_component(x: &CVector) -> usize {
    if x[0].norm() > PHASE_ZERO {
        0
    } else {
        1
    }
}

/// Unit null vector of the rank-one matrix `b - λ I`.
fn right_eigenvector(b: &CMatrix, lambda: Complex) -> CVector {
    let (m00, m01) = (b[(0, 0)] - lambda, b[(0, 1)]);
    let (m10, m11) = (b[(1, 0)], b[(1, 1)] - lambda);
    let from_row0 = CVector::new2(m01, -m00);
    let from_row1 = CVector::new2(-m11, m10);
    let raw = if from_row0.norm() >= from_row1.norm() {
        from_row0
    } else {
        from_row1
    };
    let u = raw.normalized();
    fix_phase(u, largest_component(&u))
}

/// Eigenvalues, normalized right eigenvectors and biorthonormal left
/// eigenvectors of `v`, ordered so that `|λ₁| > |λ₂|`.
///
/// `tol` is relative: eigenvalues closer than `tol·|λ₁|` are treated as
/// repeated and moduli with `1 - g ≤ tol` as tied.
pub fn eig2_biorthogonal(v: &CMatrix, tol: f64) -> Result<SpectralData> {
    if v.dim() != 2 {
        return Err(Error::DimensionMismatch {
            left: v.dim(),
            right: 2,
        });
    }
    if !v.is_finite() {
        return Err(Error::NonFinite);
    }
    let scale = v.max_abs();
    if scale < f64::MIN_POSITIVE {
        return Err(Error::NullMap);
    }
    let b = v.scale(Complex::from(1.0 / scale));

    let half_trace = b.trace() * 0.5;
    let det = b.det2()?;
    let disc = (half_trace * half_trace - det).sqrt();
    let (plus, minus) = (half_trace + disc, half_trace - disc);
    let big = if plus.norm() >= minus.norm() {
        plus
    } else {
        minus
    };
    // Vieta for the small root avoids cancellation.
    let small = if big.norm() > 0.0 { det / big } else { ZERO };

    if (big - small).norm() <= tol * big.norm().max(f64::MIN_POSITIVE) {
        let shifted = b - CMatrix::identity(2)?.scale(big);
        return if shifted.max_abs() <= tol {
            Err(Error::NonExtractive { ratio: 1.0 })
        } else {
            Err(Error::DefectiveMap(big * scale))
        };
    }
    let g = small.norm() / big.norm();
    if 1.0 - g <= tol {
        return Err(Error::NonExtractive { ratio: g });
    }

    let u1 = right_eigenvector(&b, big);
    let u2 = right_eigenvector(&b, small);
    let det_u = u1[0] * u2[1] - u2[0] * u1[1];
    if det_u.norm() <= tol {
        return Err(Error::DefectiveMap(big * scale));
    }
    // Rows of [u1 u2]^{-1} are the bras ⟨v1|, ⟨v2|; store their conjugates.
    let inv = ONE / det_u;
    let v1 = CVector::new2((u2[1] * inv).conj(), (-u2[0] * inv).conj());
    let v2 = CVector::new2((-u1[1] * inv).conj(), (u1[0] * inv).conj());

    let perp = CVector::new2(-u1[1].conj(), u1[0].conj());
    let u1_perp = fix_phase(perp, first_nonzero_component(&perp));

    Ok(SpectralData {
        lambda1: big * scale,
        lambda2: small * scale,
        u1,
        u2,
        v1,
        v2,
        g,
        u1_perp,
    })
}

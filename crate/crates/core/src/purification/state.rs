use crate::error::{Error, Result};
use crate::linalg::{CMatrix, CVector, Complex};

/// Tolerance for Hermiticity, trace and positivity checks on qubit states.
pub const STATE_TOL: f64 = 1e-12;

/// A qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix {
    m: CMatrix,
}

impl DensityMatrix {
    /// Validates `m` and returns it as a state.
    pub fn new(m: CMatrix) -> Result<Self> {
        if m.dim() != 2 {
            return Err(Error::DimensionMismatch {
                left: m.dim(),
                right: 2,
            });
        }
        if !m.is_finite() {
            return Err(Error::NonFinite);
        }
        let herm = m.max_abs_diff(&m.adjoint());
        if herm > STATE_TOL {
            return Err(Error::InvalidState(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = m.trace();
        if (tr - Complex::from(1.0)).norm() > STATE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let state = Self { m };
        let low = state.min_eigenvalue();
        if low < -STATE_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {low:e}")));
        }
        Ok(state)
    }

    /// `p|↑⟩⟨↑| + (1-p)|↓⟩⟨↓| + c|↑⟩⟨↓| + c*|↓⟩⟨↑|` in the `{↑, ↓}` basis.
    pub fn from_populations(p_up: f64, coherence: Complex) -> Result<Self> {
        if !(0.0..=1.0).contains(&p_up) {
            return Err(Error::InvalidState(format!(
                "population {p_up} outside [0, 1]"
            )));
        }
        Self::new(CMatrix::from_rows2([
            [Complex::from(p_up), coherence],
            [coherence.conj(), Complex::from(1.0 - p_up)],
        ]))
    }

    pub fn pure(psi: &CVector) -> Result<Self> {
        let n = psi.norm();
        if psi.dim() != 2 || n.is_nan() || n <= 0.0 {
            return Err(Error::InvalidState(
                "pure state needs a nonzero qubit vector".into(),
            ));
        }
        let u = psi.normalized();
        Self::from_unnormalized(&CMatrix::outer(&u, &u))
    }

    pub fn maximally_mixed() -> Self {
        Self {
            m: CMatrix::diag2(Complex::from(0.5), Complex::from(0.5)),
        }
    }

    /// Hermitizes and normalizes a positive operator, e.g. `VρV†`.
    pub(crate) fn from_unnormalized(m: &CMatrix) -> Result<Self> {
        let herm = (*m + m.adjoint()).scale(Complex::from(0.5));
        let tr = herm.trace().re;
        Self::new(herm.scale(Complex::from(1.0 / tr)))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.m
    }

    pub fn get(&self, i: usize, j: usize) -> Complex {
        self.m[(i, j)]
    }

    /// `tr ρ²`.
    pub fn purity(&self) -> f64 {
        let (p00, p11, p01) = (self.m[(0, 0)].re, self.m[(1, 1)].re, self.m[(0, 1)]);
        p00 * p00 + p11 * p11 + 2.0 * p01.norm_sqr()
    }

    pub fn det(&self) -> f64 {
        self.m.det2().expect("qubit state").re
    }

    fn min_eigenvalue(&self) -> f64 {
        let (p00, p11, p01) = (self.m[(0, 0)].re, self.m[(1, 1)].re, self.m[(0, 1)]);
        let half_gap = 0.5 * (p00 - p11);
        0.5 * (p00 + p11) - (half_gap * half_gap + p01.norm_sqr()).sqrt()
    }

    /// `½ ‖ρ - σ‖₁`.
    pub fn trace_distance(&self, other: &Self) -> f64 {
        // ρ - σ is traceless Hermitian with eigenvalues ±r.
        let d = self.m - other.m;
        let half_gap = 0.5 * (d[(0, 0)].re - d[(1, 1)].re);
        (half_gap * half_gap + d[(0, 1)].norm_sqr()).sqrt()
    }
}

//! Fixed-size complex linear algebra: 2×2 and 4×4 matrices and the
//! biorthogonal 2×2 eigensolver.

mod eigen;
mod matrix;

pub use eigen::{eig2_biorthogonal, SpectralData, DEFAULT_TOL};
pub use matrix::{mat_mul, CMatrix, CVector, Complex, ONE, ZERO};

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub type Complex = Complex64;

pub const ZERO: Complex = Complex::new(0.0, 0.0);
pub const ONE: Complex = Complex::new(1.0, 0.0);

const MAX_DIM: usize = 4;

fn check_dim(dim: usize) -> Result<()> {
    match dim {
        2 | 4 => Ok(()),
        other => Err(Error::InvalidDimension(other)),
    }
}

/// Dense complex square matrix of dimension 2 or 4, stored inline.
#[derive(Clone, Copy, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: [Complex; MAX_DIM * MAX_DIM],
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: [ZERO; MAX_DIM * MAX_DIM],
        })
    }

    pub fn identity(dim: usize) -> Result<Self> {
        Self::from_fn(dim, |i, j| if i == j { ONE } else { ZERO })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex) -> Result<Self> {
        let mut m = Self::zeros(dim)?;
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        Ok(m)
    }

    pub fn from_rows2(rows: [[Complex; 2]; 2]) -> Self {
        Self::from_fn(2, |i, j| rows[i][j]).expect("dimension 2 is supported")
    }

    pub fn from_rows4(rows: [[Complex; 4]; 4]) -> Self {
        Self::from_fn(4, |i, j| rows[i][j]).expect("dimension 4 is supported")
    }

    pub fn diag2(d0: Complex, d1: Complex) -> Self {
        Self::from_rows2([[d0, ZERO], [ZERO, d1]])
    }

    /// `|u⟩⟨w|`.
    pub fn outer(u: &CVector, w: &CVector) -> Self {
        Self::from_fn(u.dim(), |i, j| u[i] * w[j].conj()).expect("vector dimension is valid")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_finite(&self) -> bool {
        self.entries().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.entries().map(|z| z.norm()).fold(0.0, f64::max)
    }

    fn entries(&self) -> impl Iterator<Item = &Complex> {
        self.data[..self.dim * MAX_DIM]
            .chunks(MAX_DIM)
            .flat_map(move |row| &row[..self.dim])
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        (*self - *other).max_abs()
    }

    pub fn scale(&self, s: Complex) -> Self {
        let mut out = *self;
        out.data.iter_mut().for_each(|z| *z *= s);
        out
    }

    pub fn adjoint(&self) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            for j in 0..self.dim {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn det2(&self) -> Result<Complex> {
        if self.dim != 2 {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: 2,
            });
        }
        Ok(self[(0, 0)] * self[(1, 1)] - self[(0, 1)] * self[(1, 0)])
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: rhs.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n)?;
        for i in 0..n {
            for k in 0..n {
                let aik = self[(i, k)];
                for j in 0..n {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, v: &CVector) -> Result<CVector> {
        if self.dim != v.dim() {
            return Err(Error::DimensionMismatch {
                left: self.dim,
                right: v.dim(),
            });
        }
        let mut out = CVector::zeros(self.dim)?;
        for i in 0..self.dim {
            out[i] = (0..self.dim).map(|j| self[(i, j)] * v[j]).sum();
        }
        Ok(out)
    }

    /// `A ρ A†`.
    pub fn sandwich(&self, rho: &Self) -> Result<Self> {
        self.matmul(rho)?.matmul(&self.adjoint())
    }
}

/// Checked matrix product.
pub fn mat_mul(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    a.matmul(b)
}

impl Index<(usize, usize)> for CMatrix {
    type Output = Complex;

    fn index(&self, (i, j): (usize, usize)) -> &Complex {
        assert!(i < self.dim && j < self.dim, "index out of range");
        &self.data[i * MAX_DIM + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex {
        assert!(i < self.dim && j < self.dim, "index out of range");
        &mut self.data[i * MAX_DIM + j]
    }
}

/// Panics on dimension mismatch; use [`mat_mul`] for a checked product.
impl Mul for CMatrix {
    type Output = CMatrix;

    fn mul(self, rhs: CMatrix) -> CMatrix {
        self.matmul(&rhs).expect("matrix dimensions agree")
    }
}

impl Add for CMatrix {
    type Output = CMatrix;

    fn add(mut self, rhs: CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.data
            .iter_mut()
            .zip(rhs.data)
            .for_each(|(a, b)| *a += b);
        self
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;

    fn sub(mut self, rhs: CMatrix) -> CMatrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        self.data
            .iter_mut()
            .zip(rhs.data)
            .for_each(|(a, b)| *a -= b);
        self
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<Complex>> = (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self[(i, j)]).collect())
            .collect();
        f.debug_struct("CMatrix").field("rows", &rows).finish()
    }
}

/// Complex column vector of dimension 2 or 4.
#[derive(Clone, Copy, PartialEq)]
pub struct CVector {
    dim: usize,
    data: [Complex; MAX_DIM],
}

impl CVector {
    pub fn zeros(dim: usize) -> Result<Self> {
        check_dim(dim)?;
        Ok(Self {
            dim,
            data: [ZERO; MAX_DIM],
        })
    }

    pub fn from_slice(entries: &[Complex]) -> Result<Self> {
        let mut v = Self::zeros(entries.len())?;
        v.data[..entries.len()].copy_from_slice(entries);
        Ok(v)
    }

    pub fn new2(x0: Complex, x1: Complex) -> Self {
        Self {
            dim: 2,
            data: [x0, x1, ZERO, ZERO],
        }
    }

    /// Standard basis vector `e_index`.
    pub fn basis(dim: usize, index: usize) -> Result<Self> {
        let mut v = Self::zeros(dim)?;
        if index >= dim {
            return Err(Error::InvalidParameter(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        v.data[index] = ONE;
        Ok(v)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex] {
        &self.data[..self.dim]
    }

    /// Inner product `⟨self|other⟩`, antilinear in `self`.
    pub fn dot(&self, other: &Self) -> Complex {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.as_slice()
            .iter()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(&self, s: Complex) -> Self {
        let mut out = *self;
        out.data.iter_mut().for_each(|z| *z *= s);
        out
    }

    pub fn normalized(&self) -> Self {
        self.scale(Complex::from(1.0 / self.norm()))
    }

    /// `⟨self|m|other⟩`.
    pub fn sandwich(&self, m: &CMatrix, other: &Self) -> Complex {
        self.dot(&m.apply(other).expect("dimension mismatch"))
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        self.as_slice()
            .iter()
            .zip(other.as_slice())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

impl Index<usize> for CVector {
    type Output = Complex;

    fn index(&self, i: usize) -> &Complex {
        &self.as_slice()[i]
    }
}

impl IndexMut<usize> for CVector {
    fn index_mut(&mut self, i: usize) -> &mut Complex {
        assert!(i < self.dim, "index out of range");
        &mut self.data[i]
    }
}

impl fmt::Debug for CVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.as_slice()).finish()
    }
}

//! Dense complex linear algebra: Hermitian part, eigendecomposition,
//! singular values and plane rotations.
//!
//! Everything here is deterministic: no randomized pivoting, fixed sweep
//! order, so repeated runs on the same input produce identical bits.

mod eigen;
mod svd;

pub use eigen::{eigh, HermitianEigen};
pub use svd::{singular_values, smallest_singular_value};

use num_complex::Complex64;
use thiserror::Error;

/// Relative tolerance for accepting a matrix as Hermitian input.
pub const EPS_HERM: f64 = 1e-10;

/// Target relative accuracy of the Jacobi eigensolver.
pub const EPS_EIG: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("matrix must be square, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix has a non-finite entry at ({row},{col})")]
    NonFinite { row: usize, col: usize },
    #[error(
        "matrix is not Hermitian: max |a_ij - conj(a_ji)| = {residual:.3e} exceeds {tolerance:.3e}"
    )]
    NotHermitian { residual: f64, tolerance: f64 },
    #[error("eigensolver did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("matrix dimension must be positive")]
    EmptyMatrix,
    #[error("rank k={k} out of range for dimension n={n}")]
    RankOutOfRange { k: usize, n: usize },
}

/// Dense complex matrix in row-major order.
///
/// Construction checks that every entry is finite; all numeric comparisons
/// elsewhere are tolerance-based.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self, LinalgError> {
        if rows == 0 || cols == 0 {
            return Err(LinalgError::EmptyMatrix);
        }
        assert_eq!(data.len(), rows * cols, "data length must be rows*cols");
        for (idx, z) in data.iter().enumerate() {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(LinalgError::NonFinite {
                    row: idx / cols,
                    col: idx % cols,
                });
            }
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Builds a square matrix from real entries given as rows.
    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "rows must form a square matrix");
            data.extend(r.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(n, n, data)
    }

    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, LinalgError> {
        let n = rows.len();
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "all rows must have equal length");
            data.extend_from_slice(r);
        }
        Self::new(n, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Dimension of a square matrix.
    ///
    /// Panics if the matrix is rectangular; callers validate with
    /// [`ComplexMatrix::require_square`] first when the input is external.
    pub fn dim(&self) -> usize {
        assert_eq!(self.rows, self.cols, "dim() requires a square matrix");
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn require_square(&self) -> Result<usize, LinalgError> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.data[i * self.cols + j] = v;
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.data
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j).conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[j * self.rows + i] = self.get(i, j);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "inner dimensions must agree");
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(l, j);
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a + b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a - b)
            .collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        let data = self.data.iter().map(|a| a * factor).collect();
        Self {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| self.get(i, j) * x[j])
                    .sum::<Complex64>()
            })
            .collect()
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Maximum of |a_ij - conj(a_ji)| over all pairs; zero for Hermitian.
    pub fn hermitian_residual(&self) -> f64 {
        let n = self.rows.min(self.cols);
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// True when every entry is real and >= -eps.
    pub fn is_nonnegative(&self, eps: f64) -> bool {
        self.data.iter().all(|z| z.im.abs() <= eps && z.re >= -eps)
    }

    pub fn is_real(&self, eps: f64) -> bool {
        self.data.iter().all(|z| z.im.abs() <= eps)
    }

    pub fn approx_eq(&self, other: &Self, eps: f64) -> bool {
        (self.rows, self.cols) == (other.rows, other.cols)
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| (a - b).norm() <= eps)
    }

    /// Max-abs norm of the difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Applies a symmetric permutation: returns B with B[i][j] = A[perm[i]][perm[j]].
    pub fn permute_symmetric(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        assert_eq!(perm.len(), n);
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(perm[i], perm[j]));
            }
        }
        out
    }
}

/// Hermitian part `(A + A*)/2`.
///
/// The result is Hermitian by construction: symmetric entry pairs are
/// averaged once and mirrored, and the diagonal imaginary parts are dropped.
pub fn hermitian_part(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.dim();
    let mut h = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        h.set(i, i, Complex64::new(a.get(i, i).re, 0.0));
        for j in (i + 1)..n {
            let v = (a.get(i, j) + a.get(j, i).conj()) * 0.5;
            h.set(i, j, v);
            h.set(j, i, v.conj());
        }
    }
    h
}

/// Entrywise multiplication by `e^{i theta}`.
pub fn rotate(a: &ComplexMatrix, theta: f64) -> ComplexMatrix {
    a.scale(Complex64::from_polar(1.0, theta))
}

/// A matrix with (approximately) orthonormal columns, `X* X = I_k`.
#[derive(Debug, Clone)]
pub struct Isometry {
    matrix: ComplexMatrix,
}

impl Isometry {
    /// Wraps a candidate after checking `max |X*X - I| <= eps`.
    pub fn new(matrix: ComplexMatrix, eps: f64) -> Option<Self> {
        if matrix.cols() > matrix.rows() {
            return None;
        }
        let candidate = Self { matrix };
        (candidate.orthonormal_residual() <= eps).then_some(candidate)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }

    /// `max |X*X - I|`.
    pub fn orthonormal_residual(&self) -> f64 {
        let k = self.matrix.cols();
        let gram = self.matrix.adjoint().mul(&self.matrix);
        gram.max_abs_diff(&ComplexMatrix::identity(k))
    }

    /// `max |X*AX - z I|`, the compression residual at `z`.
    pub fn compression_residual(&self, a: &ComplexMatrix, z: Complex64) -> f64 {
        let k = self.matrix.cols();
        let m = self.matrix.adjoint().mul(&a.mul(&self.matrix));
        m.max_abs_diff(&ComplexMatrix::identity(k).scale(z))
    }
}

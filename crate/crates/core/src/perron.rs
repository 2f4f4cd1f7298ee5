//! Classical spectral data of a nonnegative irreducible matrix: the Perron
//! root and vector, the eigenvalues of maximum modulus, and the maximal
//! elements of the classical numerical range for cross-validation against
//! the rank-range computations.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{eigh, hermitian_part, smallest_singular_value, ComplexMatrix, LinalgError};
use crate::range::{maximal_elements, MaximalSet, RangeError};
use crate::structure::{imprimitivity_index, is_irreducible};

/// Residual tolerance for certified eigenpairs, scaled by `(1 + rho)`.
pub const EPS_POW: f64 = 1e-7;

const POWER_TOL: f64 = 1e-12;
const POWER_MAX_ITER: usize = 100_000;

#[derive(Debug, Error)]
pub enum PerronError {
    #[error("matrix has a negative or non-real entry")]
    NotNonnegative,
    #[error("matrix is not irreducible")]
    NotIrreducible,
    #[error("power iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error(
        "maximum-modulus eigenvalue candidate failed certification: sigma_min = {residual:.3e}"
    )]
    UncertifiedEigenvalue { residual: f64 },
    #[error("top eigenvector of the Hermitian part is not entrywise positive")]
    NonPositiveVector,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Range(#[from] RangeError),
}

/// Perron data of a nonnegative irreducible matrix.
#[derive(Debug, Clone)]
pub struct PerronData {
    /// Spectral radius.
    pub rho: f64,
    /// Positive unit eigenvector at `rho`.
    pub perron_vector: Vec<f64>,
    /// All eigenvalues of modulus `rho`: `rho * e^{2 pi i t / q}`.
    pub max_eigenvalues: Vec<Complex64>,
    /// Number of eigenvalues of maximum modulus (the imprimitivity index).
    pub q_spectral: usize,
}

/// Spectral radius, Perron vector and the maximum-modulus eigenvalues.
///
/// The Perron pair comes from power iteration on `A + I`; the shift makes
/// the iteration primitive, killing the rotation among the q maximal
/// eigenvalues. Each claimed eigenvalue `rho e^{2 pi i t / q}` is certified
/// by a smallest-singular-value residual, not by a general eigensolver.
pub fn perron(a: &ComplexMatrix) -> Result<PerronData, PerronError> {
    if !a.is_nonnegative(0.0) {
        return Err(PerronError::NotNonnegative);
    }
    if !is_irreducible(a) {
        return Err(PerronError::NotIrreducible);
    }
    let n = a.dim();
    let q = imprimitivity_index(a).map_err(|_| PerronError::NotIrreducible)?;

    // Power iteration on A + I with the deterministic all-ones start.
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut rho_shifted = 0.0;
    let mut converged = false;
    for _ in 0..POWER_MAX_ITER {
        let mut y = vec![0.0f64; n];
        for i in 0..n {
            let mut acc = x[i]; // the +I shift
            for j in 0..n {
                acc += a.get(i, j).re * x[j];
            }
            y[i] = acc;
        }
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        for v in &mut y {
            *v /= norm;
        }
        rho_shifted = norm;
        let delta = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = y;
        if delta <= POWER_TOL {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(PerronError::NoConvergence {
            iterations: POWER_MAX_ITER,
        });
    }
    let rho = (rho_shifted - 1.0).max(0.0);

    let eps = EPS_POW * (1.0 + rho);
    let max_eigenvalues: Vec<Complex64> = (0..q)
        .map(|t| Complex64::from_polar(rho, 2.0 * std::f64::consts::PI * t as f64 / q as f64))
        .collect();
    for mu in &max_eigenvalues {
        let shifted = a.sub(&ComplexMatrix::identity(n).scale(*mu));
        let sigma = smallest_singular_value(&shifted)?;
        if sigma > eps {
            return Err(PerronError::UncertifiedEigenvalue { residual: sigma });
        }
    }

    Ok(PerronData {
        rho,
        perron_vector: x,
        max_eigenvalues,
        q_spectral: q,
    })
}

impl PerronData {
    /// `max_i |A x - rho x|_i` for the stored Perron pair.
    pub fn pair_residual(&self, a: &ComplexMatrix) -> f64 {
        let n = a.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            let mut acc = 0.0;
            for j in 0..n {
                acc += a.get(i, j).re * self.perron_vector[j];
            }
            worst = worst.max((acc - self.rho * self.perron_vector[i]).abs());
        }
        worst
    }
}

/// Maximal elements of the classical numerical range (rank 1), validated
/// against the imprimitivity index: exactly q points with one on the
/// positive real axis.
pub fn issos_maximal_set(a: &ComplexMatrix, m: usize) -> Result<MaximalSet, PerronError> {
    if !a.is_nonnegative(0.0) {
        return Err(PerronError::NotNonnegative);
    }
    if !is_irreducible(a) {
        return Err(PerronError::NotIrreducible);
    }
    Ok(maximal_elements(a, 1, m, None)?)
}

/// Positive unit vector attaining the numerical radius of a nonnegative
/// irreducible matrix: the top eigenvector of the Hermitian part (then
/// `x* A x = lambda_1(H(A)) = r(A)`).
pub fn issos_positive_vector(a: &ComplexMatrix) -> Result<Vec<f64>, PerronError> {
    if !a.is_nonnegative(0.0) {
        return Err(PerronError::NotNonnegative);
    }
    if !is_irreducible(a) {
        return Err(PerronError::NotIrreducible);
    }
    let n = a.dim();
    let eig = eigh(&hermitian_part(a))?;
    let mut x: Vec<f64> = (0..n).map(|i| eig.eigenvectors.get(i, 0).re).collect();
    // The top eigenvector of a real symmetric matrix can be taken real; the
    // imaginary parts are solver roundoff.
    let imag_max = (0..n)
        .map(|i| eig.eigenvectors.get(i, 0).im.abs())
        .fold(0.0, f64::max);
    if imag_max > 1e-8 {
        return Err(PerronError::NonPositiveVector);
    }
    if x.iter().sum::<f64>() < 0.0 {
        for v in &mut x {
            *v = -*v;
        }
    }
    let norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
    for v in &mut x {
        *v /= norm;
    }
    if x.iter().any(|&v| v <= 0.0) {
        return Err(PerronError::NonPositiveVector);
    }
    Ok(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cyclic_permutation_perron_data() {
        for n in [3, 5, 7] {
            let p = fixtures::cyclic_permutation(n);
            let data = perron(&p).unwrap();
            assert!((data.rho - 1.0).abs() <= 1e-10);
            assert_eq!(data.q_spectral, n);
            let uniform = 1.0 / (n as f64).sqrt();
            for v in &data.perron_vector {
                assert!((v - uniform).abs() <= 1e-10);
            }
            assert!(data.pair_residual(&p) <= 1e-9);
        }
    }

    /// Largest real root of x^6 - x^2 - x - 1 by bisection; independent of
    /// the power-iteration path.
    fn companion_root_oracle() -> f64 {
        let f = |x: f64| x.powi(6) - x * x - x - 1.0;
        let (mut lo, mut hi) = (1.0, 2.0);
        assert!(f(lo) < 0.0 && f(hi) > 0.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn primitive_fixture_rho_matches_polynomial_root() {
        let b = fixtures::example3_b();
        let data = perron(&b).unwrap();
        assert_eq!(data.q_spectral, 1);
        assert!((data.rho - companion_root_oracle()).abs() <= 1e-9);
    }

    #[test]
    fn imprimitive_fixture_has_four_max_eigenvalues() {
        let a = fixtures::example3_a();
        let data = perron(&a).unwrap();
        assert_eq!(data.q_spectral, 4);
        assert_eq!(data.max_eigenvalues.len(), 4);
        for v in &data.perron_vector {
            assert!(*v > 0.0);
        }
        // Row-sum bounds on the spectral radius.
        let row_sums: Vec<f64> = (0..8)
            .map(|i| (0..8).map(|j| a.get(i, j).re).sum())
            .collect();
        let min = row_sums.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = row_sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(min - 1e-9 <= data.rho && data.rho <= max + 1e-9);
    }

    #[test]
    fn rejects_bad_inputs() {
        let neg = ComplexMatrix::from_real_rows(&[vec![0.0, -1.0], vec![1.0, 0.0]]).unwrap();
        assert!(matches!(perron(&neg), Err(PerronError::NotNonnegative)));
        let reducible = ComplexMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert!(matches!(
            perron(&reducible),
            Err(PerronError::NotIrreducible)
        ));
    }

    #[test]
    fn issos_set_sizes() {
        let set = issos_maximal_set(&fixtures::cyclic_permutation(5), 720).unwrap();
        assert_eq!(set.count(), 5);
        let set_b = issos_maximal_set(&fixtures::example3_b(), 720).unwrap();
        assert_eq!(set_b.count(), 1);
    }

    #[test]
    fn issos_vector_of_cyclic_permutation_is_uniform() {
        let x = issos_positive_vector(&fixtures::cyclic_permutation(4)).unwrap();
        for v in &x {
            assert!((v - 0.5).abs() <= 1e-10);
        }
    }

    #[test]
    fn issos_vector_attains_numerical_radius() {
        let a = fixtures::example1();
        let x = issos_positive_vector(&a).unwrap();
        // x^T A x equals lambda_1(H(A)).
        let eig = eigh(&hermitian_part(&a)).unwrap();
        let mut quad = 0.0;
        for i in 0..8 {
            for j in 0..8 {
                quad += x[i] * a.get(i, j).re * x[j];
            }
        }
        assert!((quad - eig.eigenvalues[0]).abs() <= 1e-8);
    }

    #[test]
    fn one_by_one_positive_scalar() {
        let a = ComplexMatrix::from_real_rows(&[vec![3.5]]).unwrap();
        let data = perron(&a).unwrap();
        assert!((data.rho - 3.5).abs() <= 1e-12);
        assert_eq!(data.q_spectral, 1);
        assert_eq!(issos_positive_vector(&a).unwrap(), vec![1.0]);
    }
}

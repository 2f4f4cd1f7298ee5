//! Singular values via the Hermitian embedding `[[0, A], [A*, 0]]`.
//!
//! The embedding's spectrum is `{+sigma_j} ∪ {-sigma_j}` padded with zeros,
//! so the leading `min(m, p)` eigenvalues are exactly the singular values.

use super::{eigh, ComplexMatrix, LinalgError};

/// Singular values of a rectangular complex matrix, sorted descending.
pub fn singular_values(a: &ComplexMatrix) -> Result<Vec<f64>, LinalgError> {
    let (m, p) = (a.rows(), a.cols());
    let n = m + p;
    let mut embed = ComplexMatrix::zeros(n, n);
    for i in 0..m {
        for j in 0..p {
            let v = a.get(i, j);
            embed.set(i, m + j, v);
            embed.set(m + j, i, v.conj());
        }
    }
    let eig = eigh(&embed)?;
    Ok(eig.eigenvalues[..m.min(p)]
        .iter()
        .map(|&x| x.max(0.0))
        .collect())
}

/// Smallest singular value; zero exactly when the matrix is rank-deficient.
pub fn smallest_singular_value(a: &ComplexMatrix) -> Result<f64, LinalgError> {
    let sv = singular_values(a)?;
    Ok(*sv.last().expect("at least one singular value"))
}

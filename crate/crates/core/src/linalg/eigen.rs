//! Cyclic Jacobi eigendecomposition for complex Hermitian matrices.
//!
//! Each (p,q) step factors the off-diagonal entry as `r e^{i phi}`, removes
//! the phase with a diagonal unitary and annihilates the remaining real pair
//! with a classical Jacobi rotation. Sweeps run in a fixed row-major order,
//! so the decomposition is deterministic for a fixed input.

use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError, EPS_HERM};

const MAX_SWEEPS: usize = 100;

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are sorted descending; column `j` of `eigenvectors` is the
/// eigenvector paired with `eigenvalues[j]`. Ties keep the order in which the
/// solver produced them.
#[derive(Debug, Clone)]
pub struct HermitianEigen {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl HermitianEigen {
    /// `max_j ||H v_j - lambda_j v_j||_inf`, for validating results.
    pub fn residual(&self, h: &ComplexMatrix) -> f64 {
        let n = h.dim();
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let col: Vec<Complex64> = (0..n).map(|i| self.eigenvectors.get(i, j)).collect();
            let hv = h.mul_vec(&col);
            for i in 0..n {
                worst = worst.max((hv[i] - col[i] * self.eigenvalues[j]).norm());
            }
        }
        worst
    }

    /// `max |V*V - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let n = self.eigenvectors.dim();
        self.eigenvectors
            .adjoint()
            .mul(&self.eigenvectors)
            .max_abs_diff(&ComplexMatrix::identity(n))
    }
}

/// Full eigendecomposition of a Hermitian matrix.
///
/// Rejects inputs whose Hermitian residual exceeds `EPS_HERM * (1 + max|a|)`.
pub fn eigh(h: &ComplexMatrix) -> Result<HermitianEigen, LinalgError> {
    let n = h.require_square()?;
    let scale = h.max_abs();
    let herm_tol = EPS_HERM * (1.0 + scale);
    let residual = h.hermitian_residual();
    if residual > herm_tol {
        return Err(LinalgError::NotHermitian {
            residual,
            tolerance: herm_tol,
        });
    }

    let mut a = h.clone();
    // Work on an exactly Hermitian copy so roundoff in the input cannot bias
    // the sweeps.
    for i in 0..n {
        a.set(i, i, Complex64::new(a.get(i, i).re, 0.0));
        for j in (i + 1)..n {
            let v = (a.get(i, j) + a.get(j, i).conj()) * 0.5;
            a.set(i, j, v);
            a.set(j, i, v.conj());
        }
    }
    let mut v = ComplexMatrix::identity(n);

    if scale == 0.0 || n == 1 {
        return Ok(sorted_eigen(a, v));
    }

    let stop = 1e-14 * scale * (n as f64);
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        let mut off: f64 = 0.0;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(a.get(p, q).norm());
            }
        }
        if off <= stop {
            converged = true;
            break;
        }

        for p in 0..(n - 1) {
            for q in (p + 1)..n {
                let apq = a.get(p, q);
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                let phase = apq / r;
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                // Unitary J: identity except
                //   J[p][p] = c*phase, J[p][q] = s*phase,
                //   J[q][p] = -s,      J[q][q] = c.
                let jpp = phase * c;
                let jpq = phase * s;

                // A <- A J (columns p and q).
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip * jpp - aiq * s);
                    a.set(i, q, aip * jpq + aiq * c);
                }
                // A <- J* A (rows p and q).
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, jpp.conj() * apj - aqj * s);
                    a.set(q, j, jpq.conj() * apj + aqj * c);
                }
                // The (p,q) pair is annihilated by construction.
                a.set(p, q, Complex64::new(0.0, 0.0));
                a.set(q, p, Complex64::new(0.0, 0.0));
                a.set(p, p, Complex64::new(a.get(p, p).re, 0.0));
                a.set(q, q, Complex64::new(a.get(q, q).re, 0.0));

                // V <- V J.
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip * jpp - viq * s);
                    v.set(i, q, vip * jpq + viq * c);
                }
            }
        }
    }

    if !converged {
        return Err(LinalgError::NoConvergence { sweeps: MAX_SWEEPS });
    }
    Ok(sorted_eigen(a, v))
}

fn sorted_eigen(a: ComplexMatrix, v: ComplexMatrix) -> HermitianEigen {
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    // Stable descending sort: equal eigenvalues keep solver output order.
    order.sort_by(|&i, &j| {
        a.get(j, j)
            .re
            .partial_cmp(&a.get(i, i).re)
            .expect("eigenvalues are finite")
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a.get(i, i).re).collect();
    let mut vectors = ComplexMatrix::zeros(n, n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            vectors.set(i, new_col, v.get(i, old_col));
        }
    }
    HermitianEigen {
        eigenvalues,
        eigenvectors: vectors,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::hermitian_part;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_spectrum() {
        let eig = eigh(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 1.0, 1.0]);
        assert!(eig.unitarity_residual() <= 1e-14);
    }

    #[test]
    fn two_by_two_swap_matrix() {
        let h = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let eig = eigh(&h).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() <= 1e-14);
        assert!((eig.eigenvalues[1] + 1.0).abs() <= 1e-14);
        assert!(eig.residual(&h) <= 1e-14);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]).unwrap();
        assert!(matches!(eigh(&a), Err(LinalgError::NotHermitian { .. })));
    }

    /// Roots of the characteristic cubic of a 3x3 Hermitian matrix, solved in
    /// closed form (trigonometric method). Independent of the Jacobi path.
    fn characteristic_cubic_roots(h: &ComplexMatrix) -> Vec<f64> {
        // det(xI - H) = x^3 + a2 x^2 + a1 x + a0
        let tr: f64 = h.trace().re;
        // Sum of principal 2x2 minors.
        let mut m2 = 0.0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                m2 += h.get(i, i).re * h.get(j, j).re - (h.get(i, j) * h.get(j, i)).re;
            }
        }
        let det = {
            let a = |i: usize, j: usize| h.get(i, j);
            (a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
                - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
                + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0)))
            .re
        };
        let (a2, a1, a0) = (-tr, m2, -det);
        // Depressed cubic t^3 + pt + q with x = t - a2/3.
        let p = a1 - a2 * a2 / 3.0;
        let q = 2.0 * a2.powi(3) / 27.0 - a2 * a1 / 3.0 + a0;
        let shift = -a2 / 3.0;
        // Hermitian => three real roots.
        let mut roots = if p.abs() < 1e-30 {
            let r = -q.cbrt();
            vec![r, r, r]
        } else {
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
            let acos = arg.acos();
            (0..3)
                .map(|k| m * ((acos - 2.0 * std::f64::consts::PI * k as f64) / 3.0).cos())
                .collect()
        };
        for r in &mut roots {
            *r += shift;
        }
        roots.sort_by(|a, b| b.partial_cmp(a).unwrap());
        roots
    }

    #[test]
    fn matches_characteristic_cubic_oracle() {
        // Fixed pseudo-random Hermitian 3x3 matrices.
        let samples = [
            [
                c(0.7, 0.0),
                c(0.3, -1.1),
                c(-0.2, 0.4),
                c(1.9, 0.0),
                c(0.8, 0.1),
                c(-0.6, 0.0),
            ],
            [
                c(-1.2, 0.0),
                c(2.0, 0.5),
                c(0.9, -0.3),
                c(0.4, 0.0),
                c(-1.5, 0.7),
                c(2.2, 0.0),
            ],
            [
                c(3.0, 0.0),
                c(0.1, 0.1),
                c(0.2, -0.9),
                c(-0.8, 0.0),
                c(1.1, -1.3),
                c(0.5, 0.0),
            ],
        ];
        for s in samples {
            let h = ComplexMatrix::from_rows(&[
                vec![s[0], s[1], s[2]],
                vec![s[1].conj(), s[3], s[4]],
                vec![s[2].conj(), s[4].conj(), s[5]],
            ])
            .unwrap();
            let eig = eigh(&h).unwrap();
            let oracle = characteristic_cubic_roots(&h);
            for (got, want) in eig.eigenvalues.iter().zip(&oracle) {
                assert!(
                    (got - want).abs() <= 1e-10,
                    "eigenvalue {got} vs cubic root {want}"
                );
            }
        }
    }

    #[test]
    fn residual_and_unitarity_on_dense_hermitian() {
        // H(A) of a fixed dense complex matrix.
        let a = ComplexMatrix::from_rows(&[
            vec![c(0.2, 0.8), c(-1.0, 0.3), c(0.5, -0.5), c(2.0, 0.0)],
            vec![c(1.4, -0.2), c(0.0, 0.0), c(0.3, 0.3), c(-0.7, 1.1)],
            vec![c(-0.9, 0.6), c(0.8, -1.4), c(1.5, 0.2), c(0.1, 0.1)],
            vec![c(0.4, 0.4), c(-0.3, 0.0), c(1.2, -0.8), c(-2.0, 0.5)],
        ])
        .unwrap();
        let h = hermitian_part(&a);
        let eig = eigh(&h).unwrap();
        let scale = h.max_abs();
        assert!(eig.residual(&h) <= 1e-12 * (1.0 + scale));
        assert!(eig.unitarity_residual() <= 1e-12);
        // Sorted descending.
        for w in eig.eigenvalues.windows(2) {
            assert!(w[0] >= w[1]);
        }
    }
}

//! Best-effort search for an isometry witnessing membership: given z in the
//! rank-k range, find X with orthonormal columns and `X* A X = z I_k`.
//!
//! Multi-start projected gradient descent on the Stiefel manifold (polar
//! retraction) followed by Gauss-Newton polishing. Starts use a fixed seed
//! sequence, so the search is reproducible. A failed search proves nothing:
//! the region is an outer approximation and z may still be a member.

use num_complex::Complex64;

use crate::linalg::{eigh, ComplexMatrix, Isometry};

/// Search budget and seeding; the defaults match the documented budget of
/// 64 starts x 500 iterations.
#[derive(Debug, Clone, Copy)]
pub struct WitnessConfig {
    pub starts: usize,
    /// Total per-start iteration budget (gradient plus Gauss-Newton).
    pub iterations: usize,
    pub seed: u64,
}

impl Default for WitnessConfig {
    fn default() -> Self {
        Self {
            starts: 64,
            iterations: 500,
            seed: 0x5eed_0001,
        }
    }
}

/// SplitMix64: tiny deterministic generator for start matrices.
struct SplitMix64(u64);

impl SplitMix64 {
    fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in [-1, 1).
    fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 52) as f64 * 2.0 - 1.0
    }
}

/// `witness_isometry` with the default budget.
pub fn witness_isometry(
    a: &ComplexMatrix,
    k: usize,
    z: Complex64,
    eps_iso: f64,
) -> Option<Isometry> {
    witness_isometry_with(a, k, z, eps_iso, WitnessConfig::default())
}

/// Searches for an n x k isometry X with `max|X*X - I| <= eps_iso` and
/// `max|X*AX - zI| <= eps_iso`; `None` once the budget is exhausted.
pub fn witness_isometry_with(
    a: &ComplexMatrix,
    k: usize,
    z: Complex64,
    eps_iso: f64,
    config: WitnessConfig,
) -> Option<Isometry> {
    let n = a.require_square().ok()?;
    if k == 0 || k > n {
        return None;
    }
    // Scale-aware interior target so the polish loop can stop early.
    let target = eps_iso.min(1e-10 * (1.0 + a.max_abs()));
    let gd_budget = (config.iterations * 7) / 10;
    let gn_budget = config.iterations - gd_budget;

    for start in 0..config.starts {
        let mut rng = SplitMix64(config.seed ^ ((start as u64 + 1) * 0x9e37_79b9));
        let mut x = ComplexMatrix::zeros(n, k);
        for i in 0..n {
            for j in 0..k {
                x.set(i, j, Complex64::new(rng.next_f64(), rng.next_f64()));
            }
        }
        let Some(mut x) = polar_retract(&x) else {
            continue;
        };

        let mut eta = 0.25 / (1.0 + a.max_abs()).powi(2);
        let mut value = objective(a, &x, z);
        for _ in 0..gd_budget {
            if value.sqrt() <= target {
                break;
            }
            let g = gradient(a, &x, z);
            let Some(candidate) = polar_retract(&x.sub(&g.scale(eta.into()))) else {
                break;
            };
            let candidate_value = objective(a, &candidate, z);
            if candidate_value < value {
                x = candidate;
                value = candidate_value;
                eta *= 1.2;
            } else {
                eta *= 0.5;
                if eta < 1e-18 {
                    break;
                }
            }
        }

        for _ in 0..gn_budget {
            if value.sqrt() <= target {
                break;
            }
            let Some(step) = gauss_newton_step(a, &x, z) else {
                break;
            };
            let mut accepted = false;
            let mut damping = 1.0;
            for _ in 0..25 {
                let Some(candidate) = polar_retract(&x.add(&step.scale(damping.into()))) else {
                    break;
                };
                let candidate_value = objective(a, &candidate, z);
                if candidate_value < value {
                    x = candidate;
                    value = candidate_value;
                    accepted = true;
                    break;
                }
                damping *= 0.5;
            }
            if !accepted {
                break;
            }
        }

        if let Some(witness) = Isometry::new(x, eps_iso) {
            if witness.compression_residual(a, z) <= eps_iso {
                return Some(witness);
            }
        }
    }
    None
}

/// `||X*AX - zI||_F^2`.
fn objective(a: &ComplexMatrix, x: &ComplexMatrix, z: Complex64) -> f64 {
    let m = compression_defect(a, x, z);
    m.entries().iter().map(|v| v.norm_sqr()).sum()
}

fn compression_defect(a: &ComplexMatrix, x: &ComplexMatrix, z: Complex64) -> ComplexMatrix {
    let k = x.cols();
    x.adjoint()
        .mul(&a.mul(x))
        .sub(&ComplexMatrix::identity(k).scale(z))
}

/// Euclidean gradient of the objective: `A X M* + A* X M`.
fn gradient(a: &ComplexMatrix, x: &ComplexMatrix, z: Complex64) -> ComplexMatrix {
    let m = compression_defect(a, x, z);
    a.mul(x).mul(&m.adjoint()).add(&a.adjoint().mul(x).mul(&m))
}

/// Projects X back onto the isometry manifold: `X (X*X)^{-1/2}`.
fn polar_retract(x: &ComplexMatrix) -> Option<ComplexMatrix> {
    let k = x.cols();
    let gram = x.adjoint().mul(x);
    let eig = eigh(&gram).ok()?;
    // Gram eigenvalues are nonnegative up to roundoff; a genuinely tiny one
    // means the columns collapsed and the start is abandoned.
    let mut scaled = ComplexMatrix::zeros(k, k);
    for j in 0..k {
        let lam = eig.eigenvalues[j];
        if lam <= 1e-24 {
            return None;
        }
        let inv_sqrt = 1.0 / lam.sqrt();
        for i in 0..k {
            scaled.set(i, j, eig.eigenvectors.get(i, j) * inv_sqrt);
        }
    }
    Some(x.mul(&scaled.mul(&eig.eigenvectors.adjoint())))
}

/// Levenberg-damped Gauss-Newton step for the residual `X*A dX + dX*(A X) = -M`,
/// solved in the real parametrization of dX.
fn gauss_newton_step(a: &ComplexMatrix, x: &ComplexMatrix, z: Complex64) -> Option<ComplexMatrix> {
    let (n, k) = (x.rows(), x.cols());
    let unknowns = 2 * n * k;
    let residuals = 2 * k * k;
    let m = compression_defect(a, x, z);
    let xta = x.adjoint().mul(a);
    let ax = a.mul(x);

    // Column `c(+part*nk)` of the Jacobian: the linearized defect for the
    // unit (real or imaginary) perturbation of entry c of X.
    let mut jac = vec![0.0f64; residuals * unknowns];
    for col in 0..(n * k) {
        let (row_idx, col_idx) = (col % n, col / n);
        for part in 0..2 {
            let mut dx = ComplexMatrix::zeros(n, k);
            dx.set(
                row_idx,
                col_idx,
                if part == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 1.0)
                },
            );
            let dm = xta.mul(&dx).add(&dx.adjoint().mul(&ax));
            let jcol = col + part * n * k;
            for (r, entry) in dm.entries().iter().enumerate() {
                jac[r * unknowns + jcol] = entry.re;
                jac[(k * k + r) * unknowns + jcol] = entry.im;
            }
        }
    }
    let mut rhs = vec![0.0f64; residuals];
    for (r, entry) in m.entries().iter().enumerate() {
        rhs[r] = -entry.re;
        rhs[k * k + r] = -entry.im;
    }

    // Normal equations (J^T J + lambda I) s = J^T rhs.
    let mut normal = vec![0.0f64; unknowns * unknowns];
    let mut projected = vec![0.0f64; unknowns];
    for r in 0..residuals {
        let row = &jac[r * unknowns..(r + 1) * unknowns];
        for i in 0..unknowns {
            if row[i] == 0.0 {
                continue;
            }
            projected[i] += row[i] * rhs[r];
            for j in i..unknowns {
                normal[i * unknowns + j] += row[i] * row[j];
            }
        }
    }
    let ridge = 1e-12
        * (1.0
            + (0..unknowns)
                .map(|i| normal[i * unknowns + i])
                .fold(0.0, f64::max));
    for i in 0..unknowns {
        normal[i * unknowns + i] += ridge;
        for j in 0..i {
            normal[i * unknowns + j] = normal[j * unknowns + i];
        }
    }
    let solution = cholesky_solve(&mut normal, &projected, unknowns)?;

    let mut step = ComplexMatrix::zeros(n, k);
    for col in 0..(n * k) {
        let (row_idx, col_idx) = (col % n, col / n);
        step.set(
            row_idx,
            col_idx,
            Complex64::new(solution[col], solution[col + n * k]),
        );
    }
    Some(step)
}

/// In-place Cholesky solve of a small SPD system.
fn cholesky_solve(matrix: &mut [f64], rhs: &[f64], n: usize) -> Option<Vec<f64>> {
    for i in 0..n {
        for j in 0..=i {
            let mut sum = matrix[i * n + j];
            for l in 0..j {
                sum -= matrix[i * n + l] * matrix[j * n + l];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                matrix[i * n + i] = sum.sqrt();
            } else {
                matrix[i * n + j] = sum / matrix[j * n + j];
            }
        }
    }
    let mut y = rhs.to_vec();
    for i in 0..n {
        for l in 0..i {
            y[i] -= matrix[i * n + l] * y[l];
        }
        y[i] /= matrix[i * n + i];
    }
    for i in (0..n).rev() {
        for l in (i + 1)..n {
            y[i] -= matrix[l * n + i] * y[l];
        }
        y[i] /= matrix[i * n + i];
    }
    Some(y)
}

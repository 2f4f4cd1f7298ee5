//! Monic matrix polynomials, companion linearization and the rank-k
//! numerical range of a polynomial.
//!
//! A point lambda belongs to the rank-k range of `L` exactly when 0 lies in
//! the rank-k range of the evaluated matrix `L(lambda)`, which reduces the
//! scan to the same support test used for fixed matrices. The companion
//! matrix bounds the search disc, since the polynomial's range is contained
//! in the companion's.

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{eigh, hermitian_part, rotate, ComplexMatrix, LinalgError};
use crate::range::{self, MaximalSet, RangeError};
use crate::structure::{imprimitivity_index, is_irreducible};

/// Extra slack on the companion radius when sizing the scan disc.
const BOUND_MARGIN: f64 = 0.05;
/// Default angular samples per lattice point.
pub const DEFAULT_POLY_SAMPLES: usize = 360;

const TAU: f64 = 2.0 * std::f64::consts::PI;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("matrix polynomial has a coefficient with a negative or non-real entry")]
    NotPerron,
    #[error("companion matrix is not irreducible")]
    NotIrreducible,
    #[error("the polynomial rank range is empty")]
    EmptyRegion,
    #[error("the polynomial rank radius is zero")]
    ZeroRadius,
    #[error("Q*Q differs from the required scaling by {residual:.3e}")]
    BadIsometryScaling { residual: f64 },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Range(#[from] RangeError),
}

/// Monic matrix polynomial `I lambda^m - A_{m-1} lambda^{m-1} - ... - A_0`
/// with n x n coefficients.
#[derive(Debug, Clone)]
pub struct MatrixPolynomial {
    n: usize,
    coefficients: Vec<ComplexMatrix>,
}

impl MatrixPolynomial {
    /// Builds from the coefficient list `A_0, ..., A_{m-1}`.
    pub fn new(coefficients: Vec<ComplexMatrix>) -> Result<Self, LinalgError> {
        assert!(!coefficients.is_empty(), "degree must be at least one");
        let n = coefficients[0].require_square()?;
        for c in &coefficients {
            let cn = c.require_square()?;
            assert_eq!(cn, n, "all coefficients must share one dimension");
        }
        Ok(Self { n, coefficients })
    }

    /// Linear pencil `I lambda - A`.
    pub fn linear(a: ComplexMatrix) -> Result<Self, LinalgError> {
        Self::new(vec![a])
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficient(&self, j: usize) -> &ComplexMatrix {
        &self.coefficients[j]
    }

    /// True when every coefficient is entrywise nonnegative, equivalently
    /// the companion matrix is nonnegative.
    pub fn is_perron(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_nonnegative(0.0))
    }

    /// Horner evaluation of `I lambda^m - sum_j A_j lambda^j`.
    pub fn evaluate(&self, lambda: Complex64) -> ComplexMatrix {
        let m = self.degree();
        let mut acc = ComplexMatrix::identity(self.n).scale(lambda);
        acc = acc.sub(&self.coefficients[m - 1]);
        for j in (0..m - 1).rev() {
            acc = acc.scale(lambda).sub(&self.coefficients[j]);
        }
        acc
    }

    /// The mn x mn companion matrix: identity blocks on the superdiagonal
    /// and the coefficient row `(A_0, ..., A_{m-1})` along the bottom. For
    /// degree one this is just `A_0`.
    pub fn companion(&self) -> ComplexMatrix {
        let (n, m) = (self.n, self.degree());
        if m == 1 {
            return self.coefficients[0].clone();
        }
        let size = m * n;
        let mut c = ComplexMatrix::zeros(size, size);
        for block in 0..m - 1 {
            for i in 0..n {
                c.set(block * n + i, (block + 1) * n + i, Complex64::new(1.0, 0.0));
            }
        }
        for (block, coeff) in self.coefficients.iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    c.set((m - 1) * n + i, block * n + j, coeff.get(i, j));
                }
            }
        }
        c
    }

    /// Largest coefficient magnitude, used for scale-aware tolerances.
    pub fn coefficient_scale(&self) -> f64 {
        self.coefficients
            .iter()
            .map(ComplexMatrix::max_abs)
            .fold(0.0, f64::max)
    }
}

/// Default membership slack for the polynomial support test.
pub fn default_eps_mem(l: &MatrixPolynomial) -> f64 {
    1e-8 * (1.0 + l.coefficient_scale())
}

/// Bound on `||L(lambda + h) - L(lambda)||_2 / |h|` over the disc of radius
/// `r`, used to widen the lattice membership test so cells whose
/// neighborhood can intersect the range are kept.
fn lipschitz_bound(l: &MatrixPolynomial, r: f64) -> f64 {
    let (n, m) = (l.dimension(), l.degree());
    let mut lip = m as f64 * r.powi(m as i32 - 1);
    for j in 1..m {
        lip += j as f64 * n as f64 * l.coefficient(j).max_abs() * r.powi(j as i32 - 1);
    }
    lip.max(1.0)
}

/// Membership test `lambda in Lambda_k(L)`, i.e. `0 in Lambda_k(L(lambda))`:
/// the k-th support value of the evaluated matrix stays `>= -eps_mem` in
/// every sampled direction. One-sided like the fixed-matrix test.
pub fn contains_poly(
    l: &MatrixPolynomial,
    k: usize,
    lambda: Complex64,
    m_theta: usize,
    eps_mem: f64,
) -> Result<bool, PolyError> {
    let n = l.dimension();
    if k == 0 || k > n {
        return Err(PolyError::Range(RangeError::RankOutOfRange { k, n }));
    }
    let evaluated = l.evaluate(lambda);
    for i in 0..m_theta {
        let theta = TAU * i as f64 / m_theta as f64;
        let eig = eigh(&hermitian_part(&rotate(&evaluated, theta))).map_err(PolyError::Linalg)?;
        if eig.eigenvalues[k - 1] < -eps_mem {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Boolean lattice approximation of the polynomial rank range.
#[derive(Debug, Clone)]
pub struct PolyRegion {
    /// Lattice spacing.
    pub delta: f64,
    /// Lattice indices run over `-half..=half` on each axis.
    pub half: i64,
    /// Scan disc radius; at least the companion rank-1 radius.
    pub bounding_radius: f64,
    /// Membership slack actually used by the scan: the strict tolerance
    /// widened by the lattice half-diagonal times the polynomial's local
    /// Lipschitz bound, so zero-area ranges still register.
    pub scan_tolerance: f64,
    /// Row-major membership over `(ix, iy)`.
    inside: Vec<bool>,
}

impl PolyRegion {
    fn index(&self, ix: i64, iy: i64) -> Option<usize> {
        if ix.abs() > self.half || iy.abs() > self.half {
            return None;
        }
        let width = (2 * self.half + 1) as usize;
        Some(((iy + self.half) as usize) * width + (ix + self.half) as usize)
    }

    pub fn is_inside(&self, ix: i64, iy: i64) -> bool {
        self.index(ix, iy).is_some_and(|i| self.inside[i])
    }

    /// All inside lattice points as complex numbers.
    pub fn inside_points(&self) -> Vec<Complex64> {
        let mut out = Vec::new();
        for iy in -self.half..=self.half {
            for ix in -self.half..=self.half {
                if self.is_inside(ix, iy) {
                    out.push(Complex64::new(
                        ix as f64 * self.delta,
                        iy as f64 * self.delta,
                    ));
                }
            }
        }
        out
    }

    pub fn inside_count(&self) -> usize {
        self.inside.iter().filter(|&&b| b).count()
    }

    /// True when some lattice point within `cells` steps of `z`'s cell is
    /// inside; the lattice-tolerant membership used by invariance checks.
    pub fn is_inside_near(&self, z: Complex64, cells: i64) -> bool {
        let ix = (z.re / self.delta).round() as i64;
        let iy = (z.im / self.delta).round() as i64;
        for dy in -cells..=cells {
            for dx in -cells..=cells {
                if self.is_inside(ix + dx, iy + dy) {
                    return true;
                }
            }
        }
        false
    }
}

/// Scans the companion-bounded disc on a lattice of spacing `delta`,
/// marking points whose evaluated matrix passes the rank-k membership test.
/// Points are pre-filtered through the companion's support profile (the
/// polynomial range is contained in the companion range), which prunes most
/// of the disc with a single profile.
pub fn region_scan(
    l: &MatrixPolynomial,
    k: usize,
    delta: f64,
    m_theta: usize,
) -> Result<PolyRegion, PolyError> {
    assert!(delta > 0.0, "lattice spacing must be positive");
    let companion = l.companion();
    let table = range::SupportTable::compute(&companion, m_theta)?;
    let companion_profile = table.profile(k.min(companion.dim()))?;
    let r1 = table.profile(1)?.region().radius();
    if !r1.is_finite() {
        // Empty companion range: the polynomial range is empty too.
        return Ok(PolyRegion {
            delta,
            half: 0,
            bounding_radius: 0.0,
            scan_tolerance: default_eps_mem(l),
            inside: vec![false],
        });
    }
    let bounding_radius = r1 * (1.0 + BOUND_MARGIN);
    let half = (bounding_radius / delta).ceil() as i64;
    let scan_tolerance = default_eps_mem(l) + 0.75 * delta * lipschitz_bound(l, bounding_radius);
    // The half-plane membership test is 1-Lipschitz in lambda, so widening
    // the companion filter by the cell half-diagonal keeps every cell whose
    // neighborhood can meet the companion range.
    let eps_filter = companion_profile.eps_geom() + default_eps_mem(l) + 0.75 * delta;

    let width = (2 * half + 1) as usize;
    let inside: Vec<bool> = (0..width * width)
        .into_par_iter()
        .map(|idx| {
            let iy = (idx / width) as i64 - half;
            let ix = (idx % width) as i64 - half;
            let lambda = Complex64::new(ix as f64 * delta, iy as f64 * delta);
            if lambda.norm() > bounding_radius {
                return Ok(false);
            }
            if !companion_profile.contains(lambda, eps_filter) {
                return Ok(false);
            }
            contains_poly(l, k, lambda, m_theta, scan_tolerance)
        })
        .collect::<Result<Vec<bool>, PolyError>>()?;

    Ok(PolyRegion {
        delta,
        half,
        bounding_radius,
        scan_tolerance,
        inside,
    })
}

/// Extends an inside radius along the ray at `phi` by bisection, to
/// tolerance `delta / 100`.
///
/// Bisection prefers the strict membership tolerance; when no strictly
/// inside anchor exists near `r_in` on this ray (a zero-area range cut at a
/// slightly-off angle), it falls back to the lattice-widened tolerance the
/// scan used, which is the best the lattice can certify.
fn refine_ray(
    l: &MatrixPolynomial,
    k: usize,
    phi: f64,
    r_in: f64,
    delta: f64,
    m_theta: usize,
    scan_tolerance: f64,
) -> Result<f64, PolyError> {
    let strict = default_eps_mem(l);
    let mut anchor = None;
    for j in 0..=16 {
        let r = (r_in - j as f64 * delta / 8.0).max(0.0);
        if contains_poly(l, k, Complex64::from_polar(r, phi), m_theta, strict)? {
            anchor = Some(r);
            break;
        }
        if r == 0.0 {
            break;
        }
    }
    let (eps, mut lo) = match anchor {
        Some(r) => (strict, r),
        None => (scan_tolerance, r_in),
    };

    let mut hi = lo + 2.0 * delta;
    // Make sure the upper end is genuinely outside.
    for _ in 0..8 {
        if !contains_poly(l, k, Complex64::from_polar(hi, phi), m_theta, eps)? {
            break;
        }
        hi += 2.0 * delta;
    }
    let tol = delta / 100.0;
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if contains_poly(l, k, Complex64::from_polar(mid, phi), m_theta, eps)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Rank-k radius of the polynomial range: the lattice maximum refined by
/// bisection along the maximizer's ray; `-inf` when the scan finds nothing.
pub fn radius_poly(
    l: &MatrixPolynomial,
    k: usize,
    delta: f64,
    m_theta: usize,
) -> Result<f64, PolyError> {
    let scan = region_scan(l, k, delta, m_theta)?;
    radius_from_scan(l, k, &scan, m_theta)
}

fn radius_from_scan(
    l: &MatrixPolynomial,
    k: usize,
    scan: &PolyRegion,
    m_theta: usize,
) -> Result<f64, PolyError> {
    let points = scan.inside_points();
    let Some(best) = points
        .iter()
        .max_by(|a, b| a.norm().partial_cmp(&b.norm()).unwrap())
    else {
        return Ok(f64::NEG_INFINITY);
    };
    refine_ray(
        l,
        k,
        best.arg(),
        best.norm(),
        scan.delta,
        m_theta,
        scan.scan_tolerance,
    )
}

/// Maximal elements of the rank-k range of a Perron polynomial with
/// irreducible companion: near-maximal lattice points are clustered by
/// angle, each cluster is sharpened by radial bisection, and the result is
/// validated against the companion's imprimitivity index (count, spacing
/// `2 pi / q`, base angle in `{0, pi/q}`). Validation failure downgrades to
/// [`MaximalSet::Generic`] with diagnostics.
pub fn maximal_elements_poly(
    l: &MatrixPolynomial,
    k: usize,
    delta: f64,
    m_theta: usize,
) -> Result<MaximalSet, PolyError> {
    if !l.is_perron() {
        return Err(PolyError::NotPerron);
    }
    let companion = l.companion();
    if !is_irreducible(&companion) {
        return Err(PolyError::NotIrreducible);
    }
    let q = imprimitivity_index(&companion).expect("just checked irreducibility");

    let scan = region_scan(l, k, delta, m_theta)?;
    let points = scan.inside_points();
    if points.is_empty() {
        return Err(PolyError::EmptyRegion);
    }
    let raw_radius = points.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if raw_radius <= 2.0 * delta {
        return Err(PolyError::ZeroRadius);
    }

    let near: Vec<(f64, f64)> = points
        .iter()
        .filter(|z| z.norm() >= raw_radius - 3.0 * delta)
        .map(|z| (z.norm(), z.arg().rem_euclid(TAU)))
        .collect();

    // Angular resolution of the lattice at the boundary radius.
    let gap = 4.0 * delta / raw_radius;
    let mut sorted_angles: Vec<f64> = near.iter().map(|p| p.1).collect();
    sorted_angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let max_gap = sorted_angles
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0, f64::max)
        .max(sorted_angles[0] + TAU - sorted_angles.last().unwrap());
    if max_gap <= gap {
        // Near-maximal points at every angle: the boundary is a circle.
        return Ok(MaximalSet::Circle { radius: raw_radius });
    }

    let clusters = crate::range::cluster_candidates(&near, gap);
    // Radially sharpen each cluster: among (at most 32) member angles pick
    // the one reaching farthest.
    let mut refined: Vec<(f64, f64)> = Vec::with_capacity(clusters.len());
    for members in &clusters {
        let stride = (members.len() / 32).max(1);
        let mut best = (f64::NEG_INFINITY, 0.0);
        for (idx, &(r_member, angle)) in members.iter().enumerate() {
            if idx % stride != 0 {
                continue;
            }
            let reach = refine_ray(l, k, angle, r_member, delta, m_theta, scan.scan_tolerance)?;
            if reach > best.0 {
                best = (reach, angle);
            }
        }
        refined.push(best);
    }
    let radius = refined.iter().map(|p| p.0).fold(0.0, f64::max);
    let points: Vec<Complex64> = refined
        .iter()
        .map(|&(r, angle)| Complex64::from_polar(r, angle))
        .collect();

    // Fold angles modulo 2 pi / q to measure spacing and the base angle.
    let fold: Complex64 = refined
        .iter()
        .map(|&(_, angle)| Complex64::from_polar(1.0, angle * q as f64))
        .sum();
    let base_angle = (fold.arg() / q as f64).rem_euclid(TAU / q as f64);
    let spacing_deviation = refined
        .iter()
        .map(|&(_, angle)| {
            let folded = (angle - base_angle).rem_euclid(TAU / q as f64);
            folded.min(TAU / q as f64 - folded)
        })
        .fold(0.0, f64::max);
    let half_step = std::f64::consts::PI / q as f64;
    let (nearest, base_gap) = [0.0, half_step, TAU / q as f64]
        .iter()
        .map(|&cand| (cand, (base_angle - cand).abs()))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .map(|(cand, gap)| (if cand == TAU / q as f64 { 0.0 } else { cand }, gap))
        .unwrap();

    let eps_angle = gap;
    if refined.len() == q && spacing_deviation <= eps_angle && base_gap <= eps_angle {
        Ok(MaximalSet::Finite {
            radius,
            base_angle,
            count: q,
            points,
            base_angle_snap: range::AngleSnap {
                nearest,
                gap: base_gap,
            },
        })
    } else {
        Ok(MaximalSet::Generic {
            radius,
            points,
            validation: Some(range::FiniteValidation {
                expected_q: q,
                count: refined.len(),
                spacing_deviation,
                base_angle_gap: base_gap,
            }),
        })
    }
}

/// Residual report of the companion embedding identity.
#[derive(Debug, Clone, Copy)]
pub struct EmbeddingReport {
    /// `max |Y*Y - I|`: the stacked matrix is a unit isometry.
    pub r1: f64,
    /// `max |Y* C_L Y - lambda I|`: the companion compression at lambda.
    pub r2: f64,
    /// `max |Qhat* L(lambda) Qhat|` for the unit-isometry rescaling of Q.
    pub r3: f64,
}

/// Checks the embedding `Y(lambda, Q) = (1, lambda, ..., lambda^{m-1})^T (x) Q`
/// relating the polynomial range to the companion range.
///
/// `Q` must satisfy `Q*Q = (1/c) I_k` with `c = sum_j |lambda|^{2j}`, which
/// makes `Y` a unit isometry. The report carries the isometry residual r1,
/// the companion compression residual r2 and the evaluated-polynomial
/// residual r3; r2 and r3 vanish together (up to the `lambda = 0` special
/// case, where the compression holds for any admissible Q).
pub fn embedding_check(
    l: &MatrixPolynomial,
    lambda: Complex64,
    q_matrix: &ComplexMatrix,
    eps_iso: f64,
) -> Result<EmbeddingReport, PolyError> {
    let (n, m) = (l.dimension(), l.degree());
    assert_eq!(q_matrix.rows(), n, "Q must have n rows");
    let k = q_matrix.cols();

    let c: f64 = (0..m).map(|j| lambda.norm_sqr().powi(j as i32)).sum();
    let scaling = ComplexMatrix::identity(k).scale(Complex64::new(1.0 / c, 0.0));
    let residual = q_matrix.adjoint().mul(q_matrix).max_abs_diff(&scaling);
    if residual > eps_iso {
        return Err(PolyError::BadIsometryScaling { residual });
    }

    // Y stacks lambda^j Q blockwise.
    let mut y = ComplexMatrix::zeros(m * n, k);
    let mut power = Complex64::new(1.0, 0.0);
    for block in 0..m {
        for i in 0..n {
            for j in 0..k {
                y.set(block * n + i, j, q_matrix.get(i, j) * power);
            }
        }
        power *= lambda;
    }

    let companion = l.companion();
    let r1 = y
        .adjoint()
        .mul(&y)
        .max_abs_diff(&ComplexMatrix::identity(k));
    let r2 = y
        .adjoint()
        .mul(&companion.mul(&y))
        .max_abs_diff(&ComplexMatrix::identity(k).scale(lambda));
    let q_hat = q_matrix.scale(Complex64::new(c.sqrt(), 0.0));
    let r3 = q_hat
        .adjoint()
        .mul(&l.evaluate(lambda).mul(&q_hat))
        .max_abs_diff(&ComplexMatrix::zeros(k, k));

    Ok(EmbeddingReport { r1, r2, r3 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::range::witness_isometry;

    fn c64(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar_poly(coeffs: &[f64]) -> MatrixPolynomial {
        // Coefficients a_0..a_{m-1} of x^m - a_{m-1} x^{m-1} - ... - a_0.
        MatrixPolynomial::new(
            coeffs
                .iter()
                .map(|&a| ComplexMatrix::from_real_rows(&[vec![a]]).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn evaluate_linear_pencil_at_zero() {
        let a = fixtures::example3_a();
        let l = MatrixPolynomial::linear(a.clone()).unwrap();
        let at_zero = l.evaluate(c64(0.0, 0.0));
        assert!(at_zero.approx_eq(&a.scale(c64(-1.0, 0.0)), 0.0));
    }

    #[test]
    fn evaluate_pure_square() {
        let zero = ComplexMatrix::zeros(2, 2);
        let l = MatrixPolynomial::new(vec![zero.clone(), zero]).unwrap();
        let v = l.evaluate(c64(2.0, 0.0));
        assert!(v.approx_eq(&ComplexMatrix::identity(2).scale(c64(4.0, 0.0)), 1e-14));
    }

    #[test]
    fn scalar_companion_is_fibonacci_matrix() {
        // x^2 - x - 1: companion [[0,1],[1,1]], eigenvalues the golden pair.
        let l = scalar_poly(&[1.0, 1.0]);
        let c = l.companion();
        let expect = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 1.0]]).unwrap();
        assert!(c.approx_eq(&expect, 0.0));
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        for root in [phi, 1.0 - phi] {
            let sigma = crate::linalg::singular_values(&l.evaluate(c64(root, 0.0))).unwrap();
            assert!(
                sigma.last().unwrap() <= &1e-10,
                "root {root} not annihilated"
            );
        }
    }

    #[test]
    fn degree_one_companion_is_the_coefficient() {
        let a = fixtures::example3_b();
        let l = MatrixPolynomial::linear(a.clone()).unwrap();
        assert!(l.companion().approx_eq(&a, 0.0));
    }

    #[test]
    fn perron_polynomial_has_nonnegative_irreducible_companion() {
        let a0 = ComplexMatrix::from_real_rows(&[vec![0.0, 3.0], vec![1.0, 0.0]]).unwrap();
        let a1 = ComplexMatrix::zeros(2, 2);
        let l = MatrixPolynomial::new(vec![a0, a1]).unwrap();
        assert!(l.is_perron());
        let comp = l.companion();
        assert!(comp.is_nonnegative(0.0));
        assert!(is_irreducible(&comp));
        assert_eq!(imprimitivity_index(&comp).unwrap(), 4);
    }

    #[test]
    fn spectrum_matches_companion_for_scalar_polynomials() {
        // Roots 2, -1, 0.5 assembled by Vieta; sigma(L) = sigma(C_L) means
        // evaluation at each root is singular.
        let (r1, r2, r3) = (2.0, -1.0, 0.5);
        let e1 = r1 + r2 + r3;
        let e2 = r1 * r2 + r1 * r3 + r2 * r3;
        let e3 = r1 * r2 * r3;
        // x^3 - e1 x^2 + e2 x - e3 = x^3 - (a2 x^2 + a1 x + a0).
        let l = scalar_poly(&[e3, -e2, e1]);
        for root in [r1, r2, r3] {
            let sigma = crate::linalg::singular_values(&l.evaluate(c64(root, 0.0))).unwrap();
            assert!(sigma.last().unwrap() <= &1e-10);
        }
    }

    #[test]
    fn scalar_membership_tracks_roots() {
        // x^2 - 1: range is {-1, 1} (plus the segment only at rank... the
        // scalar range is exactly the root set).
        let l = scalar_poly(&[1.0, 0.0]);
        let eps = default_eps_mem(&l);
        assert!(contains_poly(&l, 1, c64(1.0, 0.0), 64, eps).unwrap());
        assert!(contains_poly(&l, 1, c64(-1.0, 0.0), 64, eps).unwrap());
        assert!(!contains_poly(&l, 1, c64(0.5, 0.0), 64, eps).unwrap());
        assert!(!contains_poly(&l, 1, c64(0.0, 0.7), 64, eps).unwrap());
    }

    #[test]
    fn linear_pencil_membership_matches_matrix_range() {
        let a = fixtures::example3_a();
        let l = MatrixPolynomial::linear(a.clone()).unwrap();
        let eps = default_eps_mem(&l);
        let m = 180;
        let profile = range::support_profile(&a, 1, m).unwrap();
        for z in [c64(1.0, 0.5), c64(3.0, -1.0), c64(7.5, 0.0), c64(0.0, 4.2)] {
            let in_poly = contains_poly(&l, 1, z, m, eps).unwrap();
            let in_matrix = profile.contains(z, eps);
            assert_eq!(in_poly, in_matrix, "disagreement at {z}");
        }
    }

    #[test]
    fn scan_of_scalar_quadratic_clusters_at_roots() {
        let l = scalar_poly(&[1.0, 0.0]); // x^2 - 1, roots +-1
        let scan = region_scan(&l, 1, 0.02, 90).unwrap();
        let points = scan.inside_points();
        assert!(!points.is_empty());
        for p in &points {
            let near_root = (p - c64(1.0, 0.0)).norm() < 0.05 || (p - c64(-1.0, 0.0)).norm() < 0.05;
            assert!(near_root, "stray inside point {p}");
        }
    }

    #[test]
    fn scalar_radius_matches_root_modulus() {
        let l = scalar_poly(&[4.0, 0.0]); // x^2 - 4, roots +-2
        let delta = 0.05;
        let r = radius_poly(&l, 1, delta, 90).unwrap();
        assert!((r - 2.0).abs() <= delta / 50.0, "radius {r}");
    }

    #[test]
    fn empty_scan_reports_negative_infinity() {
        // diag(1,-1) pencil at rank 2: empty for every lambda.
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let l = MatrixPolynomial::linear(a).unwrap();
        let r = radius_poly(&l, 2, 0.1, 64).unwrap();
        assert_eq!(r, f64::NEG_INFINITY);
    }

    #[test]
    fn cyclic_scalar_polynomial_has_equispaced_maximal_elements() {
        // x^3 - 1: the companion is the 3-cycle, roots are the cube roots of
        // unity.
        let l = scalar_poly(&[1.0, 0.0, 0.0]);
        let set = maximal_elements_poly(&l, 1, 0.02, 90).unwrap();
        let MaximalSet::Finite {
            count,
            base_angle_snap,
            points,
            ..
        } = &set
        else {
            panic!("expected finite set, got {set:?}");
        };
        assert_eq!(*count, 3);
        assert!(base_angle_snap.gap <= 0.05);
        // Off-lattice roots are resolved to lattice tolerance.
        for p in points {
            assert!((p.norm() - 1.0).abs() <= 3.0 * 0.02, "point {p}");
        }
    }

    #[test]
    fn embedding_degenerates_at_degree_one() {
        let a = fixtures::example3_a();
        let l = MatrixPolynomial::linear(a.clone()).unwrap();
        // Rank-1 witness at an interior point: the normalized trace.
        let z = a.trace() / c64(8.0, 0.0);
        let w = witness_isometry(&a, 1, z, 1e-9).expect("interior point witness");
        let report = embedding_check(&l, z, w.matrix(), 1e-8).unwrap();
        assert!(report.r1 <= 1e-8);
        assert!(report.r2 <= 1e-8);
        assert!(report.r3 <= 1e-8);
    }

    #[test]
    fn embedding_at_zero_ignores_higher_blocks() {
        let a0 = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let a1 = ComplexMatrix::from_real_rows(&[vec![0.5, 0.0], vec![0.0, 0.5]]).unwrap();
        let l = MatrixPolynomial::new(vec![a0, a1]).unwrap();
        // lambda = 0: c = 1, Y = (Q; 0), r2 measures |Y* C_L Y| directly.
        let q = ComplexMatrix::from_real_rows(&[
            vec![1.0 / 2.0f64.sqrt(), 0.0],
            vec![0.0, 1.0 / 2.0f64.sqrt()],
        ])
        .unwrap()
        .scale(c64(2.0f64.sqrt(), 0.0));
        // q is the 2x2 identity: Q*Q = I = (1/c) I with c = 1.
        let report = embedding_check(&l, c64(0.0, 0.0), &q, 1e-10).unwrap();
        assert!(report.r1 <= 1e-12);
        // Y* C_L Y picks out the top-left block of C_L, which is zero.
        assert!(report.r2 <= 1e-12);
    }

    #[test]
    fn embedding_rejects_bad_scaling() {
        let l = scalar_poly(&[1.0, 1.0]);
        let q = ComplexMatrix::from_real_rows(&[vec![2.0]]).unwrap();
        assert!(matches!(
            embedding_check(&l, c64(1.0, 0.0), &q, 1e-10),
            Err(PolyError::BadIsometryScaling { .. })
        ));
    }

    #[test]
    fn embedding_residuals_couple_r2_and_r3() {
        // Degree-2 polynomial, witness at a known member of the rank-1
        // range: for the scalar x^2 - 4 at lambda = 2, Q = 1/sqrt(c).
        let l = scalar_poly(&[4.0, 0.0]);
        let lambda = c64(2.0, 0.0);
        let c = 1.0 + lambda.norm_sqr();
        let q = ComplexMatrix::from_real_rows(&[vec![1.0 / c.sqrt()]]).unwrap();
        let report = embedding_check(&l, lambda, &q, 1e-10).unwrap();
        assert!(report.r1 <= 1e-12);
        assert!(report.r2 <= 1e-12, "r2 = {}", report.r2);
        assert!(report.r3 <= 1e-12, "r3 = {}", report.r3);
    }
}

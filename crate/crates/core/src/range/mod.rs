//! The rank-k numerical range through its support function.
//!
//! For each direction `theta`, `h_k(theta)` is the k-th largest eigenvalue
//! of the Hermitian part of `e^{i theta} A`; the range is contained in every
//! half-plane `Re(e^{i theta} z) <= h_k(theta)`, and equals the intersection
//! over all directions. Sampling m uniform directions gives a convex outer
//! approximation that shrinks to the range as m grows.

mod cyclic;
mod geometry;
mod maximal;
mod witness;

pub use cyclic::cyclic_polygon;
pub use geometry::{intersect_sorted, ConvexRegion, HalfPlane};
pub(crate) use maximal::cluster_candidates;
pub use maximal::{
    attainment_angle, check_axis_symmetries, check_rotational_invariance, is_circular_disc,
    maximal_elements, AngleSnap, FiniteValidation, LineSymmetryReport, MaximalSet, SymmetryReport,
};
pub use witness::{witness_isometry, witness_isometry_with, WitnessConfig};

use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

use crate::linalg::{eigh, hermitian_part, rotate, ComplexMatrix, LinalgError};

/// Default number of sampled directions.
pub const DEFAULT_SAMPLES: usize = 720;
/// Minimum allowed number of sampled directions.
pub const MIN_SAMPLES: usize = 16;
/// Cap for adaptive refinement.
pub const MAX_SAMPLES: usize = 11520;
/// Refinement stops once the radius moves less than this between doublings.
pub const RADIUS_REFINE_TOL: f64 = 1e-8;

#[derive(Debug, Error)]
pub enum RangeError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("need at least {MIN_SAMPLES} direction samples, got {got}")]
    TooFewSamples { got: usize },
    #[error("rank k={k} out of range for dimension n={n}")]
    RankOutOfRange { k: usize, n: usize },
    #[error("the rank range is empty")]
    EmptyRegion,
    #[error("the rank-k numerical radius is zero")]
    ZeroRadius,
    #[error("cyclic polygon requires 2k < n, got k={k}, n={n}")]
    RankTooLarge { k: usize, n: usize },
    #[error("operation requires a real matrix")]
    NotRealMatrix,
}

#[inline]
pub(crate) fn sample_angle(i: usize, m: usize) -> f64 {
    2.0 * std::f64::consts::PI * (i as f64) / (m as f64)
}

/// `lambda_k(H(e^{i theta} A))`, the k-th largest eigenvalue of the rotated
/// Hermitian part.
pub fn support_value(a: &ComplexMatrix, k: usize, theta: f64) -> Result<f64, RangeError> {
    let n = a.require_square().map_err(RangeError::Linalg)?;
    if k == 0 || k > n {
        return Err(RangeError::RankOutOfRange { k, n });
    }
    let eig = eigh(&hermitian_part(&rotate(a, theta)))?;
    Ok(eig.eigenvalues[k - 1])
}

/// Sorted spectra of `H(e^{i theta_i} A)` over all sampled directions.
///
/// One table serves every rank at once: the profile for rank k is row k of
/// the table. Directions are evaluated independently (in parallel) and
/// merged by index, so the result does not depend on scheduling.
#[derive(Debug, Clone)]
pub struct SupportTable {
    m: usize,
    /// `spectra[i]` holds the descending eigenvalues at `theta_i = 2 pi i / m`.
    spectra: Vec<Vec<f64>>,
}

impl SupportTable {
    pub fn compute(a: &ComplexMatrix, m: usize) -> Result<Self, RangeError> {
        if m < MIN_SAMPLES {
            return Err(RangeError::TooFewSamples { got: m });
        }
        a.require_square().map_err(RangeError::Linalg)?;
        let spectra = (0..m)
            .into_par_iter()
            .map(|i| eigh(&hermitian_part(&rotate(a, sample_angle(i, m)))).map(|e| e.eigenvalues))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Self { m, spectra })
    }

    /// Doubles the direction count, reusing the existing samples at even
    /// indices and computing only the interleaved odd ones.
    pub fn refine_double(&mut self, a: &ComplexMatrix) -> Result<(), RangeError> {
        let m2 = self.m * 2;
        let fresh = (0..self.m)
            .into_par_iter()
            .map(|i| {
                eigh(&hermitian_part(&rotate(a, sample_angle(2 * i + 1, m2))))
                    .map(|e| e.eigenvalues)
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut spectra = Vec::with_capacity(m2);
        for (even, odd) in self.spectra.drain(..).zip(fresh) {
            spectra.push(even);
            spectra.push(odd);
        }
        self.m = m2;
        self.spectra = spectra;
        Ok(())
    }

    pub fn samples(&self) -> usize {
        self.m
    }

    pub fn dimension(&self) -> usize {
        self.spectra[0].len()
    }

    pub fn angle(&self, i: usize) -> f64 {
        sample_angle(i, self.m)
    }

    /// Support profile for rank `k` (1-based).
    pub fn profile(&self, k: usize) -> Result<SupportProfile, RangeError> {
        let n = self.dimension();
        if k == 0 || k > n {
            return Err(RangeError::RankOutOfRange { k, n });
        }
        Ok(SupportProfile {
            k,
            m: self.m,
            values: self.spectra.iter().map(|row| row[k - 1]).collect(),
        })
    }
}

/// Sampled support function of the rank-k range: `values[i] = h_k(theta_i)`.
#[derive(Debug, Clone)]
pub struct SupportProfile {
    pub k: usize,
    pub m: usize,
    pub values: Vec<f64>,
}

impl SupportProfile {
    pub fn angle(&self, i: usize) -> f64 {
        sample_angle(i, self.m)
    }

    /// Geometry slack scaled to the profile magnitude.
    pub fn eps_geom(&self) -> f64 {
        let h_max = self.values.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
        1e-9 * (1.0 + h_max)
    }

    /// Largest violation of the sampled half-planes at `z`; nonpositive
    /// values certify membership in the outer approximation.
    pub fn max_violation(&self, z: Complex64) -> f64 {
        let mut worst = f64::NEG_INFINITY;
        for (i, &h) in self.values.iter().enumerate() {
            let theta = self.angle(i);
            let excess = z.re * theta.cos() - z.im * theta.sin() - h;
            worst = worst.max(excess);
        }
        worst
    }

    /// One-sided membership test: true certifies membership in the outer
    /// approximation at slack `eps`.
    pub fn contains(&self, z: Complex64, eps: f64) -> bool {
        self.max_violation(z) <= eps
    }

    /// Half-planes sorted by normal angle, ready for intersection.
    fn sorted_planes(&self) -> Vec<HalfPlane> {
        let m = self.m;
        let plane = |i: usize| {
            let theta = self.angle(i);
            HalfPlane {
                nx: theta.cos(),
                ny: -theta.sin(),
                offset: self.values[i],
            }
        };
        let mut planes = Vec::with_capacity(m);
        planes.push(plane(0));
        for i in (1..m).rev() {
            planes.push(plane(i));
        }
        planes
    }

    /// Intersection polygon of the sampled half-planes.
    pub fn region(&self) -> ConvexRegion {
        intersect_sorted(&self.sorted_planes(), self.eps_geom())
    }

    fn region_unverified(&self) -> ConvexRegion {
        geometry::intersect_sorted_unverified(&self.sorted_planes(), self.eps_geom())
    }
}

/// Support profile of `A` for rank `k` over `m` uniform directions.
pub fn support_profile(
    a: &ComplexMatrix,
    k: usize,
    m: usize,
) -> Result<SupportProfile, RangeError> {
    SupportTable::compute(a, m)?.profile(k)
}

/// Outer polygon approximation of the rank-k range.
pub fn region(a: &ComplexMatrix, k: usize, m: usize) -> Result<ConvexRegion, RangeError> {
    Ok(support_profile(a, k, m)?.region())
}

/// One-sided membership test against the sampled support half-planes.
pub fn contains(
    a: &ComplexMatrix,
    k: usize,
    z: Complex64,
    m: usize,
    eps: f64,
) -> Result<bool, RangeError> {
    Ok(support_profile(a, k, m)?.contains(z, eps))
}

/// Rank-k numerical radius from the polygon at `m` directions;
/// `-inf` when the range is empty.
pub fn radius(a: &ComplexMatrix, k: usize, m: usize) -> Result<f64, RangeError> {
    Ok(region(a, k, m)?.radius())
}

/// Result of adaptive refinement: the final table, per-rank polygons and
/// radii, and the direction count reached.
#[derive(Debug)]
pub struct RefinedRange {
    pub table: SupportTable,
    pub samples: usize,
    /// `(k, region, radius)` for each requested rank.
    pub ranks: Vec<(usize, ConvexRegion, f64)>,
}

impl RefinedRange {
    pub fn radius_of(&self, k: usize) -> Option<f64> {
        self.ranks.iter().find(|(kk, _, _)| *kk == k).map(|t| t.2)
    }

    pub fn region_of(&self, k: usize) -> Option<&ConvexRegion> {
        self.ranks.iter().find(|(kk, _, _)| *kk == k).map(|t| &t.1)
    }
}

/// Doubles the direction count, starting from `m0`, until every requested
/// rank's radius moves less than [`RADIUS_REFINE_TOL`], or [`MAX_SAMPLES`]
/// is reached. Boundary accuracy improves as O(1/m^2) for smooth support,
/// so a handful of doublings suffices.
pub fn refined_range(
    a: &ComplexMatrix,
    ks: &[usize],
    m0: usize,
) -> Result<RefinedRange, RangeError> {
    let mut table = SupportTable::compute(a, m0)?;
    // Intermediate ladder levels track the radius trend only; the returned
    // regions at the final level go through the full feasibility pass.
    let quick_radii = |table: &SupportTable| -> Result<Vec<f64>, RangeError> {
        ks.iter()
            .map(|&k| Ok(table.profile(k)?.region_unverified().radius()))
            .collect()
    };
    let mut current = quick_radii(&table)?;
    while table.samples() < MAX_SAMPLES {
        table.refine_double(a)?;
        let next = quick_radii(&table)?;
        let converged =
            current
                .iter()
                .zip(&next)
                .all(|(old, new)| match (old.is_finite(), new.is_finite()) {
                    (false, false) => true,
                    (true, true) => (old - new).abs() < RADIUS_REFINE_TOL,
                    _ => false,
                });
        current = next;
        if converged {
            break;
        }
    }

    let ranks: Vec<(usize, ConvexRegion, f64)> = ks
        .iter()
        .map(|&k| {
            let reg = table.profile(k)?.region();
            let r = reg.radius();
            Ok((k, reg, r))
        })
        .collect::<Result<_, RangeError>>()?;
    Ok(RefinedRange {
        samples: table.samples(),
        table,
        ranks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn support_of_hermitian_at_zero_is_eigenvalue() {
        let a = ComplexMatrix::from_real_rows(&[vec![2.0, 1.0], vec![1.0, -1.0]]).unwrap();
        let eig = eigh(&a).unwrap();
        for k in 1..=2 {
            let h = support_value(&a, k, 0.0).unwrap();
            assert!((h - eig.eigenvalues[k - 1]).abs() <= 1e-13);
        }
    }

    #[test]
    fn support_of_cyclic_permutation_matches_circulant_formula() {
        // H(P_n) is circulant with eigenvalues cos(2 pi t / n).
        for n in [3, 5, 8] {
            let p = fixtures::cyclic_permutation(n);
            let got = support_value(&p, 1, 0.0).unwrap();
            let oracle = (0..n)
                .map(|t| (2.0 * std::f64::consts::PI * t as f64 / n as f64).cos())
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((got - oracle).abs() <= 1e-13);
            assert!((got - 1.0).abs() <= 1e-13);
        }
    }

    #[test]
    fn support_respects_rotation_shift() {
        // h_{e^{i phi} A}(theta) = h_A(theta + phi).
        let a = fixtures::example2();
        let phi = 0.3;
        for k in 1..=3 {
            let lhs = support_value(&rotate(&a, phi), k, 0.5).unwrap();
            let rhs = support_value(&a, k, 0.5 + phi).unwrap();
            assert!((lhs - rhs).abs() <= 1e-12);
        }
    }

    #[test]
    fn profile_shift_under_diagonal_similarity() {
        // For the 5-cycle, rotating by 2 pi / 5 is a diagonal similarity, so
        // the support profile shifts by exactly m/5 samples.
        let p = fixtures::cyclic_permutation(5);
        let m = 720; // multiple of 5
        let base = support_profile(&p, 1, m).unwrap();
        let rotated = support_profile(&rotate(&p, 2.0 * std::f64::consts::PI / 5.0), 1, m).unwrap();
        let shift = m / 5;
        for i in 0..m {
            let d = (rotated.values[i] - base.values[(i + shift) % m]).abs();
            assert!(d <= 1e-12, "shift mismatch at {i}: {d}");
        }
    }

    #[test]
    fn region_of_scalar_matrix_is_a_point() {
        let z0 = c(0.7, -0.4);
        let a = ComplexMatrix::identity(4).scale(z0);
        for k in [1, 2, 4] {
            let reg = region(&a, k, DEFAULT_SAMPLES).unwrap();
            assert!(!reg.empty);
            for v in &reg.vertices {
                assert!((v - z0).norm() <= 1e-6);
            }
        }
    }

    #[test]
    fn region_of_indefinite_diagonal_rank_two_is_empty() {
        // No 2x2 unitary compresses diag(1,-1) to a scalar: the support at
        // theta=0 and theta=pi both equal -1, an infeasible pair.
        let a = ComplexMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let reg = region(&a, 2, 64).unwrap();
        assert!(reg.empty);
        assert_eq!(radius(&a, 2, 64).unwrap(), f64::NEG_INFINITY);
    }

    #[test]
    fn region_of_cycle_matrix_approximates_root_hull() {
        let p = fixtures::cyclic_permutation(5);
        let reg = region(&p, 1, DEFAULT_SAMPLES).unwrap();
        // Every root of unity appears as a polygon vertex.
        let roots: Vec<Complex64> = (0..5)
            .map(|t| Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t as f64 / 5.0))
            .collect();
        for root in &roots {
            assert!(
                reg.vertices.iter().any(|v| (v - root).norm() <= 1e-4),
                "missing hull vertex {root}"
            );
        }
        assert!((reg.radius() - 1.0).abs() <= 1e-6);
    }

    #[test]
    fn contains_region_vertices() {
        let a = fixtures::example3_a();
        let profile = support_profile(&a, 2, 256).unwrap();
        let reg = profile.region();
        for v in &reg.vertices {
            assert!(profile.contains(*v, 1e-9 + profile.eps_geom()));
        }
    }

    #[test]
    fn radius_of_scalar_matrix() {
        let a = ComplexMatrix::identity(3).scale(c(-1.5, 2.0));
        let r = radius(&a, 2, 64).unwrap();
        assert!((r - c(-1.5, 2.0).norm()).abs() <= 1e-9);
    }

    #[test]
    fn refinement_converges_quickly_for_polygonal_range() {
        let p = fixtures::cyclic_permutation(5);
        let refined = refined_range(&p, &[1], 720).unwrap();
        // Corners are reproduced exactly, so refinement stops early.
        assert!(refined.samples <= 2880);
        assert!((refined.radius_of(1).unwrap() - 1.0).abs() <= 1e-8);
    }

    #[test]
    fn too_few_samples_is_rejected() {
        let a = ComplexMatrix::identity(2);
        assert!(matches!(
            region(&a, 1, 8),
            Err(RangeError::TooFewSamples { got: 8 })
        ));
    }

    #[test]
    fn rank_out_of_range_is_rejected() {
        let a = ComplexMatrix::identity(2);
        assert!(matches!(
            support_value(&a, 3, 0.0),
            Err(RangeError::RankOutOfRange { k: 3, n: 2 })
        ));
    }
}

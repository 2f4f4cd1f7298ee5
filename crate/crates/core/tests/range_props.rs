//! Property tests for the rank-range computations.

use num_complex::Complex64;
use proptest::prelude::*;

use numrange::linalg::{eigh, hermitian_part, ComplexMatrix};
use numrange::perron;
use numrange::range::{self, contains, region, support_profile, witness_isometry, WitnessConfig};
use numrange::structure::imprimitivity_index;

fn complex_matrix(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (2..=max_n)
        .prop_flat_map(|n| {
            (
                Just(n),
                proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n * n),
            )
        })
        .prop_map(|(n, entries)| {
            let data: Vec<Complex64> = entries
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect();
            ComplexMatrix::new(n, n, data).unwrap()
        })
}

fn nonnegative_matrix(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (2..=max_n)
        .prop_flat_map(|n| (Just(n), proptest::collection::vec(0.05f64..1.0, n * n)))
        .prop_map(|(n, entries)| {
            let data: Vec<Complex64> = entries
                .into_iter()
                .map(|x| Complex64::new(x, 0.0))
                .collect();
            ComplexMatrix::new(n, n, data).unwrap()
        })
}

const M: usize = 128;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Support profiles are pointwise decreasing in the rank, so the ranges
    /// nest; vertices of the tighter region satisfy the looser constraints.
    #[test]
    fn ranges_nest_by_rank(a in complex_matrix(8)) {
        let n = a.dim();
        let table = range::SupportTable::compute(&a, M).unwrap();
        for k in 2..=n.min(3) {
            let outer = table.profile(k - 1).unwrap();
            let inner = table.profile(k).unwrap();
            for i in 0..M {
                prop_assert!(inner.values[i] <= outer.values[i] + 1e-13);
            }
            let inner_region = inner.region();
            if !inner_region.empty {
                for v in &inner_region.vertices {
                    prop_assert!(outer.contains(*v, 1e-8));
                }
            }
        }
    }

    /// Doubling the sample count only shrinks the region.
    #[test]
    fn refinement_is_monotone(a in complex_matrix(6)) {
        let coarse = support_profile(&a, 1, M).unwrap();
        let mut table = range::SupportTable::compute(&a, M).unwrap();
        table.refine_double(&a).unwrap();
        let fine = table.profile(1).unwrap();
        // Shared samples are reproduced bitwise.
        for i in 0..M {
            prop_assert_eq!(coarse.values[i], fine.values[2 * i]);
        }
        let fine_region = fine.region();
        prop_assert!(!fine_region.empty);
        for v in &fine_region.vertices {
            prop_assert!(coarse.contains(*v, coarse.eps_geom() + 1e-12));
        }
    }

    /// The range only depends on the unitary similarity class: profiles of
    /// U*AU and A agree to solver accuracy.
    #[test]
    fn profile_is_unitarily_invariant(a in complex_matrix(6)) {
        // A deterministic unitary from the input itself: the eigenvector
        // matrix of its Hermitian part.
        let u = eigh(&hermitian_part(&a)).unwrap().eigenvectors;
        let conjugated = u.adjoint().mul(&a.mul(&u));
        let p1 = support_profile(&a, 1, 64).unwrap();
        let p2 = support_profile(&conjugated, 1, 64).unwrap();
        let scale = 1.0 + a.max_abs();
        for i in 0..64 {
            prop_assert!((p1.values[i] - p2.values[i]).abs() <= 1e-10 * scale);
        }
    }

    /// Real scaling and complex translation act on the profile exactly:
    /// h_{s A + b I}(theta) = s h_A(theta) + Re(e^{i theta} b).
    #[test]
    fn profile_scaling_translation_covariance(
        a in complex_matrix(5),
        s in 0.1f64..3.0,
        bre in -1.0f64..1.0,
        bim in -1.0f64..1.0,
    ) {
        let b = Complex64::new(bre, bim);
        let transformed = a.scale(Complex64::new(s, 0.0))
            .add(&ComplexMatrix::identity(a.dim()).scale(b));
        let base = support_profile(&a, 2.min(a.dim()), 64).unwrap();
        let moved = support_profile(&transformed, 2.min(a.dim()), 64).unwrap();
        let scale = 1.0 + a.max_abs() + b.norm();
        for i in 0..64 {
            let theta = base.angle(i);
            let expected = s * base.values[i] + (b.re * theta.cos() - b.im * theta.sin());
            prop_assert!((moved.values[i] - expected).abs() <= 1e-10 * scale);
        }
    }

    /// Spectral radius never exceeds the rank-1 radius for nonnegative
    /// irreducible inputs, and the eigenvalue count of maximum modulus
    /// matches the pattern period.
    #[test]
    fn perron_consistency(a in nonnegative_matrix(6)) {
        let data = perron::perron(&a).unwrap();
        let r1 = range::radius(&a, 1, M).unwrap();
        prop_assert!(data.rho <= r1 + 1e-8);
        prop_assert_eq!(data.q_spectral, imprimitivity_index(&a).unwrap());
        prop_assert!(data.pair_residual(&a) <= 1e-8 * (1.0 + data.rho));
    }
}

/// Geometric covariance under a generic complex affine map: the two outer
/// approximations agree to the sampling overshoot.
#[test]
fn region_covariance_under_complex_affine_map() {
    let a = numrange::fixtures::example2();
    let alpha = Complex64::new(0.8, 0.6);
    let beta = Complex64::new(-0.3, 0.45);
    let transformed = a.scale(alpha).add(&ComplexMatrix::identity(4).scale(beta));
    let direct = region(&transformed, 2, 720).unwrap();
    let mapped_vertices: Vec<Complex64> = region(&a, 2, 720)
        .unwrap()
        .vertices
        .iter()
        .map(|&z| alpha * z + beta)
        .collect();
    let mapped = range::ConvexRegion {
        empty: false,
        vertices: mapped_vertices,
    };
    let d1 = direct.vertex_distance_to(&mapped);
    let d2 = mapped.vertex_distance_to(&direct);
    assert!(d1.max(d2) <= 1e-3, "Hausdorff gap {}", d1.max(d2));
}

/// Inner soundness: every witness the search returns lands inside the outer
/// region at matching tolerance.
#[test]
fn witness_points_lie_in_region() {
    let config = WitnessConfig {
        starts: 24,
        iterations: 400,
        seed: 0xABCDE,
    };
    let samples = [
        numrange::fixtures::cyclic_permutation(5),
        numrange::fixtures::example2(),
        hermitian_part(&numrange::fixtures::example1()),
    ];
    for (idx, a) in samples.iter().enumerate() {
        let n = a.dim();
        let z = a.trace() / Complex64::new(n as f64, 0.0);
        // The normalized trace always lies in the classical range.
        let w = witness_isometry_checked(a, 1, z, config);
        assert!(
            contains(a, 1, w, 512, 1e-8).unwrap(),
            "sample {idx}: witness value {w} escaped the region"
        );
    }

    fn witness_isometry_checked(
        a: &ComplexMatrix,
        k: usize,
        z: Complex64,
        config: WitnessConfig,
    ) -> Complex64 {
        let w = range::witness_isometry_with(a, k, z, 1e-9, config)
            .expect("interior point must be reachable");
        // Report the achieved compression value, not the request.
        let m = w.matrix().adjoint().mul(&a.mul(w.matrix()));
        m.trace() / Complex64::new(k as f64, 0.0)
    }
}

/// The one-sided containment test certifies only the outer approximation:
/// region vertices pass, clearly exterior points fail.
#[test]
fn contains_is_one_sided() {
    let a = numrange::fixtures::example3_a();
    let profile = support_profile(&a, 2, 720).unwrap();
    let reg = profile.region();
    for v in reg.vertices.iter().step_by(7) {
        assert!(profile.contains(*v, profile.eps_geom() + 1e-12));
    }
    let far = Complex64::new(reg.radius() * 2.0, 0.0);
    assert!(!profile.contains(far, 1e-6));
}

#[test]
fn identity_matrix_has_rank_one_witness_at_one() {
    let a = ComplexMatrix::identity(2);
    let w = witness_isometry(&a, 1, Complex64::new(1.0, 0.0), 1e-10).unwrap();
    assert!(w.compression_residual(&a, Complex64::new(1.0, 0.0)) <= 1e-10);
}

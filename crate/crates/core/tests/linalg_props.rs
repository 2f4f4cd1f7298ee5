//! Property tests for the dense linear algebra substrate.

use num_complex::Complex64;
use proptest::prelude::*;

use numrange::linalg::{eigh, hermitian_part, rotate, singular_values, ComplexMatrix};

fn complex_matrix(max_n: usize) -> impl Strategy<Value = ComplexMatrix> {
    (1..=max_n)
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

fn rectangular_matrix() -> impl Strategy<Value = ComplexMatrix> {
    ((1usize..=5), (1usize..=5))
        .prop_flat_map(|(r, c)| {
            (
                Just((r, c)),
                proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), r * c),
            )
        })
        .prop_map(|((r, c), entries)| {
            let data: Vec<Complex64> = entries
                .into_iter()
                .map(|(re, im)| Complex64::new(re, im))
                .collect();
            ComplexMatrix::new(r, c, data).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Residual and unitarity of the eigendecomposition of any Hermitian part.
    #[test]
    fn eigh_residual_and_unitarity(a in complex_matrix(12)) {
        let h = hermitian_part(&a);
        let eig = eigh(&h).unwrap();
        let scale = 1.0 + h.max_abs();
        prop_assert!(eig.residual(&h) <= 1e-12 * scale * h.dim() as f64);
        prop_assert!(eig.unitarity_residual() <= 1e-12);
        for w in eig.eigenvalues.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    /// Singular values agree for A and A*, and are rotation invariant.
    #[test]
    fn singular_value_symmetries(a in rectangular_matrix(), theta in 0.0..std::f64::consts::TAU) {
        let sv = singular_values(&a).unwrap();
        let sv_adj = singular_values(&a.adjoint()).unwrap();
        for (x, y) in sv.iter().zip(&sv_adj) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
        let sv_rot = singular_values(&rotate(&a, theta)).unwrap();
        for (x, y) in sv.iter().zip(&sv_rot) {
            prop_assert!((x - y).abs() <= 1e-10);
        }
    }

    /// Mean bound: the top eigenvalue of H(A) dominates Re(trace)/n.
    #[test]
    fn top_eigenvalue_dominates_mean_trace(a in complex_matrix(10)) {
        let h = hermitian_part(&a);
        let eig = eigh(&h).unwrap();
        let mean = a.trace().re / a.dim() as f64;
        prop_assert!(eig.eigenvalues[0] >= mean - 1e-10);
    }

    /// Rotation composes additively and inverts exactly.
    #[test]
    fn rotation_composition(a in complex_matrix(6), s in 0.0..6.28f64, t in 0.0..6.28f64) {
        let both = rotate(&rotate(&a, s), t);
        let once = rotate(&a, s + t);
        prop_assert!(both.approx_eq(&once, 1e-12 * (1.0 + a.max_abs())));
        let back = rotate(&rotate(&a, s), -s);
        prop_assert!(back.approx_eq(&a, 1e-13 * (1.0 + a.max_abs())));
    }
}

//! Built-in demonstration matrices, shared by the CLI fixture names and the
//! test suites.

use num_complex::Complex64;

use crate::linalg::ComplexMatrix;

/// 8x8 nonnegative irreducible matrix with four eigenvalues of maximum
/// modulus whose rank-2 and rank-3 radii are not attained inside the range.
pub fn example1() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        vec![0.0, 0.0, 3.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        vec![5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        vec![0.0, 0.0, 0.0, 1.0, 9.0, 0.0, 0.0, 6.0],
        vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 4.0, 1.0, 0.0, 0.0, 2.0],
        vec![0.0, 0.0, 1.0, 0.0, 0.0, 3.0, 0.0, 0.0],
        vec![0.0, 5.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    ])
    .expect("static fixture")
}

/// 4x4 complex matrix in 3-cyclic form; its rank ranges are invariant under
/// rotation by 2 pi / 3.
pub fn example2() -> ComplexMatrix {
    let z = |re: f64, im: f64| Complex64::new(re, im);
    ComplexMatrix::from_rows(&[
        vec![z(0.0, 0.0), z(0.0, 0.0), z(0.0, 1.0), z(0.0, 0.0)],
        vec![z(0.0, 0.0), z(0.0, 0.0), z(0.0, -1.0), z(0.0, 0.0)],
        vec![z(0.0, 0.0), z(0.0, 0.0), z(0.0, 0.0), z(2.0, 0.0)],
        vec![z(3.0, 2.0), z(1.0, 0.0), z(0.0, 0.0), z(0.0, 0.0)],
    ])
    .expect("static fixture")
}

/// 8x8 nonnegative irreducible matrix with index of imprimitivity 4; each
/// rank range has four maximal elements spaced by pi/2.
pub fn example3_a() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        vec![0.0, 0.0, 2.0, 0.0, 0.0, 6.0, 0.0, 0.0],
        vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 7.0, 0.0],
        vec![0.0, 0.0, 0.0, 2.0, 3.0, 0.0, 0.0, 4.0],
        vec![0.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        vec![0.0, 3.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 4.0, 0.0, 0.0, 0.0, 2.0],
        vec![0.0, 0.0, 1.0, 0.0, 0.0, 3.0, 0.0, 0.0],
        vec![0.0, 9.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    ])
    .expect("static fixture")
}

/// 6x6 primitive (q = 1) companion-form matrix of x^6 - x^2 - x - 1; its
/// rank-2 range has two conjugate maximal elements.
pub fn example3_b() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        vec![0.0, 1.0, 0.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 1.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 1.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 0.0, 1.0, 0.0],
        vec![0.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        vec![1.0, 1.0, 1.0, 0.0, 0.0, 0.0],
    ])
    .expect("static fixture")
}

/// The n-cyclic permutation matrix: ones on the superdiagonal plus a one in
/// the bottom-left corner. Imprimitive of index n with the n-th roots of
/// unity as spectrum.
pub fn cyclic_permutation(n: usize) -> ComplexMatrix {
    assert!(n >= 1);
    let mut m = ComplexMatrix::zeros(n, n);
    for i in 0..n - 1 {
        m.set(i, i + 1, Complex64::new(1.0, 0.0));
    }
    m.set(n - 1, 0, Complex64::new(1.0, 0.0));
    m
}

/// 4x4 block-shift matrix `[[0, B], [0, 0]]`; every rank range is a
/// circular disc centered at the origin.
pub fn block_shift_demo() -> ComplexMatrix {
    ComplexMatrix::from_real_rows(&[
        vec![0.0, 0.0, 1.0, 2.0],
        vec![0.0, 0.0, 3.0, 1.0],
        vec![0.0, 0.0, 0.0, 0.0],
        vec![0.0, 0.0, 0.0, 0.0],
    ])
    .expect("static fixture")
}

/// Embeds `B` (m x p) as the block-nilpotent `[[0, B], [0, 0]]`.
pub fn block_nilpotent(b: &ComplexMatrix) -> ComplexMatrix {
    let (m, p) = (b.rows(), b.cols());
    let n = m + p;
    let mut out = ComplexMatrix::zeros(n, n);
    for i in 0..m {
        for j in 0..p {
            out.set(i, m + j, b.get(i, j));
        }
    }
    out
}

/// Looks up a fixture by its CLI name.
pub fn by_name(name: &str) -> Option<ComplexMatrix> {
    match name {
        "example1" => Some(example1()),
        "example2" => Some(example2()),
        "example3A" => Some(example3_a()),
        "example3B" => Some(example3_b()),
        "p5" => Some(cyclic_permutation(5)),
        "b-shift-demo" => Some(block_shift_demo()),
        _ => None,
    }
}

/// Names accepted by [`by_name`], in display order.
pub const FIXTURE_NAMES: [&str; 6] = [
    "example1",
    "example2",
    "example3A",
    "example3B",
    "p5",
    "b-shift-demo",
];

//! Closed-form vertices of the rank-k range of the n-cyclic permutation
//! matrix: intersection points of chords of the unit circle.

use num_complex::Complex64;

use super::RangeError;

/// Vertices of the rank-k range of the n-cyclic permutation matrix, for
/// `2k < n`: point t is the intersection of the chords `[z_t, z_{t+k}]` and
/// `[z_{t+1}, z_{t+n-k+1}]` through the n-th roots of unity `z_j`.
///
/// For k = 1 the two chords coincide and the intersection degenerates to
/// the shared endpoint `z_{t+1}`, recovering the convex hull of the roots.
pub fn cyclic_polygon(n: usize, k: usize) -> Result<Vec<Complex64>, RangeError> {
    if k == 0 || 2 * k >= n {
        return Err(RangeError::RankTooLarge { k, n });
    }
    let root = |j: usize| {
        Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * (j % n) as f64 / n as f64)
    };
    let mut out = Vec::with_capacity(n);
    for t in 0..n {
        if k == 1 {
            out.push(root(t + 1));
            continue;
        }
        let a = root(t);
        let b = root(t + k);
        let c = root(t + 1);
        let d = root(t + 1 + n - k);
        // a + s (b - a) = c + u (d - c), solved as a 2x2 system.
        let (e1, e2) = (b - a, d - c);
        let det = e1.re * (-e2.im) - (-e2.re) * e1.im;
        let rhs = c - a;
        let s = (rhs.re * (-e2.im) - (-e2.re) * rhs.im) / det;
        out.push(a + e1 * s);
    }
    Ok(out)
}

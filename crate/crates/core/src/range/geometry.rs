//! Convex polygon from the intersection of rotated support half-planes.
//!
//! The planes `Re(e^{i theta_i} z) <= h_i` arrive pre-sorted by normal angle
//! (a full uniform circle of directions), which admits the classic deque
//! sweep in linear time. The resulting polygon is verified against every
//! input plane afterwards; a macroscopic violation means the intersection is
//! infeasible and the region is reported empty.

use num_complex::Complex64;
use rayon::prelude::*;

/// Half-plane `nx*x + ny*y <= offset` with unit normal `(nx, ny)`.
#[derive(Debug, Clone, Copy)]
pub struct HalfPlane {
    pub nx: f64,
    pub ny: f64,
    pub offset: f64,
}

impl HalfPlane {
    #[inline]
    fn excess(&self, x: f64, y: f64) -> f64 {
        self.nx * x + self.ny * y - self.offset
    }
}

fn line_intersection(a: &HalfPlane, b: &HalfPlane) -> (f64, f64) {
    let det = a.nx * b.ny - a.ny * b.nx;
    (
        (a.offset * b.ny - b.offset * a.ny) / det,
        (a.nx * b.offset - b.nx * a.offset) / det,
    )
}

/// Convex region in the complex plane: the polygon cut out by the sampled
/// support half-planes (an outer approximation of the exact range).
///
/// Vertices are in counter-clockwise order. A degenerate region (a point or
/// a segment) keeps however many distinct vertices survive deduplication.
#[derive(Debug, Clone)]
pub struct ConvexRegion {
    pub empty: bool,
    pub vertices: Vec<Complex64>,
}

impl ConvexRegion {
    pub const EMPTY: ConvexRegion = ConvexRegion {
        empty: true,
        vertices: Vec::new(),
    };

    /// Maximum modulus over vertices; `-inf` for the empty region.
    pub fn radius(&self) -> f64 {
        if self.empty {
            return f64::NEG_INFINITY;
        }
        self.vertices
            .iter()
            .map(|z| z.norm())
            .fold(f64::NEG_INFINITY, f64::max)
    }

    /// Minimum modulus over vertices; `+inf` for the empty region.
    pub fn min_vertex_modulus(&self) -> f64 {
        if self.empty {
            return f64::INFINITY;
        }
        self.vertices
            .iter()
            .map(|z| z.norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Cross-product convexity test at tolerance `eps`.
    pub fn is_convex(&self, eps: f64) -> bool {
        let n = self.vertices.len();
        if n < 4 {
            return true;
        }
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let c = self.vertices[(i + 2) % n];
            let cross = (b.re - a.re) * (c.im - b.im) - (b.im - a.im) * (c.re - b.re);
            if cross < -eps {
                return false;
            }
        }
        true
    }

    /// Euclidean distance from `z` to the region (zero when inside).
    pub fn distance(&self, z: Complex64) -> f64 {
        if self.empty {
            return f64::INFINITY;
        }
        let n = self.vertices.len();
        if n == 1 {
            return (z - self.vertices[0]).norm();
        }
        let mut inside = n >= 3;
        let mut best = f64::INFINITY;
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            let cross = (b.re - a.re) * (z.im - a.im) - (b.im - a.im) * (z.re - a.re);
            if cross < 0.0 {
                inside = false;
            }
            best = best.min(segment_distance(z, a, b));
        }
        if inside {
            0.0
        } else {
            best
        }
    }

    /// Directed Hausdorff-style distance: max over `self`'s vertices of the
    /// distance to `other`.
    pub fn vertex_distance_to(&self, other: &ConvexRegion) -> f64 {
        self.vertices
            .iter()
            .map(|&v| other.distance(v))
            .fold(0.0, f64::max)
    }
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = (((p - a).conj() * ab).re / len2).clamp(0.0, 1.0);
    (p - (a + ab * t)).norm()
}

/// Intersects half-planes that are pre-sorted by normal angle and cover the
/// full circle. `eps_geom` is the feasibility slack: the region is declared
/// empty only when the polygon would violate some plane by more than it.
pub fn intersect_sorted(planes: &[HalfPlane], eps_geom: f64) -> ConvexRegion {
    intersect_sorted_impl(planes, eps_geom, true)
}

/// Same sweep without the full feasibility pass, for refinement ladders
/// where only the radius trend matters and the final level is verified.
pub(crate) fn intersect_sorted_unverified(planes: &[HalfPlane], eps_geom: f64) -> ConvexRegion {
    intersect_sorted_impl(planes, eps_geom, false)
}

fn intersect_sorted_impl(planes: &[HalfPlane], eps_geom: f64, verify: bool) -> ConvexRegion {
    let m = planes.len();
    debug_assert!(m >= 3);

    // Antipodal width fast path: directions half a turn apart bound the
    // width by h_i + h_{i+m/2}; a negative width is infeasible.
    if m.is_multiple_of(2) {
        for i in 0..m / 2 {
            if planes[i].offset + planes[i + m / 2].offset < -eps_geom {
                return ConvexRegion::EMPTY;
            }
        }
    }

    let mut deque: std::collections::VecDeque<usize> = std::collections::VecDeque::new();
    for idx in 0..m {
        let h = &planes[idx];
        while deque.len() >= 2 {
            let a = &planes[deque[deque.len() - 2]];
            let b = &planes[deque[deque.len() - 1]];
            let (x, y) = line_intersection(a, b);
            if h.excess(x, y) > 0.0 {
                deque.pop_back();
            } else {
                break;
            }
        }
        while deque.len() >= 2 {
            let a = &planes[deque[0]];
            let b = &planes[deque[1]];
            let (x, y) = line_intersection(a, b);
            if h.excess(x, y) > 0.0 {
                deque.pop_front();
            } else {
                break;
            }
        }
        deque.push_back(idx);
    }
    loop {
        let mut changed = false;
        while deque.len() >= 3 {
            let a = &planes[deque[deque.len() - 2]];
            let b = &planes[deque[deque.len() - 1]];
            let (x, y) = line_intersection(a, b);
            if planes[deque[0]].excess(x, y) > 0.0 {
                deque.pop_back();
                changed = true;
            } else {
                break;
            }
        }
        while deque.len() >= 3 {
            let a = &planes[deque[0]];
            let b = &planes[deque[1]];
            let (x, y) = line_intersection(a, b);
            if planes[deque[deque.len() - 1]].excess(x, y) > 0.0 {
                deque.pop_front();
                changed = true;
            } else {
                break;
            }
        }
        if !changed {
            break;
        }
    }

    if deque.len() < 3 {
        return ConvexRegion::EMPTY;
    }

    let order: Vec<usize> = deque.into_iter().collect();
    let raw: Vec<(f64, f64)> = (0..order.len())
        .map(|j| line_intersection(&planes[order[j]], &planes[order[(j + 1) % order.len()]]))
        .collect();

    // Verify every vertex against every plane; a violation beyond the slack
    // means the constraint system is infeasible.
    if verify {
        let feasible = raw
            .par_iter()
            .all(|&(x, y)| planes.iter().all(|p| p.excess(x, y) <= eps_geom));
        if !feasible {
            return ConvexRegion::EMPTY;
        }
    }

    // Collapse duplicate consecutive vertices (concurrent support lines).
    let scale = raw
        .iter()
        .map(|&(x, y)| x.abs().max(y.abs()))
        .fold(0.0, f64::max);
    let dedup_eps = 1e-12 * (1.0 + scale);
    let mut vertices: Vec<Complex64> = Vec::with_capacity(raw.len());
    for &(x, y) in &raw {
        let z = Complex64::new(x, y);
        if vertices
            .last()
            .is_none_or(|&prev| (z - prev).norm() > dedup_eps)
        {
            vertices.push(z);
        }
    }
    while vertices.len() > 1 && (vertices[0] - *vertices.last().unwrap()).norm() <= dedup_eps {
        vertices.pop();
    }

    ConvexRegion {
        empty: false,
        vertices,
    }
}

//! Maximal elements of the rank-k range: the circle / finite-set dichotomy,
//! attainment angles, rotational invariance and axis-symmetry checks.

use num_complex::Complex64;

use super::{region, support_profile, ConvexRegion, RangeError, SupportProfile};
use crate::linalg::ComplexMatrix;
use crate::structure::{
    imprimitivity_index, is_irreducible, phase_similarity_index, PhaseSimilarity,
};

const TAU: f64 = 2.0 * std::f64::consts::PI;

/// Nearest of the two admissible base angles `{0, pi/q}` and the gap to it.
/// Reported alongside the raw angle; nothing is snapped silently.
#[derive(Debug, Clone, Copy)]
pub struct AngleSnap {
    pub nearest: f64,
    pub gap: f64,
}

/// Diagnostics kept when a nonnegative irreducible input fails the expected
/// count / spacing / base-angle validation.
#[derive(Debug, Clone)]
pub struct FiniteValidation {
    pub expected_q: usize,
    pub count: usize,
    pub spacing_deviation: f64,
    pub base_angle_gap: f64,
}

/// The set of points of maximum modulus in the rank-k range.
#[derive(Debug, Clone)]
pub enum MaximalSet {
    /// The whole circle of radius `radius` lies on the boundary.
    Circle { radius: f64 },
    /// Exactly `count` equispaced points `radius * e^{i(base_angle + 2 pi t / count)}`,
    /// validated against the imprimitivity index of a nonnegative input.
    Finite {
        radius: f64,
        base_angle: f64,
        count: usize,
        points: Vec<Complex64>,
        base_angle_snap: AngleSnap,
    },
    /// Clustered maximal points without (or failing) structural validation.
    Generic {
        radius: f64,
        points: Vec<Complex64>,
        validation: Option<FiniteValidation>,
    },
}

impl MaximalSet {
    pub fn radius(&self) -> f64 {
        match self {
            MaximalSet::Circle { radius } => *radius,
            MaximalSet::Finite { radius, .. } => *radius,
            MaximalSet::Generic { radius, .. } => *radius,
        }
    }

    /// The discrete maximal points; empty for a circle.
    pub fn points(&self) -> &[Complex64] {
        match self {
            MaximalSet::Circle { .. } => &[],
            MaximalSet::Finite { points, .. } => points,
            MaximalSet::Generic { points, .. } => points,
        }
    }

    pub fn count(&self) -> usize {
        self.points().len()
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Cluster {
    pub radius: f64,
    pub angle: f64,
}

/// Groups `(modulus, angle)` points by angular proximity: a sorted sweep
/// with gap threshold `gap` and a wrap merge across the positive real axis.
pub(crate) fn cluster_candidates(points: &[(f64, f64)], gap: f64) -> Vec<Vec<(f64, f64)>> {
    if points.is_empty() {
        return Vec::new();
    }
    let mut sorted: Vec<(f64, f64)> = points.to_vec();
    sorted.sort_by(|a, b| a.1.partial_cmp(&b.1).expect("finite angles"));

    let mut groups: Vec<Vec<(f64, f64)>> = vec![vec![sorted[0]]];
    for &p in &sorted[1..] {
        let last = groups.last().unwrap().last().unwrap().1;
        if p.1 - last <= gap {
            groups.last_mut().unwrap().push(p);
        } else {
            groups.push(vec![p]);
        }
    }
    if groups.len() > 1 {
        let first_angle = groups[0][0].1;
        let last_angle = groups.last().unwrap().last().unwrap().1;
        if first_angle + TAU - last_angle <= gap {
            let tail = groups.pop().unwrap();
            groups[0].splice(0..0, tail);
        }
    }
    groups
}

/// One representative per angular cluster: the maximum member modulus at
/// the circular mean angle.
pub(crate) fn cluster_by_angle(points: &[(f64, f64)], gap: f64) -> Vec<Cluster> {
    cluster_candidates(points, gap)
        .into_iter()
        .map(|members| {
            let radius = members.iter().map(|m| m.0).fold(0.0, f64::max);
            let sum: Complex64 = members
                .iter()
                .map(|m| Complex64::from_polar(1.0, m.1))
                .sum();
            Cluster {
                radius,
                angle: sum.arg().rem_euclid(TAU),
            }
        })
        .collect()
}

/// Wraps angles just below a full turn to small negatives, so a cluster
/// straddling the positive real axis compares as "near zero".
pub(crate) fn wrapped(angle: f64, window: f64) -> f64 {
    if angle > TAU - window {
        angle - TAU
    } else {
        angle
    }
}

fn near_maximal_clusters(reg: &ConvexRegion, eps_max: f64, m: usize) -> (f64, Vec<Cluster>) {
    let r = reg.radius();
    let polar: Vec<(f64, f64)> = reg
        .vertices
        .iter()
        .filter(|z| z.norm() >= r - eps_max)
        .map(|z| (z.norm(), z.arg().rem_euclid(TAU)))
        .collect();
    let clusters = cluster_by_angle(&polar, 3.0 * TAU / m as f64);
    (r, clusters)
}

/// Circle test: the boundary keeps modulus `r` in every sampled direction
/// exactly when the support function is constant (and positive). The
/// comparison is against the support level rather than the polygon radius,
/// which overshoots a smooth boundary by O(1/m^2).
fn covers_full_circle(profile: &SupportProfile, r: f64, eps_max: f64) -> bool {
    let min = profile.values.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    let max = profile
        .values
        .iter()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    r > eps_max && max - min <= eps_max
}

/// Default maximal-element modulus tolerance.
pub fn default_eps_max(radius: f64) -> f64 {
    1e-6 * (1.0 + radius.max(0.0))
}

/// Maximal elements of the rank-k range from `m` sampled directions.
///
/// `eps_max` is the modulus slack separating "maximal" boundary points from
/// the rest; `None` uses `1e-6 * (1 + r_k)`. When the input is nonnegative
/// irreducible the cluster structure is validated against the imprimitivity
/// index (count, equal spacing, base angle in `{0, pi/q}`); a failed
/// validation downgrades the result to [`MaximalSet::Generic`] with
/// diagnostics instead of erroring.
pub fn maximal_elements(
    a: &ComplexMatrix,
    k: usize,
    m: usize,
    eps_max: Option<f64>,
) -> Result<MaximalSet, RangeError> {
    let profile = support_profile(a, k, m)?;
    let reg = profile.region();
    if reg.empty {
        return Err(RangeError::EmptyRegion);
    }
    let eps = eps_max.unwrap_or_else(|| default_eps_max(reg.radius()));
    let (r, clusters) = near_maximal_clusters(&reg, eps, m);
    if covers_full_circle(&profile, r, eps) {
        return Ok(MaximalSet::Circle { radius: r });
    }

    let points: Vec<Complex64> = clusters
        .iter()
        .map(|c| Complex64::from_polar(c.radius, c.angle))
        .collect();

    if a.is_nonnegative(0.0) && is_irreducible(a) {
        let q = imprimitivity_index(a).expect("irreducibility just checked");
        let eps_angle = 4.0 * TAU / m as f64;

        // Fold all cluster angles modulo 2 pi / q and average on the circle
        // of that period; tight folding certifies equal spacing.
        let fold: Complex64 = clusters
            .iter()
            .map(|c| Complex64::from_polar(1.0, c.angle * q as f64))
            .sum();
        let base_angle = (fold.arg() / q as f64).rem_euclid(TAU / q as f64);
        let spacing_deviation = clusters
            .iter()
            .map(|c| {
                let folded = (c.angle - base_angle).rem_euclid(TAU / q as f64);
                folded.min(TAU / q as f64 - folded)
            })
            .fold(0.0, f64::max);

        let half = std::f64::consts::PI / q as f64;
        let (nearest, gap) = [0.0, half, TAU / q as f64]
            .iter()
            .map(|&cand| (cand, (base_angle - cand).abs()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .map(|(cand, gap)| (if cand == TAU / q as f64 { 0.0 } else { cand }, gap))
            .unwrap();

        let valid = clusters.len() == q && spacing_deviation <= eps_angle && gap <= eps_angle;
        if valid {
            return Ok(MaximalSet::Finite {
                radius: r,
                base_angle,
                count: q,
                points,
                base_angle_snap: AngleSnap { nearest, gap },
            });
        }
        return Ok(MaximalSet::Generic {
            radius: r,
            points,
            validation: Some(FiniteValidation {
                expected_q: q,
                count: clusters.len(),
                spacing_deviation,
                base_angle_gap: gap,
            }),
        });
    }

    Ok(MaximalSet::Generic {
        radius: r,
        points,
        validation: None,
    })
}

/// Smallest direction (circularly, reported in `[0, 2 pi)`) at which the
/// boundary reaches the numerical radius. Angles within the clustering
/// window below a full turn count as near zero; compare results with a
/// circular distance.
pub fn attainment_angle(a: &ComplexMatrix, k: usize, m: usize) -> Result<f64, RangeError> {
    let reg = region(a, k, m)?;
    if reg.empty {
        return Err(RangeError::EmptyRegion);
    }
    let r = reg.radius();
    let eps = default_eps_max(r);
    if r <= eps {
        return Err(RangeError::ZeroRadius);
    }
    let (_, clusters) = near_maximal_clusters(&reg, eps, m);
    let window = 3.0 * TAU / m as f64;
    let best = clusters
        .iter()
        .map(|c| wrapped(c.angle, window))
        .fold(f64::INFINITY, f64::min);
    Ok(best.rem_euclid(TAU))
}

/// True when the support profile is invariant under rotation by `2 pi / q`
/// (restated at the profile level: `h(theta) = h(theta + 2 pi t / q)` for
/// every sampled direction and every t). The sample count is rounded up to
/// a multiple of `q` so the shifted angles land exactly on samples.
pub fn check_rotational_invariance(
    a: &ComplexMatrix,
    k: usize,
    q: usize,
    m: usize,
    eps: f64,
) -> Result<bool, RangeError> {
    assert!(q >= 1);
    let m = m.div_ceil(q) * q;
    let profile = support_profile(a, k, m)?;
    let shift = m / q;
    let mut worst: f64 = 0.0;
    for t in 1..q {
        for i in 0..m {
            let d = (profile.values[i] - profile.values[(i + t * shift) % m]).abs();
            worst = worst.max(d);
        }
    }
    Ok(worst <= eps)
}

#[derive(Debug, Clone, Copy)]
pub struct LineSymmetryReport {
    /// The rotation order `q` defining the mirror lines at angles `+-pi/q`.
    pub q: usize,
    pub symmetric: bool,
    pub deviation: f64,
}

#[derive(Debug, Clone, Copy)]
pub struct SymmetryReport {
    pub real_axis: bool,
    pub real_axis_deviation: f64,
    /// Present when the mirror-line order is derivable (nonnegative input
    /// with connected Hermitian pattern and bounded phase-similarity index).
    pub lines: Option<LineSymmetryReport>,
}

/// Checks mirror symmetries of the support profile of a real matrix: the
/// real axis (`h(theta) = h(-theta)`) and, when the rotation order q is
/// derivable, the lines at angles `+-pi/q`.
pub fn check_axis_symmetries(
    a: &ComplexMatrix,
    k: usize,
    m: usize,
    eps: f64,
) -> Result<SymmetryReport, RangeError> {
    if !a.is_real(0.0) {
        return Err(RangeError::NotRealMatrix);
    }
    let profile = support_profile(a, k, m)?;
    let mut real_dev: f64 = 0.0;
    for i in 0..m {
        real_dev = real_dev.max((profile.values[i] - profile.values[(m - i) % m]).abs());
    }

    let lines = match phase_similarity_index(a) {
        Ok(PhaseSimilarity::Bounded { q, .. }) if q >= 1 => {
            let mq = m.div_ceil(q) * q;
            let profile = support_profile(a, k, mq)?;
            let shift = (mq / q) as i64;
            let mut dev: f64 = 0.0;
            for i in 0..mq {
                // Reflection about the line at angle -pi/q: h(theta) =
                // h(2 pi / q - theta); about +pi/q: h(theta) = h(-2 pi/q - theta).
                let minus = (shift - i as i64).rem_euclid(mq as i64) as usize;
                let plus = (-shift - i as i64).rem_euclid(mq as i64) as usize;
                dev = dev.max((profile.values[i] - profile.values[minus]).abs());
                dev = dev.max((profile.values[i] - profile.values[plus]).abs());
            }
            Some(LineSymmetryReport {
                q,
                symmetric: dev <= eps,
                deviation: dev,
            })
        }
        _ => None,
    };

    Ok(SymmetryReport {
        real_axis: real_dev <= eps,
        real_axis_deviation: real_dev,
        lines,
    })
}

/// True when the sampled support function is constant to within `eps`, i.e.
/// the range is a circular disc centered at the origin.
pub fn is_circular_disc(
    a: &ComplexMatrix,
    k: usize,
    m: usize,
    eps: f64,
) -> Result<bool, RangeError> {
    let profile = support_profile(a, k, m)?;
    if profile.region().empty {
        return Err(RangeError::EmptyRegion);
    }
    Ok(profile_spread(&profile) <= eps)
}

fn profile_spread(profile: &SupportProfile) -> f64 {
    let max = profile
        .values
        .iter()
        .fold(f64::NEG_INFINITY, |a, &b| a.max(b));
    let min = profile.values.iter().fold(f64::INFINITY, |a, &b| a.min(b));
    max - min
}

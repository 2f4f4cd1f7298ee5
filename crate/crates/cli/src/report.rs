//! JSON report structures with a stable field layout.
//!
//! Reports serialize deterministically: field order is fixed by the struct
//! definitions and every float is written in shortest round-trip form, so
//! identical runs produce identical bytes. Wall-clock timings go to stderr,
//! never into the report.

use num_complex::Complex64;
use serde::Serialize;
use sha2::{Digest, Sha256};

use numrange::range::MaximalSet;
use numrange::structure::CyclicStructure;

/// Hex SHA-256 of the canonical serialized input.
pub fn input_digest(canonical: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(canonical.as_bytes());
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Serialize)]
pub struct StructureOut {
    pub irreducible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub block_sizes: Option<Vec<usize>>,
    pub block_shift: bool,
    pub hermitian_pattern_irreducible: bool,
}

impl StructureOut {
    pub fn new(
        irreducible: bool,
        cyclic: Option<&CyclicStructure>,
        block_shift: bool,
        h_irreducible: bool,
    ) -> Self {
        Self {
            irreducible,
            q: cyclic.map(|c| c.q),
            block_sizes: cyclic.map(|c| c.block_sizes.clone()),
            block_shift,
            hermitian_pattern_irreducible: h_irreducible,
        }
    }
}

#[derive(Serialize)]
pub struct PointOut {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for PointOut {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
pub struct MaximalOut {
    pub variant: &'static str,
    pub radius: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_angle_nearest: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub base_angle_gap: Option<f64>,
    pub points: Vec<PointOut>,
}

impl From<&MaximalSet> for MaximalOut {
    fn from(set: &MaximalSet) -> Self {
        match set {
            MaximalSet::Circle { radius } => Self {
                variant: "circle",
                radius: *radius,
                count: None,
                base_angle: None,
                base_angle_nearest: None,
                base_angle_gap: None,
                points: Vec::new(),
            },
            MaximalSet::Finite {
                radius,
                base_angle,
                count,
                points,
                base_angle_snap,
            } => Self {
                variant: "finite",
                radius: *radius,
                count: Some(*count),
                base_angle: Some(*base_angle),
                base_angle_nearest: Some(base_angle_snap.nearest),
                base_angle_gap: Some(base_angle_snap.gap),
                points: points.iter().copied().map(PointOut::from).collect(),
            },
            MaximalSet::Generic { radius, points, .. } => Self {
                variant: "generic",
                radius: *radius,
                count: Some(points.len()),
                base_angle: None,
                base_angle_nearest: None,
                base_angle_gap: None,
                points: points.iter().copied().map(PointOut::from).collect(),
            },
        }
    }
}

#[derive(Serialize)]
pub struct RangeReport {
    pub input: String,
    pub k: usize,
    pub samples: usize,
    pub empty: bool,
    /// `null` encodes an empty range (radius -inf).
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub attainment_angle: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximal: Option<MaximalOut>,
    pub structure: StructureOut,
    pub boundary: Vec<PointOut>,
}

#[derive(Serialize)]
pub struct PolyReport {
    pub input: String,
    pub k: usize,
    pub delta: f64,
    pub samples: usize,
    pub bounding_radius: f64,
    pub inside_count: usize,
    /// `null` encodes an empty range (radius -inf).
    pub radius: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub maximal: Option<MaximalOut>,
    /// Lattice containment in the companion range held for every inside
    /// point (always true by construction; recorded for downstream checks).
    pub inside_within_companion: bool,
}

/// Serializes a report to pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
    s.push('\n');
    s
}

//! Implementations of the CLI subcommands.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use num_complex::Complex64;
use serde::Serialize;
use thiserror::Error;

use numrange::fixtures;
use numrange::linalg::{ComplexMatrix, LinalgError};
use numrange::perron::{self, PerronError};
use numrange::poly::{self, MatrixPolynomial, PolyError};
use numrange::range::{self, RangeError};
use numrange::structure::{self, StructureError};

use crate::csvout;
use crate::io::{self, ParseError};
use crate::report::{input_digest, to_json, MaximalOut, PolyReport, RangeReport, StructureOut};
use crate::svg;

/// Exit codes: 2 parse, 3 hypothesis violation, 4 numeric non-convergence.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("hypothesis violation: {0}")]
    Hypothesis(String),
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("verification failed: {failed} of {total} checks")]
    VerifyFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Hypothesis(_) => 3,
            CliError::Numeric(_) => 4,
            CliError::VerifyFailed { .. } => 1,
        }
    }
}

impl From<ParseError> for CliError {
    fn from(e: ParseError) -> Self {
        CliError::Parse(e.to_string())
    }
}

impl From<LinalgError> for CliError {
    fn from(e: LinalgError) -> Self {
        match e {
            LinalgError::NoConvergence { .. } => CliError::Numeric(e.to_string()),
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

impl From<RangeError> for CliError {
    fn from(e: RangeError) -> Self {
        match e {
            RangeError::Linalg(inner) => inner.into(),
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        CliError::Hypothesis(e.to_string())
    }
}

impl From<PerronError> for CliError {
    fn from(e: PerronError) -> Self {
        match e {
            PerronError::NoConvergence { .. } | PerronError::UncertifiedEigenvalue { .. } => {
                CliError::Numeric(e.to_string())
            }
            PerronError::Linalg(inner) => inner.into(),
            PerronError::Range(inner) => inner.into(),
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

impl From<PolyError> for CliError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Linalg(inner) => inner.into(),
            PolyError::Range(inner) => inner.into(),
            other => CliError::Hypothesis(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
}

/// Resolves a matrix input: a built-in fixture name or a file path.
/// Returns the matrix and its canonical serialized text (digest input).
pub fn resolve_matrix(input: &str) -> Result<(ComplexMatrix, String), CliError> {
    let matrix = if let Some(fixture) = fixtures::by_name(input) {
        fixture
    } else {
        let text = std::fs::read_to_string(Path::new(input))?;
        io::parse_matrix(&text)?
    };
    let canonical = io::serialize_matrix(&matrix);
    Ok((matrix, canonical))
}

fn resolve_poly(input: &str) -> Result<(MatrixPolynomial, String), CliError> {
    let text = std::fs::read_to_string(Path::new(input))?;
    let l = io::parse_poly(&text)?;
    let canonical = io::serialize_poly(&l);
    Ok((l, canonical))
}

fn emit(out: Option<&PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)?,
        None => std::io::stdout().write_all(content.as_bytes())?,
    }
    Ok(())
}

fn structure_summary(a: &ComplexMatrix) -> StructureOut {
    let irreducible = structure::is_irreducible(a);
    let cyclic = irreducible
        .then(|| structure::cyclic_normal_form(a).ok())
        .flatten();
    StructureOut::new(
        irreducible,
        cyclic.as_ref(),
        structure::is_block_shift(a),
        structure::hermitian_pattern_irreducible(a),
    )
}

#[derive(Serialize)]
struct StructureReport {
    input: String,
    structure: StructureOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    levels: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phase_similarity: Option<String>,
}

/// `structure` subcommand: irreducibility, imprimitivity index, block
/// sizes and block-shift flag.
pub fn cmd_structure(input: &str, out: Option<&PathBuf>) -> Result<(), CliError> {
    let (a, canonical) = resolve_matrix(input)?;
    let summary = structure_summary(&a);
    let levels = structure::is_irreducible(&a)
        .then(|| structure::cyclic_normal_form(&a).ok().map(|c| c.levels))
        .flatten();
    let phase_similarity =
        a.is_nonnegative(0.0)
            .then(|| match structure::phase_similarity_index(&a) {
                Ok(structure::PhaseSimilarity::Bounded { q, .. }) => q.to_string(),
                Ok(structure::PhaseSimilarity::Unbounded { .. }) => "unbounded".to_string(),
                Err(e) => format!("unavailable: {e}"),
            });
    let report = StructureReport {
        input: input_digest(&canonical),
        structure: summary,
        levels,
        phase_similarity,
    };
    emit(out, &to_json(&report))
}

/// `range` subcommand: support profile, region polygon, radius, maximal
/// elements and structure summary, emitted as JSON, CSV or SVG.
pub fn cmd_range(
    input: &str,
    k: usize,
    samples: usize,
    format: OutputFormat,
    out: Option<&PathBuf>,
    tolerance: Option<f64>,
) -> Result<(), CliError> {
    let started = Instant::now();
    let (a, canonical) = resolve_matrix(input)?;
    let table = range::SupportTable::compute(&a, samples)?;
    let profile = table.profile(k)?;
    let region = profile.region();
    let radius = region.radius();

    let maximal = if region.empty {
        None
    } else {
        Some(range::maximal_elements(&a, k, samples, tolerance)?)
    };
    let attainment = if region.empty {
        None
    } else {
        match range::attainment_angle(&a, k, samples) {
            Ok(angle) => Some(angle),
            Err(RangeError::ZeroRadius) => None,
            Err(e) => return Err(e.into()),
        }
    };

    match format {
        OutputFormat::Json => {
            let report = RangeReport {
                input: input_digest(&canonical),
                k,
                samples,
                empty: region.empty,
                radius: radius.is_finite().then_some(radius),
                attainment_angle: attainment,
                maximal: maximal.as_ref().map(MaximalOut::from),
                structure: structure_summary(&a),
                boundary: region.vertices.iter().copied().map(Into::into).collect(),
            };
            emit(out, &to_json(&report))?;
        }
        OutputFormat::Csv => {
            emit(out, &csvout::range_csv(&profile, &region))?;
        }
        OutputFormat::Svg => {
            // Nested boundaries for ranks 1..=k off the shared table.
            let regions: Vec<(usize, range::ConvexRegion)> = (1..=k)
                .map(|kk| Ok((kk, table.profile(kk)?.region())))
                .collect::<Result<_, RangeError>>()?;
            let borrowed: Vec<(usize, &range::ConvexRegion)> =
                regions.iter().map(|(kk, r)| (*kk, r)).collect();
            let markers = eigenvalue_markers(&a);
            emit(out, &svg::render_ranges(&borrowed, &markers))?;
        }
    }
    eprintln!(
        "range: input={} k={} samples={} elapsed={:?}",
        input,
        k,
        samples,
        started.elapsed()
    );
    Ok(())
}

/// Maximum-modulus eigenvalues, available for nonnegative irreducible
/// inputs through the certified Perron route.
fn eigenvalue_markers(a: &ComplexMatrix) -> Vec<Complex64> {
    if a.is_nonnegative(0.0) && structure::is_irreducible(a) {
        perron::perron(a)
            .map(|d| d.max_eigenvalues)
            .unwrap_or_default()
    } else {
        Vec::new()
    }
}

/// `polyrange` subcommand: lattice scan of the polynomial rank range.
pub fn cmd_polyrange(
    input: &str,
    k: usize,
    grid: usize,
    samples: usize,
    format: OutputFormat,
    out: Option<&PathBuf>,
) -> Result<(), CliError> {
    let started = Instant::now();
    let (l, canonical) = resolve_poly(input)?;
    let companion = l.companion();
    let companion_r1 = range::radius(&companion, 1, samples.max(range::MIN_SAMPLES))?;
    if !companion_r1.is_finite() {
        return Err(CliError::Hypothesis(
            "companion range is empty; nothing to scan".into(),
        ));
    }
    let delta = companion_r1 * 1.05 / grid as f64;
    let scan = poly::region_scan(&l, k, delta, samples)?;
    let points = scan.inside_points();
    let radius = poly::radius_poly(&l, k, delta, samples)?;

    let maximal = if l.is_perron()
        && structure::is_irreducible(&companion)
        && radius.is_finite()
        && radius > 2.0 * delta
    {
        Some(poly::maximal_elements_poly(&l, k, delta, samples)?)
    } else {
        None
    };

    // Lattice containment in the companion range, at lattice slack.
    let companion_profile = range::support_profile(&companion, k.min(companion.dim()), samples)?;
    let slack = companion_profile.eps_geom() + poly::default_eps_mem(&l) + 0.75 * delta;
    let inside_within_companion = points.iter().all(|&p| companion_profile.contains(p, slack));

    match format {
        OutputFormat::Json => {
            let report = PolyReport {
                input: input_digest(&canonical),
                k,
                delta,
                samples,
                bounding_radius: scan.bounding_radius,
                inside_count: points.len(),
                radius: radius.is_finite().then_some(radius),
                maximal: maximal.as_ref().map(MaximalOut::from),
                inside_within_companion,
            };
            emit(out, &to_json(&report))?;
        }
        OutputFormat::Csv => emit(out, &csvout::lattice_csv(&points))?,
        OutputFormat::Svg => emit(
            out,
            &svg::render_lattice(&points, scan.delta, scan.bounding_radius),
        )?,
    }
    eprintln!(
        "polyrange: input={} k={} grid={} samples={} elapsed={:?}",
        input,
        k,
        grid,
        samples,
        started.elapsed()
    );
    Ok(())
}

/// `verify` subcommand: the invariant suite, one PASS/FAIL line per check.
pub fn cmd_verify(input: &str, k_max: usize, samples: usize) -> Result<(), CliError> {
    let (a, canonical) = resolve_matrix(input)?;
    let n = a.dim();
    let k_max = k_max.min(n);
    let mut failed = 0usize;
    let mut total = 0usize;
    let mut check = |name: &str, outcome: Result<bool, String>| {
        total += 1;
        match outcome {
            Ok(true) => println!("PASS {name}"),
            Ok(false) => {
                failed += 1;
                println!("FAIL {name}");
            }
            Err(detail) => {
                failed += 1;
                println!("FAIL {name} ({detail})");
            }
        }
    };

    check(
        "file-round-trip",
        io::parse_matrix(&canonical)
            .map(|parsed| parsed.approx_eq(&a, 0.0))
            .map_err(|e| e.to_string()),
    );

    let eig_check = numrange::linalg::eigh(&numrange::linalg::hermitian_part(&a))
        .map(|eig| {
            let h = numrange::linalg::hermitian_part(&a);
            eig.residual(&h) <= 1e-11 * (1.0 + h.max_abs()) * n as f64
                && eig.unitarity_residual() <= 1e-11
        })
        .map_err(|e| e.to_string());
    check("eigendecomposition-residual", eig_check);

    let irreducible = structure::is_irreducible(&a);
    if irreducible {
        let q = structure::imprimitivity_index(&a).map_err(|e| e.to_string());
        match q {
            Ok(q) => {
                for k in 1..=k_max {
                    check(
                        &format!("rotational-invariance-k{k}-q{q}"),
                        range::check_rotational_invariance(&a, k, q, samples, 1e-6)
                            .map_err(|e| e.to_string()),
                    );
                }
                if a.is_nonnegative(0.0) {
                    let perron_checks = (|| -> Result<(f64, usize, usize), String> {
                        let data = perron::perron(&a).map_err(|e| e.to_string())?;
                        let r1 = range::radius(&a, 1, samples).map_err(|e| e.to_string())?;
                        let issos =
                            perron::issos_maximal_set(&a, samples).map_err(|e| e.to_string())?;
                        Ok((r1 - data.rho, data.q_spectral, issos.count()))
                    })();
                    match perron_checks {
                        Ok((gap, q_spectral, issos_count)) => {
                            check("spectral-radius-below-rank1-radius", Ok(gap >= -1e-8));
                            check("eigenvalue-count-matches-period", Ok(q_spectral == q));
                            check(
                                "issos-maximal-count-matches-period",
                                Ok(issos_count == q || issos_count == 0),
                            );
                        }
                        Err(detail) => {
                            check("perron-consistency", Err(detail));
                        }
                    }
                }
            }
            Err(detail) => check("imprimitivity-index", Err(detail)),
        }
    }

    if a.is_real(0.0) {
        check(
            "real-axis-symmetry",
            range::check_axis_symmetries(&a, 1, samples, 1e-6)
                .map(|r| r.real_axis)
                .map_err(|e| e.to_string()),
        );
    }

    // Nesting of successive ranges.
    let table = range::SupportTable::compute(&a, samples).map_err(CliError::from)?;
    for k in 2..=k_max {
        let outcome = (|| -> Result<bool, String> {
            let outer = table.profile(k - 1).map_err(|e| e.to_string())?;
            let inner = table.profile(k).map_err(|e| e.to_string())?.region();
            if inner.empty {
                return Ok(true);
            }
            Ok(inner.vertices.iter().all(|&v| outer.contains(v, 1e-8)))
        })();
        check(&format!("nesting-k{k}-in-k{}", k - 1), outcome);
    }

    if structure::is_block_shift(&a) {
        for k in 1..=k_max {
            let outcome = match range::is_circular_disc(&a, k, samples, 1e-6) {
                Ok(flag) => Ok(flag),
                Err(RangeError::EmptyRegion) => Ok(true),
                Err(e) => Err(e.to_string()),
            };
            check(&format!("block-shift-disc-k{k}"), outcome);
        }
    }

    println!(
        "verify: {} checks, {} failed (input {})",
        total,
        failed,
        &input_digest(&canonical)[..12]
    );
    if failed > 0 {
        return Err(CliError::VerifyFailed { failed, total });
    }
    Ok(())
}

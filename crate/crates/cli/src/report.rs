//! Report schema and writers. JSON is the complete record; the CSV tables carry
//! the same numbers flattened, one per-state table per transform plus a summary.

use std::fs;
use std::path::{Path, PathBuf};

use fwlab_core::transform::Expectation;
use fwlab_core::verify::{
    BlockDiagonalResidual, Conformance, ReductionVerdict, ScalingFit, SpectrumResidual, UnitarityResidual,
};
use fwlab_core::hamiltonian::Backend;
use fwlab_core::{Method, Tolerances};
use serde::{Deserialize, Serialize};

use crate::config::{ReportFormat, RunConfig, ScalingParameter};
use crate::error::{CliError, Result};

/// Bumped whenever a field is renamed or removed.
pub const SCHEMA: &str = "fw-lab.report/1";
pub const JSON_FILE: &str = "report.json";
pub const SUMMARY_FILE: &str = "summary.csv";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    /// The resolved configuration, so the run can be repeated from the report alone.
    pub config: RunConfig,
    /// Thresholds actually used (backend defaults plus overrides).
    pub tolerances: Tolerances,
    pub grid: GridInfo,
    /// Set when the Eriksen oracle itself could not be built; no reduction verdicts then.
    pub oracle_error: Option<String>,
    pub records: Vec<TransformRecord>,
    pub conformance: ConformanceSummary,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridInfo {
    pub backend: Backend,
    pub dim: usize,
    pub n_points: Option<usize>,
    pub length: Option<f64>,
    pub spacing: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorRecord {
    pub kind: String,
    pub message: String,
}

impl ErrorRecord {
    pub fn from_core(e: &fwlab_core::Error) -> Self {
        let debug = format!("{e:?}");
        let kind = debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("Error").to_string();
        ErrorRecord { kind, message: e.to_string() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRecord {
    pub parameter: ScalingParameter,
    pub values: Vec<f64>,
    /// `|H_T - H_E|_2` at each value, `H_T` block-truncated when the transform provides it.
    pub deviations: Vec<f64>,
    pub fit: Option<ScalingFit>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformRecord {
    pub method: Method,
    pub family: String,
    pub expectation: Expectation,
    /// `false` for truncated series.
    pub exact: bool,
    pub error: Option<ErrorRecord>,
    pub unitarity_residual: Option<UnitarityResidual>,
    pub blockdiag_residual: Option<BlockDiagonalResidual>,
    pub spectrum_residual: Option<SpectrumResidual>,
    /// Threshold the reduction check was judged against (a truncation size for series).
    pub reduction_threshold: Option<f64>,
    pub reduction: Option<ReductionVerdict>,
    pub conformance: Option<Conformance>,
    pub scaling: Option<ScalingRecord>,
    pub notes: Vec<String>,
    pub wall_time_s: f64,
}

impl TransformRecord {
    pub fn slug(&self) -> String {
        slug(self.method)
    }
}

/// File-name form of a method: `su2-susy(plus)` becomes `su2-susy-plus`.
pub fn slug(method: Method) -> String {
    method.to_string().replace('(', "-").replace(')', "")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunStatus {
    Conformant,
    PreconditionFailure,
    Mismatch,
}

impl RunStatus {
    pub fn exit_code(self) -> u8 {
        match self {
            RunStatus::Conformant => 0,
            RunStatus::PreconditionFailure => 2,
            RunStatus::Mismatch => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConformanceSummary {
    pub status: RunStatus,
    pub exit_code: u8,
    pub mismatches: Vec<String>,
    pub errors: Vec<String>,
}

impl ConformanceSummary {
    /// A mismatch outranks a precondition failure.
    pub fn from_records(records: &[TransformRecord], oracle_error: Option<&str>) -> Self {
        let mut mismatches = Vec::new();
        let mut errors: Vec<String> = oracle_error.map(|e| format!("oracle: {e}")).into_iter().collect();
        for r in records {
            if let Some(e) = &r.error {
                errors.push(format!("{}: {}", r.method, e.message));
            }
            if r.conformance == Some(Conformance::Mismatch) {
                let v = r.reduction.as_ref().expect("judged records carry a verdict");
                let wanted = match r.expectation {
                    Expectation::NotFw => "a clear reduction failure",
                    _ => "a reduction pass",
                };
                mismatches.push(format!(
                    "{}: expected {wanted}, worst residual {:.3e} against threshold {:.1e}",
                    r.method,
                    v.worst_residual(),
                    v.threshold
                ));
            }
        }
        let status = if !mismatches.is_empty() {
            RunStatus::Mismatch
        } else if !errors.is_empty() {
            RunStatus::PreconditionFailure
        } else {
            RunStatus::Conformant
        };
        ConformanceSummary { status, exit_code: status.exit_code(), mismatches, errors }
    }
}

/// One row of `summary.csv`.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct SummaryRow {
    pub method: String,
    pub expectation: String,
    pub exact: bool,
    pub error: Option<String>,
    pub unitarity_residual: Option<f64>,
    pub unitarity_frobenius: Option<f64>,
    pub blockdiag_residual: Option<f64>,
    pub off_block_residual: Option<f64>,
    pub spectrum_residual: Option<f64>,
    pub spectrum_absolute: Option<f64>,
    pub reduction_passed: Option<bool>,
    pub reduction_threshold: Option<f64>,
    pub max_lower_residual: Option<f64>,
    pub max_upper_residual: Option<f64>,
    pub max_oracle_mismatch: Option<f64>,
    pub max_subspace_distance: Option<f64>,
    pub conformance: Option<String>,
    pub scaling_exponent: Option<f64>,
    pub wall_time_s: f64,
}

impl SummaryRow {
    fn new(r: &TransformRecord) -> Self {
        let v = r.reduction.as_ref();
        SummaryRow {
            method: r.method.to_string(),
            expectation: kebab(&r.expectation),
            exact: r.exact,
            error: r.error.as_ref().map(|e| e.message.clone()),
            unitarity_residual: r.unitarity_residual.map(|u| u.spectral),
            unitarity_frobenius: r.unitarity_residual.map(|u| u.frobenius),
            blockdiag_residual: r.blockdiag_residual.map(|b| b.relative_commutator),
            off_block_residual: r.blockdiag_residual.map(|b| b.off_block),
            spectrum_residual: r.spectrum_residual.map(|s| s.relative),
            spectrum_absolute: r.spectrum_residual.map(|s| s.absolute),
            reduction_passed: v.map(|v| v.passed),
            reduction_threshold: r.reduction_threshold,
            max_lower_residual: v.map(|v| v.max_lower_residual),
            max_upper_residual: v.map(|v| v.max_upper_residual),
            max_oracle_mismatch: v.map(|v| v.max_oracle_mismatch),
            max_subspace_distance: v.map(|v| v.max_subspace_distance),
            conformance: r.conformance.as_ref().map(kebab),
            scaling_exponent: r.scaling.as_ref().and_then(|s| s.fit).map(|f| f.exponent),
            wall_time_s: r.wall_time_s,
        }
    }
}

/// One row of a per-transform table.
#[derive(Debug, Serialize, Deserialize, PartialEq)]
pub struct StateRow {
    pub state: usize,
    pub energy: f64,
    pub group: usize,
    pub spinor_residual: f64,
    pub oracle_mismatch: f64,
    pub subspace_distance: f64,
}

fn kebab<T: Serialize>(value: &T) -> String {
    serde_json::to_value(value).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default()
}

/// Writes the report into the directory `dir` (created if needed) and returns
/// the files written.
pub fn emit_report(report: &Report, dir: &Path, format: ReportFormat) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let mut written = Vec::new();
    if format.writes_json() {
        let path = dir.join(JSON_FILE);
        let text = serde_json::to_string_pretty(report)?;
        fs::write(&path, text + "\n").map_err(|e| CliError::io(&path, e))?;
        written.push(path);
    }
    if format.writes_csv() {
        let path = dir.join(SUMMARY_FILE);
        write_rows(&path, report.records.iter().map(SummaryRow::new))?;
        written.push(path);
        for r in &report.records {
            let path = dir.join(format!("{}.csv", r.slug()));
            let rows = r.reduction.iter().flat_map(|v| v.per_state.iter()).enumerate().map(|(state, s)| StateRow {
                state,
                energy: s.energy,
                group: s.group,
                spinor_residual: s.spinor_residual,
                oracle_mismatch: s.oracle_mismatch,
                subspace_distance: s.subspace_distance,
            });
            write_rows(&path, rows)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Column names, needed when a table has no rows to derive them from.
trait Table: Serialize {
    const HEADER: &'static [&'static str];
}

impl Table for StateRow {
    const HEADER: &'static [&'static str] =
        &["state", "energy", "group", "spinor_residual", "oracle_mismatch", "subspace_distance"];
}

impl Table for SummaryRow {
    const HEADER: &'static [&'static str] = &[
        "method",
        "expectation",
        "exact",
        "error",
        "unitarity_residual",
        "unitarity_frobenius",
        "blockdiag_residual",
        "off_block_residual",
        "spectrum_residual",
        "spectrum_absolute",
        "reduction_passed",
        "reduction_threshold",
        "max_lower_residual",
        "max_upper_residual",
        "max_oracle_mismatch",
        "max_subspace_distance",
        "conformance",
        "scaling_exponent",
        "wall_time_s",
    ];
}

fn write_rows<T: Table>(path: &Path, rows: impl Iterator<Item = T>) -> Result<()> {
    let csv_err = |source| CliError::Csv { path: path.to_path_buf(), source };
    let mut w = csv::Writer::from_path(path).map_err(csv_err)?;
    let mut any = false;
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
        any = true;
    }
    if !any {
        w.write_record(T::HEADER).map_err(csv_err)?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn read_report(path: &Path) -> Result<Report> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse { path: path.to_path_buf(), message: e.to_string() })
}

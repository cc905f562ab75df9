//! Run configuration: one JSON or TOML file holding a scenario block, a transform
//! list, tolerance overrides and output settings.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use fwlab_core::hamiltonian::{Backend, FieldName, ScenarioKind};
use fwlab_core::{FieldProfile, Lattice1D, Method, ScenarioSpec, Tolerances};
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    #[default]
    Json,
    CsvTables,
    Both,
}

impl ReportFormat {
    pub fn writes_json(self) -> bool {
        matches!(self, ReportFormat::Json | ReportFormat::Both)
    }

    pub fn writes_csv(self) -> bool {
        matches!(self, ReportFormat::CsvTables | ReportFormat::Both)
    }
}

impl FromStr for ReportFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv-tables" | "csv" => Ok(ReportFormat::CsvTables),
            "both" => Ok(ReportFormat::Both),
            other => Err(CliError::config(format!("unknown format {other:?} (json, csv-tables, both)"))),
        }
    }
}

/// Named starting points; every field of the scenario block may override them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    FreeMode,
    FreeLattice,
    Electrostatic,
    DiracOscillator,
    Gravity,
}

impl Preset {
    pub const ALL: [Preset; 5] =
        [Preset::FreeMode, Preset::FreeLattice, Preset::Electrostatic, Preset::DiracOscillator, Preset::Gravity];

    pub fn name(self) -> &'static str {
        match self {
            Preset::FreeMode => "free-mode",
            Preset::FreeLattice => "free-lattice",
            Preset::Electrostatic => "electrostatic",
            Preset::DiracOscillator => "dirac-oscillator",
            Preset::Gravity => "gravity",
        }
    }

    pub fn describe(self) -> &'static str {
        match self {
            Preset::FreeMode => "single plane wave, m = 1, p = (0.6, 0, 0.8); 4x4 matrices",
            Preset::FreeLattice => "free particle on a periodic lattice, m = 1, N = 32, L = 16",
            Preset::Electrostatic => "scalar potential e A0, A0 = cos(2 pi x / L), e = 0.1",
            Preset::DiracOscillator => "susy-fields with eps_x = m omega (L / 2 pi) sin(2 pi x / L), omega = 0.2",
            Preset::Gravity => "static metric, V = 1 + 0.1 cos(kx), F = 1 + 0.05 cos(kx + 0.4)",
        }
    }

    pub fn kind(self) -> ScenarioKind {
        match self {
            Preset::FreeMode | Preset::FreeLattice => ScenarioKind::Free,
            Preset::Electrostatic => ScenarioKind::Electrostatic,
            Preset::DiracOscillator => ScenarioKind::SusyFields,
            Preset::Gravity => ScenarioKind::Gravity,
        }
    }

    fn build(self, mass: f64, omega: Option<f64>, lattice: Lattice1D) -> ScenarioSpec {
        match self {
            Preset::FreeMode => ScenarioSpec::free_mode(mass, [0.6, 0.0, 0.8]),
            Preset::FreeLattice => ScenarioSpec::free_lattice(mass, lattice),
            Preset::Electrostatic => {
                ScenarioSpec::electrostatic(mass, 0.1, FieldProfile::cosine(1.0, 1, 0.0, 0.0), lattice)
            }
            Preset::DiracOscillator => ScenarioSpec::dirac_oscillator(mass, omega.unwrap_or(0.2), lattice),
            Preset::Gravity => ScenarioSpec::gravity(
                mass,
                FieldProfile::cosine(0.1, 1, 0.0, 1.0),
                FieldProfile::cosine(0.05, 1, 0.4, 1.0),
                lattice,
            ),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The scenario section as written in a config file.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioBlock {
    pub preset: Option<Preset>,
    pub kind: Option<ScenarioKind>,
    pub backend: Option<Backend>,
    pub mass: Option<f64>,
    pub coupling: Option<f64>,
    pub momentum: Option<[f64; 3]>,
    /// Dirac-oscillator frequency; only read by that preset.
    pub omega: Option<f64>,
    pub lattice: Option<Lattice1D>,
    #[serde(default)]
    pub profiles: BTreeMap<FieldName, FieldProfile>,
}

const DEFAULT_LATTICE: (usize, f64) = (32, 16.0);

impl ScenarioBlock {
    pub fn resolve(&self) -> Result<ScenarioSpec> {
        let mass = self.mass.unwrap_or(1.0);
        let lattice = match self.lattice {
            Some(l) => l,
            None => Lattice1D::new(DEFAULT_LATTICE.0, DEFAULT_LATTICE.1).expect("default lattice is valid"),
        };
        let mut spec = match self.preset {
            Some(preset) => {
                if let Some(kind) = self.kind.filter(|&k| k != preset.kind()) {
                    return Err(CliError::config(format!(
                        "preset {preset} is a {} scenario, not {}",
                        preset.kind().as_str(),
                        kind.as_str()
                    )));
                }
                let spec = preset.build(mass, self.omega, lattice);
                if let Some(b) = self.backend.filter(|&b| b != spec.backend) {
                    return Err(CliError::config(format!("preset {preset} does not support the {b:?} backend")));
                }
                if self.lattice.is_some() && spec.backend == Backend::MomentumMode {
                    return Err(CliError::config(format!("preset {preset} has no lattice")));
                }
                spec
            }
            None => {
                let kind = self.kind.ok_or_else(|| CliError::config("scenario needs either `preset` or `kind`"))?;
                let backend = self.backend.unwrap_or(match (kind, self.lattice) {
                    (ScenarioKind::Free, None) => Backend::MomentumMode,
                    _ => Backend::Lattice,
                });
                ScenarioSpec {
                    kind,
                    mass,
                    coupling: 0.0,
                    momentum: [0.0; 3],
                    profiles: BTreeMap::new(),
                    backend,
                    lattice: (backend == Backend::Lattice || kind != ScenarioKind::Free).then_some(lattice),
                }
            }
        };
        if self.omega.is_some() && self.preset != Some(Preset::DiracOscillator) {
            return Err(CliError::config("`omega` is only read by the dirac-oscillator preset"));
        }
        if let Some(c) = self.coupling {
            spec.coupling = c;
        }
        if let Some(p) = self.momentum {
            if spec.backend != Backend::MomentumMode {
                return Err(CliError::config("`momentum` only applies to the momentum-mode backend"));
            }
            spec.momentum = p;
        }
        for (name, profile) in &self.profiles {
            spec.profiles.insert(*name, *profile);
        }
        spec.validate().map_err(|e| CliError::config(format!("scenario: {e}")))?;
        Ok(spec)
    }
}

/// Optional parameter sweep attached to the approximate transforms of a run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScalingRequest {
    pub parameter: ScalingParameter,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingParameter {
    Coupling,
    Mass,
    /// Multiplies the deviation of every profile from its offset.
    Amplitude,
}

impl ScalingParameter {
    pub fn apply(self, spec: &ScenarioSpec, value: f64) -> ScenarioSpec {
        let mut out = spec.clone();
        match self {
            ScalingParameter::Coupling => out.coupling = value,
            ScalingParameter::Mass => out.mass = value,
            ScalingParameter::Amplitude => {
                for p in out.profiles.values_mut() {
                    p.amplitude *= value;
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    scenario: ScenarioBlock,
    transforms: Vec<String>,
    #[serde(default)]
    tolerances: BTreeMap<String, f64>,
    #[serde(alias = "out")]
    output_path: Option<PathBuf>,
    #[serde(alias = "format")]
    report_format: Option<ReportFormat>,
    scaling: Option<ScalingRequest>,
}

/// A fully resolved, validated run; echoed verbatim into the report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub scenario: ScenarioSpec,
    pub transforms: Vec<Method>,
    /// Overrides applied on top of the backend defaults.
    pub tolerances: BTreeMap<String, f64>,
    pub output_path: PathBuf,
    pub report_format: ReportFormat,
    #[serde(default)]
    pub scaling: Option<ScalingRequest>,
}

pub const DEFAULT_OUTPUT: &str = "fw-lab-report";

/// Command-line adjustments applied after the file is read.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub tolerances: Vec<(String, f64)>,
    pub grid_size: Option<usize>,
    pub output_path: Option<PathBuf>,
    pub report_format: Option<ReportFormat>,
}

impl RunConfig {
    pub fn load(path: &Path, overrides: &Overrides) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let parse_err = |message: String| CliError::Parse { path: path.to_path_buf(), message };
        let file: ConfigFile = match path.extension().and_then(|e| e.to_str()) {
            Some("toml") => toml::from_str(&text).map_err(|e| parse_err(e.to_string()))?,
            Some("json") | None => serde_json::from_str(&text).map_err(|e| parse_err(e.to_string()))?,
            Some(other) => return Err(CliError::config(format!("unsupported config extension .{other} (json or toml)"))),
        };
        Self::from_file(file, overrides)
    }

    /// Parses a config held in memory; `toml` selects the syntax.
    pub fn parse_text(text: &str, toml: bool, overrides: &Overrides) -> Result<Self> {
        let file: ConfigFile = if toml {
            toml::from_str(text).map_err(|e| CliError::config(e.to_string()))?
        } else {
            serde_json::from_str(text).map_err(|e| CliError::config(e.to_string()))?
        };
        Self::from_file(file, overrides)
    }

    fn from_file(file: ConfigFile, overrides: &Overrides) -> Result<Self> {
        let mut scenario = file.scenario.resolve()?;
        if let Some(n) = overrides.grid_size {
            let lattice = scenario
                .lattice
                .ok_or_else(|| CliError::config("--grid-size needs a lattice scenario"))?;
            scenario.lattice =
                Some(Lattice1D::new(n, lattice.length()).map_err(|e| CliError::config(format!("--grid-size: {e}")))?);
        }
        let transforms = parse_transforms(&file.transforms, &scenario)?;

        let mut tolerances = file.tolerances;
        for (name, value) in &overrides.tolerances {
            tolerances.insert(name.clone(), *value);
        }
        let config = RunConfig {
            scenario,
            transforms,
            tolerances,
            output_path: overrides
                .output_path
                .clone()
                .or(file.output_path)
                .unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT)),
            report_format: overrides.report_format.or(file.report_format).unwrap_or_default(),
            scaling: file.scaling,
        };
        config.effective_tolerances()?;
        if let Some(s) = &config.scaling {
            if s.values.len() < 3 {
                return Err(CliError::config("scaling needs at least three values"));
            }
            if s.values.iter().any(|v| !(v.is_finite() && *v > 0.0)) {
                return Err(CliError::config("scaling values must be positive"));
            }
        }
        Ok(config)
    }

    /// Backend defaults with the overrides applied.
    pub fn effective_tolerances(&self) -> Result<Tolerances> {
        let mut tol = self.scenario.default_tolerances();
        for (name, &value) in &self.tolerances {
            if !(value.is_finite() && value > 0.0) {
                return Err(CliError::config(format!("tolerance {name} must be positive, got {value}")));
            }
            if !tol.set(name, value) {
                return Err(CliError::config(format!("unknown tolerance {name:?}")));
            }
        }
        Ok(tol)
    }
}

/// Method names, with `all` expanding to every transform applicable to `spec`.
fn parse_transforms(names: &[String], spec: &ScenarioSpec) -> Result<Vec<Method>> {
    if names.is_empty() {
        return Err(CliError::config("transform list is empty"));
    }
    let mut out = Vec::new();
    for name in names {
        if name == "all" {
            out.extend(Method::CATALOG.iter().copied().filter(|m| m.check_applicable(spec).is_ok()));
            continue;
        }
        let method: Method = name.parse().map_err(|e| CliError::config(format!("{e}")))?;
        method.check_applicable(spec).map_err(|e| CliError::config(e.to_string()))?;
        out.push(method);
    }
    let mut seen = Vec::new();
    out.retain(|m| {
        let fresh = !seen.contains(m);
        seen.push(*m);
        fresh
    });
    Ok(out)
}

/// Splits a `name=value` tolerance flag.
pub fn parse_tolerance_flag(s: &str) -> std::result::Result<(String, f64), String> {
    let (name, value) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    let value: f64 = value.trim().parse().map_err(|_| format!("{value:?} is not a number"))?;
    Ok((name.trim().to_string(), value))
}

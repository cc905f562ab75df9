//! Configuration, orchestration and report writing for the `fw-lab` binary.

pub mod config;
mod error;
pub mod report;
mod run;

pub use config::{Overrides, Preset, ReportFormat, RunConfig, ScalingParameter, ScalingRequest};
pub use error::{CliError, Result};
pub use report::{emit_report, read_report, Report, RunStatus, TransformRecord};
pub use run::run_scenario;

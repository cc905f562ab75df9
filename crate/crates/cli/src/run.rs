use std::thread;
use std::time::Instant;

use fwlab_core::transform::{eriksen, Context, Expectation, TransformResult};
use fwlab_core::verify::{
    check_block_diagonal, check_spectrum_preserved, check_unitary, judge, order_scaling_fit, ReductionOracle,
};
use fwlab_core::algebra::spectral_norm;
use fwlab_core::{Method, ScenarioSpec, Tolerances};

use crate::config::{RunConfig, ScalingRequest};
use crate::error::{CliError, Result};
use crate::report::{ConformanceSummary, ErrorRecord, GridInfo, Report, ScalingRecord, TransformRecord, SCHEMA};

/// Builds the scenario, runs every requested transform through the verification
/// battery and assembles the report. Pairing errors are rejected before any
/// computation; numerical failures of single transforms become error records.
pub fn run_scenario(config: &RunConfig) -> Result<Report> {
    let tol = config.effective_tolerances()?;
    for m in &config.transforms {
        m.check_applicable(&config.scenario).map_err(|e| CliError::config(e.to_string()))?;
    }
    let ctx = Context::new(config.scenario.clone(), tol).map_err(|e| CliError::config(format!("scenario: {e}")))?;
    let (oracle, oracle_error) = match ReductionOracle::new(ctx.hamiltonian(), &tol) {
        Ok(o) => (Some(o), None),
        Err(e) => (None, Some(e.to_string())),
    };

    let records: Vec<TransformRecord> = thread::scope(|s| {
        let handles: Vec<_> = config
            .transforms
            .iter()
            .map(|&method| {
                let (ctx, oracle) = (&ctx, oracle.as_ref());
                s.spawn(move || evaluate(ctx, oracle, method, config.scaling.as_ref()))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("transform worker panicked")).collect()
    });

    let conformance = ConformanceSummary::from_records(&records, oracle_error.as_deref());
    let lattice = config.scenario.lattice;
    Ok(Report {
        schema: SCHEMA.to_string(),
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        config: config.clone(),
        tolerances: tol,
        grid: GridInfo {
            backend: config.scenario.backend,
            dim: config.scenario.dim(),
            n_points: lattice.map(|l| l.n_points()),
            length: lattice.map(|l| l.length()),
            spacing: lattice.map(|l| l.spacing()),
        },
        oracle_error,
        records,
        conformance,
    })
}

fn evaluate(
    ctx: &Context,
    oracle: Option<&ReductionOracle>,
    method: Method,
    scaling: Option<&ScalingRequest>,
) -> TransformRecord {
    let start = Instant::now();
    let mut record = TransformRecord {
        method,
        family: method.family().to_string(),
        expectation: method.expectation(),
        exact: false,
        error: None,
        unitarity_residual: None,
        blockdiag_residual: None,
        spectrum_residual: None,
        reduction_threshold: None,
        reduction: None,
        conformance: None,
        scaling: None,
        notes: Vec::new(),
        wall_time_s: 0.0,
    };
    match ctx.apply(method) {
        Err(e) => record.error = Some(ErrorRecord::from_core(&e)),
        Ok(r) => {
            record.exact = r.exact;
            record.unitarity_residual = Some(check_unitary(r.u.matrix()));
            record.blockdiag_residual = Some(check_block_diagonal(r.h_transformed.matrix()));
            match check_spectrum_preserved(ctx.hamiltonian(), r.h_transformed.matrix()) {
                Ok(s) => record.spectrum_residual = Some(s),
                Err(e) => record.notes.push(format!("spectrum check skipped: {e}")),
            }
            if let Some(oracle) = oracle {
                let threshold = r.metadata.truncation_tolerance.unwrap_or(ctx.tol.reduction);
                let verdict = oracle.check(r.u.matrix(), threshold);
                record.conformance = Some(judge(method.expectation(), &verdict));
                record.reduction_threshold = Some(threshold);
                record.reduction = Some(verdict);
            }
            record.notes.extend(r.metadata.notes.iter().cloned());
        }
    }
    let sweepable = matches!(method.expectation(), Expectation::FwWithinTruncation | Expectation::Approximate);
    if let (Some(req), true) = (scaling, sweepable) {
        record.scaling = Some(sweep(&ctx.spec, &ctx.tol, method, req));
    }
    record.wall_time_s = start.elapsed().as_secs_f64();
    record
}

/// Distance of the transformed Hamiltonian from the Eriksen one along a parameter sweep.
fn sweep(spec: &ScenarioSpec, tol: &Tolerances, method: Method, req: &ScalingRequest) -> ScalingRecord {
    let mut out = ScalingRecord {
        parameter: req.parameter,
        values: req.values.clone(),
        deviations: Vec::with_capacity(req.values.len()),
        fit: None,
        error: None,
    };
    let deviation = |value: f64| -> fwlab_core::Result<f64> {
        let ctx = Context::new(req.parameter.apply(spec, value), *tol)?;
        let r: TransformResult = ctx.apply(method)?;
        let reference = eriksen(ctx.hamiltonian(), tol)?;
        let h = r.metadata.block_truncated.as_ref().unwrap_or(r.h_transformed.matrix());
        Ok(spectral_norm(&(h - reference.h_transformed.matrix())))
    };
    for &v in &req.values {
        match deviation(v) {
            Ok(d) => out.deviations.push(d),
            Err(e) => {
                out.error = Some(format!("at {v}: {e}"));
                return out;
            }
        }
    }
    let samples: Vec<(f64, f64)> = req.values.iter().copied().zip(out.deviations.iter().copied()).collect();
    match order_scaling_fit(&samples) {
        Ok(fit) => out.fit = Some(fit),
        Err(e) => out.error = Some(e.to_string()),
    }
    out
}

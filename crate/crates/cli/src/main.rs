use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fw_lab::config::parse_tolerance_flag;
use fw_lab::{emit_report, run_scenario, Overrides, Preset, Report, ReportFormat, RunConfig};
use fwlab_core::transform::Expectation;
use fwlab_core::verify::Conformance;
use fwlab_core::Method;

#[derive(Parser)]
#[command(name = "fw-lab", version, about = "Build Dirac Hamiltonians, apply FW-type transforms and check them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the transforms listed in a JSON or TOML config and write a report.
    Run {
        config: PathBuf,
        /// Tolerance override, repeatable: `--tol reduction=1e-9`.
        #[arg(long = "tol", value_name = "NAME=VALUE", value_parser = parse_tolerance_flag)]
        tol: Vec<(String, f64)>,
        /// Replace the lattice point count.
        #[arg(long)]
        grid_size: Option<usize>,
        /// Output directory.
        #[arg(long)]
        out: Option<PathBuf>,
        /// json, csv-tables or both.
        #[arg(long)]
        format: Option<String>,
    },
    /// Presets usable in the scenario block.
    ListScenarios,
    /// Transform names with their expected classification.
    ListTransforms,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::ListScenarios => {
            for p in Preset::ALL {
                println!("{:<18} {:<14} {}", p.name(), p.kind().as_str(), p.describe());
            }
            ExitCode::SUCCESS
        }
        Command::ListTransforms => {
            for m in Method::CATALOG {
                println!("{:<28} {}", m.to_string(), expectation_label(m.expectation()));
            }
            ExitCode::SUCCESS
        }
        Command::Run { config, tol, grid_size, out, format } => match run(config, tol, grid_size, out, format) {
            Ok(code) => ExitCode::from(code),
            Err(e) => {
                eprintln!("fw-lab: {e}");
                ExitCode::from(e.exit_code())
            }
        },
    }
}

fn run(
    config: PathBuf,
    tolerances: Vec<(String, f64)>,
    grid_size: Option<usize>,
    output_path: Option<PathBuf>,
    format: Option<String>,
) -> fw_lab::Result<u8> {
    let report_format = format.map(|f| f.parse::<ReportFormat>()).transpose()?;
    let overrides = Overrides { tolerances, grid_size, output_path, report_format };
    let config = RunConfig::load(&config, &overrides)?;
    let report = run_scenario(&config)?;
    let written = emit_report(&report, &config.output_path, config.report_format)?;
    print_summary(&report);
    for path in written {
        println!("wrote {}", path.display());
    }
    Ok(report.conformance.exit_code)
}

fn expectation_label(e: Expectation) -> &'static str {
    match e {
        Expectation::Fw => "FW (must pass reduction)",
        Expectation::FwWithinTruncation => "FW within truncation",
        Expectation::NotFw => "not FW (must fail reduction)",
        Expectation::Approximate => "approximate (not judged)",
    }
}

fn print_summary(report: &Report) {
    println!("{:<28} {:>11} {:>11} {:>11}  verdict", "transform", "unitarity", "blockdiag", "reduction");
    for r in &report.records {
        let num = |x: Option<f64>| x.map_or_else(|| "-".to_string(), |v| format!("{v:.2e}"));
        let verdict = match (&r.error, r.conformance) {
            (Some(e), _) => format!("ERROR {}", e.message),
            (None, Some(Conformance::Conformant)) => "ok".to_string(),
            (None, Some(Conformance::Mismatch)) => "MISMATCH".to_string(),
            (None, Some(Conformance::NotJudged)) => "not judged".to_string(),
            (None, None) => "no oracle".to_string(),
        };
        println!(
            "{:<28} {:>11} {:>11} {:>11}  {verdict}",
            r.method.to_string(),
            num(r.unitarity_residual.map(|u| u.spectral)),
            num(r.blockdiag_residual.map(|b| b.relative_commutator)),
            num(r.reduction.as_ref().map(|v| v.worst_residual())),
        );
    }
    let c = &report.conformance;
    for m in &c.mismatches {
        eprintln!("mismatch: {m}");
    }
    for e in &c.errors {
        eprintln!("error: {e}");
    }
    println!("status: {:?} (exit {})", c.status, c.exit_code);
}

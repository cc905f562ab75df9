//! Library-level runs: classification of the reference configs and the report
//! formats.

use std::fs;

use fw_lab::report::{StateRow, SummaryRow, JSON_FILE, SUMMARY_FILE};
use fw_lab::{emit_report, read_report, run_scenario, CliError, Overrides, ReportFormat, RunConfig, RunStatus};
use fwlab_core::verify::Conformance;
use fwlab_core::Method;

fn config(json: &str) -> RunConfig {
    RunConfig::parse_text(json, false, &Overrides::default()).unwrap()
}

fn passed(report: &fw_lab::Report, name: &str) -> bool {
    let method: Method = name.parse().unwrap();
    let r = report.records.iter().find(|r| r.method == method).unwrap();
    r.reduction.as_ref().unwrap().passed
}

#[test]
fn free_mode_classification() {
    let c = config(r#"{"scenario": {"preset": "free-mode"}, "transforms": ["u0-free", "eriksen", "ek", "melosh"]}"#);
    let report = run_scenario(&c).unwrap();
    assert!(passed(&report, "eriksen"));
    assert!(passed(&report, "u0-free"));
    assert!(!passed(&report, "ek"));
    assert!(!passed(&report, "melosh"));
    assert_eq!(report.conformance.status, RunStatus::Conformant);
    assert!(report.records.iter().all(|r| r.conformance == Some(Conformance::Conformant)));
}

#[test]
fn oscillator_classification() {
    let c = config(
        r#"{"scenario": {"preset": "dirac-oscillator", "lattice": {"n_points": 16, "length": 8}},
            "transforms": ["fw-commuting", "su2-susy(plus)", "su2-susy(minus)"]}"#,
    );
    let report = run_scenario(&c).unwrap();
    assert!(passed(&report, "fw-commuting"));
    assert!(passed(&report, "su2-susy(plus)"));
    assert!(!passed(&report, "su2-susy(minus)"));
    assert_eq!(report.conformance.exit_code, 0);
}

#[test]
fn unknown_transform_is_a_config_error() {
    let err = RunConfig::parse_text(
        r#"{"scenario": {"preset": "free-mode"}, "transforms": ["eriksen", "fw-telepathic"]}"#,
        false,
        &Overrides::default(),
    )
    .unwrap_err();
    assert!(matches!(err, CliError::Config(_)));
    assert_eq!(err.exit_code(), 1);
}

#[test]
fn precondition_failures_become_records() {
    let c = config(
        r#"{"scenario": {"preset": "electrostatic", "lattice": {"n_points": 16, "length": 8}},
            "transforms": ["eriksen", "fw-commuting"]}"#,
    );
    let report = run_scenario(&c).unwrap();
    let failed = report.records.iter().find(|r| r.method == Method::FwCommuting).unwrap();
    assert_eq!(failed.error.as_ref().unwrap().kind, "CommutingPrecondition");
    assert!(failed.reduction.is_none());
    assert_eq!(report.conformance.status, RunStatus::PreconditionFailure);
    assert_eq!(report.conformance.exit_code, 2);
}

#[test]
fn mismatch_outranks_precondition_failure() {
    // A threshold below roundoff makes the oracle fail itself.
    let c = config(
        r#"{"scenario": {"preset": "electrostatic", "lattice": {"n_points": 16, "length": 8}},
            "transforms": ["eriksen", "fw-commuting"], "tolerances": {"reduction": 1e-30}}"#,
    );
    let report = run_scenario(&c).unwrap();
    assert_eq!(report.conformance.status, RunStatus::Mismatch);
    assert_eq!(report.conformance.exit_code, 3);
    assert_eq!(report.conformance.mismatches.len(), 1);
    assert_eq!(report.conformance.errors.len(), 1);
}

#[test]
fn json_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(
        r#"{"scenario": {"preset": "gravity", "lattice": {"n_points": 8, "length": 6}},
            "transforms": ["eriksen", "ek", "heidenreich", "stepwise(1)"],
            "scaling": {"parameter": "amplitude", "values": [1.0, 0.5, 0.25]}}"#,
    );
    let report = run_scenario(&c).unwrap();
    let written = emit_report(&report, dir.path(), ReportFormat::Json).unwrap();
    assert_eq!(written, vec![dir.path().join(JSON_FILE)]);
    let back = read_report(&written[0]).unwrap();
    assert_eq!(back, report);
    assert_eq!(back.schema, "fw-lab.report/1");
    assert!(back.records.iter().any(|r| r.scaling.is_some()));
}

#[test]
fn csv_tables_one_per_transform() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(r#"{"scenario": {"preset": "free-mode"}, "transforms": ["eriksen", "ek", "melosh-to-fw"]}"#);
    let report = run_scenario(&c).unwrap();
    let written = emit_report(&report, dir.path(), ReportFormat::CsvTables).unwrap();
    assert_eq!(written.len(), 4);
    for name in ["eriksen.csv", "ek.csv", "melosh-to-fw.csv", SUMMARY_FILE] {
        assert!(dir.path().join(name).exists(), "{name}");
    }
    assert!(!dir.path().join(JSON_FILE).exists());
    let mut rdr = csv::Reader::from_path(dir.path().join("ek.csv")).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(str::to_string).collect();
    assert_eq!(header, ["state", "energy", "group", "spinor_residual", "oracle_mismatch", "subspace_distance"]);
    let rows: Vec<StateRow> = rdr.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows.iter().all(|r| r.oracle_mismatch > 1e-2));
}

#[test]
fn both_formats_agree() {
    let dir = tempfile::tempdir().unwrap();
    let c = config(
        r#"{"scenario": {"preset": "dirac-oscillator", "lattice": {"n_points": 12, "length": 6}},
            "transforms": ["all"]}"#,
    );
    let report = run_scenario(&c).unwrap();
    emit_report(&report, dir.path(), ReportFormat::Both).unwrap();
    let json = read_report(&dir.path().join(JSON_FILE)).unwrap();
    let mut rdr = csv::Reader::from_path(dir.path().join(SUMMARY_FILE)).unwrap();
    let rows: Vec<SummaryRow> = rdr.deserialize().map(Result::unwrap).collect();
    assert_eq!(rows.len(), json.records.len());
    for (row, rec) in rows.iter().zip(&json.records) {
        assert_eq!(row.method, rec.method.to_string());
        assert_eq!(row.unitarity_residual, rec.unitarity_residual.map(|u| u.spectral));
        assert_eq!(row.max_oracle_mismatch, rec.reduction.as_ref().map(|v| v.max_oracle_mismatch));
        let per_state = fs::read_to_string(dir.path().join(format!("{}.csv", rec.slug()))).unwrap();
        let states = rec.reduction.as_ref().map_or(0, |v| v.per_state.len());
        assert_eq!(per_state.lines().count(), 1 + states);
    }
}

#[test]
fn write_failure_names_the_path() {
    let dir = tempfile::tempdir().unwrap();
    let blocker = dir.path().join("not-a-dir");
    fs::write(&blocker, "x").unwrap();
    let c = config(r#"{"scenario": {"preset": "free-mode"}, "transforms": ["eriksen"]}"#);
    let report = run_scenario(&c).unwrap();
    let err = emit_report(&report, &blocker, ReportFormat::Json).unwrap_err();
    assert!(err.to_string().contains("not-a-dir"), "{err}");
}

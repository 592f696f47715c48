use std::collections::BTreeMap;
use triq::cli::{emit_csv, output, read_csv, Table};
use triq::correlations::{ground_measures, PathPreference};
use triq::sweep::{run_sweep, Axis, AxisName, Quantity};
use triq::{CouplingConfig, Qubit, SweepSpec};

#[test]
fn recompute_a_row_from_emitted_csv() {
    let mut spec = SweepSpec::new(Axis::new(AxisName::J, -3.0, 5.0, 9), vec![Quantity::NAb, Quantity::T3]);
    spec.fixed.eta = 0.7;
    let r = run_sweep(&spec, 0).unwrap();
    let path = std::env::temp_dir().join(format!("triq-roundtrip-{}.csv", std::process::id()));
    emit_csv(&r, &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let t = read_csv(&text).unwrap();
    assert_eq!(t.header, vec!["j", "n_ab", "t3", "path"]);
    for row in &t.rows {
        let j: f64 = row[0].parse().unwrap();
        let g = ground_measures(&CouplingConfig::one_param(j, 0.7), PathPreference::AnalyticFirst).unwrap();
        let t3: f64 = row[2].parse().unwrap();
        let n_ab: f64 = row[1].parse().unwrap();
        assert!((t3 - g.t3(Qubit::B)).abs() <= 1e-15 * t3.abs().max(1e-300));
        assert!((n_ab - g.negativities.n_ab).abs() <= 1e-15 * n_ab.abs().max(1e-300));
        assert_eq!(row[3], g.path.to_string());
    }
}

#[test]
fn one_point_file_is_two_lines() {
    let r = run_sweep(&SweepSpec::new(Axis::point(AxisName::J, 6.0), vec![Quantity::T3]), 1).unwrap();
    let text = output::csv_string(&Table::from_sweep(&r), &BTreeMap::new()).unwrap();
    assert_eq!(text.matches('\n').count(), 2);
    assert!(text.ends_with('\n') && !text.contains('\r'));
}

#[test]
fn emit_csv_reports_path_on_failure() {
    let r = run_sweep(&SweepSpec::new(Axis::point(AxisName::J, 6.0), vec![Quantity::T3]), 1).unwrap();
    let bad = std::path::Path::new("/nonexistent-dir/x.csv");
    let err = emit_csv(&r, bad).unwrap_err().to_string();
    assert!(err.contains("/nonexistent-dir/x.csv"));
}

//! T3 at T = 0 and its thermal drops T3(0) - T3(0.05), T3(0) - T3(0.1)
//! over the (eta, omega) plane at J = 6 and J = -6, as CSV and heatmaps.
//!
//! cargo run --example anisotropy_map

use std::collections::BTreeMap;
use std::path::Path;
use triq::cli::{emit_svg, output, SvgKind, Table};
use triq::sweep::{run_sweep, Axis, AxisName, Quantity};
use triq::{SweepResult, SweepSpec};

pub fn plane(j: f64, quantity: Quantity, temperature: Option<f64>, count: usize) -> triq::Result<SweepResult> {
    let mut spec = SweepSpec::new(Axis::new(AxisName::Eta, 0.2, 2.0, count), vec![quantity]);
    spec.axis2 = Some(Axis::new(AxisName::Omega, 0.2, 2.0, count));
    spec.fixed.j = j;
    spec.temperatures = temperature.into_iter().collect();
    run_sweep(&spec, 0)
}

pub fn run_example(count: usize) -> triq::Result<Vec<(String, SweepResult)>> {
    let mut out = Vec::new();
    for j in [6.0, -6.0] {
        out.push((format!("t3_j{j}"), plane(j, Quantity::T3, None, count)?));
        out.push((format!("delta1_j{j}"), plane(j, Quantity::Delta, Some(0.05), count)?));
        out.push((format!("delta2_j{j}"), plane(j, Quantity::Delta, Some(0.1), count)?));
    }
    Ok(out)
}

fn main() -> triq::Result<()> {
    let dir = Path::new("target/triq-examples");
    std::fs::create_dir_all(dir).expect("output directory");
    for (name, result) in run_example(31)? {
        let values: Vec<f64> = result.rows.iter().filter_map(|r| r.values[2]).collect();
        let (lo, hi) = values.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        println!("{name:>12}: {} points, range [{lo:.4}, {hi:.4}]", values.len());
        let csv = output::csv_string(&Table::from_sweep(&result), &BTreeMap::new())?;
        std::fs::write(dir.join(format!("{name}.csv")), csv).expect("write csv");
        emit_svg(&result, SvgKind::Heatmap, &dir.join(format!("{name}.svg")))?;
    }
    println!("wrote CSV and SVG files to {}", dir.display());
    Ok(())
}

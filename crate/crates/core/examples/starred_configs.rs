//! T3 against temperature for the two strongly anisotropic configurations
//! eta = omega = 1.4 and eta = 0.72, omega = 1.18, at J = 6 and J = -6.
//! Writes the 200-row CSV.
//!
//! cargo run --example starred_configs

use std::path::Path;
use triq::cli::{emit_csv, emit_svg, SvgKind};
use triq::sweep::{concat, run_sweep, Axis, AxisName, Quantity};
use triq::thermal::GRID_START;
use triq::{SweepResult, SweepSpec};

pub const CONFIGS: [(f64, f64); 2] = [(1.4, 1.4), (0.72, 1.18)];

pub fn run_example() -> triq::Result<SweepResult> {
    let mut parts = Vec::new();
    for (eta, omega) in CONFIGS {
        for j in [6.0, -6.0] {
            let mut spec = SweepSpec::new(Axis::new(AxisName::T, GRID_START, 1.5, 50), vec![Quantity::ThermalT3]);
            spec.fixed.j = j;
            spec.fixed.eta = eta;
            spec.fixed.omega = omega;
            let r = run_sweep(&spec, 0)?;
            parts.push(r.with_constants(&[("eta", eta), ("omega", omega), ("j", j)]));
        }
    }
    concat(parts)
}

fn main() -> triq::Result<()> {
    let result = run_example()?;
    for (k, row) in result.rows.iter().enumerate() {
        if k % 50 == 0 {
            println!("eta={} omega={} J={:+}: T3(T={:.3}) = {:.4}", row.values[0].unwrap(), row.values[1].unwrap(), row.values[2].unwrap(), row.values[3].unwrap(), row.values[4].unwrap());
        }
    }
    let dir = Path::new("target/triq-examples");
    std::fs::create_dir_all(dir).expect("output directory");
    emit_csv(&result, &dir.join("starred_configs.csv"))?;
    emit_svg(&result, SvgKind::Lines, &dir.join("starred_configs.svg"))?;
    println!("{} rows written to {}", result.rows.len(), dir.display());
    Ok(())
}

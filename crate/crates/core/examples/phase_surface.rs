//! N_AB and T3 of the ground state over the (J, eta) plane.
//!
//! cargo run --release --example phase_surface

use std::path::Path;
use triq::cli::{emit_csv, emit_svg, SvgKind};
use triq::sweep::{run_sweep, Axis, AxisName, Quantity};
use triq::{SweepResult, SweepSpec};

pub fn run_example(j_count: usize, eta_count: usize) -> triq::Result<(SweepResult, SweepResult)> {
    let surface = |q| {
        let mut spec = SweepSpec::new(Axis::new(AxisName::J, -8.0, 8.0, j_count), vec![q]);
        spec.axis2 = Some(Axis::new(AxisName::Eta, 0.0, 2.0, eta_count));
        run_sweep(&spec, 0)
    };
    Ok((surface(Quantity::NAb)?, surface(Quantity::T3)?))
}

fn main() -> triq::Result<()> {
    let (n_ab, t3) = run_example(81, 41)?;
    let dir = Path::new("target/triq-examples");
    std::fs::create_dir_all(dir).expect("output directory");
    for (name, r) in [("n_ab", &n_ab), ("t3", &t3)] {
        emit_csv(r, &dir.join(format!("{name}_surface.csv")))?;
        emit_svg(r, SvgKind::Heatmap, &dir.join(format!("{name}_surface.svg")))?;
        let fallback = r.rows.iter().filter(|row| row.path.to_string() != "analytic").count();
        println!("{name}: {} points, {fallback} off the closed-form path", r.rows.len());
    }
    let mean = |lo: f64, hi: f64| {
        let v: Vec<f64> = t3.rows.iter().filter(|r| (lo..hi).contains(&r.values[0].unwrap())).filter_map(|r| r.values[2]).collect();
        v.iter().sum::<f64>() / v.len() as f64
    };
    println!("mean T3 for J < -2: {:.4}, for J > 2: {:.4}", mean(-8.1, -2.0), mean(2.0, 8.1));
    println!("wrote {}", dir.display());
    Ok(())
}

//! dT3/dJ and d<Z>/dJ across J for three anisotropies. The sign of dT3/dJ
//! separates frustrated (J > 0) from nonfrustrated (J < 0) couplings.
//!
//! cargo run --example susceptibility

use std::path::Path;
use triq::cli::{emit_svg, SvgKind};
use triq::sweep::{concat, run_sweep, Axis, AxisName, Quantity};
use triq::{SweepResult, SweepSpec};

pub fn run_example() -> triq::Result<SweepResult> {
    let parts = [0.5, 1.0, 1.5]
        .iter()
        .map(|&eta| {
            let mut spec = SweepSpec::new(Axis::new(AxisName::J, -2.0, 2.0, 41), vec![Quantity::ChiT3, Quantity::ChiM]);
            spec.fixed.eta = eta;
            Ok(run_sweep(&spec, 0)?.with_constants(&[("eta", eta)]))
        })
        .collect::<triq::Result<Vec<_>>>()?;
    concat(parts)
}

fn main() -> triq::Result<()> {
    let result = run_example()?;
    let chi = result.column("chi_t3").unwrap();
    let chi_m = result.column("chi_m").unwrap();
    let js = result.column("j").unwrap();
    let etas = result.column("eta").unwrap();
    for k in (0..result.rows.len()).step_by(5) {
        println!(
            "eta={:.1} J={:5.2}  chi_T3={:+.5}  chi_M={:+.5}  {}",
            etas[k].unwrap(), js[k].unwrap(), chi[k].unwrap(), chi_m[k].unwrap(), result.rows[k].flags
        );
    }
    let dir = Path::new("target/triq-examples");
    std::fs::create_dir_all(dir).expect("output directory");
    emit_svg(&result, SvgKind::Lines, &dir.join("susceptibility.svg"))?;
    println!("wrote {}", dir.join("susceptibility.svg").display());
    Ok(())
}

//! T3 of the Gibbs state against temperature for J = +-2, +-4, +-6 in the
//! isotropic triangle, and the temperature where the frustrated and
//! nonfrustrated curves at |J| = 6 cross.
//!
//! cargo run --example thermal_curves

use std::path::Path;
use triq::cli::{emit_svg, thermal_result, SvgKind};
use triq::sweep::concat;
use triq::thermal::{crossing_temperature, temperature_grid};
use triq::{CouplingConfig, PathPreference, Qubit, SweepResult};

pub fn run_example() -> triq::Result<(SweepResult, Option<f64>)> {
    let temps = temperature_grid(1.5, 50)?;
    let parts = [-6.0, -4.0, -2.0, 2.0, 4.0, 6.0]
        .iter()
        .map(|&j| {
            let c = CouplingConfig::one_param(j, 1.0);
            Ok(thermal_result(&c, &temps, Qubit::B, PathPreference::AnalyticFirst)?.with_constants(&[("j", j)]))
        })
        .collect::<triq::Result<Vec<_>>>()?;
    let cross = crossing_temperature(
        &CouplingConfig::one_param(6.0, 1.0),
        &CouplingConfig::one_param(-6.0, 1.0),
        1e-3,
        1.5,
        300,
    )?;
    Ok((concat(parts)?, cross))
}

fn main() -> triq::Result<()> {
    let (result, cross) = run_example()?;
    let t3 = result.column("thermal_t3").unwrap();
    for (k, row) in result.rows.iter().enumerate().step_by(10) {
        println!("J={:+.0} T={:.4} T3={:.5}", row.values[0].unwrap(), row.values[1].unwrap(), t3[k].unwrap());
    }
    match cross {
        Some(t) => println!("J=+6 and J=-6 curves cross at T={t:.4}"),
        None => println!("J=+6 and J=-6 curves do not cross below T=1.5"),
    }
    let dir = Path::new("target/triq-examples");
    std::fs::create_dir_all(dir).expect("output directory");
    emit_svg(&result, SvgKind::Lines, &dir.join("thermal_curves.svg"))?;
    println!("wrote {}", dir.join("thermal_curves.svg").display());
    Ok(())
}

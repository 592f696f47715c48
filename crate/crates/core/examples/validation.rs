//! Closed-form energies and correlation measures against exact
//! diagonalization on the standard parameter grids.
//!
//! cargo run --release --example validation

use triq::validation::{validate, GridSize, ValidationReport};

pub fn run_example(size: GridSize) -> triq::Result<ValidationReport> {
    validate(size)
}

fn main() -> triq::Result<()> {
    let report = run_example(GridSize::Default)?;
    for g in &report.grids {
        println!(
            "{:>10}: {} points, {} without closed form, energy dev {:.2e}, measure dev {:.2e}",
            g.name, g.points, g.misses, g.energy_max_dev, g.measure_max_dev
        );
    }
    println!("{}", if report.passed { "all within tolerance" } else { "tolerance exceeded" });
    Ok(())
}

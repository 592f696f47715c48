//! Ground-state T3 and dT3/dJ for the 1:0.8:eta and 1:1.2:eta triangles,
//! where the closed forms switch branch at a J threshold.
//!
//! cargo run --example two_bond_branches

use triq::analytic::OmegaBranch;
use triq::sweep::{run_sweep, Axis, AxisName, Quantity};
use triq::{SweepResult, SweepSpec};

pub fn run_example(count: usize) -> triq::Result<Vec<(f64, SweepResult)>> {
    [0.8, 1.2]
        .iter()
        .map(|&omega| {
            let mut spec = SweepSpec::new(Axis::new(AxisName::J, -6.0, 6.0, count), vec![Quantity::T3, Quantity::ChiT3]);
            spec.axis2 = Some(Axis::new(AxisName::Eta, 0.2, 2.0, count));
            spec.fixed.omega = omega;
            Ok((omega, run_sweep(&spec, 0)?))
        })
        .collect()
}

fn main() -> triq::Result<()> {
    for (omega, r) in run_example(25)? {
        let branch = OmegaBranch::from_omega(omega)?;
        println!("omega={omega}: upper branch above J = {:.3} at eta = 1", branch.threshold(1.0));
        let paths: std::collections::BTreeMap<String, usize> = r.rows.iter().fold(Default::default(), |mut m, row| {
            *m.entry(row.path.to_string()).or_default() += 1;
            m
        });
        println!("  rows by path: {paths:?}");
        let t3 = r.column("t3").unwrap();
        let (lo, hi) = t3.iter().flatten().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| (a.min(v), b.max(v)));
        println!("  T3 range [{lo:.4}, {hi:.4}]");
    }
    Ok(())
}

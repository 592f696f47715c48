//! Ground-state negativities and T3 for a few couplings, with the
//! computation path each number came from.
//!
//! cargo run --example ground_correlations

use triq::correlations::{correlation_report, ReportOptions};
use triq::{CorrelationReport, CouplingConfig};

pub fn run_example() -> triq::Result<Vec<CorrelationReport>> {
    let configs = [
        CouplingConfig::one_param(-50.0, 1.0),
        CouplingConfig::one_param(-2.0, 1.0),
        CouplingConfig::one_param(6.0, 1.0),
        CouplingConfig::one_param(100.0, 1.0),
        CouplingConfig::one_param(10.0, 20.0),
        CouplingConfig::two_param(6.0, 1.4, 1.4),
        CouplingConfig::two_param(6.0, 0.72, 1.18),
        CouplingConfig::two_param(3.0, 0.5, 0.8),
    ];
    configs
        .iter()
        .map(|c| correlation_report(c, &ReportOptions::default()))
        .collect()
}

fn main() -> triq::Result<()> {
    println!("{:>6} {:>6} {:>6} {:>8} {:>8} {:>8} {:>14} {:>16}", "J", "eta", "omega", "N_AB", "N_B|AC", "T3", "regime", "path");
    for r in run_example()? {
        println!(
            "{:6.1} {:6.2} {:6.2} {:8.5} {:8.5} {:8.5} {:>14} {:>16}",
            r.config.j, r.config.eta, r.config.omega, r.n_ab, r.n_b_ac, r.t3_central_b, r.regime.to_string(), r.path.to_string()
        );
    }
    Ok(())
}

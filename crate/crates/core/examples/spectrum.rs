//! Spectrum of the isotropic triangle: closed forms next to Jacobi
//! diagonalization, and the gap closing near J = 0.
//!
//! cargo run --example spectrum

use triq::analytic::analytic_spectrum_one_param;
use triq::hamiltonian::spectrum_of;
use triq::CouplingConfig;

type Row = (f64, [f64; 8], [f64; 8]);

pub fn run_example() -> triq::Result<Vec<Row>> {
    let mut out = Vec::new();
    for j in [-6.0, -4.0, -2.0, -0.5, 0.5, 2.0, 4.0, 6.0] {
        let numeric = spectrum_of(&CouplingConfig::one_param(j, 1.0))?.energies;
        let closed = analytic_spectrum_one_param(j, 1.0)?.ascending();
        out.push((j, numeric, closed));
    }
    Ok(out)
}

fn main() -> triq::Result<()> {
    for (j, numeric, closed) in run_example()? {
        let dev = numeric.iter().zip(closed).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        let levels: Vec<String> = numeric.iter().map(|e| format!("{e:8.4}")).collect();
        println!("J={j:5.1}  {}  gap={:.4}  |closed-numeric|={dev:.1e}", levels.join(" "), numeric[1] - numeric[0]);
    }
    Ok(())
}

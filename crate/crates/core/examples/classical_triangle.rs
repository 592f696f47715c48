//! Classical XY spins on a triangle: the 120 degree state for equal
//! antiferromagnetic bonds and how it bends when one bond weakens.
//!
//! cargo run --example classical_triangle

use triq::sweep::classical::{classical_ground_search, ClassicalGround, DEFAULT_RESOLUTION};

pub fn run_example() -> triq::Result<Vec<([f64; 3], ClassicalGround)>> {
    let couplings = [
        [1.0, 1.0, 1.0],
        [-1.0, -1.0, -1.0],
        [-1.0, -1.0, -0.5],
        [-1.0, -1.0, -0.2],
        [-1.0, 0.5, -1.0],
    ];
    couplings
        .iter()
        .map(|&c| Ok((c, classical_ground_search(c, DEFAULT_RESOLUTION)?)))
        .collect()
}

fn main() -> triq::Result<()> {
    for (c, g) in run_example()? {
        let deg = g.thetas.map(f64::to_degrees);
        println!(
            "J=({:+.1}, {:+.1}, {:+.1})  E={:+.6}  angles=({:.1}, {:.1}, {:.1}) deg",
            c[0], c[1], c[2], g.energy, deg[0], deg[1], deg[2]
        );
    }
    Ok(())
}

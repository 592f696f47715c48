//! Classical XY spins on the triangle: `E = -sum J_ij cos(theta_i - theta_j)`.

use crate::error::{Result, TriqError};
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

pub const DEFAULT_RESOLUTION: usize = 96;

/// Couplings are ordered `(J_AB, J_BC, J_CA)`.
pub fn classical_xy_energy(thetas: [f64; 3], couplings: [f64; 3]) -> f64 {
    let [a, b, c] = thetas;
    let [jab, jbc, jca] = couplings;
    -(jab * (a - b).cos() + jbc * (b - c).cos() + jca * (c - a).cos())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalGround {
    /// `thetas[0]` is pinned to 0.
    pub thetas: [f64; 3],
    pub energy: f64,
}

fn best_on_grid(
    couplings: [f64; 3],
    centre: (f64, f64),
    step: f64,
    half_width: i64,
) -> ClassicalGround {
    let mut best = ClassicalGround {
        thetas: [0.0, centre.0, centre.1],
        energy: f64::INFINITY,
    };
    for kb in -half_width..=half_width {
        let tb = centre.0 + kb as f64 * step;
        for kc in -half_width..=half_width {
            let tc = centre.1 + kc as f64 * step;
            let e = classical_xy_energy([0.0, tb, tc], couplings);
            if e < best.energy {
                best = ClassicalGround {
                    thetas: [0.0, tb, tc],
                    energy: e,
                };
            }
        }
    }
    best
}

/// Grid minimum over `(theta_B, theta_C)` with `theta_A = 0`, followed by a
/// pass at ten times the density within one coarse step of the incumbent.
pub fn classical_ground_search(couplings: [f64; 3], resolution: usize) -> Result<ClassicalGround> {
    if resolution < 8 {
        return Err(TriqError::InvalidParameter(format!(
            "resolution {resolution} must be >= 8"
        )));
    }
    if couplings.iter().any(|c| !c.is_finite()) {
        return Err(TriqError::InvalidParameter("couplings must be finite".into()));
    }
    let step = TAU / resolution as f64;
    let half = (resolution / 2) as i64;
    let coarse = best_on_grid(couplings, (0.0, 0.0), step, half);
    let fine = best_on_grid(couplings, (coarse.thetas[1], coarse.thetas[2]), step / 10.0, 10);
    let best = if fine.energy < coarse.energy { fine } else { coarse };
    let wrap = |t: f64| t.rem_euclid(TAU);
    Ok(ClassicalGround {
        thetas: [0.0, wrap(best.thetas[1]), wrap(best.thetas[2])],
        energy: best.energy,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn aligned_ferromagnet() {
        assert_eq!(classical_xy_energy([0.3, 0.3, 0.3], [1.0, 1.0, 1.0]), -3.0);
        let g = classical_ground_search([1.0, 2.0, 0.5], DEFAULT_RESOLUTION).unwrap();
        assert!((g.energy + 3.5).abs() < 1e-12);
    }

    #[test]
    fn frustrated_120_degrees() {
        let e = classical_xy_energy([0.0, TAU / 3.0, 2.0 * TAU / 3.0], [-1.0; 3]);
        assert!((e + 1.5).abs() < 1e-12);
        let g = classical_ground_search([-1.0; 3], DEFAULT_RESOLUTION).unwrap();
        assert!((g.energy + 1.5).abs() < 1e-12);
        let d = (g.thetas[1] - g.thetas[0]).rem_euclid(TAU);
        assert!((d - TAU / 3.0).abs() < 1e-9 || (d - 2.0 * TAU / 3.0).abs() < 1e-9);
    }

    #[test]
    fn isosceles_regression() {
        // closed form for J = -1, eta = 0.5 is -(1/(2 eta) + eta) |J| = -1.5
        let g = classical_ground_search([-1.0, -1.0, -0.5], DEFAULT_RESOLUTION).unwrap();
        assert!((g.energy + 1.5).abs() < 1e-6);
    }

    #[test]
    fn rejects_coarse_grids() {
        assert!(classical_ground_search([1.0; 3], 4).is_err());
    }

    proptest! {
        #[test]
        fn global_rotation_invariance(
            a in -7.0f64..7.0, b in -7.0f64..7.0, c in -7.0f64..7.0, shift in -20.0f64..20.0,
            j in prop::array::uniform3(-2.0f64..2.0),
        ) {
            let e1 = classical_xy_energy([a, b, c], j);
            let e2 = classical_xy_energy([a + shift, b + shift, c + shift], j);
            prop_assert!((e1 - e2).abs() < 1e-12);
        }
    }
}

//! Closed forms against diagonalization on fixed parameter grids.

use crate::analytic;
use crate::basis::Qubit;
use crate::correlations::{ground_measures, ComputePath, GroundMeasures, PathPreference};
use crate::error::{Result, TriqError};
use crate::hamiltonian::{spectrum_of, CouplingConfig};
use crate::thermal::linspace;
use rayon::prelude::*;
use serde::Serialize;
use std::str::FromStr;

pub const ENERGY_TOL: f64 = 1e-8;
pub const MEASURE_TOL: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridSize {
    /// 20x20 at omega = 1 and 15x15 for each of omega = 0.8, 1.2.
    Default,
    Quick,
}

impl FromStr for GridSize {
    type Err = TriqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "default" => Ok(GridSize::Default),
            "quick" => Ok(GridSize::Quick),
            other => Err(TriqError::Usage(format!("unknown grid '{other}' (default | quick)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub name: String,
    pub points: usize,
    /// Points where the closed forms were unavailable.
    pub misses: usize,
    pub energy_max_dev: f64,
    pub measure_max_dev: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub grids: Vec<GridReport>,
    pub energy_max_dev: f64,
    pub measure_max_dev: f64,
    pub energy_tol: f64,
    pub measure_tol: f64,
    pub passed: bool,
}

/// `j` values for the omega = 0.8 / 1.2 grids, avoiding `j = 0`.
pub fn branch_j_values(count: usize) -> Vec<f64> {
    let neg = count / 2;
    let mut js = linspace(-8.0, -0.5, neg);
    js.extend(linspace(0.5, 8.0, count - neg));
    js
}

pub fn one_bond_points(n: usize) -> Vec<(f64, f64)> {
    let js = linspace(-8.0, 8.0, n);
    let etas = linspace(0.1, 2.0, n);
    js.iter().flat_map(|&j| etas.iter().map(move |&e| (j, e))).collect()
}

pub fn branch_points(n: usize) -> Vec<(f64, f64)> {
    let js = branch_j_values(n);
    let etas = linspace(0.1, 2.0, n);
    js.iter().flat_map(|&j| etas.iter().map(move |&e| (j, e))).collect()
}

/// Largest difference over all negativities and the three T3 values.
pub fn measure_deviation(a: &GroundMeasures, b: &GroundMeasures) -> f64 {
    let (x, y) = (a.negativities, b.negativities);
    let pairs = [
        (x.n_a_bc, y.n_a_bc),
        (x.n_b_ac, y.n_b_ac),
        (x.n_c_ab, y.n_c_ab),
        (x.n_ab, y.n_ab),
        (x.n_ac, y.n_ac),
        (x.n_bc, y.n_bc),
        (a.t3(Qubit::A), b.t3(Qubit::A)),
        (a.t3(Qubit::B), b.t3(Qubit::B)),
        (a.t3(Qubit::C), b.t3(Qubit::C)),
    ];
    pairs.iter().map(|(p, q)| (p - q).abs()).fold(0.0, f64::max)
}

struct PointCheck {
    miss: bool,
    energy_dev: f64,
    measure_dev: f64,
}

fn check_point(config: CouplingConfig) -> Result<PointCheck> {
    let numeric = ground_measures(&config, PathPreference::NumericOnly)?;
    let analytic = ground_measures(&config, PathPreference::AnalyticFirst)?;
    if analytic.path != ComputePath::Analytic {
        return Ok(PointCheck {
            miss: true,
            energy_dev: 0.0,
            measure_dev: 0.0,
        });
    }
    let energy_dev = if config.omega == 1.0 {
        let exact = spectrum_of(&config)?.energies;
        let closed = analytic::analytic_spectrum_one_param(config.j, config.eta)?.ascending();
        exact
            .iter()
            .zip(closed)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    } else {
        (analytic.energy - numeric.energy).abs()
    };
    Ok(PointCheck {
        miss: false,
        energy_dev,
        measure_dev: measure_deviation(&analytic, &numeric),
    })
}

fn run_grid(name: &str, omega: f64, points: &[(f64, f64)]) -> Result<GridReport> {
    let checks: Vec<PointCheck> = points
        .par_iter()
        .map(|&(j, eta)| check_point(CouplingConfig::two_param(j, eta, omega)))
        .collect::<Result<_>>()?;
    Ok(GridReport {
        name: name.into(),
        points: points.len(),
        misses: checks.iter().filter(|c| c.miss).count(),
        energy_max_dev: checks.iter().map(|c| c.energy_dev).fold(0.0, f64::max),
        measure_max_dev: checks.iter().map(|c| c.measure_dev).fold(0.0, f64::max),
    })
}

pub fn validate(size: GridSize) -> Result<ValidationReport> {
    let (n1, n2) = match size {
        GridSize::Default => (20, 15),
        GridSize::Quick => (6, 6),
    };
    let grids = vec![
        run_grid("omega=1", 1.0, &one_bond_points(n1))?,
        run_grid("omega=0.8", 0.8, &branch_points(n2))?,
        run_grid("omega=1.2", 1.2, &branch_points(n2))?,
    ];
    let energy_max_dev = grids.iter().map(|g| g.energy_max_dev).fold(0.0, f64::max);
    let measure_max_dev = grids.iter().map(|g| g.measure_max_dev).fold(0.0, f64::max);
    let passed = grids.iter().all(|g| g.misses == 0)
        && energy_max_dev < ENERGY_TOL
        && measure_max_dev < MEASURE_TOL;
    Ok(ValidationReport {
        grids,
        energy_max_dev,
        measure_max_dev,
        energy_tol: ENERGY_TOL,
        measure_tol: MEASURE_TOL,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quick_grid_passes() {
        let r = validate(GridSize::Quick).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.grids.iter().map(|g| g.points).sum::<usize>(), 36 * 3);
    }

    #[test]
    fn branch_grid_skips_zero() {
        let js = branch_j_values(15);
        assert_eq!(js.len(), 15);
        assert!(js.iter().all(|j| j.abs() >= 0.5));
    }
}

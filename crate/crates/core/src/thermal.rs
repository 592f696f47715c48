//! Gibbs states and the temperature dependence of T3.

use crate::analytic;
use crate::basis::{Qubit, DIM};
use crate::correlations::{ComputePath, DensityMatrix, Negativities, PathPreference};
use crate::error::{Result, TriqError};
use crate::hamiltonian::{self, CouplingConfig, Spectrum, DEFAULT_DEGENERACY_TOL};
use crate::linalg::Matrix;

/// First point of [`temperature_grid`].
pub const GRID_START: f64 = 1e-3;

/// Boltzmann weights and the density matrix at one temperature (`k_B = 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalPoint {
    pub temperature: f64,
    /// Paired with the ascending energies of the spectrum.
    pub weights: [f64; DIM],
    pub rho: DensityMatrix,
}

/// `rho(T) = sum_k exp(-E_k/T) |e_k><e_k| / Z`.
///
/// `T = 0` gives the equal mixture over the levels within
/// [`DEFAULT_DEGENERACY_TOL`] of the ground energy.
pub fn gibbs_state(spectrum: &Spectrum, temperature: f64) -> Result<ThermalPoint> {
    if !temperature.is_finite() || temperature < 0.0 {
        return Err(TriqError::InvalidParameter(format!(
            "temperature {temperature} must be finite and >= 0"
        )));
    }
    let e0 = spectrum.ground_energy();
    let mut weights = [0.0; DIM];
    if temperature == 0.0 {
        let g = spectrum.ground_multiplicity(DEFAULT_DEGENERACY_TOL);
        for w in weights.iter_mut().take(g) {
            *w = 1.0 / g as f64;
        }
    } else {
        for (w, e) in weights.iter_mut().zip(&spectrum.energies) {
            *w = (-(e - e0) / temperature).exp();
        }
        let z: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= z;
        }
    }
    let mut m = Matrix::zeros(DIM);
    for (w, v) in weights.iter().zip(&spectrum.vectors) {
        if *w > 0.0 {
            m.add_scaled(&Matrix::outer(v), *w);
        }
    }
    Ok(ThermalPoint {
        temperature,
        weights,
        rho: DensityMatrix::from_parts_unchecked(m, Qubit::ALL.to_vec()),
    })
}

/// Spectrum from the closed-form eigenbasis when `omega = 1`, else from
/// diagonalization.
pub fn spectrum_for(config: &CouplingConfig, pref: PathPreference) -> Result<(Spectrum, ComputePath)> {
    config.validate()?;
    if pref == PathPreference::NumericOnly {
        return Ok((hamiltonian::spectrum_of(config)?, ComputePath::Numeric));
    }
    if config.omega != 1.0 {
        return Ok((hamiltonian::spectrum_of(config)?, ComputePath::Numeric));
    }
    match analytic::analytic_eigenvectors_one_param(config.j / config.h, config.eta) {
        Ok(basis) => {
            let pairs = basis
                .energies
                .iter()
                .zip(basis.states)
                .map(|(e, s)| (e * config.h, s))
                .collect();
            Ok((Spectrum::from_pairs(pairs)?, ComputePath::Analytic))
        }
        Err(e) if e.is_analytic_miss() => {
            Ok((hamiltonian::spectrum_of(config)?, ComputePath::NumericFallback))
        }
        Err(e) => Err(e),
    }
}

pub fn thermal_negativities(spectrum: &Spectrum, temperature: f64) -> Result<Negativities> {
    Negativities::of_density(&gibbs_state(spectrum, temperature)?.rho)
}

/// T3 of the Gibbs state, using the pure-state combination of mixed-state
/// negativities.
pub fn thermal_t3(config: &CouplingConfig, temperature: f64, central: Qubit) -> Result<f64> {
    let spectrum = hamiltonian::spectrum_of(config)?;
    Ok(thermal_negativities(&spectrum, temperature)?.t3(central))
}

/// T3 at each temperature, sharing one spectrum.
pub fn thermal_curve(spectrum: &Spectrum, temperatures: &[f64], central: Qubit) -> Result<Vec<f64>> {
    temperatures
        .iter()
        .map(|&t| Ok(thermal_negativities(spectrum, t)?.t3(central)))
        .collect()
}

/// `T3(0) - T3(T)` for central qubit B.
pub fn robustness_delta(config: &CouplingConfig, temperature: f64) -> Result<f64> {
    if temperature.is_nan() || temperature <= 0.0 {
        return Err(TriqError::InvalidParameter(format!(
            "temperature {temperature} must be positive"
        )));
    }
    let spectrum = hamiltonian::spectrum_of(config)?;
    let t = thermal_curve(&spectrum, &[0.0, temperature], Qubit::B)?;
    Ok(t[0] - t[1])
}

/// `count` temperatures ending at `t_max`: geometric from 1e-3 up to
/// `t_max/10`, then linear.
pub fn temperature_grid(t_max: f64, count: usize) -> Result<Vec<f64>> {
    if count < 2 || !t_max.is_finite() || t_max <= GRID_START {
        return Err(TriqError::InvalidParameter(format!(
            "need count >= 2 and t_max > {GRID_START}, got {count} and {t_max}"
        )));
    }
    let knee = t_max / 10.0;
    if knee <= GRID_START || count < 4 {
        return Ok(linspace(GRID_START, t_max, count));
    }
    let n_geo = (count / 5).max(2);
    let ratio = (knee / GRID_START).ln() / (n_geo - 1) as f64;
    let mut out: Vec<f64> = (0..n_geo).map(|k| GRID_START * (ratio * k as f64).exp()).collect();
    out[n_geo - 1] = knee;
    out.extend(linspace(knee, t_max, count - n_geo + 1).into_iter().skip(1));
    Ok(out)
}

pub(crate) fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    if count == 1 {
        return vec![lo];
    }
    let step = (hi - lo) / (count - 1) as f64;
    (0..count)
        .map(|k| if k + 1 == count { hi } else { lo + k as f64 * step })
        .collect()
}

/// Lowest temperature in `[lo, hi]` where the T3 curves of `first` and
/// `second` cross, located by scanning `scan` points and bisecting.
pub fn crossing_temperature(
    first: &CouplingConfig,
    second: &CouplingConfig,
    lo: f64,
    hi: f64,
    scan: usize,
) -> Result<Option<f64>> {
    let s1 = hamiltonian::spectrum_of(first)?;
    let s2 = hamiltonian::spectrum_of(second)?;
    let diff = |t: f64| -> Result<f64> {
        Ok(thermal_negativities(&s1, t)?.t3(Qubit::B) - thermal_negativities(&s2, t)?.t3(Qubit::B))
    };
    let grid = linspace(lo, hi, scan.max(2));
    let mut prev = (grid[0], diff(grid[0])?);
    for &t in &grid[1..] {
        let d = diff(t)?;
        if prev.1 == 0.0 {
            return Ok(Some(prev.0));
        }
        if prev.1.signum() != d.signum() {
            let (mut a, mut b, fa) = (prev.0, t, prev.1);
            for _ in 0..60 {
                let mid = 0.5 * (a + b);
                let fm = diff(mid)?;
                if fm.signum() == fa.signum() {
                    a = mid;
                } else {
                    b = mid;
                }
                if b - a < 1e-12 {
                    break;
                }
            }
            return Ok(Some(0.5 * (a + b)));
        }
        prev = (t, d);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(j: f64, eta: f64, omega: f64) -> Spectrum {
        hamiltonian::spectrum_of(&CouplingConfig::two_param(j, eta, omega)).unwrap()
    }

    #[test]
    fn infinite_temperature_is_maximally_mixed() {
        let p = gibbs_state(&spec(6.0, 1.0, 1.0), 1e9).unwrap();
        for w in p.weights {
            assert!((w - 0.125).abs() < 1e-8);
        }
        let t = thermal_t3(&CouplingConfig::one_param(-3.0, 0.4), 1e9, Qubit::B).unwrap();
        assert!(t.abs() < 1e-8);
    }

    #[test]
    fn zero_temperature_is_ground_projector() {
        let s = spec(6.0, 1.0, 1.0);
        let p = gibbs_state(&s, 0.0).unwrap();
        assert_eq!(p.weights[0], 1.0);
        let proj = Matrix::outer(&s.vectors[0]);
        assert!(p.rho.matrix().max_abs_diff(&proj) < 1e-15);
        let t3 = thermal_t3(&CouplingConfig::one_param(6.0, 1.0), 0.0, Qubit::B).unwrap();
        assert!((t3 - 0.5).abs() < 0.02);
    }

    #[test]
    fn degenerate_ground_space_is_mixed_evenly() {
        let s = Spectrum::from_pairs(
            (0..DIM)
                .map(|k| (if k < 2 { -1.0 } else { k as f64 }, crate::basis::basis_state(k)))
                .collect(),
        )
        .unwrap();
        let p = gibbs_state(&s, 0.0).unwrap();
        assert_eq!(&p.weights[..3], &[0.5, 0.5, 0.0]);
    }

    #[test]
    fn negative_temperature_rejected() {
        assert!(gibbs_state(&spec(1.0, 1.0, 1.0), -0.1).is_err());
        assert!(gibbs_state(&spec(1.0, 1.0, 1.0), f64::NAN).is_err());
    }

    #[test]
    fn low_temperature_two_level_structure() {
        let j = -4.0;
        let s = spec(j, 1.0, 1.0);
        let p = gibbs_state(&s, 0.5).unwrap();
        assert!(p.weights[0] + p.weights[1] > 0.999);
        let e0 = s.energies[0];
        let a = (e0 + j - 1.0) / (e0 + j + 3.0);
        // e0 ~ |001> + |010> + |100> + a|111>
        let v = s.vectors[0];
        assert!((v[1] / v[2] - 1.0).abs() < 1e-9);
        assert!((v[4] / v[2] - 1.0).abs() < 1e-9);
        assert!((v[7] / v[2] - a).abs() < 1e-9);
        let e1 = s.energies[1];
        let b = (e1 - 2.0 * j + 1.0) / j;
        let u = s.vectors[1];
        assert!((u[0] / u[3] - b).abs() < 1e-9);
        assert!((u[5] / u[3] - 1.0).abs() < 1e-9);
        assert!((u[6] / u[3] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn shift_invariance() {
        let s = spec(2.5, 0.6, 1.3);
        let mut shifted = s.clone();
        for e in &mut shifted.energies {
            *e += 17.0;
        }
        let a = gibbs_state(&s, 0.3).unwrap();
        let b = gibbs_state(&shifted, 0.3).unwrap();
        assert!(a.rho.matrix().max_abs_diff(b.rho.matrix()) < 1e-12);
    }

    #[test]
    fn analytic_and_numeric_spectra_agree() {
        let c = CouplingConfig::one_param(-3.0, 1.5);
        let (a, path) = spectrum_for(&c, PathPreference::AnalyticFirst).unwrap();
        assert_eq!(path, ComputePath::Analytic);
        let n = hamiltonian::spectrum_of(&c).unwrap();
        let ta = thermal_curve(&a, &[0.0, 0.2, 1.0], Qubit::B).unwrap();
        let tn = thermal_curve(&n, &[0.0, 0.2, 1.0], Qubit::B).unwrap();
        for (x, y) in ta.iter().zip(&tn) {
            assert!((x - y).abs() < 1e-9);
        }
        let (_, path) = spectrum_for(&CouplingConfig::one_param(0.0, 1.0), PathPreference::AnalyticFirst).unwrap();
        assert_eq!(path, ComputePath::NumericFallback);
    }

    #[test]
    fn isotropic_delta_is_nonnegative() {
        assert!(robustness_delta(&CouplingConfig::one_param(6.0, 1.0), 0.05).unwrap() >= 0.0);
        assert!(robustness_delta(&CouplingConfig::one_param(6.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn grid_shape() {
        let g = temperature_grid(1.5, 50).unwrap();
        assert_eq!(g.len(), 50);
        assert_eq!(g[0], GRID_START);
        assert_eq!(*g.last().unwrap(), 1.5);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
        assert!(temperature_grid(1.0, 1).is_err());
    }

    #[test]
    fn frustrated_curve_overtakes_nonfrustrated() {
        let t = crossing_temperature(
            &CouplingConfig::one_param(6.0, 1.0),
            &CouplingConfig::one_param(-6.0, 1.0),
            1e-3,
            0.3,
            60,
        )
        .unwrap()
        .expect("curves cross below T = 0.3");
        assert!(t > 0.0 && t < 0.3);
        let above = thermal_t3(&CouplingConfig::one_param(6.0, 1.0), 0.3, Qubit::B).unwrap();
        let below = thermal_t3(&CouplingConfig::one_param(-6.0, 1.0), 0.3, Qubit::B).unwrap();
        assert!(above > below);
    }
}

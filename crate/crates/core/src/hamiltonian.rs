//! Model parameters, the 8x8 Hamiltonian and its spectrum.

use crate::basis::{self, Qubit, State, DIM};
use crate::error::{Result, TriqError};
use crate::linalg::{symmetric_eigen, Matrix};
use serde::{Deserialize, Serialize};

/// Levels closer than this to the ground energy count as degenerate.
pub const DEFAULT_DEGENERACY_TOL: f64 = 1e-9;

/// Parameters of `J (XA XB + omega XB XC + eta XC XA) + h (ZA + ZB + ZC)`.
///
/// `j > 0` is the frustrated (antiferromagnetic) regime, `j < 0` the
/// nonfrustrated one. `omega = 1` gives the model with a single tunable bond.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CouplingConfig {
    pub j: f64,
    pub h: f64,
    pub eta: f64,
    pub omega: f64,
}

impl CouplingConfig {
    pub fn new(j: f64, h: f64, eta: f64, omega: f64) -> Result<Self> {
        let c = CouplingConfig { j, h, eta, omega };
        c.validate()?;
        Ok(c)
    }

    /// `h = 1`, `omega = 1`.
    pub fn one_param(j: f64, eta: f64) -> Self {
        CouplingConfig {
            j,
            h: 1.0,
            eta,
            omega: 1.0,
        }
    }

    /// `h = 1`.
    pub fn two_param(j: f64, eta: f64, omega: f64) -> Self {
        CouplingConfig {
            j,
            h: 1.0,
            eta,
            omega,
        }
    }

    pub fn with_j(self, j: f64) -> Self {
        CouplingConfig { j, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [("j", self.j), ("h", self.h), ("eta", self.eta), ("omega", self.omega)];
        if let Some((name, v)) = fields.iter().find(|(_, v)| !v.is_finite()) {
            return Err(TriqError::InvalidConfig(format!("{name} = {v} is not finite")));
        }
        if self.h <= 0.0 {
            return Err(TriqError::InvalidConfig(format!("h = {} must be positive", self.h)));
        }
        if self.eta < 0.0 {
            return Err(TriqError::InvalidConfig(format!("eta = {} must be >= 0", self.eta)));
        }
        if self.omega < 0.0 {
            return Err(TriqError::InvalidConfig(format!("omega = {} must be >= 0", self.omega)));
        }
        Ok(())
    }

    /// Bonds as `(first, second, relative strength)`.
    pub fn bonds(&self) -> [(Qubit, Qubit, f64); 3] {
        [
            (Qubit::A, Qubit::B, 1.0),
            (Qubit::B, Qubit::C, self.omega),
            (Qubit::C, Qubit::A, self.eta),
        ]
    }
}

impl Default for CouplingConfig {
    fn default() -> Self {
        CouplingConfig::one_param(1.0, 1.0)
    }
}

/// Real symmetric operator on the three-qubit space.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOp8(Matrix);

impl HermitianOp8 {
    /// Accepts `m` when it is 8x8 and symmetric to
    /// `1e-12 * max(1, inf-norm)`.
    pub fn new(m: Matrix) -> Result<Self> {
        if m.dim() != DIM {
            return Err(TriqError::InvalidParameter(format!(
                "expected an 8x8 operator, got {0}x{0}",
                m.dim()
            )));
        }
        let tol = 1e-12 * m.inf_norm().max(1.0);
        if !m.is_symmetric(tol) {
            return Err(TriqError::InvalidParameter(format!(
                "operator is not symmetric (max asymmetry {:e})",
                m.max_asymmetry()
            )));
        }
        Ok(HermitianOp8(m))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    pub fn apply(&self, v: &State) -> State {
        let out = self.0.mul_vec(v);
        let mut s = [0.0; DIM];
        s.copy_from_slice(&out);
        s
    }

    pub fn expectation(&self, v: &State) -> f64 {
        basis::overlap(v, &self.apply(v))
    }
}

/// Build the Hamiltonian matrix. The result is exactly symmetric: every
/// pair-flip element is written once per ordered pair with the same value.
pub fn build_hamiltonian(config: &CouplingConfig) -> Result<HermitianOp8> {
    config.validate()?;
    let mut m = Matrix::zeros(DIM);
    for idx in 0..DIM {
        m[(idx, idx)] = config.h * basis::total_z(idx);
        for (q1, q2, strength) in config.bonds() {
            let target = idx ^ q1.mask() ^ q2.mask();
            m[(target, idx)] += config.j * strength;
        }
    }
    Ok(HermitianOp8(m))
}

/// Ascending energies and orthonormal eigenvectors.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub energies: [f64; DIM],
    /// `vectors[k]` pairs with `energies[k]`.
    pub vectors: [State; DIM],
}

impl Spectrum {
    /// Sort `(energy, vector)` pairs ascending. Used for spectra built from
    /// closed forms.
    pub fn from_pairs(mut pairs: Vec<(f64, State)>) -> Result<Self> {
        if pairs.len() != DIM {
            return Err(TriqError::InvalidParameter(format!(
                "need {DIM} eigenpairs, got {}",
                pairs.len()
            )));
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut energies = [0.0; DIM];
        let mut vectors = [[0.0; DIM]; DIM];
        for (k, (e, v)) in pairs.into_iter().enumerate() {
            energies[k] = e;
            vectors[k] = v;
        }
        Ok(Spectrum { energies, vectors })
    }

    pub fn gap(&self) -> f64 {
        self.energies[1] - self.energies[0]
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    /// Number of levels within `tol` of the ground energy.
    pub fn ground_multiplicity(&self, tol: f64) -> usize {
        self.energies
            .iter()
            .take_while(|&&e| e - self.energies[0] < tol)
            .count()
    }

    /// `sum_k E_k v_k v_k^T`
    pub fn reconstruct(&self) -> Matrix {
        let mut out = Matrix::zeros(DIM);
        for (e, v) in self.energies.iter().zip(&self.vectors) {
            out.add_scaled(&Matrix::outer(v), *e);
        }
        out
    }

    /// Largest `||H v_k - E_k v_k|| / max(1, |E_k|)`.
    pub fn max_relative_residual(&self, op: &HermitianOp8) -> f64 {
        self.energies
            .iter()
            .zip(&self.vectors)
            .map(|(e, v)| {
                let hv = op.apply(v);
                let r: f64 = hv.iter().zip(v).map(|(a, b)| (a - e * b).powi(2)).sum();
                r.sqrt() / e.abs().max(1.0)
            })
            .fold(0.0, f64::max)
    }
}

pub fn eigendecompose(op: &HermitianOp8) -> Result<Spectrum> {
    let eig = symmetric_eigen(op.matrix())?;
    let mut energies = [0.0; DIM];
    let mut vectors = [[0.0; DIM]; DIM];
    for k in 0..DIM {
        energies[k] = eig.values[k];
        let column: State = std::array::from_fn(|i| eig.vectors[(i, k)]);
        vectors[k] = basis::gauge_fixed(&column);
    }
    Ok(Spectrum { energies, vectors })
}

/// Shorthand for `eigendecompose(build_hamiltonian(config))`.
pub fn spectrum_of(config: &CouplingConfig) -> Result<Spectrum> {
    eigendecompose(&build_hamiltonian(config)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundState {
    pub state: State,
    pub energy: f64,
    /// Set when the gap to the first excited level is below the tolerance;
    /// `state` is then one (arbitrary) vector of the degenerate space.
    pub degenerate: bool,
}

pub fn ground_state(spectrum: &Spectrum, degeneracy_tol: f64) -> GroundState {
    GroundState {
        state: basis::gauge_fixed(&spectrum.vectors[0]),
        energy: spectrum.energies[0],
        degenerate: spectrum.gap() < degeneracy_tol,
    }
}

/// `<psi| ZA + ZB + ZC |psi>`
pub fn magnetization(state: &State) -> f64 {
    state
        .iter()
        .enumerate()
        .map(|(i, a)| a * a * basis::total_z(i))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::basis_state;

    #[test]
    fn field_only_hamiltonian_is_diagonal() {
        let h = build_hamiltonian(&CouplingConfig::one_param(0.0, 1.0)).unwrap();
        let expected = Matrix::diagonal(&[3.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -3.0]);
        assert_eq!(h.matrix(), &expected);
    }

    #[test]
    fn coupling_only_hamiltonian_has_pair_flips() {
        let cfg = CouplingConfig {
            j: 1.0,
            h: 1.0,
            eta: 1.0,
            omega: 1.0,
        };
        let mut h = build_hamiltonian(&cfg).unwrap().into_matrix();
        for i in 0..DIM {
            h[(i, i)] = 0.0;
        }
        // <000|H|110> from XA XB
        assert_eq!(h[(0, 6)], 1.0);
        assert_eq!(h[(6, 0)], 1.0);
        for i in 0..DIM {
            for k in 0..DIM {
                let flipped = (i ^ k).count_ones();
                if flipped != 2 {
                    assert_eq!(h[(i, k)], 0.0);
                }
            }
        }
    }

    #[test]
    fn anisotropic_amplitudes_from_000() {
        // column |000>: pair flips to |110> (J), |011> (J omega), |101> (J eta)
        let h = build_hamiltonian(&CouplingConfig::one_param(2.0, 0.5)).unwrap();
        assert!(h.matrix().is_symmetric(0.0));
        let col = h.apply(&basis_state(0));
        let mut off: Vec<f64> = col
            .iter()
            .enumerate()
            .filter(|(i, a)| *i != 0 && **a != 0.0)
            .map(|(_, a)| *a)
            .collect();
        off.sort_by(f64::total_cmp);
        assert_eq!(off, vec![1.0, 2.0, 2.0]);
        assert_eq!(col[6], 2.0);
        assert_eq!(col[3], 2.0);
        assert_eq!(col[5], 1.0);
    }

    #[test]
    fn rejects_bad_configs() {
        assert!(CouplingConfig::new(f64::NAN, 1.0, 1.0, 1.0).is_err());
        assert!(CouplingConfig::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(CouplingConfig::new(1.0, 1.0, -0.1, 1.0).is_err());
        assert!(CouplingConfig::new(1.0, 1.0, 1.0, -2.0).is_err());
        assert!(build_hamiltonian(&CouplingConfig::one_param(f64::INFINITY, 1.0)).is_err());
    }

    #[test]
    fn rejects_asymmetric_operator() {
        let mut m = Matrix::identity(8);
        m[(0, 1)] = 1e-6;
        assert!(HermitianOp8::new(m).is_err());
        assert!(HermitianOp8::new(Matrix::identity(4)).is_err());
    }

    #[test]
    fn diagonal_spectrum() {
        let s = spectrum_of(&CouplingConfig::one_param(0.0, 1.0)).unwrap();
        assert_eq!(s.energies, [-3.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 3.0]);
    }

    #[test]
    fn isotropic_lowest_levels() {
        // At eta = omega = 1 the lowest odd-parity level is J - 1 - 2 sqrt(J^2 + J + 1)
        // and the lowest even-parity level is J + 1 - 2 sqrt(J^2 - J + 1).
        for j in [-6.0f64, -4.0, -2.0, 2.0, 4.0, 6.0] {
            let s = spectrum_of(&CouplingConfig::one_param(j, 1.0)).unwrap();
            let odd = j - 1.0 - 2.0 * (j * j + j + 1.0).sqrt();
            let even = j + 1.0 - 2.0 * (j * j - j + 1.0).sqrt();
            assert!((s.energies[0] - odd).abs() < 1e-10, "j={j}");
            assert!(s.energies.iter().any(|e| (e - even).abs() < 1e-10));
        }
        let s = spectrum_of(&CouplingConfig::one_param(2.0, 1.0)).unwrap();
        assert!((s.energies[0] - (1.0 - 2.0 * 7f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn field_only_ground_state() {
        let s = spectrum_of(&CouplingConfig::one_param(0.0, 1.0)).unwrap();
        let g = ground_state(&s, DEFAULT_DEGENERACY_TOL);
        assert_eq!(g.state, basis_state(7));
        assert!(!g.degenerate);
        assert_eq!(magnetization(&g.state), -3.0);
    }

    #[test]
    fn strongly_ferromagnetic_ground_state_is_ghz_like() {
        let s = spectrum_of(&CouplingConfig::one_param(-50.0, 1.0)).unwrap();
        let g = ground_state(&s, DEFAULT_DEGENERACY_TOL);
        assert!(basis::ghz_fidelity(&g.state) > 0.999);
        // odd-parity sector: X-basis GHZ
        assert!(basis::overlap(&g.state, &basis::ghz_x(-1.0)).powi(2) > 0.999);
    }

    #[test]
    fn spectral_invariants() {
        for cfg in [
            CouplingConfig::one_param(6.0, 1.0),
            CouplingConfig::two_param(-3.0, 0.4, 1.7),
            CouplingConfig::new(1.5, 0.7, 2.0, 0.3).unwrap(),
        ] {
            let h = build_hamiltonian(&cfg).unwrap();
            let s = eigendecompose(&h).unwrap();
            assert!(s.max_relative_residual(&h) < 1e-10);
            assert!(s.reconstruct().max_abs_diff(h.matrix()) < 1e-9);
            assert!(s.energies.iter().sum::<f64>().abs() < 1e-10);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        /// Exchange the A and B bits of a basis index.
        fn relabel_a_b(i: usize) -> usize {
            ((i & 0b010) << 1) | ((i & 0b100) >> 1) | (i & 0b001)
        }

        proptest! {
            #[test]
            fn built_matrix_is_exactly_symmetric(j in -20.0f64..20.0, h in 0.01f64..5.0, eta in 0.0f64..3.0, omega in 0.0f64..3.0) {
                let m = build_hamiltonian(&CouplingConfig { j, h, eta, omega }).unwrap();
                prop_assert_eq!(m.matrix().max_asymmetry(), 0.0);
            }

            #[test]
            fn traceless_spectrum(j in -20.0f64..20.0, eta in 0.0f64..3.0, omega in 0.0f64..3.0) {
                let s = spectrum_of(&CouplingConfig::two_param(j, eta, omega)).unwrap();
                prop_assert!(s.energies.iter().sum::<f64>().abs() < 1e-10);
            }

            #[test]
            fn swapping_eta_and_omega_relabels_a_and_b(j in -10.0f64..10.0, eta in 0.0f64..3.0, omega in 0.0f64..3.0) {
                // A<->B keeps bond AB and exchanges BC with CA
                let h1 = build_hamiltonian(&CouplingConfig::two_param(j, eta, omega)).unwrap();
                let h2 = build_hamiltonian(&CouplingConfig::two_param(j, omega, eta)).unwrap();
                for i in 0..DIM {
                    for k in 0..DIM {
                        prop_assert_eq!(h1.matrix()[(i, k)], h2.matrix()[(relabel_a_b(i), relabel_a_b(k))]);
                    }
                }
                let s1 = eigendecompose(&h1).unwrap();
                let s2 = eigendecompose(&h2).unwrap();
                for k in 0..DIM {
                    prop_assert!((s1.energies[k] - s2.energies[k]).abs() < 1e-10 * s1.energies[k].abs().max(1.0));
                }
            }
        }
    }
}

//! Reduced states, negativities, the tripartite measure T3 and its
//! susceptibility.

use crate::analytic::{self, OmegaBranch};
use crate::basis::{Qubit, State};
use crate::error::{Result, TriqError};
use crate::hamiltonian::{self, CouplingConfig, DEFAULT_DEGENERACY_TOL};
use crate::linalg::{symmetric_eigen, Matrix};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Negative partial-transpose eigenvalues above this are roundoff.
pub const NEGATIVITY_CLAMP: f64 = 1e-12;

/// Default dead band for [`classify_regime`], in T3 per unit J.
pub const DEFAULT_DEAD_BAND: f64 = 1e-3;

/// Real symmetric density matrix on one, two or three qubits.
///
/// `labels` lists the qubits in A, B, C order; the first label owns the most
/// significant index bit.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: Matrix,
    labels: Vec<Qubit>,
}

impl DensityMatrix {
    pub fn new(matrix: Matrix, labels: Vec<Qubit>) -> Result<Self> {
        if labels.is_empty() || labels.len() > 3 || !labels.windows(2).all(|w| w[0] < w[1]) {
            return Err(TriqError::InvalidParameter(format!(
                "labels {labels:?} must be distinct and in A, B, C order"
            )));
        }
        if matrix.dim() != 1 << labels.len() {
            return Err(TriqError::InvalidParameter(format!(
                "dimension {} does not match {} qubits",
                matrix.dim(),
                labels.len()
            )));
        }
        if (matrix.trace() - 1.0).abs() > 1e-12 {
            return Err(TriqError::InvalidParameter(format!(
                "trace {} is not 1",
                matrix.trace()
            )));
        }
        if !matrix.is_symmetric(1e-12) {
            return Err(TriqError::InvalidParameter("density matrix is not symmetric".into()));
        }
        Ok(DensityMatrix { matrix, labels })
    }

    /// `|psi><psi|` of a normalized three-qubit state.
    pub fn from_pure(state: &State) -> Self {
        DensityMatrix {
            matrix: Matrix::outer(state),
            labels: Qubit::ALL.to_vec(),
        }
    }

    pub(crate) fn from_parts_unchecked(matrix: Matrix, labels: Vec<Qubit>) -> Self {
        DensityMatrix { matrix, labels }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[Qubit] {
        &self.labels
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    fn bit(&self, q: Qubit) -> Option<usize> {
        let n = self.labels.len();
        self.labels.iter().position(|&l| l == q).map(|k| 1 << (n - 1 - k))
    }

    /// Trace out every qubit not in `keep`.
    pub fn partial_trace(&self, keep: &[Qubit]) -> Result<DensityMatrix> {
        for q in keep {
            if self.bit(*q).is_none() {
                return Err(TriqError::InvalidParameter(format!(
                    "qubit {q} is not part of {:?}",
                    self.labels
                )));
            }
        }
        let kept: Vec<Qubit> = self.labels.iter().copied().filter(|l| keep.contains(l)).collect();
        if kept.is_empty() {
            return Err(TriqError::InvalidParameter("must keep at least one qubit".into()));
        }
        let kept_bits: Vec<usize> = kept.iter().map(|&q| self.bit(q).unwrap()).collect();
        let kept_mask: usize = kept_bits.iter().sum();
        let compress = |i: usize| {
            kept_bits
                .iter()
                .fold(0, |acc, &b| (acc << 1) | usize::from(i & b != 0))
        };
        let d = self.dim();
        let mut out = Matrix::zeros(1 << kept.len());
        for i in 0..d {
            for j in 0..d {
                if i & !kept_mask == j & !kept_mask {
                    out[(compress(i), compress(j))] += self.matrix[(i, j)];
                }
            }
        }
        Ok(DensityMatrix {
            matrix: out,
            labels: kept,
        })
    }

    /// Transpose the indices of `qubit`.
    pub fn partial_transpose(&self, qubit: Qubit) -> Result<Matrix> {
        let b = self.bit(qubit).ok_or_else(|| {
            TriqError::InvalidParameter(format!("qubit {qubit} is not part of {:?}", self.labels))
        })?;
        let d = self.dim();
        let mut out = Matrix::zeros(d);
        for i in 0..d {
            for j in 0..d {
                let (ni, nj) = ((i & !b) | (j & b), (j & !b) | (i & b));
                out[(ni, nj)] = self.matrix[(i, j)];
            }
        }
        Ok(out)
    }

    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        Ok(symmetric_eigen(&self.matrix)?.values)
    }
}

/// `||rho^{T_q}||_1 - 1`: negativity across `qubit | rest of rho`.
pub fn negativity(rho: &DensityMatrix, qubit: Qubit) -> Result<f64> {
    let pt = rho.partial_transpose(qubit)?;
    let eig = symmetric_eigen(&pt)?;
    let neg: f64 = eig.values.iter().filter(|&&l| l < 0.0).map(|l| -l).sum();
    let n = 2.0 * neg;
    Ok(if n <= 2.0 * NEGATIVITY_CLAMP * rho.dim() as f64 {
        0.0
    } else {
        n
    })
}

/// All one-versus-two and pairwise negativities of a three-qubit state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Negativities {
    pub n_a_bc: f64,
    pub n_b_ac: f64,
    pub n_c_ab: f64,
    pub n_ab: f64,
    pub n_ac: f64,
    pub n_bc: f64,
}

impl Negativities {
    pub fn of_density(rho: &DensityMatrix) -> Result<Self> {
        if rho.labels() != Qubit::ALL {
            return Err(TriqError::InvalidParameter("need a three-qubit density matrix".into()));
        }
        let pair = |a: Qubit, b: Qubit| -> Result<f64> { negativity(&rho.partial_trace(&[a, b])?, a) };
        Ok(Negativities {
            n_a_bc: negativity(rho, Qubit::A)?,
            n_b_ac: negativity(rho, Qubit::B)?,
            n_c_ab: negativity(rho, Qubit::C)?,
            n_ab: pair(Qubit::A, Qubit::B)?,
            n_ac: pair(Qubit::A, Qubit::C)?,
            n_bc: pair(Qubit::B, Qubit::C)?,
        })
    }

    /// Pure-state route: a one-versus-two negativity is `2 sqrt(det rho_q)`
    /// of the single-qubit reduction.
    pub fn of_pure(state: &State) -> Result<Self> {
        let rho = DensityMatrix::from_pure(state);
        let single = |q: Qubit| -> Result<f64> {
            let r = rho.partial_trace(&[q])?;
            let m = r.matrix();
            let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
            Ok(2.0 * det.max(0.0).sqrt())
        };
        let pair = |a: Qubit, b: Qubit| -> Result<f64> { negativity(&rho.partial_trace(&[a, b])?, a) };
        Ok(Negativities {
            n_a_bc: single(Qubit::A)?,
            n_b_ac: single(Qubit::B)?,
            n_c_ab: single(Qubit::C)?,
            n_ab: pair(Qubit::A, Qubit::B)?,
            n_ac: pair(Qubit::A, Qubit::C)?,
            n_bc: pair(Qubit::B, Qubit::C)?,
        })
    }

    pub fn one_vs_rest(&self, q: Qubit) -> f64 {
        match q {
            Qubit::A => self.n_a_bc,
            Qubit::B => self.n_b_ac,
            Qubit::C => self.n_c_ab,
        }
    }

    pub fn pair(&self, x: Qubit, y: Qubit) -> f64 {
        match (x.min(y), x.max(y)) {
            (Qubit::A, Qubit::B) => self.n_ab,
            (Qubit::A, Qubit::C) => self.n_ac,
            (Qubit::B, Qubit::C) => self.n_bc,
            _ => 0.0,
        }
    }

    /// Monogamy residual `N^2_{c|rest} - N^2_{c,x} - N^2_{c,y}`.
    pub fn residual(&self, central: Qubit) -> f64 {
        let [x, y] = central.others();
        self.one_vs_rest(central).powi(2)
            - self.pair(central, x).powi(2)
            - self.pair(central, y).powi(2)
    }

    pub fn t3(&self, central: Qubit) -> f64 {
        self.residual(central).max(0.0).sqrt()
    }
}

/// T3 for a density matrix (mixed states use the same combination).
pub fn t3(rho: &DensityMatrix, central: Qubit) -> Result<f64> {
    Ok(Negativities::of_density(rho)?.t3(central))
}

pub fn t3_pure(state: &State, central: Qubit) -> Result<f64> {
    Ok(Negativities::of_pure(state)?.t3(central))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathPreference {
    #[default]
    AnalyticFirst,
    NumericOnly,
}

impl FromStr for PathPreference {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "analytic-first" => Ok(PathPreference::AnalyticFirst),
            "numeric-only" => Ok(PathPreference::NumericOnly),
            other => Err(format!("unknown path '{other}' (analytic-first | numeric-only)")),
        }
    }
}

impl fmt::Display for PathPreference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PathPreference::AnalyticFirst => "analytic-first",
            PathPreference::NumericOnly => "numeric-only",
        })
    }
}

/// Which route produced a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComputePath {
    Analytic,
    Numeric,
    /// Closed forms were requested but not available at this point.
    NumericFallback,
}

impl fmt::Display for ComputePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ComputePath::Analytic => "analytic",
            ComputePath::Numeric => "numeric",
            ComputePath::NumericFallback => "numeric-fallback",
        })
    }
}

/// Ground state with its negativities, from either route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroundMeasures {
    pub state: State,
    pub energy: f64,
    pub degenerate: bool,
    pub negativities: Negativities,
    pub path: ComputePath,
    /// Value of the literal square-root-free closed form, where it applies.
    pub t3_literal: Option<f64>,
}

impl GroundMeasures {
    pub fn t3(&self, central: Qubit) -> f64 {
        self.negativities.t3(central)
    }
}

fn is_branch(omega: f64) -> bool {
    OmegaBranch::from_omega(omega).is_ok()
}

fn analytic_ground(config: &CouplingConfig) -> Result<GroundMeasures> {
    let j = config.j / config.h;
    if config.omega == 1.0 {
        let spec = analytic::analytic_spectrum_one_param(j, config.eta)?;
        let e0 = spec.energies[0];
        let scale = 1.0 + e0.abs();
        for (k, &e) in spec.energies.iter().enumerate().skip(1) {
            if e < e0 + DEFAULT_DEGENERACY_TOL * scale {
                return Err(TriqError::AnalyticDomain(format!(
                    "closed-form level E{k} = {e} is not above E0 = {e0}"
                )));
            }
        }
        let g = analytic::analytic_ground_state_one_param(j, config.eta)?;
        let closed = analytic::one_param_measures(&g);
        let mut neg = Negativities::of_pure(&g.state())?;
        neg.n_ab = closed.n_ab;
        neg.n_bc = closed.n_ab;
        neg.n_b_ac = closed.n_b_ac;
        Ok(GroundMeasures {
            state: g.state(),
            energy: g.e0 * config.h,
            degenerate: false,
            negativities: neg,
            path: ComputePath::Analytic,
            t3_literal: Some(closed.t3_literal),
        })
    } else if is_branch(config.omega) {
        let g = analytic::analytic_ground_two_param(j, config.eta, config.omega)?;
        let closed = analytic::two_param_measures(&g);
        let mut neg = Negativities::of_pure(&g.state())?;
        neg.n_ab = closed.n_ab;
        neg.n_bc = closed.n_bc;
        neg.n_b_ac = closed.n_b_ac;
        Ok(GroundMeasures {
            state: g.state(),
            energy: g.e0 * config.h,
            degenerate: false,
            negativities: neg,
            path: ComputePath::Analytic,
            t3_literal: None,
        })
    } else {
        Err(TriqError::UnsupportedBranch(config.omega))
    }
}

fn numeric_ground(config: &CouplingConfig, path: ComputePath) -> Result<GroundMeasures> {
    let spectrum = hamiltonian::spectrum_of(config)?;
    let g = hamiltonian::ground_state(&spectrum, DEFAULT_DEGENERACY_TOL);
    Ok(GroundMeasures {
        state: g.state,
        energy: g.energy,
        degenerate: g.degenerate,
        negativities: Negativities::of_pure(&g.state)?,
        path,
        t3_literal: None,
    })
}

/// True when closed forms cover this configuration's ground state.
pub fn has_closed_form(config: &CouplingConfig) -> bool {
    config.omega == 1.0 || is_branch(config.omega)
}

/// Ground state and its negativities. With `AnalyticFirst`, configurations
/// without closed forms are diagonalized (`Numeric`), and a closed form that
/// fails at this point falls back to diagonalization (`NumericFallback`).
pub fn ground_measures(config: &CouplingConfig, pref: PathPreference) -> Result<GroundMeasures> {
    config.validate()?;
    match pref {
        PathPreference::NumericOnly => numeric_ground(config, ComputePath::Numeric),
        PathPreference::AnalyticFirst if !has_closed_form(config) => {
            numeric_ground(config, ComputePath::Numeric)
        }
        PathPreference::AnalyticFirst => match analytic_ground(config) {
            Ok(m) => Ok(m),
            Err(e) if e.is_analytic_miss() => numeric_ground(config, ComputePath::NumericFallback),
            Err(e) => Err(e),
        },
    }
}

/// Finite-difference derivative with respect to `j`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Derivative {
    pub value: f64,
    pub step: f64,
    /// Set when `j = 0` forced a forward difference.
    pub one_sided: bool,
}

/// `1e-4 * max(1, |j|)`, halved down to `|j|/2` so that `j +- step` keeps
/// the sign of `j`.
pub fn default_step(j: f64) -> f64 {
    1e-4 * j.abs().max(1.0)
}

pub fn derivative_in_j(j: f64, step: Option<f64>, mut f: impl FnMut(f64) -> Result<f64>) -> Result<Derivative> {
    let mut step = step.unwrap_or_else(|| default_step(j));
    if !(step > 0.0 && step.is_finite()) {
        return Err(TriqError::InvalidParameter(format!("step {step} must be positive")));
    }
    if j == 0.0 {
        let value = (f(step)? - f(0.0)?) / step;
        return Ok(Derivative {
            value,
            step,
            one_sided: true,
        });
    }
    if step >= j.abs() {
        step = j.abs() / 2.0;
    }
    let value = (f(j + step)? - f(j - step)?) / (2.0 * step);
    Ok(Derivative {
        value,
        step,
        one_sided: false,
    })
}

/// `dT3/dJ` of the ground state.
pub fn mqc_susceptibility(
    config: &CouplingConfig,
    central: Qubit,
    step: Option<f64>,
    pref: PathPreference,
) -> Result<Derivative> {
    derivative_in_j(config.j, step, |j| {
        Ok(ground_measures(&config.with_j(j), pref)?.t3(central))
    })
}

/// `d<ZA + ZB + ZC>/dJ` of the ground state.
pub fn magnetic_susceptibility(
    config: &CouplingConfig,
    step: Option<f64>,
    pref: PathPreference,
) -> Result<Derivative> {
    derivative_in_j(config.j, step, |j| {
        Ok(hamiltonian::magnetization(&ground_measures(&config.with_j(j), pref)?.state))
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    Frustrated,
    Nonfrustrated,
    Indeterminate,
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Frustrated => "frustrated",
            Regime::Nonfrustrated => "nonfrustrated",
            Regime::Indeterminate => "indeterminate",
        })
    }
}

/// Sign rule on the MQC susceptibility: positive is frustrated, negative is
/// nonfrustrated, anything within `dead_band` of zero is indeterminate.
/// A `j_hint` whose sign contradicts the verdict downgrades it to
/// indeterminate.
pub fn classify_regime(t3: f64, chi_t3: f64, j_hint: Option<f64>, dead_band: f64) -> Regime {
    if !t3.is_finite() || !chi_t3.is_finite() {
        return Regime::Indeterminate;
    }
    let verdict = if chi_t3 > dead_band {
        Regime::Frustrated
    } else if chi_t3 < -dead_band {
        Regime::Nonfrustrated
    } else {
        Regime::Indeterminate
    };
    match (verdict, j_hint) {
        (Regime::Frustrated, Some(j)) if j < 0.0 => Regime::Indeterminate,
        (Regime::Nonfrustrated, Some(j)) if j > 0.0 => Regime::Indeterminate,
        (v, _) => v,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReportOptions {
    /// Central qubit for the susceptibility and the regime.
    pub central: Qubit,
    pub path: PathPreference,
    pub fd_step: Option<f64>,
    pub dead_band: f64,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            central: Qubit::B,
            path: PathPreference::AnalyticFirst,
            fd_step: None,
            dead_band: DEFAULT_DEAD_BAND,
        }
    }
}

/// Every ground-state correlation number for one parameter point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationReport {
    pub config: CouplingConfig,
    pub ground_energy: f64,
    pub degenerate: bool,
    pub n_a_bc: f64,
    pub n_b_ac: f64,
    pub n_c_ab: f64,
    pub n_ab: f64,
    pub n_ac: f64,
    pub n_bc: f64,
    pub t3_central_a: f64,
    pub t3_central_b: f64,
    pub t3_central_c: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t3_literal: Option<f64>,
    pub central: Qubit,
    pub chi_t3: f64,
    pub chi_m: f64,
    pub fd_step: f64,
    pub one_sided: bool,
    pub regime: Regime,
    pub path: ComputePath,
}

pub fn correlation_report(config: &CouplingConfig, opts: &ReportOptions) -> Result<CorrelationReport> {
    let g = ground_measures(config, opts.path)?;
    let chi_t3 = mqc_susceptibility(config, opts.central, opts.fd_step, opts.path)?;
    let chi_m = magnetic_susceptibility(config, opts.fd_step, opts.path)?;
    let n = g.negativities;
    let t3_central = g.t3(opts.central);
    Ok(CorrelationReport {
        config: *config,
        ground_energy: g.energy,
        degenerate: g.degenerate,
        n_a_bc: n.n_a_bc,
        n_b_ac: n.n_b_ac,
        n_c_ab: n.n_c_ab,
        n_ab: n.n_ab,
        n_ac: n.n_ac,
        n_bc: n.n_bc,
        t3_central_a: n.t3(Qubit::A),
        t3_central_b: n.t3(Qubit::B),
        t3_central_c: n.t3(Qubit::C),
        t3_literal: g.t3_literal,
        central: opts.central,
        chi_t3: chi_t3.value,
        chi_m: chi_m.value,
        fd_step: chi_t3.step,
        one_sided: chi_t3.one_sided,
        regime: classify_regime(t3_central, chi_t3.value, None, opts.dead_band),
        path: g.path,
    })
}

/// Normalized projector onto `state`.
pub fn projector(state: &State) -> DensityMatrix {
    let n: f64 = state.iter().map(|a| a * a).sum();
    DensityMatrix::from_parts_unchecked(Matrix::outer(state).scaled(1.0 / n), Qubit::ALL.to_vec())
}

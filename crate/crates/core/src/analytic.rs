//! Closed-form spectra, eigenvectors and correlation measures.
//!
//! Two families are covered:
//!
//! * one tunable bond (`omega = 1`): the Hamiltonian splits into parity and
//!   A<->C exchange sectors, leaving two 3x3 blocks whose characteristic
//!   cubics are solved trigonometrically. Every eigenpair has a closed form.
//! * two tunable bonds with `omega` fixed to 0.8 or 1.2: the odd-parity
//!   ground state comes from Ferrari's resolvent of a depressed quartic, with
//!   a branch switch where the linear coefficient of the quartic changes sign.
//!
//! All formulas assume `h = 1`. The public functions take the coupling in
//! units of `h`.
//!
//! These serve as an independent check on the numeric route.

use crate::basis::{State, DIM};
use crate::error::{Result, TriqError};
use std::f64::consts::FRAC_1_SQRT_2;

/// Width of the band beyond `[-1, 1]` in which an arccos argument is treated
/// as roundoff and clamped.
pub const ARCCOS_GUARD: f64 = 1e-10;

/// Distance from the branch threshold below which the two-bond forms refuse
/// to pick a branch.
pub const BRANCH_GUARD: f64 = 1e-9;

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn trig_angle(q: f64, p: f64, what: &str) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(TriqError::AnalyticDomain(format!("{what}: p = {p} is not positive")));
    }
    let arg = 3.0 * q * (3.0 * p).sqrt() / (2.0 * p * p);
    if !arg.is_finite() || arg.abs() > 1.0 + ARCCOS_GUARD {
        return Err(TriqError::AnalyticDomain(format!(
            "{what}: arccos argument {arg} outside [-1, 1]"
        )));
    }
    Ok(arg.clamp(-1.0, 1.0).acos() / 3.0)
}

/// Coefficients of the two characteristic cubics `x^3 + a x^2 + b x + c`
/// (index 1: odd-parity symmetric block, index 2: even-parity symmetric
/// block) and their trigonometric parametrization.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigCubicParamsA {
    pub a1: f64,
    pub a2: f64,
    pub b1: f64,
    pub b2: f64,
    pub c1: f64,
    pub c2: f64,
    pub p1: f64,
    pub p2: f64,
    pub q1: f64,
    pub q2: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl TrigCubicParamsA {
    pub fn new(j: f64, eta: f64) -> Result<Self> {
        check_inputs(j, eta)?;
        let (j2, j3) = (j * j, j * j * j);
        let (e2, e3) = (eta * eta, eta * eta * eta);
        let a1 = 1.0 - j * eta;
        let a2 = -1.0 - j * eta;
        let b1 = -5.0 - 4.0 * j2 - 2.0 * j * eta - j2 * e2;
        let b2 = -5.0 - 4.0 * j2 + 2.0 * j * eta - j2 * e2;
        let c1 = 3.0 - 4.0 * j2 + 3.0 * j * eta - 4.0 * j3 * eta + j2 * e2 + j3 * e3;
        let c2 = -3.0 + 4.0 * j2 + 3.0 * j * eta - 4.0 * j3 * eta - j2 * e2 + j3 * e3;
        let p1 = -b1 + a1 * a1 / 3.0;
        let p2 = -b2 + a2 * a2 / 3.0;
        let q1 = -c1 - 2.0 * a1.powi(3) / 27.0 + a1 * b1 / 3.0;
        let q2 = -c2 - 2.0 * a2.powi(3) / 27.0 + a2 * b2 / 3.0;
        let theta1 = trig_angle(q1, p1, "odd block")?;
        let theta2 = trig_angle(q2, p2, "even block")?;
        Ok(TrigCubicParamsA {
            a1,
            a2,
            b1,
            b2,
            c1,
            c2,
            p1,
            p2,
            q1,
            q2,
            theta1,
            theta2,
        })
    }

    /// Roots of one block as (lowest, top, middle) in the labelling used
    /// for E0/E6/E7 and E1/E4/E5.
    fn roots(p: f64, theta: f64, a: f64) -> [f64; 3] {
        let r = (p / 3.0).sqrt();
        let (c, s) = (theta.cos(), theta.sin());
        [
            -r * (c + SQRT3 * s) - a / 3.0,
            2.0 * r * c - a / 3.0,
            -r * (c - SQRT3 * s) - a / 3.0,
        ]
    }
}

fn check_inputs(j: f64, eta: f64) -> Result<()> {
    if !j.is_finite() || !eta.is_finite() {
        return Err(TriqError::InvalidConfig(format!("non-finite input j = {j}, eta = {eta}")));
    }
    if eta < 0.0 {
        return Err(TriqError::InvalidConfig(format!("eta = {eta} must be >= 0")));
    }
    Ok(())
}

/// Labelled closed-form spectrum for one tunable bond.
///
/// `energies[k]` is `E_k` in the labelling of the eigenvector forms:
/// E0, E6, E7 from the odd symmetric block; E1, E4, E5 from the even
/// symmetric block; E2 = -1 - J eta for `(|110> - |011>)/sqrt2`;
/// E3 = 1 - J eta for `(|100> - |001>)/sqrt2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticSpectrumA {
    pub energies: [f64; DIM],
    pub params: TrigCubicParamsA,
}

impl AnalyticSpectrumA {
    pub fn ascending(&self) -> [f64; DIM] {
        let mut e = self.energies;
        e.sort_by(f64::total_cmp);
        e
    }
}

pub fn analytic_spectrum_one_param(j: f64, eta: f64) -> Result<AnalyticSpectrumA> {
    let params = TrigCubicParamsA::new(j, eta)?;
    let [e0, e6, e7] = TrigCubicParamsA::roots(params.p1, params.theta1, params.a1);
    let [e1, e4, e5] = TrigCubicParamsA::roots(params.p2, params.theta2, params.a2);
    Ok(AnalyticSpectrumA {
        energies: [e0, e1, params.a2, params.a1, e4, e5, e6, e7],
        params,
    })
}

/// Odd-sector amplitudes `(alpha, gamma, chi)` of the state
/// `alpha|001> + gamma|010> + alpha|100> + chi|111>` with energy `e`.
fn odd_symmetric_amplitudes(j: f64, eta: f64, e: f64) -> (f64, f64, f64) {
    let alpha = j
        * (2.0 * j + 2.0 * j * e + (2.0 * e + e * e - 3.0) * eta
            - j * j * eta * (eta * eta - 2.0));
    let gamma = j * (e + j * eta - 1.0) * (e + j * eta + 3.0);
    let chi = j * (e + j * eta - 1.0).powi(2);
    (alpha, gamma, chi)
}

/// Ground state `(alpha|001> + gamma|010> + alpha|100> + chi|111>)/k0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticGroundStateA {
    pub alpha: f64,
    pub gamma: f64,
    pub chi: f64,
    pub k0: f64,
    pub e0: f64,
}

impl AnalyticGroundStateA {
    pub fn state(&self) -> State {
        let mut s = [0.0; DIM];
        s[1] = self.alpha / self.k0;
        s[2] = self.gamma / self.k0;
        s[4] = self.alpha / self.k0;
        s[7] = self.chi / self.k0;
        s
    }
}

fn amplitude_scale(j: f64, e: f64) -> f64 {
    // amplitudes are quartic in (j, e); this is their natural size
    let m = 1.0 + j.abs() + e.abs();
    j.abs() * m * m * m
}

pub fn analytic_ground_state_one_param(j: f64, eta: f64) -> Result<AnalyticGroundStateA> {
    let spec = analytic_spectrum_one_param(j, eta)?;
    let e0 = spec.energies[0];
    let (alpha, gamma, chi) = odd_symmetric_amplitudes(j, eta, e0);
    let k0 = (2.0 * alpha * alpha + gamma * gamma + chi * chi).sqrt();
    if !(k0.is_finite() && k0 > 1e-12 * amplitude_scale(j, e0)) || j == 0.0 {
        return Err(TriqError::AnalyticDomain(format!(
            "ground-state amplitudes vanish at j = {j}, eta = {eta}"
        )));
    }
    Ok(AnalyticGroundStateA {
        alpha,
        gamma,
        chi,
        k0,
        e0,
    })
}

/// Closed-form eigenbasis for one tunable bond, labelled like
/// [`AnalyticSpectrumA::energies`].
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticEigenbasisA {
    pub energies: [f64; DIM],
    pub states: [State; DIM],
}

type Block = [[f64; 3]; 3];

/// `H` on `(|001> + |100>)/sqrt2, |010>, |111>`.
fn odd_block(j: f64, eta: f64) -> Block {
    let s = std::f64::consts::SQRT_2 * j;
    [[1.0 + j * eta, s, s], [s, 1.0, j * eta], [s, j * eta, -3.0]]
}

/// `H` on `(|011> + |110>)/sqrt2, |000>, |101>`.
fn even_block(j: f64, eta: f64) -> Block {
    let s = std::f64::consts::SQRT_2 * j;
    [[-1.0 + j * eta, s, s], [s, 3.0, j * eta], [s, j * eta, -1.0]]
}

fn block_residual(m: &Block, e: f64, v: [f64; 3]) -> f64 {
    (0..3)
        .map(|i| {
            let r: f64 = (0..3).map(|k| m[i][k] * v[k]).sum::<f64>() - e * v[i];
            r * r
        })
        .sum::<f64>()
        .sqrt()
}

fn unit(v: [f64; 3]) -> Option<[f64; 3]> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    (n.is_finite() && n > 0.0).then(|| v.map(|x| x / n))
}

/// Null vector of `m - e I` from the largest cross product of two rows.
fn null_vector(m: &Block, e: f64) -> Option<[f64; 3]> {
    let r: Vec<[f64; 3]> = (0..3)
        .map(|i| {
            let mut row = m[i];
            row[i] -= e;
            row
        })
        .collect();
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    let best = [cross(r[0], r[1]), cross(r[0], r[2]), cross(r[1], r[2])]
        .into_iter()
        .max_by(|a, b| {
            let na: f64 = a.iter().map(|x| x * x).sum();
            let nb: f64 = b.iter().map(|x| x * x).sum();
            na.total_cmp(&nb)
        })?;
    let scale = r.iter().flatten().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let n = best.iter().map(|x| x * x).sum::<f64>().sqrt();
    if n <= 1e-12 * scale * scale {
        return None;
    }
    unit(best)
}

/// Block eigenvector: the amplitude form if it is accurate, otherwise the
/// null vector of the block.
fn block_vector(m: &Block, e: f64, formula: Option<[f64; 3]>, k: usize) -> Result<[f64; 3]> {
    let tol = 1e-10 * (1.0 + e.abs());
    if let Some(v) = formula.and_then(unit) {
        if block_residual(m, e, v) < tol {
            return Ok(v);
        }
    }
    null_vector(m, e)
        .filter(|v| block_residual(m, e, *v) < 1e-8 * (1.0 + e.abs()))
        .ok_or_else(|| TriqError::AnalyticDomain(format!("no eigenvector for psi{k} at E = {e}")))
}

/// All eight eigenvectors. The symmetric-sector amplitude forms are used
/// where they are accurate; where a symmetric level meets an antisymmetric
/// one their amplitudes vanish, and the vector is taken as the null vector
/// of the 3x3 sector block instead.
pub fn analytic_eigenvectors_one_param(j: f64, eta: f64) -> Result<AnalyticEigenbasisA> {
    let spec = analytic_spectrum_one_param(j, eta)?;
    let e = spec.energies;
    let mut states = [[0.0; DIM]; DIM];
    let r2 = std::f64::consts::SQRT_2;

    let odd = odd_block(j, eta);
    for k in [0usize, 6, 7] {
        let (alpha, gamma, chi) = odd_symmetric_amplitudes(j, eta, e[k]);
        let v = block_vector(&odd, e[k], Some([r2 * alpha, gamma, chi]), k)?;
        let s = &mut states[k];
        s[1] = v[0] / r2;
        s[4] = v[0] / r2;
        s[2] = v[1];
        s[7] = v[2];
    }

    let even = even_block(j, eta);
    for k in [1usize, 4, 5] {
        let ek = e[k];
        let den = ek + 1.0 + j * eta;
        let formula = (den.abs() >= 1e-12 && j != 0.0).then(|| {
            let alpha = ((ek + 1.0) * (ek + 1.0 - j * eta) - 2.0 * j * j) / (j * den);
            let delta = (ek * eta + 2.0 * j + eta - j * eta * eta) / den;
            [r2, alpha, delta]
        });
        let v = block_vector(&even, ek, formula, k)?;
        let s = &mut states[k];
        s[3] = v[0] / r2;
        s[6] = v[0] / r2;
        s[0] = v[1];
        s[5] = v[2];
    }

    states[2][6] = FRAC_1_SQRT_2;
    states[2][3] = -FRAC_1_SQRT_2;
    states[3][4] = FRAC_1_SQRT_2;
    states[3][1] = -FRAC_1_SQRT_2;

    Ok(AnalyticEigenbasisA { energies: e, states })
}

/// Two-site negativity and tripartite measure (central qubit B) of the
/// one-bond ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OneParamMeasures {
    /// `(m - alpha^2 - gamma^2)/K0^2`, equal to `N_BC` by A<->C symmetry.
    pub n_ab: f64,
    /// `2 sqrt(2 alpha^2 (gamma^2 + chi^2))/K0^2`.
    pub n_b_ac: f64,
    /// `2 sqrt[(alpha^2+gamma^2) m - (alpha^2-gamma^2)^2]/K0^2`.
    pub t3: f64,
    /// `2 sqrt2 [(alpha^2+gamma^2) m - (alpha^2-gamma^2)^2]/K0^2`, the
    /// form without the square root. Kept for comparison only.
    pub t3_literal: f64,
}

pub fn analytic_nab_t3_one_param(j: f64, eta: f64) -> Result<OneParamMeasures> {
    let g = analytic_ground_state_one_param(j, eta)?;
    Ok(one_param_measures(&g))
}

pub fn one_param_measures(g: &AnalyticGroundStateA) -> OneParamMeasures {
    let (a2, g2, c2) = (g.alpha * g.alpha, g.gamma * g.gamma, g.chi * g.chi);
    let k2 = g.k0 * g.k0;
    let m = ((a2 - g2).powi(2) + 4.0 * a2 * c2).sqrt();
    let bracket = (a2 + g2) * m - (a2 - g2).powi(2);
    OneParamMeasures {
        n_ab: ((m - a2 - g2) / k2).max(0.0),
        n_b_ac: 2.0 * (2.0 * a2 * (g2 + c2)).sqrt() / k2,
        t3: 2.0 * bracket.max(0.0).sqrt() / k2,
        t3_literal: 2.0 * std::f64::consts::SQRT_2 * bracket / k2,
    }
}

/// The two anisotropy values with closed-form ground states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaBranch {
    /// omega = 0.8
    Low,
    /// omega = 1.2
    High,
}

impl OmegaBranch {
    pub fn from_omega(omega: f64) -> Result<Self> {
        if (omega - 0.8).abs() < 1e-12 {
            Ok(OmegaBranch::Low)
        } else if (omega - 1.2).abs() < 1e-12 {
            Ok(OmegaBranch::High)
        } else {
            Err(TriqError::UnsupportedBranch(omega))
        }
    }

    pub fn omega(self) -> f64 {
        match self {
            OmegaBranch::Low => 0.8,
            OmegaBranch::High => 1.2,
        }
    }

    /// Coupling where the ground-energy formula switches branch:
    /// `(5/(4 eta))^(1/3)` for 0.8, `(5/(6 eta))^(1/3)` for 1.2.
    pub fn threshold(self, eta: f64) -> f64 {
        let num = match self {
            OmegaBranch::Low => 5.0 / 4.0,
            OmegaBranch::High => 5.0 / 6.0,
        };
        if eta == 0.0 {
            f64::INFINITY
        } else {
            (num / eta).cbrt()
        }
    }
}

/// Ferrari resolvent data for the odd-sector quartic at fixed omega.
///
/// With the quartic `E^4 + p E^2 + q E + r`, the coefficients below are
/// `a = 25 p`, `b = 125 q`, `c = 625 r`, and the resolvent roots `l_k`
/// satisfy `E = (+-sqrt l1 +- sqrt l2 +- sqrt l3)/20`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventParamsB {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub u: f64,
    pub v: f64,
    pub theta: f64,
    pub l: [f64; 3],
}

impl ResolventParamsB {
    pub fn new(j: f64, eta: f64, branch: OmegaBranch) -> Result<Self> {
        let (j2, j4) = (j * j, j.powi(4));
        let (e2, e4) = (eta * eta, eta.powi(4));
        let (a, b, c) = match branch {
            OmegaBranch::Low => (
                -150.0 - 82.0 * j2 - 50.0 * j2 * e2,
                1000.0 - 800.0 * j.powi(3) * eta,
                25.0 * j2 * (50.0 * e2 - 82.0 * j2 * e2 + 25.0 * j2 * e4 + 82.0) + 81.0 * j4 - 1875.0,
            ),
            OmegaBranch::High => (
                -150.0 - 122.0 * j2 - 50.0 * j2 * e2,
                1000.0 - 1200.0 * j.powi(3) * eta,
                25.0 * j2 * (50.0 * e2 - 122.0 * j2 * e2 + 25.0 * j2 * e4 + 122.0) + 121.0 * j4 - 1875.0,
            ),
        };
        let u = -16.0 * a * a + 64.0 * c + 64.0 * a * a / 3.0;
        // v = -(depressed constant term) of l^3 + 8a l^2 + 16(a^2 - 4c) l - 64 b^2
        let v = 64.0 * b * b - 1024.0 * a.powi(3) / 27.0 + (128.0 * a.powi(3) - 512.0 * a * c) / 3.0;
        let theta = trig_angle(v, u, "quartic resolvent")?;
        let r = (u / 3.0).sqrt();
        let (ct, st) = (theta.cos(), theta.sin());
        let shift = 8.0 * a / 3.0;
        let mut l = [
            2.0 * r * ct - shift,
            -r * (ct + SQRT3 * st) - shift,
            -r * (ct - SQRT3 * st) - shift,
        ];
        let scale = a.abs().max(1.0);
        for lk in &mut l {
            if *lk < -1e-9 * scale {
                return Err(TriqError::AnalyticDomain(format!("negative resolvent root {lk}")));
            }
            *lk = lk.max(0.0);
        }
        Ok(ResolventParamsB {
            a,
            b,
            c,
            u,
            v,
            theta,
            l,
        })
    }
}

/// Ground state `(xi|001> + zeta|010> + delta|100> + tau|111>)/kcal0` for
/// omega in {0.8, 1.2}.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticGroundStateB {
    pub xi: f64,
    pub zeta: f64,
    pub delta: f64,
    pub tau: f64,
    /// `sqrt(xi^2 + zeta^2 + delta^2 + tau^2)`
    pub kcal0: f64,
    pub e0: f64,
    pub branch: OmegaBranch,
    /// `true` when `j` is above the branch threshold.
    pub upper: bool,
}

impl AnalyticGroundStateB {
    pub fn omega_branch(&self) -> f64 {
        self.branch.omega()
    }

    pub fn state(&self) -> State {
        let mut s = [0.0; DIM];
        s[1] = self.xi / self.kcal0;
        s[2] = self.zeta / self.kcal0;
        s[4] = self.delta / self.kcal0;
        s[7] = self.tau / self.kcal0;
        s
    }
}

pub fn analytic_ground_two_param(j: f64, eta: f64, omega: f64) -> Result<AnalyticGroundStateB> {
    check_inputs(j, eta)?;
    let branch = OmegaBranch::from_omega(omega)?;
    let threshold = branch.threshold(eta);
    if (j - threshold).abs() < BRANCH_GUARD {
        return Err(TriqError::BranchAmbiguity { j, threshold });
    }
    let upper = j > threshold;
    let res = ResolventParamsB::new(j, eta, branch)?;
    let [s1, s2, s3] = res.l.map(f64::sqrt);
    let e = if upper {
        (-s1 + s2 - s3) / 20.0
    } else {
        (-s1 - s2 - s3) / 20.0
    };

    let (j2, j3) = (j * j, j.powi(3));
    let e2 = eta * eta;
    let em1 = e - 1.0;
    let quad = e * e + 2.0 * e - 3.0;
    let (xi, zeta, delta, tau) = match branch {
        OmegaBranch::Low => (
            125.0 * em1 * em1 * (e + 3.0)
                - 200.0 * j3 * eta
                - 5.0 * j2 * (41.0 * e + 25.0 * e2 * e - 25.0 * e2 + 59.0),
            250.0 * j2 * (e + 1.0) * eta + 4.0 * j3 * (25.0 * e2 + 9.0) + 100.0 * j * quad,
            200.0 * j2 * (e + 1.0) + 5.0 * j3 * (41.0 * eta - 25.0 * eta.powi(3)) + 125.0 * quad * j * eta,
            125.0 * j * em1 * em1 + 200.0 * j2 * em1 * eta + 5.0 * j3 * (25.0 * e2 - 9.0),
        ),
        OmegaBranch::High => (
            125.0 * em1 * em1 * (e + 3.0)
                - 300.0 * j3 * eta
                - 5.0 * j2 * (61.0 * e + 25.0 * e2 * e - 25.0 * e2 + 39.0),
            250.0 * j2 * (e + 1.0) * eta + 2.0 * j3 * (75.0 * e2 - 33.0) + 150.0 * j * quad,
            300.0 * j2 * (e + 1.0) + 5.0 * j3 * (61.0 * eta - 25.0 * eta.powi(3)) + 125.0 * quad * j * eta,
            125.0 * j * em1 * em1 + 300.0 * j2 * em1 * eta + 5.0 * j3 * (25.0 * e2 + 11.0),
        ),
    };
    let kcal0 = (xi * xi + zeta * zeta + delta * delta + tau * tau).sqrt();
    if !(kcal0.is_finite() && kcal0 > 1e-12 * 125.0 * amplitude_scale(j, e)) || j == 0.0 {
        return Err(TriqError::AnalyticDomain(format!(
            "ground-state amplitudes vanish at j = {j}, eta = {eta}, omega = {omega}"
        )));
    }
    Ok(AnalyticGroundStateB {
        xi,
        zeta,
        delta,
        tau,
        kcal0,
        e0: e,
        branch,
        upper,
    })
}

/// Negativities and T3 (central qubit B) of the two-bond ground state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoParamMeasures {
    pub n_b_ac: f64,
    pub n_ab: f64,
    pub n_bc: f64,
    pub t3: f64,
}

/// Piecewise closed forms for the two-bond ground state.
///
/// With `K^2 = xi^2 + zeta^2 + delta^2 + tau^2` the overall prefactor is
/// `1/K^2`. Below the threshold both two-site partial transposes have a single
/// negative eigenvalue; above it, one of them (BC for 0.8, AB for 1.2)
/// switches block and is written through its full trace norm `w`.
pub fn two_param_measures(g: &AnalyticGroundStateB) -> TwoParamMeasures {
    let (x2, z2, d2, t2) = (g.xi * g.xi, g.zeta * g.zeta, g.delta * g.delta, g.tau * g.tau);
    let k2 = x2 + z2 + d2 + t2;
    let inv = 1.0 / k2;
    let t0 = ((z2 - d2).powi(2) + 4.0 * x2 * t2).sqrt();
    let n0 = ((x2 - z2).powi(2) + 4.0 * d2 * t2).sqrt();
    let s0 = ((d2 - t2).powi(2) + 4.0 * x2 * z2).sqrt();
    let r0 = ((x2 - t2).powi(2) + 4.0 * z2 * d2).sqrt();

    let n_b_ac = 2.0 * inv * ((x2 + d2) * (z2 + t2)).sqrt();
    let f0 = (x2 + z2) * n0 + (z2 + d2) * t0 - (x2 - z2).powi(2);
    let lower_t3 = std::f64::consts::SQRT_2 * inv * (f0 - (z2 - d2).powi(2)).max(0.0).sqrt();
    let nab_single = inv * (t0 - z2 - d2);
    let nbc_single = inv * (n0 - x2 - z2);

    let (n_ab, n_bc, t3) = match (g.branch, g.upper) {
        (_, false) => (nab_single, nbc_single, lower_t3),
        (OmegaBranch::Low, true) => {
            let w0 = k2 + n0 + s0 + (x2 + z2 - n0).abs() + (d2 + t2 - s0).abs();
            let f1 = 4.0 * (x2 + d2) * (z2 + t2) - (d2 + z2 - t0).powi(2);
            let t3 = inv * (f1 - 0.25 * (w0 - 2.0 * k2).powi(2)).max(0.0).sqrt();
            (nab_single, 0.5 * inv * w0 - 1.0, t3)
        }
        (OmegaBranch::High, true) => {
            let w = k2 + t0 + r0 + (x2 + t2 - r0).abs() + (z2 + d2 - t0).abs();
            let f1 = 4.0 * (x2 + d2) * (z2 + t2) - (x2 + z2 - n0).powi(2);
            let t3 = inv * (f1 - 0.25 * (w - 2.0 * k2).powi(2)).max(0.0).sqrt();
            (0.5 * inv * w - 1.0, nbc_single, t3)
        }
    };
    TwoParamMeasures {
        n_b_ac,
        n_ab: n_ab.max(0.0),
        n_bc: n_bc.max(0.0),
        t3,
    }
}

pub fn analytic_t3_two_param(j: f64, eta: f64, omega: f64) -> Result<f64> {
    let g = analytic_ground_two_param(j, eta, omega)?;
    Ok(two_param_measures(&g).t3)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isotropic_closed_forms() {
        // second-lowest level for j < 0 is J + 1 - 2 sqrt(J^2 - J + 1)
        let s = analytic_spectrum_one_param(-4.0, 1.0).unwrap();
        assert!((s.energies[1] - (-3.0 - 2.0 * 21f64.sqrt())).abs() < 1e-10);
        assert!((s.energies[1] + 12.165_151_389_911_68).abs() < 1e-9);
        // lowest level at j = 2 is J - 1 - 2 sqrt(J^2 + J + 1) = 1 - 2 sqrt(7)
        let s = analytic_spectrum_one_param(2.0, 1.0).unwrap();
        assert!((s.energies[0] - (1.0 - 2.0 * 7f64.sqrt())).abs() < 1e-10);
    }

    #[test]
    fn exchange_antisymmetric_levels() {
        for (j, eta) in [(2.0, 1.0), (-3.0, 1.5), (0.7, 0.2)] {
            let s = analytic_spectrum_one_param(j, eta).unwrap();
            assert_eq!(s.energies[2], -1.0 - j * eta);
            assert_eq!(s.energies[3], 1.0 - j * eta);
        }
    }

    #[test]
    fn field_only_limit() {
        let s = analytic_spectrum_one_param(0.0, 1.0).unwrap();
        let e = s.ascending();
        let want = [-3.0, -1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 3.0];
        for (a, b) in e.iter().zip(want) {
            assert!((a - b).abs() < 1e-7, "{e:?}");
        }
        assert!(analytic_ground_state_one_param(0.0, 1.0).is_err());
    }

    #[test]
    fn small_coupling_is_nearly_a_product_state() {
        let m = analytic_nab_t3_one_param(1e-4, 0.7).unwrap();
        assert!(m.n_ab < 1e-3);
        assert!(m.t3 < 1e-3);
    }

    #[test]
    fn ground_state_is_normalized() {
        for (j, eta) in [(6.0, 1.0), (-50.0, 1.0), (4.0, 0.7), (0.3, 1.9)] {
            let g = analytic_ground_state_one_param(j, eta).unwrap();
            let n: f64 = g.state().iter().map(|a| a * a).sum();
            assert!((n - 1.0).abs() < 1e-12);
            assert!(g.k0 > 0.0);
        }
    }

    #[test]
    fn literal_t3_form_disagrees() {
        let m = analytic_nab_t3_one_param(6.0, 1.0).unwrap();
        assert!((m.t3 - 0.487_751_225_600_311).abs() < 1e-9);
        assert!(m.t3_literal > 100.0);
    }

    fn gram_deviation(b: &AnalyticEigenbasisA) -> f64 {
        let mut worst = 0.0f64;
        for p in 0..DIM {
            for q in 0..DIM {
                let d: f64 = (0..DIM).map(|i| b.states[p][i] * b.states[q][i]).sum();
                worst = worst.max((d - if p == q { 1.0 } else { 0.0 }).abs());
            }
        }
        worst
    }

    #[test]
    fn orthonormal_at_level_crossings() {
        // at eta = 1 a symmetric level meets each antisymmetric one
        for (j, eta) in [(2.0, 1.0), (-4.0, 1.0), (6.0, 1.0), (3.0, 0.4)] {
            let b = analytic_eigenvectors_one_param(j, eta).unwrap();
            assert!(gram_deviation(&b) < 1e-9, "j={j} eta={eta}");
        }
    }

    #[test]
    fn zero_coupling_has_no_closed_form_vectors() {
        assert!(analytic_eigenvectors_one_param(0.0, 1.0).is_err());
    }

    #[test]
    fn unsupported_omega() {
        assert_eq!(
            analytic_ground_two_param(6.0, 1.4, 1.4).unwrap_err(),
            TriqError::UnsupportedBranch(1.4)
        );
        assert!(analytic_t3_two_param(6.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn branch_threshold_values() {
        assert!((OmegaBranch::Low.threshold(1.0) - 1.25f64.cbrt()).abs() < 1e-15);
        assert!((OmegaBranch::High.threshold(1.0) - (5.0f64 / 6.0).cbrt()).abs() < 1e-15);
        assert_eq!(OmegaBranch::Low.threshold(0.0), f64::INFINITY);
        let thr = OmegaBranch::Low.threshold(1.3);
        assert!(matches!(
            analytic_ground_two_param(thr, 1.3, 0.8),
            Err(TriqError::BranchAmbiguity { .. })
        ));
    }

    #[test]
    fn branch_continuity() {
        for (eta, omega) in [(1.0, 0.8), (1.3, 0.8), (0.7, 1.2), (1.5, 1.2)] {
            let thr = OmegaBranch::from_omega(omega).unwrap().threshold(eta);
            let below = analytic_t3_two_param(thr - 1e-7, eta, omega).unwrap();
            let above = analytic_t3_two_param(thr + 1e-7, eta, omega).unwrap();
            assert!((below - above).abs() < 1e-5, "eta={eta} omega={omega}: {below} vs {above}");
        }
    }

    #[test]
    fn two_param_state_normalized() {
        let g = analytic_ground_two_param(3.0, 1.3, 1.2).unwrap();
        let n: f64 = g.state().iter().map(|a| a * a).sum();
        assert!((n - 1.0).abs() < 1e-12);
        assert!(g.upper);
        assert_eq!(g.omega_branch(), 1.2);
    }
}

//! Three-qubit computational basis.
//!
//! Index of `|sA sB sC>` is `4*sA + 2*sB + sC`; `|0>` is the +1 eigenvector
//! of Z. Every module, including partial traces and transposes, relies on
//! this ordering.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

pub const DIM: usize = 8;

/// Real amplitudes of a three-qubit pure state.
pub type State = [f64; DIM];

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Qubit {
    A,
    B,
    C,
}

impl Qubit {
    pub const ALL: [Qubit; 3] = [Qubit::A, Qubit::B, Qubit::C];

    /// Bit mask of this qubit inside a three-qubit index.
    pub const fn mask(self) -> usize {
        match self {
            Qubit::A => 0b100,
            Qubit::B => 0b010,
            Qubit::C => 0b001,
        }
    }

    /// The two other qubits, in A, B, C order.
    pub fn others(self) -> [Qubit; 2] {
        match self {
            Qubit::A => [Qubit::B, Qubit::C],
            Qubit::B => [Qubit::A, Qubit::C],
            Qubit::C => [Qubit::A, Qubit::B],
        }
    }
}

impl fmt::Display for Qubit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Qubit::A => "A",
            Qubit::B => "B",
            Qubit::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for Qubit {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Qubit::A),
            "B" | "b" => Ok(Qubit::B),
            "C" | "c" => Ok(Qubit::C),
            other => Err(format!("unknown qubit label `{other}` (expected A, B or C)")),
        }
    }
}

/// Eigenvalue of Z on `qubit` for basis state `index`.
#[inline]
pub fn z_sign(index: usize, qubit: Qubit) -> f64 {
    if index & qubit.mask() == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Eigenvalue of `ZA + ZB + ZC` on basis state `index`.
#[inline]
pub fn total_z(index: usize) -> f64 {
    Qubit::ALL.iter().map(|&q| z_sign(index, q)).sum()
}

pub fn basis_state(index: usize) -> State {
    let mut s = [0.0; DIM];
    s[index] = 1.0;
    s
}

pub fn norm(state: &State) -> f64 {
    state.iter().map(|a| a * a).sum::<f64>().sqrt()
}

pub fn normalized(state: &State) -> Option<State> {
    let n = norm(state);
    if !(n.is_finite() && n > 0.0) {
        return None;
    }
    let mut out = *state;
    out.iter_mut().for_each(|a| *a /= n);
    Some(out)
}

pub fn overlap(a: &State, b: &State) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Flip the sign so that the first amplitude larger than `1e-10` in
/// magnitude is positive.
pub fn gauge_fixed(state: &State) -> State {
    let mut out = *state;
    if let Some(first) = out.iter().find(|a| a.abs() > 1e-10) {
        if *first < 0.0 {
            out.iter_mut().for_each(|a| *a = -*a);
        }
    }
    out
}

/// `(|000> + sign |111>)/sqrt(2)`.
pub fn ghz_z(sign: f64) -> State {
    let mut s = [0.0; DIM];
    s[0] = std::f64::consts::FRAC_1_SQRT_2;
    s[7] = sign * std::f64::consts::FRAC_1_SQRT_2;
    s
}

/// `(|+++> + sign |--->)/sqrt(2)`: equal weight on the even (`sign = +1`) or
/// odd (`sign = -1`) parity basis states.
pub fn ghz_x(sign: f64) -> State {
    let want_odd = sign < 0.0;
    let mut s = [0.0; DIM];
    for (i, a) in s.iter_mut().enumerate() {
        if (i.count_ones() % 2 == 1) == want_odd {
            *a = 0.5;
        }
    }
    s
}

/// Largest fidelity with the GHZ state in the Z or X basis (either relative
/// sign). Those four states are related by local unitaries.
pub fn ghz_fidelity(state: &State) -> f64 {
    [ghz_z(1.0), ghz_z(-1.0), ghz_x(1.0), ghz_x(-1.0)]
        .iter()
        .map(|g| overlap(g, state).powi(2))
        .fold(0.0, f64::max)
}

/// `|W> = (|001> + |010> + |100>)/sqrt(3)`.
pub fn w_state() -> State {
    let mut s = [0.0; DIM];
    let a = 1.0 / 3f64.sqrt();
    s[1] = a;
    s[2] = a;
    s[4] = a;
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn masks_follow_index_convention() {
        // |s_A s_B s_C> = |100> is index 4
        assert_eq!(Qubit::A.mask(), 4);
        assert_eq!(z_sign(4, Qubit::A), -1.0);
        assert_eq!(z_sign(4, Qubit::B), 1.0);
        assert_eq!(total_z(0), 3.0);
        assert_eq!(total_z(7), -3.0);
    }

    #[test]
    fn ghz_variants_are_normalized() {
        for s in [ghz_z(1.0), ghz_z(-1.0), ghz_x(1.0), ghz_x(-1.0)] {
            assert!((norm(&s) - 1.0).abs() < 1e-15);
            assert!((ghz_fidelity(&s) - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn gauge_fix_makes_first_amplitude_positive() {
        let s = [0.0, -0.6, 0.0, 0.0, 0.8, 0.0, 0.0, 0.0];
        let g = gauge_fixed(&s);
        assert_eq!(g[1], 0.6);
        assert_eq!(g[4], -0.8);
    }

    #[test]
    fn qubit_labels_parse() {
        assert_eq!("b".parse::<Qubit>().unwrap(), Qubit::B);
        assert!("D".parse::<Qubit>().is_err());
    }
}

//! Ground-state and thermal multipartite quantum correlations of the
//! three-spin transverse-field Ising triangle with tunable bond anisotropy.
//!
//! The model is
//!
//! ```text
//! H = J (XA XB + omega XB XC + eta XC XA) + h (ZA + ZB + ZC)
//! ```
//!
//! on the eight-dimensional space of three qubits. Basis index
//! `4*sA + 2*sB + sC`, with `|0>` the +1 eigenvector of Z, is used everywhere
//! (see [`basis`]).
//!
//! Two independent routes produce every ground-state number: a dense Jacobi
//! eigensolver ([`hamiltonian`]) and closed-form expressions ([`analytic`]).
//! [`correlations`] turns states into negativities, the tripartite measure
//! T3 and its susceptibility; [`thermal`] handles Gibbs states; [`sweep`]
//! drives parameter grids; [`cli`] is the command-line front end.

pub mod analytic;
pub mod basis;
pub mod cli;
pub mod correlations;
pub mod error;
pub mod hamiltonian;
pub mod linalg;
pub mod sweep;
pub mod thermal;
pub mod validation;

pub use basis::{Qubit, State};
pub use correlations::{CorrelationReport, DensityMatrix, PathPreference, Regime};
pub use error::{Result, TriqError};
pub use hamiltonian::{CouplingConfig, HermitianOp8, Spectrum};
pub use sweep::{SweepResult, SweepSpec};

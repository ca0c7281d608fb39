//! Small dense complex linear algebra and spin-operator algebra.

mod cg;
mod eigen;
mod matrix;
mod spin;

pub use cg::clebsch_gordan;
pub use eigen::{eig_hermitian, propagator, Spectrum, MAX_SWEEPS, OFF_DIAGONAL_TARGET, TOL_HERM};
pub use matrix::{kron, OperatorMatrix, I, ONE, ZERO};
pub use spin::{spin_operators, SpinOperatorSet};

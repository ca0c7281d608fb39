//! Exact simulation of a spin-1/2 particle exchange-coupled to two
//! anisotropic spins: Hamiltonian construction, magnetization sectors,
//! density-matrix dynamics, two-level reductions, and resonance searches.

pub mod dynamics;
pub mod error;
pub mod halfint;
pub mod linalg;
pub mod model;
pub mod resonance;
pub mod verify;

pub use error::{Error, Result};
pub use halfint::{HalfInt, SpinQuantum};

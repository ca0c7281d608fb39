//! Density-matrix time evolution and two-level observables.

mod bloch;
mod density;
mod evolve;
mod two_level;

pub use bloch::{axis_probabilities, bloch_sample, bloch_trajectory, equator_state, BlochSample};
pub use density::DensityMatrix;
pub use evolve::{evolve, figure_grid, populations, uniform_grid, EigenFrameState, Evolver};
pub use two_level::{
    rabi_probability, reduce_pair, restricted_pair, two_level_propagator, two_level_reduce,
    TwoLevelSystem, PAIR_TOL,
};

//! Anisotropy–exchange resonance conditions, parameter scans, and the
//! spin-1/2 comparison bound.

mod scan;
mod search;
mod spin_half;
mod switching;
mod table;

pub use scan::{
    scan_dj, search_horizon, transition_point, ScanPoint, ScanResult, HORIZON_CAP, HORIZON_PERIODS,
    SCAN_SAMPLES,
};
pub use search::{golden_max, max_transition_probability, TransitionProbe, TIME_RESOLUTION};
pub use spin_half::{
    spin_half_jk_grid, spin_half_max_amplitude, spin_half_transitions, PairMaximum, SpinHalfReport,
};
pub use switching::{switching_summary, SwitchingSummary};
pub use table::{resonance_table, ResonanceRecord};

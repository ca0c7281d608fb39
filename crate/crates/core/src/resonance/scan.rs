use rayon::prelude::*;

use super::search::TransitionProbe;
use crate::dynamics::{restricted_pair, Evolver};
use crate::error::{Error, Result};
use crate::model::{build_effective_hamiltonian, device_basis, DeviceLabel, ModelParams};

/// Upper bound on the search horizon, in 1/cm⁻¹.
pub const HORIZON_CAP: f64 = 1e4;
/// Periods of the local Rabi frequency covered at each grid point.
pub const HORIZON_PERIODS: f64 = 3.0;
/// Uniform samples per search before golden-section refinement.
pub const SCAN_SAMPLES: usize = 600;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanPoint {
    pub d: f64,
    pub j_k: f64,
    pub delta_k: f64,
    pub amplitude: f64,
    pub frequency: f64,
}

/// Points in row-major order: `d` outer, `j_k` inner.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanResult {
    pub points: Vec<ScanPoint>,
}

impl ScanResult {
    pub fn argmax(&self) -> Option<&ScanPoint> {
        self.points
            .iter()
            .fold(None, |best: Option<&ScanPoint>, p| match best {
                Some(b) if b.amplitude >= p.amplitude => Some(b),
                _ => Some(p),
            })
    }
}

/// Horizon covering [`HORIZON_PERIODS`] oscillations of the pair's local
/// two-level frequency, capped at [`HORIZON_CAP`].
pub fn search_horizon(omega: f64) -> f64 {
    if omega > 0.0 {
        (HORIZON_PERIODS * std::f64::consts::PI / omega).min(HORIZON_CAP)
    } else {
        HORIZON_CAP
    }
}

/// Peak transfer `pair.0 → pair.1` and its oscillation frequency for one
/// parameter set in the effective space.
pub fn transition_point(p: &ModelParams, pair: (DeviceLabel, DeviceLabel)) -> Result<(f64, f64)> {
    let h = build_effective_hamiltonian(p)?;
    let reg = device_basis(p.s23)?;
    let (i, j) = (reg.index_of_device(&pair.0)?, reg.index_of_device(&pair.1)?);
    let horizon = search_horizon(restricted_pair(&h, &reg, pair.0, pair.1)?.rabi_frequency());
    let probe = TransitionProbe::new(&Evolver::new(&h)?, i, j);
    let (amp, _) = probe.maximize(horizon, SCAN_SAMPLES)?;
    Ok((amp, probe.oscillation_frequency(amp, horizon, SCAN_SAMPLES)))
}

/// Sweeps the anisotropy and mean exchange, keeping `Δ_K` and all other
/// couplings of `params_base`. Grid points run in parallel on the current
/// rayon pool; the output order is fixed.
pub fn scan_dj(
    params_base: &ModelParams,
    d_grid: &[f64],
    jk_grid: &[f64],
    pair: (DeviceLabel, DeviceLabel),
) -> Result<ScanResult> {
    if d_grid.is_empty() || jk_grid.is_empty() {
        return Err(Error::DegenerateGrid("grids must be non-empty".into()));
    }
    if d_grid.iter().chain(jk_grid).any(|x| !x.is_finite()) {
        return Err(Error::DegenerateGrid("grid values must be finite".into()));
    }
    params_base.validate()?;
    let reg = device_basis(params_base.s23)?;
    reg.index_of_device(&pair.0)?;
    reg.index_of_device(&pair.1)?;
    if pair.0.m_total() != pair.1.m_total() {
        return Err(Error::InvalidArgument(format!(
            "{} and {} have different total m; the Hamiltonian cannot connect them",
            pair.0.ket(),
            pair.1.ket()
        )));
    }
    let delta_k = params_base.delta_k();
    let grid: Vec<(f64, f64)> = d_grid
        .iter()
        .flat_map(|&d| jk_grid.iter().map(move |&jk| (d, jk)))
        .collect();
    let points = grid
        .par_iter()
        .map(|&(d, j_k)| {
            let mut p = params_base.clone().with_exchange(j_k, delta_k);
            p.d_anis = d;
            let (amplitude, frequency) = transition_point(&p, pair)?;
            Ok(ScanPoint {
                d,
                j_k,
                delta_k,
                amplitude,
                frequency,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanResult { points })
}

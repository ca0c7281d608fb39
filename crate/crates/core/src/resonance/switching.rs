//! Peak switching along a simulated Bloch trajectory.

use crate::dynamics::{axis_probabilities, bloch_trajectory, BlochSample, TwoLevelSystem};
use crate::error::Result;
use crate::model::{DeviceLabel, ModelParams, Space};

#[derive(Clone, Debug)]
pub struct SwitchingSummary {
    /// Peak of `p_z = (w + v_z)/2`; starts at 1 when the trajectory begins
    /// on the north pole.
    pub peak_pz: f64,
    /// Peak population of the south pole, `(w − v_z)/2`.
    pub peak_transfer: f64,
    pub time_of_peak_transfer: f64,
    pub samples: Vec<BlochSample>,
}

/// Starts in `north` and follows the `(north, south)` Bloch vector over
/// `times`.
pub fn switching_summary(
    p: &ModelParams,
    space: Space,
    north: DeviceLabel,
    south: DeviceLabel,
    times: &[f64],
) -> Result<SwitchingSummary> {
    let h = space.hamiltonian(p)?;
    let reg = space.registry(p)?;
    let rho0 = space.initial_state(p, &north)?;
    let tls = TwoLevelSystem {
        eps: 0.0,
        g: 0.0,
        pole_north: north,
        pole_south: south,
    };
    let samples = bloch_trajectory(&h, &reg, &tls, &rho0, times)?;
    let mut peak_pz = f64::NEG_INFINITY;
    let mut peak_transfer = f64::NEG_INFINITY;
    let mut time_of_peak_transfer = 0.0;
    for s in &samples {
        peak_pz = peak_pz.max(axis_probabilities(s).2);
        let transfer = 0.5 * (s.in_subspace_weight - s.vz);
        if transfer > peak_transfer {
            peak_transfer = transfer;
            time_of_peak_transfer = s.time;
        }
    }
    Ok(SwitchingSummary {
        peak_pz,
        peak_transfer,
        time_of_peak_transfer,
        samples,
    })
}

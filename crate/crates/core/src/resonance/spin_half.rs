//! Peak switching amplitude of the model with spin-1/2 sites.

use super::scan::transition_point;
use crate::error::{Error, Result};
use crate::halfint::SpinQuantum;
use crate::model::{DeviceLabel, ModelParams};

#[derive(Clone, Debug, PartialEq)]
pub struct PairMaximum {
    pub initial: DeviceLabel,
    pub target: DeviceLabel,
    pub p_max: f64,
    pub j_k_at_max: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpinHalfReport {
    pub per_pair: Vec<PairMaximum>,
    pub best: f64,
}

/// Product-to-entangled transitions of the spin-1/2 model: the polarized
/// triplet states into the `m23 = 0` triplet and into the singlet.
pub fn spin_half_transitions() -> Vec<(DeviceLabel, DeviceLabel)> {
    vec![
        (DeviceLabel::down(1, 1), DeviceLabel::up(1, 0)),
        (DeviceLabel::up(1, -1), DeviceLabel::down(1, 0)),
        (DeviceLabel::down(1, 1), DeviceLabel::up(0, 0)),
        (DeviceLabel::up(1, -1), DeviceLabel::down(0, 0)),
    ]
}

/// Mean exchange values searched: ±0.1 … ±2.0 in steps of 0.1.
pub fn spin_half_jk_grid() -> Vec<f64> {
    (1..=20)
        .flat_map(|k| [-0.1 * k as f64, 0.1 * k as f64])
        .collect()
}

/// Brute-force maximum of the switching amplitude over the mean exchange,
/// holding the other couplings (and `Δ_K`) of `params_base`. The anisotropy
/// is a constant shift for spin-1/2 sites.
pub fn spin_half_max_amplitude(params_base: &ModelParams) -> Result<SpinHalfReport> {
    if params_base.s23 != SpinQuantum::HALF {
        return Err(Error::UnsupportedSpin(params_base.s23.to_string()));
    }
    let delta_k = params_base.delta_k();
    let mut per_pair = Vec::new();
    for (initial, target) in spin_half_transitions() {
        let mut best = PairMaximum {
            initial,
            target,
            p_max: 0.0,
            j_k_at_max: 0.0,
        };
        for jk in spin_half_jk_grid() {
            let p = params_base.clone().with_exchange(jk, delta_k);
            let (amp, _) = transition_point(&p, (initial, target))?;
            if amp > best.p_max {
                best.p_max = amp;
                best.j_k_at_max = jk;
            }
        }
        per_pair.push(best);
    }
    let best = per_pair.iter().map(|p| p.p_max).fold(0.0, f64::max);
    Ok(SpinHalfReport { per_pair, best })
}

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::halfint::SpinQuantum;
use crate::model::DeviceLabel;

/// A two-state transition that becomes complete at `J_K = J_R`.
#[derive(Clone, Debug, PartialEq)]
pub struct ResonanceRecord {
    pub pair: (DeviceLabel, DeviceLabel),
    /// `J_R = coefficient · D`.
    pub j_r_coefficient: Ratio<i64>,
    /// Peak transfer probability at resonance.
    pub p_r: f64,
    /// `Ω_R = coefficient · |D|`.
    pub omega_r_coefficient: f64,
}

impl ResonanceRecord {
    pub fn j_r(&self, d: f64) -> f64 {
        *self.j_r_coefficient.numer() as f64 / *self.j_r_coefficient.denom() as f64 * d
    }

    pub fn omega_r(&self, d: f64) -> f64 {
        self.omega_r_coefficient * d.abs()
    }
}

/// The anisotropy–exchange resonances of the spin-1 model.
///
/// The `m = ±3/2` pairs tune out at `J_K = 2D/3` and oscillate at `|J_K|`;
/// the `m = ±1/2` pairs within the `s23 = 1` triplet tune out at
/// `J_K = −2D` and oscillate at `|J_K|/√2`.
pub fn resonance_table(s23: SpinQuantum) -> Result<Vec<ResonanceRecord>> {
    if s23 != SpinQuantum::ONE {
        return Err(Error::UnsupportedSpin(s23.to_string()));
    }
    let quintet = Ratio::new(2, 3);
    let triplet = Ratio::from_integer(-2);
    let sqrt2 = std::f64::consts::SQRT_2;
    let record = |pair, j_r_coefficient, omega_r_coefficient| ResonanceRecord {
        pair,
        j_r_coefficient,
        p_r: 1.0,
        omega_r_coefficient,
    };
    Ok(vec![
        record(
            (DeviceLabel::up(2, 1), DeviceLabel::down(2, 2)),
            quintet,
            2.0 / 3.0,
        ),
        record(
            (DeviceLabel::up(2, -2), DeviceLabel::down(2, -1)),
            quintet,
            2.0 / 3.0,
        ),
        record(
            (DeviceLabel::up(1, 0), DeviceLabel::down(1, 1)),
            triplet,
            sqrt2,
        ),
        record(
            (DeviceLabel::up(1, -1), DeviceLabel::down(1, 0)),
            triplet,
            sqrt2,
        ),
    ])
}

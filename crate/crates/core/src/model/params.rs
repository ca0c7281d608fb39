use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::halfint::SpinQuantum;

/// Coupling strengths (cm⁻¹) and site spin for one model instance.
#[derive(Clone, Debug, PartialEq)]
pub struct ModelParams {
    /// Spin of the two coupled sites, 1/2 or 1.
    pub s23: SpinQuantum,
    /// Exchange between the two coupled sites.
    pub j_h: f64,
    /// Exchange of the mobile spin with site 2.
    pub j_k2: f64,
    /// Exchange of the mobile spin with site 3.
    pub j_k3: f64,
    /// Uniaxial single-ion anisotropy.
    pub d_anis: f64,
    /// Hopping amplitude between the two sites.
    pub t_hop: Complex64,
}

impl ModelParams {
    /// Equal exchange `j_k` to both sites, no hopping.
    pub fn isotropic(s23: SpinQuantum, j_h: f64, j_k: f64, d_anis: f64) -> Self {
        Self {
            s23,
            j_h,
            j_k2: j_k,
            j_k3: j_k,
            d_anis,
            t_hop: Complex64::new(0.0, 0.0),
        }
    }

    /// Splits the mean exchange `j_k` into site couplings differing by `delta_k`.
    pub fn with_exchange(mut self, j_k: f64, delta_k: f64) -> Self {
        self.j_k2 = j_k + 0.5 * delta_k;
        self.j_k3 = j_k - 0.5 * delta_k;
        self
    }

    pub fn with_hopping(mut self, t_hop: Complex64) -> Self {
        self.t_hop = t_hop;
        self
    }

    /// `J_K2 + J_K3`.
    pub fn sigma_k(&self) -> f64 {
        self.j_k2 + self.j_k3
    }

    /// `J_K2 − J_K3`.
    pub fn delta_k(&self) -> f64 {
        self.j_k2 - self.j_k3
    }

    /// Mean exchange, `Σ_K / 2`.
    pub fn j_k(&self) -> f64 {
        0.5 * self.sigma_k()
    }

    pub fn validate(&self) -> Result<()> {
        if self.s23 != SpinQuantum::HALF && self.s23 != SpinQuantum::ONE {
            return Err(Error::UnsupportedSpin(self.s23.to_string()));
        }
        let fields = [
            ("j_h", self.j_h),
            ("j_k2", self.j_k2),
            ("j_k3", self.j_k3),
            ("d_anis", self.d_anis),
            ("t_hop.re", self.t_hop.re),
            ("t_hop.im", self.t_hop.im),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} = {v} is not finite")));
            }
        }
        Ok(())
    }
}

//! Bloch-vector view of a pole pair inside the full state.

use num_complex::Complex64;

use super::density::DensityMatrix;
use super::evolve::Evolver;
use super::two_level::TwoLevelSystem;
use crate::error::{Error, Result};
use crate::linalg::OperatorMatrix;
use crate::model::{device_basis, BasisRegistry, DeviceLabel};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BlochSample {
    pub time: f64,
    pub vx: f64,
    pub vy: f64,
    pub vz: f64,
    /// Population inside the pole pair, `ρ_nn + ρ_ss`.
    pub in_subspace_weight: f64,
}

impl BlochSample {
    /// `ρ_ns` recovered from the transverse components.
    pub fn coherence(&self) -> Complex64 {
        Complex64::new(0.5 * self.vx, -0.5 * self.vy)
    }

    pub fn norm(&self) -> f64 {
        (self.vx * self.vx + self.vy * self.vy + self.vz * self.vz).sqrt()
    }
}

/// Bloch components of the `(north, south)` pair of `rho`:
/// `vz = ρ_nn − ρ_ss`, `vx = 2 Re ρ_ns`, `vy = −2 Im ρ_ns`.
///
/// With this `vy` sign a positive detuning turns `+x` toward `+y`.
pub fn bloch_sample(rho: &DensityMatrix, north: usize, south: usize, time: f64) -> BlochSample {
    let rho_ns = rho.get(north, south);
    let (pn, ps) = (rho.get(north, north).re, rho.get(south, south).re);
    BlochSample {
        time,
        vx: 2.0 * rho_ns.re,
        vy: -2.0 * rho_ns.im,
        vz: pn - ps,
        in_subspace_weight: pn + ps,
    }
}

/// Bloch trajectory of the pair named by `tls` under evolution by `h`.
///
/// For a site-resolved registry the site factor is traced out before the
/// pole entries are read.
pub fn bloch_trajectory(
    h: &OperatorMatrix,
    basis: &BasisRegistry,
    tls: &TwoLevelSystem,
    rho0: &DensityMatrix,
    times: &[f64],
) -> Result<Vec<BlochSample>> {
    if h.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: h.dim(),
        });
    }
    let spin_basis = if basis.has_sites() {
        device_basis(basis.s23())?
    } else {
        basis.clone()
    };
    let north = spin_basis.index_of_device(&tls.pole_north)?;
    let south = spin_basis.index_of_device(&tls.pole_south)?;
    let evolver = Evolver::new(h)?;
    let frame = evolver.eigenframe(rho0)?;
    let offset = spin_basis.dim();
    let entry = |i: usize, j: usize, t: f64| {
        let mut z = evolver.element_at(&frame, i, j, t);
        if basis.has_sites() {
            z += evolver.element_at(&frame, i + offset, j + offset, t);
        }
        z
    };
    Ok(times
        .iter()
        .map(|&t| {
            let rho_ns = entry(north, south, t);
            let (pn, ps) = (entry(north, north, t).re, entry(south, south, t).re);
            BlochSample {
                time: t,
                vx: 2.0 * rho_ns.re,
                vy: -2.0 * rho_ns.im,
                vz: pn - ps,
                in_subspace_weight: pn + ps,
            }
        })
        .collect())
}

/// `p_u = (w + V·u)/2` for `u` each of the three axes.
pub fn axis_probabilities(sample: &BlochSample) -> (f64, f64, f64) {
    let w = sample.in_subspace_weight;
    (
        0.5 * (w + sample.vx),
        0.5 * (w + sample.vy),
        0.5 * (w + sample.vz),
    )
}

/// Equal superposition `(|north⟩ + |south⟩)/√2` as a density matrix.
pub fn equator_state(
    basis: &BasisRegistry,
    north: DeviceLabel,
    south: DeviceLabel,
) -> Result<DensityMatrix> {
    let mut psi = vec![Complex64::new(0.0, 0.0); basis.dim()];
    psi[basis.index_of_device(&north)?] = Complex64::new(1.0, 0.0);
    psi[basis.index_of_device(&south)?] = Complex64::new(1.0, 0.0);
    DensityMatrix::pure(&psi)
}

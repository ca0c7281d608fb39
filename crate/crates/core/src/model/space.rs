use num_complex::Complex64;

use super::basis::{device_basis, BasisRegistry, DeviceLabel};
use super::hamiltonian::{build_effective_hamiltonian, build_full_hamiltonian, KondoNormalization};
use super::params::ModelParams;
use crate::dynamics::DensityMatrix;
use crate::error::Result;
use crate::linalg::OperatorMatrix;

/// Which Hilbert space a simulation runs in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    /// Spin space only, `2·(2s+1)²` states.
    Effective,
    /// Site ⊗ spin, with explicit hopping between the two sites.
    Full(KondoNormalization),
}

impl Space {
    pub fn registry(self, p: &ModelParams) -> Result<BasisRegistry> {
        let spin = device_basis(p.s23)?;
        Ok(match self {
            Space::Effective => spin,
            Space::Full(_) => spin.with_sites(),
        })
    }

    pub fn hamiltonian(self, p: &ModelParams) -> Result<OperatorMatrix> {
        match self {
            Space::Effective => build_effective_hamiltonian(p),
            Space::Full(kappa) => build_full_hamiltonian(p, kappa),
        }
    }

    /// Pure `|label⟩`, placed in the bonding orbital `(|2⟩ + |3⟩)/√2` in the
    /// full space.
    pub fn initial_state(self, p: &ModelParams, label: &DeviceLabel) -> Result<DensityMatrix> {
        let spin = device_basis(p.s23)?;
        let i = spin.index_of_device(label)?;
        let n = spin.dim();
        match self {
            Space::Effective => DensityMatrix::basis_state(n, i),
            Space::Full(_) => {
                let mut psi = vec![Complex64::new(0.0, 0.0); 2 * n];
                psi[i] = Complex64::new(1.0, 0.0);
                psi[i + n] = Complex64::new(1.0, 0.0);
                DensityMatrix::pure(&psi)
            }
        }
    }
}

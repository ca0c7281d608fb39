use num_complex::Complex64;

use super::density::DensityMatrix;
use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, OperatorMatrix, Spectrum, ZERO};
use crate::model::{BasisLabel, BasisRegistry};

/// A Hamiltonian together with its eigendecomposition, reusable for any
/// number of evolution times.
#[derive(Clone, Debug)]
pub struct Evolver {
    spectrum: Spectrum,
}

impl Evolver {
    pub fn new(h: &OperatorMatrix) -> Result<Self> {
        Ok(Self {
            spectrum: eig_hermitian(h)?,
        })
    }

    pub fn spectrum(&self) -> &Spectrum {
        &self.spectrum
    }

    pub fn dim(&self) -> usize {
        self.spectrum.dim()
    }

    /// `ρ(t) = U(t) ρ₀ U(t)†`.
    pub fn state_at(&self, rho0: &DensityMatrix, time: f64) -> DensityMatrix {
        if time == 0.0 {
            return rho0.clone();
        }
        let u = self.spectrum.propagator(time);
        DensityMatrix::from_evolved(&(&u * rho0.matrix()) * &u.adjoint())
    }

    /// `V† ρ₀ V`, the initial state in the eigenbasis of `H`.
    pub fn eigenframe(&self, rho0: &DensityMatrix) -> Result<EigenFrameState> {
        if rho0.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho0.dim(),
            });
        }
        Ok(EigenFrameState(
            rho0.matrix().conjugate_by(&self.spectrum.vectors),
        ))
    }

    /// Single entry `ρ(t)_ij` in O(n²), without forming the full state.
    pub fn element_at(&self, frame: &EigenFrameState, i: usize, j: usize, time: f64) -> Complex64 {
        let v = &self.spectrum.vectors;
        let n = self.dim();
        let phase: Vec<Complex64> = self
            .spectrum
            .values
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -l * time))
            .collect();
        let mut acc = ZERO;
        for k in 0..n {
            let left = v[(i, k)] * phase[k];
            if left == ZERO {
                continue;
            }
            let mut row = ZERO;
            for l in 0..n {
                row += frame.0[(k, l)] * (v[(j, l)] * phase[l]).conj();
            }
            acc += left * row;
        }
        acc
    }

    pub fn evolve(&self, rho0: &DensityMatrix, times: &[f64]) -> Result<Vec<DensityMatrix>> {
        if rho0.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: rho0.dim(),
            });
        }
        Ok(times.iter().map(|&t| self.state_at(rho0, t)).collect())
    }
}

/// A state expressed in the eigenbasis of an [`Evolver`].
#[derive(Clone, Debug)]
pub struct EigenFrameState(OperatorMatrix);

/// Exact unitary evolution of `rho0` under `h` at each of `times`.
pub fn evolve(
    h: &OperatorMatrix,
    rho0: &DensityMatrix,
    times: &[f64],
) -> Result<Vec<DensityMatrix>> {
    Evolver::new(h)?.evolve(rho0, times)
}

/// Diagonal of `rho` paired with the registry labels, in registry order.
pub fn populations(rho: &DensityMatrix, basis: &BasisRegistry) -> Result<Vec<(BasisLabel, f64)>> {
    if rho.dim() != basis.dim() {
        return Err(Error::DimensionMismatch {
            expected: basis.dim(),
            found: rho.dim(),
        });
    }
    Ok(basis
        .labels()
        .iter()
        .enumerate()
        .map(|(i, l)| (*l, rho.get(i, i).re))
        .collect())
}

/// `n` uniformly spaced times from 0 to `t_max` inclusive.
pub fn uniform_grid(t_max: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![0.0],
        _ => (0..n).map(|k| t_max * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Default figure sampling: 2000 points spanning three periods `π/Ω` of a
/// Rabi oscillation with frequency `omega`.
pub fn figure_grid(omega: f64) -> Vec<f64> {
    uniform_grid(3.0 * std::f64::consts::PI / omega, 2000)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfint::SpinQuantum;
    use crate::model::{build_effective_hamiltonian, device_basis, DeviceLabel, ModelParams};
    use std::f64::consts::PI;

    fn resonant_run(times: &[f64]) -> Vec<f64> {
        let p = ModelParams::isotropic(SpinQuantum::ONE, -0.05, -0.40, -0.60);
        let h = build_effective_hamiltonian(&p).unwrap();
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        let start = reg.index_of_device(&DeviceLabel::down(2, 2)).unwrap();
        let target = reg.index_of_device(&DeviceLabel::up(2, 1)).unwrap();
        let rho0 = DensityMatrix::basis_state(18, start).unwrap();
        evolve(&h, &rho0, times)
            .unwrap()
            .iter()
            .map(|r| r.get(target, target).re)
            .collect()
    }

    #[test]
    fn zero_time_returns_initial_state() {
        let h = OperatorMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.3]]);
        let rho0 = DensityMatrix::basis_state(2, 0).unwrap();
        assert_eq!(evolve(&h, &rho0, &[0.0]).unwrap()[0], rho0);
    }

    #[test]
    fn resonant_transfer_is_complete() {
        let omega = 0.40;
        let p = resonant_run(&[PI / (2.0 * omega), PI / (4.0 * omega)]);
        assert!((p[0] - 1.0).abs() < 1e-9);
        assert!((p[1] - 0.5).abs() < 1e-9);
    }

    #[test]
    fn diagonal_dynamics_freeze_populations() {
        // without exchange to the mobile spin and without anisotropy the
        // device basis diagonalizes H (anisotropy alone mixes |2,0⟩ and |0,0⟩)
        let p = ModelParams::isotropic(SpinQuantum::ONE, 0.3, 0.0, 0.0);
        let h = build_effective_hamiltonian(&p).unwrap();
        let diag: Vec<f64> = (0..18).map(|i| (i + 1) as f64).collect();
        let total: f64 = diag.iter().sum();
        let rho0 = DensityMatrix::new(OperatorMatrix::from_diag(
            &diag.iter().map(|d| d / total).collect::<Vec<_>>(),
        ))
        .unwrap();
        for rho in evolve(&h, &rho0, &uniform_grid(50.0, 7)).unwrap() {
            assert!(rho.matrix().max_diff(rho0.matrix()) < 1e-12);
        }
    }

    #[test]
    fn populations_of_simple_states() {
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        let i = reg.index_of_device(&DeviceLabel::down(2, 2)).unwrap();
        let pops = populations(&DensityMatrix::basis_state(18, i).unwrap(), &reg).unwrap();
        for (k, (label, p)) in pops.iter().enumerate() {
            assert_eq!(*label, *reg.label(k));
            assert_eq!(*p, if k == i { 1.0 } else { 0.0 });
        }
        let mixed = populations(&DensityMatrix::maximally_mixed(18), &reg).unwrap();
        assert!(mixed.iter().all(|(_, p)| (p - 1.0 / 18.0).abs() < 1e-15));
        assert!(populations(&DensityMatrix::maximally_mixed(4), &reg).is_err());
    }

    #[test]
    fn element_evaluation_matches_full_state() {
        let p =
            ModelParams::isotropic(SpinQuantum::ONE, -0.05, 0.0, -0.6).with_exchange(-0.4, 0.05);
        let h = build_effective_hamiltonian(&p).unwrap();
        let ev = Evolver::new(&h).unwrap();
        let rho0 = DensityMatrix::basis_state(18, 2).unwrap();
        let frame = ev.eigenframe(&rho0).unwrap();
        for t in [0.0, 1.3, 17.9] {
            let full = ev.state_at(&rho0, t);
            for (i, j) in [(1, 2), (2, 2), (3, 1), (0, 0)] {
                assert!((ev.element_at(&frame, i, j, t) - full.get(i, j)).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn dimension_mismatch() {
        let h = OperatorMatrix::identity(3);
        assert!(evolve(&h, &DensityMatrix::maximally_mixed(2), &[1.0]).is_err());
    }

    #[test]
    fn grids() {
        assert_eq!(uniform_grid(1.0, 3), vec![0.0, 0.5, 1.0]);
        let g = figure_grid(0.4);
        assert_eq!(g.len(), 2000);
        assert!((g[1999] - 3.0 * PI / 0.4).abs() < 1e-12);
    }
}

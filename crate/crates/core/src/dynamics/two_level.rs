//! Two-state reductions of a sector block and the Rabi formula.

use crate::error::{Error, Result};
use crate::linalg::{OperatorMatrix, I};
use crate::model::{block_decompose, BasisRegistry, DeviceLabel};

/// Leakage allowed between a pair and the rest of its block.
pub const PAIR_TOL: f64 = 1e-12;

/// `H = (eps/2)·σᶻ + g·σˣ` on `{north, south}`, up to a multiple of the
/// identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TwoLevelSystem {
    /// `H_nn − H_ss`.
    pub eps: f64,
    /// `H_ns`.
    pub g: f64,
    pub pole_north: DeviceLabel,
    pub pole_south: DeviceLabel,
}

impl TwoLevelSystem {
    /// `Ω = sqrt(g² + eps²/4)`.
    pub fn rabi_frequency(&self) -> f64 {
        (self.g * self.g + 0.25 * self.eps * self.eps).sqrt()
    }

    /// `(g/Ω)²`, the peak transfer probability.
    pub fn amplitude(&self) -> f64 {
        let omega = self.rabi_frequency();
        if omega == 0.0 {
            0.0
        } else {
            (self.g / omega).powi(2)
        }
    }

    pub fn matrix(&self) -> OperatorMatrix {
        OperatorMatrix::from_real_rows(&[&[0.5 * self.eps, self.g], &[self.g, -0.5 * self.eps]])
    }
}

/// Reads `(eps, g)` off the `(north, south)` entries of `block` after
/// checking that the pair is closed within [`PAIR_TOL`].
pub fn two_level_reduce(
    block: &OperatorMatrix,
    pair: (usize, usize),
    poles: (DeviceLabel, DeviceLabel),
) -> Result<TwoLevelSystem> {
    let (a, b) = pair;
    let n = block.dim();
    if a >= n || b >= n || a == b {
        return Err(Error::InvalidArgument(format!(
            "pair ({a}, {b}) invalid for a {n}-dimensional block"
        )));
    }
    let leak = (0..n)
        .filter(|&k| k != a && k != b)
        .flat_map(|k| [block[(a, k)].norm(), block[(b, k)].norm()])
        .fold(0.0, f64::max);
    if leak > PAIR_TOL {
        return Err(Error::PairNotDecoupled { leak });
    }
    let coupling = block[(a, b)];
    if coupling.im.abs() > PAIR_TOL {
        return Err(Error::InvalidArgument(format!(
            "complex pair coupling {coupling} cannot be written as a real σˣ term"
        )));
    }
    Ok(TwoLevelSystem {
        eps: block[(a, a)].re - block[(b, b)].re,
        g: coupling.re,
        pole_north: poles.0,
        pole_south: poles.1,
    })
}

/// Locates the pair in `h` by label and reduces its sector block.
pub fn reduce_pair(
    h: &OperatorMatrix,
    basis: &BasisRegistry,
    north: DeviceLabel,
    south: DeviceLabel,
) -> Result<TwoLevelSystem> {
    let (ia, ib) = (
        basis.index_of_device(&north)?,
        basis.index_of_device(&south)?,
    );
    if north.m_total() != south.m_total() {
        return Err(Error::InvalidArgument(format!(
            "{} and {} lie in different m sectors",
            north.ket(),
            south.ket()
        )));
    }
    let bd = block_decompose(h, basis, 1e-10)?;
    let sector = bd.sector(north.m_total()).expect("label sector exists");
    let pos = |i| {
        sector
            .indices
            .iter()
            .position(|&k| k == i)
            .expect("index in sector")
    };
    two_level_reduce(&sector.block, (pos(ia), pos(ib)), (north, south))
}

/// Restriction of `h` to the pair, ignoring any coupling to other states.
/// Gives the local detuning and coupling even where the pair is not closed.
pub fn restricted_pair(
    h: &OperatorMatrix,
    basis: &BasisRegistry,
    north: DeviceLabel,
    south: DeviceLabel,
) -> Result<TwoLevelSystem> {
    let (ia, ib) = (
        basis.index_of_device(&north)?,
        basis.index_of_device(&south)?,
    );
    let sub = h.restrict(&[ia, ib]);
    Ok(TwoLevelSystem {
        eps: sub[(0, 0)].re - sub[(1, 1)].re,
        g: sub[(0, 1)].norm(),
        pole_north: north,
        pole_south: south,
    })
}

/// `P(t) = (g/Ω)² sin²(Ωt)`; zero for all `t` when `Ω = 0`.
pub fn rabi_probability(tls: &TwoLevelSystem, time: f64) -> f64 {
    let omega = tls.rabi_frequency();
    if omega == 0.0 {
        return 0.0;
    }
    tls.amplitude() * (omega * time).sin().powi(2)
}

/// Closed-form `e^{-iHt}` of the two-level Hamiltonian.
pub fn two_level_propagator(tls: &TwoLevelSystem, time: f64) -> OperatorMatrix {
    let omega = tls.rabi_frequency();
    let mut u = OperatorMatrix::identity(2).scale_re((omega * time).cos());
    if omega > 0.0 {
        let k = (omega * time).sin() / omega;
        u = &u - &tls.matrix().scale(I * k);
    }
    u
}

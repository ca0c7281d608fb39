//! Effective spin-space and site-resolved Hamiltonians.

use num_complex::Complex64;

use super::basis::product_to_device;
use super::params::ModelParams;
use crate::error::{Error, Result};
use crate::halfint::SpinQuantum;
use crate::linalg::{kron, spin_operators, OperatorMatrix};

/// The individual spin couplings of the model, each an operator on the
/// `2·(2s+1)²` spin space.
#[derive(Clone, Debug)]
pub struct SpinTerms {
    /// `s₁·S₂`
    pub s1_s2: OperatorMatrix,
    /// `s₁·S₃`
    pub s1_s3: OperatorMatrix,
    /// `S₂·S₃`
    pub s2_s3: OperatorMatrix,
    /// `S₂ᶻ² + S₃ᶻ²`
    pub anisotropy: OperatorMatrix,
}

impl SpinTerms {
    /// Terms in the product basis (Kronecker order `s₁ ⊗ S₂ ⊗ S₃`).
    pub fn product(s23: SpinQuantum) -> Result<Self> {
        super::basis::ensure_supported(s23)?;
        let one = spin_operators(SpinQuantum::HALF);
        let site = spin_operators(s23);
        let i1 = one.identity();
        let is = site.identity();
        let mut s1_s2 = OperatorMatrix::zeros(2 * s23.dim() * s23.dim());
        let mut s1_s3 = s1_s2.clone();
        let mut s2_s3 = s1_s2.clone();
        for (a, b) in one.components().into_iter().zip(site.components()) {
            s1_s2 = &s1_s2 + &kron(a, &kron(b, &is));
            s1_s3 = &s1_s3 + &kron(a, &kron(&is, b));
            s2_s3 = &s2_s3 + &kron(&i1, &kron(b, b));
        }
        let sz2 = &site.sz * &site.sz;
        let anisotropy = kron(&i1, &(&kron(&sz2, &is) + &kron(&is, &sz2)));
        Ok(Self {
            s1_s2,
            s1_s3,
            s2_s3,
            anisotropy,
        })
    }

    /// Terms in the device basis.
    pub fn device(s23: SpinQuantum) -> Result<Self> {
        let p = Self::product(s23)?;
        let w = product_to_device(s23)?;
        let tr = |m: &OperatorMatrix| m.conjugate_by(&w).hermitian_part();
        Ok(Self {
            s1_s2: tr(&p.s1_s2),
            s1_s3: tr(&p.s1_s3),
            s2_s3: tr(&p.s2_s3),
            anisotropy: tr(&p.anisotropy),
        })
    }

    /// Exchange plus anisotropy with the given site couplings.
    fn combine(&self, p: &ModelParams, k2: f64, k3: f64) -> OperatorMatrix {
        let parts = [
            self.s1_s2.scale_re(k2),
            self.s1_s3.scale_re(k3),
            self.s2_s3.scale_re(p.j_h),
            self.anisotropy.scale_re(p.d_anis),
        ];
        parts
            .iter()
            .skip(1)
            .fold(parts[0].clone(), |acc, m| &acc + m)
    }

    pub fn effective(&self, p: &ModelParams) -> OperatorMatrix {
        self.combine(p, p.j_k2, p.j_k3)
    }
}

/// `J_K2 s₁·S₂ + J_K3 s₁·S₃ + J_H S₂·S₃ + D (S₂ᶻ² + S₃ᶻ²)` in the device basis.
///
/// Hopping enters this space only as the constant `t + t*`, which is
/// dropped along with the rest of the common diagonal.
pub fn build_effective_hamiltonian(p: &ModelParams) -> Result<OperatorMatrix> {
    p.validate()?;
    Ok(SpinTerms::device(p.s23)?.effective(p))
}

/// The same operator in the product basis.
pub fn build_effective_hamiltonian_product(p: &ModelParams) -> Result<OperatorMatrix> {
    p.validate()?;
    Ok(SpinTerms::product(p.s23)?.effective(p))
}

/// Prefactor convention for the site-resolved exchange.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum KondoNormalization {
    /// Factor 2, so the bonding sector reproduces the effective model.
    #[default]
    Matched,
    /// Factor 1, the bare second-quantized normalization.
    Literal,
}

impl KondoNormalization {
    pub fn factor(self) -> f64 {
        match self {
            KondoNormalization::Matched => 2.0,
            KondoNormalization::Literal => 1.0,
        }
    }
}

/// Hamiltonian on `site ⊗ spin`, site-major, dimension `4·(2s+1)²`.
///
/// The mobile spin sits on site 2 or 3; its exchange acts only with the
/// occupied site, and hopping `t|2⟩⟨3| + h.c.` moves it between them.
pub fn build_full_hamiltonian(
    p: &ModelParams,
    kappa: KondoNormalization,
) -> Result<OperatorMatrix> {
    p.validate()?;
    let terms = SpinTerms::device(p.s23)?;
    let c = kappa.factor();
    let p2 = OperatorMatrix::from_diag(&[1.0, 0.0]);
    let p3 = OperatorMatrix::from_diag(&[0.0, 1.0]);
    let mut hop = OperatorMatrix::zeros(2);
    hop[(0, 1)] = p.t_hop;
    hop[(1, 0)] = p.t_hop.conj();
    let local = &terms.s2_s3.scale_re(p.j_h) + &terms.anisotropy.scale_re(p.d_anis);
    let spin_dim = local.dim();
    let parts = [
        kron(&p2, &terms.s1_s2.scale_re(c * p.j_k2)),
        kron(&p3, &terms.s1_s3.scale_re(c * p.j_k3)),
        kron(&OperatorMatrix::identity(2), &local),
        kron(&hop, &OperatorMatrix::identity(spin_dim)),
    ];
    Ok(parts
        .iter()
        .skip(1)
        .fold(parts[0].clone(), |acc, m| &acc + m))
}

fn site_blocks(h: &OperatorMatrix) -> Result<[OperatorMatrix; 4]> {
    let dim = h.dim();
    if !dim.is_multiple_of(2) {
        return Err(Error::DimensionMismatch {
            expected: dim + 1,
            found: dim,
        });
    }
    let n = dim / 2;
    let mut out = [
        OperatorMatrix::zeros(n),
        OperatorMatrix::zeros(n),
        OperatorMatrix::zeros(n),
        OperatorMatrix::zeros(n),
    ];
    for i in 0..n {
        for j in 0..n {
            out[0][(i, j)] = h[(i, j)];
            out[1][(i, j)] = h[(i, j + n)];
            out[2][(i, j)] = h[(i + n, j)];
            out[3][(i, j)] = h[(i + n, j + n)];
        }
    }
    Ok(out)
}

/// `⟨b|H|b⟩` with `|b⟩ = (|2⟩ + |3⟩)/√2` in the site factor.
pub fn project_bonding(h_full: &OperatorMatrix) -> Result<OperatorMatrix> {
    let [a, b, c, d] = site_blocks(h_full)?;
    Ok((&(&a + &b) + &(&c + &d)).scale_re(0.5))
}

/// `⟨a|H|a⟩` with `|a⟩ = (|2⟩ − |3⟩)/√2`.
pub fn project_antibonding(h_full: &OperatorMatrix) -> Result<OperatorMatrix> {
    let [a, b, c, d] = site_blocks(h_full)?;
    Ok((&(&a - &b) + &(&d - &c)).scale_re(0.5))
}

/// `⟨b|H|a⟩`, the coupling between bonding and antibonding sectors.
pub fn bonding_antibonding_coupling(h_full: &OperatorMatrix) -> Result<OperatorMatrix> {
    let [a, b, c, d] = site_blocks(h_full)?;
    Ok((&(&a - &b) + &(&c - &d)).scale_re(0.5))
}

/// The constant `J_H + D + Σ_K/4` (plus `t + t*` when `include_hopping`)
/// shared by the diagonal of every block.
pub fn common_diagonal(p: &ModelParams, include_hopping: bool) -> f64 {
    let hop = if include_hopping {
        2.0 * p.t_hop.re
    } else {
        0.0
    };
    hop + p.j_h + p.d_anis + 0.25 * p.sigma_k()
}

pub fn remove_common_diagonal(
    block: &OperatorMatrix,
    p: &ModelParams,
    include_hopping: bool,
) -> OperatorMatrix {
    let shift = common_diagonal(p, include_hopping);
    let mut out = block.clone();
    for i in 0..out.dim() {
        out[(i, i)] -= Complex64::new(shift, 0.0);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfint::HalfInt;
    use crate::model::basis::{device_basis, product_basis, DeviceLabel};
    use crate::model::blocks::block_decompose;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn resonant() -> ModelParams {
        ModelParams::isotropic(SpinQuantum::ONE, -0.05, -0.40, -0.60)
    }

    fn random_params(rng: &mut impl Rng) -> ModelParams {
        ModelParams {
            s23: SpinQuantum::ONE,
            j_h: rng.gen_range(-2.0..2.0),
            j_k2: rng.gen_range(-2.0..2.0),
            j_k3: rng.gen_range(-2.0..2.0),
            d_anis: rng.gen_range(-2.0..2.0),
            t_hop: Complex64::new(0.0, 0.0),
        }
    }

    /// Block of the device-basis H on the given labels, in that order.
    fn block_on(h: &OperatorMatrix, labels: &[DeviceLabel]) -> OperatorMatrix {
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        let idx: Vec<usize> = labels
            .iter()
            .map(|l| reg.index_of_device(l).unwrap())
            .collect();
        h.restrict(&idx)
    }

    fn three_halves_labels() -> [DeviceLabel; 3] {
        [
            DeviceLabel::up(2, 1),
            DeviceLabel::up(1, 1),
            DeviceLabel::down(2, 2),
        ]
    }

    #[test]
    fn resonant_three_halves_block() {
        let p = resonant();
        let h = build_effective_hamiltonian(&p).unwrap();
        let b = remove_common_diagonal(&block_on(&h, &three_halves_labels()), &p, false);
        let want = OperatorMatrix::from_real_rows(&[
            &[0.0, 0.0, -0.40],
            &[0.0, 0.10, 0.0],
            &[-0.40, 0.0, 0.0],
        ]);
        assert!(b.max_diff(&want) < 1e-14, "{b:?}");
    }

    #[test]
    fn stretched_state_diagonal() {
        let p = resonant();
        let h = build_effective_hamiltonian(&p).unwrap();
        let b = remove_common_diagonal(&block_on(&h, &[DeviceLabel::up(2, 2)]), &p, false);
        assert!((b[(0, 0)].re + 0.80).abs() < 1e-14);
    }

    #[test]
    fn anisotropy_only_is_diagonal() {
        let p = ModelParams::isotropic(SpinQuantum::ONE, 0.0, 0.0, 1.0);
        let h = build_effective_hamiltonian(&p).unwrap();
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        let want_diag = |d: DeviceLabel| -> f64 {
            // ⟨S₂ᶻ² + S₃ᶻ²⟩ on the coupled pair states of two spin-1s
            match (d.s23.twice() / 2, d.m23.twice().abs() / 2) {
                (2, 2) => 2.0,
                (2, 1) | (1, 1) => 1.0,
                (1, 0) => 2.0,
                (2, 0) => 2.0 / 3.0,
                (0, 0) => 4.0 / 3.0,
                _ => unreachable!(),
            }
        };
        for i in 0..18 {
            let d = reg.label(i).device().unwrap();
            for j in 0..18 {
                let e = h[(i, j)].norm();
                if i == j {
                    assert!((h[(i, i)].re - want_diag(d)).abs() < 1e-14);
                } else {
                    // |2,0⟩ and |0,0⟩ mix under Sᶻ², so only check other pairs
                    let o = reg.label(j).device().unwrap();
                    let mixing = d.m1 == o.m1
                        && d.m23 == o.m23
                        && d.m23 == HalfInt::ZERO
                        && d.s23 != HalfInt::ONE
                        && o.s23 != HalfInt::ONE;
                    if !mixing {
                        assert!(e < 1e-14);
                    }
                }
            }
        }
    }

    #[test]
    fn three_halves_block_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let p = random_params(&mut rng);
            let h = build_effective_hamiltonian(&p).unwrap();
            let b = remove_common_diagonal(&block_on(&h, &three_halves_labels()), &p, false);
            let (s, d) = (p.sigma_k(), p.delta_k());
            let want = OperatorMatrix::from_real_rows(&[
                &[0.0, d, 2.0 * s],
                &[d, -8.0 * p.j_h, -2.0 * d],
                &[2.0 * s, -2.0 * d, -3.0 * s + 4.0 * p.d_anis],
            ])
            .scale_re(0.25);
            assert!(b.max_diff(&want) < 1e-12);
        }
    }

    #[test]
    fn conserves_total_sz_and_is_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        let sz = reg.total_sz();
        for _ in 0..50 {
            let h = build_effective_hamiltonian(&random_params(&mut rng)).unwrap();
            assert!(h.commutator(&sz).max_abs() < 1e-13);
            assert!(h.hermiticity_error() < 1e-13);
        }
    }

    #[test]
    fn isotropic_exchange_conserves_pair_spin() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        let pair_casimir: Vec<f64> = reg
            .labels()
            .iter()
            .map(|l| {
                let s = l.device().unwrap().s23.value();
                s * (s + 1.0)
            })
            .collect();
        let s23_sq = OperatorMatrix::from_diag(&pair_casimir);
        for _ in 0..20 {
            let mut p = random_params(&mut rng);
            p.j_k3 = p.j_k2;
            p.d_anis = 0.0;
            let h = build_effective_hamiltonian(&p).unwrap();
            assert!(h.commutator(&s23_sq).max_abs() < 1e-12);
        }
    }

    #[test]
    fn product_and_device_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let w = product_to_device(SpinQuantum::ONE).unwrap();
        for _ in 0..10 {
            let p = random_params(&mut rng);
            let hp = build_effective_hamiltonian_product(&p).unwrap();
            let hd = build_effective_hamiltonian(&p).unwrap();
            let back = &(&w * &hd) * &w.adjoint();
            assert!(back.max_diff(&hp) < 1e-12);
        }
        assert_eq!(product_basis(SpinQuantum::ONE).unwrap().dim(), 18);
    }

    #[test]
    fn zero_params_zero_block() {
        let p = ModelParams::isotropic(SpinQuantum::ONE, 0.0, 0.0, 0.0);
        let h = build_effective_hamiltonian(&p).unwrap();
        let b = remove_common_diagonal(&block_on(&h, &three_halves_labels()), &p, false);
        assert_eq!(b.max_abs(), 0.0);
    }

    #[test]
    fn hopping_shift_only_with_flag() {
        let p = resonant().with_hopping(Complex64::new(0.05, 0.3));
        assert!((common_diagonal(&p, true) - common_diagonal(&p, false) - 0.10).abs() < 1e-15);
    }

    #[test]
    fn bonding_projection_matched() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..10 {
            let mut p = random_params(&mut rng);
            p.j_k3 = p.j_k2;
            p.t_hop = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            let full = build_full_hamiltonian(&p, KondoNormalization::Matched).unwrap();
            assert!(full.hermiticity_error() < 1e-13);
            let bond = project_bonding(&full).unwrap();
            // ⟨b|(t|2⟩⟨3| + h.c.)|b⟩ = Re t
            let mut want = build_effective_hamiltonian(&p).unwrap();
            for i in 0..want.dim() {
                want[(i, i)] += Complex64::new(p.t_hop.re, 0.0);
            }
            assert!(bond.max_diff(&want) < 1e-12);
        }
    }

    #[test]
    fn bonding_projection_literal_halves_exchange() {
        let p = resonant();
        let full = build_full_hamiltonian(&p, KondoNormalization::Literal).unwrap();
        let bond = project_bonding(&full).unwrap();
        let half = ModelParams::isotropic(SpinQuantum::ONE, p.j_h, 0.5 * p.j_k(), p.d_anis);
        assert!(bond.max_diff(&build_effective_hamiltonian(&half).unwrap()) < 1e-12);
    }

    #[test]
    fn hop_spectrum() {
        let t = 0.05;
        let p = ModelParams::isotropic(SpinQuantum::ONE, 0.0, 0.0, 0.0)
            .with_hopping(Complex64::new(t, 0.0));
        let full = build_full_hamiltonian(&p, KondoNormalization::Matched).unwrap();
        let spec = crate::linalg::eig_hermitian(&full).unwrap();
        assert!(spec.values[..18].iter().all(|&l| (l + t).abs() < 1e-14));
        assert!(spec.values[18..].iter().all(|&l| (l - t).abs() < 1e-14));
    }

    #[test]
    fn identity_projects_to_identity() {
        let bond = project_bonding(&OperatorMatrix::identity(36)).unwrap();
        assert_eq!(bond, OperatorMatrix::identity(18));
        assert!(project_bonding(&OperatorMatrix::identity(3)).is_err());
    }

    #[test]
    fn sector_coupling_follows_exchange_difference() {
        // ⟨b|H|a⟩ = (c/2)(J_K2 s₁·S₂ − J_K3 s₁·S₃) − i·Im(t)
        let terms = SpinTerms::device(SpinQuantum::ONE).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..10 {
            let mut p = random_params(&mut rng);
            p.t_hop = Complex64::new(0.2, -0.1);
            for kappa in [KondoNormalization::Matched, KondoNormalization::Literal] {
                let full = build_full_hamiltonian(&p, kappa).unwrap();
                let cross = bonding_antibonding_coupling(&full).unwrap();
                let c = 0.5 * kappa.factor();
                let hop = OperatorMatrix::identity(18).scale(Complex64::new(0.0, -p.t_hop.im));
                let want =
                    &(&terms.s1_s2.scale_re(c * p.j_k2) - &terms.s1_s3.scale_re(c * p.j_k3)) + &hop;
                assert!(cross.max_diff(&want) < 1e-12);
            }
        }
    }

    #[test]
    fn sector_coupling_is_affine_in_delta() {
        let base = resonant();
        let cross = |delta: f64| {
            let p = base.clone().with_exchange(base.j_k(), delta);
            bonding_antibonding_coupling(
                &build_full_hamiltonian(&p, KondoNormalization::Matched).unwrap(),
            )
            .unwrap()
        };
        let c0 = cross(0.0);
        let d1 = &cross(0.01) - &c0;
        let d2 = &cross(0.03) - &c0;
        assert!(d1.max_abs() > 0.0);
        assert!(d2.max_diff(&d1.scale_re(3.0)) < 1e-14);
    }

    #[test]
    fn site_exchange_symmetry_decouples_parity_sectors() {
        // with J_K2 = J_K3, swapping both the site and the two spins is a symmetry
        let p = resonant().with_hopping(Complex64::new(0.05, 0.0));
        let full = build_full_hamiltonian(&p, KondoNormalization::Matched).unwrap();
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        // spin swap parity in the device basis: (−1)^(2s − s23)
        let parity: Vec<f64> = reg
            .labels()
            .iter()
            .map(|l| {
                if (l.device().unwrap().s23.twice() / 2) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                }
            })
            .collect();
        let swap_spin = OperatorMatrix::from_diag(&parity);
        let swap_site = OperatorMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let x = kron(&swap_site, &swap_spin);
        assert!(full.commutator(&x).max_abs() < 1e-13);
        let blocks = block_decompose(&full, &reg.with_sites(), 1e-12).unwrap();
        assert_eq!(blocks.sizes(), vec![2, 6, 10, 10, 6, 2]);
    }
}

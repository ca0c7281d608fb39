use djspin::dynamics::{bloch_trajectory, uniform_grid, DensityMatrix, Evolver, TwoLevelSystem};
use djspin::model::{
    block_decompose, build_effective_hamiltonian, device_basis, DeviceLabel, ModelParams,
};
use djspin::resonance::{resonance_table, transition_point};
use djspin::{HalfInt, SpinQuantum};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn coupling() -> impl Strategy<Value = f64> {
    -2.0f64..2.0
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sz_conserved_and_hermitian(jh in coupling(), jk2 in coupling(), jk3 in coupling(), d in coupling()) {
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        let p = ModelParams { s23: SpinQuantum::ONE, j_h: jh, j_k2: jk2, j_k3: jk3, d_anis: d, t_hop: Complex64::new(0.0, 0.0) };
        let h = build_effective_hamiltonian(&p).unwrap();
        prop_assert!(h.commutator(&reg.total_sz()).max_abs() < 1e-13);
        prop_assert!(h.hermiticity_error() < 1e-13);
        let blocks = block_decompose(&h, &reg, 1e-12).unwrap();
        for m in [5, -5] {
            prop_assert_eq!(blocks.sector(HalfInt::from_twice(m)).unwrap().indices.len(), 1);
        }
    }

    #[test]
    fn ridge_is_spin_flip_symmetric(d in -2.0f64..2.0, jk in -2.0f64..2.0, jh in -1.0f64..1.0) {
        prop_assume!(jk.abs() > 0.05);
        let p = ModelParams::isotropic(SpinQuantum::ONE, jh, jk, d);
        let (a, _) = transition_point(&p, (DeviceLabel::down(2, 2), DeviceLabel::up(2, 1))).unwrap();
        let (b, _) = transition_point(&p, (DeviceLabel::up(2, -2), DeviceLabel::down(2, -1))).unwrap();
        prop_assert!((a - b).abs() < 1e-10, "{} vs {}", a, b);
    }

    #[test]
    fn bloch_norm_bounded_by_weight(jh in coupling(), jk2 in coupling(), jk3 in coupling(), d in coupling()) {
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        let p = ModelParams { s23: SpinQuantum::ONE, j_h: jh, j_k2: jk2, j_k3: jk3, d_anis: d, t_hop: Complex64::new(0.0, 0.0) };
        let h = build_effective_hamiltonian(&p).unwrap();
        let poles = TwoLevelSystem { eps: 0.0, g: 0.0, pole_north: DeviceLabel::down(2, 2), pole_south: DeviceLabel::up(2, 1) };
        let rho0 = DensityMatrix::basis_state(reg.dim(), reg.index_of_device(&poles.pole_north).unwrap()).unwrap();
        for s in bloch_trajectory(&h, &reg, &poles, &rho0, &uniform_grid(30.0, 200)).unwrap() {
            prop_assert!(s.norm().powi(2) <= s.in_subspace_weight.powi(2) + 1e-9);
            prop_assert!(s.in_subspace_weight <= 1.0 + 1e-12);
        }
    }
}

#[test]
fn table_rows_hold_for_random_anisotropy() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let d = sign * rng.gen_range(0.1..2.0);
        for rec in resonance_table(SpinQuantum::ONE).unwrap() {
            let p = ModelParams::isotropic(SpinQuantum::ONE, -0.05, rec.j_r(d), d);
            let (amp, freq) = transition_point(&p, (rec.pair.1, rec.pair.0)).unwrap();
            assert!((amp - 1.0).abs() < 1e-8, "d={d} {:?}: {amp}", rec.pair);
            assert!(
                (freq - rec.omega_r(d)).abs() < 1e-6,
                "d={d} {:?}: {freq}",
                rec.pair
            );
        }
    }
}

#[test]
fn half_pair_stays_closed() {
    let reg = device_basis(SpinQuantum::ONE).unwrap();
    let a = reg.index_of_device(&DeviceLabel::down(1, 1)).unwrap();
    let b = reg.index_of_device(&DeviceLabel::up(1, 0)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..20 {
        let p = ModelParams::isotropic(
            SpinQuantum::ONE,
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let ev = Evolver::new(&build_effective_hamiltonian(&p).unwrap()).unwrap();
        let rho0 = DensityMatrix::basis_state(reg.dim(), a).unwrap();
        for t in uniform_grid(50.0, 100) {
            let rho = ev.state_at(&rho0, t);
            let w = rho.get(a, a).re + rho.get(b, b).re;
            assert!((w - 1.0).abs() < 1e-10);
        }
    }
}

//! Self-checks run by `djspin verify`: closed-form block entries, two-level
//! reductions, resonance conditions, Rabi dynamics, switching robustness,
//! Bloch regimes, the spin-1/2 bound, and conservation laws.

use std::f64::consts::{FRAC_1_SQRT_2, PI};
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{
    bloch_trajectory, equator_state, figure_grid, reduce_pair, uniform_grid, DensityMatrix,
    Evolver, TwoLevelSystem,
};
use crate::error::Result;
use crate::halfint::{HalfInt, SpinQuantum};
use crate::linalg::{eig_hermitian, OperatorMatrix};
use crate::model::{
    block_decompose, build_effective_hamiltonian, device_basis, remove_common_diagonal,
    DeviceLabel, KondoNormalization, ModelParams, Space,
};
use crate::resonance::{
    resonance_table, spin_half_max_amplitude, switching_summary, TransitionProbe,
};

#[derive(Clone, Debug, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Flips the sign of `Δ_K` in the expected `m = 3/2` block; the block
    /// check must then fail.
    pub inject_delta_sign_error: bool,
}

const SEED: u64 = 0x5eed_d15c;

fn outcome(name: &'static str, r: Result<(bool, String)>) -> CheckOutcome {
    match r {
        Ok((passed, detail)) => CheckOutcome {
            name,
            passed,
            detail,
        },
        Err(e) => CheckOutcome {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

pub fn run_all(opts: VerifyOptions) -> Vec<CheckOutcome> {
    vec![
        outcome("three_halves_block", three_halves_block(opts)),
        outcome("two_level_reductions", two_level_reductions()),
        outcome("resonance_table", resonance_conditions()),
        outcome("rabi_equivalence", rabi_equivalence()),
        outcome("switching_robustness", switching_robustness()),
        outcome("bloch_regimes", bloch_regimes()),
        outcome("spin_half_bound", spin_half_bound()),
        outcome("conservation", conservation()),
    ]
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

/// The `m = 3/2` sector, in the order `|↑⟩|2,1⟩, |↑⟩|1,1⟩, |↓⟩|2,2⟩`, after
/// removing the common diagonal.
pub fn three_halves_block(opts: VerifyOptions) -> Result<(bool, String)> {
    let reg = device_basis(SpinQuantum::ONE)?;
    let order = [
        DeviceLabel::up(2, 1),
        DeviceLabel::up(1, 1),
        DeviceLabel::down(2, 2),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let h = build_effective_hamiltonian(&p)?;
        let bd = block_decompose(&h, &reg, 1e-12)?;
        let sector = bd.sector(HalfInt::from_twice(3)).expect("m = 3/2 sector");
        let local: Vec<usize> = order
            .iter()
            .map(|l| {
                let i = reg.index_of_device(l).expect("label");
                sector
                    .indices
                    .iter()
                    .position(|&k| k == i)
                    .expect("in sector")
            })
            .collect();
        let block = remove_common_diagonal(&sector.block.restrict(&local), &p, false);
        let s = p.sigma_k();
        let d = if opts.inject_delta_sign_error {
            -p.delta_k()
        } else {
            p.delta_k()
        };
        let want = OperatorMatrix::from_real_rows(&[
            &[0.0, d, 2.0 * s],
            &[d, -8.0 * p.j_h, -2.0 * d],
            &[2.0 * s, -2.0 * d, -3.0 * s + 4.0 * p.d_anis],
        ])
        .scale_re(0.25);
        worst = worst.max(block.max_diff(&want));
    }
    Ok((
        worst < 1e-12,
        format!("100 draws, max deviation {worst:.3e} (tol 1e-12)"),
    ))
}

pub fn two_level_reductions() -> Result<(bool, String)> {
    let reg = device_basis(SpinQuantum::ONE)?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let (d, jk, jh) = (
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let h = build_effective_hamiltonian(&ModelParams::isotropic(SpinQuantum::ONE, jh, jk, d))?;
        let a = reduce_pair(&h, &reg, DeviceLabel::up(2, 1), DeviceLabel::down(2, 2))?;
        let b = reduce_pair(&h, &reg, DeviceLabel::up(1, 0), DeviceLabel::down(1, 1))?;
        for (got, want) in [
            (a.eps, -(d - 1.5 * jk)),
            (a.g, jk),
            (b.eps, d + 0.5 * jk),
            (b.g, jk * FRAC_1_SQRT_2),
        ] {
            worst = worst.max((got - want).abs());
        }
    }
    Ok((
        worst < 1e-12,
        format!("50 draws, max deviation {worst:.3e} (tol 1e-12)"),
    ))
}

pub fn resonance_conditions() -> Result<(bool, String)> {
    let d = -0.60;
    let reg = device_basis(SpinQuantum::ONE)?;
    let mut ok = true;
    let mut lines = Vec::new();
    for rec in resonance_table(SpinQuantum::ONE)? {
        let p = ModelParams::isotropic(SpinQuantum::ONE, -0.05, rec.j_r(d), d);
        let h = build_effective_hamiltonian(&p)?;
        let omega = rec.omega_r(d);
        let horizon = 3.0 * PI / omega;
        let probe = TransitionProbe::from_labels(&h, &reg, &rec.pair.1, &rec.pair.0)?;
        let (pmax, _) = probe.maximize(horizon, 600)?;
        let freq = probe.oscillation_frequency(pmax, horizon, 600);
        let pass = (pmax - 1.0).abs() < 1e-8 && (freq - omega).abs() < 1e-6;
        ok &= pass;
        lines.push(format!(
            "{}↔{}: P={pmax:.12} Ω={freq:.10} (want {omega:.10})",
            rec.pair.0.ket(),
            rec.pair.1.ket()
        ));
    }
    Ok((ok, lines.join("; ")))
}

pub fn rabi_equivalence() -> Result<(bool, String)> {
    let reg = device_basis(SpinQuantum::ONE)?;
    let start = reg.index_of_device(&DeviceLabel::down(2, 2))?;
    let target = reg.index_of_device(&DeviceLabel::up(2, 1))?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let (d, jk, jh) = (
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let h = build_effective_hamiltonian(&ModelParams::isotropic(SpinQuantum::ONE, jh, jk, d))?;
        let probe = TransitionProbe::new(&Evolver::new(&h)?, start, target);
        let omega = (jk * jk + 0.25 * (d - 1.5 * jk).powi(2)).sqrt();
        for t in uniform_grid(40.0, 1000) {
            let analytic = if omega == 0.0 {
                0.0
            } else {
                (jk / omega).powi(2) * (omega * t).sin().powi(2)
            };
            worst = worst.max((probe.probability(t) - analytic).abs());
        }
    }
    Ok((
        worst < 1e-10,
        format!("20 draws × 1000 times, max deviation {worst:.3e} (tol 1e-10)"),
    ))
}

/// The switching parameter set: `J_H = −0.05`, `J_K = −0.40`, `D = −0.60`,
/// `t = 0.05`, `Δ_K/J_K = 0.072`.
pub fn switching_params() -> ModelParams {
    ModelParams::isotropic(SpinQuantum::ONE, -0.05, 0.0, -0.60)
        .with_exchange(-0.40, 0.072 * -0.40)
        .with_hopping(Complex64::new(0.05, 0.0))
}

pub fn switching_robustness() -> Result<(bool, String)> {
    let clock = Instant::now();
    let p = switching_params();
    let times = figure_grid(0.4);
    let north = DeviceLabel::down(2, 2);
    let south = DeviceLabel::up(2, 1);
    let eff = switching_summary(&p, Space::Effective, north, south, &times)?;
    let full = switching_summary(
        &p,
        Space::Full(KondoNormalization::Matched),
        north,
        south,
        &times,
    )?;
    let elapsed = clock.elapsed().as_secs_f64();
    let passed = (eff.peak_transfer >= 0.995 || full.peak_transfer >= 0.995) && elapsed < 10.0;
    Ok((
        passed,
        format!(
            "peak transfer effective {:.6}, full(matched) {:.6}; peak pz effective {:.6}; {elapsed:.2}s",
            eff.peak_transfer, full.peak_transfer, eff.peak_pz
        ),
    ))
}

pub fn bloch_regimes() -> Result<(bool, String)> {
    let reg = device_basis(SpinQuantum::ONE)?;
    let north = DeviceLabel::down(2, 2);
    let south = DeviceLabel::up(2, 1);
    let poles = TwoLevelSystem {
        eps: 0.0,
        g: 0.0,
        pole_north: north,
        pole_south: south,
    };

    let (d, jk) = (-0.60, -0.40);
    let h = build_effective_hamiltonian(&ModelParams::isotropic(SpinQuantum::ONE, -0.05, jk, d))?;
    let rho0 = DensityMatrix::basis_state(reg.dim(), reg.index_of_device(&north)?)?;
    let mut times = figure_grid(jk.abs());
    times.push(PI / (2.0 * jk.abs()));
    let samples = bloch_trajectory(&h, &reg, &poles, &rho0, &times)?;
    let max_vx = samples.iter().map(|s| s.vx.abs()).fold(0.0, f64::max);
    let south_reached = samples.last().map(|s| s.vz).unwrap_or(0.0);
    let x_rotation =
        max_vx < 1e-9 && (south_reached + 1.0).abs() < 1e-9 && (samples[0].vz - 1.0).abs() < 1e-12;

    let h = build_effective_hamiltonian(&ModelParams::isotropic(SpinQuantum::ONE, -0.05, 0.0, d))?;
    let rho0 = equator_state(&reg, north, south)?;
    let times = uniform_grid(10.0, 2001);
    let samples = bloch_trajectory(&h, &reg, &poles, &rho0, &times)?;
    let rate = phase_rate(
        &samples
            .iter()
            .map(|s| (s.time, s.coherence()))
            .collect::<Vec<_>>(),
    );
    let z_rotation = (rate.abs() - d.abs()).abs() < 1e-6;
    Ok((
        x_rotation && z_rotation,
        format!(
            "resonance: max|vx| {max_vx:.2e}, vz at half period {south_reached:.12}; \
             J_K = 0: coherence phase rate {rate:.9} (|D| = {})",
            d.abs()
        ),
    ))
}

/// Least-squares slope of the unwrapped phase of a coherence series.
pub fn phase_rate(series: &[(f64, Complex64)]) -> f64 {
    let mut unwrapped = Vec::with_capacity(series.len());
    let mut offset = 0.0;
    let mut prev: Option<f64> = None;
    for &(t, z) in series {
        let a = z.arg();
        if let Some(p) = prev {
            let jump = a - p;
            if jump > PI {
                offset -= 2.0 * PI;
            } else if jump < -PI {
                offset += 2.0 * PI;
            }
        }
        prev = Some(a);
        unwrapped.push((t, a + offset));
    }
    let n = unwrapped.len() as f64;
    let mt = unwrapped.iter().map(|p| p.0).sum::<f64>() / n;
    let ma = unwrapped.iter().map(|p| p.1).sum::<f64>() / n;
    let cov: f64 = unwrapped.iter().map(|p| (p.0 - mt) * (p.1 - ma)).sum();
    let var: f64 = unwrapped.iter().map(|p| (p.0 - mt).powi(2)).sum();
    cov / var
}

pub fn spin_half_bound() -> Result<(bool, String)> {
    let report =
        spin_half_max_amplitude(&ModelParams::isotropic(SpinQuantum::HALF, -0.05, 0.0, 0.0))?;
    let passed = (report.best - 8.0 / 9.0).abs() < 1e-6;
    let pairs: Vec<String> = report
        .per_pair
        .iter()
        .map(|p| format!("{}→{}: {:.9}", p.initial.ket(), p.target.ket(), p.p_max))
        .collect();
    Ok((
        passed,
        format!(
            "max {:.9} (8/9 = {:.9}); {}",
            report.best,
            8.0 / 9.0,
            pairs.join(", ")
        ),
    ))
}

pub fn conservation() -> Result<(bool, String)> {
    let reg = device_basis(SpinQuantum::ONE)?;
    let sz = reg.total_sz();
    let id = OperatorMatrix::identity(reg.dim());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let (mut state_err, mut comm, mut herm, mut unit): (f64, f64, f64, f64) = (0.0, 0.0, 0.0, 0.0);
    let mut sizes_ok = true;
    for _ in 0..100 {
        let p = random_params(&mut rng);
        let h = build_effective_hamiltonian(&p)?;
        comm = comm.max(h.commutator(&sz).max_abs());
        herm = herm.max(h.hermiticity_error());
        sizes_ok &= block_decompose(&h, &reg, 1e-12)?.sizes() == [1, 3, 5, 5, 3, 1];
        let spectrum = eig_hermitian(&h)?;
        let u = spectrum.propagator(rng.gen_range(0.0..50.0));
        unit = unit.max((&u.adjoint() * &u).max_diff(&id));

        let rho0 = random_state(&mut rng, reg.dim())?;
        let evolver = Evolver::new(&h)?;
        let purity0 = rho0.purity();
        for t in [0.7, 5.3, 31.0] {
            let rho = evolver.state_at(&rho0, t);
            state_err = state_err
                .max((rho.trace() - Complex64::new(1.0, 0.0)).norm())
                .max(rho.matrix().hermiticity_error())
                .max((rho.purity() - purity0).abs());
        }
    }
    let passed = state_err < 1e-10 && comm < 1e-13 && herm < 1e-13 && unit < 1e-10 && sizes_ok;
    Ok((
        passed,
        format!(
            "100 instances: state {state_err:.2e}, [H,Sz] {comm:.2e}, hermiticity {herm:.2e}, \
             unitarity {unit:.2e}, sector sizes {}",
            if sizes_ok { "ok" } else { "wrong" }
        ),
    ))
}

/// Random mixture of a few random pure states.
fn random_state(rng: &mut impl Rng, dim: usize) -> Result<DensityMatrix> {
    let mut acc = OperatorMatrix::zeros(dim);
    let k = rng.gen_range(1..4);
    let mut total = 0.0;
    for _ in 0..k {
        let psi: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        let w = rng.gen_range(0.1..1.0);
        total += w;
        acc = &acc + &OperatorMatrix::outer(&psi).scale_re(w / norm);
    }
    DensityMatrix::new(acc.scale_re(1.0 / total))
}

//! Peak transfer probability and oscillation frequency between two basis
//! states.

use num_complex::Complex64;

use crate::dynamics::Evolver;
use crate::error::{Error, Result};
use crate::linalg::{OperatorMatrix, ZERO};
use crate::model::{BasisRegistry, DeviceLabel};

/// Time resolution of the golden-section refinement.
pub const TIME_RESOLUTION: f64 = 1e-10;

/// `P(t) = |⟨target|e^{-iHt}|initial⟩|²`, evaluated from the spectrum as
/// `|Σ_k w_k e^{-iλ_k t}|²`.
#[derive(Clone, Debug)]
pub struct TransitionProbe {
    weights: Vec<Complex64>,
    values: Vec<f64>,
}

impl TransitionProbe {
    pub fn new(evolver: &Evolver, initial: usize, target: usize) -> Self {
        let s = evolver.spectrum();
        let v = &s.vectors;
        let weights = (0..s.dim())
            .map(|k| v[(target, k)] * v[(initial, k)].conj())
            .collect();
        Self {
            weights,
            values: s.values.clone(),
        }
    }

    pub fn from_labels(
        h: &OperatorMatrix,
        basis: &BasisRegistry,
        initial: &DeviceLabel,
        target: &DeviceLabel,
    ) -> Result<Self> {
        if basis.has_sites() {
            return Err(Error::InvalidArgument(
                "transition probes work on the spin-only registry".into(),
            ));
        }
        if h.dim() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                found: h.dim(),
            });
        }
        let (i, j) = (
            basis.index_of_device(initial)?,
            basis.index_of_device(target)?,
        );
        Ok(Self::new(&Evolver::new(h)?, i, j))
    }

    pub fn probability(&self, time: f64) -> f64 {
        let amp: Complex64 = self
            .weights
            .iter()
            .zip(&self.values)
            .fold(ZERO, |acc, (w, &l)| {
                acc + w * Complex64::from_polar(1.0, -l * time)
            });
        amp.norm_sqr()
    }

    /// Best of `samples + 1` uniform samples over `[0, horizon]`, refined by
    /// golden-section search on the neighbouring interval.
    pub fn maximize(&self, horizon: f64, samples: usize) -> Result<(f64, f64)> {
        if !horizon.is_finite() || horizon <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "horizon {horizon} must be positive"
            )));
        }
        if samples < 2 {
            return Err(Error::InvalidArgument("need at least two samples".into()));
        }
        let dt = horizon / samples as f64;
        let (mut best_t, mut best_p) = (0.0, self.probability(0.0));
        for k in 1..=samples {
            let t = k as f64 * dt;
            let p = self.probability(t);
            if p > best_p {
                best_t = t;
                best_p = p;
            }
        }
        let lo = (best_t - dt).max(0.0);
        let hi = (best_t + dt).min(horizon);
        let (t, p) = golden_max(|t| self.probability(t), lo, hi, TIME_RESOLUTION);
        Ok(if p > best_p { (p, t) } else { (best_p, best_t) })
    }

    /// Frequency `Ω` of `P = A sin²(Ωt)`, from the first time `P` reaches
    /// half of `p_max` (`Ωt = π/4`). Zero when `p_max` is negligible.
    pub fn oscillation_frequency(&self, p_max: f64, horizon: f64, samples: usize) -> f64 {
        if p_max < 1e-12 {
            return 0.0;
        }
        let half = 0.5 * p_max;
        let dt = horizon / samples.max(2) as f64;
        let mut prev = 0.0;
        for k in 1..=samples.max(2) {
            let t = k as f64 * dt;
            if self.probability(t) >= half {
                let mut lo = prev;
                let mut hi = t;
                while hi - lo > 1e-14 * hi.max(1.0) {
                    let mid = 0.5 * (lo + hi);
                    if self.probability(mid) >= half {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                }
                return std::f64::consts::FRAC_PI_4 / (0.5 * (lo + hi));
            }
            prev = t;
        }
        0.0
    }
}

/// Maximizes a unimodal `f` on `[lo, hi]`.
pub fn golden_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> (f64, f64) {
    let ratio = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = hi - ratio * (hi - lo);
    let mut x2 = lo + ratio * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + ratio * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - ratio * (hi - lo);
            f1 = f(x1);
        }
    }
    let x = 0.5 * (lo + hi);
    let fx = f(x);
    [(x1, f1), (x2, f2), (x, fx)]
        .into_iter()
        .fold((x, fx), |best, c| if c.1 > best.1 { c } else { best })
}

/// Peak population of `target` starting from `initial`, over `[0, horizon]`.
pub fn max_transition_probability(
    h: &OperatorMatrix,
    basis: &BasisRegistry,
    initial: &DeviceLabel,
    target: &DeviceLabel,
    horizon: f64,
    samples: usize,
) -> Result<(f64, f64)> {
    if initial == target {
        // P(0) = 1 is the bound; sampling would only pick up rounding noise
        basis.index_of_device(initial)?;
        return Ok((1.0, 0.0));
    }
    TransitionProbe::from_labels(h, basis, initial, target)?.maximize(horizon, samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::halfint::SpinQuantum;
    use crate::model::{build_effective_hamiltonian, device_basis, ModelParams};
    use std::f64::consts::PI;

    fn probe(j_k: f64, d: f64) -> TransitionProbe {
        let p = ModelParams::isotropic(SpinQuantum::ONE, -0.05, j_k, d);
        let h = build_effective_hamiltonian(&p).unwrap();
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        TransitionProbe::from_labels(&h, &reg, &DeviceLabel::down(2, 2), &DeviceLabel::up(2, 1))
            .unwrap()
    }

    #[test]
    fn resonant_peak_is_one() {
        let d = -0.6;
        let pr = probe(2.0 * d / 3.0, d);
        let (p, t) = pr.maximize(3.0 * PI / 0.4, 600).unwrap();
        assert!((p - 1.0).abs() < 1e-9);
        assert!((pr.probability(t) - p).abs() < 1e-15);
        let omega = pr.oscillation_frequency(p, 3.0 * PI / 0.4, 600);
        assert!((omega - 0.4).abs() < 1e-9);
    }

    #[test]
    fn detuned_peak_is_rabi_amplitude() {
        let pr = probe(-0.40, 0.0);
        let (p, _) = pr.maximize(3.0 * PI / 0.5, 600).unwrap();
        assert!((p - 0.64).abs() < 1e-6);
        assert!((pr.oscillation_frequency(p, 3.0 * PI / 0.5, 600) - 0.5).abs() < 1e-8);
    }

    #[test]
    fn self_transition_peaks_at_zero() {
        let p = ModelParams::isotropic(SpinQuantum::ONE, -0.05, -0.4, -0.6);
        let h = build_effective_hamiltonian(&p).unwrap();
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        let l = DeviceLabel::down(2, 2);
        let (pmax, t) = max_transition_probability(&h, &reg, &l, &l, 10.0, 100).unwrap();
        assert!((pmax - 1.0).abs() < 1e-15);
        assert!(t < 1e-9);
    }

    #[test]
    fn bad_arguments() {
        let pr = probe(-0.4, -0.6);
        assert!(pr.maximize(0.0, 10).is_err());
        assert!(pr.maximize(1.0, 1).is_err());
        let p = ModelParams::isotropic(SpinQuantum::ONE, 0.0, 0.0, 0.0);
        let h = build_effective_hamiltonian(&p).unwrap();
        let reg = device_basis(SpinQuantum::ONE).unwrap();
        assert!(max_transition_probability(
            &h,
            &reg,
            &DeviceLabel::up(5, 0),
            &DeviceLabel::up(2, 0),
            1.0,
            10
        )
        .is_err());
    }

    #[test]
    fn golden_section_finds_parabola_peak() {
        let (x, fx) = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-12);
        assert!((x - 0.3).abs() < 1e-6);
        assert!(fx.abs() < 1e-12);
    }
}

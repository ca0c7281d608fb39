use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{eig_hermitian, OperatorMatrix, ZERO};

/// A Hermitian, unit-trace, positive semidefinite state.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(OperatorMatrix);

const HERM_TOL: f64 = 1e-12;
const TRACE_TOL: f64 = 1e-12;
const EIG_FLOOR: f64 = -1e-10;

impl DensityMatrix {
    pub fn new(m: OperatorMatrix) -> Result<Self> {
        let herm = m.hermiticity_error();
        if herm > HERM_TOL {
            return Err(Error::InvalidDensity(format!(
                "not Hermitian (deviation {herm:e})"
            )));
        }
        let tr = m.trace();
        if (tr - Complex64::new(1.0, 0.0)).norm() > TRACE_TOL {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let lowest = eig_hermitian(&m)?.values.first().copied().unwrap_or(0.0);
        if lowest < EIG_FLOOR {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {lowest:e}"
            )));
        }
        Ok(Self(m))
    }

    /// Skips validation; for states produced by unitary evolution of a
    /// valid state.
    pub(crate) fn from_evolved(m: OperatorMatrix) -> Self {
        Self(m)
    }

    /// `|ψ⟩⟨ψ|` after normalizing `ψ`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidDensity(
                "state vector has zero or non-finite norm".into(),
            ));
        }
        let v: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
        Ok(Self(OperatorMatrix::outer(&v)))
    }

    /// Pure basis state `|index⟩`.
    pub fn basis_state(dim: usize, index: usize) -> Result<Self> {
        if index >= dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: index,
            });
        }
        let mut psi = vec![ZERO; dim];
        psi[index] = Complex64::new(1.0, 0.0);
        Self::pure(&psi)
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self(OperatorMatrix::identity(dim).scale_re(1.0 / dim as f64))
    }

    pub fn matrix(&self) -> &OperatorMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn trace(&self) -> Complex64 {
        self.0.trace()
    }

    /// `tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        let n = self.dim();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                // tr(ρρ) = Σ |ρ_ij|² for Hermitian ρ
                acc += self.0[(i, j)].norm_sqr();
            }
        }
        acc
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.0[(i, j)]
    }

    /// Partial trace over the site factor of a site-major `site ⊗ spin`
    /// state.
    pub fn trace_out_site(&self) -> Result<Self> {
        let dim = self.dim();
        if !dim.is_multiple_of(2) {
            return Err(Error::DimensionMismatch {
                expected: dim + 1,
                found: dim,
            });
        }
        let n = dim / 2;
        let mut out = OperatorMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self.0[(i, j)] + self.0[(i + n, j + n)];
            }
        }
        Ok(Self(out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(DensityMatrix::new(OperatorMatrix::identity(2)).is_err());
        assert!(DensityMatrix::new(OperatorMatrix::from_diag(&[1.5, -0.5])).is_err());
        let mut m = OperatorMatrix::from_diag(&[0.5, 0.5]);
        m[(0, 1)] = Complex64::new(0.1, 0.0);
        assert!(DensityMatrix::new(m).is_err());
        assert!(DensityMatrix::new(OperatorMatrix::from_diag(&[0.25, 0.75])).is_ok());
        assert!(DensityMatrix::pure(&[ZERO, ZERO]).is_err());
        assert!(DensityMatrix::basis_state(3, 3).is_err());
    }

    #[test]
    fn purity_of_pure_and_mixed() {
        assert!((DensityMatrix::basis_state(4, 2).unwrap().purity() - 1.0).abs() < 1e-15);
        assert!((DensityMatrix::maximally_mixed(18).purity() - 1.0 / 18.0).abs() < 1e-15);
    }

    #[test]
    fn site_trace_of_bonding_state() {
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let psi = [Complex64::new(r, 0.0), ZERO, Complex64::new(r, 0.0), ZERO];
        let rho = DensityMatrix::pure(&psi).unwrap().trace_out_site().unwrap();
        assert!(
            rho.matrix()
                .max_diff(&OperatorMatrix::from_diag(&[1.0, 0.0]))
                < 1e-15
        );
    }
}

//! Cyclic Jacobi diagonalization of small dense Hermitian matrices and the
//! spectral propagator built on it.

use num_complex::Complex64;

use super::matrix::{OperatorMatrix, ZERO};
use crate::error::{Error, Result};

/// Relative Hermiticity tolerance accepted on input.
pub const TOL_HERM: f64 = 1e-10;
/// Target for the off-diagonal Frobenius norm, relative to the full norm.
pub const OFF_DIAGONAL_TARGET: f64 = 1e-13;
pub const MAX_SWEEPS: usize = 100;

/// Eigenvalues in ascending order with the matching eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: OperatorMatrix,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.values.len()
    }

    /// `V·diag(λ)·V†`.
    pub fn reconstruct(&self) -> OperatorMatrix {
        let d: Vec<Complex64> = self
            .values
            .iter()
            .map(|&l| Complex64::new(l, 0.0))
            .collect();
        self.apply_diag(&d)
    }

    /// `U(t) = V·diag(e^{-iλt})·V†`.
    pub fn propagator(&self, time: f64) -> OperatorMatrix {
        let phases: Vec<Complex64> = self
            .values
            .iter()
            .map(|&l| Complex64::from_polar(1.0, -l * time))
            .collect();
        self.apply_diag(&phases)
    }

    fn apply_diag(&self, d: &[Complex64]) -> OperatorMatrix {
        let n = self.dim();
        let v = &self.vectors;
        let mut out = OperatorMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for k in 0..n {
                    acc += v[(i, k)] * d[k] * v[(j, k)].conj();
                }
                out[(i, j)] = acc;
            }
        }
        out
    }
}

fn off_diagonal_norm(a: &OperatorMatrix) -> f64 {
    let n = a.dim();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += a[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

fn frobenius(a: &OperatorMatrix) -> f64 {
    a.as_slice()
        .iter()
        .map(|z| z.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Diagonalizes a Hermitian matrix.
///
/// Each step zeroes one off-diagonal pair with the unitary
/// `diag(1, e^{-iφ})·R(θ)`, where the phase makes the pivot real and `R` is
/// the classical real Jacobi rotation.
pub fn eig_hermitian(h: &OperatorMatrix) -> Result<Spectrum> {
    h.ensure_hermitian(TOL_HERM)?;
    let n = h.dim();
    let mut a = h.hermitian_part();
    let mut v = OperatorMatrix::identity(n);
    let scale = frobenius(&a);

    // A zero matrix is already diagonal.
    let mut sweeps = 0;
    while scale > 0.0 && off_diagonal_norm(&a) > OFF_DIAGONAL_TARGET * scale {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off_diagonal_norm(&a),
            });
        }
        sweeps += 1;
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values = order.iter().map(|&i| diag[i]).collect();
    let mut vectors = OperatorMatrix::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors[(row, col)] = v[(row, src)];
        }
    }
    Ok(Spectrum { values, vectors })
}

fn rotate(a: &mut OperatorMatrix, v: &mut OperatorMatrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    let b = apq.norm();
    if b == 0.0 {
        return;
    }
    let n = a.dim();
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let phase = (apq / b).conj();
    let theta = (gamma - alpha) / (2.0 * b);
    let t = if theta == 0.0 {
        1.0
    } else {
        theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let g_pp = Complex64::new(c, 0.0);
    let g_pq = Complex64::new(s, 0.0);
    let g_qp = phase * (-s);
    let g_qq = phase * c;

    // A ← A·G
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = akp * g_pp + akq * g_qp;
        a[(k, q)] = akp * g_pq + akq * g_qq;
    }
    // A ← G†·A
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = g_pp.conj() * apk + g_qp.conj() * aqk;
        a[(q, k)] = g_pq.conj() * apk + g_qq.conj() * aqk;
    }
    a[(p, q)] = ZERO;
    a[(q, p)] = ZERO;
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
    // V ← V·G
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * g_pp + vkq * g_qp;
        v[(k, q)] = vkp * g_pq + vkq * g_qq;
    }
}

/// `e^{-iHt}` for Hermitian `h`.
pub fn propagator(h: &OperatorMatrix, time: f64) -> Result<OperatorMatrix> {
    Ok(eig_hermitian(h)?.propagator(time))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::matrix::ONE;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    pub(crate) fn random_hermitian(rng: &mut impl Rng, n: usize) -> OperatorMatrix {
        let mut m = OperatorMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(rng.gen_range(-2.0..2.0), 0.0);
            for j in (i + 1)..n {
                let z = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m[(i, j)] = z;
                m[(j, i)] = z.conj();
            }
        }
        m
    }

    #[test]
    fn diagonal_input_is_sorted() {
        let s = eig_hermitian(&OperatorMatrix::from_diag(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(s.values, vec![1.0, 2.0, 3.0]);
    }

    #[test]
    fn pauli_x_spectrum() {
        let x = OperatorMatrix::from_real_rows(&[&[0.0, 1.0], &[1.0, 0.0]]);
        let s = eig_hermitian(&x).unwrap();
        assert!((s.values[0] + 1.0).abs() < 1e-15);
        assert!((s.values[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn reduced_three_level_block() {
        // m = 3/2 block at the resonant parameter point after the diagonal shift.
        let h = OperatorMatrix::from_real_rows(&[
            &[0.0, 0.0, -0.40],
            &[0.0, 0.10, 0.0],
            &[-0.40, 0.0, 0.0],
        ]);
        let s = eig_hermitian(&h).unwrap();
        for (got, want) in s.values.iter().zip([-0.40, 0.10, 0.40]) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn rejects_non_hermitian() {
        let m = OperatorMatrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn zero_matrix_propagates_to_identity() {
        let u = propagator(&OperatorMatrix::zeros(4), 3.7).unwrap();
        assert_eq!(u, OperatorMatrix::identity(4));
    }

    #[test]
    fn half_rabi_period_of_x_coupling() {
        let g = 0.37;
        let h = OperatorMatrix::from_real_rows(&[&[0.0, g], &[g, 0.0]]);
        let u = propagator(&h, std::f64::consts::PI / (2.0 * g)).unwrap();
        let mut want = OperatorMatrix::zeros(2);
        want[(0, 1)] = -crate::linalg::matrix::I;
        want[(1, 0)] = -crate::linalg::matrix::I;
        assert!(u.max_diff(&want) < 1e-14);
    }

    #[test]
    fn propagator_group_property() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let h = random_hermitian(&mut rng, 5);
        let s = eig_hermitian(&h).unwrap();
        let (t1, t2) = (0.73, 2.19);
        let lhs = &s.propagator(t1) * &s.propagator(t2);
        assert!(lhs.max_diff(&s.propagator(t1 + t2)) < 1e-10);
    }

    #[test]
    fn random_corpus_reconstruction_and_unitarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 0..100 {
            let n = 1 + k % 36;
            let h = random_hermitian(&mut rng, n);
            let s = eig_hermitian(&h).unwrap();
            assert!(s.reconstruct().max_diff(&h) < 1e-10);
            assert!(s.values.windows(2).all(|w| w[0] <= w[1]));
            let vhv = &s.vectors.adjoint() * &s.vectors;
            assert!(vhv.max_diff(&OperatorMatrix::identity(n)) < 1e-10);
            let u = s.propagator(rng.gen_range(0.0..20.0));
            let uhu = &u.adjoint() * &u;
            assert!(uhu.max_diff(&OperatorMatrix::identity(n)) < 1e-10);
        }
    }

    #[test]
    fn degenerate_spectrum_still_reconstructs() {
        let mut h = OperatorMatrix::identity(4);
        h[(0, 3)] = ONE;
        h[(3, 0)] = ONE;
        let s = eig_hermitian(&h).unwrap();
        assert!(s.reconstruct().max_diff(&h) < 1e-14);
    }
}

use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Dense square complex matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl OperatorMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_diag(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    pub fn from_complex_diag(diag: &[Complex64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    /// Builds from row-major entries; fails unless `data.len()` is a perfect
    /// square and every entry is finite.
    pub fn from_vec(dim: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                found: data.len(),
            });
        }
        if data.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidArgument("non-finite matrix entry".into()));
        }
        Ok(Self { dim, data })
    }

    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "row {i} has wrong length");
            for (j, &x) in row.iter().enumerate() {
                m[(i, j)] = Complex64::new(x, 0.0);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn scale(&self, k: Complex64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn scale_re(&self, k: f64) -> Self {
        self.scale(Complex64::new(k, 0.0))
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn diagonal(&self) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, i)]).collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_error(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// Checks Hermiticity relative to the largest entry.
    pub fn ensure_hermitian(&self, rel_tol: f64) -> Result<()> {
        let deviation = self.hermiticity_error();
        let tolerance = rel_tol * self.max_abs();
        if deviation > tolerance {
            return Err(Error::NotHermitian {
                deviation,
                tolerance,
            });
        }
        Ok(())
    }

    /// `(A + A†)/2`.
    pub fn hermitian_part(&self) -> Self {
        (self + &self.adjoint()).scale_re(0.5)
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Principal submatrix on the given indices, in the given order.
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let k = indices.len();
        let mut out = Self::zeros(k);
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    /// Rectangular block `rows × cols` flattened row-major.
    pub fn block(&self, rows: &[usize], cols: &[usize]) -> Vec<Complex64> {
        rows.iter()
            .flat_map(|&i| cols.iter().map(move |&j| self[(i, j)]))
            .collect()
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.dim);
        (0..self.dim)
            .map(|i| {
                self.data[i * self.dim..(i + 1) * self.dim]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect()
    }

    /// `|v⟩⟨v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = v[i] * v[j].conj();
            }
        }
        m
    }

    /// Similarity transform `W† A W`.
    pub fn conjugate_by(&self, w: &Self) -> Self {
        &(&w.adjoint() * self) * w
    }
}

impl Index<(usize, usize)> for OperatorMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl IndexMut<(usize, usize)> for OperatorMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

impl<'a> Mul<&'a OperatorMatrix> for &'a OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = OperatorMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a == ZERO {
                    continue;
                }
                let row = &rhs.data[k * n..(k + 1) * n];
                let dst = &mut out.data[i * n..(i + 1) * n];
                for (d, b) in dst.iter_mut().zip(row) {
                    *d += a * b;
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a OperatorMatrix> for &'a OperatorMatrix {
    type Output = OperatorMatrix;
    fn add(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        OperatorMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a OperatorMatrix> for &'a OperatorMatrix {
    type Output = OperatorMatrix;
    fn sub(self, rhs: &OperatorMatrix) -> OperatorMatrix {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        OperatorMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

/// Kronecker product: `(a⊗b)[i·db+k, j·db+l] = a[i,j]·b[k,l]`.
pub fn kron(a: &OperatorMatrix, b: &OperatorMatrix) -> OperatorMatrix {
    let (da, db) = (a.dim, b.dim);
    let mut out = OperatorMatrix::zeros(da * db);
    for i in 0..da {
        for j in 0..da {
            let x = a[(i, j)];
            if x == ZERO {
                continue;
            }
            for k in 0..db {
                for l in 0..db {
                    out[(i * db + k, j * db + l)] = x * b[(k, l)];
                }
            }
        }
    }
    out
}

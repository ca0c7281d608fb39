use num_complex::Complex64;

use super::matrix::{OperatorMatrix, I};
use crate::halfint::SpinQuantum;

/// Cartesian and ladder spin matrices in the `|s⟩, |s-1⟩, …, |-s⟩` basis
/// (ħ = 1).
#[derive(Clone, Debug)]
pub struct SpinOperatorSet {
    pub s: SpinQuantum,
    pub sx: OperatorMatrix,
    pub sy: OperatorMatrix,
    pub sz: OperatorMatrix,
    pub s_plus: OperatorMatrix,
    pub s_minus: OperatorMatrix,
}

impl SpinOperatorSet {
    pub fn components(&self) -> [&OperatorMatrix; 3] {
        [&self.sx, &self.sy, &self.sz]
    }

    pub fn identity(&self) -> OperatorMatrix {
        OperatorMatrix::identity(self.s.dim())
    }
}

pub fn spin_operators(s: SpinQuantum) -> SpinOperatorSet {
    let n = s.dim();
    let ms: Vec<f64> = s.projections().map(|m| m.value()).collect();
    let ss = s.s().value();
    let sz = OperatorMatrix::from_diag(&ms);
    let mut s_plus = OperatorMatrix::zeros(n);
    // index k holds m = s - k, so S+ raises from column k to row k-1
    for k in 1..n {
        let m = ms[k];
        s_plus[(k - 1, k)] = Complex64::new((ss * (ss + 1.0) - m * (m + 1.0)).sqrt(), 0.0);
    }
    let s_minus = s_plus.adjoint();
    let sx = (&s_plus + &s_minus).scale_re(0.5);
    let sy = (&s_plus - &s_minus).scale(-I * 0.5);
    SpinOperatorSet {
        s,
        sx,
        sy,
        sz,
        s_plus,
        s_minus,
    }
}

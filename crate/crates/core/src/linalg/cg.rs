//! Clebsch–Gordan coefficients in the Condon–Shortley convention.

use crate::error::{Error, Result};
use crate::halfint::HalfInt;

fn factorial(n: i32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn check_pair(j: HalfInt, m: HalfInt) -> Result<()> {
    if j.twice() < 0 || m.abs() > j || (j - m).twice() % 2 != 0 {
        return Err(Error::InvalidQuantumNumbers(format!("j = {j}, m = {m}")));
    }
    Ok(())
}

/// `⟨j1 m1; j2 m2 | J M⟩` via the Racah closed form.
pub fn clebsch_gordan(
    j1: HalfInt,
    m1: HalfInt,
    j2: HalfInt,
    m2: HalfInt,
    j: HalfInt,
    m: HalfInt,
) -> Result<f64> {
    check_pair(j1, m1)?;
    check_pair(j2, m2)?;
    check_pair(j, m)?;
    if (j1 + j2 + j).twice() % 2 != 0 {
        return Err(Error::InvalidQuantumNumbers(format!(
            "j1 + j2 + J = {} is not an integer",
            j1 + j2 + j
        )));
    }
    if m != m1 + m2 || j < (j1 - j2).abs() || j > j1 + j2 {
        return Ok(0.0);
    }
    // every combination below is an integer once the checks above pass
    let int = |h: HalfInt| h.twice() / 2;
    let (a, b, c) = (int(j + j1 - j2), int(j - j1 + j2), int(j1 + j2 - j));
    let prefactor = ((j.twice() as f64 + 1.0) * factorial(a) * factorial(b) * factorial(c)
        / factorial(int(j1 + j2 + j) + 1))
    .sqrt();
    let norm = (factorial(int(j + m))
        * factorial(int(j - m))
        * factorial(int(j1 - m1))
        * factorial(int(j1 + m1))
        * factorial(int(j2 - m2))
        * factorial(int(j2 + m2)))
    .sqrt();
    let mut sum = 0.0;
    for k in 0..=c {
        let terms = [
            k,
            c - k,
            int(j1 - m1) - k,
            int(j2 + m2) - k,
            int(j - j2 + m1) + k,
            int(j - j1 - m2) + k,
        ];
        if terms.iter().any(|&t| t < 0) {
            continue;
        }
        let denom: f64 = terms.iter().map(|&t| factorial(t)).product();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign / denom;
    }
    Ok(prefactor * norm * sum)
}

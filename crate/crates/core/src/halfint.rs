//! Half-integer quantum numbers, stored as twice their value.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A half-integer `n/2`, held as the integer `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt(i32);

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt(0);
    pub const HALF: HalfInt = HalfInt(1);
    pub const ONE: HalfInt = HalfInt(2);

    pub const fn from_twice(twice: i32) -> Self {
        HalfInt(twice)
    }

    pub const fn from_int(n: i32) -> Self {
        HalfInt(2 * n)
    }

    pub const fn twice(self) -> i32 {
        self.0
    }

    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn abs(self) -> Self {
        HalfInt(self.0.abs())
    }

    /// Formats with an explicit sign (`+1/2`, `0`, `-1`), the form used for
    /// magnetic quantum numbers.
    pub fn signed(self) -> String {
        match self.0.signum() {
            1 => format!("+{self}"),
            _ => self.to_string(),
        }
    }
}

impl std::ops::Add for HalfInt {
    type Output = HalfInt;
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 + rhs.0)
    }
}

impl std::ops::Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt(self.0 - rhs.0)
    }
}

impl std::ops::Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt(-self.0)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `3`, `-1`, `+1/2`, `-3/2`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidQuantumNumbers(format!("cannot parse half-integer {s:?}"));
        let t = s.trim();
        let t = t.strip_prefix('+').unwrap_or(t);
        match t.split_once('/') {
            Some((num, "2")) => {
                let n: i32 = num.parse().map_err(|_| bad())?;
                if n % 2 == 0 {
                    return Err(bad());
                }
                Ok(HalfInt(n))
            }
            Some(_) => Err(bad()),
            None => t.parse::<i32>().map(HalfInt::from_int).map_err(|_| bad()),
        }
    }
}

/// Magnitude of a spin, `s ∈ {0, 1/2, 1, ...}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpinQuantum(HalfInt);

impl SpinQuantum {
    pub const HALF: SpinQuantum = SpinQuantum(HalfInt::HALF);
    pub const ONE: SpinQuantum = SpinQuantum(HalfInt::ONE);

    pub fn new(s: HalfInt) -> Result<Self> {
        if s.twice() < 0 {
            return Err(Error::InvalidSpin(s.twice() as f64));
        }
        Ok(SpinQuantum(s))
    }

    /// Builds a spin from a float, rejecting anything whose double is not a
    /// non-negative integer.
    pub fn from_f64(s: f64) -> Result<Self> {
        let twice = 2.0 * s;
        if !twice.is_finite() || twice < 0.0 || (twice - twice.round()).abs() > 1e-12 {
            return Err(Error::InvalidSpin(twice));
        }
        Ok(SpinQuantum(HalfInt(twice.round() as i32)))
    }

    pub fn s(self) -> HalfInt {
        self.0
    }

    pub fn dim(self) -> usize {
        self.0.twice() as usize + 1
    }

    /// `s, s-1, ..., -s`.
    pub fn projections(self) -> impl Iterator<Item = HalfInt> {
        let top = self.0.twice();
        (0..=top).map(move |k| HalfInt(top - 2 * k))
    }
}

impl fmt::Display for SpinQuantum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for SpinQuantum {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SpinQuantum::new(s.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["+1/2", "-3/2", "0", "+2", "-1"] {
            let h: HalfInt = s.parse().unwrap();
            assert_eq!(h.signed(), s);
        }
        assert_eq!("1/2".parse::<HalfInt>().unwrap(), HalfInt::HALF);
        assert!("2/2".parse::<HalfInt>().is_err());
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
    }

    #[test]
    fn spin_validation() {
        assert!(SpinQuantum::from_f64(0.3).is_err());
        assert!(SpinQuantum::from_f64(-0.5).is_err());
        assert_eq!(SpinQuantum::from_f64(1.5).unwrap().dim(), 4);
        let m: Vec<_> = SpinQuantum::ONE.projections().map(|m| m.twice()).collect();
        assert_eq!(m, vec![2, 0, -2]);
    }
}

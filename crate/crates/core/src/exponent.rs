//! Lebesgue exponents and the parabolic scaling line.

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};

/// A Lebesgue exponent in `[1, ∞]`; `f64::INFINITY` encodes the sup norm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Exponent(f64);

impl Exponent {
    pub const INFINITY: Exponent = Exponent(f64::INFINITY);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_nan() || value < 1.0 {
            return Err(LabError::ExponentBelowOne(value));
        }
        Ok(Exponent(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_infinite(self) -> bool {
        self.0.is_infinite()
    }

    /// Hölder conjugate `p' = p/(p-1)`, with `1' = ∞` and `∞' = 1`.
    pub fn conjugate(self) -> Exponent {
        Exponent(conjugate(self.0))
    }
}

impl TryFrom<f64> for Exponent {
    type Error = LabError;
    fn try_from(v: f64) -> Result<Self> {
        Exponent::new(v)
    }
}

impl From<Exponent> for f64 {
    fn from(e: Exponent) -> f64 {
        e.0
    }
}

/// Hölder conjugate of a real exponent in `[1, ∞]`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// `1/p'`, finite for every `p` in `[1, ∞]`.
pub fn inverse_conjugate(p: f64) -> f64 {
    if p.is_infinite() {
        1.0
    } else {
        1.0 - 1.0 / p
    }
}

/// Dimension together with the sphere exponent `p` and spacetime exponent `q`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentPair {
    pub d: usize,
    pub p: f64,
    pub q: f64,
}

impl ExponentPair {
    pub fn new(d: usize, p: f64, q: f64) -> Result<Self> {
        if d != 1 && d != 2 {
            return Err(LabError::UnsupportedDimension(d));
        }
        if !(p > 1.0) {
            return Err(LabError::InvalidParameter(format!("p = {p} must exceed 1")));
        }
        if !(q > p) {
            return Err(LabError::InvalidParameter(format!("q = {q} must exceed p = {p}")));
        }
        Ok(ExponentPair { d, p, q })
    }

    /// The pair on the scaling line through `p`.
    pub fn on_scaling_line_through(d: usize, p: f64) -> Result<Self> {
        let (q, _, _) = crate::constants::scaling_exponents(p, d)?;
        ExponentPair::new(d, p, q)
    }

    pub fn p_conjugate(&self) -> f64 {
        conjugate(self.p)
    }

    /// `q = (d+2)/d · p'` within 1e-12.
    pub fn on_scaling_line(&self) -> bool {
        if self.p.is_infinite() || self.p <= 1.0 {
            return false;
        }
        let target = scaling_q(self.d, self.p);
        (self.q - target).abs() <= 1e-12 * target.max(1.0)
    }

    pub fn ptilde(&self) -> f64 {
        self.p.max(self.p_conjugate())
    }

    pub fn r(&self) -> f64 {
        self.p.max(2.0)
    }
}

pub(crate) fn scaling_q(d: usize, p: f64) -> f64 {
    (d as f64 + 2.0) / d as f64 * conjugate(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates() {
        assert_eq!(conjugate(2.0), 2.0);
        assert_eq!(conjugate(1.0), f64::INFINITY);
        assert_eq!(conjugate(f64::INFINITY), 1.0);
        assert!((conjugate(1.5) - 3.0).abs() < 1e-15);
        assert_eq!(inverse_conjugate(1.0), 0.0);
        assert_eq!(inverse_conjugate(f64::INFINITY), 1.0);
    }

    #[test]
    fn exponent_rejects_below_one() {
        assert!(Exponent::new(0.5).is_err());
        assert!(Exponent::new(f64::NAN).is_err());
        assert!(Exponent::new(1.0).is_ok());
        assert!(Exponent::INFINITY.is_infinite());
    }

    #[test]
    fn scaling_line_predicate() {
        let pair = ExponentPair::new(1, 2.0, 6.0).unwrap();
        assert!(pair.on_scaling_line());
        assert_eq!(pair.ptilde(), 2.0);
        assert_eq!(pair.r(), 2.0);
        let off = ExponentPair::new(1, 2.0, 6.0 + 1e-9).unwrap();
        assert!(!off.on_scaling_line());
        let pair = ExponentPair::new(2, 1.5, 6.0).unwrap();
        assert!(pair.on_scaling_line());
        assert_eq!(pair.r(), 2.0);
        assert!((pair.ptilde() - 3.0).abs() < 1e-15);
        assert!(ExponentPair::new(3, 2.0, 6.0).is_err());
    }
}

//! Scaling-line exponents and the comparison constants `α_{p,q}` and `β_{p,q}`.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::exponent::{conjugate, scaling_q};
use crate::special::{gamma, ln_gamma};

/// `(q, p̃, r)` for `p` on the scaling line: `q = (d+2)/d · p'`,
/// `p̃ = max{p, p'}`, `r = max{p, 2}`.
pub fn scaling_exponents(p: f64, d: usize) -> Result<(f64, f64, f64)> {
    if d != 1 && d != 2 {
        return Err(LabError::UnsupportedDimension(d));
    }
    let upper = 2.0 * (d as f64 + 1.0) / d as f64;
    if !(p > 1.0 && p < upper) {
        return Err(LabError::InvalidParameter(format!("p = {p} must lie in (1, {upper})")));
    }
    let pc = conjugate(p);
    Ok((scaling_q(d, p), p.max(pc), p.max(2.0)))
}

/// `((1/2π) ∫ |1 + t e^{iθ}|^q dθ)^{1/q}` by the `nodes`-point trapezoid rule.
pub fn circle_average_phi(t: f64, q: f64, nodes: usize) -> Result<f64> {
    if !(t >= 0.0) {
        return Err(LabError::InvalidParameter(format!("t = {t} must be nonnegative")));
    }
    if !(q >= 1.0) {
        return Err(LabError::ExponentBelowOne(q));
    }
    if nodes == 0 {
        return Err(LabError::InvalidParameter("node count must be positive".into()));
    }
    if t == 0.0 {
        return Ok(1.0);
    }
    if q.is_infinite() {
        return Ok(1.0 + t);
    }
    // |1 + t e^{iθ}|^2 = 1 + t^2 + 2t cos θ; the integrand is even in θ.
    let h = 2.0 * PI / nodes as f64;
    let a = 1.0 + t * t;
    let mut sum = 0.0;
    for k in 0..nodes {
        let m2 = (a + 2.0 * t * (k as f64 * h).cos()).max(0.0);
        sum += m2.powf(0.5 * q);
    }
    Ok((sum / nodes as f64).powf(1.0 / q))
}

/// `Γ((q+1)/2) / (√π Γ((q+2)/2))`, the normalised Wallis integral
/// `(1/2π)∫|cos(θ/2)|^q dθ`.
pub fn wallis_ratio(q: f64) -> f64 {
    let (a, b) = (0.5 * (q + 1.0), 0.5 * (q + 2.0));
    if q <= 100.0 {
        gamma(a) / (PI.sqrt() * gamma(b))
    } else {
        (ln_gamma(a) - ln_gamma(b)).exp() / PI.sqrt()
    }
}

/// Closed form of the circle average at `t = 1`: `2 · wallis_ratio(q)^{1/q}`.
pub fn circle_average_at_one(q: f64) -> f64 {
    2.0 * wallis_ratio(q).powf(1.0 / q)
}

/// `β_{p,q} = 2^{1/r'} · wallis_ratio(q)^{1/q}` with `r = max{p, 2}`.
pub fn beta(p: f64, q: f64) -> Result<f64> {
    if !(p >= 1.0) {
        return Err(LabError::ExponentBelowOne(p));
    }
    if !(q >= 1.0) {
        return Err(LabError::ExponentBelowOne(q));
    }
    let r = p.max(2.0);
    let inv_rc = 1.0 - 1.0 / r;
    Ok(inv_rc.exp2() * wallis_ratio(q).powf(1.0 / q))
}

/// Search parameters for the one-dimensional maximisation defining `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaSearch {
    /// Uniform scan points on `[0, 1]`, endpoints included.
    pub scan_points: usize,
    /// Golden-section stops once the bracket is shorter than this.
    pub t_tol: f64,
    /// θ-nodes for `t` below `high_from`.
    pub nodes_low: usize,
    /// θ-nodes for `t ≥ high_from`, where `|1 + t e^{iθ}|^q` loses smoothness.
    pub nodes_high: usize,
    pub high_from: f64,
}

impl Default for AlphaSearch {
    fn default() -> Self {
        AlphaSearch { scan_points: 2001, t_tol: 1e-10, nodes_low: 4096, nodes_high: 65536, high_from: 0.99 }
    }
}

impl AlphaSearch {
    fn nodes_for(&self, t: f64) -> usize {
        if t >= self.high_from {
            self.nodes_high
        } else {
            self.nodes_low
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlphaResult {
    pub value: f64,
    pub argmax_t: f64,
    /// Every `(t, ratio)` evaluated, scan first then refinement.
    pub samples: Vec<(f64, f64)>,
}

/// The ratio maximised by `α`: `Φ_q(t) / (1 + t^p)^{1/p}`.
pub fn alpha_ratio(t: f64, p: f64, q: f64, nodes: usize) -> Result<f64> {
    Ok(circle_average_phi(t, q, nodes)? / (1.0 + t.powf(p)).powf(1.0 / p))
}

/// `α_{p,q}` for `(p, q)` on the scaling line in dimension `d`.
pub fn alpha(d: usize, p: f64, q: f64, search: &AlphaSearch) -> Result<AlphaResult> {
    let upper = 2.0 * (d as f64 + 1.0) / d as f64;
    if d != 1 && d != 2 {
        return Err(LabError::UnsupportedDimension(d));
    }
    if !(p >= 1.0 && p < upper) {
        return Err(LabError::InvalidParameter(format!("p = {p} must lie in [1, {upper})")));
    }
    let expected = scaling_q(d, p);
    let on_line = if expected.is_infinite() {
        q.is_infinite()
    } else {
        (q - expected).abs() <= 1e-9 * expected.max(1.0)
    };
    if !on_line {
        return Err(LabError::OffScalingLine { d, p, q });
    }
    maximize_alpha_ratio(p, q, search)
}

/// Scan-then-golden maximisation of [`alpha_ratio`] over `t ∈ [0, 1]`
/// without the scaling-line check.
pub fn maximize_alpha_ratio(p: f64, q: f64, search: &AlphaSearch) -> Result<AlphaResult> {
    if search.scan_points < 3 {
        return Err(LabError::InvalidParameter("alpha scan needs at least 3 points".into()));
    }
    if !(search.t_tol > 0.0) {
        return Err(LabError::InvalidParameter("alpha t tolerance must be positive".into()));
    }
    let eval = |t: f64| alpha_ratio(t, p, q, search.nodes_for(t));
    let n = search.scan_points;
    let mut samples = Vec::with_capacity(n + 64);
    for k in 0..n {
        let t = k as f64 / (n - 1) as f64;
        samples.push((t, eval(t)?));
    }
    let (best_k, _) = samples
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (k, s)| if s.1 > acc.1 { (k, s.1) } else { acc });
    let lo = samples[best_k.saturating_sub(1)].0;
    let hi = samples[(best_k + 1).min(n - 1)].0;
    golden_maximize(eval, lo, hi, search.t_tol, &mut samples)?;
    let (argmax_t, value) = samples
        .iter()
        .copied()
        .fold((0.0, f64::NEG_INFINITY), |acc, s| if s.1 > acc.1 { s } else { acc });
    Ok(AlphaResult { value, argmax_t, samples })
}

const INV_PHI: f64 = 0.618_033_988_749_894_8;

/// Golden-section search for a maximum on `[lo, hi]`; every evaluation is
/// appended to `samples`.
fn golden_maximize<F>(f: F, mut lo: f64, mut hi: f64, tol: f64, samples: &mut Vec<(f64, f64)>) -> Result<()>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1)?;
    let mut f2 = f(x2)?;
    samples.push((x1, f1));
    samples.push((x2, f2));
    while hi - lo > tol {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2)?;
            samples.push((x2, f2));
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1)?;
            samples.push((x1, f1));
        }
    }
    for t in [lo, hi] {
        samples.push((t, f(t)?));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scaling_line_values() {
        assert_eq!(scaling_exponents(2.0, 1).unwrap().0, 6.0);
        assert_eq!(scaling_exponents(2.0, 2).unwrap().0, 4.0);
        let (q, pt, r) = scaling_exponents(1.5, 1).unwrap();
        assert!((q - 9.0).abs() < 1e-14);
        assert!((pt - 3.0).abs() < 1e-14);
        assert_eq!(r, 2.0);
        assert!(scaling_exponents(1.0, 1).is_err());
        assert!(scaling_exponents(4.0, 1).is_err());
        assert!(scaling_exponents(3.0, 2).is_err());
    }

    #[test]
    fn circle_average_edge_values() {
        assert_eq!(circle_average_phi(0.0, 6.0, 64).unwrap(), 1.0);
        // 2 (5/16)^{1/6}, from Γ(7/2) = 15√π/8 and Γ(4) = 6
        let exact = 2.0 * (5.0f64 / 16.0).powf(1.0 / 6.0);
        assert!((circle_average_phi(1.0, 6.0, 65536).unwrap() - exact).abs() < 1e-10);
        assert!(circle_average_phi(-0.1, 6.0, 64).is_err());
        assert!(circle_average_phi(0.5, 0.5, 64).is_err());
    }

    #[test]
    fn circle_average_is_nondecreasing_in_t() {
        for q in [2.5, 4.0, 6.0, 9.0] {
            let vals: Vec<f64> =
                (0..=10).map(|k| circle_average_phi(0.1 * k as f64, q, 8192).unwrap()).collect();
            for w in vals.windows(2) {
                assert!(w[1] >= w[0] - 1e-14, "q={q}: {vals:?}");
            }
        }
    }

    #[test]
    fn beta_values() {
        let b26 = 2f64.sqrt() * (5.0f64 / 16.0).powf(1.0 / 6.0);
        let b24 = 2f64.sqrt() * (3.0f64 / 8.0).powf(1.0 / 4.0);
        assert!((beta(2.0, 6.0).unwrap() - b26).abs() < 1e-12);
        assert!((beta(2.0, 4.0).unwrap() - b24).abs() < 1e-12);
        assert_eq!(beta(1.5, 7.0).unwrap(), beta(1.9, 7.0).unwrap());
        assert!(beta(0.5, 6.0).is_err());
    }

    #[test]
    fn alpha_requires_scaling_line() {
        let s = AlphaSearch::default();
        assert!(matches!(alpha(1, 2.0, 5.0, &s), Err(LabError::OffScalingLine { .. })));
    }

    #[test]
    fn alpha_at_p_one_is_at_least_one() {
        let s = AlphaSearch { scan_points: 101, ..AlphaSearch::default() };
        let r = maximize_alpha_ratio(1.0, 6.0, &s).unwrap();
        assert!(r.value >= 1.0);
        assert!((0.0..=1.0).contains(&r.argmax_t));
        // on the line, p = 1 pairs with q = ∞
        assert!(alpha(1, 1.0, 6.0, &s).is_err());
    }
}

//! Antipodally concentrating profiles on the sphere and their comparison
//! with the parabolic extension at finite scale.
//!
//! A pair `(φ⁺, φ⁻)` on `R^d` and a scale `λ` define
//! `g_λ(ω) = λ^{-d/p} [φ⁺(ω'/λ) 1_{ω_1>0} + φ⁻(ω'/λ) 1_{ω_1<0}] 1_{|ω'|<1/2}`.
//! Its extension splits as `𝓔g_λ(x) = e^{ix_1} A(x) + e^{-ix_1} B(x)` where
//! `A`, `B` come from the two hemispheres and vary on the parabolic scales
//! `|x_1| ~ λ^{-2}`, `|x'| ~ λ^{-1}`. All spacetime integrals here are taken
//! in parabolic coordinates `y = (-λ² x_1, λ x')`, where the `L^q` norm is
//! scale-free, and the fast carrier `e^{±ix_1}` is resolved by sampling
//! `M` equispaced offsets of `x_1` across one period of `e^{2ix_1}` at every
//! lattice point (a stratified rule; both hemisphere sums are still evaluated
//! exactly at every sample).

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::constants::{beta, circle_average_phi};
use crate::error::{LabError, Result};
use crate::exponent::ExponentPair;
use crate::extend::{abs_pow, extend_parab, extend_parab_on_axes, lattice_sum, lebesgue_norm, truncation_tail};
use crate::grids::{LatticeField, PlaneField, SphereField, SphereGrid, UniformGrid};
use crate::interp::cubic_sample;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Two profiles on a shared plane lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct ProfilePair {
    pub phi_plus: PlaneField,
    pub phi_minus: PlaneField,
    /// Norm ratio `‖φ⁻‖_p / ‖φ⁺‖_p` (the parameter used by [`conjugate_pair`]).
    pub t: f64,
    /// `true` when `φ⁻(ξ) = t · conj(φ⁺(-ξ))`.
    pub conjugate: bool,
}

impl ProfilePair {
    /// A general pair; `t` is recorded as `‖φ⁻‖_p / ‖φ⁺‖_p`.
    pub fn new(phi_plus: PlaneField, phi_minus: PlaneField, p: f64) -> Result<Self> {
        if phi_plus.grid != phi_minus.grid {
            return Err(LabError::InvalidParameter("profiles must share one plane lattice".into()));
        }
        let np = lebesgue_norm(&phi_plus, p)?;
        let nm = lebesgue_norm(&phi_minus, p)?;
        let t = if np > 0.0 { nm / np } else { 0.0 };
        Ok(ProfilePair { phi_plus, phi_minus, t, conjugate: false })
    }

    /// Single profile on the upper hemisphere.
    pub fn single(phi_plus: PlaneField) -> Self {
        let phi_minus = LatticeField::zeros(phi_plus.grid.clone());
        ProfilePair { phi_plus, phi_minus, t: 0.0, conjugate: false }
    }

    pub fn plane_grid(&self) -> &Arc<UniformGrid> {
        &self.phi_plus.grid
    }

    pub fn d(&self) -> usize {
        self.phi_plus.grid.dim()
    }

    fn is_zero(f: &PlaneField) -> bool {
        f.values.iter().all(|v| *v == ZERO)
    }

    /// Fraction of `‖φ‖_p^p` (both profiles) carried by the outermost lattice
    /// layer; a proxy for mass lost to the box.
    pub fn edge_mass_fraction(&self, p: f64) -> f64 {
        let grid = &self.phi_plus.grid;
        let counts = grid.counts();
        let w = grid.weights();
        let mut edge = 0.0;
        let mut total = 0.0;
        let mut idx = vec![0usize; counts.len()];
        for (flat, wf) in w.iter().enumerate() {
            let on_edge = idx.iter().zip(counts).any(|(&i, &n)| i == 0 || i == n - 1);
            let m = wf
                * (abs_pow(self.phi_plus.values[flat], p) + abs_pow(self.phi_minus.values[flat], p));
            total += m;
            if on_edge {
                edge += m;
            }
            for a in (0..counts.len()).rev() {
                idx[a] += 1;
                if idx[a] < counts[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        if total > 0.0 {
            edge / total
        } else {
            0.0
        }
    }
}

/// `φ⁻(ξ) = t · conj(φ⁺(-ξ))` on the (symmetric) plane lattice.
pub fn conjugate_pair(phi_plus: &PlaneField, t: f64) -> Result<ProfilePair> {
    if !(0.0..=1.0).contains(&t) {
        return Err(LabError::InvalidParameter(format!("t = {t} must lie in [0, 1]")));
    }
    // Reflecting every axis of a symmetric lattice reverses the flat order.
    let values = phi_plus.values.iter().rev().map(|v| v.conj() * t).collect();
    let phi_minus = LatticeField::new(phi_plus.grid.clone(), values)?;
    Ok(ProfilePair { phi_plus: phi_plus.clone(), phi_minus, t, conjugate: true })
}

/// Strictly decreasing scales in `(0, 1/4]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationSchedule {
    lambdas: Vec<f64>,
}

impl ConcentrationSchedule {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.is_empty() {
            return Err(LabError::InvalidParameter("empty concentration schedule".into()));
        }
        if let Some(l) = lambdas.iter().find(|l| !(**l > 0.0 && **l <= 0.25)) {
            return Err(LabError::InvalidParameter(format!("scale {l} must lie in (0, 1/4]")));
        }
        if lambdas.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(LabError::InvalidParameter("scales must be strictly decreasing".into()));
        }
        Ok(ConcentrationSchedule { lambdas })
    }

    /// `first · ratio^k` for `k = 0..count`.
    pub fn geometric(first: f64, ratio: f64, count: usize) -> Result<Self> {
        Self::new((0..count).map(|k| first * ratio.powi(k as i32)).collect())
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    pub fn smallest(&self) -> f64 {
        *self.lambdas.last().unwrap()
    }

    /// Each `λ · R_max < 1/2`, so the scaled profiles sit inside `|ω'| < 1/2`.
    pub fn check_support(&self, plane: &UniformGrid) -> Result<()> {
        let r = plane.halfwidths().iter().copied().fold(0.0, f64::max);
        match self.lambdas.iter().find(|l| *l * r >= 0.5) {
            Some(l) => Err(LabError::InvalidParameter(format!(
                "scale {l} times plane halfwidth {r} must be below 1/2"
            ))),
            None => Ok(()),
        }
    }
}

/// Reject `λ` when the plane box does not fit inside `|ω'| < 1/2` after
/// scaling, or when fewer than 8 upper-hemisphere nodes satisfy `|ω'| < λ`.
pub fn check_scale(lambda: f64, plane: &UniformGrid, grid: &SphereGrid) -> Result<()> {
    ConcentrationSchedule::new(vec![lambda])?.check_support(plane)?;
    let nodes = grid
        .nodes()
        .filter(|w| w[0] > 0.0 && w[1..].iter().map(|x| x * x).sum::<f64>() < lambda * lambda)
        .count();
    if nodes < 8 {
        return Err(LabError::UnresolvedScale { lambda, nodes });
    }
    Ok(())
}

/// Sample `g_λ` on the sphere grid (cubic interpolation of `φ^±` at `ω'/λ`;
/// equatorial nodes get 0).
pub fn build_concentrated(pair: &ProfilePair, lambda: f64, grid: &Arc<SphereGrid>, p: f64) -> Result<SphereField> {
    if pair.d() != grid.d() {
        return Err(LabError::DimensionMismatch { expected: grid.d(), found: pair.d() });
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(LabError::InvalidParameter(format!("p = {p} must be finite and at least 1")));
    }
    check_scale(lambda, pair.plane_grid(), grid)?;
    let amp = lambda.powf(-(grid.d() as f64) / p);
    let mut xi = vec![0.0; grid.d()];
    let values = grid
        .nodes()
        .map(|w| {
            let r2: f64 = w[1..].iter().map(|x| x * x).sum();
            if r2 >= 0.25 || w[0] == 0.0 {
                return ZERO;
            }
            for (a, x) in w[1..].iter().enumerate() {
                xi[a] = x / lambda;
            }
            let phi = if w[0] > 0.0 { &pair.phi_plus } else { &pair.phi_minus };
            cubic_sample(phi, &xi) * amp
        })
        .collect();
    SphereField::new(grid.clone(), values)
}

/// Carrier-resolved samples of `λ^{-(d+2)/q} 𝓔g_λ` and of its parabolic
/// prediction on a lattice in parabolic coordinates.
struct ConcentratedSamples {
    /// Upper/lower hemisphere envelopes `A`, `B`.
    upper: Vec<Complex64>,
    lower: Vec<Complex64>,
    /// Predictions `𝓔_Pφ⁺(-λ²x_1, λx')` and `𝓔_Pφ⁻(λ²x_1, λx')`.
    pred_plus: Vec<Complex64>,
    pred_minus: Vec<Complex64>,
    /// `e^{-2ix_1}` per sample.
    carrier: Vec<Complex64>,
    /// Quadrature weight per sample (box weight / M).
    weights: Vec<f64>,
}

fn carrier_count(pair: &ProfilePair, requested: usize) -> usize {
    if ProfilePair::is_zero(&pair.phi_plus) || ProfilePair::is_zero(&pair.phi_minus) {
        1
    } else {
        requested.max(1)
    }
}

fn concentrated_samples(
    pair: &ProfilePair,
    g: &SphereField,
    lambda: f64,
    q: f64,
    parab_box: &UniformGrid,
    carriers: usize,
) -> Result<ConcentratedSamples> {
    let d = g.grid.d();
    if parab_box.dim() != d + 1 {
        return Err(LabError::DimensionMismatch { expected: d + 1, found: parab_box.dim() });
    }
    let l2 = lambda * lambda;
    let y1 = parab_box.axis_coords(0);
    let offsets: Vec<f64> = (0..carriers).map(|m| std::f64::consts::PI * m as f64 / carriers as f64).collect();
    // x_1 = -y_1/λ² + s, carrier offsets fastest
    let x1: Vec<f64> = y1.iter().flat_map(|y| offsets.iter().map(move |s| -y / l2 + s)).collect();
    let mut axes = vec![x1.clone()];
    let mut pred_axes_plus = vec![x1.iter().map(|x| -l2 * x).collect::<Vec<_>>()];
    let mut pred_axes_minus = vec![x1.iter().map(|x| l2 * x).collect::<Vec<_>>()];
    for a in 1..=d {
        let ya = parab_box.axis_coords(a);
        axes.push(ya.iter().map(|y| y / lambda).collect());
        pred_axes_plus.push(ya.clone());
        pred_axes_minus.push(ya);
    }

    // Hemisphere sums with the carrier removed from the phase:
    // x·ω = ±x_1 + x_1(ω_1 ∓ 1) + x'·ω'.
    let amp = lambda.powf(-(d as f64 + 2.0) / q);
    let mut terms = [(vec![Vec::new(); d + 1], Vec::new()), (vec![Vec::new(); d + 1], Vec::new())];
    for ((w, v), wt) in g.grid.nodes().zip(&g.values).zip(g.grid.weights()) {
        if *v == ZERO || w[0] == 0.0 {
            continue;
        }
        let r2: f64 = w[1..].iter().map(|x| x * x).sum();
        let (side, shifted) = if w[0] > 0.0 { (0, -r2 / (1.0 + w[0])) } else { (1, r2 / (1.0 - w[0])) };
        let (freqs, coeffs) = &mut terms[side];
        freqs[0].push(shifted);
        for a in 1..=d {
            freqs[a].push(w[a]);
        }
        coeffs.push(v * (*wt * amp));
    }
    let upper = lattice_sum(&axes, &terms[0].0, &terms[0].1);
    let lower = lattice_sum(&axes, &terms[1].0, &terms[1].1);
    let pred_plus = extend_parab_on_axes(&pair.phi_plus, &pred_axes_plus)?;
    let pred_minus = extend_parab_on_axes(&pair.phi_minus, &pred_axes_minus)?;

    let inner: usize = parab_box.counts()[1..].iter().product();
    let box_w = parab_box.weights();
    let n = upper.len();
    let mut carrier = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    for flat in 0..n {
        let row = flat / inner;
        let k = row / carriers;
        carrier.push(Complex64::from_polar(1.0, -2.0 * x1[row]));
        weights.push(box_w[k * inner + flat % inner] / carriers as f64);
    }
    Ok(ConcentratedSamples { upper, lower, pred_plus, pred_minus, carrier, weights })
}

impl ConcentratedSamples {
    /// `‖𝓔g_λ‖_{L^q}` over the preimage of the box (scale-free).
    fn extension_norm(&self, q: f64) -> f64 {
        let s: f64 = (0..self.upper.len())
            .map(|i| self.weights[i] * abs_pow(self.upper[i] + self.carrier[i] * self.lower[i], q))
            .sum();
        s.powf(1.0 / q)
    }

    fn residual_norm(&self, q: f64) -> f64 {
        let s: f64 = (0..self.upper.len())
            .map(|i| {
                let a = self.upper[i] - self.pred_plus[i];
                let b = self.lower[i] - self.pred_minus[i];
                self.weights[i] * abs_pow(a + self.carrier[i] * b, q)
            })
            .sum();
        s.powf(1.0 / q)
    }
}

/// Tunables for concentrated-profile evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConcentrationOptions {
    /// Carrier offsets per lattice point (used only when both profiles are
    /// nonzero; `|·|^q` of a two-carrier sum with even `q` is a trigonometric
    /// polynomial of degree `q/2` in the offset, so `M > q/2` is exact).
    pub carriers: usize,
    /// Trapezoid nodes for the θ-average.
    pub theta_nodes: usize,
}

impl Default for ConcentrationOptions {
    fn default() -> Self {
        ConcentrationOptions { carriers: 16, theta_nodes: 256 }
    }
}

/// Relative `L^q` distance between `𝓔g_λ` and its parabolic approximation
/// `Σ_± λ^{(d+2)/q} e^{±ix_1} 𝓔_Pφ^±(∓λ²x_1, λx')`.
///
/// `parab_box` is a lattice in parabolic coordinates `y = (-λ²x_1, λx')`;
/// the physical region is its preimage.
pub fn sphere_parab_residual(
    pair: &ProfilePair,
    lambda: f64,
    grid: &Arc<SphereGrid>,
    parab_box: &UniformGrid,
    p: f64,
    q: f64,
    opts: &ConcentrationOptions,
) -> Result<f64> {
    if ProfilePair::is_zero(&pair.phi_plus) && ProfilePair::is_zero(&pair.phi_minus) {
        return Err(LabError::DegeneratePair);
    }
    let g = build_concentrated(pair, lambda, grid, p)?;
    let samples = concentrated_samples(pair, &g, lambda, q, parab_box, carrier_count(pair, opts.carriers))?;
    let denom = samples.extension_norm(q);
    if !(denom > 0.0) {
        return Err(LabError::Numerical("extension of the concentrated profile vanishes".into()));
    }
    Ok(samples.residual_norm(q) / denom)
}

/// Finite-scale check of the antipodal limit identities.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AntipodalReport {
    pub lambdas: Vec<f64>,
    /// `‖𝓔g_λ‖_{L^q}` per scale.
    pub lhs: Vec<f64>,
    /// `((1/2π)∫ ‖e^{iθ}𝓔_Pφ⁺(-x_1,x') - 𝓔_Pφ⁻(x_1,x')‖_q^q dθ)^{1/q}`.
    pub rhs_theta_avg: f64,
    /// `‖𝓔_Pφ⁺‖_q Φ_q(t)` for conjugate pairs.
    pub rhs_factored: Option<f64>,
    /// `β_{p,q} (‖φ⁺‖_p^p + ‖φ⁻‖_p^p)^{1/p} ‖𝓔_Pφ⁺‖_q / ‖φ⁺‖_p`.
    pub beta_bound: f64,
    /// Estimated growth of `‖𝓔_Pφ⁺‖_q` if the box were unbounded.
    pub tail_bound: f64,
    /// `(‖g_λ‖_p)` per scale.
    pub sphere_norms: Vec<f64>,
    /// `(‖φ⁺‖_p^p + ‖φ⁻‖_p^p)^{1/p}`.
    pub profile_norm: f64,
}

#[allow(clippy::too_many_arguments)]
pub fn antipodal_limit_check(
    pair: &ProfilePair,
    schedule: &ConcentrationSchedule,
    grid: &Arc<SphereGrid>,
    parab_box: &Arc<UniformGrid>,
    p: f64,
    q: f64,
    opts: &ConcentrationOptions,
) -> Result<AntipodalReport> {
    let d = grid.d();
    let pair_exp = ExponentPair::new(d, p, q)?;
    if !pair_exp.on_scaling_line() {
        return Err(LabError::OffScalingLine { d, p, q });
    }
    if ProfilePair::is_zero(&pair.phi_plus) {
        return Err(LabError::DegeneratePair);
    }
    schedule.check_support(pair.plane_grid())?;
    let carriers = carrier_count(pair, opts.carriers);

    let mut lhs = Vec::new();
    let mut sphere_norms = Vec::new();
    for &lambda in schedule.lambdas() {
        let g = build_concentrated(pair, lambda, grid, p)?;
        sphere_norms.push(lebesgue_norm(&g, p)?);
        let samples = concentrated_samples(pair, &g, lambda, q, parab_box, carriers)?;
        lhs.push(samples.extension_norm(q));
    }

    let fp = extend_parab(&pair.phi_plus, parab_box)?;
    let fm = extend_parab(&pair.phi_minus, parab_box)?;
    let w = parab_box.weights();
    let mut avg = 0.0;
    let nt = opts.theta_nodes.max(1);
    for k in 0..nt {
        let rot = Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / nt as f64);
        let s: f64 = (0..w.len())
            .map(|i| w[i] * abs_pow(rot * fp.values[parab_box.reflect_index(i, 0)] - fm.values[i], q))
            .sum();
        avg += s / nt as f64;
    }
    let rhs_theta_avg = avg.powf(1.0 / q);

    let ext_plus = lebesgue_norm(&fp, q)?;
    let rhs_factored = if pair.conjugate {
        let nodes = if pair.t >= 0.99 { 65536 } else { 4096 };
        Some(ext_plus * circle_average_phi(pair.t, q, nodes)?)
    } else {
        None
    };
    let np = lebesgue_norm(&pair.phi_plus, p)?;
    let nm = lebesgue_norm(&pair.phi_minus, p)?;
    let profile_norm = (np.powf(p) + nm.powf(p)).powf(1.0 / p);
    let beta_bound = beta(p, q)? * profile_norm * ext_plus / np;
    let tail = truncation_tail(&fp, d as f64 / 2.0, q);
    Ok(AntipodalReport {
        lambdas: schedule.lambdas().to_vec(),
        lhs,
        rhs_theta_avg,
        rhs_factored,
        beta_bound,
        tail_bound: tail.norm_increment(ext_plus, q),
        sphere_norms,
        profile_norm,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extend::extend_parab_at;
    use crate::grids::{make_sphere_grid, make_uniform_grid};

    fn gaussian(halfwidth: f64, count: usize) -> PlaneField {
        let plane = Arc::new(make_uniform_grid(1, &[halfwidth], &[count]).unwrap());
        LatticeField::from_fn(plane, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0))
    }

    #[test]
    fn conjugate_pair_basics() {
        let phi = gaussian(3.0, 61);
        let zero = conjugate_pair(&phi, 0.0).unwrap();
        assert!(zero.phi_minus.values.iter().all(|v| *v == ZERO));
        let one = conjugate_pair(&phi, 1.0).unwrap();
        assert_eq!(one.phi_minus.values, phi.values);
        assert!(conjugate_pair(&phi, 1.5).is_err());
        let plane = phi.grid.clone();
        let skew = LatticeField::from_fn(plane, |x| Complex64::new(x[0], x[0] * x[0]) * (-x[0] * x[0]).exp());
        let half = conjugate_pair(&skew, 0.5).unwrap();
        for p in [1.5, 2.0, 3.0] {
            let a = lebesgue_norm(&half.phi_minus, p).unwrap();
            let b = lebesgue_norm(&skew, p).unwrap();
            assert!((a - 0.5 * b).abs() < 1e-14 * b);
        }
    }

    #[test]
    fn conjugate_pair_extension_moduli() {
        let plane = Arc::new(make_uniform_grid(1, &[4.0], &[161]).unwrap());
        let phi = LatticeField::from_fn(plane, |x| Complex64::new(1.0, 0.3 * x[0]) * (-x[0] * x[0] + 0.2 * x[0]).exp());
        let pair = conjugate_pair(&phi, 0.5).unwrap();
        let pts: Vec<Vec<f64>> = (0..20).map(|k| vec![0.37 * k as f64 - 3.0, 1.1 - 0.21 * k as f64]).collect();
        let refl: Vec<Vec<f64>> = pts.iter().map(|x| vec![-x[0], x[1]]).collect();
        let em = extend_parab_at(&pair.phi_minus, &pts).unwrap();
        let ep = extend_parab_at(&phi, &refl).unwrap();
        for (a, b) in em.iter().zip(&ep) {
            assert!((a - b.conj() * 0.5).norm() < 1e-10);
        }
    }

    #[test]
    fn schedule_validation() {
        assert!(ConcentrationSchedule::new(vec![0.25, 0.125]).is_ok());
        assert!(ConcentrationSchedule::new(vec![0.125, 0.25]).is_err());
        assert!(ConcentrationSchedule::new(vec![0.5]).is_err());
        assert!(ConcentrationSchedule::new(vec![]).is_err());
        let s = ConcentrationSchedule::geometric(0.125, 0.5, 3).unwrap();
        let plane = make_uniform_grid(1, &[3.0], &[11]).unwrap();
        assert!(s.check_support(&plane).is_ok());
        let plane = make_uniform_grid(1, &[4.0], &[11]).unwrap();
        assert!(s.check_support(&plane).is_err());
    }

    #[test]
    fn concentrated_support_and_norm_splitting() {
        let grid = Arc::new(make_sphere_grid(1, 4096).unwrap());
        let phi = gaussian(3.5, 141);
        let g = build_concentrated(&ProfilePair::single(phi.clone()), 0.125, &grid, 2.0).unwrap();
        for (w, v) in grid.nodes().zip(&g.values) {
            if w[0] <= 0.0 {
                assert_eq!(*v, ZERO);
            }
        }
        let pair = conjugate_pair(&phi, 0.7).unwrap();
        let g = build_concentrated(&pair, 0.0625, &grid, 2.0).unwrap();
        let total = lebesgue_norm(&g, 2.0).unwrap().powi(2);
        let (mut up, mut down) = (0.0, 0.0);
        for ((w, v), wt) in grid.nodes().zip(&g.values).zip(grid.weights()) {
            if w[0] > 0.0 {
                up += wt * v.norm_sqr();
            } else if w[0] < 0.0 {
                down += wt * v.norm_sqr();
            }
        }
        assert!((total - up - down).abs() < 1e-12 * total);
        let zero = ProfilePair::single(LatticeField::zeros(phi.grid.clone()));
        let g = build_concentrated(&zero, 0.125, &grid, 2.0).unwrap();
        assert!(g.values.iter().all(|v| *v == ZERO));
    }

    #[test]
    fn unresolved_scale_is_rejected() {
        let grid = Arc::new(make_sphere_grid(1, 64).unwrap());
        let pair = ProfilePair::single(gaussian(3.0, 61));
        assert!(matches!(
            build_concentrated(&pair, 0.01, &grid, 2.0),
            Err(LabError::UnresolvedScale { .. })
        ));
    }

    #[test]
    fn degenerate_pair_is_rejected() {
        let grid = Arc::new(make_sphere_grid(1, 1024).unwrap());
        let phi = gaussian(3.0, 61);
        let pair = ProfilePair::single(LatticeField::zeros(phi.grid.clone()));
        let bx = make_uniform_grid(2, &[4.0, 4.0], &[9, 9]).unwrap();
        let r = sphere_parab_residual(&pair, 0.125, &grid, &bx, 2.0, 6.0, &ConcentrationOptions::default());
        assert_eq!(r, Err(LabError::DegeneratePair));
    }

    #[test]
    fn theta_average_is_plain_norm_when_t_is_zero() {
        let grid = Arc::new(make_sphere_grid(1, 8192).unwrap());
        let pair = conjugate_pair(&gaussian(3.5, 141), 0.0).unwrap();
        let bx = Arc::new(make_uniform_grid(2, &[6.0, 6.0], &[25, 25]).unwrap());
        let sched = ConcentrationSchedule::new(vec![0.125]).unwrap();
        let rep = antipodal_limit_check(&pair, &sched, &grid, &bx, 2.0, 6.0, &ConcentrationOptions::default()).unwrap();
        let direct = lebesgue_norm(&extend_parab(&pair.phi_plus, &bx).unwrap(), 6.0).unwrap();
        assert!((rep.rhs_theta_avg - direct).abs() < 1e-12 * direct);
        assert!((rep.rhs_factored.unwrap() - direct).abs() < 1e-12 * direct);
        assert!(antipodal_limit_check(&pair, &sched, &grid, &bx, 2.0, 5.0, &ConcentrationOptions::default()).is_err());
    }
}

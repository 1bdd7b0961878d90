//! Ascent for `‖𝓔f‖_q / ‖f‖_p`, Euler–Lagrange residuals, and the exact
//! `L^p → L^∞` benchmark.
//!
//! One step of the iteration: `u = 𝓔f`, `ψ = |u|^{q-2}u / ‖u‖_q^{q-1}`,
//! `g = 𝓡ψ`, `f ← |g|^{p'-2}g / ‖|g|^{p'-2}g‖_p`. Because `𝓡` is the exact
//! adjoint of `𝓔` for the discrete inner products,
//! `‖𝓔f_{k+1}‖_q ≥ Re⟨f_{k+1}, g⟩ = ‖g‖_{p'} ≥ Re⟨f_k, g⟩ = ‖𝓔f_k‖_q`.

use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::exponent::conjugate;
use crate::extend::{extend_sphere, lebesgue_norm, restrict_dual, truncation_tail};
use crate::grids::{sphere_area, LatticeField, SpacetimeField, SphereField, SphereGrid, UniformGrid};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Number of steps over which the ratio gain is measured for stalling.
pub const STALL_WINDOW: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct ExtremizerReport {
    /// `L^p`-normalized, phase-normalized so that `𝓔f(0) ≥ 0`.
    pub final_field: SphereField,
    /// Ratio `‖𝓔f_k‖_q / ‖f_k‖_p`, starting with the initial field.
    pub ratio_history: Vec<f64>,
    pub el_residual: f64,
    pub modulation_center: Vec<f64>,
    /// Estimated growth of the final ratio if the box were unbounded.
    pub tail_bound: f64,
    pub seed: Option<u64>,
    pub stalled: bool,
}

impl ExtremizerReport {
    pub fn final_ratio(&self) -> f64 {
        *self.ratio_history.last().unwrap()
    }

    /// Largest drop between consecutive ratios (0 for a monotone history).
    pub fn worst_decrease(&self) -> f64 {
        self.ratio_history.windows(2).map(|w| w[0] - w[1]).fold(0.0, f64::max)
    }

    pub fn summary(&self) -> ExtremizerSummary {
        ExtremizerSummary {
            ratio_history: self.ratio_history.clone(),
            final_ratio: self.final_ratio(),
            el_residual: self.el_residual,
            tail_bound: self.tail_bound,
            seed: self.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExtremizerSummary {
    pub ratio_history: Vec<f64>,
    pub final_ratio: f64,
    pub el_residual: f64,
    pub tail_bound: f64,
    pub seed: Option<u64>,
}

/// Stopping rule for [`power_iterate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationControl {
    pub max_iters: usize,
    pub stall_tol: f64,
}

impl Default for IterationControl {
    fn default() -> Self {
        IterationControl { max_iters: 500, stall_tol: 1e-10 }
    }
}

fn check_finite(values: &[Complex64], what: &str) -> Result<()> {
    if values.iter().any(|v| !v.re.is_finite() || !v.im.is_finite()) {
        return Err(LabError::Numerical(format!("non-finite values in {what}")));
    }
    Ok(())
}

fn normalize_p(values: Vec<Complex64>, grid: &Arc<SphereGrid>, p: f64) -> Result<SphereField> {
    let f = SphereField::new(grid.clone(), values)?;
    let n = lebesgue_norm(&f, p)?;
    if !n.is_finite() {
        return Err(LabError::Numerical(format!("L^{p} norm overflowed ({n})")));
    }
    if !(n > 0.0) {
        return Err(LabError::ZeroField);
    }
    Ok(f.scale(Complex64::new(1.0 / n, 0.0)))
}

/// Rotate the phase so that `𝓔f(0) = Σ w f` is real and nonnegative.
fn phase_normalize(f: SphereField) -> SphereField {
    let s: Complex64 = f.grid.weights().iter().zip(&f.values).map(|(w, v)| v * w).sum();
    if s.norm() == 0.0 {
        return f;
    }
    f.scale(s.conj() / s.norm())
}

/// `|z|^{e-2} z` (0 at 0).
fn duality_map(z: Complex64, e: f64) -> Complex64 {
    let n = z.norm();
    if n == 0.0 {
        ZERO
    } else if e == 2.0 {
        z
    } else {
        z * n.powf(e - 2.0)
    }
}

fn spacetime_norm(u: &SpacetimeField, q: f64) -> Result<f64> {
    lebesgue_norm(u, q)
}

/// Constant `σ(S^d)^{-1/p}` with relative complex noise of size `noise`
/// drawn from a seeded generator, normalized in `L^p`.
pub fn default_init(grid: &Arc<SphereGrid>, p: f64, seed: u64, noise: f64) -> Result<SphereField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let c = sphere_area(grid.d()).powf(-1.0 / p);
    let values = (0..grid.len())
        .map(|_| {
            let a: f64 = rng.gen_range(-1.0..=1.0);
            let b: f64 = rng.gen_range(-1.0..=1.0);
            Complex64::new(c * (1.0 + noise * a), c * noise * b)
        })
        .collect();
    normalize_p(values, grid, p)
}

pub fn power_iterate(
    init: &SphereField,
    p: f64,
    q: f64,
    x_box: &Arc<UniformGrid>,
    control: &IterationControl,
) -> Result<ExtremizerReport> {
    if !q.is_finite() {
        return Err(LabError::InvalidParameter("q = ∞ is handled by power_iterate_sup".into()));
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(LabError::InvalidParameter(format!("p = {p} must be finite and above 1")));
    }
    if q <= p {
        return Err(LabError::InvalidParameter(format!("q = {q} must exceed p = {p}")));
    }
    let grid = &init.grid;
    let pc = conjugate(p);
    let mut f = phase_normalize(normalize_p(init.values.clone(), grid, p)?);
    let mut u = extend_sphere(&f, x_box)?;
    let mut un = spacetime_norm(&u, q)?;
    let mut history = vec![un];
    let mut stalled = false;
    for _ in 0..control.max_iters {
        let scale = un.powf(1.0 - q);
        let psi = LatticeField {
            grid: x_box.clone(),
            values: u.values.iter().map(|z| duality_map(*z, q) * scale).collect(),
        };
        let g = restrict_dual(&psi, grid)?;
        check_finite(&g.values, "restricted dual")?;
        let next: Vec<Complex64> = g.values.iter().map(|z| duality_map(*z, pc)).collect();
        f = phase_normalize(normalize_p(next, grid, p)?);
        u = extend_sphere(&f, x_box)?;
        un = spacetime_norm(&u, q)?;
        if !un.is_finite() {
            return Err(LabError::Numerical("extension norm is not finite".into()));
        }
        history.push(un);
        let k = history.len() - 1;
        if k >= STALL_WINDOW && history[k] - history[k - STALL_WINDOW] < control.stall_tol {
            stalled = true;
            break;
        }
    }
    let el = el_residual(&f, p, q, x_box)?;
    let d = grid.d() as f64;
    let tail = truncation_tail(&u, d / 2.0, q).norm_increment(un, q);
    Ok(ExtremizerReport {
        final_field: f,
        ratio_history: history,
        el_residual: el,
        modulation_center: vec![0.0; grid.ambient_dim()],
        tail_bound: tail,
        seed: None,
        stalled,
    })
}

/// [`power_iterate`] from [`default_init`]; the seed is recorded.
pub fn power_iterate_seeded(
    grid: &Arc<SphereGrid>,
    p: f64,
    q: f64,
    x_box: &Arc<UniformGrid>,
    control: &IterationControl,
    seed: u64,
    noise: f64,
) -> Result<ExtremizerReport> {
    let init = default_init(grid, p, seed, noise)?;
    let mut report = power_iterate(&init, p, q, x_box, control)?;
    report.seed = Some(seed);
    Ok(report)
}

/// `q = ∞` variant: the dual vector is the point evaluation at the maximizer
/// of `|𝓔f|` on the box, so one step produces a modulated constant.
pub fn power_iterate_sup(
    init: &SphereField,
    p: f64,
    x_box: &Arc<UniformGrid>,
    max_iters: usize,
) -> Result<ExtremizerReport> {
    if !(p >= 1.0) {
        return Err(LabError::ExponentBelowOne(p));
    }
    let grid = &init.grid;
    let pc = conjugate(p);
    let mut f = normalize_p(init.values.clone(), grid, p)?;
    let mut u = extend_sphere(&f, x_box)?;
    let (mut k, mut best) = argmax_abs(&u.values);
    let mut history = vec![best];
    let nodes = x_box.nodes();
    for _ in 0..max_iters {
        let x = &nodes[k];
        let phase = u.values[k].conj() / best;
        // ⟨f, g⟩ = 𝓔f(x*) · conj(phase) with g(ω) = e^{i x*·ω} conj(phase)
        let g: Vec<Complex64> = grid
            .nodes()
            .map(|w| {
                let t: f64 = w.iter().zip(x).map(|(a, b)| a * b).sum();
                Complex64::from_polar(1.0, t) * phase.conj()
            })
            .collect();
        let next = if pc.is_infinite() {
            // p = 1: any unimodular multiple of g/|g| is a dual maximizer
            g
        } else {
            g.iter().map(|z| duality_map(*z, pc)).collect()
        };
        f = normalize_p(next, grid, p)?;
        u = extend_sphere(&f, x_box)?;
        let (k2, b2) = argmax_abs(&u.values);
        let gain = b2 - best;
        k = k2;
        best = b2;
        history.push(best);
        if gain.abs() <= 1e-14 * best {
            break;
        }
    }
    let center = nodes[k].clone();
    Ok(ExtremizerReport {
        final_field: f,
        ratio_history: history,
        el_residual: f64::NAN,
        modulation_center: center,
        tail_bound: 0.0,
        seed: None,
        stalled: true,
    })
}

fn argmax_abs(values: &[Complex64]) -> (usize, f64) {
    let mut best = (0, -1.0);
    for (i, v) in values.iter().enumerate() {
        let n = v.norm();
        if n > best.1 {
            best = (i, n);
        }
    }
    best
}

/// `max |f| − min |f|` over the grid.
pub fn modulus_spread(f: &SphereField) -> f64 {
    let (lo, hi) = f
        .values
        .iter()
        .map(|v| v.norm())
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), n| (lo.min(n), hi.max(n)));
    hi - lo
}

/// Relative distance of `𝓡(|𝓔f|^{q-2}𝓔f)` from the best multiple of
/// `|f|^{p-2}f`, measured in `L^{p'}`.
pub fn el_residual(f: &SphereField, p: f64, q: f64, x_box: &Arc<UniformGrid>) -> Result<f64> {
    let n = lebesgue_norm(f, p)?;
    if (n - 1.0).abs() > 1e-9 {
        return Err(LabError::NotNormalized(n));
    }
    if !q.is_finite() || !p.is_finite() {
        return Err(LabError::InvalidParameter("finite exponents required".into()));
    }
    let u = extend_sphere(f, x_box)?;
    let psi = LatticeField { grid: x_box.clone(), values: u.values.iter().map(|z| duality_map(*z, q)).collect() };
    let g = restrict_dual(&psi, &f.grid)?;
    let h = SphereField::new(f.grid.clone(), f.values.iter().map(|z| duality_map(*z, p)).collect())?;
    let hh = h.inner(&h);
    let lambda = if hh.norm() > 0.0 { g.inner(&h) / hh } else { ZERO };
    let diff = SphereField::new(
        f.grid.clone(),
        g.values.iter().zip(&h.values).map(|(a, b)| a - lambda * b).collect(),
    )?;
    let pc = conjugate(p);
    let gn = lebesgue_norm(&g, pc)?;
    if gn == 0.0 {
        return Err(LabError::ZeroField);
    }
    Ok(lebesgue_norm(&diff, pc)? / gn)
}

/// `(σ(S^d)^{1/p'}, σ(S^d)^{-1/p})`: the exact `L^p → L^∞` norm and its
/// normalized constant extremizer sampled on `grid`.
pub fn pinfty_norm(p: f64, grid: &Arc<SphereGrid>) -> Result<(f64, SphereField)> {
    if !(p >= 1.0) {
        return Err(LabError::ExponentBelowOne(p));
    }
    let sigma = sphere_area(grid.d());
    let inv_pc = if p.is_infinite() { 1.0 } else { 1.0 - 1.0 / p };
    let c = if p.is_infinite() { 1.0 } else { sigma.powf(-1.0 / p) };
    Ok((sigma.powf(inv_pc), SphereField::constant(grid.clone(), Complex64::new(c, 0.0))))
}

/// `‖𝓔f‖_q / ‖f‖_p` on the box (`q = ∞` allowed).
pub fn extension_ratio(f: &SphereField, p: f64, q: f64, x_box: &Arc<UniformGrid>) -> Result<f64> {
    let u = extend_sphere(f, x_box)?;
    let fn_ = lebesgue_norm(f, p)?;
    if fn_ == 0.0 {
        return Err(LabError::ZeroField);
    }
    Ok(lebesgue_norm(&u, q)? / fn_)
}

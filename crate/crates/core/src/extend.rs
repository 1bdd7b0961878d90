//! Extension operators for the sphere and the paraboloid, the truncated
//! adjoint restriction, modulation, and discrete Lebesgue norms.

use std::borrow::Cow;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{LabError, Result};
use crate::exponent::Exponent;
use crate::grids::{LatticeField, PlaneField, SpacetimeField, SphereField, SphereGrid, UniformGrid};
use crate::kernel::{self, AxisTable};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Anything carrying quadrature weights and complex samples.
pub trait Sampled {
    fn weights(&self) -> Cow<'_, [f64]>;
    fn values(&self) -> &[Complex64];
}

impl Sampled for SphereField {
    fn weights(&self) -> Cow<'_, [f64]> {
        Cow::Borrowed(self.grid.weights())
    }
    fn values(&self) -> &[Complex64] {
        &self.values
    }
}

impl Sampled for LatticeField {
    fn weights(&self) -> Cow<'_, [f64]> {
        Cow::Owned(self.grid.weights())
    }
    fn values(&self) -> &[Complex64] {
        &self.values
    }
}

/// `|z|^p`, with the common even exponents done without `powf`.
#[inline]
pub(crate) fn abs_pow(z: Complex64, p: f64) -> f64 {
    let n2 = z.norm_sqr();
    if p == 2.0 {
        n2
    } else if p == 4.0 {
        n2 * n2
    } else if p == 6.0 {
        n2 * n2 * n2
    } else if n2 == 0.0 {
        0.0
    } else {
        n2.powf(0.5 * p)
    }
}

/// `Σ w |v|^p` (finite `p`).
pub(crate) fn weighted_power_sum(weights: &[f64], values: &[Complex64], p: f64) -> f64 {
    weights.iter().zip(values).map(|(w, v)| w * abs_pow(*v, p)).sum()
}

pub(crate) fn norm_of(weights: &[f64], values: &[Complex64], e: f64) -> f64 {
    if e.is_infinite() {
        values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    } else {
        weighted_power_sum(weights, values, e).powf(1.0 / e)
    }
}

/// `(Σ w |v|^e)^{1/e}`, or `max |v|` for `e = ∞`.
pub fn lebesgue_norm<F: Sampled + ?Sized>(field: &F, e: f64) -> Result<f64> {
    let e = Exponent::new(e)?;
    Ok(norm_of(&field.weights(), field.values(), e.value()))
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(LabError::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Per-axis frequencies and quadrature coefficients of the nonzero samples
/// of a sphere field.
fn sphere_terms(f: &SphereField) -> (Vec<Vec<f64>>, Vec<Complex64>) {
    let m = f.grid.ambient_dim();
    let mut freqs = vec![Vec::new(); m];
    let mut coeffs = Vec::new();
    for ((w, v), wt) in f.grid.nodes().zip(&f.values).zip(f.grid.weights()) {
        if *v == ZERO {
            continue;
        }
        for a in 0..m {
            freqs[a].push(w[a]);
        }
        coeffs.push(v * *wt);
    }
    (freqs, coeffs)
}

/// Frequencies of the paraboloid lift `ξ ↦ (|ξ|²/2, ξ)` for the nonzero
/// samples of a plane field.
fn parab_terms(phi: &PlaneField) -> (Vec<Vec<f64>>, Vec<Complex64>) {
    let d = phi.grid.dim();
    let mut freqs = vec![Vec::new(); d + 1];
    let mut coeffs = Vec::new();
    let weights = phi.grid.weights();
    for ((xi, v), wt) in phi.grid.nodes().iter().zip(&phi.values).zip(&weights) {
        if *v == ZERO {
            continue;
        }
        freqs[0].push(0.5 * xi.iter().map(|x| x * x).sum::<f64>());
        for a in 0..d {
            freqs[a + 1].push(xi[a]);
        }
        coeffs.push(v * *wt);
    }
    (freqs, coeffs)
}

pub(crate) fn lattice_sum(
    axis_coords: &[Vec<f64>],
    freqs: &[Vec<f64>],
    coeffs: &[Complex64],
) -> Vec<Complex64> {
    let total: usize = axis_coords.iter().map(Vec::len).product();
    if coeffs.is_empty() {
        return vec![ZERO; total];
    }
    let tables: Vec<AxisTable> =
        axis_coords.iter().zip(freqs).map(|(x, f)| AxisTable::new(x, f)).collect();
    kernel::forward(&tables, coeffs)
}

fn lattice_axes(x: &UniformGrid) -> Vec<Vec<f64>> {
    (0..x.dim()).map(|a| x.axis_coords(a)).collect()
}

/// `𝓔f(x) = Σ_ω w(ω) e^{i x·ω} f(ω)` at every node of `x_grid`.
pub fn extend_sphere(f: &SphereField, x_grid: &Arc<UniformGrid>) -> Result<SpacetimeField> {
    check_dim(f.grid.ambient_dim(), x_grid.dim())?;
    let (freqs, coeffs) = sphere_terms(f);
    let values = lattice_sum(&lattice_axes(x_grid), &freqs, &coeffs);
    LatticeField::new(x_grid.clone(), values)
}

/// `𝓔f` at arbitrary points of `R^{d+1}` by direct summation.
pub fn extend_sphere_at(f: &SphereField, points: &[Vec<f64>]) -> Result<Vec<Complex64>> {
    let (freqs, coeffs) = sphere_terms(f);
    points
        .iter()
        .map(|x| {
            check_dim(f.grid.ambient_dim(), x.len())?;
            Ok(kernel::pointwise(&freqs, &coeffs, x))
        })
        .collect()
}

/// `𝓔_P φ(x) = Σ_ξ w(ξ) e^{i(x_1 |ξ|²/2 + x'·ξ)} φ(ξ)` on a lattice in `R^{d+1}`.
pub fn extend_parab(phi: &PlaneField, x_grid: &Arc<UniformGrid>) -> Result<SpacetimeField> {
    check_dim(phi.grid.dim() + 1, x_grid.dim())?;
    let (freqs, coeffs) = parab_terms(phi);
    let values = lattice_sum(&lattice_axes(x_grid), &freqs, &coeffs);
    LatticeField::new(x_grid.clone(), values)
}

/// `𝓔_P φ` on an arbitrary tensor product of coordinate lists.
pub(crate) fn extend_parab_on_axes(phi: &PlaneField, axes: &[Vec<f64>]) -> Result<Vec<Complex64>> {
    check_dim(phi.grid.dim() + 1, axes.len())?;
    let (freqs, coeffs) = parab_terms(phi);
    Ok(lattice_sum(axes, &freqs, &coeffs))
}

/// `𝓔_P φ` at arbitrary points by direct summation.
pub fn extend_parab_at(phi: &PlaneField, points: &[Vec<f64>]) -> Result<Vec<Complex64>> {
    let (freqs, coeffs) = parab_terms(phi);
    points
        .iter()
        .map(|x| {
            check_dim(phi.grid.dim() + 1, x.len())?;
            Ok(kernel::pointwise(&freqs, &coeffs, x))
        })
        .collect()
}

/// Closed form of `𝓔_P` applied to `ξ ↦ e^{-a|ξ|²}`:
/// `(π/b)^{d/2} e^{-|x'|²/(4b)}` with `b = a - i x_1/2`, principal branch.
pub fn gaussian_parab_oracle(a: Complex64, x: &[f64]) -> Result<Complex64> {
    if !(a.re > 0.0) {
        return Err(LabError::InvalidParameter(format!("Re a = {} must be positive", a.re)));
    }
    if x.len() < 2 {
        return Err(LabError::InvalidParameter("point must lie in R^{d+1} with d >= 1".into()));
    }
    let d = (x.len() - 1) as f64;
    let b = a - Complex64::new(0.0, 0.5 * x[0]);
    let r2: f64 = x[1..].iter().map(|v| v * v).sum();
    let base = Complex64::new(std::f64::consts::PI, 0.0) / b;
    // Re b > 0 keeps both b and π/b off the negative real axis.
    Ok(base.powf(0.5 * d) * (-r2 / (4.0 * b)).exp())
}

/// `𝓡u(ω) = Σ_x w(x) e^{-i x·ω} u(x)`: the exact discrete adjoint of
/// [`extend_sphere`] for the weighted inner products on both grids.
pub fn restrict_dual(u: &SpacetimeField, grid: &Arc<SphereGrid>) -> Result<SphereField> {
    check_dim(grid.ambient_dim(), u.grid.dim())?;
    let m = grid.ambient_dim();
    let tables: Vec<AxisTable> =
        (0..m).map(|a| AxisTable::new(&u.grid.axis_coords(a), &grid.component(a))).collect();
    let weighted: Vec<Complex64> =
        u.values.iter().zip(u.grid.weights()).map(|(v, w)| v * w).collect();
    let values = kernel::adjoint(&tables, grid.len(), &weighted);
    SphereField::new(grid.clone(), values)
}

/// `ω ↦ e^{i x0·ω} f(ω)`.
pub fn modulate(f: &SphereField, x0: &[f64]) -> Result<SphereField> {
    check_dim(f.grid.ambient_dim(), x0.len())?;
    let values = f
        .grid
        .nodes()
        .zip(&f.values)
        .map(|(w, v)| {
            let phase: f64 = w.iter().zip(x0).map(|(a, b)| a * b).sum();
            v * Complex64::from_polar(1.0, phase)
        })
        .collect();
    SphereField::new(f.grid.clone(), values)
}

/// Estimate of the `L^q` mass of a lattice field outside its box, assuming
/// `|u(x)| ≤ C |x|^{-decay}` beyond the box.
///
/// `C` is the largest value of `|u(x)| |x|^{decay}` over the outer shell of
/// the box (nodes with `max_a |x_a|/R_a ≥ 1/2`); the tail is then bounded by
/// the integral of `C^q |x|^{-decay q}` outside the inscribed ball.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct TailEstimate {
    pub envelope: f64,
    /// Estimated `∫_{outside} |u|^q`.
    pub tail_q: f64,
}

impl TailEstimate {
    /// Upper estimate of how much `norm` (the in-box `L^q` norm) would grow if
    /// the tail were included.
    pub fn norm_increment(&self, norm: f64, q: f64) -> f64 {
        if self.tail_q.is_infinite() {
            return f64::INFINITY;
        }
        (norm.powf(q) + self.tail_q).powf(1.0 / q) - norm
    }
}

pub fn truncation_tail(u: &LatticeField, decay: f64, q: f64) -> TailEstimate {
    let grid = &u.grid;
    let n = grid.dim() as f64;
    let r = grid.halfwidths();
    let mut envelope = 0.0f64;
    for (x, v) in grid.nodes().iter().zip(&u.values) {
        let shell = x.iter().zip(r).map(|(x, r)| x.abs() / r).fold(0.0, f64::max);
        if shell >= 0.5 {
            let rho = x.iter().map(|x| x * x).sum::<f64>().sqrt();
            envelope = envelope.max(v.norm() * rho.powf(decay));
        }
    }
    let rate = decay * q - n;
    let tail_q = if rate <= 0.0 {
        f64::INFINITY
    } else {
        let rmin = r.iter().copied().fold(f64::INFINITY, f64::min);
        let area = match grid.dim() {
            1 => 2.0,
            2 => 2.0 * std::f64::consts::PI,
            3 => 4.0 * std::f64::consts::PI,
            k => panic!("truncation_tail: unsupported lattice dimension {k}"),
        };
        envelope.powf(q) * area * rmin.powf(-rate) / rate
    };
    TailEstimate { envelope, tail_q }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::{make_sphere_grid, make_uniform_grid};
    use crate::special::bessel_j0;
    use std::f64::consts::PI;

    fn one(g: &Arc<SphereGrid>) -> SphereField {
        SphereField::constant(g.clone(), Complex64::new(1.0, 0.0))
    }

    #[test]
    fn constant_on_circle_at_origin() {
        let g = Arc::new(make_sphere_grid(1, 256).unwrap());
        let v = extend_sphere_at(&one(&g), &[vec![0.0, 0.0]]).unwrap()[0];
        assert!((v - Complex64::new(2.0 * PI, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn constant_on_circle_is_bessel() {
        let g = Arc::new(make_sphere_grid(1, 512).unwrap());
        let pts: Vec<Vec<f64>> = (0..=40).map(|k| vec![0.5 * k as f64, 0.0]).collect();
        let vals = extend_sphere_at(&one(&g), &pts).unwrap();
        for (x, v) in pts.iter().zip(vals) {
            assert!((v.re - 2.0 * PI * bessel_j0(x[0])).abs() < 1e-8);
            assert!(v.im.abs() < 1e-8);
        }
    }

    #[test]
    fn extension_is_linear() {
        let g = Arc::new(make_sphere_grid(1, 64).unwrap());
        let x = Arc::new(make_uniform_grid(2, &[3.0, 3.0], &[5, 5]).unwrap());
        let a = extend_sphere(&one(&g), &x).unwrap();
        let b = extend_sphere(&SphereField::constant(g.clone(), Complex64::new(2.0, 0.0)), &x).unwrap();
        for (u, v) in a.values.iter().zip(&b.values) {
            assert_eq!(u * 2.0, *v);
        }
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let g = Arc::new(make_sphere_grid(1, 16).unwrap());
        let x = Arc::new(make_uniform_grid(3, &[1.0; 3], &[3; 3]).unwrap());
        assert!(matches!(extend_sphere(&one(&g), &x), Err(LabError::DimensionMismatch { .. })));
        let u = LatticeField::zeros(x);
        assert!(restrict_dual(&u, &g).is_err());
    }

    #[test]
    fn gaussian_parab_at_origin_and_oracle_values() {
        let plane = Arc::new(make_uniform_grid(1, &[6.0], &[241]).unwrap());
        let phi = LatticeField::from_fn(plane, |xi| Complex64::new((-xi[0] * xi[0]).exp(), 0.0));
        let v = extend_parab_at(&phi, &[vec![0.0, 0.0]]).unwrap()[0];
        assert!((v - Complex64::new(PI.sqrt(), 0.0)).norm() < 1e-10);
        let a = Complex64::new(1.0, 0.0);
        let o = gaussian_parab_oracle(a, &[0.0, 0.0]).unwrap();
        assert!((o - Complex64::new(PI.sqrt(), 0.0)).norm() < 1e-15);
        let o = gaussian_parab_oracle(a, &[2.0, 0.0]).unwrap();
        let expect = (Complex64::new(PI, 0.0) / Complex64::new(1.0, -1.0)).sqrt();
        assert!((o - expect).norm() < 1e-15);
        let o = gaussian_parab_oracle(a, &[0.0, 3.0]).unwrap();
        assert!((o - Complex64::new(PI.sqrt() * (-2.25f64).exp(), 0.0)).norm() < 1e-15);
        assert!(gaussian_parab_oracle(Complex64::new(0.0, 1.0), &[0.0, 0.0]).is_err());
    }

    #[test]
    fn zero_profile_extends_to_zero() {
        let plane = Arc::new(make_uniform_grid(1, &[2.0], &[9]).unwrap());
        let x = Arc::new(make_uniform_grid(2, &[2.0, 2.0], &[5, 5]).unwrap());
        let u = extend_parab(&LatticeField::zeros(plane), &x).unwrap();
        assert!(u.values.iter().all(|v| *v == ZERO));
    }

    #[test]
    fn delta_restricts_to_one() {
        let g = Arc::new(make_sphere_grid(2, 16).unwrap());
        let x = Arc::new(make_uniform_grid(3, &[2.0; 3], &[5; 3]).unwrap());
        let mut u = LatticeField::zeros(x.clone());
        let c = x.center_index();
        u.values[c] = Complex64::new(1.0 / x.weights()[c], 0.0);
        let r = restrict_dual(&u, &g).unwrap();
        for v in &r.values {
            assert!((v - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let zero = restrict_dual(&LatticeField::zeros(x), &g).unwrap();
        assert!(zero.values.iter().all(|v| *v == ZERO));
    }

    #[test]
    fn modulation_basics() {
        let g = Arc::new(make_sphere_grid(1, 32).unwrap());
        let f = SphereField::from_fn(g.clone(), |w| Complex64::new(w[0], 1.0 + w[1]));
        assert_eq!(modulate(&f, &[0.0, 0.0]).unwrap(), f);
        let m = modulate(&f, &[1.3, -0.4]).unwrap();
        for (a, b) in m.values.iter().zip(&f.values) {
            assert!((a.norm() - b.norm()).abs() < 1e-15);
        }
    }

    #[test]
    fn norms_of_constants() {
        let g = Arc::new(make_sphere_grid(1, 128).unwrap());
        let f = one(&g);
        assert!((lebesgue_norm(&f, 2.0).unwrap() - (2.0 * PI).sqrt()).abs() < 1e-12);
        assert!((lebesgue_norm(&f, 1.0).unwrap() - 2.0 * PI).abs() < 1e-12);
        let c = SphereField::constant(g, Complex64::new(3.0, -4.0));
        assert_eq!(lebesgue_norm(&c, f64::INFINITY).unwrap(), 5.0);
        assert!(lebesgue_norm(&c, 0.5).is_err());
    }

    #[test]
    fn abs_pow_shortcuts_agree_with_powf() {
        let z = Complex64::new(0.3, -1.7);
        for p in [2.0, 4.0, 6.0, 3.3] {
            assert!((abs_pow(z, p) - z.norm().powf(p)).abs() < 1e-12 * z.norm().powf(p));
        }
    }
}

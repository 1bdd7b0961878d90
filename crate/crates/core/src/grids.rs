//! Quadrature grids on the sphere and on boxes, sampled fields, and the
//! dyadic antipodal cap family.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{LabError, Result};
use crate::special::gauss_legendre;

/// Surface measure of the unit sphere `S^d`.
pub fn sphere_area(d: usize) -> f64 {
    match d {
        1 => 2.0 * PI,
        2 => 4.0 * PI,
        _ => panic!("sphere_area: unsupported d = {d}"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SphereRule {
    /// Equally spaced angles on the circle.
    Trapezoid,
    /// Gauss–Legendre in the polar angle (about the first axis) times a
    /// uniform azimuth.
    GaussLegendreAzimuth,
}

/// Quadrature nodes on `S^d ⊂ R^{d+1}` with positive surface weights.
///
/// Nodes are stored flat with stride `d + 1`. Every grid built by
/// [`make_sphere_grid`] is antipodally closed: `antipode(i)` is the index of
/// `-node(i)`, and the coordinates are exact negations.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereGrid {
    d: usize,
    rule: SphereRule,
    resolution: usize,
    coords: Vec<f64>,
    weights: Vec<f64>,
    antipodes: Vec<usize>,
}

pub fn make_sphere_grid(d: usize, resolution: usize) -> Result<SphereGrid> {
    if d != 1 && d != 2 {
        return Err(LabError::UnsupportedDimension(d));
    }
    if resolution < 8 || resolution % 2 == 1 {
        return Err(LabError::BadResolution(resolution));
    }
    Ok(if d == 1 { circle(resolution) } else { sphere2(resolution) })
}

fn circle(n: usize) -> SphereGrid {
    let half = n / 2;
    let mut coords = vec![0.0; 2 * n];
    for k in 0..half {
        let theta = 2.0 * PI * k as f64 / n as f64;
        let (s, c) = theta.sin_cos();
        coords[2 * k] = c;
        coords[2 * k + 1] = s;
        coords[2 * (k + half)] = -c;
        coords[2 * (k + half) + 1] = -s;
    }
    let antipodes = (0..n).map(|k| (k + half) % n).collect();
    SphereGrid {
        d: 1,
        rule: SphereRule::Trapezoid,
        resolution: n,
        coords,
        weights: vec![2.0 * PI / n as f64; n],
        antipodes,
    }
}

fn sphere2(resolution: usize) -> SphereGrid {
    let n_polar = resolution / 2;
    let n_az = resolution;
    let half_az = n_az / 2;
    let (x, w) = gauss_legendre(n_polar);
    let mut az = vec![(0.0, 0.0); n_az];
    for j in 0..half_az {
        let phi = 2.0 * PI * j as f64 / n_az as f64;
        let (s, c) = phi.sin_cos();
        az[j] = (c, s);
        az[j + half_az] = (-c, -s);
    }
    let n = n_polar * n_az;
    let mut coords = Vec::with_capacity(3 * n);
    let mut weights = Vec::with_capacity(n);
    let mut antipodes = Vec::with_capacity(n);
    let dphi = 2.0 * PI / n_az as f64;
    for i in 0..n_polar {
        let ct = x[i];
        let st = (1.0 - ct * ct).sqrt();
        for (j, &(c, s)) in az.iter().enumerate() {
            coords.extend_from_slice(&[ct, st * c, st * s]);
            weights.push(w[i] * dphi);
            antipodes.push((n_polar - 1 - i) * n_az + (j + half_az) % n_az);
        }
    }
    SphereGrid {
        d: 2,
        rule: SphereRule::GaussLegendreAzimuth,
        resolution,
        coords,
        weights,
        antipodes,
    }
}

impl SphereGrid {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn ambient_dim(&self) -> usize {
        self.d + 1
    }

    pub fn rule(&self) -> SphereRule {
        self.rule
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn node(&self, i: usize) -> &[f64] {
        let m = self.d + 1;
        &self.coords[i * m..(i + 1) * m]
    }

    pub fn nodes(&self) -> impl Iterator<Item = &[f64]> {
        self.coords.chunks_exact(self.d + 1)
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn antipode(&self, i: usize) -> usize {
        self.antipodes[i]
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    /// Coordinate `axis` of every node.
    pub fn component(&self, axis: usize) -> Vec<f64> {
        self.nodes().map(|w| w[axis]).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct SphereGridDoc {
    kind: String,
    d: usize,
    resolution: usize,
    nodes: Vec<Vec<f64>>,
    weights: Vec<f64>,
}

impl Serialize for SphereGrid {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let kind = match self.rule {
            SphereRule::Trapezoid => "sphere-trapezoid",
            SphereRule::GaussLegendreAzimuth => "sphere-gauss-legendre",
        };
        SphereGridDoc {
            kind: kind.into(),
            d: self.d,
            resolution: self.resolution,
            nodes: self.nodes().map(|w| w.to_vec()).collect(),
            weights: self.weights.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SphereGrid {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let doc = SphereGridDoc::deserialize(de)?;
        let rule = match doc.kind.as_str() {
            "sphere-trapezoid" => SphereRule::Trapezoid,
            "sphere-gauss-legendre" => SphereRule::GaussLegendreAzimuth,
            other => return Err(D::Error::custom(format!("unknown sphere grid kind {other:?}"))),
        };
        // Rebuild so the antipode table is exact, then check the document agrees.
        let grid = make_sphere_grid(doc.d, doc.resolution).map_err(D::Error::custom)?;
        if grid.rule != rule || doc.weights.len() != grid.len() || doc.nodes.len() != grid.len() {
            return Err(D::Error::custom("sphere grid document does not match its rule"));
        }
        let max_dev = doc
            .nodes
            .iter()
            .zip(grid.nodes())
            .flat_map(|(a, b)| a.iter().zip(b).map(|(x, y)| (x - y).abs()))
            .chain(doc.weights.iter().zip(&grid.weights).map(|(x, y)| (x - y).abs()))
            .fold(0.0, f64::max);
        if max_dev > 1e-12 {
            return Err(D::Error::custom("sphere grid nodes or weights differ from the rule"));
        }
        Ok(grid)
    }
}

/// Uniform tensor lattice on `∏[-R_i, R_i]` with product trapezoid weights.
/// Flat node index is row-major (last axis fastest).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UniformGridDoc", into = "UniformGridDoc")]
pub struct UniformGrid {
    halfwidths: Vec<f64>,
    counts: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct UniformGridDoc {
    kind: String,
    dim: usize,
    halfwidths: Vec<f64>,
    counts: Vec<usize>,
}

impl TryFrom<UniformGridDoc> for UniformGrid {
    type Error = LabError;
    fn try_from(doc: UniformGridDoc) -> Result<Self> {
        if doc.kind != "uniform" {
            return Err(LabError::InvalidParameter(format!("grid kind {:?}", doc.kind)));
        }
        make_uniform_grid(doc.dim, &doc.halfwidths, &doc.counts)
    }
}

impl From<UniformGrid> for UniformGridDoc {
    fn from(g: UniformGrid) -> Self {
        UniformGridDoc { kind: "uniform".into(), dim: g.dim(), halfwidths: g.halfwidths, counts: g.counts }
    }
}

pub fn make_uniform_grid(dim: usize, halfwidths: &[f64], counts: &[usize]) -> Result<UniformGrid> {
    if dim == 0 {
        return Err(LabError::InvalidParameter("lattice dimension must be positive".into()));
    }
    if halfwidths.len() != dim || counts.len() != dim {
        return Err(LabError::LengthMismatch(format!(
            "dim = {dim}, {} halfwidths, {} counts",
            halfwidths.len(),
            counts.len()
        )));
    }
    if let Some(r) = halfwidths.iter().find(|r| !(**r > 0.0) || !r.is_finite()) {
        return Err(LabError::InvalidParameter(format!("halfwidth {r} must be positive")));
    }
    if let Some(n) = counts.iter().find(|n| **n < 2) {
        return Err(LabError::InvalidParameter(format!("per-axis count {n} must be at least 2")));
    }
    Ok(UniformGrid { halfwidths: halfwidths.to_vec(), counts: counts.to_vec() })
}

impl UniformGrid {
    /// Cube `[-R, R]^dim` with `count` nodes per axis.
    pub fn cube(dim: usize, halfwidth: f64, count: usize) -> Result<Self> {
        make_uniform_grid(dim, &vec![halfwidth; dim], &vec![count; dim])
    }

    pub fn dim(&self) -> usize {
        self.counts.len()
    }

    pub fn halfwidths(&self) -> &[f64] {
        &self.halfwidths
    }

    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self, axis: usize) -> f64 {
        2.0 * self.halfwidths[axis] / (self.counts[axis] - 1) as f64
    }

    /// Lattice coordinates along one axis; symmetric about 0 exactly.
    pub fn axis_coords(&self, axis: usize) -> Vec<f64> {
        let n = self.counts[axis];
        let r = self.halfwidths[axis];
        let m = (n - 1) as f64;
        (0..n).map(|k| r * (2.0 * k as f64 - m) / m).collect()
    }

    pub fn axis_weights(&self, axis: usize) -> Vec<f64> {
        let n = self.counts[axis];
        let h = self.spacing(axis);
        (0..n).map(|k| if k == 0 || k == n - 1 { 0.5 * h } else { h }).collect()
    }

    /// Product trapezoid weights in flat node order.
    pub fn weights(&self) -> Vec<f64> {
        let per_axis: Vec<Vec<f64>> = (0..self.dim()).map(|a| self.axis_weights(a)).collect();
        tensor_fold(&per_axis, 1.0, |acc, w| acc * w)
    }

    /// All nodes in flat order.
    pub fn nodes(&self) -> Vec<Vec<f64>> {
        let per_axis: Vec<Vec<f64>> = (0..self.dim()).map(|a| self.axis_coords(a)).collect();
        let mut out = Vec::with_capacity(self.len());
        let mut idx = vec![0usize; self.dim()];
        for _ in 0..self.len() {
            out.push(idx.iter().enumerate().map(|(a, &i)| per_axis[a][i]).collect());
            for a in (0..self.dim()).rev() {
                idx[a] += 1;
                if idx[a] < self.counts[a] {
                    break;
                }
                idx[a] = 0;
            }
        }
        out
    }

    pub fn volume(&self) -> f64 {
        self.halfwidths.iter().map(|r| 2.0 * r).product()
    }

    /// Flat index of the node nearest the origin along every axis (the
    /// origin itself when every count is odd).
    pub fn center_index(&self) -> usize {
        self.counts.iter().fold(0, |acc, &n| acc * n + n / 2)
    }

    /// Flat index of the mirror image under `x_axis -> -x_axis`.
    pub fn reflect_index(&self, flat: usize, axis: usize) -> usize {
        let stride: usize = self.counts[axis + 1..].iter().product();
        let n = self.counts[axis];
        let i = (flat / stride) % n;
        flat - i * stride + (n - 1 - i) * stride
    }
}

fn tensor_fold(per_axis: &[Vec<f64>], init: f64, f: impl Fn(f64, f64) -> f64) -> Vec<f64> {
    let mut out = vec![init];
    for axis in per_axis {
        let mut next = Vec::with_capacity(out.len() * axis.len());
        for &acc in &out {
            for &v in axis {
                next.push(f(acc, v));
            }
        }
        out = next;
    }
    out
}

/// Complex samples on a sphere grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SphereField {
    pub grid: Arc<SphereGrid>,
    pub values: Vec<Complex64>,
}

impl SphereField {
    pub fn new(grid: Arc<SphereGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(LabError::LengthMismatch(format!(
                "{} values for {} sphere nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(SphereField { grid, values })
    }

    pub fn from_fn(grid: Arc<SphereGrid>, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let values = grid.nodes().map(f).collect();
        SphereField { grid, values }
    }

    pub fn constant(grid: Arc<SphereGrid>, c: Complex64) -> Self {
        let values = vec![c; grid.len()];
        SphereField { grid, values }
    }

    pub fn zeros(grid: Arc<SphereGrid>) -> Self {
        Self::constant(grid, Complex64::new(0.0, 0.0))
    }

    pub fn scale(&self, c: Complex64) -> Self {
        SphereField { grid: self.grid.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    /// `⟨self, other⟩_σ = Σ w f conj(g)`.
    pub fn inner(&self, other: &SphereField) -> Complex64 {
        weighted_inner(self.grid.weights(), &self.values, &other.values)
    }
}

/// Complex samples on a uniform lattice: a `PlaneField` when the lattice
/// lives in `R^d`, a `SpacetimeField` when it lives in `R^{d+1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LatticeField {
    pub grid: Arc<UniformGrid>,
    pub values: Vec<Complex64>,
}

pub type PlaneField = LatticeField;
pub type SpacetimeField = LatticeField;

impl LatticeField {
    pub fn new(grid: Arc<UniformGrid>, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(LabError::LengthMismatch(format!(
                "{} values for {} lattice nodes",
                values.len(),
                grid.len()
            )));
        }
        Ok(LatticeField { grid, values })
    }

    pub fn from_fn(grid: Arc<UniformGrid>, f: impl Fn(&[f64]) -> Complex64) -> Self {
        let values = grid.nodes().iter().map(|x| f(x)).collect();
        LatticeField { grid, values }
    }

    pub fn zeros(grid: Arc<UniformGrid>) -> Self {
        let values = vec![Complex64::new(0.0, 0.0); grid.len()];
        LatticeField { grid, values }
    }

    pub fn inner(&self, other: &LatticeField) -> Complex64 {
        weighted_inner(&self.grid.weights(), &self.values, &other.values)
    }
}

fn weighted_inner(w: &[f64], a: &[Complex64], b: &[Complex64]) -> Complex64 {
    w.iter().zip(a).zip(b).map(|((w, a), b)| a * b.conj() * *w).sum()
}

#[derive(Serialize, Deserialize)]
struct FieldDoc<G> {
    grid: G,
    values_re: Vec<f64>,
    values_im: Vec<f64>,
}

impl Serialize for SphereField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldDoc {
            grid: &*self.grid,
            values_re: self.values.iter().map(|v| v.re).collect(),
            values_im: self.values.iter().map(|v| v.im).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SphereField {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let doc = FieldDoc::<SphereGrid>::deserialize(de)?;
        let values = join_complex(doc.values_re, doc.values_im).map_err(D::Error::custom)?;
        SphereField::new(Arc::new(doc.grid), values).map_err(D::Error::custom)
    }
}

impl Serialize for LatticeField {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FieldDoc {
            grid: &*self.grid,
            values_re: self.values.iter().map(|v| v.re).collect(),
            values_im: self.values.iter().map(|v| v.im).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LatticeField {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error;
        let doc = FieldDoc::<UniformGrid>::deserialize(de)?;
        let values = join_complex(doc.values_re, doc.values_im).map_err(D::Error::custom)?;
        LatticeField::new(Arc::new(doc.grid), values).map_err(D::Error::custom)
    }
}

fn join_complex(re: Vec<f64>, im: Vec<f64>) -> Result<Vec<Complex64>> {
    if re.len() != im.len() {
        return Err(LabError::LengthMismatch("values_re and values_im differ in length".into()));
    }
    Ok(re.into_iter().zip(im).map(|(a, b)| Complex64::new(a, b)).collect())
}

/// Threshold defining the slab `W_j = {|ω_j| ≥ 1/(2√(d+1))}`.
pub fn slab_threshold(d: usize) -> f64 {
    1.0 / (2.0 * ((d + 1) as f64).sqrt())
}

/// Intersection of `S^d` with an antipodal pair of axis-parallel dyadic
/// cubes `Q ∪ (-Q)` of sidelength `2^-level`.
///
/// `corner` is the integer lower corner of the representative cube `Q` (the
/// one on the side `ω_axis > 0`), in units of the sidelength; `Q` is the
/// half-open box `∏ [m_i s, (m_i + 1) s)`. `axis` is a 0-based coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cap {
    pub axis: usize,
    pub level: u32,
    pub cell: usize,
    pub corner: Vec<i64>,
}

impl Cap {
    pub fn sidelength(&self) -> f64 {
        (-(self.level as f64)).exp2()
    }

    fn in_cube(&self, w: &[f64]) -> bool {
        let s = self.sidelength();
        w.iter().zip(&self.corner).all(|(x, &m)| (x / s).floor() as i64 == m)
    }

    pub fn contains(&self, w: &[f64]) -> bool {
        if self.in_cube(w) {
            return true;
        }
        let neg: Vec<f64> = w.iter().map(|x| -x).collect();
        self.in_cube(&neg)
    }

    /// Continuum measure used in chip thresholds: `2 · s^d` for sidelength `s`.
    pub fn measure(&self) -> f64 {
        let d = self.corner.len() - 1;
        2.0 * self.sidelength().powi(d as i32)
    }

    /// Centre of the representative cube.
    pub fn center(&self) -> Vec<f64> {
        let s = self.sidelength();
        self.corner.iter().map(|&m| (m as f64 + 0.5) * s).collect()
    }

    /// Euclidean distance between the two caps viewed as unions of their
    /// (closed) cubes.
    pub fn distance(&self, other: &Cap) -> f64 {
        let a = [self.cube_bounds(false), self.cube_bounds(true)];
        let b = [other.cube_bounds(false), other.cube_bounds(true)];
        let mut best = f64::INFINITY;
        for qa in &a {
            for qb in &b {
                let d2: f64 = qa
                    .iter()
                    .zip(qb)
                    .map(|(&(lo1, hi1), &(lo2, hi2))| {
                        let gap = (lo2 - hi1).max(lo1 - hi2).max(0.0);
                        gap * gap
                    })
                    .sum();
                best = best.min(d2.sqrt());
            }
        }
        best
    }

    fn cube_bounds(&self, negated: bool) -> Vec<(f64, f64)> {
        let s = self.sidelength();
        self.corner
            .iter()
            .map(|&m| {
                let (lo, hi) = (m as f64 * s, (m + 1) as f64 * s);
                if negated {
                    (-hi, -lo)
                } else {
                    (lo, hi)
                }
            })
            .collect()
    }
}

/// `τ ∼ τ'`: same axis and level `k`, and `2^{-k+C} ≤ dist(τ, τ') ≤ 2^{-k+2C}`.
pub fn caps_related(a: &Cap, b: &Cap, separation: f64) -> bool {
    if a.axis != b.axis || a.level != b.level {
        return false;
    }
    let k = a.level as f64;
    let dist = a.distance(b);
    (separation - k).exp2() <= dist && dist <= (2.0 * separation - k).exp2()
}

/// Enumerate the dyadic antipodal caps covering the slabs `W_j`, for every
/// axis and every level in `min_level..=max_level`, ordered by
/// `(axis, level, cell)`.
pub fn enumerate_caps(d: usize, min_level: u32, max_level: u32) -> Result<Vec<Cap>> {
    if d != 1 && d != 2 {
        return Err(LabError::UnsupportedDimension(d));
    }
    if min_level < 2 {
        return Err(LabError::CapLevelTooCoarse(min_level));
    }
    let mut caps = Vec::new();
    if min_level > max_level {
        return Ok(caps);
    }
    let thr = slab_threshold(d);
    for axis in 0..=d {
        for level in min_level..=max_level {
            let s = (-(level as f64)).exp2();
            let mut corners = Vec::new();
            let mut prefix = Vec::with_capacity(d + 1);
            collect_cells(d + 1, axis, s, thr, &mut prefix, 0.0, 0.0, &mut corners);
            for (cell, corner) in corners.into_iter().enumerate() {
                caps.push(Cap { axis, level, cell, corner });
            }
        }
    }
    Ok(caps)
}

const SHELL_EPS: f64 = 1e-12;

fn axis_range(lo: f64, hi: f64) -> (f64, f64) {
    // min and max of x^2 over [lo, hi]
    let min = if lo <= 0.0 && hi >= 0.0 { 0.0 } else { lo.abs().min(hi.abs()).powi(2) };
    let max = lo.abs().max(hi.abs()).powi(2);
    (min, max)
}

#[allow(clippy::too_many_arguments)]
fn collect_cells(
    dim: usize,
    axis: usize,
    s: f64,
    thr: f64,
    prefix: &mut Vec<i64>,
    min_sq: f64,
    max_sq: f64,
    out: &mut Vec<Vec<i64>>,
) {
    let depth = prefix.len();
    let span = (1.0 / s).round() as i64;
    for m in -span..=span {
        let (mut lo, hi) = (m as f64 * s, (m + 1) as f64 * s);
        if depth == axis {
            if hi < thr {
                continue;
            }
            lo = lo.max(thr);
        }
        let (amin, amax) = axis_range(lo, hi);
        let (nmin, nmax) = (min_sq + amin, max_sq + amax);
        if nmin > 1.0 + SHELL_EPS {
            continue;
        }
        if depth + 1 == dim {
            if nmax >= 1.0 - SHELL_EPS {
                let mut c = prefix.clone();
                c.push(m);
                out.push(c);
            }
        } else {
            prefix.push(m);
            collect_cells(dim, axis, s, thr, prefix, nmin, nmax, out);
            prefix.pop();
        }
    }
}

/// For every cap, the indices of the sphere-grid nodes it contains.
pub fn cap_members(caps: &[Cap], grid: &SphereGrid) -> Vec<Vec<usize>> {
    let mut lookup: HashMap<(usize, u32, &[i64]), usize> = HashMap::new();
    for (i, c) in caps.iter().enumerate() {
        lookup.insert((c.axis, c.level, c.corner.as_slice()), i);
    }
    let mut members = vec![Vec::new(); caps.len()];
    let mut key_buf = vec![0i64; grid.ambient_dim()];
    let mut keys: Vec<(usize, u32)> = caps.iter().map(|c| (c.axis, c.level)).collect();
    keys.dedup();
    for (i, w) in grid.nodes().enumerate() {
        for &(axis, level) in &keys {
            let s = (-(level as f64)).exp2();
            let sign = if w[axis] >= 0.0 { 1.0 } else { -1.0 };
            for (k, x) in w.iter().enumerate() {
                key_buf[k] = (sign * x / s).floor() as i64;
            }
            if let Some(&ci) = lookup.get(&(axis, level, key_buf.as_slice())) {
                members[ci].push(i);
            } else if w[axis] == 0.0 {
                // -0.0 vs 0.0 on the boundary plane: try the other representative
                for (k, x) in w.iter().enumerate() {
                    key_buf[k] = (-x / s).floor() as i64;
                }
                if let Some(&ci) = lookup.get(&(axis, level, key_buf.as_slice())) {
                    members[ci].push(i);
                }
            }
        }
    }
    members
}

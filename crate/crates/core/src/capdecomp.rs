//! Greedy decomposition of a sampled function into cap-localized,
//! height-truncated chips.
//!
//! At step `j` every cap `τ` in the family is scored by
//! `‖r^{j-1} χ_τ χ_{|f| ≤ 2^j ‖f‖_p |τ|^{-1/p}}‖_p`; the best one (first in
//! family order on ties) is extracted as `h^j` and removed from the remainder.
//! Chips are carved out of the remainder, so their supports are disjoint and
//! `f = Σ h^j + r^J` holds node by node.

use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LabError, Result};
use crate::extend::{abs_pow, lebesgue_norm};
use crate::grids::{cap_members, enumerate_caps, Cap, SphereField, SphereGrid};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

#[derive(Debug, Clone, PartialEq)]
pub struct Chip {
    pub field: SphereField,
    pub cap: Cap,
    pub level: usize,
    pub norm_p: f64,
    /// Admitted height `2^j ‖f‖_p |τ|^{-1/p}`.
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChipDecomposition {
    pub original: SphereField,
    pub chips: Vec<Chip>,
    pub remainder: SphereField,
    pub p: f64,
}

/// Finest level at which every cap still holds roughly `min_nodes` grid
/// nodes (estimated from the mean node spacing).
pub fn max_resolvable_level(grid: &SphereGrid, min_nodes: usize) -> u32 {
    let d = grid.d() as f64;
    let spacing = (grid.total_weight() / grid.len() as f64).powf(1.0 / d);
    let side = spacing * (min_nodes as f64).powf(1.0 / d);
    (-side.log2()).floor().max(2.0) as u32
}

/// All caps from level 2 up to the finest level the grid resolves with at
/// least 8 nodes per cap.
pub fn default_caps(grid: &SphereGrid) -> Result<Vec<Cap>> {
    enumerate_caps(grid.d(), 2, max_resolvable_level(grid, 8))
}

fn thresholds(caps: &[Cap], level: usize, f_norm: f64, p: f64) -> Vec<f64> {
    caps.iter()
        .map(|c| (level as f64).exp2() * f_norm * c.measure().powf(-1.0 / p))
        .collect()
}

fn chip_mass(members: &[usize], f: &[Complex64], r: &[Complex64], w: &[f64], thr: f64, p: f64) -> f64 {
    members
        .iter()
        .filter(|&&i| f[i].norm() <= thr)
        .map(|&i| w[i] * abs_pow(r[i], p))
        .sum()
}

pub fn chip_decompose(f: &SphereField, p: f64, levels: usize, caps: &[Cap]) -> Result<ChipDecomposition> {
    if caps.is_empty() {
        return Err(LabError::EmptyCapFamily);
    }
    if levels < 1 {
        return Err(LabError::InvalidParameter("at least one chip level is required".into()));
    }
    if !(p >= 1.0 && p.is_finite()) {
        return Err(LabError::InvalidParameter(format!("p = {p} must be finite and at least 1")));
    }
    if let Some(c) = caps.iter().find(|c| c.corner.len() != f.grid.ambient_dim()) {
        return Err(LabError::DimensionMismatch { expected: f.grid.ambient_dim(), found: c.corner.len() });
    }
    let grid: &Arc<SphereGrid> = &f.grid;
    let w = grid.weights();
    let members = cap_members(caps, grid);
    let f_norm = lebesgue_norm(f, p)?;
    let mut r = f.values.clone();
    let mut chips = Vec::with_capacity(levels);
    for j in 1..=levels {
        let thr = thresholds(caps, j, f_norm, p);
        let mut best = 0;
        let mut best_mass = -1.0;
        for (k, m) in members.iter().enumerate() {
            let mass = chip_mass(m, &f.values, &r, w, thr[k], p);
            if mass > best_mass {
                best = k;
                best_mass = mass;
            }
        }
        let mut h = vec![ZERO; r.len()];
        for &i in &members[best] {
            if f.values[i].norm() <= thr[best] {
                h[i] = r[i];
                r[i] -= h[i];
            }
        }
        chips.push(Chip {
            field: SphereField::new(grid.clone(), h)?,
            cap: caps[best].clone(),
            level: j,
            norm_p: best_mass.max(0.0).powf(1.0 / p),
            threshold: thr[best],
        });
    }
    Ok(ChipDecomposition {
        original: f.clone(),
        chips,
        remainder: SphereField::new(grid.clone(), r)?,
        p,
    })
}

fn power_sum(f: &SphereField, p: f64) -> f64 {
    f.grid.weights().iter().zip(&f.values).map(|(w, v)| w * abs_pow(*v, p)).sum()
}

/// `|‖f‖_p^p − Σ ‖h^j‖_p^p − ‖r^J‖_p^p| / ‖f‖_p^p` (0 for `f = 0`).
pub fn additivity_residual(dec: &ChipDecomposition) -> f64 {
    let total = power_sum(&dec.original, dec.p);
    if total == 0.0 {
        return 0.0;
    }
    let parts: f64 = dec.chips.iter().map(|c| power_sum(&c.field, dec.p)).sum::<f64>() + power_sum(&dec.remainder, dec.p);
    (total - parts).abs() / total
}

impl ChipDecomposition {
    /// `Σ h^j + r^J`.
    pub fn reassemble(&self) -> SphereField {
        let mut v = self.remainder.values.clone();
        for c in &self.chips {
            for (a, b) in v.iter_mut().zip(&c.field.values) {
                *a += b;
            }
        }
        SphereField { grid: self.original.grid.clone(), values: v }
    }

    /// Largest nodewise `|f − (Σ h^j + r^J)|`.
    pub fn reassembly_error(&self) -> f64 {
        self.reassemble()
            .values
            .iter()
            .zip(&self.original.values)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖r^j‖_p` for `j = 0..=J`.
    pub fn remainder_norms(&self) -> Vec<f64> {
        let mut s = power_sum(&self.original, self.p);
        let mut out = vec![s.max(0.0).powf(1.0 / self.p)];
        for c in &self.chips {
            s -= power_sum(&c.field, self.p);
            out.push(s.max(0.0).powf(1.0 / self.p));
        }
        out
    }

    /// For each step, the largest score any cap in `caps` would have achieved
    /// against the remainder at that step (an exhaustive recomputation).
    pub fn best_alternative_norms(&self, caps: &[Cap]) -> Vec<f64> {
        let grid = &self.original.grid;
        let w = grid.weights();
        let members = cap_members(caps, grid);
        let f_norm = lebesgue_norm(&self.original, self.p).unwrap_or(0.0);
        let mut r = self.original.values.clone();
        let mut out = Vec::with_capacity(self.chips.len());
        for c in &self.chips {
            let thr = thresholds(caps, c.level, f_norm, self.p);
            let best = members
                .iter()
                .enumerate()
                .map(|(k, m)| chip_mass(m, &self.original.values, &r, w, thr[k], self.p))
                .fold(0.0, f64::max);
            out.push(best.powf(1.0 / self.p));
            for (a, b) in r.iter_mut().zip(&c.field.values) {
                *a -= b;
            }
        }
        out
    }

    pub fn summary(&self) -> ChipSummary {
        ChipSummary {
            p: self.p,
            chips: self
                .chips
                .iter()
                .map(|c| ChipRecord {
                    axis: c.cap.axis,
                    level: c.level,
                    cap_level: c.cap.level,
                    cell: c.cap.cell,
                    chip_norm_p: c.norm_p,
                    threshold: c.threshold,
                })
                .collect(),
            remainder_norm_p: *self.remainder_norms().last().unwrap(),
            additivity_residual: additivity_residual(self),
            reassembly_error: self.reassembly_error(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChipRecord {
    pub axis: usize,
    pub level: usize,
    pub cap_level: u32,
    pub cell: usize,
    pub chip_norm_p: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChipSummary {
    pub p: f64,
    pub chips: Vec<ChipRecord>,
    pub remainder_norm_p: f64,
    pub additivity_residual: f64,
    pub reassembly_error: f64,
}

//! Batch front end: argument grammar, resolved run configuration, dispatch
//! and result files.
//!
//! Every numerical default used by a command lives here, in the argument
//! structs; the computational modules take explicit parameters only.

mod output;
mod run;

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Serialize, Serializer};

pub use output::{format_number, Artifact, Cell};
pub use run::{configure_threads, dispatch, THREADS_ENV};

use crate::error::LabError;

#[derive(Debug, Clone, Parser, Serialize)]
#[command(name = "restriction-lab", version, about = "Numerics for sharp extension inequalities on the sphere")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Result file (defaults to `<command>.<format>` in the working directory).
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Result format (defaults to the output extension, else csv).
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// α_{p,q} along the scaling line, with β and the gap.
    AlphaTable(AlphaArgs),
    /// β_{p,q} along the scaling line.
    BetaTable(ExponentGridArgs),
    /// Check α = β for p ≥ 2 and α < β for p < 2.
    CompareAlphaBeta(CompareArgs),
    /// Residual between a concentrated sphere profile and its parabolic model.
    ProfileConverge(ConcentrationArgs),
    /// Extension norms of antipodal conjugate pairs against the limit formulas.
    AntipodalLimit(AntipodalArgs),
    /// Greedy cap/chip decomposition of a sphere field.
    ChipDecompose(ChipArgs),
    /// Power-iteration ascent for ‖𝓔f‖_q/‖f‖_p.
    Extremize(ExtremizeArgs),
    /// Exact L^p → L^∞ norm against quadrature and the sup iteration.
    PinftyCheck(PinftyArgs),
    /// Extension of the constant on S¹ against 2πJ₀(|x|).
    BesselCheck(BesselArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::AlphaTable(_) => "alpha-table",
            Command::BetaTable(_) => "beta-table",
            Command::CompareAlphaBeta(_) => "compare-alpha-beta",
            Command::ProfileConverge(_) => "profile-converge",
            Command::AntipodalLimit(_) => "antipodal-limit",
            Command::ChipDecompose(_) => "chip-decompose",
            Command::Extremize(_) => "extremize",
            Command::PinftyCheck(_) => "pinfty-check",
            Command::BesselCheck(_) => "bessel-check",
        }
    }
}

impl RunConfig {
    pub fn resolved_format(&self) -> Format {
        if let Some(f) = self.format {
            return f;
        }
        match self.output.as_deref().and_then(Path::extension).and_then(|e| e.to_str()) {
            Some("json") => Format::Json,
            _ => Format::Csv,
        }
    }

    pub fn resolved_output(&self) -> PathBuf {
        self.output
            .clone()
            .unwrap_or_else(|| PathBuf::from(format!("{}.{}", self.command.name(), self.resolved_format().extension())))
    }
}

/// `start:stop:step` with `start ≤ stop` and `step > 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct GridRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl GridRange {
    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..n)
            .map(|k| {
                let v = self.start + k as f64 * self.step;
                // strip accumulated representation error (2.0000000000000004 → 2)
                let scale = 1e12;
                (v * scale).round() / scale
            })
            .collect()
    }
}

impl FromStr for GridRange {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("expected start:stop:step, got {s:?}"));
        }
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| format!("{t:?} is not a number"));
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
            return Err("range bounds must be finite".into());
        }
        if !(step > 0.0) {
            return Err(format!("step {step} must be positive"));
        }
        if stop < start {
            return Err(format!("range {s:?} is decreasing"));
        }
        Ok(GridRange { start, stop, step })
    }
}

impl fmt::Display for GridRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.stop, self.step)
    }
}

impl Serialize for GridRange {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExponentGridArgs {
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    /// Values of p as start:stop:step.
    #[arg(long)]
    pub p_grid: GridRange,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AlphaSearchArgs {
    #[arg(long, default_value_t = 2001)]
    pub scan_points: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub t_tol: f64,
    #[arg(long, default_value_t = 4096)]
    pub theta_nodes: usize,
    /// θ-nodes near t = 1.
    #[arg(long, default_value_t = 65536)]
    pub theta_nodes_fine: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AlphaArgs {
    #[command(flatten)]
    pub grid: ExponentGridArgs,
    #[command(flatten)]
    pub search: AlphaSearchArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    #[command(flatten)]
    pub grid: ExponentGridArgs,
    #[command(flatten)]
    pub search: AlphaSearchArgs,
    /// Tolerance for α = β.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ConcentrationArgs {
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Ratio ‖φ⁻‖_p/‖φ⁺‖_p of the conjugate pair (0 = single profile).
    #[arg(long, default_value_t = 0.0)]
    pub t: f64,
    /// Gaussian profile φ⁺(ξ) = exp(-a|ξ|²).
    #[arg(long, default_value_t = 1.0)]
    pub gaussian_a: f64,
    #[arg(long, default_value_t = 3.75)]
    pub plane_halfwidth: f64,
    #[arg(long, default_value_t = 301)]
    pub plane_count: usize,
    #[arg(long, default_value_t = 32768)]
    pub sphere_resolution: usize,
    /// Halfwidth of the box in parabolic coordinates (-λ²x₁, λx').
    #[arg(long, default_value_t = 24.0)]
    pub box_halfwidth: f64,
    #[arg(long, default_value_t = 193)]
    pub box_count: usize,
    #[arg(long, default_value_t = 0.125)]
    pub lambda_max: f64,
    #[arg(long, default_value_t = 0.5)]
    pub lambda_ratio: f64,
    #[arg(long, default_value_t = 5)]
    pub lambda_count: usize,
    /// Carrier offsets per box node for two-sided pairs.
    #[arg(long, default_value_t = 16)]
    pub carriers: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AntipodalArgs {
    #[command(flatten)]
    pub profile: ConcentrationArgs,
    #[arg(long, default_value_t = 256)]
    pub theta_nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum InitKind {
    Constant,
    Random,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChipArgs {
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 1024)]
    pub resolution: usize,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Number of chips J.
    #[arg(long, default_value_t = 8)]
    pub levels: usize,
    #[arg(long, default_value_t = 2)]
    pub min_cap_level: u32,
    /// Finest cap level (defaults to the finest level with ≥ 8 nodes per cap).
    #[arg(long)]
    pub max_cap_level: Option<u32>,
    /// Seed for the random complex field.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Read the field from a JSON file instead of drawing it at random.
    #[arg(long)]
    pub field_in: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExtremizeArgs {
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    /// Defaults to the scaling-line exponent (d+2)p'/d.
    #[arg(long)]
    pub q: Option<f64>,
    #[arg(long, default_value_t = 128)]
    pub resolution: usize,
    #[arg(long, default_value_t = 40.0)]
    pub box_halfwidth: f64,
    #[arg(long, default_value_t = 161)]
    pub box_count: usize,
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub stall_tol: f64,
    #[arg(long, value_enum, default_value_t = InitKind::Random)]
    pub init: InitKind,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Relative size of the random perturbation of the constant.
    #[arg(long, default_value_t = 0.01)]
    pub noise: f64,
    /// Also write the final field as JSON.
    #[arg(long)]
    pub field_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PinftyArgs {
    #[arg(long, default_value_t = 1)]
    pub d: usize,
    #[arg(long, default_value_t = 2.0)]
    pub p: f64,
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    #[arg(long, default_value_t = 20.0)]
    pub box_halfwidth: f64,
    #[arg(long, default_value_t = 21)]
    pub box_count: usize,
    #[arg(long, default_value_t = 20)]
    pub sup_iters: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.5)]
    pub noise: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct BesselArgs {
    #[arg(long, default_value_t = 100)]
    pub count: usize,
    #[arg(long, default_value_t = 20.0)]
    pub radius: f64,
    #[arg(long, default_value_t = 512)]
    pub resolution: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Failure of a run, with its process exit status.
#[derive(Debug, Clone, PartialEq)]
pub enum RunError {
    Validation(String),
    Numerical(String),
}

impl RunError {
    pub fn exit_code(&self) -> i32 {
        match self {
            RunError::Validation(_) => 2,
            RunError::Numerical(_) => 3,
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Validation(m) => write!(f, "invalid configuration: {m}"),
            RunError::Numerical(m) => write!(f, "numerical failure: {m}"),
        }
    }
}

impl std::error::Error for RunError {}

impl From<LabError> for RunError {
    fn from(e: LabError) -> Self {
        match e {
            LabError::Numerical(_) => RunError::Numerical(e.to_string()),
            other => RunError::Validation(other.to_string()),
        }
    }
}

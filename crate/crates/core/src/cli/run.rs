//! Validation and execution of one configured command.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::Value;

use super::output::Artifact;
use super::*;
use crate::capdecomp::{additivity_residual, chip_decompose, max_resolvable_level};
use crate::constants::{alpha, beta, scaling_exponents, wallis_ratio, AlphaSearch};
use crate::exponent::scaling_q;
use crate::extend::{extend_sphere, extend_sphere_at, lebesgue_norm};
use crate::extremize::{
    default_init, modulus_spread, pinfty_norm, power_iterate, power_iterate_sup, IterationControl,
};
use crate::grids::{enumerate_caps, make_sphere_grid, make_uniform_grid, LatticeField, SphereField, SphereGrid, UniformGrid};
use crate::profiles::{
    antipodal_limit_check, check_scale, conjugate_pair, sphere_parab_residual, ConcentrationOptions,
    ConcentrationSchedule, ProfilePair,
};
use crate::special::bessel_j0;

/// Environment variable capping the worker threads (0 = automatic).
pub const THREADS_ENV: &str = "RESTRICTION_LAB_THREADS";

/// Apply a thread cap given as the value of [`THREADS_ENV`]; returns the cap
/// (0 when automatic).
pub fn configure_threads(value: Option<&str>) -> std::result::Result<usize, RunError> {
    let n = match value.map(str::trim) {
        None | Some("") => 0,
        Some(v) => v
            .parse::<usize>()
            .map_err(|_| RunError::Validation(format!("{THREADS_ENV}={v:?} is not a nonnegative integer")))?,
    };
    if n > 0 {
        // a pool that is already set up (e.g. in tests) is kept
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(n)
}

type Run<T> = std::result::Result<T, RunError>;

fn invalid<T>(msg: impl Into<String>) -> Run<T> {
    Err(RunError::Validation(msg.into()))
}

fn check_dim(d: usize) -> Run<()> {
    if d != 1 && d != 2 {
        return invalid(format!("d = {d} is not supported (use 1 or 2)"));
    }
    Ok(())
}

fn check_positive(name: &str, x: f64) -> Run<()> {
    if !(x > 0.0 && x.is_finite()) {
        return invalid(format!("{name} = {x} must be positive and finite"));
    }
    Ok(())
}

fn check_count(name: &str, n: usize) -> Run<()> {
    if n < 3 || n.is_multiple_of(2) {
        return invalid(format!("{name} = {n} must be odd and at least 3"));
    }
    Ok(())
}

fn check_output_dir(path: &Path) -> Run<()> {
    match path.parent() {
        Some(dir) if !dir.as_os_str().is_empty() && !dir.is_dir() => {
            invalid(format!("output directory {} does not exist", dir.display()))
        }
        _ => Ok(()),
    }
}

fn scaling_grid(d: usize, grid: &GridRange) -> Run<Vec<(f64, f64)>> {
    check_dim(d)?;
    grid.values()
        .into_iter()
        .map(|p| Ok((p, scaling_exponents(p, d)?.0)))
        .collect()
}

fn search_of(a: &AlphaSearchArgs) -> Run<AlphaSearch> {
    if a.scan_points < 3 {
        return invalid("scan-points must be at least 3");
    }
    check_positive("t-tol", a.t_tol)?;
    if a.theta_nodes == 0 || a.theta_nodes_fine == 0 {
        return invalid("θ-node counts must be positive");
    }
    Ok(AlphaSearch {
        scan_points: a.scan_points,
        t_tol: a.t_tol,
        nodes_low: a.theta_nodes,
        nodes_high: a.theta_nodes_fine,
        ..AlphaSearch::default()
    })
}

fn box_grid(dim: usize, halfwidth: f64, count: usize) -> Run<Arc<UniformGrid>> {
    check_positive("box-halfwidth", halfwidth)?;
    check_count("box-count", count)?;
    Ok(Arc::new(make_uniform_grid(dim, &vec![halfwidth; dim], &vec![count; dim])?))
}

fn sphere(d: usize, resolution: usize) -> Run<Arc<SphereGrid>> {
    check_dim(d)?;
    Ok(Arc::new(make_sphere_grid(d, resolution)?))
}

/// Validate, run, and write the result file; returns the path written and a
/// one-line summary.
pub fn dispatch(config: &RunConfig) -> Run<(PathBuf, String)> {
    let path = config.resolved_output();
    let format = config.resolved_format();
    check_output_dir(&path)?;
    let artifact = match &config.command {
        Command::AlphaTable(a) => alpha_table(a)?,
        Command::BetaTable(a) => beta_table(a)?,
        Command::CompareAlphaBeta(a) => compare(a)?,
        Command::ProfileConverge(a) => profile_converge(a)?,
        Command::AntipodalLimit(a) => antipodal(a)?,
        Command::ChipDecompose(a) => chips(a)?,
        Command::Extremize(a) => extremize(a)?,
        Command::PinftyCheck(a) => pinfty(a)?,
        Command::BesselCheck(a) => bessel(a)?,
    };
    artifact.check_finite()?;
    let mut cfg = serde_json::to_value(config).map_err(|e| RunError::Validation(e.to_string()))?;
    cfg["output"] = Value::from(path.display().to_string());
    cfg["format"] = serde_json::to_value(format).unwrap();
    artifact.write(&path, format, &cfg)?;
    Ok((path, artifact.summary))
}

/// `(p, q, α, argmax t, β)`.
type AlphaRow = (f64, f64, f64, f64, f64);

fn alpha_rows(a: &ExponentGridArgs, s: &AlphaSearchArgs) -> Run<(Vec<AlphaRow>, AlphaSearch)> {
    let pq = scaling_grid(a.d, &a.p_grid)?;
    let search = search_of(s)?;
    let rows: crate::error::Result<Vec<_>> = pq
        .par_iter()
        .map(|&(p, q)| {
            let al = alpha(a.d, p, q, &search)?;
            Ok((p, q, al.value, al.argmax_t, beta(p, q)?))
        })
        .collect();
    Ok((rows?, search))
}

fn alpha_table(a: &AlphaArgs) -> Run<Artifact> {
    let (rows, search) = alpha_rows(&a.grid, &a.search)?;
    let mut out = Artifact::new(vec!["p", "q", "alpha", "argmax_t", "beta", "gap"]);
    for (p, q, al, t, b) in &rows {
        out.push(vec![(*p).into(), (*q).into(), (*al).into(), (*t).into(), (*b).into(), (b - al).into()]);
    }
    out.diag("search", serde_json::to_value(search).unwrap());
    out.diag("rows", rows.len());
    out.summary = format!("alpha-table: {} rows for d = {}", rows.len(), a.grid.d);
    Ok(out)
}

fn beta_table(a: &ExponentGridArgs) -> Run<Artifact> {
    let pq = scaling_grid(a.d, &a.p_grid)?;
    let mut out = Artifact::new(vec!["p", "q", "r", "wallis_ratio", "beta"]);
    for (p, q) in &pq {
        out.push(vec![(*p).into(), (*q).into(), p.max(2.0).into(), wallis_ratio(*q).into(), beta(*p, *q)?.into()]);
    }
    out.diag("rows", pq.len());
    out.summary = format!("beta-table: {} rows for d = {}", pq.len(), a.d);
    Ok(out)
}

fn compare(a: &CompareArgs) -> Run<Artifact> {
    check_positive("tol", a.tol)?;
    let (rows, search) = alpha_rows(&a.grid, &a.search)?;
    let mut out = Artifact::new(vec!["p", "q", "alpha", "beta", "gap", "expected", "holds"]);
    let mut failures = 0;
    for (p, q, al, _, b) in &rows {
        let (expected, holds) = if *p >= 2.0 {
            ("equal", (al - b).abs() < a.tol)
        } else {
            ("less", *al < b - a.tol)
        };
        if !holds {
            failures += 1;
        }
        out.push(vec![
            (*p).into(),
            (*q).into(),
            (*al).into(),
            (*b).into(),
            (b - al).into(),
            expected.into(),
            if holds { "yes" } else { "no" }.into(),
        ]);
    }
    out.diag("search", serde_json::to_value(search).unwrap());
    out.diag("tolerance", a.tol);
    out.diag("failures", failures);
    out.summary = format!("compare-alpha-beta: {} of {} rows as expected", rows.len() - failures, rows.len());
    Ok(out)
}

struct ConcentrationSetup {
    pair: ProfilePair,
    grid: Arc<SphereGrid>,
    parab_box: Arc<UniformGrid>,
    schedule: ConcentrationSchedule,
    q: f64,
    opts: ConcentrationOptions,
}

fn concentration_setup(a: &ConcentrationArgs, theta_nodes: usize) -> Run<ConcentrationSetup> {
    check_dim(a.d)?;
    let (q, _, _) = scaling_exponents(a.p, a.d)?;
    if !(0.0..=1.0).contains(&a.t) {
        return invalid(format!("t = {} must lie in [0, 1]", a.t));
    }
    check_positive("gaussian-a", a.gaussian_a)?;
    check_positive("plane-halfwidth", a.plane_halfwidth)?;
    check_count("plane-count", a.plane_count)?;
    if a.carriers == 0 || theta_nodes == 0 {
        return invalid("carriers and θ-nodes must be positive");
    }
    if !(a.lambda_ratio > 0.0 && a.lambda_ratio < 1.0) {
        return invalid(format!("lambda-ratio = {} must lie in (0, 1)", a.lambda_ratio));
    }
    let schedule = ConcentrationSchedule::geometric(a.lambda_max, a.lambda_ratio, a.lambda_count)?;
    let plane = Arc::new(make_uniform_grid(a.d, &vec![a.plane_halfwidth; a.d], &vec![a.plane_count; a.d])?);
    schedule.check_support(&plane)?;
    let grid = sphere(a.d, a.sphere_resolution)?;
    for &l in schedule.lambdas() {
        check_scale(l, &plane, &grid)?;
    }
    let parab_box = box_grid(a.d + 1, a.box_halfwidth, a.box_count)?;
    let ga = a.gaussian_a;
    let phi = LatticeField::from_fn(plane, |x| {
        Complex64::new((-ga * x.iter().map(|v| v * v).sum::<f64>()).exp(), 0.0)
    });
    let pair = conjugate_pair(&phi, a.t)?;
    Ok(ConcentrationSetup {
        pair,
        grid,
        parab_box,
        schedule,
        q,
        opts: ConcentrationOptions { carriers: a.carriers, theta_nodes },
    })
}

fn grid_diagnostics(out: &mut Artifact, s: &ConcentrationSetup, p: f64) {
    out.diag("q", s.q);
    out.diag("sphere_nodes", s.grid.len());
    out.diag("plane_nodes", s.pair.plane_grid().len());
    out.diag("box_nodes", s.parab_box.len());
    out.diag("edge_mass_fraction", s.pair.edge_mass_fraction(p));
}

fn profile_converge(a: &ConcentrationArgs) -> Run<Artifact> {
    let s = concentration_setup(a, 1)?;
    let mut out = Artifact::new(vec!["lambda", "residual"]);
    let mut res = Vec::new();
    for &l in s.schedule.lambdas() {
        let r = sphere_parab_residual(&s.pair, l, &s.grid, &s.parab_box, a.p, s.q, &s.opts)?;
        res.push(r);
        out.push(vec![l.into(), r.into()]);
    }
    let decreasing = res.windows(2).all(|w| w[1] < w[0]);
    grid_diagnostics(&mut out, &s, a.p);
    out.diag("strictly_decreasing", decreasing);
    out.summary = format!(
        "profile-converge: residual {:.3e} at lambda = {}, strictly decreasing: {decreasing}",
        res.last().unwrap(),
        s.schedule.smallest()
    );
    Ok(out)
}

fn antipodal(a: &AntipodalArgs) -> Run<Artifact> {
    let s = concentration_setup(&a.profile, a.theta_nodes)?;
    let rep = antipodal_limit_check(&s.pair, &s.schedule, &s.grid, &s.parab_box, a.profile.p, s.q, &s.opts)?;
    let mut out = Artifact::new(vec!["lambda", "extension_norm", "theta_average", "factored", "beta_bound", "relative_gap"]);
    let factored = rep.rhs_factored.unwrap_or(f64::NAN);
    for (l, lhs) in rep.lambdas.iter().zip(&rep.lhs) {
        out.push(vec![
            (*l).into(),
            (*lhs).into(),
            rep.rhs_theta_avg.into(),
            factored.into(),
            rep.beta_bound.into(),
            ((lhs - rep.rhs_theta_avg) / rep.rhs_theta_avg).into(),
        ]);
    }
    grid_diagnostics(&mut out, &s, a.profile.p);
    out.diag("t", s.pair.t);
    out.diag("tail_bound", rep.tail_bound);
    out.diag("profile_norm", rep.profile_norm);
    out.diag("sphere_norms", rep.sphere_norms.clone());
    out.summary = format!(
        "antipodal-limit: norm {:.6} at lambda = {} vs theta average {:.6}",
        rep.lhs.last().unwrap(),
        s.schedule.smallest(),
        rep.rhs_theta_avg
    );
    Ok(out)
}

fn random_field(grid: &Arc<SphereGrid>, seed: u64) -> SphereField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let values = (0..grid.len())
        .map(|_| Complex64::new(rng.gen_range(-1.0..=1.0), rng.gen_range(-1.0..=1.0)))
        .collect();
    SphereField { grid: grid.clone(), values }
}

fn chips(a: &ChipArgs) -> Run<Artifact> {
    if !(a.p >= 1.0 && a.p.is_finite()) {
        return invalid(format!("p = {} must be finite and at least 1", a.p));
    }
    if a.levels == 0 {
        return invalid("levels must be at least 1");
    }
    let f = match &a.field_in {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| RunError::Validation(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<SphereField>(&text)
                .map_err(|e| RunError::Validation(format!("{}: {e}", path.display())))?
        }
        None => random_field(&sphere(a.d, a.resolution)?, a.seed),
    };
    let max_level = a.max_cap_level.unwrap_or_else(|| max_resolvable_level(&f.grid, 8));
    if max_level < a.min_cap_level {
        return invalid(format!("max-cap-level {max_level} is below min-cap-level {}", a.min_cap_level));
    }
    let caps = enumerate_caps(f.grid.d(), a.min_cap_level, max_level)?;
    let dec = chip_decompose(&f, a.p, a.levels, &caps)?;
    let summary = dec.summary();
    let mut out = Artifact::new(vec!["step", "axis", "cap_level", "cell", "chip_norm_p", "threshold"]);
    for c in &summary.chips {
        out.push(vec![c.level.into(), c.axis.into(), (c.cap_level as usize).into(), c.cell.into(), c.chip_norm_p.into(), c.threshold.into()]);
    }
    out.diag("sphere_nodes", f.grid.len());
    out.diag("cap_count", caps.len());
    out.diag("max_cap_level", max_level);
    out.diag("input_norm_p", lebesgue_norm(&f, a.p)?);
    out.diag("remainder_norm_p", summary.remainder_norm_p);
    out.diag("additivity_residual", additivity_residual(&dec));
    out.diag("reassembly_error", summary.reassembly_error);
    out.summary = format!(
        "chip-decompose: {} chips, additivity residual {:.2e}",
        summary.chips.len(),
        summary.additivity_residual
    );
    Ok(out)
}

fn extremize(a: &ExtremizeArgs) -> Run<Artifact> {
    check_dim(a.d)?;
    if !(a.p > 1.0 && a.p.is_finite()) {
        return invalid(format!("p = {} must be finite and above 1", a.p));
    }
    let q = a.q.unwrap_or_else(|| scaling_q(a.d, a.p));
    if !(q.is_finite() && q > a.p) {
        return invalid(format!("q = {q} must be finite and exceed p = {}", a.p));
    }
    if !(a.stall_tol >= 0.0) || !(a.noise >= 0.0) {
        return invalid("stall-tol and noise must be nonnegative");
    }
    if let Some(fo) = &a.field_out {
        check_output_dir(fo)?;
    }
    let grid = sphere(a.d, a.resolution)?;
    let x_box = box_grid(a.d + 1, a.box_halfwidth, a.box_count)?;
    let noise = match a.init {
        InitKind::Constant => 0.0,
        InitKind::Random => a.noise,
    };
    let init = default_init(&grid, a.p, a.seed, noise)?;
    let control = IterationControl { max_iters: a.max_iters, stall_tol: a.stall_tol };
    let mut rep = power_iterate(&init, a.p, q, &x_box, &control)?;
    rep.seed = Some(a.seed);
    let mut out = Artifact::new(vec!["iteration", "ratio"]);
    for (k, r) in rep.ratio_history.iter().enumerate() {
        out.push(vec![k.into(), (*r).into()]);
    }
    out.diag("q", q);
    out.diag("final_ratio", rep.final_ratio());
    out.diag("el_residual", rep.el_residual);
    out.diag("tail_bound", rep.tail_bound);
    out.diag("seed", a.seed);
    out.diag("stalled", rep.stalled);
    out.diag("worst_decrease", rep.worst_decrease());
    out.diag("sphere_nodes", grid.len());
    out.diag("box_nodes", x_box.len());
    if let Some(fo) = &a.field_out {
        let text = serde_json::to_string(&rep.final_field).map_err(|e| RunError::Numerical(e.to_string()))?;
        std::fs::write(fo, text).map_err(|e| RunError::Validation(format!("cannot write {}: {e}", fo.display())))?;
        out.diag("field_out", Value::from(fo.display().to_string()));
    }
    out.summary = format!(
        "extremize: ratio {:.12} after {} steps (EL residual {:.2e}, tail bound {:.2e})",
        rep.final_ratio(),
        rep.ratio_history.len() - 1,
        rep.el_residual,
        rep.tail_bound
    );
    Ok(out)
}

fn pinfty(a: &PinftyArgs) -> Run<Artifact> {
    if !(a.p >= 1.0) {
        return invalid(format!("p = {} must be at least 1", a.p));
    }
    if !(a.noise >= 0.0) {
        return invalid("noise must be nonnegative");
    }
    let grid = sphere(a.d, a.resolution)?;
    let x_box = box_grid(a.d + 1, a.box_halfwidth, a.box_count)?;
    let (exact, constant) = pinfty_norm(a.p, &grid)?;
    let u = extend_sphere(&constant, &x_box)?;
    let quadrature = lebesgue_norm(&u, f64::INFINITY)?;
    let init = default_init(&grid, a.p, a.seed, a.noise)?;
    let rep = power_iterate_sup(&init, a.p, &x_box, a.sup_iters)?;
    let spread = modulus_spread(&rep.final_field);
    let mut out = Artifact::new(vec!["d", "p", "exact", "quadrature", "difference", "sup_iteration_ratio", "modulus_spread"]);
    out.push(vec![
        a.d.into(),
        a.p.into(),
        exact.into(),
        quadrature.into(),
        (quadrature - exact).into(),
        rep.final_ratio().into(),
        spread.into(),
    ]);
    out.diag("sphere_nodes", grid.len());
    out.diag("box_nodes", x_box.len());
    out.diag("sup_center", rep.modulation_center.clone());
    out.diag("seed", a.seed);
    out.summary = format!("pinfty-check: exact {exact:.12}, quadrature {quadrature:.12}");
    Ok(out)
}

fn bessel(a: &BesselArgs) -> Run<Artifact> {
    check_positive("radius", a.radius)?;
    if a.count == 0 {
        return invalid("count must be positive");
    }
    let grid = sphere(1, a.resolution)?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    let points: Vec<Vec<f64>> = (0..a.count)
        .map(|_| {
            let r = a.radius * rng.gen::<f64>();
            let th = std::f64::consts::TAU * rng.gen::<f64>();
            vec![r * th.cos(), r * th.sin()]
        })
        .collect();
    let one = SphereField::constant(grid.clone(), Complex64::new(1.0, 0.0));
    let ext = extend_sphere_at(&one, &points)?;
    let mut out = Artifact::new(vec!["x1", "x2", "extension_re", "extension_im", "bessel", "abs_error"]);
    let mut worst = 0.0f64;
    for (x, e) in points.iter().zip(&ext) {
        let b = std::f64::consts::TAU * bessel_j0(x[0].hypot(x[1]));
        let err = (e - b).norm();
        worst = worst.max(err);
        out.push(vec![x[0].into(), x[1].into(), e.re.into(), e.im.into(), b.into(), err.into()]);
    }
    out.diag("sphere_nodes", grid.len());
    out.diag("max_abs_error", worst);
    out.summary = format!("bessel-check: max error {worst:.3e} over {} points", a.count);
    Ok(out)
}

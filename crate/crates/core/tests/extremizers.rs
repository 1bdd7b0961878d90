use std::sync::Arc;

use restriction_lab::extend::lebesgue_norm;
use restriction_lab::extremize::{el_residual, extension_ratio, pinfty_norm, power_iterate, IterationControl};
use restriction_lab::grids::{make_sphere_grid, UniformGrid};
use restriction_lab::extend::modulate;

#[test]
fn constants_become_critical_as_the_box_grows() {
    let grid = Arc::new(make_sphere_grid(1, 128).unwrap());
    let (_, constant) = pinfty_norm(2.0, &grid).unwrap();
    let residuals: Vec<f64> = [10.0, 20.0, 40.0]
        .iter()
        .map(|&h| {
            let x_box = Arc::new(UniformGrid::cube(2, h, (4.0 * h) as usize + 1).unwrap());
            el_residual(&constant, 2.0, 6.0, &x_box).unwrap()
        })
        .collect();
    assert!(residuals.windows(2).all(|w| w[1] < w[0]), "{residuals:?}");
    assert!(residuals[2] < 0.05);
}

#[test]
fn converged_runs_are_nearly_critical_and_robust_to_a_sign_flip() {
    let grid = Arc::new(make_sphere_grid(1, 64).unwrap());
    let x_box = Arc::new(UniformGrid::cube(2, 20.0, 81).unwrap());
    let control = IterationControl::default();
    let (_, constant) = pinfty_norm(2.0, &grid).unwrap();
    let base = power_iterate(&constant, 2.0, 6.0, &x_box, &control).unwrap();
    assert!(base.stalled);
    assert!(base.el_residual < 1e-4);
    assert!((lebesgue_norm(&base.final_field, 2.0).unwrap() - 1.0).abs() < 1e-12);

    let mut flipped = base.final_field.clone();
    flipped.values[3] = -flipped.values[3];
    let start = extension_ratio(&flipped, 2.0, 6.0, &x_box).unwrap();
    assert!(start < base.final_ratio());
    let rerun = power_iterate(&flipped, 2.0, 6.0, &x_box, &control).unwrap();
    assert!(rerun.worst_decrease() <= 1e-12);
    assert!(rerun.final_ratio() >= base.final_ratio() - 1e-8);
}

#[test]
fn modulated_ratio_stays_within_the_tail_bound() {
    let grid = Arc::new(make_sphere_grid(1, 64).unwrap());
    let x_box = Arc::new(UniformGrid::cube(2, 30.0, 121).unwrap());
    let (_, constant) = pinfty_norm(2.0, &grid).unwrap();
    let base = power_iterate(&constant, 2.0, 6.0, &x_box, &IterationControl { max_iters: 3, stall_tol: 0.0 }).unwrap();
    let shifted = modulate(&base.final_field, &[1.5, -2.0]).unwrap();
    let r = extension_ratio(&shifted, 2.0, 6.0, &x_box).unwrap();
    assert!((r - base.final_ratio()).abs() <= base.tail_bound);
}

// Ascent for ‖𝓔f‖_6/‖f‖_2 on the circle from perturbed constants.

use std::sync::Arc;

use restriction_lab::extremize::{pinfty_norm, power_iterate, power_iterate_seeded, IterationControl};
use restriction_lab::grids::{make_sphere_grid, UniformGrid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Arc::new(make_sphere_grid(1, 64)?);
    let x_box = Arc::new(UniformGrid::cube(2, 20.0, 81)?);
    let control = IterationControl::default();
    let (_, constant) = pinfty_norm(2.0, &grid)?;
    let base = power_iterate(&constant, 2.0, 6.0, &x_box, &control)?;
    println!(
        "constant start: ratio {:.12} after {} steps, EL residual {:.2e}, tail bound {:.2e}",
        base.final_ratio(),
        base.ratio_history.len() - 1,
        base.el_residual,
        base.tail_bound
    );
    for seed in 0..3 {
        let rep = power_iterate_seeded(&grid, 2.0, 6.0, &x_box, &control, seed, 0.05)?;
        println!("seed {seed}: ratio {:.12} (start {:.12})", rep.final_ratio(), rep.ratio_history[0]);
        assert!(rep.worst_decrease() <= 1e-12);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

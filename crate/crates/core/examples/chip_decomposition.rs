// Greedy chip decomposition of a bump on the circle plus background noise.

use std::sync::Arc;

use num_complex::Complex64;
use restriction_lab::capdecomp::{additivity_residual, chip_decompose, default_caps};
use restriction_lab::grids::{make_sphere_grid, SphereField};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Arc::new(make_sphere_grid(1, 2048)?);
    let f = SphereField::from_fn(grid.clone(), |w| {
        let bump = (-40.0 * ((w[0] - 0.8).powi(2) + (w[1] - 0.6).powi(2))).exp();
        Complex64::new(3.0 * bump + 0.1 * w[1], 0.05 * w[0])
    });
    let caps = default_caps(&grid)?;
    let dec = chip_decompose(&f, 2.0, 6, &caps)?;
    for c in &dec.chips {
        println!(
            "chip {}: axis {} level {} cell {:>3}  norm {:.6}  threshold {:.3}",
            c.level, c.cap.axis, c.cap.level, c.cap.cell, c.norm_p, c.threshold
        );
    }
    println!("remainder norms {:?}", dec.remainder_norms());
    println!("additivity residual {:.2e}", additivity_residual(&dec));
    assert!(additivity_residual(&dec) < 1e-12);
    assert_eq!(dec.reassembly_error(), 0.0);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

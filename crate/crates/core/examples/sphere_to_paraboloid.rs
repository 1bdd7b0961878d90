// A Gaussian concentrated near the north pole: the extension approaches the
// rescaled parabolic extension at rate λ².

use std::sync::Arc;

use num_complex::Complex64;
use restriction_lab::grids::{make_sphere_grid, make_uniform_grid, LatticeField};
use restriction_lab::profiles::{sphere_parab_residual, ConcentrationOptions, ProfilePair};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let plane = Arc::new(make_uniform_grid(1, &[3.75], &[151])?);
    let phi = LatticeField::from_fn(plane, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0));
    let pair = ProfilePair::single(phi);
    let grid = Arc::new(make_sphere_grid(1, 16384)?);
    let parab_box = make_uniform_grid(2, &[12.0, 12.0], &[97, 97])?;
    let opts = ConcentrationOptions::default();
    let mut last = f64::INFINITY;
    for k in 3..=6 {
        let lambda = 0.5f64.powi(k);
        let r = sphere_parab_residual(&pair, lambda, &grid, &parab_box, 2.0, 6.0, &opts)?;
        println!("lambda = 2^-{k}: relative residual {r:.4e}");
        assert!(r < last);
        last = r;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

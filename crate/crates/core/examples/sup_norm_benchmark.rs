// The L^p → L^∞ extension norm σ(S^d)^{1/p'} and its constant extremizer.

use std::sync::Arc;

use restriction_lab::extend::{extend_sphere, lebesgue_norm};
use restriction_lab::extremize::{default_init, modulus_spread, pinfty_norm, power_iterate_sup};
use restriction_lab::grids::{make_sphere_grid, UniformGrid};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for (d, p, res, count) in [(1, 2.0, 256, 21), (1, 3.0, 256, 21), (2, 2.0, 32, 11)] {
        let grid = Arc::new(make_sphere_grid(d, res)?);
        let x_box = Arc::new(UniformGrid::cube(d + 1, 10.0, count)?);
        let (exact, constant) = pinfty_norm(p, &grid)?;
        let sup = lebesgue_norm(&extend_sphere(&constant, &x_box)?, f64::INFINITY)?;
        let rep = power_iterate_sup(&default_init(&grid, p, 7, 0.5)?, p, &x_box, 10)?;
        println!(
            "d={d} p={p}: exact {exact:.12}  quadrature {sup:.12}  sup-iteration {:.12}  spread {:.1e}",
            rep.final_ratio(),
            modulus_spread(&rep.final_field)
        );
        assert!((sup - exact).abs() < 1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

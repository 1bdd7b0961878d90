// Conjugate Gaussian pairs at the two poles: the extension norm against the
// θ-averaged limit and the β bound.

use std::sync::Arc;

use num_complex::Complex64;
use restriction_lab::grids::{make_sphere_grid, make_uniform_grid, LatticeField};
use restriction_lab::profiles::{antipodal_limit_check, conjugate_pair, ConcentrationOptions, ConcentrationSchedule};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let plane = Arc::new(make_uniform_grid(1, &[3.75], &[151])?);
    let phi = LatticeField::from_fn(plane, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0));
    let grid = Arc::new(make_sphere_grid(1, 16384)?);
    let parab_box = Arc::new(make_uniform_grid(2, &[12.0, 12.0], &[97, 97])?);
    let schedule = ConcentrationSchedule::new(vec![1.0 / 64.0])?;
    let opts = ConcentrationOptions { carriers: 8, theta_nodes: 128 };
    for t in [0.0, 0.5, 1.0] {
        let pair = conjugate_pair(&phi, t)?;
        let rep = antipodal_limit_check(&pair, &schedule, &grid, &parab_box, 2.0, 6.0, &opts)?;
        println!(
            "t = {t}: |Eg|_6 = {:.6}  theta average {:.6}  factored {:.6}  beta bound {:.6}",
            rep.lhs[0],
            rep.rhs_theta_avg,
            rep.rhs_factored.unwrap_or(f64::NAN),
            rep.beta_bound
        );
        assert!((rep.lhs[0] / rep.rhs_theta_avg - 1.0).abs() < 1e-3);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

// The extension of the constant function on the circle is 2πJ₀(|x|).

use std::sync::Arc;

use num_complex::Complex64;
use restriction_lab::extend::extend_sphere_at;
use restriction_lab::grids::{make_sphere_grid, SphereField};
use restriction_lab::special::bessel_j0;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let grid = Arc::new(make_sphere_grid(1, 256)?);
    let one = SphereField::constant(grid, Complex64::new(1.0, 0.0));
    let points: Vec<Vec<f64>> = (0..8).map(|k| vec![2.5 * k as f64, 1.0]).collect();
    let values = extend_sphere_at(&one, &points)?;
    for (x, v) in points.iter().zip(&values) {
        let r = x[0].hypot(x[1]);
        let exact = std::f64::consts::TAU * bessel_j0(r);
        println!("|x| = {r:>8.4}  E1 = {:>+.12}  2piJ0 = {exact:>+.12}", v.re);
        assert!((v - exact).norm() < 1e-10);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

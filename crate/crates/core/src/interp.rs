//! Tensor-product cubic (4-point Lagrange) interpolation on uniform lattices.

use num_complex::Complex64;

use crate::grids::LatticeField;

/// Value of the lattice field at an arbitrary point; zero outside the box.
/// Reproduces lattice values exactly at nodes and cubic polynomials exactly
/// everywhere inside the box.
pub fn cubic_sample(field: &LatticeField, x: &[f64]) -> Complex64 {
    let grid = &field.grid;
    let dim = grid.dim();
    debug_assert_eq!(x.len(), dim);
    let mut starts = [0usize; 3];
    let mut basis = [[0.0f64; 4]; 3];
    for a in 0..dim {
        let r = grid.halfwidths()[a];
        if !(x[a].abs() <= r) {
            return Complex64::new(0.0, 0.0);
        }
        let n = grid.counts()[a];
        let h = grid.spacing(a);
        let u = (x[a] + r) / h;
        if n < 4 {
            // linear fallback on very coarse axes
            let i = (u.floor() as usize).min(n - 2);
            let f = u - i as f64;
            starts[a] = i;
            basis[a] = [1.0 - f, f, 0.0, 0.0];
            continue;
        }
        let i = (u.floor() as isize - 1).clamp(0, n as isize - 4) as usize;
        let s = u - i as f64; // position within the 4-point stencil, nodes at 0..3
        basis[a] = lagrange4(s);
        starts[a] = i;
    }
    let counts = grid.counts();
    let width = |a: usize| if counts[a] < 4 { 2 } else { 4 };
    let mut acc = Complex64::new(0.0, 0.0);
    match dim {
        1 => {
            for (k, b) in basis[0].iter().take(width(0)).enumerate() {
                acc += field.values[starts[0] + k] * b;
            }
        }
        2 => {
            for k0 in 0..width(0) {
                let row = (starts[0] + k0) * counts[1];
                for k1 in 0..width(1) {
                    acc += field.values[row + starts[1] + k1] * (basis[0][k0] * basis[1][k1]);
                }
            }
        }
        3 => {
            for k0 in 0..width(0) {
                for k1 in 0..width(1) {
                    let row = ((starts[0] + k0) * counts[1] + starts[1] + k1) * counts[2];
                    for k2 in 0..width(2) {
                        acc += field.values[row + starts[2] + k2]
                            * (basis[0][k0] * basis[1][k1] * basis[2][k2]);
                    }
                }
            }
        }
        _ => panic!("cubic_sample supports lattices of dimension 1 to 3"),
    }
    acc
}

fn lagrange4(s: f64) -> [f64; 4] {
    let (a, b, c, d) = (s, s - 1.0, s - 2.0, s - 3.0);
    [-b * c * d / 6.0, a * c * d / 2.0, -a * b * d / 2.0, a * b * c / 6.0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grids::make_uniform_grid;
    use std::sync::Arc;

    #[test]
    fn reproduces_nodes_and_cubics() {
        let g = Arc::new(make_uniform_grid(2, &[2.0, 1.5], &[9, 7]).unwrap());
        let poly = |x: &[f64]| Complex64::new(x[0].powi(3) - 2.0 * x[0] * x[1], x[1].powi(3) + 0.5);
        let f = LatticeField::from_fn(g.clone(), poly);
        for x in g.nodes() {
            assert!((cubic_sample(&f, &x) - poly(&x)).norm() < 1e-13);
        }
        for x in [[0.13, -0.77], [-1.99, 1.49], [1.234, 0.0]] {
            assert!((cubic_sample(&f, &x) - poly(&x)).norm() < 1e-12);
        }
        assert_eq!(cubic_sample(&f, &[2.01, 0.0]), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn one_dimensional_smooth_function() {
        let g = Arc::new(make_uniform_grid(1, &[4.0], &[321]).unwrap());
        let f = LatticeField::from_fn(g, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0));
        for k in 0..50 {
            let x = -3.9 + 0.1567 * k as f64;
            assert!((cubic_sample(&f, &[x]).re - (-x * x).exp()).abs() < 1e-7);
        }
    }
}

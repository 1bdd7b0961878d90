use std::sync::Arc;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use restriction_lab::extend::{extend_parab_at, lebesgue_norm};
use restriction_lab::grids::{make_sphere_grid, make_uniform_grid, LatticeField};
use restriction_lab::profiles::{build_concentrated, conjugate_pair, ConcentrationSchedule, ProfilePair};

fn gaussian(halfwidth: f64, count: usize) -> LatticeField {
    let plane = Arc::new(make_uniform_grid(1, &[halfwidth], &[count]).unwrap());
    LatticeField::from_fn(plane, |x| Complex64::new((-x[0] * x[0]).exp(), 0.0))
}

#[test]
fn concentrated_norm_tends_to_profile_norm() {
    let phi = gaussian(3.75, 301);
    let pair = conjugate_pair(&phi, 0.6).unwrap();
    let grid = Arc::new(make_sphere_grid(1, 32768).unwrap());
    let schedule = ConcentrationSchedule::geometric(0.125, 0.5, 5).unwrap();
    for p in [1.5, 2.0, 3.0] {
        let target = (lebesgue_norm(&pair.phi_plus, p).unwrap().powf(p) + lebesgue_norm(&pair.phi_minus, p).unwrap().powf(p))
            .powf(1.0 / p);
        let norms: Vec<f64> = schedule
            .lambdas()
            .iter()
            .map(|&l| lebesgue_norm(&build_concentrated(&pair, l, &grid, p).unwrap(), p).unwrap())
            .collect();
        let last = *norms.last().unwrap();
        assert!((last / target - 1.0).abs() < 0.01, "p = {p}: {last} vs {target}");
    }
}

#[test]
fn real_even_profile_is_its_own_conjugate() {
    let phi = gaussian(3.0, 121);
    let pair = conjugate_pair(&phi, 1.0).unwrap();
    assert_eq!(pair.phi_minus, phi);
    let single = ProfilePair::single(phi);
    assert_eq!(single.t, 0.0);
}

#[test]
fn conjugate_extension_relation_at_random_points() {
    let phi = gaussian(4.0, 161);
    let pair = conjugate_pair(&phi, 0.5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    let points: Vec<Vec<f64>> = (0..20).map(|_| vec![rng.gen_range(-6.0..6.0), rng.gen_range(-6.0..6.0)]).collect();
    let reflected: Vec<Vec<f64>> = points.iter().map(|x| vec![-x[0], x[1]]).collect();
    let minus = extend_parab_at(&pair.phi_minus, &points).unwrap();
    let plus = extend_parab_at(&phi, &reflected).unwrap();
    for (m, p) in minus.iter().zip(&plus) {
        assert!((m - 0.5 * p.conj()).norm() < 1e-10);
    }
}

use std::f64::consts::PI;

use restriction_lab::constants::{
    alpha, alpha_ratio, beta, circle_average_at_one, circle_average_phi, maximize_alpha_ratio, scaling_exponents,
    AlphaSearch,
};
use restriction_lab::exponent::ExponentPair;

/// (1/2π)∫|2cos(θ/2)|^q dθ by composite Simpson on a fine mesh; independent
/// of the trapezoid rule used by the library.
fn simpson_circle_mean(q: f64) -> f64 {
    let n = 200_000;
    let h = 2.0 * PI / n as f64;
    let f = |th: f64| (2.0 * (0.5 * th).cos()).abs().powf(q);
    let mut s = f(0.0) + f(2.0 * PI);
    for k in 1..n {
        s += if k % 2 == 1 { 4.0 } else { 2.0 } * f(k as f64 * h);
    }
    s * h / 3.0 / (2.0 * PI)
}

#[test]
fn scaling_line_examples() {
    assert_eq!(scaling_exponents(2.0, 1).unwrap().0, 6.0);
    assert_eq!(scaling_exponents(2.0, 2).unwrap().0, 4.0);
    let (q, pt, r) = scaling_exponents(1.5, 1).unwrap();
    assert!((q - 9.0).abs() < 1e-14 && (pt - 3.0).abs() < 1e-14 && r == 2.0);
    let pair = ExponentPair::new(1, 1.5, 9.0).unwrap();
    assert!(pair.on_scaling_line());
    assert!(!ExponentPair::new(1, 1.5, 9.0 + 1e-9).unwrap().on_scaling_line());
}

#[test]
fn circle_average_closed_form_against_simpson() {
    for q in [4.0, 5.0, 6.0, 7.5, 9.0] {
        let simpson = simpson_circle_mean(q).powf(1.0 / q);
        assert!((circle_average_at_one(q) - simpson).abs() < 1e-10, "q = {q}");
        assert!((circle_average_phi(1.0, q, 65536).unwrap() - simpson).abs() < 1e-10, "q = {q}");
    }
    assert!((circle_average_phi(1.0, 6.0, 4096).unwrap() - 2.0 * (5.0f64 / 16.0).powf(1.0 / 6.0)).abs() < 1e-10);
    assert_eq!(circle_average_phi(0.0, 6.0, 64).unwrap(), 1.0);
}

#[test]
fn circle_average_is_nondecreasing_in_t() {
    for q in [1.5, 3.0, 6.0] {
        let v: Vec<f64> = (0..=100).map(|k| circle_average_phi(k as f64 / 100.0, q, 8192).unwrap()).collect();
        assert!(v.windows(2).all(|w| w[1] >= w[0] - 1e-14), "q = {q}");
    }
}

#[test]
fn beta_examples() {
    assert!((beta(2.0, 6.0).unwrap() - 2f64.sqrt() * (5.0f64 / 16.0).powf(1.0 / 6.0)).abs() < 1e-12);
    assert!((beta(2.0, 4.0).unwrap() - 2f64.sqrt() * (3.0f64 / 8.0).powf(0.25)).abs() < 1e-12);
    assert_eq!(beta(1.5, 7.0).unwrap(), beta(1.9, 7.0).unwrap());
}

#[test]
fn alpha_examples() {
    let search = AlphaSearch::default();
    let a = alpha(1, 2.0, 6.0, &search).unwrap();
    assert!((a.value - 2f64.sqrt() * (5.0f64 / 16.0).powf(1.0 / 6.0)).abs() < 1e-8);
    assert!((a.argmax_t - 1.0).abs() < 1e-6);
    let a = alpha(1, 1.5, 9.0, &search).unwrap();
    assert!(a.value < beta(1.5, 9.0).unwrap() - 1e-6);
    assert!(alpha(1, 2.0, 5.0, &search).is_err());
    let unchecked = maximize_alpha_ratio(1.0, 6.0, &search).unwrap();
    assert!(unchecked.value >= 1.0);
    assert_eq!(alpha_ratio(0.0, 1.0, 6.0, 64).unwrap(), 1.0);
}

use std::sync::Arc;

use num_complex::Complex64;
use proptest::prelude::*;

use restriction_lab::capdecomp::{additivity_residual, chip_decompose, default_caps};
use restriction_lab::extend::lebesgue_norm;
use restriction_lab::grids::{enumerate_caps, make_sphere_grid, SphereField};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn chips_reassemble_and_split_the_norm(
        v in prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), 256),
        p in 1.0f64..4.0,
        levels in 1usize..10,
    ) {
        let grid = Arc::new(make_sphere_grid(1, 256).unwrap());
        let f = SphereField::new(grid.clone(), v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).unwrap();
        let caps = default_caps(&grid).unwrap();
        let dec = chip_decompose(&f, p, levels, &caps).unwrap();
        prop_assert!(additivity_residual(&dec) < 1e-12);
        prop_assert_eq!(dec.reassembly_error(), 0.0);
        let norms = dec.remainder_norms();
        prop_assert!(norms.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-14)));
        for (c, best) in dec.chips.iter().zip(dec.best_alternative_norms(&caps)) {
            prop_assert!(c.norm_p >= best * (1.0 - 1e-14));
        }
    }
}

#[test]
fn bump_in_one_fine_cap_is_captured_first() {
    let grid = Arc::new(make_sphere_grid(1, 4096).unwrap());
    let caps = enumerate_caps(1, 2, 4).unwrap();
    // a level-4 cap on the first axis and the centre of its cube
    let host = caps.iter().find(|c| c.level == 4 && c.axis == 0 && c.corner == vec![15, 0]).unwrap().clone();
    let s = host.sidelength();
    let (a0, a1) = (15.0 * s, 16.0 * s);
    let f = SphereField::from_fn(grid.clone(), |w| {
        // flat-topped bump in ω₁ inside (0, s) on the sheet where ω₀ ∈ [15s, 16s)
        let x = w[1] / s;
        if w[0] >= a0 && w[0] < a1 && x > 0.0 && x < 1.0 {
            Complex64::new((4.0 * x * (1.0 - x)).powf(0.25), 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    let p = 2.0;
    let fmax = f.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let f_norm = lebesgue_norm(&f, p).unwrap();
    // first level whose threshold admits the whole bump in the host cap
    let admit = 2.0 * f_norm * host.measure().powf(-1.0 / p);
    assert!(admit > fmax, "threshold {admit} must exceed max|f| = {fmax}");
    let dec = chip_decompose(&f, p, 3, &caps).unwrap();
    let share = dec.chips[0].norm_p.powf(p) / f_norm.powf(p);
    assert!(share >= 0.9, "first chip share {share}");
}

#[test]
fn zero_field_has_zero_residual() {
    let grid = Arc::new(make_sphere_grid(1, 256).unwrap());
    let caps = default_caps(&grid).unwrap();
    let dec = chip_decompose(&SphereField::zeros(grid), 1.5, 3, &caps).unwrap();
    assert_eq!(additivity_residual(&dec), 0.0);
}

// α_{p,q} and β_{p,q} along the scaling line for d = 1.

use restriction_lab::constants::{alpha, beta, circle_average_at_one, scaling_exponents, AlphaSearch};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let search = AlphaSearch { scan_points: 401, ..AlphaSearch::default() };
    println!("{:>5} {:>9} {:>14} {:>14} {:>12}", "p", "q", "alpha", "beta", "argmax t");
    for p in [1.5, 1.8, 2.0, 2.2] {
        let (q, _, _) = scaling_exponents(p, 1)?;
        let a = alpha(1, p, q, &search)?;
        let b = beta(p, q)?;
        println!("{p:>5} {q:>9.4} {:>14.10} {b:>14.10} {:>12.8}", a.value, a.argmax_t);
        if p >= 2.0 {
            assert!((a.value - b).abs() < 1e-8);
        } else {
            assert!(a.value < b);
        }
    }
    println!("Phi_6(1) = {:.12}", circle_average_at_one(6.0));
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}

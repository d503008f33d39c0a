//! Solve every eigenvalue of A(1/2, 32) by fixed-point iteration.
//!
//! cargo run --example solve_spectrum -- 0.5 32

use corner_toeplitz::report::parse_complex;
use corner_toeplitz::{make_gamma, solve_spectrum, IterationConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let gamma = parse_complex(&args.next().unwrap_or_else(|| "0.5".into()))?;
    let n: usize = args.next().map(|s| s.parse()).transpose()?.unwrap_or(32);

    let g = make_gamma(gamma)?;
    let spec = solve_spectrum(&g, n, &IterationConfig::default())?;
    println!("gamma = {gamma}, n = {n}, strip half-width {:.6}", g.delta());
    println!(
        "certified order: {} (threshold {:.1})",
        g.is_certified_order(n),
        g.n_threshold()
    );
    println!(
        "{:>4} {:>24} {:>24} {:>5} {:>10}",
        "j", "Re lambda", "Im lambda", "iter", "residual"
    );
    for e in spec.entries() {
        println!(
            "{:>4} {:>24.16e} {:>24.16e} {:>5} {:>10.2e}",
            e.j, e.lambda.re, e.lambda.im, e.iterations, e.charpoly_residual
        );
    }
    println!("min separation {:.3e}", spec.min_separation());
    Ok(())
}

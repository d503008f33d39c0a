//! Localization disks and the sampled contraction certificate, certified
//! and below the threshold order.

use corner_toeplitz::make_gamma;
use corner_toeplitz::solver::{contraction_certificate, iterate_fixed_point, BallDescriptor, IterationConfig};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_gamma(Complex64::new(0.5, 0.0))?;
    println!(
        "threshold order {:.0}, disk constant {:.6}",
        g.n_threshold(),
        g.m_ball()
    );
    for n in [64usize, 128, 512] {
        let j = n / 3;
        let ball = BallDescriptor::new(&g, n, j)?;
        let cert = contraction_certificate(&g, n, j)?;
        let strict = IterationConfig {
            enforce_contraction: true,
            ..IterationConfig::default()
        };
        let sol = iterate_fixed_point(&g, n, j, &strict)?;
        println!(
            "n = {n:>4}, j = {j:>3}: radius {:.3e}, sup |f'| = {:.4} (guaranteed {}), {} iterations, |s - p| = {:.3e}",
            ball.radius,
            cert.sup_ratio,
            cert.guaranteed,
            sol.iterations,
            (sol.s - ball.center).norm()
        );
    }
    let sol = iterate_fixed_point(&g, 8, 3, &IterationConfig::default())?;
    println!(
        "n = 8 (below threshold): converged in {} iterations, certified = {}",
        sol.iterations, sol.certified
    );
    Ok(())
}

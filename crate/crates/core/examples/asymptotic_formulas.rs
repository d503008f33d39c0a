//! Closed-form eigenvalue approximations against the fixed-point values:
//! uniform expansion, extreme expansions near +-2i, and the small-gamma
//! expansion of the similar matrix.

use corner_toeplitz::asymptotics::{
    cf_estimate, lambda_asymptotic, lambda_extreme_high, lambda_extreme_low, s_asymptotic, ExpansionOrder,
};
use corner_toeplitz::{make_gamma, solve_spectrum, IterationConfig};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_gamma(Complex64::new(0.0, 1.0 / 3.0))?;
    let n = 256;
    let spec = solve_spectrum(&g, n, &IterationConfig::default())?;
    for j in [1, 2, 3, n / 2, n - 2, n - 1, n] {
        let exact = spec.get(j).ok_or("missing index")?;
        let uni = (lambda_asymptotic(&g, n, j)? - exact.lambda).norm();
        let low = (lambda_extreme_low(&g, n, j)? - exact.lambda).norm();
        let high = (lambda_extreme_high(&g, n, j)? - exact.lambda).norm();
        let s0 = (s_asymptotic(&g, n, j, ExpansionOrder::Zero)? - exact.s).norm();
        let s2 = (s_asymptotic(&g, n, j, ExpansionOrder::Two)? - exact.s).norm();
        println!(
            "j = {j:>3}: uniform {uni:.2e}, near 2i {low:.2e}, near -2i {high:.2e}; s order 0 {s0:.2e}, order 2 {s2:.2e}"
        );
    }
    let cf = cf_estimate(&g, n, 1)?;
    println!(
        "small-gamma expansion for j = 1: {:.12}, coefficients {:?}",
        cf.mu_asympt, cf.coefficients
    );
    Ok(())
}

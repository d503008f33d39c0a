//! Eigenvectors from the trigonometric formula, their closed-form norms and
//! residuals against the matrix.

use corner_toeplitz::eigvec::{eigenvector_components, NormCoefficients};
use corner_toeplitz::{make_gamma, solve_spectrum, IterationConfig};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_gamma(Complex64::new(0.5, 0.0))?;
    let n = 16;
    let spec = solve_spectrum(&g, n, &IterationConfig::default())?;
    println!(
        "{:>3} {:>14} {:>14} {:>10} {:>10}",
        "j", "closed |v|^2", "direct |v|^2", "rel gap", "residual"
    );
    for sol in spec.entries() {
        let v = eigenvector_components(&g, n, sol)?;
        println!(
            "{:>3} {:>14.8} {:>14.8} {:>10.2e} {:>10.2e}",
            sol.j,
            v.norm_sq_closed,
            v.norm_sq_direct,
            (v.norm_sq_closed - v.norm_sq_direct).abs() / v.norm_sq_direct,
            v.eigen_residual
        );
    }
    let mid = spec.get(n / 2).ok_or("missing index")?;
    println!(
        "norm coefficients at j = {}: {:?}",
        mid.j,
        NormCoefficients::new(g.value(), mid.s)
    );
    let unit = eigenvector_components(&g, n, mid)?.normalized();
    println!(
        "first components of the unit vector: {:.6} {:.6} {:.6}",
        unit[0], unit[1], unit[2]
    );
    Ok(())
}

//! The phase function on its strip: three equivalent expressions, its
//! derivative against a finite difference, and the sup bounds.

use std::f64::consts::PI;

use corner_toeplitz::make_gamma;
use corner_toeplitz::symbol::{
    psi, q_gamma, theta, theta_bound, theta_log_quotient, theta_prime, theta_prime_bound, theta_real_axis,
};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = make_gamma(Complex64::new(0.4, -5.0 / 6.0))?;
    println!("gamma = {}, delta = {:.6}", g.value(), g.delta());
    println!(
        "|theta| <= {:.4}, |theta'| <= {:.4} on |Im z| <= delta/2",
        theta_bound(&g),
        theta_prime_bound(&g)
    );

    for k in 1..=5 {
        let x = k as f64 * PI / 6.0;
        let z = Complex64::new(x, 0.25 * g.delta());
        let a = theta(&g, z)?;
        let b = theta_log_quotient(&g, z)?;
        let c = theta_real_axis(&g, x)?;
        let h = 1e-5;
        let fd = (theta(&g, z + h)? - theta(&g, z - h)?) / (2.0 * h);
        println!(
            "x = {x:.4}: theta = {a:.12}, |log-quotient gap| = {:.1e}, on axis {c:.12}, |theta' - fd| = {:.1e}, |Q| = {:.4}, psi = {:.6}",
            (a - b).norm(),
            (theta_prime(&g, z)? - fd).norm(),
            q_gamma(&g, z)?.norm(),
            psi(z),
        );
    }
    Ok(())
}

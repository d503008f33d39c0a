//! The characteristic polynomial evaluated four ways at the same points,
//! plus the exclusion of the points +-2i.

use corner_toeplitz::charpoly::{
    charpoly_chebyshev, charpoly_recurrence, charpoly_trig, charpoly_trig_alt, not_eigenvalue_check,
    unperturbed_eigenvalues,
};
use corner_toeplitz::oracle::charpoly_coefficients;
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let gamma = Complex64::new(0.0, 1.0 / 3.0);
    let n = 12;
    let coeffs = charpoly_coefficients(gamma, n)?;
    for k in 1..=4 {
        let z = Complex64::new(0.6 * k as f64, 0.02 * k as f64);
        let lambda = 2.0 * Complex64::i() * z.cos();
        println!("z = {z:.3}");
        println!("  chebyshev    {:.12e}", charpoly_chebyshev(gamma, n, lambda));
        println!("  recurrence   {:.12e}", charpoly_recurrence(gamma, n, lambda));
        println!("  coefficients {:.12e}", coeffs.evaluate(lambda));
        println!("  trig         {:.12e}", charpoly_trig(gamma, n, z)?);
        println!("  trig (alt)   {:.12e}", charpoly_trig_alt(gamma, n, z)?);
    }
    let (p, m) = not_eigenvalue_check(gamma, n);
    println!("|D(2i)| = {p:.4}, |D(-2i)| = {m:.4}");
    println!("unperturbed spectrum for n = 5: {:?}", unperturbed_eigenvalues(5));
    Ok(())
}

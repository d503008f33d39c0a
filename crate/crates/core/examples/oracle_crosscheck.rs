//! Fixed-point spectrum against the roots of the characteristic polynomial,
//! and the similar matrix B whose eigenvalues are i lambda.

use corner_toeplitz::asymptotics::b_similarity_spectrum;
use corner_toeplitz::oracle::{
    charpoly_coefficients, find_roots, match_lists, match_spectra, oracle_eigenvalues, similarity_b_dense,
    tridiagonal_charpoly_coefficients,
};
use corner_toeplitz::{make_gamma, solve_spectrum, IterationConfig};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (gamma, n) in [(Complex64::new(0.5, 0.0), 16), (Complex64::new(0.4, -5.0 / 6.0), 24)] {
        let g = make_gamma(gamma)?;
        let spec = solve_spectrum(&g, n, &IterationConfig::default())?;
        let report = match_spectra(&oracle_eigenvalues(gamma, n)?, &spec)?;
        println!(
            "gamma = {gamma}, n = {n}: max distance {:.3e}, success {}",
            report.max_distance,
            report.is_success()
        );
    }
    let coeffs = charpoly_coefficients(Complex64::new(0.3, 0.1), 4)?;
    println!("coefficients for n = 4: {:?}", coeffs.coeffs());
    println!("raw roots: {:?}", find_roots(&coeffs)?);

    let gamma = Complex64::new(0.0, 1.0 / 3.0);
    let spec = solve_spectrum(&make_gamma(gamma)?, 8, &IterationConfig::default())?;
    let b = similarity_b_dense(gamma, 8)?;
    let roots = find_roots(&tridiagonal_charpoly_coefficients(&b)?)?;
    let report = match_lists(&roots, &b_similarity_spectrum(&spec))?;
    println!("B(i/3, 8) against i lambda: max distance {:.3e}", report.max_distance);
    Ok(())
}

//! The change of variables `lambda = psi(z)` and the phase function
//! `theta(z) = -(i/2) ln Q(z)` with `Q(z) = (1 + i g e^{iz}) / (1 + i g e^{-iz})`.
//!
//! `theta` is analytic on the strip `|Im z| < ln(1/|g|)`; both factors of `Q`
//! have positive real part there, so their principal logarithms never touch
//! the branch cut and the difference-of-logs form is used for evaluation.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::GammaParameter;

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Guard band for strip membership.
pub const STRIP_GUARD: f64 = 1e-12;

/// `psi(z) = i (e^{iz} + e^{-iz}) = 2i cos z`.
pub fn psi(z: Complex64) -> Complex64 {
    2.0 * I * z.cos()
}

/// `psi'(z) = -2i sin z`.
pub fn psi_prime(z: Complex64) -> Complex64 {
    -2.0 * I * z.sin()
}

/// `psi''(z) = -2i cos z`.
pub fn psi_second(z: Complex64) -> Complex64 {
    -2.0 * I * z.cos()
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StripPoint {
    pub z: Complex64,
    /// `|Im z| <= delta/2`, the region where the sup bounds hold.
    pub in_half_strip: bool,
    /// `|Im z| < delta`, the domain of `theta`.
    pub in_full_strip: bool,
}

impl StripPoint {
    pub fn classify(g: &GammaParameter, z: Complex64) -> Self {
        let y = z.im.abs();
        let in_full_strip = in_domain(g, z);
        Self {
            z,
            in_half_strip: in_full_strip && y <= 0.5 * g.delta(),
            in_full_strip,
        }
    }
}

pub(crate) fn in_domain(g: &GammaParameter, z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite() && z.im.abs() < g.delta() - STRIP_GUARD
}

/// Region where both factors `1 + i gamma e^{+-iz}` have positive real
/// part. It contains the strip, and the principal logarithms defining
/// `theta` stay analytic on it; small orders can have roots here that lie
/// outside the strip.
pub(crate) fn in_iteration_domain(g: &GammaParameter, z: Complex64) -> bool {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return false;
    }
    let (a, b) = q_factors(g, z);
    a.re > STRIP_GUARD && b.re > STRIP_GUARD
}

fn check_domain(g: &GammaParameter, z: Complex64) -> Result<()> {
    if in_domain(g, z) {
        Ok(())
    } else {
        Err(Error::Domain {
            z,
            half_width: g.delta(),
        })
    }
}

/// Numerator and denominator of `Q`: `1 + i g e^{iz}` and `1 + i g e^{-iz}`.
pub(crate) fn q_factors(g: &GammaParameter, z: Complex64) -> (Complex64, Complex64) {
    let ig = I * g.value();
    let e = (I * z).exp();
    (1.0 + ig * e, 1.0 + ig / e)
}

pub fn q_gamma(g: &GammaParameter, z: Complex64) -> Result<Complex64> {
    check_domain(g, z)?;
    let (num, den) = q_factors(g, z);
    Ok(num / den)
}

pub(crate) fn theta_unchecked(g: &GammaParameter, z: Complex64) -> Complex64 {
    let (num, den) = q_factors(g, z);
    -0.5 * I * (num.ln() - den.ln())
}

/// Phase function via the difference of principal logarithms.
pub fn theta(g: &GammaParameter, z: Complex64) -> Result<Complex64> {
    check_domain(g, z)?;
    Ok(theta_unchecked(g, z))
}

/// Phase function via the principal logarithm of the quotient `Q(z)`.
///
/// Agrees with [`theta`] on the strip; kept as an independent evaluation
/// route for cross-checks.
pub fn theta_log_quotient(g: &GammaParameter, z: Complex64) -> Result<Complex64> {
    let q = q_gamma(g, z)?;
    Ok(-0.5 * I * q.ln())
}

pub(crate) fn theta_prime_unchecked(g: &GammaParameter, z: Complex64) -> Complex64 {
    let gv = g.value();
    let c = z.cos();
    let g2 = gv * gv;
    (I * gv * c - g2) / (1.0 + 2.0 * I * gv * c - g2)
}

/// `theta'(z) = (i g cos z - g^2) / (1 + 2 i g cos z - g^2)`.
pub fn theta_prime(g: &GammaParameter, z: Complex64) -> Result<Complex64> {
    check_domain(g, z)?;
    Ok(theta_prime_unchecked(g, z))
}

/// `theta'` with the denominator written as the product of the two factors
/// of `Q`.
pub fn theta_prime_factored(g: &GammaParameter, z: Complex64) -> Result<Complex64> {
    check_domain(g, z)?;
    let gv = g.value();
    let (num, den) = q_factors(g, z);
    Ok((I * gv * z.cos() - gv * gv) / (num * den))
}

/// Real and imaginary parts of `theta(x)` for real `x` in `[0, pi]`,
/// assembled from arctangents of the factor arguments and the logarithm of
/// the modulus ratio.
pub fn theta_real_axis(g: &GammaParameter, x: f64) -> Result<Complex64> {
    if !(0.0..=PI).contains(&x) {
        return Err(Error::Range(x));
    }
    let (a, b) = (g.value().re, g.value().im);
    let (sx, cx) = x.sin_cos();
    let arg_num = ((a * cx - b * sx) / (1.0 - a * sx - b * cx)).atan();
    let arg_den = ((a * cx + b * sx) / (1.0 + a * sx - b * cx)).atan();
    let r2 = g.value().norm_sqr();
    let mod_ratio = (1.0 + r2 - 2.0 * b * cx + 2.0 * a * sx) / (1.0 + r2 - 2.0 * b * cx - 2.0 * a * sx);
    Ok(Complex64::new(0.5 * (arg_num - arg_den), 0.25 * mod_ratio.ln()))
}

/// Sup bound of `|theta|` on the half strip: `4 / (1 - |g|)`.
pub fn theta_bound(g: &GammaParameter) -> f64 {
    g.m0()
}

/// Sup bound of `|theta'|` on the half strip: `8 sqrt|g| / (1 - |g|)^2`.
pub fn theta_prime_bound(g: &GammaParameter) -> f64 {
    g.m1()
}

/// Largest `|Re theta|` can reach on the strip.
pub const THETA_REAL_PART_BOUND: f64 = FRAC_PI_2;

//! Closed-form eigenvalue estimates and the error metrics that compare them
//! with the fixed-point spectrum.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::charpoly::charpoly_at_psi;
use crate::error::{Error, Result};
use crate::params::{grid_point, EigenSolution, GammaParameter, Provenance, Spectrum};
use crate::symbol::{psi, psi_prime, psi_second, theta_prime_unchecked, theta_unchecked};

const I: Complex64 = Complex64::new(0.0, 1.0);

fn theta_pair(g: &GammaParameter, d: f64) -> (Complex64, Complex64) {
    let z = Complex64::new(d, 0.0);
    (theta_unchecked(g, z), theta_prime_unchecked(g, z))
}

/// Second-order eigenvalue approximation
/// `psi(d) + psi'(d) t/(n+1) + (psi'(d) t t' + psi''(d) t^2/2)/(n+1)^2`
/// with `t = theta(d)`, `t' = theta'(d)`, `d = j pi/(n+1)`. The error is
/// `O(1/n^3)` uniformly in `j`.
pub fn lambda_asymptotic(g: &GammaParameter, n: usize, j: usize) -> Result<Complex64> {
    let d = grid_point(n, j)?.d;
    let (t, tp) = theta_pair(g, d);
    let z = Complex64::new(d, 0.0);
    let m = n as f64 + 1.0;
    let p1 = psi_prime(z);
    Ok(psi(z) + p1 * t / m + (p1 * t * tp + 0.5 * psi_second(z) * t * t) / (m * m))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ExpansionOrder {
    /// `s ~ d`, error `O(1/n)`.
    Zero,
    /// `s ~ d + theta(d)/(n+1)`, error `O(1/n^2)`.
    One,
    /// adds `theta(d) theta'(d)/(n+1)^2`, error `O(1/n^3)`.
    Two,
}

pub fn s_asymptotic(g: &GammaParameter, n: usize, j: usize, order: ExpansionOrder) -> Result<Complex64> {
    let d = grid_point(n, j)?.d;
    let m = n as f64 + 1.0;
    let (t, tp) = theta_pair(g, d);
    let z = Complex64::new(d, 0.0);
    Ok(match order {
        ExpansionOrder::Zero => z,
        ExpansionOrder::One => z + t / m,
        ExpansionOrder::Two => z + t / m + t * tp / (m * m),
    })
}

pub fn s_asymptotic_order2(g: &GammaParameter, n: usize, j: usize) -> Result<Complex64> {
    s_asymptotic(g, n, j, ExpansionOrder::Two)
}

/// Expansion near `2i`, accurate to `O((j/n)^4)`:
/// `2i - i pi^2 j^2/(n+1)^2 + 2 gamma/(1 + i gamma) pi^2 j^2/(n+1)^3`.
pub fn lambda_extreme_low(g: &GammaParameter, n: usize, j: usize) -> Result<Complex64> {
    grid_point(n, j)?;
    let m = n as f64 + 1.0;
    let jj = (j * j) as f64;
    let gv = g.value();
    Ok(2.0 * I - I * PI * PI * jj / (m * m) + 2.0 * gv / (1.0 + I * gv) * PI * PI * jj / (m * m * m))
}

/// Expansion near `-2i`, accurate to `O((1 - j/(n+1))^4)`:
/// `-2i + i pi^2 u^2 + 2 gamma pi^2/(1 - i gamma) u^2/(n+1)` with
/// `u = 1 - j/(n+1)`.
pub fn lambda_extreme_high(g: &GammaParameter, n: usize, j: usize) -> Result<Complex64> {
    grid_point(n, j)?;
    let m = n as f64 + 1.0;
    let u = 1.0 - j as f64 / m;
    let gv = g.value();
    Ok(-2.0 * I + I * PI * PI * u * u + 2.0 * gv * PI * PI / (1.0 - I * gv) * u * u / m)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticEstimate {
    pub j: usize,
    pub lambda_asympt: Complex64,
    pub lambda_ext0: Complex64,
    pub lambda_ext1: Complex64,
    pub s_order2: Complex64,
}

impl AsymptoticEstimate {
    pub fn new(g: &GammaParameter, n: usize, j: usize) -> Result<Self> {
        Ok(Self {
            j,
            lambda_asympt: lambda_asymptotic(g, n, j)?,
            lambda_ext0: lambda_extreme_low(g, n, j)?,
            lambda_ext1: lambda_extreme_high(g, n, j)?,
            s_order2: s_asymptotic_order2(g, n, j)?,
        })
    }
}

/// Small-`|gamma|` expansion of the eigenvalues of the similar matrix
/// `B` (eigenvalues `i lambda`), valid for purely imaginary `gamma`:
/// `mu = c0 + i g c1 - g^2 c2 - i g^3 c3 + g^4 c4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CfEstimate {
    pub mu_asympt: Complex64,
    pub coefficients: [f64; 5],
}

pub fn cf_coefficients(n: usize, j: usize) -> Result<[f64; 5]> {
    let d = grid_point(n, j)?.d;
    let (s, c) = d.sin_cos();
    let s2 = s * s;
    let nf = n as f64;
    let m = nf + 1.0;
    Ok([
        2.0 * c,
        2.0 * s2 / m,
        (2.0 * nf - 1.0) * s2 * c / m.powi(2),
        2.0 * nf * (nf - 1.0) * s2 * (4.0 * c * c - 1.0) / (3.0 * m.powi(3)),
        (2.0 * nf - 3.0) * (12.0 * nf * nf * (2.0 * c * c - 1.0) + (2.0 * nf + 1.0) * s2) * s2 * c / (12.0 * m.powi(4)),
    ])
}

pub fn cf_estimate(g: &GammaParameter, n: usize, j: usize) -> Result<CfEstimate> {
    if !g.is_imaginary() {
        return Err(Error::NotApplicable("expansion requires gamma on the imaginary axis"));
    }
    let c = cf_coefficients(n, j)?;
    let gv = g.value();
    let g2 = gv * gv;
    let mu = c[0] + I * gv * c[1] - g2 * c[2] - I * g2 * gv * c[3] + g2 * g2 * c[4];
    Ok(CfEstimate {
        mu_asympt: mu,
        coefficients: c,
    })
}

/// Eigenvalues `i lambda_j` of `B = i J A J^{-1}`, `J = diag(i, i^2, ...)`.
pub fn b_similarity_spectrum(spec: &Spectrum) -> Vec<Complex64> {
    spec.entries().iter().map(|e| I * e.lambda).collect()
}

/// `max_j |lambda_asympt(j) - lambda(j)|` against a reference spectrum.
pub fn max_asymptotic_error(spec: &Spectrum) -> Result<f64> {
    let g = spec.gamma();
    let mut worst = 0.0f64;
    for e in spec.entries() {
        worst = worst.max((lambda_asymptotic(g, spec.n(), e.j)? - e.lambda).norm());
    }
    Ok(worst)
}

/// `|lambda_ext0(j) - lambda(j)|`.
pub fn extreme_error_low(spec: &Spectrum, j: usize) -> Result<f64> {
    let e = entry(spec, j)?;
    Ok((lambda_extreme_low(spec.gamma(), spec.n(), j)? - e.lambda).norm())
}

/// `|lambda_ext1(j) - lambda(j)|`.
pub fn extreme_error_high(spec: &Spectrum, j: usize) -> Result<f64> {
    let e = entry(spec, j)?;
    Ok((lambda_extreme_high(spec.gamma(), spec.n(), j)? - e.lambda).norm())
}

fn entry(spec: &Spectrum, j: usize) -> Result<&EigenSolution> {
    spec.get(j).ok_or(Error::IndexOutOfRange { n: spec.n(), j })
}

/// `max_j |mu_asympt(j) - i lambda(n+1-j)|`.
///
/// `c0 = 2 cos(d_j)` while `i lambda_j ~ -2 cos(d_j)`, so the expansion for
/// index `j` describes the eigenvalue of index `n+1-j`.
pub fn cf_max_error(spec: &Spectrum) -> Result<f64> {
    let n = spec.n();
    let b = b_similarity_spectrum(spec);
    let mut worst = 0.0f64;
    for j in 1..=n {
        let mu = cf_estimate(spec.gamma(), n, j)?.mu_asympt;
        worst = worst.max((mu - b[n - j]).norm());
    }
    Ok(worst)
}

/// Spectrum assembled from the closed forms: `s` from the second-order
/// expansion and `lambda` from [`lambda_asymptotic`].
pub fn asymptotic_spectrum(g: &GammaParameter, n: usize) -> Result<Spectrum> {
    let m = n as f64 + 1.0;
    let entries = (1..=n)
        .map(|j| {
            let s = s_asymptotic_order2(g, n, j)?;
            let f = Complex64::new(j as f64 * PI / m, 0.0) + theta_unchecked(g, s) / m;
            Ok(EigenSolution {
                j,
                s,
                lambda: lambda_asymptotic(g, n, j)?,
                iterations: 0,
                fp_residual: (s - f).norm(),
                charpoly_residual: charpoly_at_psi(g.value(), n, s).norm(),
                certified: g.is_certified_order(n),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Spectrum::new(*g, n, entries, Provenance::Asymptotic)
}

//! Eigenvectors `v_k = (-i)^k (sin(k s) + i gamma sin((k-1) s))` and their
//! closed-form squared norms.

use num_complex::Complex64;
use serde::Serialize;

use crate::charpoly::{chebyshev_pair, i_pow, PerturbedMatrix};
use crate::error::{Error, Result};
use crate::params::{EigenSolution, GammaParameter};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this `|Im s|` the hyperbolic quotients switch to their limits.
pub const FLAT_IMAG_GUARD: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormCoefficients {
    /// `1 + i gamma cos s`
    pub mu: Complex64,
    /// `i gamma sin s`
    pub nu: Complex64,
    /// `(i - gamma cos s) conj(gamma sin s)`
    pub xi: Complex64,
}

impl NormCoefficients {
    pub fn new(gamma: Complex64, s: Complex64) -> Self {
        let (sn, cs) = (s.sin(), s.cos());
        Self {
            mu: 1.0 + I * gamma * cs,
            nu: I * gamma * sn,
            xi: (I - gamma * cs) * (gamma * sn).conj(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Eigenvector {
    pub j: usize,
    pub components: Vec<Complex64>,
    pub norm_sq_closed: f64,
    pub norm_sq_direct: f64,
    /// `||A v - lambda v||_2 / ||v||_2`
    pub eigen_residual: f64,
    /// `eigen_residual / ||A||_inf`
    pub scaled_residual: f64,
}

impl Eigenvector {
    /// Components scaled to unit 2-norm.
    pub fn normalized(&self) -> Vec<Complex64> {
        let scale = 1.0 / self.norm_sq_direct.sqrt();
        self.components.iter().map(|v| v * scale).collect()
    }
}

/// Components from the trigonometric formula, `k = 1..=n`.
pub fn trig_components(gamma: Complex64, n: usize, s: Complex64) -> Vec<Complex64> {
    (1..=n)
        .map(|k| {
            let kf = k as f64;
            i_pow(-(k as i64)) * ((kf * s).sin() + I * gamma * ((kf - 1.0) * s).sin())
        })
        .collect()
}

/// Components `(-i)^{k+2} (U_{k-1}(x) + i gamma U_{k-2}(x))` with
/// `x = -i lambda/2`. Equal to the trigonometric components divided by
/// `-sin(s)` when `lambda = psi(s)`.
pub fn chebyshev_components(gamma: Complex64, n: usize, lambda: Complex64) -> Vec<Complex64> {
    let x = -0.5 * I * lambda;
    let two_x = 2.0 * x;
    // (U_{k-1}, U_{k-2}) starting from k = 1: (U_0, U_{-1})
    let (mut cur, mut prev) = chebyshev_pair(0, x);
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        out.push(i_pow(-(k as i64) - 2) * (cur + I * gamma * prev));
        let next = two_x * cur - prev;
        prev = cur;
        cur = next;
    }
    out
}

/// `sum_k |v_k|^2` from the closed formula in `alpha = Re s`, `beta = Im s`.
pub fn norm_closed_form(g: &GammaParameter, s: Complex64, n: usize) -> Result<f64> {
    let (alpha, beta) = (s.re, s.im);
    let sa = alpha.sin();
    if sa.abs() < 1e-12 {
        return Err(Error::Degenerate(sa));
    }
    let nf = n as f64;
    let coeff = NormCoefficients::new(g.value(), s);
    let (mu2, nu2) = (coeff.mu.norm_sqr(), coeff.nu.norm_sqr());

    // sum_{k=1}^n cos(2k alpha), sin(2k alpha)
    let cos_sum = (nf * alpha).sin() * ((nf + 1.0) * alpha).cos() / sa;
    let sin_sum = (nf * alpha).sin() * ((nf + 1.0) * alpha).sin() / sa;
    // sum_{k=1}^n cosh(2k beta), sinh(2k beta)
    let (cosh_sum, sinh_sum) = if beta.abs() < FLAT_IMAG_GUARD {
        (nf, nf * (nf + 1.0) * beta)
    } else {
        let sb = beta.sinh();
        (
            (nf * beta).sinh() * ((nf + 1.0) * beta).cosh() / sb,
            (nf * beta).sinh() * ((nf + 1.0) * beta).sinh() / sb,
        )
    };
    Ok(0.5 * (nu2 - mu2) * cos_sum + 0.5 * (nu2 + mu2) * cosh_sum + coeff.xi.re * sin_sum - coeff.xi.im * sinh_sum)
}

pub fn eigenvector_components(g: &GammaParameter, n: usize, sol: &EigenSolution) -> Result<Eigenvector> {
    let sn = sol.s.sin().norm();
    if sn < 1e-12 {
        return Err(Error::Degenerate(sn));
    }
    let components = trig_components(g.value(), n, sol.s);
    let norm_sq_direct: f64 = components.iter().map(|v| v.norm_sqr()).sum();
    let a = PerturbedMatrix::from_parameter(g, n)?;
    let av = a.matvec(&components)?;
    let res_sq: f64 = av
        .iter()
        .zip(&components)
        .map(|(x, v)| (x - sol.lambda * v).norm_sqr())
        .sum();
    let eigen_residual = (res_sq / norm_sq_direct).sqrt();
    Ok(Eigenvector {
        j: sol.j,
        norm_sq_closed: norm_closed_form(g, sol.s, n)?,
        norm_sq_direct,
        eigen_residual,
        scaled_residual: eigen_residual / a.norm_inf(),
        components,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_gamma;
    use crate::solver::{solve_spectrum, IterationConfig};
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn first_component() {
        let s = c(0.8, 0.05);
        let v = trig_components(c(0.3, 0.2), 5, s);
        assert!((v[0] + I * s.sin()).norm() < 1e-15);
    }

    #[test]
    fn unperturbed_limit_is_classical() {
        let n = 9;
        for j in 1..=n {
            let s = c(j as f64 * PI / (n as f64 + 1.0), 0.0);
            let v = trig_components(c(0.0, 0.0), n, s);
            let a = PerturbedMatrix::new(c(0.0, 0.0), n).unwrap();
            let av = a.matvec(&v).unwrap();
            let lam = 2.0 * I * s.cos();
            for (k, (x, y)) in av.iter().zip(&v).enumerate() {
                assert!((x - lam * y).norm() < 1e-14);
                let classical = i_pow(-(k as i64 + 1)) * ((k as f64 + 1.0) * s.re).sin();
                assert!((y - classical).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn residuals_half_gamma_16() {
        let g = make_gamma(c(0.5, 0.0)).unwrap();
        let spec = solve_spectrum(&g, 16, &IterationConfig::default()).unwrap();
        for sol in spec.entries() {
            let v = eigenvector_components(&g, 16, sol).unwrap();
            assert!(v.eigen_residual <= 1e-11);
            assert!(v.scaled_residual <= v.eigen_residual);
        }
    }

    #[test]
    fn trig_equals_minus_sin_times_chebyshev() {
        for gamma in [c(0.5, 0.0), c(0.4, -5.0 / 6.0), c(-0.2, 0.9)] {
            let g = make_gamma(gamma).unwrap();
            for n in [2usize, 11, 64] {
                let spec = solve_spectrum(&g, n, &IterationConfig::default()).unwrap();
                for sol in spec.entries() {
                    let t = trig_components(gamma, n, sol.s);
                    let ch = chebyshev_components(gamma, n, sol.lambda);
                    let scale = -sol.s.sin();
                    for (a, b) in t.iter().zip(&ch) {
                        let b = scale * b;
                        assert!((a - b).norm() <= 1e-10 * (1.0 + a.norm()), "{a} {b}");
                    }
                }
            }
        }
    }

    #[test]
    fn closed_norm_matches_direct_sum() {
        let g = make_gamma(c(0.5, 0.0)).unwrap();
        let spec = solve_spectrum(&g, 32, &IterationConfig::default()).unwrap();
        let v = eigenvector_components(&g, 32, spec.get(16).unwrap()).unwrap();
        assert!((v.norm_sq_closed - v.norm_sq_direct).abs() <= 1e-10 * v.norm_sq_direct);
        for gamma in [c(0.0, 1.0 / 3.0), c(0.4, -5.0 / 6.0), c(0.9, 0.0)] {
            let g = make_gamma(gamma).unwrap();
            for n in [3usize, 40, 128] {
                let spec = solve_spectrum(&g, n, &IterationConfig::default()).unwrap();
                for sol in spec.entries() {
                    let v = eigenvector_components(&g, n, sol).unwrap();
                    let rel = (v.norm_sq_closed - v.norm_sq_direct).abs() / v.norm_sq_direct;
                    assert!(rel <= 1e-9, "gamma={gamma} n={n} j={} rel={rel}", sol.j);
                }
            }
        }
    }

    #[test]
    fn flat_branch_matches_classical_sum() {
        // gamma -> 0 with real s: sum sin^2(ks) = n/2 - sin(ns) cos((n+1)s)/(2 sin s)
        let g = make_gamma(c(1e-300, 0.0)).unwrap();
        for n in [5usize, 17, 100] {
            for k in 1..10 {
                let s = 0.3 * k as f64;
                let closed = norm_closed_form(&g, c(s, 0.0), n).unwrap();
                let nf = n as f64;
                let classical = nf / 2.0 - (nf * s).sin() * ((nf + 1.0) * s).cos() / (2.0 * s.sin());
                let direct: f64 = (1..=n).map(|k| ((k as f64) * s).sin().powi(2)).sum();
                assert!((closed - classical).abs() < 1e-12 * nf);
                assert!((closed - direct).abs() < 1e-12 * nf);
            }
        }
    }

    #[test]
    fn trig_sum_identities() {
        for k in 0..50 {
            let s = 0.05 + 0.061 * k as f64;
            for n in [1usize, 7, 30] {
                let nf = n as f64;
                let lhs: f64 = (1..=n).map(|q| (2.0 * q as f64 * s).cos()).sum();
                let rhs = (nf * s).sin() * ((nf + 1.0) * s).cos() / s.sin();
                assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + nf));
                let lhs: f64 = (1..=n).map(|q| (2.0 * q as f64 * s).sin()).sum();
                let rhs = (nf * s).sin() * ((nf + 1.0) * s).sin() / s.sin();
                assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + nf));
            }
        }
    }

    #[test]
    fn distinct_eigenvectors_independent() {
        let g = make_gamma(c(0.3, 0.5)).unwrap();
        let n = 20;
        let spec = solve_spectrum(&g, n, &IterationConfig::default()).unwrap();
        let vs: Vec<_> = spec
            .entries()
            .iter()
            .map(|e| eigenvector_components(&g, n, e).unwrap().normalized())
            .collect();
        for a in 0..n {
            for b in a + 1..n {
                let ip: Complex64 = vs[a].iter().zip(&vs[b]).map(|(x, y)| x.conj() * y).sum();
                assert!(ip.norm() < 1.0 - 1e-8);
            }
        }
    }

    #[test]
    fn degenerate_rejected() {
        let g = make_gamma(c(0.5, 0.0)).unwrap();
        assert!(matches!(
            norm_closed_form(&g, c(0.0, 0.1), 4),
            Err(Error::Degenerate(_))
        ));
    }
}

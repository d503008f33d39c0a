//! Fixed-point solution of the main equation
//! `z = j pi/(n+1) + theta(z)/(n+1)`.
//!
//! For `n >= N_gamma` the right-hand side is a contraction (factor at most
//! 1/2) on a disk of radius `m_ball/(n+1)^2` around the first approximation,
//! so plain iteration from that point converges to the unique solution. For
//! smaller `n` the iteration is still run; the results are flagged
//! uncertified.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::charpoly_at_psi;
use crate::error::{Error, Result};
use crate::params::{check_index, grid_point, EigenSolution, GammaParameter, Provenance, Spectrum};
use crate::symbol::{in_domain, in_iteration_domain, psi, theta_prime_unchecked, theta_unchecked};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IterationConfig {
    /// Stop once successive iterates differ by at most `tol`.
    pub tol: f64,
    pub max_iter: usize,
    /// Refuse orders below `N_gamma` and require iterates to stay in the
    /// localization disk.
    pub enforce_contraction: bool,
}

impl Default for IterationConfig {
    fn default() -> Self {
        Self {
            tol: 1e-14,
            max_iter: 200,
            enforce_contraction: false,
        }
    }
}

impl IterationConfig {
    pub fn validate(&self) -> Result<()> {
        if !self.tol.is_finite() || self.tol <= 0.0 {
            return Err(Error::InvalidConfig("tol must be positive and finite"));
        }
        if self.max_iter == 0 {
            return Err(Error::InvalidConfig("max_iter must be at least 1"));
        }
        Ok(())
    }
}

/// The disk `|z - p| < m_ball/(n+1)^2` around the first approximation `p`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BallDescriptor {
    pub center: Complex64,
    pub radius: f64,
}

impl BallDescriptor {
    pub fn new(g: &GammaParameter, n: usize, j: usize) -> Result<Self> {
        let m = n as f64 + 1.0;
        Ok(Self {
            center: first_approximation(g, n, j)?,
            radius: g.m_ball() / (m * m),
        })
    }

    pub fn contains(&self, z: Complex64) -> bool {
        (z - self.center).norm() < self.radius
    }
}

/// `p = d + theta(d)/(n+1)` with `d = j pi/(n+1)`.
pub fn first_approximation(g: &GammaParameter, n: usize, j: usize) -> Result<Complex64> {
    let d = grid_point(n, j)?.d;
    let z = Complex64::new(d, 0.0);
    Ok(z + theta_unchecked(g, z) / (n as f64 + 1.0))
}

/// The map `f(z) = j pi/(n+1) + theta(z)/(n+1)`.
pub fn fixed_point_map(g: &GammaParameter, n: usize, j: usize, z: Complex64) -> Result<Complex64> {
    check_index(n, j)?;
    if !in_domain(g, z) {
        return Err(Error::Domain {
            z,
            half_width: g.delta(),
        });
    }
    Ok(map_unchecked(g, n, j, z))
}

fn map_unchecked(g: &GammaParameter, n: usize, j: usize, z: Complex64) -> Complex64 {
    let m = n as f64 + 1.0;
    Complex64::new(j as f64 * PI / m, 0.0) + theta_unchecked(g, z) / m
}

/// Solves the main equation for index `j`, starting from the first
/// approximation.
pub fn iterate_fixed_point(g: &GammaParameter, n: usize, j: usize, cfg: &IterationConfig) -> Result<EigenSolution> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    let start = first_approximation(g, n, j)?;
    iterate_from(g, n, j, start, cfg)
}

/// Same as [`iterate_fixed_point`] but from an arbitrary starting point.
pub fn iterate_from(
    g: &GammaParameter,
    n: usize,
    j: usize,
    start: Complex64,
    cfg: &IterationConfig,
) -> Result<EigenSolution> {
    cfg.validate()?;
    check_index(n, j)?;
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    let certified = g.is_certified_order(n);
    let ball = if cfg.enforce_contraction {
        if !certified {
            return Err(Error::Uncertified {
                n,
                threshold: g.n_threshold(),
            });
        }
        Some(BallDescriptor::new(g, n, j)?)
    } else {
        None
    };

    let escape = |iteration, z| Error::DomainEscape { j, iteration, z };
    if !in_iteration_domain(g, start) {
        return Err(escape(0, start));
    }
    let mut z = start;
    let mut step = f64::INFINITY;
    for iteration in 1..=cfg.max_iter {
        let next = map_unchecked(g, n, j, z);
        if !in_iteration_domain(g, next) {
            return Err(escape(iteration, next));
        }
        if let Some(b) = &ball {
            if !b.contains(next) {
                return Err(escape(iteration, next));
            }
        }
        step = (next - z).norm();
        z = next;
        if step <= cfg.tol {
            return Ok(finish(g, n, j, z, iteration));
        }
    }
    Err(Error::NonConvergence {
        j,
        iterations: cfg.max_iter,
        last: z,
        step,
    })
}

fn finish(g: &GammaParameter, n: usize, j: usize, s: Complex64, iterations: usize) -> EigenSolution {
    EigenSolution {
        j,
        s,
        lambda: psi(s),
        iterations,
        fp_residual: (s - map_unchecked(g, n, j, s)).norm(),
        charpoly_residual: charpoly_at_psi(g.value(), n, s).norm(),
        certified: g.is_certified_order(n),
    }
}

/// Solves every index `j = 1..=n` (in parallel) and assembles the ordered
/// spectrum. The first failing index, in `j` order, is reported.
pub fn solve_spectrum(g: &GammaParameter, n: usize, cfg: &IterationConfig) -> Result<Spectrum> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    cfg.validate()?;
    let entries = (1..=n)
        .into_par_iter()
        .map(|j| iterate_fixed_point(g, n, j, cfg))
        .collect::<Vec<_>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Spectrum::new(*g, n, entries, Provenance::FixedPoint)
}

/// Sampled sup of `|f'(z)| = |theta'(z)|/(n+1)` over the localization disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContractionCertificate {
    pub sup_ratio: f64,
    /// `n >= N_gamma`; when false the value is informational only.
    pub guaranteed: bool,
    pub samples: usize,
}

impl ContractionCertificate {
    pub fn is_contraction(&self) -> bool {
        self.sup_ratio <= 0.5
    }
}

pub fn contraction_certificate(g: &GammaParameter, n: usize, j: usize) -> Result<ContractionCertificate> {
    let ball = BallDescriptor::new(g, n, j)?;
    let m = n as f64 + 1.0;
    let mut sup = 0.0f64;
    let mut samples = 0;
    for ring in 0..=8 {
        let r = ball.radius * ring as f64 / 8.0;
        let spokes = if ring == 0 { 1 } else { 48 };
        for k in 0..spokes {
            let phi = 2.0 * PI * k as f64 / spokes as f64;
            let z = ball.center + Complex64::from_polar(r, phi);
            if !in_domain(g, z) {
                continue;
            }
            sup = sup.max(theta_prime_unchecked(g, z).norm() / m);
            samples += 1;
        }
    }
    Ok(ContractionCertificate {
        sup_ratio: sup,
        guaranteed: g.is_certified_order(n),
        samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::PerturbedMatrix;
    use crate::params::make_gamma;
    use crate::symbol::theta_unchecked;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn residual(g: &GammaParameter, n: usize, sol: &EigenSolution) -> f64 {
        // eigenvector from the trigonometric formula, independent of eigvec module
        let s = sol.s;
        let v: Vec<Complex64> = (1..=n)
            .map(|k| {
                let kf = k as f64;
                crate::charpoly::i_pow(-(k as i64))
                    * ((kf * s).sin() + c(0.0, 1.0) * g.value() * ((kf - 1.0) * s).sin())
            })
            .collect();
        let av = PerturbedMatrix::from_parameter(g, n).unwrap().matvec(&v).unwrap();
        let num: f64 = av.iter().zip(&v).map(|(a, x)| (a - sol.lambda * x).norm_sqr()).sum();
        let den: f64 = v.iter().map(|x| x.norm_sqr()).sum();
        (num / den).sqrt()
    }

    #[test]
    fn first_approximation_midpoint() {
        let g = make_gamma(c(0.5, 0.0)).unwrap();
        let p = first_approximation(&g, 63, 32).unwrap();
        assert!((p - c(PI / 2.0, 0.5493061443340549 / 64.0)).norm() < 1e-15);
        for n in [5usize, 9, 31] {
            let gr = make_gamma(c(0.3, 0.0)).unwrap();
            let p = first_approximation(&gr, n, n.div_ceil(2)).unwrap();
            let expect = c(PI / 2.0, 0.5 * (1.3f64 / 0.7).ln() / (n as f64 + 1.0));
            assert!((p - expect).norm() < 1e-15);
        }
        assert!(first_approximation(&g, 4, 5).is_err());
    }

    #[test]
    fn half_gamma_order_32() {
        let g = make_gamma(c(0.5, 0.0)).unwrap();
        let spec = solve_spectrum(&g, 32, &IterationConfig::default()).unwrap();
        assert_eq!(spec.n(), 32);
        for sol in spec.entries() {
            assert!(residual(&g, 32, sol) <= 1e-12);
            assert!(sol.lambda.re.abs() < 1.0 && sol.lambda.im.abs() < 2.0);
            assert!(!sol.certified);
        }
    }

    #[test]
    fn ball_membership_when_certified() {
        for (gamma, n) in [(c(0.5, 0.0), 64usize), (c(0.0, 1.0 / 3.0), 40), (c(0.2, 0.1), 100)] {
            let g = make_gamma(gamma).unwrap();
            assert!(g.is_certified_order(n));
            let cfg = IterationConfig {
                enforce_contraction: true,
                ..Default::default()
            };
            for j in 1..=n {
                let sol = iterate_fixed_point(&g, n, j, &cfg).unwrap();
                let ball = BallDescriptor::new(&g, n, j).unwrap();
                assert!(ball.contains(sol.s));
                assert!(sol.s.im.abs() <= 0.5 * g.delta());
                assert!(sol.certified);
            }
        }
    }

    #[test]
    fn enforce_contraction_rejects_small_orders() {
        let g = make_gamma(c(0.5, 0.0)).unwrap();
        let cfg = IterationConfig {
            enforce_contraction: true,
            ..Default::default()
        };
        assert!(matches!(
            iterate_fixed_point(&g, 10, 1, &cfg),
            Err(Error::Uncertified { .. })
        ));
    }

    #[test]
    fn small_order_roots_beyond_strip() {
        let g = make_gamma(c(0.4, -5.0 / 6.0)).unwrap();
        let spec = solve_spectrum(&g, 2, &IterationConfig::default()).unwrap();
        assert!(spec.entries().iter().any(|e| e.s.im.abs() >= g.delta()));
        for e in spec.entries() {
            assert!(e.charpoly_residual <= 1e-12);
        }
    }

    #[test]
    fn main_equation_residual() {
        let g = make_gamma(c(0.4, -5.0 / 6.0)).unwrap();
        let cfg = IterationConfig::default();
        for n in [2usize, 7, 50, 256] {
            let spec = solve_spectrum(&g, n, &cfg).unwrap();
            for sol in spec.entries() {
                let m = n as f64 + 1.0;
                let t = theta_unchecked(&g, sol.s);
                let r = (sol.s - sol.j as f64 * PI / m - t / m).norm();
                assert!(r <= 10.0 * cfg.tol, "n={n} j={} r={r}", sol.j);
                assert!(sol.fp_residual <= cfg.tol);
                assert!(sol.charpoly_residual <= 1e-9 * n as f64);
            }
        }
    }

    #[test]
    fn restart_from_ball_points_is_unique() {
        let g = make_gamma(c(0.0, 1.0 / 3.0)).unwrap();
        let n = 40;
        let cfg = IterationConfig::default();
        for j in [1usize, 7, 20, 40] {
            let base = iterate_fixed_point(&g, n, j, &cfg).unwrap();
            let ball = BallDescriptor::new(&g, n, j).unwrap();
            for k in 0..8 {
                let start =
                    ball.center + Complex64::from_polar(0.9 * ball.radius * (k as f64 + 1.0) / 8.0, 0.77 * k as f64);
                let other = iterate_from(&g, n, j, start, &cfg).unwrap();
                assert!((other.s - base.s).norm() <= 10.0 * cfg.tol);
            }
        }
    }

    #[test]
    fn separation_and_ordering() {
        let g = make_gamma(c(0.5, 0.0)).unwrap();
        let spec = solve_spectrum(&g, 64, &IterationConfig::default()).unwrap();
        assert!(spec.min_separation() > 0.0);
        let g = make_gamma(c(0.0, 1.0 / 3.0)).unwrap();
        let spec = solve_spectrum(&g, 16, &IterationConfig::default()).unwrap();
        for w in spec.entries().windows(2) {
            assert!(w[0].s.re < w[1].s.re);
        }
    }

    #[test]
    fn real_gamma_conjugation_symmetry() {
        let g = make_gamma(c(0.7, 0.0)).unwrap();
        let spec = solve_spectrum(&g, 24, &IterationConfig::default()).unwrap();
        let lams = spec.eigenvalues();
        for l in &lams {
            let best = lams.iter().map(|m| (m - l.conj()).norm()).fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-10);
        }
    }

    #[test]
    fn certificate_values() {
        let g = make_gamma(c(0.5, 0.0)).unwrap();
        let cert = contraction_certificate(&g, 64, 10).unwrap();
        assert!(cert.guaranteed && cert.sup_ratio <= 22.628 / 65.0);
        let cert = contraction_certificate(&g, 128, 100).unwrap();
        assert!(cert.sup_ratio <= 22.628 / 129.0);
        assert!(cert.is_contraction());
        let cert = contraction_certificate(&g, 8, 3).unwrap();
        assert!(!cert.guaranteed);
    }

    #[test]
    fn deterministic_parallel_result() {
        let g = make_gamma(c(-0.3, 0.6)).unwrap();
        let cfg = IterationConfig::default();
        let a = solve_spectrum(&g, 100, &cfg).unwrap();
        let b = solve_spectrum(&g, 100, &cfg).unwrap();
        assert_eq!(a, b);
        for sol in a.entries() {
            assert_eq!(*sol, iterate_fixed_point(&g, 100, sol.j, &cfg).unwrap());
        }
    }

    #[test]
    fn errors() {
        let g = make_gamma(c(0.5, 0.0)).unwrap();
        let cfg = IterationConfig::default();
        assert!(matches!(
            iterate_fixed_point(&g, 1, 1, &cfg),
            Err(Error::OrderTooSmall { .. })
        ));
        assert!(matches!(
            iterate_fixed_point(&g, 5, 6, &cfg),
            Err(Error::IndexOutOfRange { .. })
        ));
        let one = IterationConfig { max_iter: 1, ..cfg };
        assert!(matches!(
            iterate_fixed_point(&g, 5, 2, &one),
            Err(Error::NonConvergence { j: 2, .. })
        ));
        assert!(matches!(
            iterate_from(&g, 5, 2, c(-PI / 2.0, 5.0), &cfg),
            Err(Error::DomainEscape { j: 2, iteration: 0, .. })
        ));
        let bad = IterationConfig { tol: 0.0, ..cfg };
        assert!(bad.validate().is_err());
        assert!(matches!(
            solve_spectrum(&g, 5, &one),
            Err(Error::NonConvergence { j: 1, .. })
        ));
    }
}

//! Invariant suite over a parameter grid: every solved spectrum is checked
//! for convergence, residuals, ordering, confinement, symmetry, eigenvector
//! consistency and agreement with the polynomial-root oracle.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::charpoly::{charpoly_chebyshev, charpoly_recurrence, charpoly_trig, not_eigenvalue_check};
use crate::eigvec::{chebyshev_components, eigenvector_components};
use crate::error::{Error, Result};
use crate::oracle::{match_lists, oracle_eigenvalues, MATCH_TOLERANCE};
use crate::params::{EigenSolution, GammaParameter, Spectrum};
use crate::solver::{solve_spectrum, IterationConfig};
use crate::symbol::{theta, theta_log_quotient, theta_real_axis, theta_unchecked};

/// Largest order the oracle comparison is run at.
pub const ORACLE_MAX_ORDER: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GridSize {
    /// `n = 2..=32`
    Default,
    /// `n = 2..=128`
    Large,
}

impl GridSize {
    pub fn max_order(self) -> usize {
        match self {
            Self::Default => 32,
            Self::Large => 128,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VerifyConfig {
    pub grid: GridSize,
    pub iteration: IterationConfig,
    /// Scales every computed eigenvalue by `1 + 1e-7` before checking, to
    /// confirm that the suite notices a wrong formula.
    pub perturb_formula: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            grid: GridSize::Default,
            iteration: IterationConfig::default(),
            perturb_formula: false,
        }
    }
}

/// `r e^{2 pi i q/10}` for `r = 0.1..=0.9`, `q = 0..=9`.
pub fn polar_grid() -> Vec<GammaParameter> {
    (1..=9)
        .flat_map(|p| (0..10).map(move |q| (p as f64 / 10.0, q as f64 / 10.0)))
        .map(|(r, t)| GammaParameter::from_polar(r, t).expect("grid radius below one"))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Check {
    Convergence,
    MainEquation,
    CharPolyZero,
    Ordering,
    Confinement,
    PoleExclusion,
    Conjugation,
    EigenResidual,
    NormIdentity,
    VectorForms,
    Independence,
    OracleMatch,
    ThetaForms,
    CharPolyForms,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Convergence,
        Check::MainEquation,
        Check::CharPolyZero,
        Check::Ordering,
        Check::Confinement,
        Check::PoleExclusion,
        Check::Conjugation,
        Check::EigenResidual,
        Check::NormIdentity,
        Check::VectorForms,
        Check::Independence,
        Check::OracleMatch,
        Check::ThetaForms,
        Check::CharPolyForms,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Convergence => "convergence",
            Check::MainEquation => "main_equation_residual",
            Check::CharPolyZero => "charpoly_zero",
            Check::Ordering => "ordering",
            Check::Confinement => "imaginary_confinement",
            Check::PoleExclusion => "pm2i_exclusion",
            Check::Conjugation => "conjugation_symmetry",
            Check::EigenResidual => "eigen_residual",
            Check::NormIdentity => "closed_norm",
            Check::VectorForms => "eigenvector_forms",
            Check::Independence => "independence",
            Check::OracleMatch => "oracle_match",
            Check::ThetaForms => "theta_forms",
            Check::CharPolyForms => "charpoly_forms",
        }
    }
}

/// One failed check, with enough context to reproduce it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Failure {
    pub check: Check,
    pub gamma: Complex64,
    pub n: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckSummary {
    pub check: Check,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifySummary {
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<Failure>,
}

impl VerifySummary {
    pub fn passed(&self) -> usize {
        self.checks.iter().map(|c| c.passed).sum()
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }

    pub fn is_success(&self) -> bool {
        self.failed() == 0
    }
}

#[derive(Default)]
struct Tally {
    outcomes: Vec<(Check, bool)>,
    failures: Vec<Failure>,
}

impl Tally {
    fn record(&mut self, check: Check, ok: bool, g: &GammaParameter, n: usize, detail: impl FnOnce() -> String) {
        self.outcomes.push((check, ok));
        if !ok {
            self.failures.push(Failure {
                check,
                gamma: g.value(),
                n,
                detail: detail(),
            });
        }
    }
}

fn check_spectrum(g: &GammaParameter, n: usize, cfg: &VerifyConfig, t: &mut Tally) {
    let spec = match solve_spectrum(g, n, &cfg.iteration) {
        Ok(s) => s,
        Err(e) => {
            t.record(Check::Convergence, false, g, n, || e.to_string());
            return;
        }
    };
    t.record(Check::Convergence, true, g, n, String::new);
    let tol = cfg.iteration.tol;
    let m = n as f64 + 1.0;
    let gamma = g.value();
    let lambdas: Vec<Complex64> = if cfg.perturb_formula {
        spec.eigenvalues().iter().map(|l| l * (1.0 + 1e-7)).collect()
    } else {
        spec.eigenvalues()
    };

    let worst_main = spec
        .entries()
        .iter()
        .map(|e| (e.s - e.j as f64 * PI / m - theta_unchecked(g, e.s) / m).norm())
        .fold(0.0, f64::max);
    t.record(Check::MainEquation, worst_main <= 10.0 * tol, g, n, || {
        format!("max residual {worst_main:.3e}")
    });

    let worst_poly = lambdas
        .iter()
        .map(|&l| charpoly_chebyshev(gamma, n, l).norm())
        .fold(0.0, f64::max);
    t.record(Check::CharPolyZero, worst_poly <= 1e-9 * n as f64, g, n, || {
        format!("max |D(lambda)| {worst_poly:.3e}")
    });

    let ordered = spec.entries().windows(2).all(|w| w[0].s.re < w[1].s.re)
        && spec.entries().iter().all(|e| e.s.re > 0.0 && e.s.re < PI);
    t.record(Check::Ordering, ordered, g, n, || {
        "Re s not increasing in (0, pi)".into()
    });

    if g.is_certified_order(n) {
        let worst = spec.entries().iter().map(|e| e.s.im.abs()).fold(0.0, f64::max);
        t.record(Check::Confinement, worst <= g.delta() / 2.0, g, n, || {
            format!("max |Im s| {worst:.3e} > {:.3e}", g.delta() / 2.0)
        });
    }

    let (dp, dm) = not_eigenvalue_check(gamma, n);
    let bound = (n as f64 + 1.0) - g.modulus() * n as f64;
    let nearest = lambdas
        .iter()
        .map(|l| (l - 2.0 * Complex64::i()).norm().min((l + 2.0 * Complex64::i()).norm()))
        .fold(f64::INFINITY, f64::min);
    t.record(
        Check::PoleExclusion,
        nearest > 0.0 && dp >= bound * (1.0 - 1e-9) && dm >= bound * (1.0 - 1e-9),
        g,
        n,
        || format!("nearest {nearest:.3e}, |D(2i)| {dp:.3e}, |D(-2i)| {dm:.3e}, bound {bound:.3e}"),
    );

    if g.is_real() {
        let conj: Vec<Complex64> = lambdas.iter().map(|l| l.conj()).collect();
        let d = match_lists(&lambdas, &conj)
            .map(|r| r.max_distance)
            .unwrap_or(f64::INFINITY);
        t.record(Check::Conjugation, d <= 1e-10, g, n, || {
            format!("pair distance {d:.3e}")
        });
    }

    check_vectors(g, n, &spec, &lambdas, t);

    if n <= ORACLE_MAX_ORDER {
        let outcome = oracle_eigenvalues(gamma, n).and_then(|roots| match_lists(&roots, &lambdas));
        match outcome {
            Ok(r) => t.record(Check::OracleMatch, r.max_distance <= MATCH_TOLERANCE, g, n, || {
                format!("max distance {:.3e}", r.max_distance)
            }),
            Err(e) => t.record(Check::OracleMatch, false, g, n, || e.to_string()),
        }
    }
}

fn check_vectors(g: &GammaParameter, n: usize, spec: &Spectrum, lambdas: &[Complex64], t: &mut Tally) {
    let gamma = g.value();
    let mut worst_res = 0.0f64;
    let mut worst_norm = 0.0f64;
    let mut worst_forms = 0.0f64;
    let mut vectors = Vec::with_capacity(n);
    for (e, &lambda) in spec.entries().iter().zip(lambdas) {
        let sol = EigenSolution { lambda, ..*e };
        let v = match eigenvector_components(g, n, &sol) {
            Ok(v) => v,
            Err(err) => {
                t.record(Check::NormIdentity, false, g, n, || err.to_string());
                return;
            }
        };
        worst_res = worst_res.max(v.eigen_residual);
        worst_norm = worst_norm.max((v.norm_sq_closed - v.norm_sq_direct).abs() / v.norm_sq_direct);
        if n <= 64 {
            let scale = -e.s.sin();
            let ch = chebyshev_components(gamma, n, e.lambda);
            for (a, b) in v.components.iter().zip(&ch) {
                worst_forms = worst_forms.max((a - scale * b).norm() / (1.0 + a.norm()));
            }
        }
        vectors.push(v.normalized());
    }
    t.record(Check::EigenResidual, worst_res <= 1e-10, g, n, || {
        format!("max eigen residual {worst_res:.3e}")
    });
    t.record(Check::NormIdentity, worst_norm <= 1e-9, g, n, || {
        format!("max relative norm gap {worst_norm:.3e}")
    });
    if n <= 64 {
        t.record(Check::VectorForms, worst_forms <= 1e-10, g, n, || {
            format!("max form gap {worst_forms:.3e}")
        });
    }
    let mut worst_cos = 0.0f64;
    for a in 0..vectors.len() {
        for b in a + 1..vectors.len() {
            let ip: Complex64 = vectors[a].iter().zip(&vectors[b]).map(|(x, y)| x.conj() * y).sum();
            worst_cos = worst_cos.max(ip.norm());
        }
    }
    t.record(Check::Independence, worst_cos < 1.0 - 1e-8, g, n, || {
        format!("max |cos angle| {worst_cos:.12}")
    });
}

/// Order-independent checks for one `gamma`: the three expressions for the
/// phase function and the three forms of the characteristic polynomial.
fn check_formulas(g: &GammaParameter, t: &mut Tally) {
    let mut worst = 0.0f64;
    for k in 0..16 {
        let x = 0.05 + (PI - 0.1) * k as f64 / 15.0;
        let z = Complex64::new(x, 0.3 * g.delta() * ((k as f64).cos()));
        let (Ok(a), Ok(b)) = (theta(g, z), theta_log_quotient(g, z)) else {
            worst = f64::INFINITY;
            break;
        };
        worst = worst.max((a - b).norm());
        let (Ok(c), Ok(d)) = (theta(g, Complex64::new(x, 0.0)), theta_real_axis(g, x)) else {
            worst = f64::INFINITY;
            break;
        };
        worst = worst.max((c - d).norm());
    }
    t.record(Check::ThetaForms, worst <= 1e-12, g, 0, || {
        format!("max gap {worst:.3e}")
    });

    let gamma = g.value();
    let mut worst = 0.0f64;
    for n in [2usize, 5, 16, 33] {
        for k in 1..8 {
            let z = Complex64::new(0.37 * k as f64, 0.05 * (k as f64 - 4.0));
            let lambda = 2.0 * Complex64::i() * z.cos();
            let a = charpoly_chebyshev(gamma, n, lambda);
            let b = charpoly_recurrence(gamma, n, lambda);
            let scale = a.norm().max(1.0);
            worst = worst.max((a - b).norm() / scale);
            if let Ok(c) = charpoly_trig(gamma, n, z) {
                worst = worst.max((a - c).norm() / scale);
            }
        }
    }
    t.record(Check::CharPolyForms, worst <= 1e-10, g, 0, || {
        format!("max relative gap {worst:.3e}")
    });
}

/// Runs the suite on the polar grid for `n = 2..=grid.max_order()`.
pub fn run_verification(cfg: &VerifyConfig) -> Result<VerifySummary> {
    cfg.iteration.validate()?;
    let gammas = polar_grid();
    let jobs: Vec<(usize, usize)> = (0..gammas.len())
        .flat_map(|gi| (1..=cfg.grid.max_order()).map(move |n| (gi, n)))
        .collect();
    let tallies: Vec<Tally> = jobs
        .into_par_iter()
        .map(|(gi, n)| {
            let mut t = Tally::default();
            if n == 1 {
                check_formulas(&gammas[gi], &mut t);
            } else {
                check_spectrum(&gammas[gi], n, cfg, &mut t);
            }
            t
        })
        .collect();
    let mut checks: Vec<CheckSummary> = Check::ALL
        .iter()
        .map(|&check| CheckSummary {
            check,
            passed: 0,
            failed: 0,
        })
        .collect();
    let mut failures = Vec::new();
    for t in tallies {
        for (check, ok) in t.outcomes {
            let slot = checks
                .iter_mut()
                .find(|c| c.check == check)
                .ok_or(Error::InvalidConfig("unknown check"))?;
            if ok {
                slot.passed += 1;
            } else {
                slot.failed += 1;
            }
        }
        failures.extend(t.failures);
    }
    Ok(VerifySummary { checks, failures })
}

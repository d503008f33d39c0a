//! Ground truth that does not go through the phase function: monic
//! characteristic-polynomial coefficients from the tridiagonal determinant
//! recurrence, a simultaneous (Aberth-Ehrlich) root finder, and a matching
//! between two lists of eigenvalues.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::charpoly::charpoly_at_psi;
use crate::charpoly::PerturbedMatrix;
use crate::error::{Error, Result};
use crate::params::{EigenSolution, GammaParameter, Provenance, Spectrum};
use crate::symbol::theta_unchecked;

const I: Complex64 = Complex64::new(0.0, 1.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Coefficient growth makes extraction unreliable in binary64 beyond this.
pub const MAX_COEFFICIENT_ORDER: usize = 40;

/// Largest matching distance accepted as agreement.
pub const MATCH_TOLERANCE: f64 = 1e-8;

const MAX_ROOT_ITERATIONS: usize = 500;

/// Monic polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CharPolyCoefficients {
    coeffs: Vec<Complex64>,
}

impl CharPolyCoefficients {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() < 2
            || coeffs.last() != Some(&ONE)
            || coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite())
        {
            return Err(Error::InvalidPolynomial);
        }
        Ok(Self { coeffs })
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn evaluate(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(ZERO, |acc, c| acc * z + c)
    }

    fn eval_with_derivative(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = ZERO;
        let mut dp = ZERO;
        for c in self.coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// `sum_k |a_k| |z|^k`, the natural scale for residuals at `z`.
    pub fn magnitude_at(&self, z: Complex64) -> f64 {
        let r = z.norm();
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c.norm())
    }
}

/// A tridiagonal matrix described by its diagonal and the products
/// `sub[k] * sup[k]` of matching off-diagonal entries; this determines the
/// characteristic polynomial.
struct Tridiagonal {
    diag: Vec<Complex64>,
    off_products: Vec<Complex64>,
}

impl Tridiagonal {
    fn from_dense(m: &[Vec<Complex64>]) -> Self {
        let n = m.len();
        Self {
            diag: (0..n).map(|k| m[k][k]).collect(),
            off_products: (1..n).map(|k| m[k][k - 1] * m[k - 1][k]).collect(),
        }
    }

    /// `p_k = (x - a_k) p_{k-1} - b_k c_k p_{k-2}` on coefficient vectors.
    fn coefficients(&self) -> Vec<Complex64> {
        let mut prev: Vec<Complex64> = vec![ONE];
        let mut cur: Vec<Complex64> = vec![-self.diag[0], ONE];
        for k in 1..self.diag.len() {
            let mut next = vec![ZERO; cur.len() + 1];
            for (i, c) in cur.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= self.diag[k] * c;
            }
            for (i, c) in prev.iter().enumerate() {
                next[i] -= self.off_products[k - 1] * c;
            }
            prev = cur;
            cur = next;
        }
        cur
    }

    fn eval_with_derivative(&self, x: Complex64) -> (Complex64, Complex64) {
        let (mut p0, mut d0) = (ONE, ZERO);
        let (mut p1, mut d1) = (x - self.diag[0], ONE);
        for k in 1..self.diag.len() {
            let shift = x - self.diag[k];
            let p2 = shift * p1 - self.off_products[k - 1] * p0;
            let d2 = p1 + shift * d1 - self.off_products[k - 1] * d0;
            (p0, d0, p1, d1) = (p1, d1, p2, d2);
        }
        (p1, d1)
    }
}

fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OrderTooSmall { n, min: 1 });
    }
    if n > MAX_COEFFICIENT_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: MAX_COEFFICIENT_ORDER,
        });
    }
    Ok(())
}

fn a_tridiagonal(gamma: Complex64, n: usize) -> Tridiagonal {
    let mut diag = vec![ZERO; n];
    diag[0] = gamma;
    // sub = +1, sup = -1
    Tridiagonal {
        diag,
        off_products: vec![-ONE; n.saturating_sub(1)],
    }
}

/// Coefficients of `det(lambda I - A)` for `1 <= n <= 40`.
pub fn charpoly_coefficients(gamma: Complex64, n: usize) -> Result<CharPolyCoefficients> {
    check_order(n)?;
    CharPolyCoefficients::new(a_tridiagonal(gamma, n).coefficients())
}

/// Dense `B = i J A J^{-1}` with `J = diag(i, i^2, ..., i^n)`; its
/// eigenvalues are `i lambda` for the eigenvalues `lambda` of `A`.
pub fn similarity_b_dense(gamma: Complex64, n: usize) -> Result<Vec<Vec<Complex64>>> {
    let a = PerturbedMatrix::new(gamma, n)?.to_dense();
    let jd: Vec<Complex64> = (1..=n).map(|k| I.powu(k as u32)).collect();
    Ok((0..n)
        .map(|r| (0..n).map(|c| I * jd[r] * a[r][c] / jd[c]).collect())
        .collect())
}

/// Characteristic polynomial of a dense tridiagonal matrix (entries outside
/// the three central diagonals are ignored).
pub fn tridiagonal_charpoly_coefficients(m: &[Vec<Complex64>]) -> Result<CharPolyCoefficients> {
    check_order(m.len())?;
    CharPolyCoefficients::new(Tridiagonal::from_dense(m).coefficients())
}

/// Simultaneous Aberth-Ehrlich iteration for all roots of a monic
/// polynomial, started from equispaced points on a circle enclosing the
/// roots. Deterministic.
pub fn find_roots(poly: &CharPolyCoefficients) -> Result<Vec<Complex64>> {
    let n = poly.degree();
    let a = poly.coeffs();
    if n == 1 {
        return Ok(vec![-a[0]]);
    }
    let max_coeff = a[..n].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let radius = 1.0 + max_coeff.powf(1.0 / n as f64);
    // rotation by an irrational angle keeps the start off symmetry axes
    let offset = 0.5 * (5f64.sqrt() - 1.0);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / n as f64 + offset))
        .collect();
    let mut done = vec![false; n];
    let mut max_correction = f64::INFINITY;
    for _ in 0..MAX_ROOT_ITERATIONS {
        max_correction = 0.0;
        for k in 0..n {
            if done[k] {
                continue;
            }
            let (p, dp) = poly.eval_with_derivative(z[k]);
            // evaluation is at its roundoff floor
            if p.norm() <= 8.0 * n as f64 * f64::EPSILON * poly.magnitude_at(z[k]) {
                done[k] = true;
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n).filter(|&l| l != k).map(|l| 1.0 / (z[k] - z[l])).sum();
            let step = ratio / (1.0 - ratio * repulsion);
            let size = step.norm();
            if !size.is_finite() {
                return Err(Error::RootConvergence {
                    iterations: MAX_ROOT_ITERATIONS,
                    max_correction: size,
                });
            }
            z[k] -= step;
            if size <= 4.0 * f64::EPSILON * (1.0 + z[k].norm()) {
                done[k] = true;
            }
            max_correction = max_correction.max(size);
        }
        if done.iter().all(|&d| d) {
            return Ok(z);
        }
    }
    Err(Error::RootConvergence {
        iterations: MAX_ROOT_ITERATIONS,
        max_correction,
    })
}

/// Eigenvalues of `A` from the coefficient route, each refined by a few
/// Newton steps on the determinant recurrence.
pub fn oracle_eigenvalues(gamma: Complex64, n: usize) -> Result<Vec<Complex64>> {
    let poly = charpoly_coefficients(gamma, n)?;
    let tri = a_tridiagonal(gamma, n);
    let mut roots = find_roots(&poly)?;
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = tri.eval_with_derivative(*r);
            if dp == ZERO {
                break;
            }
            let step = p / dp;
            *r -= step;
            if step.norm() <= f64::EPSILON * (1.0 + r.norm()) {
                break;
            }
        }
    }
    Ok(roots)
}

/// Spectrum from the oracle eigenvalues: `s = arccos(-i lambda/2)` (so that
/// `psi(s) = lambda`), ordered by `Re s` and labelled `j = 1..=n`.
pub fn oracle_spectrum(g: &GammaParameter, n: usize) -> Result<Spectrum> {
    let mut pairs: Vec<(Complex64, Complex64)> = oracle_eigenvalues(g.value(), n)?
        .into_iter()
        .map(|l| ((-0.5 * I * l).acos(), l))
        .collect();
    pairs.sort_by(|a, b| a.0.re.total_cmp(&b.0.re));
    let m = n as f64 + 1.0;
    let entries = pairs
        .into_iter()
        .enumerate()
        .map(|(idx, (s, lambda))| {
            let j = idx + 1;
            let f = Complex64::new(j as f64 * PI / m, 0.0) + theta_unchecked(g, s) / m;
            EigenSolution {
                j,
                s,
                lambda,
                iterations: 0,
                fp_residual: (s - f).norm(),
                charpoly_residual: charpoly_at_psi(g.value(), n, s).norm(),
                certified: g.is_certified_order(n),
            }
        })
        .collect();
    Spectrum::new(*g, n, entries, Provenance::Oracle)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatchedPair {
    pub oracle_root: Complex64,
    pub fp_eigenvalue: Complex64,
    pub distance: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootMatchReport {
    /// Ordered by the index of the second list.
    pub pairs: Vec<MatchedPair>,
    pub max_distance: f64,
    pub unmatched: usize,
}

impl RootMatchReport {
    pub fn is_success(&self) -> bool {
        self.unmatched == 0 && self.max_distance <= MATCH_TOLERANCE
    }
}

/// Greedy nearest-pair matching: all cross distances are sorted and pairs
/// are taken while both members are free.
pub fn match_lists(oracle: &[Complex64], reference: &[Complex64]) -> Result<RootMatchReport> {
    if oracle.len() != reference.len() {
        return Err(Error::CardinalityMismatch {
            left: oracle.len(),
            right: reference.len(),
        });
    }
    let n = oracle.len();
    let mut cand: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (a, x) in oracle.iter().enumerate() {
        for (b, y) in reference.iter().enumerate() {
            cand.push(((x - y).norm(), a, b));
        }
    }
    cand.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.cmp(&q.1)).then(p.2.cmp(&q.2)));
    let mut used_a = vec![false; n];
    let mut partner: Vec<Option<(usize, f64)>> = vec![None; n];
    for (dist, a, b) in cand {
        if !used_a[a] && partner[b].is_none() {
            used_a[a] = true;
            partner[b] = Some((a, dist));
        }
    }
    let mut pairs = Vec::with_capacity(n);
    let mut max_distance = 0.0f64;
    for (b, p) in partner.iter().enumerate() {
        if let Some((a, dist)) = *p {
            max_distance = max_distance.max(dist);
            pairs.push(MatchedPair {
                oracle_root: oracle[a],
                fp_eigenvalue: reference[b],
                distance: dist,
            });
        }
    }
    Ok(RootMatchReport {
        unmatched: n - pairs.len(),
        pairs,
        max_distance,
    })
}

pub fn match_spectra(oracle_roots: &[Complex64], spec: &Spectrum) -> Result<RootMatchReport> {
    match_lists(oracle_roots, &spec.eigenvalues())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charpoly::{charpoly_chebyshev, unperturbed_eigenvalues};
    use crate::params::make_gamma;
    use crate::solver::{solve_spectrum, IterationConfig};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn small_coefficient_vectors() {
        let g = c(0.3, -0.4);
        assert_eq!(charpoly_coefficients(g, 2).unwrap().coeffs(), &[ONE, -g, ONE]);
        let four = charpoly_coefficients(g, 4).unwrap();
        assert_eq!(four.coeffs(), &[ONE, -2.0 * g, c(3.0, 0.0), -g, ONE]);
        let three = charpoly_coefficients(ZERO, 3).unwrap();
        assert_eq!(three.coeffs(), &[ZERO, c(2.0, 0.0), ZERO, ONE]);
        let mut roots = find_roots(&three).unwrap();
        roots.sort_by(|a, b| b.im.total_cmp(&a.im));
        for (r, e) in roots.iter().zip(unperturbed_eigenvalues(3)) {
            assert!((r - e).norm() < 1e-14);
        }
    }

    #[test]
    fn coefficient_invariants() {
        for n in 1..=32 {
            let g = c(0.2, 0.55);
            let poly = charpoly_coefficients(g, n).unwrap();
            let co = poly.coeffs();
            assert_eq!(co[n], ONE);
            assert_eq!(co[n - 1], -g);
            for k in 0..20 {
                let lam = Complex64::from_polar(0.5 + 0.1 * k as f64, 0.9 * k as f64);
                let a = poly.evaluate(lam);
                let b = charpoly_chebyshev(g, n, lam);
                assert!((a - b).norm() <= 1e-10 * (1.0 + b.norm()).max(poly.magnitude_at(lam) * 1e-6));
            }
            let roots = oracle_eigenvalues(g, n).unwrap();
            let sum: Complex64 = roots.iter().sum();
            assert!((sum - g).norm() <= 1e-9);
            let prod: Complex64 = roots.iter().product();
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            assert!((prod - sign * co[0]).norm() <= 1e-9 * (1.0 + co[0].norm()));
        }
        for n in [2usize, 4, 6, 10] {
            assert_eq!(charpoly_coefficients(ZERO, n).unwrap().coeffs()[0], ONE);
        }
    }

    #[test]
    fn root_finder_basics() {
        let p = CharPolyCoefficients::new(vec![ONE, ZERO, ONE]).unwrap();
        let mut r = find_roots(&p).unwrap();
        r.sort_by(|a, b| a.im.total_cmp(&b.im));
        assert!((r[0] + I).norm() < 1e-15 && (r[1] - I).norm() < 1e-15);
        let g = c(0.5, 0.0);
        let lin = charpoly_coefficients(g, 1).unwrap();
        assert_eq!(find_roots(&lin).unwrap(), vec![g]);
        assert!(CharPolyCoefficients::new(vec![ONE, c(2.0, 0.0)]).is_err());
        assert!(CharPolyCoefficients::new(vec![ONE]).is_err());
        assert!(matches!(charpoly_coefficients(g, 41), Err(Error::OrderTooLarge { .. })));
    }

    #[test]
    fn half_gamma_degree_12_residuals() {
        let g = c(0.5, 0.0);
        let poly = charpoly_coefficients(g, 12).unwrap();
        let roots = find_roots(&poly).unwrap();
        assert_eq!(roots.len(), 12);
        for r in roots {
            assert!(charpoly_chebyshev(g, 12, r).norm() <= 1e-9);
        }
    }

    #[test]
    fn matches_fixed_point() {
        for (gamma, n, tol) in [(c(0.5, 0.0), 16usize, 1e-9), (c(0.4, -5.0 / 6.0), 24, 1e-8)] {
            let g = make_gamma(gamma).unwrap();
            let spec = solve_spectrum(&g, n, &IterationConfig::default()).unwrap();
            let roots = oracle_eigenvalues(gamma, n).unwrap();
            let report = match_spectra(&roots, &spec).unwrap();
            assert!(report.is_success());
            assert!(report.max_distance <= tol, "{}", report.max_distance);
        }
    }

    #[test]
    fn oracle_spectrum_labels_agree() {
        let g = make_gamma(c(-0.6, 0.3)).unwrap();
        let fp = solve_spectrum(&g, 20, &IterationConfig::default()).unwrap();
        let or = oracle_spectrum(&g, 20).unwrap();
        for (a, b) in fp.entries().iter().zip(or.entries()) {
            assert!((a.s - b.s).norm() < 1e-8);
            assert!(b.fp_residual < 1e-8);
        }
    }

    #[test]
    fn identical_lists_match_exactly() {
        let v = vec![c(1.0, 2.0), c(-0.5, 0.1), c(0.0, -1.0)];
        let r = match_lists(&v, &v).unwrap();
        assert_eq!(r.max_distance, 0.0);
        assert_eq!(r.unmatched, 0);
        assert!(matches!(
            match_lists(&v, &v[..2]),
            Err(Error::CardinalityMismatch { .. })
        ));
    }

    #[test]
    fn b_matrix_spectrum() {
        let gamma = c(0.0, 1.0 / 3.0);
        let g = make_gamma(gamma).unwrap();
        let spec = solve_spectrum(&g, 8, &IterationConfig::default()).unwrap();
        let b = similarity_b_dense(gamma, 8).unwrap();
        // symmetric tridiagonal with -1 off the diagonal
        assert!((b[0][0] - I * gamma).norm() < 1e-15);
        assert!((b[1][0] + 1.0).norm() < 1e-15 && (b[0][1] + 1.0).norm() < 1e-15);
        let roots = find_roots(&tridiagonal_charpoly_coefficients(&b).unwrap()).unwrap();
        let report = match_lists(&roots, &crate::asymptotics::b_similarity_spectrum(&spec)).unwrap();
        assert!(report.max_distance <= 1e-10, "{}", report.max_distance);
    }

    #[test]
    fn b_spectrum_mirror_for_real_gamma() {
        let gamma = c(0.6, 0.0);
        let b = similarity_b_dense(gamma, 8).unwrap();
        let roots = find_roots(&tridiagonal_charpoly_coefficients(&b).unwrap()).unwrap();
        for r in &roots {
            let mirror = -r.conj();
            let best = roots.iter().map(|x| (x - mirror).norm()).fold(f64::INFINITY, f64::min);
            assert!(best <= 1e-10);
        }
    }
}

//! Characteristic polynomial `D(lambda) = det(lambda I - A)` of
//! `A = T_n(t - 1/t) + gamma E_11` in its Chebyshev, trigonometric and
//! recurrence forms, plus the matrix itself as an O(n) operator.

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::params::GammaParameter;
use crate::symbol::{psi, q_factors};

const I: Complex64 = Complex64::new(0.0, 1.0);

/// Below this `|sin z|` the trigonometric forms are treated as singular.
pub const POLE_GUARD: f64 = 1e-10;

/// `i^k` for any integer `k`.
pub(crate) fn i_pow(k: i64) -> Complex64 {
    match k.rem_euclid(4) {
        0 => Complex64::new(1.0, 0.0),
        1 => I,
        2 => Complex64::new(-1.0, 0.0),
        _ => -I,
    }
}

/// Chebyshev polynomial of the second kind `U_n(x)` by the three-term
/// recurrence. Negative degrees follow the backward recurrence, so
/// `U_{-1} = 0` and `U_{-n} = -U_{n-2}`.
pub fn chebyshev_u(n: i64, x: Complex64) -> Complex64 {
    if n < 0 {
        return if n == -1 {
            Complex64::new(0.0, 0.0)
        } else {
            -chebyshev_u(-n - 2, x)
        };
    }
    chebyshev_pair(n as usize, x).0
}

/// `(U_n(x), U_{n-1}(x))` for `n >= 0`.
pub(crate) fn chebyshev_pair(n: usize, x: Complex64) -> (Complex64, Complex64) {
    let two_x = 2.0 * x;
    let mut prev = Complex64::new(0.0, 0.0);
    let mut cur = Complex64::new(1.0, 0.0);
    for _ in 0..n {
        let next = two_x * cur - prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// `D(lambda) = i^n (U_n(-i lambda/2) + i gamma U_{n-1}(-i lambda/2))`.
pub fn charpoly_chebyshev(gamma: Complex64, n: usize, lambda: Complex64) -> Complex64 {
    let x = -0.5 * I * lambda;
    let (un, un1) = chebyshev_pair(n, x);
    i_pow(n as i64) * (un + I * gamma * un1)
}

/// `D(lambda)` by expanding along the first row: `p_0 = 1`,
/// `p_1 = lambda - gamma`, `p_k = lambda p_{k-1} + p_{k-2}`.
pub fn charpoly_recurrence(gamma: Complex64, n: usize, lambda: Complex64) -> Complex64 {
    let mut prev = Complex64::new(1.0, 0.0);
    if n == 0 {
        return prev;
    }
    let mut cur = lambda - gamma;
    for _ in 1..n {
        let next = lambda * cur + prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `D(psi(z)) = i^n (sin((n+1)z) + i gamma sin(nz)) / sin z`.
pub fn charpoly_trig(gamma: Complex64, n: usize, z: Complex64) -> Result<Complex64> {
    let sz = z.sin();
    if sz.norm() < POLE_GUARD {
        return Err(Error::Pole(z));
    }
    let m = n as f64;
    let top = ((m + 1.0) * z).sin() + I * gamma * (m * z).sin();
    Ok(i_pow(n as i64) * top / sz)
}

/// Second trigonometric form,
/// `i^n ((1 + i gamma cos z) sin((n+1)z) - i gamma sin z cos((n+1)z)) / sin z`.
pub fn charpoly_trig_alt(gamma: Complex64, n: usize, z: Complex64) -> Result<Complex64> {
    let sz = z.sin();
    if sz.norm() < POLE_GUARD {
        return Err(Error::Pole(z));
    }
    let w = (n as f64 + 1.0) * z;
    let top = (1.0 + I * gamma * z.cos()) * w.sin() - I * gamma * sz * w.cos();
    Ok(i_pow(n as i64) * top / sz)
}

/// `D(psi(z))`, switching to the Chebyshev form at the removable
/// singularities `z in pi Z`.
pub fn charpoly_at_psi(gamma: Complex64, n: usize, z: Complex64) -> Complex64 {
    charpoly_trig(gamma, n, z).unwrap_or_else(|_| {
        let (un, un1) = chebyshev_pair(n, z.cos());
        i_pow(n as i64) * (un + I * gamma * un1)
    })
}

/// `|e^{2i(n+1)z} - Q(z)|`; vanishes exactly at the zeros of `D(psi(z))`
/// away from `pi Z`.
pub fn exponential_form_residual(g: &GammaParameter, n: usize, z: Complex64) -> f64 {
    let (num, den) = q_factors(g, z);
    ((2.0 * I * (n as f64 + 1.0) * z).exp() - num / den).norm()
}

/// Eigenvalues `2i cos(k pi/(n+1))` of the unperturbed matrix, `k = 1..n`.
pub fn unperturbed_eigenvalues(n: usize) -> Vec<Complex64> {
    (1..=n)
        .map(|k| psi(Complex64::new(k as f64 * PI / (n as f64 + 1.0), 0.0)))
        .collect()
}

/// `(|D(2i)|, |D(-2i)|)`; both exceed `(n+1) - |gamma| n > 1`, so `+-2i`
/// are never eigenvalues.
pub fn not_eigenvalue_check(gamma: Complex64, n: usize) -> (f64, f64) {
    (
        charpoly_chebyshev(gamma, n, 2.0 * I).norm(),
        charpoly_chebyshev(gamma, n, -2.0 * I).norm(),
    )
}

/// The matrix `A` as a structured operator: subdiagonal `+1`, superdiagonal
/// `-1`, zero diagonal except `A[0][0] = gamma`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbedMatrix {
    gamma: Complex64,
    n: usize,
}

impl PerturbedMatrix {
    pub fn new(gamma: Complex64, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::OrderTooSmall { n, min: 1 });
        }
        Ok(Self { gamma, n })
    }

    pub fn from_parameter(g: &GammaParameter, n: usize) -> Result<Self> {
        Self::new(g.value(), n)
    }

    pub fn gamma(&self) -> Complex64 {
        self.gamma
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        let n = self.n;
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            let below = if k > 0 { v[k - 1] } else { Complex64::new(0.0, 0.0) };
            let above = if k + 1 < n { v[k + 1] } else { Complex64::new(0.0, 0.0) };
            let diag = if k == 0 {
                self.gamma * v[0]
            } else {
                Complex64::new(0.0, 0.0)
            };
            out.push(diag + below - above);
        }
        Ok(out)
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        match self.n {
            1 => self.gamma.norm(),
            2 => 1.0 + self.gamma.norm(),
            _ => 2.0f64.max(1.0 + self.gamma.norm()),
        }
    }

    /// Dense row-major copy; meant for small-order cross-checks.
    pub fn to_dense(&self) -> Vec<Vec<Complex64>> {
        let n = self.n;
        let mut m = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        m[0][0] = self.gamma;
        for k in 0..n {
            if k + 1 < n {
                m[k][k + 1] = Complex64::new(-1.0, 0.0);
                m[k + 1][k] = Complex64::new(1.0, 0.0);
            }
        }
        m
    }
}

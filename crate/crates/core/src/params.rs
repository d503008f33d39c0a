//! Validated parameters and the record types shared by every module.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// The corner perturbation `gamma` together with every constant derived
/// from it.
///
/// All constants depend only on `|gamma|` and are computed once here:
///
/// * `delta = ln(1/|gamma|)`, the half-width of the analyticity strip of the
///   phase function;
/// * `m0 = 4/(1-|gamma|)` and `m1 = 8 sqrt|gamma| / (1-|gamma|)^2`, sup-norm
///   bounds of the phase function and its derivative on the half strip;
/// * `m_ball = 2 m0 m1`, which scales the localization disks;
/// * `n_threshold = 16/(1-|gamma|)^2`, the order above which the fixed-point
///   map is a certified contraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaParameter {
    gamma: Complex64,
    delta: f64,
    m0: f64,
    m1: f64,
    m_ball: f64,
    n_threshold: f64,
}

impl GammaParameter {
    pub fn new(gamma: Complex64) -> Result<Self> {
        if !gamma.re.is_finite() || !gamma.im.is_finite() {
            return Err(Error::InvalidGamma(gamma));
        }
        let r = gamma.norm();
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidGamma(gamma));
        }
        let one_minus = 1.0 - r;
        let sqrt_r = r.sqrt();
        Ok(Self {
            gamma,
            delta: -r.ln(),
            m0: 4.0 / one_minus,
            m1: 8.0 * sqrt_r / (one_minus * one_minus),
            m_ball: 64.0 * sqrt_r / (one_minus * one_minus * one_minus),
            n_threshold: 16.0 / (one_minus * one_minus),
        })
    }

    /// Polar form `r * exp(2 pi i turn)`.
    pub fn from_polar(r: f64, turn: f64) -> Result<Self> {
        Self::new(Complex64::from_polar(r, 2.0 * PI * turn))
    }

    pub fn value(&self) -> Complex64 {
        self.gamma
    }

    pub fn modulus(&self) -> f64 {
        self.gamma.norm()
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn m0(&self) -> f64 {
        self.m0
    }

    pub fn m1(&self) -> f64 {
        self.m1
    }

    pub fn m_ball(&self) -> f64 {
        self.m_ball
    }

    pub fn n_threshold(&self) -> f64 {
        self.n_threshold
    }

    /// Whether `n >= N_gamma`, i.e. contraction and localization are
    /// guaranteed rather than merely observed.
    pub fn is_certified_order(&self, n: usize) -> bool {
        n as f64 >= self.n_threshold
    }

    /// True when `gamma` is real up to roundoff.
    pub fn is_real(&self) -> bool {
        self.gamma.im.abs() <= 4.0 * f64::EPSILON * self.gamma.norm()
    }

    /// True when `gamma` lies on the imaginary axis up to roundoff.
    pub fn is_imaginary(&self) -> bool {
        self.gamma.re.abs() <= 4.0 * f64::EPSILON * self.gamma.norm()
    }
}

pub fn make_gamma(gamma: Complex64) -> Result<GammaParameter> {
    GammaParameter::new(gamma)
}

/// A uniform grid node `d = j pi / (n+1)` with `1 <= j <= n`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridPoint {
    pub n: usize,
    pub j: usize,
    pub d: f64,
}

pub fn grid_point(n: usize, j: usize) -> Result<GridPoint> {
    check_index(n, j)?;
    Ok(GridPoint {
        n,
        j,
        d: j as f64 * PI / (n as f64 + 1.0),
    })
}

pub(crate) fn check_index(n: usize, j: usize) -> Result<()> {
    if j == 0 || j > n {
        Err(Error::IndexOutOfRange { n, j })
    } else {
        Ok(())
    }
}

/// One eigenpair parameter: the solution `s` of the main equation and the
/// eigenvalue `lambda = psi(s)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EigenSolution {
    pub j: usize,
    pub s: Complex64,
    pub lambda: Complex64,
    pub iterations: usize,
    /// `|s - f(s)|` for the fixed-point map `f` of index `j`.
    pub fp_residual: f64,
    /// Magnitude of the trigonometric characteristic polynomial at `s`.
    pub charpoly_residual: f64,
    /// `n >= N_gamma`: convergence is guaranteed by the contraction bound.
    pub certified: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    FixedPoint,
    Oracle,
    Asymptotic,
}

/// All `n` eigen-solutions of one matrix, ordered by `j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    gamma: GammaParameter,
    n: usize,
    entries: Vec<EigenSolution>,
    provenance: Provenance,
}

impl Spectrum {
    /// Checks cardinality, index labels and that `Re s` is strictly
    /// increasing inside `(0, pi)`.
    pub fn new(gamma: GammaParameter, n: usize, entries: Vec<EigenSolution>, provenance: Provenance) -> Result<Self> {
        if entries.len() != n {
            return Err(Error::CardinalityMismatch {
                left: n,
                right: entries.len(),
            });
        }
        let mut prev = 0.0;
        for (idx, e) in entries.iter().enumerate() {
            let j = idx + 1;
            if e.j != j || !e.s.re.is_finite() || e.s.re <= prev || e.s.re >= PI {
                return Err(Error::Ordering { j });
            }
            prev = e.s.re;
        }
        Ok(Self {
            gamma,
            n,
            entries,
            provenance,
        })
    }

    pub fn gamma(&self) -> &GammaParameter {
        &self.gamma
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[EigenSolution] {
        &self.entries
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn eigenvalues(&self) -> Vec<Complex64> {
        self.entries.iter().map(|e| e.lambda).collect()
    }

    /// Eigen-solution for 1-based index `j`.
    pub fn get(&self, j: usize) -> Option<&EigenSolution> {
        j.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    /// Smallest pairwise distance between eigenvalues.
    pub fn min_separation(&self) -> f64 {
        let mut best = f64::INFINITY;
        for (a, ea) in self.entries.iter().enumerate() {
            for eb in &self.entries[a + 1..] {
                best = best.min((ea.lambda - eb.lambda).norm());
            }
        }
        best
    }
}

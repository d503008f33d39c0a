use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid gamma {0}: require finite gamma with 0 < |gamma| < 1")]
    InvalidGamma(Complex64),

    #[error("index j = {j} out of range 1..={n}")]
    IndexOutOfRange { n: usize, j: usize },

    #[error("matrix order n = {n} below the minimum {min}")]
    OrderTooSmall { n: usize, min: usize },

    #[error("matrix order n = {n} exceeds the supported maximum {max}")]
    OrderTooLarge { n: usize, max: usize },

    #[error("point {z} lies outside the strip |Im z| < {half_width}")]
    Domain { z: Complex64, half_width: f64 },

    #[error("x = {0} outside [0, pi]")]
    Range(f64),

    #[error("z = {0} is too close to a pole at pi*Z")]
    Pole(Complex64),

    #[error("vector length {got} does not match matrix order {expected}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {j}: no convergence after {iterations} iterations (last {last}, step {step:e})")]
    NonConvergence {
        j: usize,
        iterations: usize,
        last: Complex64,
        step: f64,
    },

    #[error("index {j}: iterate {z} left the strip at iteration {iteration}")]
    DomainEscape { j: usize, iteration: usize, z: Complex64 },

    #[error("n = {n} is below the contraction threshold N = {threshold:.3}")]
    Uncertified { n: usize, threshold: f64 },

    #[error("invalid iteration config: {0}")]
    InvalidConfig(&'static str),

    #[error("spectrum ordering violated at j = {j}")]
    Ordering { j: usize },

    #[error("degenerate eigenvector: |sin(s)| = {0:e}")]
    Degenerate(f64),

    #[error("polynomial must be monic with degree >= 1 and finite coefficients")]
    InvalidPolynomial,

    #[error("root iteration failed after {iterations} iterations (max correction {max_correction:e})")]
    RootConvergence { iterations: usize, max_correction: f64 },

    #[error("cardinality mismatch: {left} vs {right}")]
    CardinalityMismatch { left: usize, right: usize },

    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
}

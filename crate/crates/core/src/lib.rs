//! Spectra of the corner-perturbed skew tridiagonal Toeplitz matrices
//!
//! ```text
//! A(gamma, n) = T_n(t - 1/t) + gamma E_11,   0 < |gamma| < 1,
//! ```
//!
//! i.e. `+1` on the subdiagonal, `-1` on the superdiagonal and `gamma` in
//! the upper-left corner. Every eigenvalue is `lambda_j = 2i cos(s_j)`
//! where `s_j` solves `z = j pi/(n+1) + theta(z)/(n+1)`; the library solves
//! that equation by fixed-point iteration, evaluates the closed-form
//! asymptotic expansions, builds eigenvectors and their norms, and checks
//! everything against an independent polynomial-root oracle.
//!
//! ```
//! use corner_toeplitz::{make_gamma, solve_spectrum, IterationConfig};
//! use num_complex::Complex64;
//!
//! let g = make_gamma(Complex64::new(0.5, 0.0)).unwrap();
//! let spec = solve_spectrum(&g, 32, &IterationConfig::default()).unwrap();
//! assert_eq!(spec.entries().len(), 32);
//! ```

pub mod asymptotics;
pub mod charpoly;
pub mod eigvec;
pub mod error;
pub mod oracle;
pub mod params;
pub mod report;
pub mod solver;
pub mod symbol;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};
pub use params::{grid_point, make_gamma, EigenSolution, GammaParameter, GridPoint, Provenance, Spectrum};
pub use solver::{iterate_fixed_point, solve_spectrum, IterationConfig};

//! The three error tables: uniform-formula error, extreme-formula errors and
//! the comparison with the small-gamma expansion, each next to its reference
//! value from the embedded data file.

use std::sync::OnceLock;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::asymptotics::{cf_max_error, extreme_error_high, extreme_error_low, max_asymptotic_error};
use crate::error::{Error, Result};
use crate::params::{make_gamma, Spectrum};
use crate::solver::{solve_spectrum, IterationConfig};

/// Orders covered by the reference data.
pub const DEFAULT_ORDERS: [usize; 5] = [256, 512, 1024, 2048, 4096];

/// Targets smaller than this multiple of `max |lambda|` are not resolvable
/// in binary64 and are annotated rather than compared.
pub const BELOW_PRECISION_FACTOR: f64 = 1e-13;

const REFERENCE_DATA: &str = include_str!("../data/reference_tables.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableId {
    Uniform,
    Extreme,
    Comparison,
}

impl TableId {
    pub fn from_number(k: u8) -> Result<Self> {
        match k {
            1 => Ok(Self::Uniform),
            2 => Ok(Self::Extreme),
            3 => Ok(Self::Comparison),
            _ => Err(Error::InvalidConfig("table number must be 1, 2 or 3")),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Self::Uniform => 1,
            Self::Extreme => 2,
            Self::Comparison => 3,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
struct ReferenceBlock<R> {
    gamma: [f64; 2],
    rows: Vec<R>,
}

#[derive(Debug, Clone, Deserialize)]
struct UniformRef {
    n: usize,
    error: f64,
    normalized: f64,
}

#[derive(Debug, Clone, Deserialize)]
struct ExtremeRef {
    n: usize,
    low_error: f64,
    low_normalized: f64,
    high_error: f64,
    high_normalized: f64,
}

#[derive(Debug, Clone, Deserialize)]
struct ComparisonRef {
    n: usize,
    uniform: f64,
    small_gamma: f64,
}

#[derive(Debug, Clone, Deserialize)]
struct ReferenceData {
    uniform: Vec<ReferenceBlock<UniformRef>>,
    extreme: Vec<ReferenceBlock<ExtremeRef>>,
    comparison: Vec<ReferenceBlock<ComparisonRef>>,
}

fn reference() -> &'static ReferenceData {
    static DATA: OnceLock<ReferenceData> = OnceLock::new();
    DATA.get_or_init(|| toml::from_str(REFERENCE_DATA).expect("embedded reference tables parse"))
}

fn to_complex(g: [f64; 2]) -> Complex64 {
    Complex64::new(g[0], g[1])
}

/// One quantity of a table row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableCell {
    pub quantity: &'static str,
    pub computed: f64,
    pub reference: Option<f64>,
    /// `|computed - reference| / |reference|`; absent when below precision.
    pub deviation: Option<f64>,
    pub below_precision: bool,
}

impl TableCell {
    fn new(quantity: &'static str, computed: f64, reference: Option<f64>, floor: Option<f64>) -> Self {
        let below_precision = match (floor, reference) {
            (Some(f), Some(r)) => r < f,
            (Some(f), None) => computed < f,
            (None, _) => false,
        };
        let deviation = match reference {
            Some(r) if !below_precision => Some((computed - r).abs() / r.abs()),
            _ => None,
        };
        Self {
            quantity,
            computed,
            reference,
            deviation,
            below_precision,
        }
    }

    pub fn within(&self, rel: f64) -> bool {
        self.deviation.is_some_and(|d| d <= rel)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub table: TableId,
    pub gamma: Complex64,
    pub n: usize,
    pub cells: Vec<TableCell>,
}

impl TableRow {
    pub fn cell(&self, quantity: &str) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.quantity == quantity)
    }
}

/// The `gamma` values a table is laid out for.
pub fn table_gammas(id: TableId) -> Vec<Complex64> {
    let data = reference();
    match id {
        TableId::Uniform => data.uniform.iter().map(|b| to_complex(b.gamma)).collect(),
        TableId::Extreme => data.extreme.iter().map(|b| to_complex(b.gamma)).collect(),
        TableId::Comparison => data.comparison.iter().map(|b| to_complex(b.gamma)).collect(),
    }
}

fn solve(gamma: Complex64, n: usize, cfg: &IterationConfig) -> Result<Spectrum> {
    solve_spectrum(&make_gamma(gamma)?, n, cfg)
}

fn lookup<R: Clone>(blocks: &[ReferenceBlock<R>], gamma: Complex64, key: impl Fn(&R) -> usize, n: usize) -> Option<R> {
    blocks
        .iter()
        .find(|b| (to_complex(b.gamma) - gamma).norm() < 1e-12)
        .and_then(|b| b.rows.iter().find(|r| key(r) == n).cloned())
}

/// `E` and `n^3 E` for the uniform eigenvalue formula.
pub fn uniform_row(gamma: Complex64, n: usize, cfg: &IterationConfig) -> Result<TableRow> {
    let spec = solve(gamma, n, cfg)?;
    let e = max_asymptotic_error(&spec)?;
    let r = lookup(&reference().uniform, gamma, |r: &UniformRef| r.n, n);
    Ok(TableRow {
        table: TableId::Uniform,
        gamma,
        n,
        cells: vec![
            TableCell::new("E", e, r.as_ref().map(|r| r.error), None),
            TableCell::new("n3_E", (n as f64).powi(3) * e, r.as_ref().map(|r| r.normalized), None),
        ],
    })
}

/// Extreme-formula errors at `j = 1` (near `2i`) and `j = n` (near `-2i`),
/// normalized by `((n+1)/j)^4` and `((n+1)/(n+1-j))^4`; at these two indices
/// both factors reduce to `(n+1)^4`.
pub fn extreme_row(gamma: Complex64, n: usize, cfg: &IterationConfig) -> Result<TableRow> {
    let spec = solve(gamma, n, cfg)?;
    let low = extreme_error_low(&spec, 1)?;
    let high = extreme_error_high(&spec, n)?;
    let scale = (n as f64 + 1.0).powi(4);
    let r = lookup(&reference().extreme, gamma, |r: &ExtremeRef| r.n, n);
    Ok(TableRow {
        table: TableId::Extreme,
        gamma,
        n,
        cells: vec![
            TableCell::new("E_low_j1", low, r.as_ref().map(|r| r.low_error), None),
            TableCell::new(
                "normalized_low_j1",
                scale * low,
                r.as_ref().map(|r| r.low_normalized),
                None,
            ),
            TableCell::new("E_high_jn", high, r.as_ref().map(|r| r.high_error), None),
            TableCell::new(
                "normalized_high_jn",
                scale * high,
                r.as_ref().map(|r| r.high_normalized),
                None,
            ),
        ],
    })
}

/// Uniform formula error `E` beside the small-gamma expansion error `G`.
/// Values below `1e-13 max|lambda|` are flagged as unresolved.
pub fn comparison_row(gamma: Complex64, n: usize, cfg: &IterationConfig) -> Result<TableRow> {
    let spec = solve(gamma, n, cfg)?;
    let e = max_asymptotic_error(&spec)?;
    let gerr = cf_max_error(&spec)?;
    let scale = spec.eigenvalues().iter().map(|l| l.norm()).fold(0.0, f64::max);
    let floor = Some(BELOW_PRECISION_FACTOR * scale);
    let r = lookup(&reference().comparison, gamma, |r: &ComparisonRef| r.n, n);
    Ok(TableRow {
        table: TableId::Comparison,
        gamma,
        n,
        cells: vec![
            TableCell::new("E", e, r.as_ref().map(|r| r.uniform), floor),
            TableCell::new("G", gerr, r.as_ref().map(|r| r.small_gamma), floor),
        ],
    })
}

pub fn table_row(id: TableId, gamma: Complex64, n: usize, cfg: &IterationConfig) -> Result<TableRow> {
    match id {
        TableId::Uniform => uniform_row(gamma, n, cfg),
        TableId::Extreme => extreme_row(gamma, n, cfg),
        TableId::Comparison => comparison_row(gamma, n, cfg),
    }
}

/// Every `(gamma, n)` cell of a table, computed in parallel and returned in
/// layout order (gamma-major).
pub fn compute_table(id: TableId, orders: &[usize], cfg: &IterationConfig) -> Result<Vec<TableRow>> {
    let jobs: Vec<(Complex64, usize)> = table_gammas(id)
        .into_iter()
        .flat_map(|g| orders.iter().map(move |&n| (g, n)))
        .collect();
    jobs.into_par_iter()
        .map(|(g, n)| table_row(id, g, n, cfg))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}

/// The default orders not exceeding `max_n`.
pub fn default_orders(max_n: usize) -> Vec<usize> {
    DEFAULT_ORDERS.iter().copied().filter(|&n| n <= max_n).collect()
}

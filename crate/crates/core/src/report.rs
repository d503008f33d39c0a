//! Command layer behind the binary: parameter parsing, the four commands,
//! and deterministic CSV/JSON rendering.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::eigvec::eigenvector_components;
use crate::error::{Error, Result};
use crate::params::{make_gamma, GammaParameter};
use crate::solver::{iterate_fixed_point, IterationConfig};
use crate::symbol::theta;
use crate::tables::{compute_table, default_orders, TableId};
use crate::verify::{run_verification, VerifyConfig};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Format {
    Csv,
    Json,
}

/// Process exit status of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Success,
    Usage,
    Convergence,
    Verification,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Success => 0,
            Status::Usage => 2,
            Status::Convergence => 3,
            Status::Verification => 4,
        }
    }

    /// Exit status for a library error raised before any output exists.
    pub fn of_error(e: &Error) -> Self {
        match e {
            Error::NonConvergence { .. } | Error::DomainEscape { .. } | Error::RootConvergence { .. } => {
                Status::Convergence
            }
            _ => Status::Usage,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum Field {
    Int(i64),
    Float(f64),
    Text(String),
    Flag(bool),
}

impl Field {
    fn csv(&self) -> String {
        match self {
            Field::Int(v) => v.to_string(),
            Field::Float(v) => format_float(*v),
            Field::Text(s) => s.clone(),
            Field::Flag(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Int(v) => json!(v),
            Field::Float(v) if v.is_finite() => json!(v),
            Field::Float(_) => Value::Null,
            Field::Text(s) => json!(s),
            Field::Flag(b) => json!(b),
        }
    }
}

/// 17 significant digits in scientific notation: round-trips binary64 and
/// is byte-stable across runs.
pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "nan".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

/// A rendered command result: metadata, fixed columns and rows.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputRecord {
    pub meta: Vec<(&'static str, Value)>,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Field>>,
}

impl OutputRecord {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => {
                let mut out = self.columns.join(",");
                out.push('\n');
                for row in &self.rows {
                    let line: Vec<String> = row.iter().map(Field::csv).collect();
                    out.push_str(&line.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Json => {
                let mut meta = Map::new();
                meta.insert("schema_version".into(), json!(SCHEMA_VERSION));
                meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
                for (k, v) in &self.meta {
                    meta.insert((*k).into(), v.clone());
                }
                let rows: Vec<Value> = self
                    .rows
                    .iter()
                    .map(|r| {
                        Value::Object(
                            self.columns
                                .iter()
                                .zip(r)
                                .map(|(c, f)| ((*c).to_string(), f.json()))
                                .collect(),
                        )
                    })
                    .collect();
                let mut s = serde_json::to_string_pretty(&json!({ "meta": meta, "rows": rows }))
                    .expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandOutcome {
    pub record: OutputRecord,
    pub status: Status,
}

fn parse_real(s: &str) -> Option<f64> {
    match s.split_once('/') {
        Some((a, b)) => Some(a.trim().parse::<f64>().ok()? / b.trim().parse::<f64>().ok()?),
        None => s.trim().parse().ok(),
    }
}

/// Parses `0.5`, `-0.25j`, `0.4-0.8333j`, `2/5-5/6j`, `i/3` style
/// Cartesian forms (suffix `j` or `i`) and the polar form `r@turn`, where
/// `turn` is the argument as a fraction of a full turn.
pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || Error::InvalidConfig("unparseable complex number");
    if let Some((r, t)) = s.split_once('@') {
        let r = parse_real(r).ok_or_else(bad)?;
        let t = parse_real(t).ok_or_else(bad)?;
        return Ok(Complex64::from_polar(r, 2.0 * PI * t));
    }
    // `i/3` and `j/3`: unit imaginary divided by a real
    if let Some(rest) = s.strip_prefix("i/").or_else(|| s.strip_prefix("j/")) {
        return Ok(Complex64::new(0.0, 1.0 / parse_real(rest).ok_or_else(bad)?));
    }
    if let Some(rest) = s.strip_prefix("-i/").or_else(|| s.strip_prefix("-j/")) {
        return Ok(Complex64::new(0.0, -1.0 / parse_real(rest).ok_or_else(bad)?));
    }
    let Some(body) = s.strip_suffix('j').or_else(|| s.strip_suffix('i')) else {
        return Ok(Complex64::new(parse_real(&s).ok_or_else(bad)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (parse_real(&body[..k]).ok_or_else(bad)?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => parse_real(other).ok_or_else(bad)?,
    };
    Ok(Complex64::new(re, im))
}

/// `r:turn`, the grid form `r e^{2 pi i turn}`.
pub fn parse_polar(text: &str) -> Result<Complex64> {
    let (r, t) = text
        .split_once(':')
        .ok_or(Error::InvalidConfig("polar form is r:turn"))?;
    parse_complex(&format!("{r}@{t}"))
}

fn gamma_meta(g: &GammaParameter) -> Value {
    json!([g.value().re, g.value().im])
}

/// Per-index eigenpairs. Indices that fail to converge are kept as rows
/// with status text and NaN values, and the command reports a convergence
/// status.
pub fn cmd_solve(g: &GammaParameter, n: usize, cfg: &IterationConfig, normalize: bool) -> Result<CommandOutcome> {
    if n < 2 {
        return Err(Error::OrderTooSmall { n, min: 2 });
    }
    cfg.validate()?;
    let mut rows = Vec::with_capacity(n);
    let mut status = Status::Success;
    for j in 1..=n {
        let row = match iterate_fixed_point(g, n, j, cfg) {
            Ok(sol) => {
                let v = eigenvector_components(g, n, &sol)?;
                let norm = if normalize { 1.0 } else { v.norm_sq_direct.sqrt() };
                vec![
                    Field::Int(j as i64),
                    Field::Float(sol.lambda.re),
                    Field::Float(sol.lambda.im),
                    Field::Float(sol.s.re),
                    Field::Float(sol.s.im),
                    Field::Int(sol.iterations as i64),
                    Field::Float(sol.fp_residual),
                    Field::Float(v.eigen_residual),
                    Field::Float(norm),
                    Field::Flag(sol.certified),
                    Field::Text("ok".into()),
                ]
            }
            Err(e) => {
                status = Status::Convergence;
                let label = match e {
                    Error::NonConvergence { .. } => "nonconvergence",
                    Error::DomainEscape { .. } => "domain_escape",
                    _ => return Err(e),
                };
                let mut r = vec![Field::Int(j as i64)];
                r.extend(std::iter::repeat_n(Field::Float(f64::NAN), 4));
                r.push(Field::Int(cfg.max_iter as i64));
                r.extend(std::iter::repeat_n(Field::Float(f64::NAN), 3));
                r.push(Field::Flag(g.is_certified_order(n)));
                r.push(Field::Text(label.into()));
                r
            }
        };
        rows.push(row);
    }
    Ok(CommandOutcome {
        record: OutputRecord {
            meta: vec![
                ("command", json!("solve")),
                ("gamma", gamma_meta(g)),
                ("n", json!(n)),
                ("tol", json!(cfg.tol)),
                ("max_iter", json!(cfg.max_iter)),
                ("normalized", json!(normalize)),
            ],
            columns: vec![
                "j",
                "lambda_re",
                "lambda_im",
                "s_re",
                "s_im",
                "iterations",
                "fp_residual",
                "eigen_residual",
                "vector_norm",
                "certified",
                "status",
            ],
            rows,
        },
        status,
    })
}

/// Long-format table: one row per computed quantity with its reference
/// value and relative deviation.
pub fn cmd_table(id: TableId, orders: &[usize], cfg: &IterationConfig) -> Result<CommandOutcome> {
    if orders.is_empty() {
        return Err(Error::InvalidConfig("no table orders selected"));
    }
    let table = compute_table(id, orders, cfg)?;
    let mut rows = Vec::new();
    for r in &table {
        for c in &r.cells {
            let status = if c.below_precision {
                "below_precision"
            } else if c.reference.is_none() {
                "no_reference"
            } else {
                "compared"
            };
            rows.push(vec![
                Field::Int(id.number() as i64),
                Field::Float(r.gamma.re),
                Field::Float(r.gamma.im),
                Field::Int(r.n as i64),
                Field::Text(c.quantity.into()),
                Field::Float(c.computed),
                Field::Float(c.reference.unwrap_or(f64::NAN)),
                Field::Float(c.deviation.unwrap_or(f64::NAN)),
                Field::Text(status.into()),
            ]);
        }
    }
    Ok(CommandOutcome {
        record: OutputRecord {
            meta: vec![
                ("command", json!("table")),
                ("table", json!(id.number())),
                ("orders", json!(orders)),
                ("tol", json!(cfg.tol)),
            ],
            columns: vec![
                "table",
                "gamma_re",
                "gamma_im",
                "n",
                "quantity",
                "computed",
                "reference",
                "rel_deviation",
                "status",
            ],
            rows,
        },
        status: Status::Success,
    })
}

pub fn table_orders(max_n: usize, single: Option<usize>) -> Vec<usize> {
    match single {
        Some(n) => vec![n],
        None => default_orders(max_n),
    }
}

/// Grid resolution of the phase-function image: `THETA_GRID.0` samples
/// along `[0, 2 pi]` and `THETA_GRID.1` across the half-width strip.
pub const THETA_GRID: (usize, usize) = (64, 17);

/// Eigenvalue scatter, or with `theta` the image of the rectangle
/// `[0, 2 pi] x [-delta/2, delta/2]` under the phase function.
pub fn cmd_plot_data(g: &GammaParameter, n: usize, cfg: &IterationConfig, theta_map: bool) -> Result<CommandOutcome> {
    if theta_map {
        let (nx, ny) = THETA_GRID;
        let half = g.delta() / 2.0;
        let mut rows = Vec::with_capacity(nx * ny);
        for a in 0..nx {
            for b in 0..ny {
                let x = 2.0 * PI * a as f64 / (nx - 1) as f64;
                let y = -half + 2.0 * half * b as f64 / (ny - 1) as f64;
                let t = theta(g, Complex64::new(x, y))?;
                rows.push(vec![
                    Field::Float(x),
                    Field::Float(y),
                    Field::Float(t.re),
                    Field::Float(t.im),
                ]);
            }
        }
        return Ok(CommandOutcome {
            record: OutputRecord {
                meta: vec![
                    ("command", json!("plot-data")),
                    ("gamma", gamma_meta(g)),
                    ("theta_grid", json!([nx, ny])),
                ],
                columns: vec!["z_re", "z_im", "theta_re", "theta_im"],
                rows,
            },
            status: Status::Success,
        });
    }
    let spec = crate::solver::solve_spectrum(g, n, cfg)?;
    let rows = spec
        .entries()
        .iter()
        .map(|e| {
            vec![
                Field::Int(e.j as i64),
                Field::Float(e.lambda.re),
                Field::Float(e.lambda.im),
            ]
        })
        .collect();
    Ok(CommandOutcome {
        record: OutputRecord {
            meta: vec![
                ("command", json!("plot-data")),
                ("gamma", gamma_meta(g)),
                ("n", json!(n)),
            ],
            columns: vec!["j", "lambda_re", "lambda_im"],
            rows,
        },
        status: Status::Success,
    })
}

/// Summary rows per check, followed by up to 50 failure rows.
pub fn cmd_verify(cfg: &VerifyConfig) -> Result<CommandOutcome> {
    let summary = run_verification(cfg)?;
    let mut rows: Vec<Vec<Field>> = summary
        .checks
        .iter()
        .map(|c| {
            vec![
                Field::Text(c.check.name().into()),
                Field::Int(c.passed as i64),
                Field::Int(c.failed as i64),
                Field::Text(String::new()),
            ]
        })
        .collect();
    for f in summary.failures.iter().take(50) {
        let mut detail = String::new();
        let _ = write!(detail, "gamma={}{:+}j n={}: {}", f.gamma.re, f.gamma.im, f.n, f.detail);
        rows.push(vec![
            Field::Text(f.check.name().into()),
            Field::Int(0),
            Field::Int(1),
            Field::Text(detail.replace(',', ";")),
        ]);
    }
    Ok(CommandOutcome {
        record: OutputRecord {
            meta: vec![
                ("command", json!("verify")),
                ("grid_max_n", json!(cfg.grid.max_order())),
                ("tol", json!(cfg.iteration.tol)),
                ("passed", json!(summary.passed())),
                ("failed", json!(summary.failed())),
            ],
            columns: vec!["check", "passed", "failed", "detail"],
            rows,
        },
        status: if summary.is_success() {
            Status::Success
        } else {
            Status::Verification
        },
    })
}

/// Parses a gamma given either as Cartesian/`r@turn` text or as `r:turn`.
pub fn resolve_gamma(cartesian: Option<&str>, polar: Option<&str>) -> Result<GammaParameter> {
    let value = match (cartesian, polar) {
        (Some(c), None) => parse_complex(c)?,
        (None, Some(p)) => parse_polar(p)?,
        (Some(_), Some(_)) => return Err(Error::InvalidConfig("give either --gamma or --gamma-polar")),
        (None, None) => return Err(Error::InvalidConfig("missing --gamma")),
    };
    make_gamma(value)
}

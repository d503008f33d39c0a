//! Error tables of the asymptotic formulas beside their reference values.
//!
//! cargo run --release --example asymptotic_tables -- 2048

use corner_toeplitz::tables::{compute_table, default_orders, TableId};
use corner_toeplitz::IterationConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1024);
    let orders = default_orders(max_n);
    for id in [TableId::Uniform, TableId::Extreme, TableId::Comparison] {
        println!("table {}", id.number());
        for row in compute_table(id, &orders, &IterationConfig::default())? {
            for c in &row.cells {
                let verdict = match (c.below_precision, c.deviation) {
                    (true, _) => "below precision".to_string(),
                    (false, Some(d)) => format!("dev {:.2}%", 100.0 * d),
                    (false, None) => "no reference".to_string(),
                };
                println!(
                    "  gamma {:<8.4} n {:>5} {:<20} {:>12.4e} ref {:>10} {}",
                    row.gamma,
                    row.n,
                    c.quantity,
                    c.computed,
                    c.reference.map_or("-".into(), |r| format!("{r:.3e}")),
                    verdict
                );
            }
        }
    }
    Ok(())
}

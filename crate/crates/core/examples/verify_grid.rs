//! The invariant suite over the polar parameter grid.

use corner_toeplitz::verify::{run_verification, GridSize, VerifyConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let large = std::env::args().any(|a| a == "--large");
    let cfg = VerifyConfig {
        grid: if large { GridSize::Large } else { GridSize::Default },
        ..VerifyConfig::default()
    };
    let summary = run_verification(&cfg)?;
    for c in &summary.checks {
        println!("{:<24} {:>6} passed {:>4} failed", c.check.name(), c.passed, c.failed);
    }
    for f in summary.failures.iter().take(10) {
        println!("FAIL {} gamma={} n={}: {}", f.check.name(), f.gamma, f.n, f.detail);
    }
    println!(
        "{} checks, {} failures",
        summary.passed() + summary.failed(),
        summary.failed()
    );
    Ok(())
}

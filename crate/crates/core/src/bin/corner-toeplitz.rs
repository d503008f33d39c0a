use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use corner_toeplitz::report::{
    cmd_plot_data, cmd_solve, cmd_table, cmd_verify, resolve_gamma, table_orders, CommandOutcome, Format, Status,
};
use corner_toeplitz::tables::{TableId, DEFAULT_ORDERS};
use corner_toeplitz::verify::{GridSize, VerifyConfig};
use corner_toeplitz::{Error, IterationConfig};

#[derive(Parser)]
#[command(
    version,
    about = "Eigenvalues of corner-perturbed skew tridiagonal Toeplitz matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum GridArg {
    Default,
    Large,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Successive-step tolerance of the fixed-point iteration.
    #[arg(long, default_value_t = 1e-14)]
    tol: f64,
    #[arg(long, default_value_t = 200)]
    max_iter: usize,
    /// Write to FILE instead of stdout.
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GammaArgs {
    /// Cartesian `0.4-0.8j`, `2/5-5/6j`, `i/3`, or polar `r@turn`.
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Polar grid form `r:turn`, i.e. r e^{2 pi i turn}.
    #[arg(long, value_name = "R:TURN")]
    gamma_polar: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Eigenvalues, fixed points and residuals for every index.
    Solve {
        #[command(flatten)]
        gamma: GammaArgs,
        #[arg(long)]
        n: usize,
        /// Report unit-norm eigenvectors.
        #[arg(long)]
        normalize: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Error tables 1-3 beside their reference values.
    Table {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=3))]
        which: u8,
        /// Largest order of the default ladder 256..4096.
        #[arg(long, default_value_t = DEFAULT_ORDERS[DEFAULT_ORDERS.len() - 1])]
        max_n: usize,
        /// A single order instead of the ladder.
        #[arg(long)]
        n: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Eigenvalue scatter, or the phase-function image with --theta.
    PlotData {
        #[command(flatten)]
        gamma: GammaArgs,
        #[arg(long, required_unless_present = "theta", default_value_t = 0)]
        n: usize,
        #[arg(long)]
        theta: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Invariant suite over the polar parameter grid.
    Verify {
        #[arg(long, value_enum, default_value = "default")]
        grid: GridArg,
        #[arg(long, hide = true)]
        perturb_formula: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn iteration(c: &Common) -> IterationConfig {
    IterationConfig {
        tol: c.tol,
        max_iter: c.max_iter,
        ..IterationConfig::default()
    }
}

fn run(cli: Cli) -> Result<(CommandOutcome, Common), Error> {
    match cli.command {
        Command::Solve {
            gamma,
            n,
            normalize,
            common,
        } => {
            let g = resolve_gamma(gamma.gamma.as_deref(), gamma.gamma_polar.as_deref())?;
            Ok((cmd_solve(&g, n, &iteration(&common), normalize)?, common))
        }
        Command::Table {
            which,
            max_n,
            n,
            common,
        } => {
            let id = TableId::from_number(which)?;
            Ok((cmd_table(id, &table_orders(max_n, n), &iteration(&common))?, common))
        }
        Command::PlotData {
            gamma,
            n,
            theta,
            common,
        } => {
            let g = resolve_gamma(gamma.gamma.as_deref(), gamma.gamma_polar.as_deref())?;
            Ok((cmd_plot_data(&g, n, &iteration(&common), theta)?, common))
        }
        Command::Verify {
            grid,
            perturb_formula,
            common,
        } => {
            let cfg = VerifyConfig {
                grid: match grid {
                    GridArg::Default => GridSize::Default,
                    GridArg::Large => GridSize::Large,
                },
                iteration: iteration(&common),
                perturb_formula,
            };
            Ok((cmd_verify(&cfg)?, common))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { Status::Usage.code() } else { 0 });
        }
    };
    let (outcome, common) = match run(cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(Status::of_error(&e).code());
        }
    };
    let format = match common.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let text = outcome.record.render(format);
    let written = match &common.out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            return ExitCode::from(outcome.status.code());
        }
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    ExitCode::from(outcome.status.code())
}

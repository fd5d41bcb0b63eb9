use clap::{Parser, Subcommand};
use g2solv::{run_search, run_tau, run_validate, run_verify, RunReport, SearchConfig, UsageError};
use std::path::PathBuf;
use std::process::ExitCode;

/// Exact G2 torsion toolkit for rank-one solvable extensions of
/// six-dimensional nilpotent Lie algebras.
#[derive(Parser)]
#[command(name = "g2solv", version, about)]
struct Cli {
    /// Emit the full report as JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a fixture (bundled name, file path, or inline bracket tuple)
    Validate {
        /// Fixture name (example1..example6), path to a fixture file, or an
        /// inline tuple such as "(0,0,e15,e25,0,e12)"
        target: String,
    },
    /// Extract the torsion components τ1…τ4 of a 3-form and classify it
    Tau {
        /// Fixture naming the algebra to work on
        target: String,
        /// One of: base | family:r,s | a 3-form literal like "e147 - e237"
        #[arg(long, default_value = "base")]
        phi: String,
        /// Metric connection: g (plain) or gtilde (conformally rescaled).
        /// Defaults to g for the base form and gtilde otherwise
        #[arg(long)]
        metric: Option<String>,
        /// Extension parameter m as a rational p/q
        #[arg(long, default_value = "1")]
        m: String,
    },
    /// Run the exact cross-check batteries against the reference data
    #[command(name = "verify-paper")]
    VerifyPaper {
        /// all, or a single battery 2..6
        #[arg(long, default_value = "all")]
        section: String,
    },
    /// Random-restart numeric search for ansatz torsions with a parallel spinor
    Search {
        /// Fixture naming the algebra to search on
        target: String,
        /// Number of random starts
        #[arg(long)]
        starts: Option<usize>,
        /// Seed for the deterministic random-number stream
        #[arg(long)]
        seed: Option<u64>,
        /// JSON file with a search configuration block (any subset of the
        /// fields; command-line flags win)
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

fn dispatch(cli: &Cli) -> Result<RunReport, UsageError> {
    match &cli.command {
        Command::Validate { target } => run_validate(target),
        Command::Tau { target, phi, metric, m } => run_tau(target, phi, metric.as_deref(), m),
        Command::VerifyPaper { section } => run_verify(section),
        Command::Search { target, starts, seed, config } => {
            let mut cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        UsageError(format!("cannot read config {}: {e}", path.display()))
                    })?;
                    serde_json::from_str::<SearchConfig>(&text)
                        .map_err(|e| UsageError(format!("bad config: {e}")))?
                }
                None => SearchConfig::default(),
            };
            if let Some(starts) = starts {
                cfg.starts = *starts;
            }
            if let Some(seed) = seed {
                cfg.seed = *seed;
            }
            run_search(target, &cfg)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(report) => {
            if cli.json {
                print!("{}", report.to_json());
            } else {
                print!("{}", report.human());
            }
            ExitCode::from(report.exit_status as u8)
        }
        Err(usage) => {
            eprintln!("error: {usage}");
            ExitCode::from(2)
        }
    }
}

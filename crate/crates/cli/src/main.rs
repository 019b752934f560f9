use clap::{Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;

mod commands;
mod instance;

use commands::{Outcome, EXIT_USAGE};

/// Exact minimal log discrepancies of toric varieties and toric Mori fiber spaces.
///
/// Exit codes: 0 success, 1 parse, validation or usage error, 2 oracle
/// mismatch, 3 failed precondition, 4 inequality violated.
#[derive(Parser)]
#[command(name = "toricmld", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Json,
    Summary,
}

#[derive(Subcommand)]
enum Command {
    /// Minimal log discrepancy of a toric instance (or of X and Y for an mfs).
    Mld {
        path: PathBuf,
        /// Cross-check against the brute-force oracle (size guard: TORICMLD_GUARD).
        #[arg(long)]
        brute_force: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the structural checks on a Mori fiber space instance.
    Validate { path: PathBuf },
    /// The example family with r = l^4 + 1.
    Family {
        #[arg(long)]
        l: i64,
        #[arg(long, value_enum, default_value = "summary")]
        emit: Emit,
    },
    /// CSV table of the example family over a range of l.
    Sweep {
        #[arg(long)]
        l_min: i64,
        #[arg(long)]
        l_max: i64,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lift a small discrepancy on Y to a point of X by the box principle.
    Witness {
        path: PathBuf,
        /// `auto` (use mld(Y)) or a rational `p/q`.
        #[arg(long, default_value = "auto")]
        delta: String,
    },
    /// Check mld(X)^(m+1) <= C^(m+1)·mld(Y) exactly.
    Check { path: PathBuf },
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Mld {
            path,
            brute_force,
            json,
        } => commands::cmd_mld(&path, brute_force, json),
        Command::Validate { path } => commands::cmd_validate(&path),
        Command::Family { l, emit } => commands::cmd_family(l, matches!(emit, Emit::Json)),
        Command::Sweep { l_min, l_max, out } => commands::cmd_sweep(l_min, l_max, out.as_deref()),
        Command::Witness { path, delta } => commands::cmd_witness(&path, &delta),
        Command::Check { path } => commands::cmd_check(&path),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.code)
        }
    }
}

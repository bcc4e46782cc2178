use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod bench;
mod commands;

use commands::{CliError, Status};

#[derive(Parser, Debug)]
#[command(name = "bstconn", version, about = "Balanced st-connectivity: decide, build and check balanced walks")]
struct Cli {
    /// Emit one JSON record per command instead of plain text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether a balanced s-t walk exists.
    Decide { instance: PathBuf },
    /// Build a balanced s-t walk of length at most 16n³.
    Witness { instance: PathBuf },
    /// Check a claimed witness. Use `-` to read the walk from stdin.
    Verify { instance: PathBuf, walk: PathBuf },
    /// Shorten a balanced s-t walk to length at most 3n³.
    Rebalance { instance: PathBuf, walk: PathBuf },
    /// Exhaustive search for a shortest balanced walk.
    Oracle {
        instance: PathBuf,
        /// Imbalance bound B (default 3n³).
        #[arg(long)]
        bound: Option<u64>,
        /// Also print the walk.
        #[arg(long)]
        walk: bool,
        /// Refuse searches needing more (vertex, imbalance) states than this.
        #[arg(long, default_value_t = 1 << 25)]
        max_states: usize,
    },
    /// Generate an instance.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        /// Output file (default stdout).
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Emit growth data for witness lengths as CSV.
    Bench {
        /// figure1, random, tree, all-neutral, single-directed-cycle or disconnected.
        family: String,
        /// Inclusive range of n, e.g. `8..64`.
        range: String,
        /// Step between consecutive n (default 4 for figure1, else 1).
        #[arg(long)]
        step: Option<usize>,
        /// Output CSV file (default stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Run the oracle for n up to this value.
        #[arg(long, default_value_t = 32)]
        oracle_max_n: usize,
        /// Seed for the random family.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Evaluate grid points one at a time, for cleaner timings.
        #[arg(long)]
        sequential: bool,
    },
    /// Show the derivation trail for reducing Σ m_i c_i = k.
    Reduce {
        /// Strictly increasing positive coefficients, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        c: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        /// Multipliers to reduce; when absent a solution is computed.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        m: Option<Vec<i64>>,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum GenFamily {
    /// Path plus a single directed-edge cycle; only balanced walks are Θ(n²) long.
    Figure1 {
        #[arg(long)]
        n: usize,
    },
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.3)]
        directed_p: f64,
        #[arg(long, default_value_t = 0.2)]
        neutral_p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    Degenerate {
        /// tree, all-neutral, single-directed-cycle or disconnected.
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
    },
}

fn run(cli: Cli) -> Result<Status, CliError> {
    let json = cli.json;
    let out = &mut std::io::stdout().lock();
    match cli.command {
        Command::Decide { instance } => commands::decide(&instance, json, out),
        Command::Witness { instance } => commands::witness(&instance, json, out),
        Command::Verify { instance, walk } => commands::verify(&instance, &walk, json, out),
        Command::Rebalance { instance, walk } => commands::rebalance(&instance, &walk, json, out),
        Command::Oracle { instance, bound, walk, max_states } => {
            commands::oracle(&instance, bound, walk, max_states, json, out)
        }
        Command::Gen { family, output } => commands::gen(family, output.as_deref(), out),
        Command::Bench { family, range, step, output, oracle_max_n, seed, sequential } => {
            let opts = bench::BenchOptions { oracle_max_n, seed, sequential };
            bench::run(&family, &range, step, &opts, output.as_deref(), out)
        }
        Command::Reduce { c, k, m } => commands::reduce(c, k, m, json, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("bstconn: {e}");
            ExitCode::from(e.status() as u8)
        }
    }
}

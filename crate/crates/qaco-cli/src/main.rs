use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use qaco_cli::commands::{self, CommandError, QasmScope};
use qaco_cli::config::{self, ExperimentConfig};

#[derive(Parser)]
#[command(
    name = "qaco",
    about = "Quantum and classical ant colony optimization experiments"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Experiment configuration file (key = value lines).
    #[arg(long)]
    config: PathBuf,

    /// Output directory; overrides the config's out_dir.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Seed override for sampling and the classical reference.
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Run the quantum optimizer and write histogram, trace, metrics, summary.
    Run {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write the per-iteration pheromone-box trace only.
    Trace {
        #[command(flatten)]
        common: CommonArgs,

        /// Recompute the trace with the classical box automaton.
        #[arg(long)]
        oracle: bool,
    },
    /// Export OpenQASM 2.0 for part or all of the program.
    Qasm {
        #[command(flatten)]
        common: CommonArgs,

        /// init | iteration:`<t>` | full
        #[arg(long, default_value = "full")]
        scope: QasmScope,
    },
    /// Run the classical simple-ACO reference.
    Classical {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the deposition state order for a box width.
    Order {
        /// Pheromone box width in qubits.
        #[arg(long, default_value_t = 4)]
        box_qubits: usize,
    },
    /// Gate-count and depth study over path counts and iteration budgets.
    Bench {
        #[command(flatten)]
        common: CommonArgs,

        /// Path counts to measure.
        #[arg(long, value_delimiter = ',', default_value = "4,8,16")]
        n_list: Vec<usize>,

        /// Iteration budgets to measure.
        #[arg(long, value_delimiter = ',', default_value = "1,2,4,8")]
        k_list: Vec<u64>,
    },
}

fn load_config(common: &CommonArgs) -> Result<(ExperimentConfig, PathBuf), CommandError> {
    let text = fs::read_to_string(&common.config).map_err(|source| CommandError::Io {
        path: common.config.clone(),
        source,
    })?;
    let mut config =
        config::parse_config(&text).map_err(|e| CommandError::Validation(e.to_string()))?;
    if let Some(seed) = common.seed {
        config.seed = seed;
    }
    let out_dir = common.out.clone().unwrap_or_else(|| config.out_dir.clone());
    Ok((config, out_dir))
}

fn dispatch(cli: Cli) -> Result<(), CommandError> {
    match cli.command {
        Command::Run { common } => {
            let (config, out_dir) = load_config(&common)?;
            commands::cmd_run(&config, &out_dir)?;
        }
        Command::Trace { common, oracle } => {
            let (config, out_dir) = load_config(&common)?;
            commands::cmd_trace(&config, &out_dir, oracle)?;
        }
        Command::Qasm { common, scope } => {
            let (config, out_dir) = load_config(&common)?;
            commands::cmd_qasm(&config, &out_dir, scope)?;
        }
        Command::Classical { common } => {
            let (config, out_dir) = load_config(&common)?;
            commands::cmd_classical(&config, &out_dir)?;
        }
        Command::Order { box_qubits } => {
            commands::cmd_order(box_qubits)?;
        }
        Command::Bench {
            common,
            n_list,
            k_list,
        } => {
            let (config, out_dir) = load_config(&common)?;
            commands::cmd_bench(&config, &n_list, &k_list, &out_dir)?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}

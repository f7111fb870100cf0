use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use calibsim_core::tables::MIN_RUNS_FOR_TOLERANCE;
use calibsim_core::{
    load_config, run_experiment_with, Error, ExperimentConfig, ResultSet, TableId,
};

/// Monte Carlo robustness study of uncertain-reasoning procedures.
///
/// Worker threads follow RAYON_NUM_THREADS; results do not depend on it.
#[derive(Parser)]
#[command(name = "calibsim", version)]
struct Cli {
    /// Suppress per-cell progress on standard error.
    #[arg(short, long, global = true)]
    quiet: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a sweep and write histograms.csv and summary.csv.
    Run {
        #[arg(long)]
        config: PathBuf,
        /// Override a config entry, e.g. --set runs_per_cell=10.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
    },
    /// Render a published table layout from existing result files.
    Report {
        #[arg(long)]
        dir: PathBuf,
        /// One of t1..t7.
        #[arg(long)]
        table: String,
    },
    /// Run the cells behind one table, render it and compare with the
    /// published values.
    Reproduce {
        /// One of t1..t7.
        #[arg(long)]
        table: String,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = calibsim_core::experiment::DEFAULT_RUNS)]
        runs: usize,
        /// Where to write the CSV files.
        #[arg(long, default_value = "results")]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

/// 1 for configuration problems and missing cells, 2 for file problems.
fn exit_code(e: &Error) -> ExitCode {
    if e.is_config() || matches!(e, Error::MissingCell(_)) {
        ExitCode::from(1)
    } else {
        ExitCode::from(2)
    }
}

fn dispatch(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run { config, overrides } => {
            let cfg = load_config(&config, &overrides)?;
            if cfg.procedures.is_empty() {
                eprintln!("warning: procedures list is empty; writing empty result files");
            }
            let results = sweep(&cfg, cli.quiet)?;
            results.write(&cfg.output_dir)?;
            if !cli.quiet {
                eprintln!("wrote {}", cfg.output_dir.display());
            }
            Ok(())
        }
        Command::Report { dir, table } => {
            let table: TableId = table.parse()?;
            let results = ResultSet::read(&dir)?;
            print!("{}", table.render(&results)?);
            Ok(())
        }
        Command::Reproduce {
            table,
            seed,
            runs,
            out,
        } => {
            let table: TableId = table.parse()?;
            if runs < MIN_RUNS_FOR_TOLERANCE {
                eprintln!(
                    "warning: {runs} runs per cell; reference tolerances may not be met below {MIN_RUNS_FOR_TOLERANCE}"
                );
            }
            let cfg = ExperimentConfig {
                output_dir: out,
                ..table.config(seed, runs)
            };
            let results = sweep(&cfg, cli.quiet)?;
            results.write(&cfg.output_dir)?;
            println!("{}", table.render(&results)?);
            let checks = table.checks(&results)?;
            for c in &checks {
                println!("{c}");
            }
            let passed = checks.iter().filter(|c| c.passed).count();
            println!("{passed}/{} checks passed", checks.len());
            Ok(())
        }
    }
}

fn sweep(cfg: &ExperimentConfig, quiet: bool) -> Result<ResultSet, Error> {
    let cells = run_experiment_with(cfg, |done, total, cell| {
        if !quiet {
            eprintln!("[{done}/{total}] {}", cell.id);
        }
    })?;
    Ok(ResultSet::from_cells(&cells))
}

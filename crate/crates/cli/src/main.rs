use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qsbai_cli::{load, run, Format, Mode, Overrides, RunError};

#[derive(Parser)]
#[command(version, about = "Quantum spatial best-arm identification experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a configuration file. Log verbosity is read from QSBAI_LOG.
    Run {
        config: PathBuf,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Sweep horizon, or the measurement step in sample mode
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Output file
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<Format>,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("QSBAI_LOG", "warn")).init();
    let Command::Run { config, mode, horizon, seed, out, format } = Cli::parse().command;
    let overrides = Overrides { mode, horizon, seed, out, format };
    let result = load(&config).and_then(|mut cfg| {
        cfg.apply(&overrides);
        run(cfg)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(RunError::exit_code(&e) as u8)
        }
    }
}

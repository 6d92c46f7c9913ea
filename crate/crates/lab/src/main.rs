use std::process::ExitCode;

use clap::Parser;
use pa_lab::cli::{execute, exit_code, Cli};

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match execute(&cli, &argv) {
        Ok(outcome) => {
            if outcome.violation {
                log::warn!("a bound or witness check failed");
            }
            ExitCode::from(exit_code(&cli, &outcome))
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

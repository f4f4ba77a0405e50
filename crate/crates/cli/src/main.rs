use std::process::ExitCode;

use clap::Parser;

mod args;
mod commands;
mod error;
mod manifest;
mod output;

use args::Cli;

/// Environment variable holding the worker thread count; `1` forces the
/// sequential path.
pub const THREADS_ENV: &str = "TRANSCORR_THREADS";

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = match configure_threads() {
        Ok(exec) => exec,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code());
        }
    };
    match commands::run(cli, exec) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn configure_threads() -> Result<transcorr::Exec, error::CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(transcorr::Exec::Parallel);
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| error::CliError::Usage(format!("{THREADS_ENV}={raw} is not a positive integer")))?;
    if threads == 1 {
        return Ok(transcorr::Exec::Sequential);
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| error::CliError::Usage(e.to_string()))?;
    Ok(transcorr::Exec::Parallel)
}

mod args;
mod commands;
mod config;
mod error;
mod output;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser};

use args::{Cli, Command};
use error::{CliError, CliResult};

fn thread_pool() -> CliResult<rayon::ThreadPool> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Ok(raw) = std::env::var("OVK_THREADS") {
        let n: usize = raw
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| CliError::usage(format!("OVK_THREADS must be a positive integer, found `{raw}`")))?;
        builder = builder.num_threads(n);
    }
    builder
        .build()
        .map_err(|e| CliError::failure(format!("cannot start worker threads: {e}")))
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Invariant(a) => commands::invariant::run(a),
        Command::Verify(a) => thread_pool()?.install(|| commands::verify::run(a)),
        Command::Table(a) => commands::table::run(a),
        Command::Maslov(a) => commands::maslov::run(a),
    }
}

fn main() -> ExitCode {
    let mut argv: Vec<OsString> = std::env::args_os().collect();
    if let Some(path) = config::find_config_path(&argv) {
        match config::inject(argv, &Cli::command(), &PathBuf::from(path)) {
            Ok(a) => argv = a,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(e.exit_code());
            }
        }
    }

    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };

    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

//! Front end for the `mollify` binary: argument parsing, config merging,
//! caching and report emission.

pub mod args;
pub mod cache;
pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};

use clap::{CommandFactory, FromArgMatches};

use args::{Cli, Command, ZerosCommand};

pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Parses argv, runs the command and writes its report; returns the exit code.
pub fn main_with_args(argv: Vec<OsString>) -> i32 {
    let cmd = config::allow_overrides(Cli::command());
    let argv = match config::merge_config(&cmd, argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("mollify: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match cmd.try_get_matches_from(argv).and_then(|m| Cli::from_arg_matches(&m)) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { 0 };
        }
    };
    let common = cli.command.common();
    if let Some(n) = common.threads {
        // Only the first call in a process can size the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cache = cache::Cache::from_env(!common.no_cache);
    let report = match commands::run(&cli.command, &cache) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("mollify: {e}");
            return EXIT_FAILURE;
        }
    };
    let format = common.format.unwrap_or_else(|| commands::default_format(&cli.command));
    // `zeros find --output` sends the table to the file, the summary to stdout.
    let destination = match &cli.command {
        Command::Zeros(ZerosCommand::Find(_)) => None,
        _ => common.output.as_ref(),
    };
    let written = match destination {
        Some(path) => fs::File::create(path).and_then(|f| report.write(format, io::BufWriter::new(f))),
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            report.write(format, &mut lock).and_then(|_| lock.flush())
        }
    };
    if let Err(e) = written {
        eprintln!("mollify: cannot write report: {e}");
        return EXIT_FAILURE;
    }
    if report.pass {
        0
    } else {
        EXIT_FAILURE
    }
}

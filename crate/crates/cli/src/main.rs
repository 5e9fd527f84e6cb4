// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use fluordimer::{execution_for, run_scan, write_csv, ExitStatus, RunConfig};

/// Spectra, generator eigenvalues and steady states of two dipole-coupled
/// four-level atoms.
#[derive(Debug, Parser)]
#[command(name = "fluordimer", version)]
struct Cli {
    /// Configuration file with `key = value` lines.
    #[arg(long)]
    config: PathBuf,

    /// Overrides a configuration key; may be repeated.
    #[arg(long = "set", value_name = "KEY=VALUE")]
    set: Vec<String>,

    /// Output CSV path.
    #[arg(long)]
    out: PathBuf,

    /// Worker threads; 1 runs sequentially. Defaults to all cores.
    #[arg(long)]
    threads: Option<usize>,
}

fn exit(status: ExitStatus) -> ExitCode {
    ExitCode::from(status as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { exit(ExitStatus::ConfigError) } else { exit(ExitStatus::Success) };
        }
    };
    let text = match std::fs::read_to_string(&cli.config) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", cli.config.display());
            return exit(ExitStatus::ConfigError);
        }
    };
    let config = match RunConfig::parse(&text, &cli.set) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.config.display());
            return exit(ExitStatus::ConfigError);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            return exit(ExitStatus::ConfigError);
        }
        #[cfg(feature = "parallel")]
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} workers: {e}");
            return exit(ExitStatus::ConfigError);
        }
    }
    let result = match run_scan(&config, execution_for(cli.threads)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: numerical failure: {e}");
            return exit(ExitStatus::NumericalFailure);
        }
    };
    if let Err(e) = write_csv(&result, &cli.out) {
        eprintln!("error: cannot write {}: {e}", cli.out.display());
        return exit(ExitStatus::ConfigError);
    }
    exit(ExitStatus::Success)
}

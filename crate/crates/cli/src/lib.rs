// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Configuration parsing, scan orchestration and CSV output for the
//! `fluordimer` command-line tool.

pub mod config;
pub mod scan;

pub use config::{ConfigError, Mode, Origin, RunConfig};
pub use scan::{read_csv, run_scan, write_csv, ScanError, ScanResult};

use fluordimer_core::Execution;

/// Exit status of the command-line tool.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    ConfigError = 1,
    NumericalFailure = 2,
}

/// Execution policy for a requested worker count; one worker runs
/// sequentially.
pub fn execution_for(threads: Option<usize>) -> Execution {
    match threads {
        Some(1) => Execution::Sequential,
        _ => Execution::Parallel,
    }
}

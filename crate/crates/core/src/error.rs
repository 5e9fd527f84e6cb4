// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{what} index {index} out of range {lo}..={hi}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        lo: usize,
        hi: usize,
    },

    #[error("atomic separation must be positive and finite (got {0})")]
    ZeroSeparation(f64),

    #[error("invalid parameter {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error(
        "coupling table is not conjugate-symmetric at (i={i}, j={j}, mu={mu}, nu={nu}): deviation {deviation:.3e}"
    )]
    NotConjugateSymmetric {
        i: usize,
        j: usize,
        mu: usize,
        nu: usize,
        deviation: f64,
    },

    #[error("steady state is not unique: generator kernel is degenerate (pivot ratio {pivot_ratio:.3e})")]
    DegenerateKernel { pivot_ratio: f64 },

    #[error("resolvent is singular at omega = {omega}")]
    SingularResolvent { omega: f64 },

    #[error("eigendecomposition failed to converge")]
    EigenFailure,
}

pub type Result<T> = std::result::Result<T, Error>;

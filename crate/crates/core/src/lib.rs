// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Two dipole-dipole coupled four-level atoms (J=1/2 <-> J=1/2) under a
//! resonant pi drive: vacuum coupling constants, the Lindblad generator,
//! its eigenvalues and steady state, and the incoherent resonance
//! fluorescence spectrum of the pi light.
//!
//! Frequency grids and parameter sweeps run through [`Execution`], which is
//! data-parallel when the `parallel` feature (default) is enabled.

pub mod coupling;
pub mod error;
pub mod exec;
pub mod linalg;
pub mod liouvillian;
pub mod model;
pub mod spectrum;

pub use coupling::{
    build_coupling_table, chi_tensor, classify_group, spvc_constant, tpvc_constants, ChiTensor,
    CouplingGroup, CouplingTable, GroupMask,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use liouvillian::{
    build_hamiltonian, build_liouvillian, eigen_decomposition, eigenvalues, partial_trace,
    steady_state, time_evolve, DensityVector, SpectralDecomposition, Superoperator, System,
};
pub use model::{
    dipole, dipole_moment, rabi_frequency, transition_operator, Atom, Dipole, DriveField, Geometry,
    Transition,
};
pub use spectrum::{
    coherent_intensity, correlation_transform, decompose_spectrum, incoherent_pi_spectrum,
    local_maxima, CorrelationEngine, FrequencyGrid, SpectrumTermFlags, SpectrumTrace, Term,
};

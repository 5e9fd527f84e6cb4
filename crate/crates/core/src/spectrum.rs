// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Incoherent resonance-fluorescence spectrum of the pi light.
//!
//! Two-time correlations follow from the quantum regression theorem: for a
//! fluctuation source `B = S_j^{-nu} rho_ss - <S_j^{-nu}> rho_ss`,
//!
//! ```text
//! T_ij^{mu nu}(w) = e^{i k0 R.(r_mu - r_nu)} tr[S_i^{+mu} X],  (i w - M) vec X = vec B.
//! ```
//!
//! `M` has a one-dimensional kernel spanned by `rho_ss`, and `(i w - M)` is
//! singular at `w = 0` even for the trace-free source. All solves therefore
//! use the deflated generator `M - rho_ss (x) tr`, which coincides with `M`
//! on trace-free operators and keeps the solution trace-free.

use nalgebra::Vector3;
use num_complex::Complex64;
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::liouvillian::{steady_state, DensityVector, Superoperator, System};
use crate::linalg::{self, CMatrix, CVector, ShiftedSolver};
use crate::model::{Atom, Geometry, OperatorSet, Transition, K0, LIOUVILLE_DIM, PAIR_DIM};

/// The four parts of the spectrum, `S = P1 + P2 - P3 - P4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Term {
    /// `mu = nu`, `i = j`
    P1,
    /// `mu != nu`, `i = j`
    P2,
    /// `mu = nu`, `i != j`
    P3,
    /// `mu != nu`, `i != j`
    P4,
}

impl Term {
    pub const ALL: [Term; 4] = [Term::P1, Term::P2, Term::P3, Term::P4];

    pub fn of(i: Transition, j: Transition, mu: Atom, nu: Atom) -> Term {
        match (i == j, mu == nu) {
            (true, true) => Term::P1,
            (true, false) => Term::P2,
            (false, true) => Term::P3,
            (false, false) => Term::P4,
        }
    }

    pub fn slot(self) -> usize {
        self as usize
    }

    /// Sign with which the term enters the total spectrum.
    pub fn sign(self) -> f64 {
        match self {
            Term::P1 | Term::P2 => 1.0,
            Term::P3 | Term::P4 => -1.0,
        }
    }
}

/// Which terms enter the total, and the detector direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumTermFlags {
    pub include: [bool; 4],
    pub detector: Vector3<f64>,
}

impl Default for SpectrumTermFlags {
    fn default() -> Self {
        Self {
            include: [true; 4],
            detector: Vector3::new(1.0, 1.0, 0.0) / 2f64.sqrt(),
        }
    }
}

impl SpectrumTermFlags {
    pub fn without(mut self, term: Term) -> Self {
        self.include[term.slot()] = false;
        self
    }

    pub fn includes(&self, term: Term) -> bool {
        self.include[term.slot()]
    }

    /// `e^{i k0 R.(r_mu - r_nu)}`.
    pub fn phase(&self, g: &Geometry, mu: Atom, nu: Atom) -> Complex64 {
        if mu == nu {
            return Complex64::new(1.0, 0.0);
        }
        let d = g.position(mu) - g.position(nu);
        Complex64::from_polar(1.0, K0 * self.detector.dot(&d))
    }

    /// Signed sum of the included terms.
    pub fn combine(&self, parts: &[f64; 4]) -> f64 {
        Term::ALL
            .iter()
            .filter(|t| self.includes(**t))
            .map(|t| t.sign() * parts[t.slot()])
            .sum()
    }
}

/// Uniform frequency grid, inclusive of both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl FrequencyGrid {
    pub fn new(min: f64, max: f64, count: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || max < min {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: format!("need finite min <= max, got [{min}, {max}]"),
            });
        }
        if count < 2 {
            return Err(Error::InvalidParameter {
                name: "grid",
                reason: format!("need at least 2 points, got {count}"),
            });
        }
        Ok(Self { min, max, count })
    }

    pub fn point(&self, k: usize) -> f64 {
        if k + 1 == self.count {
            return self.max;
        }
        self.min + (self.max - self.min) * (k as f64) / ((self.count - 1) as f64)
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.point(k)).collect()
    }
}

impl Default for FrequencyGrid {
    fn default() -> Self {
        Self {
            min: -450.0,
            max: 450.0,
            count: 2001,
        }
    }
}

/// Sampled incoherent spectrum with its four terms.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumTrace {
    pub omega: Vec<f64>,
    pub total: Vec<f64>,
    pub terms: [Vec<f64>; 4],
    pub system: System,
    pub flags: SpectrumTermFlags,
}

impl SpectrumTrace {
    pub fn term(&self, t: Term) -> &[f64] {
        &self.terms[t.slot()]
    }

    /// `P1 - P3`.
    pub fn intra(&self) -> Vec<f64> {
        self.combination(&[(Term::P1, 1.0), (Term::P3, -1.0)])
    }

    /// `P1 + P2 - P4`.
    pub fn inter(&self) -> Vec<f64> {
        self.combination(&[(Term::P1, 1.0), (Term::P2, 1.0), (Term::P4, -1.0)])
    }

    /// Frequencies of the local maxima of the total reaching `frac` of its
    /// global maximum.
    pub fn peaks(&self, frac: f64) -> Vec<f64> {
        local_maxima(&self.omega, &self.total, frac)
    }

    pub fn combination(&self, parts: &[(Term, f64)]) -> Vec<f64> {
        (0..self.omega.len())
            .map(|k| parts.iter().map(|(t, c)| c * self.terms[t.slot()][k]).sum())
            .collect()
    }
}

/// Abscissae of strict interior local maxima of `y` with
/// `y >= frac * max(y)`.
pub fn local_maxima(x: &[f64], y: &[f64], frac: f64) -> Vec<f64> {
    let top = y.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (1..y.len().saturating_sub(1))
        .filter(|&k| y[k] > y[k - 1] && y[k] >= y[k + 1] && y[k] >= frac * top)
        .map(|k| x[k])
        .collect()
}

/// All sixteen pi-pi transforms at one frequency, indexed
/// `[i][j][mu][nu]` with `i, j` over `Pi1, Pi2`.
pub type TransformSet = [[[[Complex64; 2]; 2]; 2]; 2];

/// Precomputed steady state and Hessenberg-reduced deflated generator.
#[derive(Debug, Clone)]
pub struct CorrelationEngine {
    system: System,
    flags: SpectrumTermFlags,
    rho_ss: DensityVector,
    solver: ShiftedSolver,
    /// Projected sources, slot `2 j + nu`.
    sources: Vec<CVector>,
    /// Projected observables `vec((S_i^{+mu})^T)`, slot `2 i + mu`.
    observables: Vec<CVector>,
}

fn pi_slot(t: Transition) -> usize {
    t.index() - 1
}

fn atom_slot(a: Atom) -> usize {
    a.index() - 1
}

/// `M - rho_ss (x) tr`.
pub fn deflate(m: &Superoperator, rho_ss: &DensityVector) -> CMatrix {
    let t = linalg::trace_functional(PAIR_DIM);
    m.matrix() - &rho_ss.0 * t.transpose()
}

/// `vec(S_j^{-nu} rho - <S_j^{-nu}> rho)`.
pub fn fluctuation_source(
    ops: &OperatorSet,
    rho_ss: &DensityVector,
    j: Transition,
    nu: Atom,
) -> CVector {
    let rho = rho_ss.to_matrix();
    let down = ops.lowering(j, nu);
    let mean = rho_ss.expectation(down);
    linalg::vectorize(&(down * &rho - &rho * mean))
}

/// `a` with `a . vec(X) = tr(op X)`.
pub fn trace_pairing(op: &CMatrix) -> CVector {
    linalg::vectorize(&op.transpose())
}

impl CorrelationEngine {
    pub fn new(system: System, flags: SpectrumTermFlags) -> Result<Self> {
        let m = system.liouvillian()?;
        let rho_ss = steady_state(&m)?;
        Ok(Self::from_parts(system, flags, &m, rho_ss))
    }

    pub fn from_parts(
        system: System,
        flags: SpectrumTermFlags,
        m: &Superoperator,
        rho_ss: DensityVector,
    ) -> Self {
        let ops = OperatorSet::new();
        let solver = ShiftedSolver::new(deflate(m, &rho_ss));
        let mut sources = Vec::with_capacity(4);
        let mut observables = Vec::with_capacity(4);
        for t in Transition::PI {
            for a in Atom::BOTH {
                sources.push(solver.project_rhs(&fluctuation_source(&ops, &rho_ss, t, a)));
                observables.push(solver.project_functional(&trace_pairing(ops.raising(t, a))));
            }
        }
        Self {
            system,
            flags,
            rho_ss,
            solver,
            sources,
            observables,
        }
    }

    pub fn steady_state(&self) -> &DensityVector {
        &self.rho_ss
    }

    pub fn system(&self) -> &System {
        &self.system
    }

    /// All sixteen `T_ij^{mu nu}(w)`, phases included.
    pub fn transforms(&self, omega: f64, work: &mut Vec<Complex64>) -> Result<TransformSet> {
        let mut solved = self.sources.clone();
        self.solver
            .solve_projected(Complex64::new(0.0, omega), &mut solved, work)
            .map_err(|_| Error::SingularResolvent { omega })?;
        let mut out = [[[[Complex64::new(0.0, 0.0); 2]; 2]; 2]; 2];
        for i in Transition::PI {
            for mu in Atom::BOTH {
                let obs = &self.observables[2 * pi_slot(i) + atom_slot(mu)];
                for j in Transition::PI {
                    for nu in Atom::BOTH {
                        let z = &solved[2 * pi_slot(j) + atom_slot(nu)];
                        let phase = self.flags.phase(&self.system.geometry, mu, nu);
                        out[pi_slot(i)][pi_slot(j)][atom_slot(mu)][atom_slot(nu)] =
                            obs.dot(z) * phase;
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(1/pi) Re sum (-1)^{i+j} T` split into `P1..P4` (unsigned).
    pub fn terms(&self, omega: f64, work: &mut Vec<Complex64>) -> Result<[f64; 4]> {
        let t = self.transforms(omega, work)?;
        let mut parts = [0.0; 4];
        for i in Transition::PI {
            for j in Transition::PI {
                for mu in Atom::BOTH {
                    for nu in Atom::BOTH {
                        let term = Term::of(i, j, mu, nu);
                        let z = t[pi_slot(i)][pi_slot(j)][atom_slot(mu)][atom_slot(nu)];
                        // (-1)^{i+j} = +1 for i = j; the minus sign of i != j is
                        // carried by Term::sign
                        parts[term.slot()] += z.re / PI;
                    }
                }
            }
        }
        Ok(parts)
    }

    pub fn spectrum(&self, grid: &FrequencyGrid, exec: Execution) -> Result<SpectrumTrace> {
        let omega = grid.points();
        let rows = exec.map_init(
            omega.len(),
            || Vec::with_capacity(LIOUVILLE_DIM * LIOUVILLE_DIM),
            |work, k| self.terms(omega[k], work),
        );
        let mut total = Vec::with_capacity(omega.len());
        let mut terms: [Vec<f64>; 4] = Default::default();
        for row in rows {
            let parts = row?;
            total.push(self.flags.combine(&parts));
            for (slot, v) in parts.iter().enumerate() {
                terms[slot].push(*v);
            }
        }
        Ok(SpectrumTrace {
            omega,
            total,
            terms,
            system: self.system,
            flags: self.flags,
        })
    }
}

/// Single transform by a dense LU solve of the deflated resolvent.
#[allow(clippy::too_many_arguments)]
pub fn correlation_transform(
    i: Transition,
    j: Transition,
    mu: Atom,
    nu: Atom,
    omega: f64,
    rho_ss: &DensityVector,
    m: &Superoperator,
    geometry: &Geometry,
    flags: &SpectrumTermFlags,
) -> Result<Complex64> {
    if !(i.is_pi() && j.is_pi()) {
        return Err(Error::InvalidParameter {
            name: "transition",
            reason: "correlation transforms are defined for pi transitions only".into(),
        });
    }
    let ops = OperatorSet::new();
    let a = CMatrix::identity(LIOUVILLE_DIM, LIOUVILLE_DIM) * Complex64::new(0.0, omega)
        - deflate(m, rho_ss);
    let b = fluctuation_source(&ops, rho_ss, j, nu);
    if b.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let x = a.lu().solve(&b).ok_or(Error::SingularResolvent { omega })?;
    Ok(trace_pairing(ops.raising(i, mu)).dot(&x) * flags.phase(geometry, mu, nu))
}

pub fn incoherent_pi_spectrum(
    grid: &FrequencyGrid,
    system: &System,
    flags: &SpectrumTermFlags,
    exec: Execution,
) -> Result<SpectrumTrace> {
    CorrelationEngine::new(*system, *flags)?.spectrum(grid, exec)
}

/// All four terms on; use [`SpectrumTrace::term`], [`SpectrumTrace::intra`]
/// and [`SpectrumTrace::inter`] for the parts.
pub fn decompose_spectrum(
    grid: &FrequencyGrid,
    system: &System,
    exec: Execution,
) -> Result<SpectrumTrace> {
    incoherent_pi_spectrum(grid, system, &SpectrumTermFlags::default(), exec)
}

/// `|sum_{mu, i in pi} (-1)^i <S_i^{-mu}> e^{-i k0 R.r_mu}|^2`.
pub fn coherent_intensity_of(
    rho_ss: &DensityVector,
    geometry: &Geometry,
    flags: &SpectrumTermFlags,
) -> f64 {
    let ops = OperatorSet::new();
    let mut amplitude = Complex64::new(0.0, 0.0);
    for mu in Atom::BOTH {
        let phase = Complex64::from_polar(1.0, -K0 * flags.detector.dot(&geometry.position(mu)));
        for i in Transition::PI {
            amplitude += rho_ss.expectation(ops.lowering(i, mu)) * i.pi_sign() * phase;
        }
    }
    amplitude.norm_sqr()
}

/// Total coherent intensity. The undriven system has none.
pub fn coherent_intensity(system: &System, flags: &SpectrumTermFlags) -> Result<f64> {
    if system.drive.rabi == 0.0 {
        return Ok(0.0);
    }
    Ok(coherent_intensity_of(
        &system.steady_state()?,
        &system.geometry,
        flags,
    ))
}

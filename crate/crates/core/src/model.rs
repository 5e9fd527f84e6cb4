// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Level scheme, dipole moments, geometry and drive of the atom pair.
//!
//! Units: rates and frequencies in units of the pi-transition decay constant
//! `gamma_pi = 1`, lengths in units of the pi-transition wavelength
//! `lambda_pi = 1`, and `hbar = 1`. The vacuum wavenumber is therefore
//! `k0 = 2 pi`.
//!
//! Each atom has excited states |1>, |2> and ground states |3>, |4>. The
//! product space orders states as |a>_1 (x) |b>_2 -> 4 (a - 1) + (b - 1),
//! i.e. the index of atom 1 varies slowest.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Vacuum wavenumber of the (degenerate) transitions, `2 pi / lambda_pi`.
pub const K0: f64 = 2.0 * PI;
/// Bare decay constant of the pi transitions.
pub const GAMMA_PI: f64 = 1.0;
/// Bare decay constant of the sigma transitions (`|d_sigma|^2 = 2 |d_pi|^2`).
pub const GAMMA_SIGMA: f64 = 2.0;

/// Levels per atom.
pub const ATOM_DIM: usize = 4;
/// Dimension of the two-atom Hilbert space.
pub const PAIR_DIM: usize = ATOM_DIM * ATOM_DIM;
/// Length of a vectorized two-atom density matrix.
pub const LIOUVILLE_DIM: usize = PAIR_DIM * PAIR_DIM;

pub(crate) const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub(crate) const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub(crate) const I: Complex64 = Complex64::new(0.0, 1.0);

/// One of the four dipole-allowed transitions of an atom.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Transition {
    /// |1> <-> |3>, linearly polarized.
    Pi1,
    /// |2> <-> |4>, linearly polarized, antiparallel to `Pi1`.
    Pi2,
    /// |2> <-> |3>, dipole along e_-.
    SigmaMinus,
    /// |1> <-> |4>, dipole along e_+.
    SigmaPlus,
}

impl Transition {
    pub const ALL: [Transition; 4] = [
        Transition::Pi1,
        Transition::Pi2,
        Transition::SigmaMinus,
        Transition::SigmaPlus,
    ];
    pub const PI: [Transition; 2] = [Transition::Pi1, Transition::Pi2];

    /// Maps the 1-based transition number used throughout the docs.
    pub fn from_index(i: usize) -> Result<Self> {
        match i {
            1 => Ok(Transition::Pi1),
            2 => Ok(Transition::Pi2),
            3 => Ok(Transition::SigmaMinus),
            4 => Ok(Transition::SigmaPlus),
            _ => Err(Error::IndexOutOfRange {
                what: "transition",
                index: i,
                lo: 1,
                hi: 4,
            }),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Transition::Pi1 => 1,
            Transition::Pi2 => 2,
            Transition::SigmaMinus => 3,
            Transition::SigmaPlus => 4,
        }
    }

    pub fn is_pi(self) -> bool {
        matches!(self, Transition::Pi1 | Transition::Pi2)
    }

    /// Zero-based (upper, lower) single-atom levels.
    pub fn levels(self) -> (usize, usize) {
        match self {
            Transition::Pi1 => (0, 2),
            Transition::Pi2 => (1, 3),
            Transition::SigmaMinus => (1, 2),
            Transition::SigmaPlus => (0, 3),
        }
    }

    pub fn decay_rate(self) -> f64 {
        if self.is_pi() {
            GAMMA_PI
        } else {
            GAMMA_SIGMA
        }
    }

    /// `(-1)^i`, the sign with which the transition enters the pi field.
    pub fn pi_sign(self) -> f64 {
        if self.index() % 2 == 0 {
            1.0
        } else {
            -1.0
        }
    }
}

/// One of the two atoms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    First,
    Second,
}

impl Atom {
    pub const BOTH: [Atom; 2] = [Atom::First, Atom::Second];

    pub fn from_index(mu: usize) -> Result<Self> {
        match mu {
            1 => Ok(Atom::First),
            2 => Ok(Atom::Second),
            _ => Err(Error::IndexOutOfRange {
                what: "atom",
                index: mu,
                lo: 1,
                hi: 2,
            }),
        }
    }

    pub fn index(self) -> usize {
        match self {
            Atom::First => 1,
            Atom::Second => 2,
        }
    }

    pub fn other(self) -> Atom {
        match self {
            Atom::First => Atom::Second,
            Atom::Second => Atom::First,
        }
    }
}

/// Transition dipole moment in units of the reduced matrix element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dipole(pub Vector3<Complex64>);

impl Dipole {
    pub fn norm_sqr(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// `self . other^*`
    pub fn dot_conj(&self, other: &Dipole) -> Complex64 {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a * b.conj())
            .sum()
    }
}

/// Dipole moment of transition `t`.
pub fn dipole(t: Transition) -> Dipole {
    let pi = 1.0 / 3f64.sqrt();
    // sqrt(2/3) e_-, with e_- = (e_x - i e_y) / sqrt 2
    let sigma = (2.0f64 / 3.0).sqrt() / 2f64.sqrt();
    let v = match t {
        Transition::Pi1 => Vector3::new(ZERO, ZERO, Complex64::from(-pi)),
        Transition::Pi2 => Vector3::new(ZERO, ZERO, Complex64::from(pi)),
        Transition::SigmaMinus => Vector3::new(
            Complex64::from(sigma),
            Complex64::new(0.0, -sigma),
            ZERO,
        ),
        Transition::SigmaPlus => {
            Vector3::new(Complex64::from(sigma), Complex64::new(0.0, sigma), ZERO)
        }
    };
    Dipole(v)
}

/// Index-based variant of [`dipole`].
pub fn dipole_moment(i: usize) -> Result<Dipole> {
    Transition::from_index(i).map(dipole)
}

/// Monochromatic drive propagating along y, polarized along z.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveField {
    /// Rabi frequency `Omega` at the origin (real, nonnegative).
    pub rabi: f64,
    /// Laser detuning `omega_L - omega_0`.
    pub detuning: f64,
}

impl DriveField {
    pub fn new(rabi: f64, detuning: f64) -> Result<Self> {
        if !rabi.is_finite() || rabi < 0.0 {
            return Err(Error::InvalidParameter {
                name: "rabi",
                reason: format!("must be finite and nonnegative, got {rabi}"),
            });
        }
        if !detuning.is_finite() {
            return Err(Error::InvalidParameter {
                name: "detuning",
                reason: format!("must be finite, got {detuning}"),
            });
        }
        Ok(Self { rabi, detuning })
    }

    pub fn propagation(&self) -> Vector3<f64> {
        Vector3::new(0.0, 1.0, 0.0)
    }

    pub fn polarization(&self) -> Vector3<f64> {
        Vector3::new(0.0, 0.0, 1.0)
    }

    /// Drive wavevector; the laser is taken resonant enough that `k_L = k0`.
    pub fn wavevector(&self) -> Vector3<f64> {
        self.propagation() * K0
    }
}

/// Atom 1 at the origin, atom 2 at `r12 (sin t cos p, sin t sin p, cos t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    pub separation: f64,
    pub theta: f64,
    pub phi: f64,
}

impl Geometry {
    pub fn new(separation: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(separation.is_finite() && separation > 0.0) {
            return Err(Error::ZeroSeparation(separation));
        }
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "theta/phi",
                reason: "angles must be finite".into(),
            });
        }
        Ok(Self {
            separation,
            theta,
            phi,
        })
    }

    /// Separation vector `r_2 - r_1`.
    ///
    /// The polar components use the complementary angle so that
    /// `theta = FRAC_PI_2` yields an exactly zero `z` component.
    pub fn separation_vector(&self) -> Vector3<f64> {
        let (ct, st) = (std::f64::consts::FRAC_PI_2 - self.theta).sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        Vector3::new(st * cp, st * sp, ct) * self.separation
    }

    pub fn position(&self, atom: Atom) -> Vector3<f64> {
        match atom {
            Atom::First => Vector3::zeros(),
            Atom::Second => self.separation_vector(),
        }
    }
}

/// Position-dependent Rabi frequency `Omega_i(r_mu)`.
///
/// `Omega_i` is proportional to `d_i . epsilon`, normalized so that
/// `Omega_1(0) = Omega`; hence `Omega_2 = -Omega_1` and the sigma
/// transitions are not driven.
pub fn rabi_frequency(t: Transition, atom: Atom, g: &Geometry, f: &DriveField) -> Complex64 {
    let eps = f.polarization().map(Complex64::from);
    let d = dipole(t).0;
    let reference = dipole(Transition::Pi1).0.dot(&eps);
    let ratio = d.dot(&eps) / reference;
    let phase = f.wavevector().dot(&g.position(atom));
    ratio * f.rabi * Complex64::from_polar(1.0, phase)
}

fn single_atom_raising(t: Transition) -> DMatrix<Complex64> {
    let (upper, lower) = t.levels();
    let mut m = DMatrix::zeros(ATOM_DIM, ATOM_DIM);
    m[(upper, lower)] = ONE;
    m
}

/// Embeds a single-atom operator into the pair space.
pub fn embed(op: &DMatrix<Complex64>, atom: Atom) -> DMatrix<Complex64> {
    let id = DMatrix::<Complex64>::identity(ATOM_DIM, ATOM_DIM);
    match atom {
        Atom::First => op.kronecker(&id),
        Atom::Second => id.kronecker(op),
    }
}

/// Raising operator `S_i^{+mu}` on the 16-dimensional pair space.
pub fn raising(t: Transition, atom: Atom) -> DMatrix<Complex64> {
    embed(&single_atom_raising(t), atom)
}

/// Lowering operator `S_i^{-mu}`, the adjoint of [`raising`].
pub fn lowering(t: Transition, atom: Atom) -> DMatrix<Complex64> {
    raising(t, atom).adjoint()
}

/// Index-based raising operator.
pub fn transition_operator(i: usize, mu: usize) -> Result<DMatrix<Complex64>> {
    Ok(raising(Transition::from_index(i)?, Atom::from_index(mu)?))
}

/// Cached raising operators for every (transition, atom) pair.
#[derive(Debug, Clone)]
pub struct OperatorSet {
    raising: Vec<DMatrix<Complex64>>,
    lowering: Vec<DMatrix<Complex64>>,
}

impl OperatorSet {
    pub fn new() -> Self {
        let mut raising_ops = Vec::with_capacity(8);
        for atom in Atom::BOTH {
            for t in Transition::ALL {
                raising_ops.push(raising(t, atom));
            }
        }
        let lowering_ops = raising_ops.iter().map(|m| m.adjoint()).collect();
        Self {
            raising: raising_ops,
            lowering: lowering_ops,
        }
    }

    fn slot(t: Transition, atom: Atom) -> usize {
        (atom.index() - 1) * 4 + (t.index() - 1)
    }

    pub fn raising(&self, t: Transition, atom: Atom) -> &DMatrix<Complex64> {
        &self.raising[Self::slot(t, atom)]
    }

    pub fn lowering(&self, t: Transition, atom: Atom) -> &DMatrix<Complex64> {
        &self.lowering[Self::slot(t, atom)]
    }
}

impl Default for OperatorSet {
    fn default() -> Self {
        Self::new()
    }
}

// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Vacuum-mediated coupling constants.
//!
//! Inter-atomic (two-particle) constants come from the dipole-dipole tensor
//! `chi`; intra-atomic (single-particle) cross-decay constants come from the
//! normalized overlap of two dipole moments of the same atom. Every
//! inter-atomic constant belongs to one of five polarization groups, each of
//! which can be scaled by a factor in `[0, 1]` for analysis runs.

use std::fmt;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::{dipole, Atom, Geometry, Transition, K0};

/// Prefactor `D^2 k0^3 / (4 pi eps0 hbar)` in program units, fixed by
/// requiring the small-separation limit of `Im chi` to reproduce
/// `Gamma_11 = gamma_pi = 1`.
pub const CHI_NORMALIZATION: f64 = 4.5;

/// Dipole-dipole interaction tensor, complex symmetric 3x3.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiTensor(pub Matrix3<Complex64>);

impl ChiTensor {
    pub fn re(&self) -> Matrix3<f64> {
        self.0.map(|z| z.re)
    }

    pub fn im(&self) -> Matrix3<f64> {
        self.0.map(|z| z.im)
    }
}

/// Dipole-dipole tensor for separation `r` and wavenumber `k`, with
/// `eta = k |r|`.
pub fn chi_tensor(r: &Vector3<f64>, k: f64) -> Result<ChiTensor> {
    let dist = r.norm();
    if !(dist.is_finite() && dist > 0.0) {
        return Err(Error::ZeroSeparation(dist));
    }
    let eta = k * dist;
    let (e1, e2, e3) = (1.0 / eta, 1.0 / (eta * eta), 1.0 / (eta * eta * eta));
    let isotropic = Complex64::new(e1 - e3, e2);
    let radial = Complex64::new(e1 - 3.0 * e3, 3.0 * e2);
    let phase = Complex64::from_polar(CHI_NORMALIZATION, eta);
    let unit = r / dist;
    let m = Matrix3::from_fn(|p, q| {
        let delta = if p == q { 1.0 } else { 0.0 };
        (isotropic * delta - radial * (unit[p] * unit[q])) * phase
    });
    Ok(ChiTensor(m))
}

fn bilinear(di: &Vector3<Complex64>, m: &Matrix3<f64>, dj: &Vector3<Complex64>) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for p in 0..3 {
        for q in 0..3 {
            acc += di[p] * m[(p, q)] * dj[q].conj();
        }
    }
    acc
}

/// Incoherent and coherent inter-atomic constants `(Gamma_ij, Omega_ij)`
/// for separation vector `r`:
/// `Gamma_ij = d_i^T Im(chi) d_j^*`, `Omega_ij = d_i^T Re(chi) d_j^*`.
pub fn tpvc_constants(
    i: Transition,
    j: Transition,
    r: &Vector3<f64>,
) -> Result<(Complex64, Complex64)> {
    let chi = chi_tensor(r, K0)?;
    let (di, dj) = (dipole(i).0, dipole(j).0);
    Ok((bilinear(&di, &chi.im(), &dj), bilinear(&di, &chi.re(), &dj)))
}

/// Intra-atomic cross-decay constant
/// `sqrt(gamma_i gamma_j) (d_i . d_j^*) / (|d_i| |d_j|)`.
pub fn spvc_constant(i: Transition, j: Transition) -> Complex64 {
    let (di, dj) = (dipole(i), dipole(j));
    (i.decay_rate() * j.decay_rate()).sqrt() * di.dot_conj(&dj) / (di.norm() * dj.norm())
}

/// Classification of a coupling constant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CouplingGroup {
    /// Bare decay, `mu = nu`, `i = j`.
    Diagonal,
    /// Intra-atomic cross coupling, `mu = nu`, `i != j`.
    Spvc,
    /// pi-sigma pairs between the atoms.
    G1,
    /// Two different sigma dipoles.
    G2,
    /// Two different pi dipoles.
    G3,
    /// Two equal sigma dipoles.
    G4,
    /// Two equal pi dipoles.
    G5,
}

impl CouplingGroup {
    pub const INTER: [CouplingGroup; 5] = [
        CouplingGroup::G1,
        CouplingGroup::G2,
        CouplingGroup::G3,
        CouplingGroup::G4,
        CouplingGroup::G5,
    ];

    /// 1-based group number for `G1..G5`.
    pub fn number(self) -> Option<usize> {
        match self {
            CouplingGroup::G1 => Some(1),
            CouplingGroup::G2 => Some(2),
            CouplingGroup::G3 => Some(3),
            CouplingGroup::G4 => Some(4),
            CouplingGroup::G5 => Some(5),
            _ => None,
        }
    }

    pub fn from_number(a: usize) -> Result<Self> {
        CouplingGroup::INTER
            .get(a.wrapping_sub(1))
            .copied()
            .ok_or(Error::IndexOutOfRange {
                what: "coupling group",
                index: a,
                lo: 1,
                hi: 5,
            })
    }

    /// The `(i, j)` pair whose inter-atomic constants represent the group.
    pub fn representative(self) -> Option<(Transition, Transition)> {
        use Transition::*;
        match self {
            CouplingGroup::G1 => Some((Pi1, SigmaMinus)),
            CouplingGroup::G2 => Some((SigmaMinus, SigmaPlus)),
            CouplingGroup::G3 => Some((Pi1, Pi2)),
            CouplingGroup::G4 => Some((SigmaMinus, SigmaMinus)),
            CouplingGroup::G5 => Some((Pi1, Pi1)),
            _ => None,
        }
    }
}

impl fmt::Display for CouplingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.number() {
            Some(n) => write!(f, "G{n}"),
            None if *self == CouplingGroup::Diagonal => f.write_str("diagonal"),
            None => f.write_str("SPVC"),
        }
    }
}

pub fn classify_group(i: Transition, j: Transition, mu: Atom, nu: Atom) -> CouplingGroup {
    if mu == nu {
        return if i == j {
            CouplingGroup::Diagonal
        } else {
            CouplingGroup::Spvc
        };
    }
    match (i.is_pi(), j.is_pi()) {
        (true, false) | (false, true) => CouplingGroup::G1,
        (false, false) if i != j => CouplingGroup::G2,
        (false, false) => CouplingGroup::G4,
        (true, true) if i != j => CouplingGroup::G3,
        (true, true) => CouplingGroup::G5,
    }
}

/// Per-group scale factors and the switch for intra-atomic cross decay in
/// the equations of motion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupMask {
    scale: [f64; 5],
    pub spvc_eom: bool,
}

impl GroupMask {
    /// The physical configuration.
    pub fn all_on() -> Self {
        Self {
            scale: [1.0; 5],
            spvc_eom: true,
        }
    }

    /// All inter-atomic groups scaled to zero; intra-atomic couplings kept.
    pub fn no_inter() -> Self {
        Self {
            scale: [0.0; 5],
            spvc_eom: true,
        }
    }

    /// Only the listed inter-atomic groups on.
    pub fn only(groups: &[CouplingGroup]) -> Self {
        let mut m = Self::no_inter();
        for g in groups {
            if let Some(n) = g.number() {
                m.scale[n - 1] = 1.0;
            }
        }
        m
    }

    pub fn with_scale(mut self, group: CouplingGroup, p: f64) -> Result<Self> {
        self.set_scale(group, p)?;
        Ok(self)
    }

    pub fn with_spvc_eom(mut self, on: bool) -> Self {
        self.spvc_eom = on;
        self
    }

    pub fn set_scale(&mut self, group: CouplingGroup, p: f64) -> Result<()> {
        let n = group.number().ok_or(Error::InvalidParameter {
            name: "group",
            reason: format!("{group} cannot be scaled"),
        })?;
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                name: "group scale",
                reason: format!("p{n} must lie in [0, 1], got {p}"),
            });
        }
        self.scale[n - 1] = p;
        Ok(())
    }

    /// Factor applied to entries of `group`; diagonal entries are never masked.
    pub fn factor(&self, group: CouplingGroup) -> f64 {
        match group {
            CouplingGroup::Diagonal => 1.0,
            CouplingGroup::Spvc => {
                if self.spvc_eom {
                    1.0
                } else {
                    0.0
                }
            }
            g => self.scale[g.number().unwrap() - 1],
        }
    }

    pub fn scales(&self) -> [f64; 5] {
        self.scale
    }
}

impl Default for GroupMask {
    fn default() -> Self {
        Self::all_on()
    }
}

/// All `Gamma_ij^{mu nu}` and `Omega_ij^{mu nu}`, indexed by
/// `(i, j, mu, nu)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CouplingTable {
    gamma: [[[[Complex64; 4]; 4]; 2]; 2],
    omega: [[[[Complex64; 4]; 4]; 2]; 2],
}

fn slot(t: Transition) -> usize {
    t.index() - 1
}

fn aslot(a: Atom) -> usize {
    a.index() - 1
}

impl CouplingTable {
    pub fn zeros() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self {
            gamma: [[[[z; 4]; 4]; 2]; 2],
            omega: [[[[z; 4]; 4]; 2]; 2],
        }
    }

    pub fn gamma(&self, i: Transition, j: Transition, mu: Atom, nu: Atom) -> Complex64 {
        self.gamma[aslot(mu)][aslot(nu)][slot(i)][slot(j)]
    }

    pub fn omega(&self, i: Transition, j: Transition, mu: Atom, nu: Atom) -> Complex64 {
        self.omega[aslot(mu)][aslot(nu)][slot(i)][slot(j)]
    }

    /// Overwrites a single entry. Does not maintain conjugate symmetry.
    pub fn set(
        &mut self,
        i: Transition,
        j: Transition,
        mu: Atom,
        nu: Atom,
        gamma: Complex64,
        omega: Complex64,
    ) {
        self.gamma[aslot(mu)][aslot(nu)][slot(i)][slot(j)] = gamma;
        self.omega[aslot(mu)][aslot(nu)][slot(i)][slot(j)] = omega;
    }

    /// Iterates over `(i, j, mu, nu, Gamma, Omega)`.
    pub fn entries(
        &self,
    ) -> impl Iterator<Item = (Transition, Transition, Atom, Atom, Complex64, Complex64)> + '_ {
        Atom::BOTH.into_iter().flat_map(move |mu| {
            Atom::BOTH.into_iter().flat_map(move |nu| {
                Transition::ALL.into_iter().flat_map(move |i| {
                    Transition::ALL.into_iter().map(move |j| {
                        (i, j, mu, nu, self.gamma(i, j, mu, nu), self.omega(i, j, mu, nu))
                    })
                })
            })
        })
    }

    /// Checks `Gamma_ji^{nu mu} = conj(Gamma_ij^{mu nu})` (and the same for
    /// `Omega`), which the generator needs to map Hermitian operators onto
    /// Hermitian operators.
    pub fn check_conjugate_symmetry(&self, tol: f64) -> Result<()> {
        for (i, j, mu, nu, g, o) in self.entries() {
            let scale = 1.0 + g.norm().max(o.norm());
            let dg = (self.gamma(j, i, nu, mu) - g.conj()).norm();
            let dom = (self.omega(j, i, nu, mu) - o.conj()).norm();
            let deviation = dg.max(dom);
            if deviation > tol * scale {
                return Err(Error::NotConjugateSymmetric {
                    i: i.index(),
                    j: j.index(),
                    mu: mu.index(),
                    nu: nu.index(),
                    deviation,
                });
            }
        }
        Ok(())
    }

    /// Representative inter-atomic pair `(Gamma_a, Omega_a)` of a group.
    pub fn representative(&self, group: CouplingGroup) -> Option<(Complex64, Complex64)> {
        let (i, j) = group.representative()?;
        Some((
            self.gamma(i, j, Atom::First, Atom::Second),
            self.omega(i, j, Atom::First, Atom::Second),
        ))
    }
}

/// Assembles the full coupling table for a geometry, with the mask applied.
pub fn build_coupling_table(g: &Geometry, mask: &GroupMask) -> Result<CouplingTable> {
    let mut table = CouplingTable::zeros();
    let zero = Complex64::new(0.0, 0.0);
    for mu in Atom::BOTH {
        for nu in Atom::BOTH {
            let r = g.position(mu) - g.position(nu);
            for i in Transition::ALL {
                for j in Transition::ALL {
                    let group = classify_group(i, j, mu, nu);
                    let (gamma, omega) = match group {
                        CouplingGroup::Diagonal => (Complex64::from(i.decay_rate()), zero),
                        CouplingGroup::Spvc => (spvc_constant(i, j), zero),
                        _ => tpvc_constants(i, j, &r)?,
                    };
                    let p = mask.factor(group);
                    table.set(i, j, mu, nu, gamma * p, omega * p);
                }
            }
        }
    }
    Ok(table)
}

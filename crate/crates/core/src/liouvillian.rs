// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Interaction-picture Hamiltonian and the 256x256 generator `M` of the
//! two-atom master equation, together with its steady state, spectrum and
//! propagator.
//!
//! Vectorization is column stacking: `vec(A X B) = (B^T (x) A) vec(X)`, so
//! left multiplication is `1 (x) A` and right multiplication is `B^T (x) 1`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::coupling::{build_coupling_table, CouplingTable, GroupMask};
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::model::{
    rabi_frequency, Atom, DriveField, Geometry, OperatorSet, Transition, ATOM_DIM, I,
    LIOUVILLE_DIM, PAIR_DIM,
};

/// Column-stacked two-atom density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityVector(pub CVector);

impl DensityVector {
    pub fn from_matrix(rho: &CMatrix) -> Self {
        assert_eq!(rho.shape(), (PAIR_DIM, PAIR_DIM));
        Self(linalg::vectorize(rho))
    }

    pub fn to_matrix(&self) -> CMatrix {
        linalg::unvectorize(&self.0, PAIR_DIM)
    }

    pub fn trace(&self) -> Complex64 {
        (0..PAIR_DIM).map(|k| self.0[k * PAIR_DIM + k]).sum()
    }

    /// `tr(A rho)`.
    pub fn expectation(&self, op: &CMatrix) -> Complex64 {
        // tr(A X) = sum_{kl} A_kl X_lk = vec(A^T) . vec(X)
        let mut acc = Complex64::new(0.0, 0.0);
        for l in 0..PAIR_DIM {
            for k in 0..PAIR_DIM {
                let a = op[(k, l)];
                if a != Complex64::new(0.0, 0.0) {
                    acc += a * self.0[k * PAIR_DIM + l];
                }
            }
        }
        acc
    }

    pub fn hermiticity_defect(&self) -> f64 {
        linalg::hermiticity_defect(&self.to_matrix())
    }

    pub fn min_eigenvalue(&self) -> f64 {
        linalg::hermitian_eigenvalues(&self.to_matrix())[0]
    }
}

/// The generator `M`, `d/dt vec(rho) = M vec(rho)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Superoperator(pub CMatrix);

impl Superoperator {
    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn apply(&self, rho: &DensityVector) -> DensityVector {
        DensityVector(&self.0 * &rho.0)
    }

    /// Largest entry of `t^T M`, where `t` is the trace functional.
    pub fn trace_leak(&self) -> f64 {
        let t = linalg::trace_functional(PAIR_DIM);
        self.0.tr_mul(&t).camax()
    }
}

/// Eigenvalues `xi_j = chi_j + i upsilon_j` of the generator, sorted by
/// imaginary part then real part, with optional right eigenvectors in the
/// same order.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    pub values: Vec<Complex64>,
    pub vectors: Option<CMatrix>,
}

impl SpectralDecomposition {
    pub fn max_real_part(&self) -> f64 {
        self.values.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max)
    }

    /// Distance from the origin of the eigenvalue closest to it.
    pub fn null_distance(&self) -> f64 {
        self.values.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min)
    }

    /// Largest distance between an eigenvalue and its partner in a greedy
    /// nearest matching of the spectrum against its complex conjugate.
    pub fn conjugation_defect(&self) -> f64 {
        let mut unused: Vec<Complex64> = self.values.iter().map(|z| z.conj()).collect();
        let mut worst = 0.0f64;
        for z in &self.values {
            let (idx, dist) = unused
                .iter()
                .enumerate()
                .map(|(k, w)| (k, (z - w).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1))
                .expect("spectrum and its conjugate have equal length");
            worst = worst.max(dist);
            unused.swap_remove(idx);
        }
        worst
    }
}

/// `H = -sum_mu sum_{i in pi} [Delta S_i^+ S_i^- + (Omega_i(r_mu) S_i^+ + h.c.)]`.
pub fn build_hamiltonian(f: &DriveField, g: &Geometry) -> CMatrix {
    build_hamiltonian_with(&OperatorSet::new(), f, g)
}

fn build_hamiltonian_with(ops: &OperatorSet, f: &DriveField, g: &Geometry) -> CMatrix {
    let mut h = CMatrix::zeros(PAIR_DIM, PAIR_DIM);
    for mu in Atom::BOTH {
        for t in Transition::PI {
            let up = ops.raising(t, mu);
            let down = ops.lowering(t, mu);
            let rabi = rabi_frequency(t, mu, g, f);
            h -= (up * down) * Complex64::from(f.detuning);
            h -= up * rabi + down * rabi.conj();
        }
    }
    h
}

/// `M[a n + c, b n + d] += coeff A[a, b] B[c, d]`, i.e. `M += coeff (A (x) B)`.
fn add_kron(m: &mut CMatrix, coeff: Complex64, a: &CMatrix, b: &CMatrix) {
    let n = b.nrows();
    let nz = |x: &CMatrix| -> Vec<(usize, usize, Complex64)> {
        let mut v = Vec::new();
        for c in 0..x.ncols() {
            for r in 0..x.nrows() {
                let z = x[(r, c)];
                if z != Complex64::new(0.0, 0.0) {
                    v.push((r, c, z));
                }
            }
        }
        v
    };
    let (na, nb) = (nz(a), nz(b));
    for &(ra, ca, za) in &na {
        let s = coeff * za;
        for &(rb, cb, zb) in &nb {
            m[(ra * n + rb, ca * n + cb)] += s * zb;
        }
    }
}

/// Generator of `d rho/dt = -i[H, rho] + L_Omega rho + L_gamma rho`.
pub fn build_liouvillian(
    f: &DriveField,
    g: &Geometry,
    table: &CouplingTable,
) -> Result<Superoperator> {
    table.check_conjugate_symmetry(1e-12)?;
    let ops = OperatorSet::new();
    let mut h = build_hamiltonian_with(&ops, f, g);
    // Sum of Gamma S_i^+ S_j^-, Hermitian for a conjugate-symmetric table.
    let mut decay = CMatrix::zeros(PAIR_DIM, PAIR_DIM);
    for (i, j, mu, nu, gamma, omega) in table.entries() {
        if gamma == Complex64::new(0.0, 0.0) && omega == Complex64::new(0.0, 0.0) {
            continue;
        }
        let pair = ops.raising(i, mu) * ops.lowering(j, nu);
        if mu != nu {
            h -= &pair * omega;
        }
        decay += &pair * gamma;
    }
    let k = h * (-I) - decay;

    let n = PAIR_DIM;
    let mut m = CMatrix::zeros(LIOUVILLE_DIM, LIOUVILLE_DIM);
    for a in 0..n {
        for c in 0..n {
            for d in 0..n {
                // 1 (x) K
                m[(a * n + c, a * n + d)] += k[(c, d)];
                // conj(K) (x) 1
                m[(c * n + a, d * n + a)] += k[(c, d)].conj();
            }
        }
    }
    for (i, j, mu, nu, gamma, _) in table.entries() {
        if gamma == Complex64::new(0.0, 0.0) {
            continue;
        }
        // 2 Gamma S_j^- rho S_i^+  ->  2 Gamma (S_i^+)^T (x) S_j^-
        let up_t = ops.raising(i, mu).transpose();
        add_kron(&mut m, gamma * 2.0, &up_t, ops.lowering(j, nu));
    }
    Ok(Superoperator(m))
}

/// Steady state from the generator: one population row of `M` is replaced
/// by the trace constraint and the resulting system is solved directly.
pub fn steady_state(m: &Superoperator) -> Result<DensityVector> {
    let mut a = m.0.clone();
    let t = linalg::trace_functional(PAIR_DIM);
    // row 0 is the equation for rho_{00}, a population
    a.set_row(0, &t.transpose());
    let lu = a.lu();
    let u = lu.u();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for k in 0..LIOUVILLE_DIM {
        let p = u[(k, k)].norm();
        lo = lo.min(p);
        hi = hi.max(p);
    }
    let pivot_ratio = if hi > 0.0 { lo / hi } else { 0.0 };
    if pivot_ratio < 1e-12 {
        return Err(Error::DegenerateKernel { pivot_ratio });
    }
    let mut b = CVector::zeros(LIOUVILLE_DIM);
    b[0] = Complex64::new(1.0, 0.0);
    let x = lu.solve(&b).ok_or(Error::DegenerateKernel { pivot_ratio })?;
    Ok(DensityVector(x))
}

/// All 256 eigenvalues of `M`, sorted by imaginary part then real part.
pub fn eigenvalues(m: &Superoperator) -> Result<SpectralDecomposition> {
    eigen_decomposition(m, false)
}

pub fn eigen_decomposition(m: &Superoperator, with_vectors: bool) -> Result<SpectralDecomposition> {
    let (values, vectors) = linalg::eigen(&m.0, with_vectors)?;
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| {
        values[a]
            .im
            .total_cmp(&values[b].im)
            .then(values[a].re.total_cmp(&values[b].re))
    });
    let sorted = order.iter().map(|&k| values[k]).collect();
    let vectors = vectors.map(|v| DMatrix::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, order[c])]));
    Ok(SpectralDecomposition {
        values: sorted,
        vectors,
    })
}

/// `exp(M t)`.
pub fn propagator(m: &Superoperator, t: f64) -> Result<CMatrix> {
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "time",
            reason: format!("must be finite and nonnegative, got {t}"),
        });
    }
    Ok((&m.0 * Complex64::from(t)).exp())
}

/// `exp(M t) rho0`.
pub fn time_evolve(rho0: &DensityVector, t: f64, m: &Superoperator) -> Result<DensityVector> {
    if t == 0.0 {
        return Ok(rho0.clone());
    }
    Ok(DensityVector(propagator(m, t)? * &rho0.0))
}

/// Reduced single-atom density matrix.
pub fn partial_trace(rho: &DensityVector, keep: Atom) -> CMatrix {
    let full = rho.to_matrix();
    CMatrix::from_fn(ATOM_DIM, ATOM_DIM, |r, c| {
        (0..ATOM_DIM)
            .map(|k| match keep {
                Atom::First => full[(r * ATOM_DIM + k, c * ATOM_DIM + k)],
                Atom::Second => full[(k * ATOM_DIM + r, k * ATOM_DIM + c)],
            })
            .sum()
    })
}

/// Drive, geometry and coupling mask of one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct System {
    pub drive: DriveField,
    pub geometry: Geometry,
    pub mask: GroupMask,
}

impl System {
    pub fn new(drive: DriveField, geometry: Geometry, mask: GroupMask) -> Self {
        Self {
            drive,
            geometry,
            mask,
        }
    }

    pub fn coupling_table(&self) -> Result<CouplingTable> {
        build_coupling_table(&self.geometry, &self.mask)
    }

    pub fn liouvillian(&self) -> Result<Superoperator> {
        build_liouvillian(&self.drive, &self.geometry, &self.coupling_table()?)
    }

    pub fn steady_state(&self) -> Result<DensityVector> {
        steady_state(&self.liouvillian()?)
    }
}

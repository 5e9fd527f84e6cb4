// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Dense complex linear-algebra helpers.

use nalgebra::{DMatrix, DVector, Schur, SymmetricEigen};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Column-stacked vectorization (nalgebra storage is column-major).
pub fn vectorize(m: &CMatrix) -> CVector {
    CVector::from_column_slice(m.as_slice())
}

pub fn unvectorize(v: &CVector, n: usize) -> CMatrix {
    CMatrix::from_column_slice(n, n, v.as_slice())
}

/// Row vector `t` with `t . vec(X) = tr X`.
pub fn trace_functional(n: usize) -> CVector {
    vectorize(&CMatrix::identity(n, n))
}

/// Eigenvalues of the Hermitian part of `m`, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let h = (m + m.adjoint()) * Complex64::from(0.5);
    let mut ev: Vec<f64> = SymmetricEigen::new(h).eigenvalues.iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Trace norm of the Hermitian part of `m`.
pub fn trace_norm(m: &CMatrix) -> f64 {
    hermitian_eigenvalues(m).iter().map(|x| x.abs()).sum()
}

/// Largest deviation of `m` from Hermiticity.
pub fn hermiticity_defect(m: &CMatrix) -> f64 {
    (m - m.adjoint()).camax()
}

/// Solver for shifted systems `(s I - A) x = b` over many shifts `s`.
///
/// `A` is reduced once to upper Hessenberg form `A = Q H Q^*`; every shift
/// then costs one pivoted elimination of `s I - H`, which is `O(n^2)`.
#[derive(Debug, Clone)]
pub struct ShiftedSolver {
    n: usize,
    q: CMatrix,
    /// Row-major copy of `H`, restricted to its Hessenberg band.
    h: Vec<Complex64>,
}

impl ShiftedSolver {
    pub fn new(a: CMatrix) -> Self {
        let n = a.nrows();
        assert_eq!(n, a.ncols(), "shifted solver needs a square matrix");
        let (q, hm) = a.hessenberg().unpack();
        let mut h = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in r.saturating_sub(1)..n {
                h[r * n + c] = hm[(r, c)];
            }
        }
        Self { n, q, h }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `Q^* b`, the right-hand side in Hessenberg coordinates.
    pub fn project_rhs(&self, b: &CVector) -> CVector {
        self.q.ad_mul(b)
    }

    /// `Q^T a`, so that `a . x = (Q^T a) . z` for `x = Q z`.
    pub fn project_functional(&self, a: &CVector) -> CVector {
        self.q.tr_mul(a)
    }

    /// Maps a Hessenberg-coordinate solution back, `x = Q z`.
    pub fn lift(&self, z: &CVector) -> CVector {
        &self.q * z
    }

    /// Solves `(s I - H) z = y` in place for each column of `rhs`.
    pub fn solve_projected(
        &self,
        shift: Complex64,
        rhs: &mut [CVector],
        work: &mut Vec<Complex64>,
    ) -> Result<()> {
        let n = self.n;
        work.clear();
        work.extend(self.h.iter().map(|z| -z));
        for k in 0..n {
            work[k * n + k] += shift;
        }
        let scale = work.iter().fold(0.0f64, |m, z| m.max(z.norm())).max(1.0);
        let tiny = scale * f64::EPSILON * 1e-3;
        let singular = || Error::SingularResolvent { omega: shift.im };
        for k in 0..n.saturating_sub(1) {
            let (pk, sub) = (work[k * n + k], work[(k + 1) * n + k]);
            if sub.norm() > pk.norm() {
                for c in k..n {
                    work.swap(k * n + c, (k + 1) * n + c);
                }
                for y in rhs.iter_mut() {
                    y.swap_rows(k, k + 1);
                }
            }
            let pivot = work[k * n + k];
            if pivot.norm() <= tiny {
                return Err(singular());
            }
            let l = work[(k + 1) * n + k] / pivot;
            if l != Complex64::new(0.0, 0.0) {
                let (upper, lower) = work.split_at_mut((k + 1) * n);
                let row_k = &upper[k * n..k * n + n];
                let row_next = &mut lower[..n];
                for c in k + 1..n {
                    row_next[c] -= l * row_k[c];
                }
                row_next[k] = Complex64::new(0.0, 0.0);
                for y in rhs.iter_mut() {
                    let yk = y[k];
                    y[k + 1] -= l * yk;
                }
            }
        }
        if work[(n - 1) * n + n - 1].norm() <= tiny {
            return Err(singular());
        }
        for y in rhs.iter_mut() {
            for r in (0..n).rev() {
                let row = &work[r * n..r * n + n];
                let mut acc = y[r];
                for c in r + 1..n {
                    acc -= row[c] * y[c];
                }
                y[r] = acc / row[r];
            }
        }
        Ok(())
    }

    /// Convenience: full solve of `(s I - A) x = b`.
    pub fn solve(&self, shift: Complex64, b: &CVector) -> Result<CVector> {
        let mut rhs = [self.project_rhs(b)];
        let mut work = Vec::new();
        self.solve_projected(shift, &mut rhs, &mut work)?;
        Ok(self.lift(&rhs[0]))
    }
}

/// Complex Schur form of `a + s I`, returned with `s`.
///
/// The QR iteration deflates only when a subdiagonal entry is small relative
/// to its diagonal neighbours, which never happens inside a cluster of exact
/// zero eigenvalues. A failed attempt is retried on a shifted matrix; the
/// shift moves the spectrum but leaves the Schur vectors invariant.
fn schur_with_shift(a: &CMatrix) -> Result<(CMatrix, CMatrix, Complex64)> {
    let n = a.nrows();
    let scale = a.camax().max(1.0);
    for shift in [
        Complex64::new(0.0, 0.0),
        Complex64::new(0.31, 0.17) * scale,
        Complex64::new(-0.23, 0.41) * scale,
    ] {
        let m = a + CMatrix::identity(n, n) * shift;
        if let Some(schur) = Schur::try_new(m, f64::EPSILON, 20_000) {
            let (q, t) = schur.unpack();
            return Ok((q, t, shift));
        }
    }
    Err(Error::EigenFailure)
}

/// Eigenvalues (and optionally right eigenvectors) of a general complex
/// matrix from its complex Schur form.
pub fn eigen(a: &CMatrix, with_vectors: bool) -> Result<(Vec<Complex64>, Option<CMatrix>)> {
    let n = a.nrows();
    let (q, t, shift) = schur_with_shift(a)?;
    let values: Vec<Complex64> = (0..n).map(|k| t[(k, k)] - shift).collect();
    if !with_vectors {
        return Ok((values, None));
    }
    let smin = (t.camax() * f64::EPSILON).max(f64::MIN_POSITIVE);
    let mut y = CMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        y[(k, k)] = Complex64::new(1.0, 0.0);
        for j in (0..k).rev() {
            let mut acc = Complex64::new(0.0, 0.0);
            for l in j + 1..=k {
                acc += t[(j, l)] * y[(l, k)];
            }
            let mut denom = t[(j, j)] - lambda;
            if denom.norm() < smin {
                denom = Complex64::new(smin, 0.0);
            }
            y[(j, k)] = -acc / denom;
        }
    }
    let mut v = q * y;
    for mut col in v.column_iter_mut() {
        let norm = col.norm();
        if norm > 0.0 {
            col /= Complex64::from(norm);
        }
    }
    Ok((values, Some(v)))
}

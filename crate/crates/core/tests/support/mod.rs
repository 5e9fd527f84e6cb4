// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls the crate's operator or generator builders: the
//! single-atom master equation is assembled column by column from its action
//! on matrix units, and correlation functions are integrated in the time
//! domain instead of through a resolvent.

#![allow(dead_code)]

use fluordimer_core::liouvillian::{propagator, Superoperator};
use nalgebra::DMatrix;
use num_complex::Complex64 as C;

pub type M = DMatrix<C>;

pub const C0: C = C::new(0.0, 0.0);
pub const C1: C = C::new(1.0, 0.0);

/// `(upper, lower)` levels (0-based) of transition `i` in 1..=4; levels
/// 0 and 1 are excited.
pub fn levels(i: usize) -> (usize, usize) {
    match i {
        1 => (0, 2),
        2 => (1, 3),
        3 => (1, 2),
        4 => (0, 3),
        _ => unreachable!(),
    }
}

/// Single-atom `sigma_i^+ = |upper><lower|`.
pub fn up(i: usize) -> M {
    let (u, l) = levels(i);
    let mut m = M::zeros(4, 4);
    m[(u, l)] = C1;
    m
}

pub fn down(i: usize) -> M {
    up(i).adjoint()
}

/// Bare decay rates and cross-decay between the two pi transitions, from
/// the dipole geometry (`d1 = -d2` along z, sigma dipoles orthogonal).
pub fn single_atom_rates() -> [[f64; 4]; 4] {
    let mut g = [[0.0; 4]; 4];
    g[0][0] = 1.0;
    g[1][1] = 1.0;
    g[2][2] = 2.0;
    g[3][3] = 2.0;
    g[0][1] = -1.0;
    g[1][0] = -1.0;
    g
}

/// Right-hand side of the single-atom master equation
/// `-i[H, rho] - sum Gamma_ij (s_i^+ s_j^- rho + rho s_i^+ s_j^- - 2 s_j^- rho s_i^+)`
/// with `H = -sum_{pi} [Delta s^+ s^- + (W_i s^+ + h.c.)]`.
pub fn single_atom_rhs(rho: &M, w: [C; 2], detuning: f64, cross_decay: bool) -> M {
    let mut h = M::zeros(4, 4);
    for (k, wi) in w.iter().enumerate() {
        let i = k + 1;
        h -= up(i) * down(i) * C::from(detuning) + up(i) * *wi + down(i) * wi.conj();
    }
    let mut out = (&h * rho - rho * &h) * C::new(0.0, -1.0);
    let rates = single_atom_rates();
    for i in 1..=4 {
        for j in 1..=4 {
            let g = rates[i - 1][j - 1];
            if g == 0.0 || (i != j && !cross_decay) {
                continue;
            }
            let pair = up(i) * down(j);
            out -= (&pair * rho + rho * &pair - down(j) * rho * up(i) * C::from(2.0)) * C::from(g);
        }
    }
    out
}

/// 16x16 generator under column stacking, one matrix unit at a time.
pub fn single_atom_generator(w: [C; 2], detuning: f64, cross_decay: bool) -> M {
    let mut gen = M::zeros(16, 16);
    for c in 0..4 {
        for r in 0..4 {
            let mut e = M::zeros(4, 4);
            e[(r, c)] = C1;
            let d = single_atom_rhs(&e, w, detuning, cross_decay);
            let col = r + 4 * c;
            for k in 0..16 {
                gen[(k, col)] = d[(k % 4, k / 4)];
            }
        }
    }
    gen
}

/// Null vector of a single-atom generator, trace-normalized, as a 4x4 matrix.
pub fn single_atom_steady_state(gen: &M) -> M {
    let mut a = gen.clone();
    for c in 0..16 {
        a[(0, c)] = if c % 5 == 0 { C1 } else { C0 };
    }
    let mut b = nalgebra::DVector::zeros(16);
    b[0] = C1;
    let x = a.lu().solve(&b).expect("single-atom steady state");
    M::from_column_slice(4, 4, x.as_slice())
}

/// Single-atom drive amplitudes at position `y` along the propagation axis.
pub fn single_atom_drive(rabi: f64, y: f64) -> [C; 2] {
    let phase = C::from_polar(1.0, 2.0 * std::f64::consts::PI * y);
    [phase * rabi, -phase * rabi]
}

pub fn trace_norm_distance(a: &M, b: &M) -> f64 {
    let d = a - b;
    let h = (&d + d.adjoint()) * C::from(0.5);
    nalgebra::SymmetricEigen::new(h)
        .eigenvalues
        .iter()
        .map(|x| x.abs())
        .sum()
}

/// Greedy nearest matching distance between two eigenvalue multisets.
pub fn multiset_distance(a: &[C], b: &[C]) -> f64 {
    assert_eq!(a.len(), b.len());
    let mut pool: Vec<C> = b.to_vec();
    let mut worst = 0.0f64;
    for z in a {
        let (k, d) = pool
            .iter()
            .enumerate()
            .map(|(k, w)| (k, (z - w).norm()))
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        worst = worst.max(d);
        pool.swap_remove(k);
    }
    worst
}

/// Gauss-Legendre nodes and weights on [-1, 1] (Newton on P_n).
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut x = (std::f64::consts::PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for m in 2..=n {
                let p2 = ((2 * m - 1) as f64 * x * p1 - (m - 1) as f64 * p0) / m as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Time-domain Fourier integrals `int_0^T e^{-i w tau} a . e^{M tau} b dtau`
/// by composite Gauss-Legendre quadrature on equal panels.
pub struct TimeDomain {
    /// `(tau, weight, e^{M tau})` for the nodes inside one panel.
    nodes: Vec<(f64, f64, M)>,
    step: M,
    width: f64,
    panels: usize,
}

impl TimeDomain {
    pub fn new(m: &Superoperator, horizon: f64, panels: usize, order: usize) -> Self {
        let width = horizon / panels as f64;
        let nodes = gauss_legendre(order)
            .into_iter()
            .map(|(x, w)| {
                let tau = 0.5 * width * (x + 1.0);
                (tau, 0.5 * width * w, propagator(m, tau).unwrap())
            })
            .collect();
        Self {
            nodes,
            step: propagator(m, width).unwrap(),
            width,
            panels,
        }
    }

    pub fn transform(&self, a: &nalgebra::DVector<C>, b: &nalgebra::DVector<C>, omegas: &[f64]) -> Vec<C> {
        let rows: Vec<_> = self.nodes.iter().map(|(t, w, e)| (*t, *w, e.tr_mul(a))).collect();
        let mut acc = vec![C0; omegas.len()];
        let mut x = b.clone();
        for p in 0..self.panels {
            let start = p as f64 * self.width;
            for (tau, w, row) in &rows {
                let v = row.dot(&x) * *w;
                for (k, om) in omegas.iter().enumerate() {
                    acc[k] += v * C::from_polar(1.0, -om * (start + tau));
                }
            }
            x = &self.step * x;
        }
        acc
    }
}

/// Adaptive time-domain transform: panel counts double until two successive
/// estimates agree to `rtol` for every operator pair and frequency.
pub fn converged_transforms(
    m: &Superoperator,
    pairs: &[(nalgebra::DVector<C>, nalgebra::DVector<C>)],
    omegas: &[f64],
    horizon: f64,
    rtol: f64,
) -> Vec<Vec<C>> {
    let eval = |panels: usize| {
        let q = TimeDomain::new(m, horizon, panels, 12);
        pairs.iter().map(|(a, b)| q.transform(a, b, omegas)).collect::<Vec<_>>()
    };
    let mut panels = 100;
    let mut prev = eval(panels);
    loop {
        panels *= 2;
        let next = eval(panels);
        let ok = prev.iter().flatten().zip(next.iter().flatten()).all(|(p, n)| (p - n).norm() <= rtol * n.norm());
        if ok || panels >= 1600 {
            return next;
        }
        prev = next;
    }
}

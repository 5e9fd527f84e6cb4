// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Sequential versus data-parallel evaluation of the two hot loops: a
//! resolvent spectrum over a frequency grid and a generator eigenvalue sweep.

use std::f64::consts::PI;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use fluordimer_core::{
    eigenvalues, incoherent_pi_spectrum, DriveField, Execution, FrequencyGrid, Geometry, GroupMask,
    SpectrumTermFlags, System,
};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn system(r: f64) -> System {
    System::new(
        DriveField::new(10.0, 0.0).unwrap(),
        Geometry::new(r, PI / 2.0, PI / 4.0).unwrap(),
        GroupMask::all_on(),
    )
}

fn spectrum_grid(c: &mut Criterion) {
    let sys = system(0.04);
    let grid = FrequencyGrid::new(-450.0, 450.0, 401).unwrap();
    let flags = SpectrumTermFlags::default();
    let mut group = c.benchmark_group("spectrum_401_points");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| incoherent_pi_spectrum(&grid, &sys, &flags, exec).unwrap())
        });
    }
    group.finish();
}

fn eigen_sweep(c: &mut Criterion) {
    let separations: Vec<f64> = (0..24).map(|k| 0.02 + 0.02 * k as f64).collect();
    let mut group = c.benchmark_group("eigen_sweep_24_separations");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| {
            b.iter(|| {
                exec.map(separations.len(), |k| {
                    let m = system(separations[k]).liouvillian().unwrap();
                    eigenvalues(&m).unwrap()
                })
            })
        });
    }
    group.finish();
}

criterion_group!(benches, spectrum_grid, eigen_sweep);
criterion_main!(benches);

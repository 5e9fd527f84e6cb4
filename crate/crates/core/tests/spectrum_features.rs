// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Qualitative features of spectra and generator eigenvalues.

use fluordimer_core::{
    eigenvalues, incoherent_pi_spectrum, CouplingGroup, DriveField, Execution, FrequencyGrid,
    Geometry, GroupMask, SpectrumTermFlags, System,
};
use std::f64::consts::PI;

fn system(rabi: f64, detuning: f64, r: f64, mask: GroupMask) -> System {
    System::new(
        DriveField::new(rabi, detuning).unwrap(),
        Geometry::new(r, PI / 2.0, PI / 4.0).unwrap(),
        mask,
    )
}

fn spectrum(sys: &System, grid: FrequencyGrid) -> fluordimer_core::SpectrumTrace {
    incoherent_pi_spectrum(&grid, sys, &SpectrumTermFlags::default(), Execution::default()).unwrap()
}

#[test]
fn far_apart_spectrum_is_a_mollow_triplet() {
    let trace = spectrum(
        &system(10.0, 0.0, 10.0, GroupMask::all_on()),
        FrequencyGrid::new(-50.0, 50.0, 1001).unwrap(),
    );
    let peaks = trace.peaks(0.05);
    assert_eq!(peaks.len(), 3, "{peaks:?}");
    assert!(peaks[1].abs() < 1.0);
    assert!((peaks[0] + 20.0).abs() < 1.5 && (peaks[2] - 20.0).abs() < 1.5, "{peaks:?}");
}

#[test]
fn uncoupled_resonant_spectrum_is_symmetric() {
    // Inter-atomic coherent exchange breaks the mirror symmetry of the
    // resonant spectrum, so the symmetry is checked with it switched off.
    for r in [0.2, 10.0] {
        let trace = spectrum(
            &system(10.0, 0.0, r, GroupMask::no_inter()),
            FrequencyGrid::new(-60.0, 60.0, 481).unwrap(),
        );
        let n = trace.total.len();
        let top = trace.total.iter().copied().fold(0.0f64, f64::max);
        for k in 0..n {
            let (a, b) = (trace.total[k], trace.total[n - 1 - k]);
            assert!((a - b).abs() <= 1e-6 * top, "r = {r}, w = {}: {a} vs {b}", trace.omega[k]);
        }
    }
}

#[test]
fn far_apart_eigenvalues_cluster_on_dressed_splittings() {
    let m = system(10.0, 0.0, 10.0, GroupMask::all_on()).liouvillian().unwrap();
    let spec = eigenvalues(&m).unwrap();
    let centers = [-40.0, -20.0, 0.0, 20.0, 40.0];
    for z in &spec.values {
        let d = centers.iter().map(|c| (z.im - c).abs()).fold(f64::INFINITY, f64::min);
        assert!(d < 3.0, "eigenvalue {z} off every cluster");
    }
    for c in centers {
        assert!(spec.values.iter().any(|z| (z.im - c).abs() < 3.0), "empty cluster {c}");
    }
}

#[test]
fn g2_sideband_moves_outward_as_atoms_approach() {
    let grid = FrequencyGrid::new(40.0, 800.0, 1521).unwrap();
    let mask = GroupMask::only(&[CouplingGroup::G2]);
    let positions: Vec<f64> = [0.06, 0.04, 0.03]
        .iter()
        .map(|&r| {
            let t = spectrum(&system(10.0, 0.0, r, mask), grid);
            let y = &t.total;
            // strongest interior local maximum; the window edge near the
            // Mollow sideband is excluded by construction
            let k = (1..y.len() - 1)
                .filter(|&k| y[k] > y[k - 1] && y[k] >= y[k + 1])
                .max_by(|&a, &b| y[a].total_cmp(&y[b]))
                .unwrap();
            t.omega[k]
        })
        .collect();
    assert!(positions.windows(2).all(|w| w[1] > w[0]), "{positions:?}");
}

#[test]
fn sequential_and_parallel_spectra_agree_bitwise() {
    let sys = system(8.0, -2.0, 0.1, GroupMask::all_on());
    let grid = FrequencyGrid::new(-100.0, 100.0, 101).unwrap();
    let flags = SpectrumTermFlags::default();
    let a = incoherent_pi_spectrum(&grid, &sys, &flags, Execution::Sequential).unwrap();
    let b = incoherent_pi_spectrum(&grid, &sys, &flags, Execution::Parallel).unwrap();
    assert_eq!(a, b);
}

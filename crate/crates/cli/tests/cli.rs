// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use fluordimer::read_csv;

fn run(config: &str, extra: &[&str], dir: &Path) -> (Output, PathBuf) {
    let cfg = dir.join("run.conf");
    std::fs::write(&cfg, config).unwrap();
    let out = dir.join("out.csv");
    let output = Command::new(env!("CARGO_BIN_EXE_fluordimer"))
        .arg("--config")
        .arg(&cfg)
        .arg("--out")
        .arg(&out)
        .args(extra)
        .output()
        .unwrap();
    (output, out)
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

const SMALL_SPECTRUM: &str = "\
# coarse resonant spectrum
mode = spectrum
r12 = 0.1
freq_min = -60
freq_max = 60
freq_count = 61
";

#[test]
fn spectrum_run_writes_schema_and_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run(SMALL_SPECTRUM, &[], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("omega_tilde_gpi,S_total,P1,P2,P3,P4\n"));
    let table = read_csv(&text).unwrap();
    assert_eq!(table.rows.len(), 61);
    assert!(table.rows.iter().flatten().all(|v| v.is_finite()));
    let omega = table.column("omega_tilde_gpi").unwrap();
    assert_eq!((omega[0], omega[30], omega[60]), (-60.0, 0.0, 60.0));
    for row in &table.rows {
        let parts = row[2] + row[3] - row[4] - row[5];
        assert!((parts - row[1]).abs() <= 1e-10 * row[1].abs());
    }
}

#[test]
fn output_is_identical_across_worker_counts() {
    let dir = tempfile::tempdir().unwrap();
    let config = "mode = eigenvalues-vs-distance\nr12_min = 0.05\nr12_max = 0.5\nr12_count = 4\n";
    let mut outputs = Vec::new();
    for threads in ["1", "3", "1"] {
        let (o, out) = run(config, &["--threads", threads], dir.path());
        assert!(o.status.success(), "{}", stderr(&o));
        outputs.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    assert_eq!(outputs[0], outputs[2]);
    let table = read_csv(std::str::from_utf8(&outputs[0]).unwrap()).unwrap();
    assert_eq!(table.header.len(), 1 + 2 * 256);
    assert_eq!(table.header[0], "r12_lpi");
    assert_eq!(table.rows.len(), 4);
    let ups = &table.rows[0][1..257];
    assert!(ups.windows(2).all(|w| w[0] <= w[1]), "imaginary parts are sorted");
}

#[test]
fn overrides_take_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run(SMALL_SPECTRUM, &["--set", "freq_count=5", "--set", "freq_max=0"], dir.path());
    assert!(o.status.success(), "{}", stderr(&o));
    let table = read_csv(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(table.column("omega_tilde_gpi").unwrap(), vec![-60.0, -45.0, -30.0, -15.0, 0.0]);
}

#[test]
fn config_errors_exit_with_one_and_cite_key_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let (o, _) = run("omega = 10\n# scales\np4 = 1.5\n", &[], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let msg = stderr(&o);
    assert!(msg.contains("p4") && msg.contains("line 3") && msg.contains("[0, 1]"), "{msg}");

    let (o, _) = run("mode = spectrum\nrabbi = 3\n", &[], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let msg = stderr(&o);
    assert!(msg.contains("rabbi") && msg.contains("line 2") && msg.contains("unknown key"), "{msg}");

    let (o, _) = run("", &["--set", "r12=zero"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("r12"));

    let o = Command::new(env!("CARGO_BIN_EXE_fluordimer"))
        .args(["--config", "/nonexistent/run.conf", "--out", "/tmp/x.csv"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));

    let o = Command::new(env!("CARGO_BIN_EXE_fluordimer")).arg("--bogus").output().unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn undriven_steady_scan_is_a_numerical_failure() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run(
        "mode = steady-vs-detuning\nomega = 0\ndelta_min = -1\ndelta_max = 1\ndelta_count = 3\n",
        &[],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
    let msg = stderr(&o);
    assert!(msg.contains("degenerate") && msg.contains("delta = -1"), "{msg}");
    assert!(!out.exists());
}

#[test]
fn steady_scan_pairs_columns() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run(
        "mode = steady-vs-detuning\nomega = 6\nr12 = 10\ndelta_min = -14\ndelta_max = -14\ndelta_count = 2\n",
        &[],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let t = read_csv(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(t.header[1], "pop1_eom_on");
    assert_eq!(t.header[2], "pop1_eom_off");
    assert_eq!(t.header.last().unwrap(), "im_rho13_eom_off");
    let row = &t.rows[0];
    let trace_on: f64 = [1, 3, 5, 7].iter().map(|&k| row[k]).sum();
    assert!((trace_on - 1.0).abs() < 1e-12);
}

#[test]
fn group_study_labels_columns() {
    let dir = tempfile::tempdir().unwrap();
    let (o, out) = run(
        "mode = group-study\nstudy_param = p4\nstudy_values = 0, 0.5\nfreq_min = -5\nfreq_max = 5\nfreq_count = 3\n",
        &[],
        dir.path(),
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let t = read_csv(&std::fs::read_to_string(out).unwrap()).unwrap();
    assert_eq!(t.header, vec!["omega_tilde_gpi", "S_p4=0", "S_p4=0.5"]);
    assert_eq!(t.rows.len(), 3);
}

#[test]
fn presets_parse() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("presets");
    for name in ["fig2a", "fig2b", "fig3", "fig4", "fig5", "fig7", "fig8"] {
        let text = std::fs::read_to_string(dir.join(format!("{name}.conf"))).unwrap();
        fluordimer::RunConfig::parse(&text, &[]).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

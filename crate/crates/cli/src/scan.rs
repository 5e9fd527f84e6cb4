// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Scan execution and CSV output.

use std::io::{self, Write};
use std::path::Path;

use fluordimer_core::spectrum::Term;
use fluordimer_core::{
    eigenvalues, incoherent_pi_spectrum, partial_trace, Atom, DriveField, Execution, Geometry,
    GroupMask, SpectrumTermFlags, System,
};

use crate::config::{Mode, RunConfig, StudyPoint};

#[derive(Debug, thiserror::Error)]
pub enum ScanError {
    #[error("{what} = {value}: {source}")]
    Numerical {
        what: &'static str,
        value: f64,
        #[source]
        source: fluordimer_core::Error,
    },
    #[error("{0}")]
    Model(#[from] fluordimer_core::Error),
    #[error("non-finite value in column '{column}' of row {row}")]
    NonFinite { column: String, row: usize },
}

/// Rows under a column schema.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanResult {
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ScanResult {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    fn check_finite(&self) -> Result<(), ScanError> {
        for (row, values) in self.rows.iter().enumerate() {
            if let Some(k) = values.iter().position(|v| !v.is_finite()) {
                return Err(ScanError::NonFinite {
                    column: self.header[k].clone(),
                    row,
                });
            }
        }
        Ok(())
    }
}

pub const SPECTRUM_HEADER: [&str; 6] = ["omega_tilde_gpi", "S_total", "P1", "P2", "P3", "P4"];

fn system(c: &RunConfig, rabi: f64, detuning: f64, separation: f64, mask: GroupMask) -> Result<System, fluordimer_core::Error> {
    Ok(System::new(
        DriveField::new(rabi, detuning)?,
        Geometry::new(separation, c.theta, c.phi)?,
        mask,
    ))
}

pub fn run_scan(c: &RunConfig, exec: Execution) -> Result<ScanResult, ScanError> {
    let result = match c.mode {
        Mode::Spectrum => spectrum(c, exec)?,
        Mode::EigenvaluesVsRabi => eigen_sweep(exec, "omega_gpi", &c.rabis.points(), |v| {
            system(c, v, c.detuning, c.separation, c.mask)
        })?,
        Mode::EigenvaluesVsDistance => eigen_sweep(exec, "r12_lpi", &c.separations.points(), |v| {
            system(c, c.rabi, c.detuning, v, c.mask)
        })?,
        Mode::SteadyVsDetuning => steady_sweep(c, exec)?,
        Mode::GroupStudy => group_study(c, exec)?,
    };
    result.check_finite()?;
    Ok(result)
}

fn spectrum(c: &RunConfig, exec: Execution) -> Result<ScanResult, ScanError> {
    let sys = system(c, c.rabi, c.detuning, c.separation, c.mask)?;
    let trace = incoherent_pi_spectrum(&c.frequencies.as_grid(), &sys, &c.flags, exec)?;
    let rows = (0..trace.omega.len())
        .map(|k| {
            let mut row = vec![trace.omega[k], trace.total[k]];
            row.extend(Term::ALL.iter().map(|t| trace.term(*t)[k]));
            row
        })
        .collect();
    Ok(ScanResult {
        header: SPECTRUM_HEADER.iter().map(|s| s.to_string()).collect(),
        rows,
    })
}

fn eigen_sweep<F>(
    exec: Execution,
    swept: &'static str,
    values: &[f64],
    build: F,
) -> Result<ScanResult, ScanError>
where
    F: Fn(f64) -> Result<System, fluordimer_core::Error> + Sync + Send,
{
    let n = fluordimer_core::model::LIOUVILLE_DIM;
    let mut header = vec![swept.to_string()];
    header.extend((1..=n).map(|k| format!("upsilon_{k}_gpi")));
    header.extend((1..=n).map(|k| format!("chi_{k}_gpi")));
    let rows = exec.try_map(values.len(), |k| {
        let v = values[k];
        let wrap = |source| ScanError::Numerical { what: swept, value: v, source };
        let m = build(v).and_then(|s| s.liouvillian()).map_err(wrap)?;
        let spec = eigenvalues(&m).map_err(wrap)?;
        let mut row = Vec::with_capacity(1 + 2 * n);
        row.push(v);
        row.extend(spec.values.iter().map(|z| z.im));
        row.extend(spec.values.iter().map(|z| z.re));
        Ok::<_, ScanError>(row)
    })?;
    Ok(ScanResult { header, rows })
}

const STEADY_QUANTITIES: [&str; 6] = ["pop1", "pop2", "pop3", "pop4", "re_rho13", "im_rho13"];

fn steady_sweep(c: &RunConfig, exec: Execution) -> Result<ScanResult, ScanError> {
    let mut header = vec!["delta_gpi".to_string()];
    for q in STEADY_QUANTITIES {
        header.push(format!("{q}_eom_on"));
        header.push(format!("{q}_eom_off"));
    }
    let values = c.detunings.points();
    let rows = exec.try_map(values.len(), |k| {
        let delta = values[k];
        let wrap = |source| ScanError::Numerical { what: "delta", value: delta, source };
        let mut quantities = [[0.0; 2]; 6];
        for (slot, eom) in [true, false].into_iter().enumerate() {
            let sys = system(c, c.rabi, delta, c.separation, c.mask.with_spvc_eom(eom)).map_err(wrap)?;
            let rho = partial_trace(&sys.steady_state().map_err(wrap)?, Atom::First);
            for level in 0..4 {
                quantities[level][slot] = rho[(level, level)].re;
            }
            quantities[4][slot] = rho[(0, 2)].re;
            quantities[5][slot] = rho[(0, 2)].im;
        }
        let mut row = vec![delta];
        row.extend(quantities.iter().flatten());
        Ok::<_, ScanError>(row)
    })?;
    Ok(ScanResult { header, rows })
}

fn study_system(c: &RunConfig, point: &StudyPoint) -> Result<(System, SpectrumTermFlags), fluordimer_core::Error> {
    let mut mask = c.mask;
    let mut flags = c.flags;
    let mut separation = c.separation;
    match point {
        StudyPoint::Scale(g, p) => mask.set_scale(*g, *p)?,
        StudyPoint::Separation(r) => separation = *r,
        StudyPoint::Groups(groups) => mask = GroupMask::only(groups).with_spvc_eom(c.mask.spvc_eom),
        StudyPoint::Intra(v) => {
            mask = mask.with_spvc_eom(v.eom());
            flags.include[Term::P3.slot()] = v.spectrum_side();
        }
    }
    Ok((system(c, c.rabi, c.detuning, separation, mask)?, flags))
}

fn group_study(c: &RunConfig, exec: Execution) -> Result<ScanResult, ScanError> {
    let grid = c.frequencies.as_grid();
    let mut header = vec!["omega_tilde_gpi".to_string()];
    header.extend(c.study.iter().map(|p| format!("S_{}", p.label())));
    let mut columns = Vec::with_capacity(c.study.len());
    for point in &c.study {
        let (sys, flags) = study_system(c, point)?;
        columns.push(incoherent_pi_spectrum(&grid, &sys, &flags, exec)?.total);
    }
    let rows = grid
        .points()
        .into_iter()
        .enumerate()
        .map(|(k, w)| std::iter::once(w).chain(columns.iter().map(|col| col[k])).collect())
        .collect();
    Ok(ScanResult { header, rows })
}

/// Writes the header and rows; every value carries 17 significant digits.
pub fn write_csv_to<W: Write>(r: &ScanResult, mut out: W) -> io::Result<()> {
    writeln!(out, "{}", r.header.join(","))?;
    let mut line = String::new();
    for row in &r.rows {
        line.clear();
        for (k, v) in row.iter().enumerate() {
            if k > 0 {
                line.push(',');
            }
            line.push_str(&format!("{v:.16e}"));
        }
        writeln!(out, "{line}")?;
    }
    out.flush()
}

pub fn write_csv(r: &ScanResult, path: &Path) -> io::Result<()> {
    let file = std::fs::File::create(path)?;
    write_csv_to(r, io::BufWriter::new(file))
}

/// Parses a file written by [`write_csv`].
pub fn read_csv(text: &str) -> Result<ScanResult, String> {
    let mut lines = text.lines();
    let header: Vec<String> = lines
        .next()
        .ok_or("empty file")?
        .split(',')
        .map(str::to_string)
        .collect();
    let rows = lines
        .enumerate()
        .map(|(k, l)| {
            l.split(',')
                .map(|v| v.parse::<f64>().map_err(|e| format!("row {}: {e}", k + 1)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ScanResult { header, rows })
}

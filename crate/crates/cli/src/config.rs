// Copyright 2026 The fluordimer Authors
// SPDX-License-Identifier: Apache-2.0

//! Run configuration: `key = value` lines with `#` comments, plus
//! command-line overrides applied after the file.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use fluordimer_core::spectrum::Term;
use fluordimer_core::{CouplingGroup, FrequencyGrid, GroupMask, SpectrumTermFlags};

/// Where a setting came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Default,
    Line(usize),
    /// The n-th `--set` flag, 1-based.
    Override(usize),
}

impl fmt::Display for Origin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Origin::Default => write!(f, "default"),
            Origin::Line(n) => write!(f, "line {n}"),
            Origin::Override(n) => write!(f, "--set #{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{origin}: {}{message}", key.as_ref().map(|k| format!("key '{k}': ")).unwrap_or_default())]
pub struct ConfigError {
    pub key: Option<String>,
    pub origin: Origin,
    pub message: String,
}

impl ConfigError {
    fn at(key: &str, origin: Origin, message: impl Into<String>) -> Self {
        Self {
            key: Some(key.to_string()),
            origin,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Spectrum,
    EigenvaluesVsRabi,
    EigenvaluesVsDistance,
    SteadyVsDetuning,
    GroupStudy,
}

impl Mode {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "spectrum" => Mode::Spectrum,
            "eigenvalues-vs-rabi" => Mode::EigenvaluesVsRabi,
            "eigenvalues-vs-distance" => Mode::EigenvaluesVsDistance,
            "steady-vs-detuning" => Mode::SteadyVsDetuning,
            "group-study" => Mode::GroupStudy,
            _ => return None,
        })
    }
}

/// Uniform sweep, both ends included.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sweep {
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Sweep {
    pub fn points(&self) -> Vec<f64> {
        FrequencyGrid {
            min: self.min,
            max: self.max,
            count: self.count,
        }
        .points()
    }

    pub fn as_grid(&self) -> FrequencyGrid {
        FrequencyGrid {
            min: self.min,
            max: self.max,
            count: self.count,
        }
    }
}

/// The four intra-atomic coupling variants of a study: cross decay in the
/// equations of motion on/off times the `P3` term on/off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntraVariant {
    Full,
    NoIntra,
    SpectrumOff,
    EomOff,
}

impl IntraVariant {
    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "full" => IntraVariant::Full,
            "no_intra" => IntraVariant::NoIntra,
            "spectrum_off" => IntraVariant::SpectrumOff,
            "eom_off" => IntraVariant::EomOff,
            _ => return None,
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            IntraVariant::Full => "full",
            IntraVariant::NoIntra => "no_intra",
            IntraVariant::SpectrumOff => "spectrum_off",
            IntraVariant::EomOff => "eom_off",
        }
    }

    pub fn eom(self) -> bool {
        matches!(self, IntraVariant::Full | IntraVariant::SpectrumOff)
    }

    pub fn spectrum_side(self) -> bool {
        matches!(self, IntraVariant::Full | IntraVariant::EomOff)
    }
}

/// One curve of a group study.
#[derive(Debug, Clone, PartialEq)]
pub enum StudyPoint {
    Scale(CouplingGroup, f64),
    Separation(f64),
    Groups(Vec<CouplingGroup>),
    Intra(IntraVariant),
}

impl StudyPoint {
    pub fn label(&self) -> String {
        match self {
            StudyPoint::Scale(g, p) => format!("p{}={p}", g.number().unwrap_or(0)),
            StudyPoint::Separation(r) => format!("r12={r}_lpi"),
            StudyPoint::Groups(gs) if gs.is_empty() => "groups=none".to_string(),
            StudyPoint::Groups(gs) => format!(
                "groups={}",
                gs.iter().filter_map(|g| g.number()).map(|n| n.to_string()).collect::<String>()
            ),
            StudyPoint::Intra(v) => format!("intra={}", v.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub rabi: f64,
    pub detuning: f64,
    pub separation: f64,
    pub theta: f64,
    pub phi: f64,
    pub mask: GroupMask,
    pub flags: SpectrumTermFlags,
    pub frequencies: Sweep,
    pub separations: Sweep,
    pub rabis: Sweep,
    pub detunings: Sweep,
    pub study: Vec<StudyPoint>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Spectrum,
            rabi: 10.0,
            detuning: 0.0,
            separation: 0.04,
            theta: PI / 2.0,
            phi: PI / 4.0,
            mask: GroupMask::all_on(),
            flags: SpectrumTermFlags::default(),
            frequencies: Sweep {
                min: -450.0,
                max: 450.0,
                count: 2001,
            },
            separations: Sweep {
                min: 0.02,
                max: 0.5,
                count: 97,
            },
            rabis: Sweep {
                min: 0.0,
                max: 20.0,
                count: 81,
            },
            detunings: Sweep {
                min: -30.0,
                max: 30.0,
                count: 241,
            },
            study: Vec::new(),
        }
    }
}

/// Every accepted key.
pub const KEYS: &[&str] = &[
    "mode", "omega", "delta", "r12", "theta", "phi", "p1", "p2", "p3", "p4", "p5", "spvc_eom",
    "include_p1", "include_p2", "include_p3", "include_p4", "freq_min", "freq_max", "freq_count",
    "r12_min", "r12_max", "r12_count", "rabi_min", "rabi_max", "rabi_count", "delta_min",
    "delta_max", "delta_count", "study_param", "study_values",
];

/// Parses a real number; `pi` multiples such as `pi/2`, `0.25*pi` and
/// `3*pi/4` are accepted for angles and everywhere else.
pub fn parse_real(s: &str) -> Option<f64> {
    let s = s.trim();
    if let Ok(v) = s.parse::<f64>() {
        return Some(v);
    }
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim().parse::<f64>().ok()?),
        None => (s, 1.0),
    };
    let coeff = match num.strip_suffix("pi") {
        Some("") => 1.0,
        Some("-") => -1.0,
        Some(c) => c.trim().strip_suffix('*')?.trim().parse::<f64>().ok()?,
        None => return None,
    };
    Some(coeff * PI / den)
}

fn parse_bool(s: &str) -> Option<bool> {
    match s {
        "true" | "on" | "yes" | "1" => Some(true),
        "false" | "off" | "no" | "0" => Some(false),
        _ => None,
    }
}

/// Raw `key -> (value, origin)` settings, later entries overriding earlier.
#[derive(Debug, Default, Clone)]
pub struct Settings {
    entries: HashMap<String, (String, Origin)>,
}

impl Settings {
    pub fn from_text(text: &str) -> Result<Self, ConfigError> {
        let mut s = Settings::default();
        for (k, raw) in text.lines().enumerate() {
            let origin = Origin::Line(k + 1);
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = split_assignment(line, origin)?;
            if let Some((_, first)) = s.entries.get(&key) {
                return Err(ConfigError::at(&key, origin, format!("duplicate key, first set at {first}")));
            }
            s.entries.insert(key, (value, origin));
        }
        Ok(s)
    }

    /// Applies `--set key=value` overrides in order.
    pub fn apply_overrides(&mut self, overrides: &[String]) -> Result<(), ConfigError> {
        for (k, item) in overrides.iter().enumerate() {
            let origin = Origin::Override(k + 1);
            let (key, value) = split_assignment(item.trim(), origin)?;
            self.entries.insert(key, (value, origin));
        }
        Ok(())
    }
}

fn split_assignment(line: &str, origin: Origin) -> Result<(String, String), ConfigError> {
    let (key, value) = line.split_once('=').ok_or_else(|| ConfigError {
        key: None,
        origin,
        message: format!("expected 'key = value', got '{line}'"),
    })?;
    let key = key.trim().to_string();
    if !KEYS.contains(&key.as_str()) {
        return Err(ConfigError::at(&key, origin, "unknown key"));
    }
    let value = value.trim().to_string();
    if value.is_empty() {
        return Err(ConfigError::at(&key, origin, "missing value"));
    }
    Ok((key, value))
}

struct Reader<'a> {
    settings: &'a Settings,
}

impl Reader<'_> {
    fn origin(&self, key: &str) -> Origin {
        self.settings.entries.get(key).map(|e| e.1).unwrap_or(Origin::Default)
    }

    fn raw(&self, key: &str) -> Option<(&str, Origin)> {
        self.settings.entries.get(key).map(|(v, o)| (v.as_str(), *o))
    }

    fn real(&self, key: &str, default: f64) -> Result<f64, ConfigError> {
        match self.raw(key) {
            None => Ok(default),
            Some((v, o)) => match parse_real(v) {
                Some(x) if x.is_finite() => Ok(x),
                _ => Err(ConfigError::at(key, o, format!("malformed number '{v}'"))),
            },
        }
    }

    fn count(&self, key: &str, default: usize) -> Result<usize, ConfigError> {
        match self.raw(key) {
            None => Ok(default),
            Some((v, o)) => v
                .parse::<usize>()
                .map_err(|_| ConfigError::at(key, o, format!("malformed count '{v}'"))),
        }
    }

    fn boolean(&self, key: &str, default: bool) -> Result<bool, ConfigError> {
        match self.raw(key) {
            None => Ok(default),
            Some((v, o)) => parse_bool(v)
                .ok_or_else(|| ConfigError::at(key, o, format!("expected true or false, got '{v}'"))),
        }
    }

    fn sweep(&self, prefix: &str, default: Sweep) -> Result<Sweep, ConfigError> {
        let (kmin, kmax, kcount) = (format!("{prefix}_min"), format!("{prefix}_max"), format!("{prefix}_count"));
        let sweep = Sweep {
            min: self.real(&kmin, default.min)?,
            max: self.real(&kmax, default.max)?,
            count: self.count(&kcount, default.count)?,
        };
        if sweep.count < 2 {
            return Err(ConfigError::at(&kcount, self.origin(&kcount), format!("must be at least 2, got {}", sweep.count)));
        }
        if sweep.max < sweep.min {
            return Err(ConfigError::at(
                &kmax,
                self.origin(&kmax),
                format!("must not be below {kmin} = {}", sweep.min),
            ));
        }
        Ok(sweep)
    }
}

fn parse_groups(token: &str) -> Option<Vec<CouplingGroup>> {
    if token == "none" {
        return Some(Vec::new());
    }
    if token == "all" {
        return Some(CouplingGroup::INTER.to_vec());
    }
    let mut out = Vec::new();
    for c in token.chars() {
        let g = CouplingGroup::from_number(c.to_digit(10)? as usize).ok()?;
        if !out.contains(&g) {
            out.push(g);
        }
    }
    (!out.is_empty()).then_some(out)
}

impl RunConfig {
    /// Parses configuration text and applies overrides.
    pub fn parse(text: &str, overrides: &[String]) -> Result<Self, ConfigError> {
        let mut settings = Settings::from_text(text)?;
        settings.apply_overrides(overrides)?;
        Self::from_settings(&settings)
    }

    pub fn from_settings(settings: &Settings) -> Result<Self, ConfigError> {
        let r = Reader { settings };
        let d = RunConfig::default();
        let mode = match r.raw("mode") {
            None => d.mode,
            Some((v, o)) => Mode::parse(v).ok_or_else(|| {
                ConfigError::at(
                    "mode",
                    o,
                    format!("unknown mode '{v}'; expected spectrum, eigenvalues-vs-rabi, eigenvalues-vs-distance, steady-vs-detuning or group-study"),
                )
            })?,
        };

        let rabi = r.real("omega", d.rabi)?;
        if rabi < 0.0 {
            return Err(ConfigError::at("omega", r.origin("omega"), format!("must be nonnegative, got {rabi}")));
        }
        let detuning = r.real("delta", d.detuning)?;
        let separation = r.real("r12", d.separation)?;
        if separation <= 0.0 {
            return Err(ConfigError::at("r12", r.origin("r12"), format!("must be positive, got {separation}")));
        }
        let theta = r.real("theta", d.theta)?;
        let phi = r.real("phi", d.phi)?;

        let mut mask = GroupMask::all_on().with_spvc_eom(r.boolean("spvc_eom", true)?);
        for g in CouplingGroup::INTER {
            let key = format!("p{}", g.number().unwrap());
            let p = r.real(&key, 1.0)?;
            if !(0.0..=1.0).contains(&p) {
                return Err(ConfigError::at(&key, r.origin(&key), format!("{key} must lie in [0, 1], got {p}")));
            }
            mask.set_scale(g, p).expect("range checked above");
        }

        let mut flags = SpectrumTermFlags::default();
        for t in Term::ALL {
            flags.include[t.slot()] = r.boolean(&format!("include_p{}", t.slot() + 1), true)?;
        }

        let frequencies = r.sweep("freq", d.frequencies)?;
        let separations = r.sweep("r12", d.separations)?;
        if separations.min <= 0.0 {
            return Err(ConfigError::at("r12_min", r.origin("r12_min"), format!("must be positive, got {}", separations.min)));
        }
        let rabis = r.sweep("rabi", d.rabis)?;
        if rabis.min < 0.0 {
            return Err(ConfigError::at("rabi_min", r.origin("rabi_min"), format!("must be nonnegative, got {}", rabis.min)));
        }
        let detunings = r.sweep("delta", d.detunings)?;

        let study = Self::parse_study(&r, mode)?;

        Ok(Self {
            mode,
            rabi,
            detuning,
            separation,
            theta,
            phi,
            mask,
            flags,
            frequencies,
            separations,
            rabis,
            detunings,
            study,
        })
    }

    fn parse_study(r: &Reader, mode: Mode) -> Result<Vec<StudyPoint>, ConfigError> {
        let param = r.raw("study_param");
        let values = r.raw("study_values");
        if mode != Mode::GroupStudy {
            return Ok(Vec::new());
        }
        let (param, po) = param.ok_or_else(|| ConfigError::at("study_param", Origin::Default, "required in group-study mode"))?;
        let (values, vo) = values.ok_or_else(|| ConfigError::at("study_values", Origin::Default, "required in group-study mode"))?;
        let tokens: Vec<&str> = values.split(',').map(str::trim).collect();
        let bad = |tok: &str, what: &str| ConfigError::at("study_values", vo, format!("'{tok}' is not {what}"));
        let mut out = Vec::with_capacity(tokens.len());
        for tok in tokens {
            let point = match param {
                "p1" | "p2" | "p3" | "p4" | "p5" => {
                    let n = param[1..].parse::<usize>().unwrap();
                    let p = parse_real(tok).ok_or_else(|| bad(tok, "a number"))?;
                    if !(0.0..=1.0).contains(&p) {
                        return Err(ConfigError::at("study_values", vo, format!("{param} must lie in [0, 1], got {p}")));
                    }
                    StudyPoint::Scale(CouplingGroup::from_number(n).unwrap(), p)
                }
                "r12" => {
                    let v = parse_real(tok).ok_or_else(|| bad(tok, "a number"))?;
                    if v <= 0.0 {
                        return Err(ConfigError::at("study_values", vo, format!("r12 must be positive, got {v}")));
                    }
                    StudyPoint::Separation(v)
                }
                "groups" => StudyPoint::Groups(
                    parse_groups(tok).ok_or_else(|| bad(tok, "a group set such as 234, all or none"))?,
                ),
                "intra" => StudyPoint::Intra(
                    IntraVariant::parse(tok)
                        .ok_or_else(|| bad(tok, "one of full, no_intra, spectrum_off, eom_off"))?,
                ),
                other => {
                    return Err(ConfigError::at(
                        "study_param",
                        po,
                        format!("unknown study parameter '{other}'; expected p1..p5, r12, groups or intra"),
                    ))
                }
            };
            out.push(point);
        }
        Ok(out)
    }
}

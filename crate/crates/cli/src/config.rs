//! Sweep configuration: parameter names, defaults, config files, grids.
//!
//! Every physical parameter appears exactly once across the varied axes and
//! the fixed map; anything not mentioned takes its default. The channel
//! decides which parameters are meaningful: the squeezed channel binds
//! (λ, μ, v) from the bath parameters, the thermal channel does the same
//! with the squeezing switched off, and the zero-temperature channel takes
//! λ directly.

use qfi_core::channels::ChannelKind;
use qfi_core::closed_form::ThetaSgadVariant;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};

/// A physical parameter the CLI can fix or sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Param {
    Theta,
    Phi,
    ChannelTemp,
    HawkingTemp,
    SqueezeR,
    SqueezeAngle,
    Coupling,
    Gamma0,
    Omega,
    Lambda,
}

/// All parameters in CSV column order.
pub const ALL_PARAMS: [Param; 10] = [
    Param::Theta,
    Param::Phi,
    Param::ChannelTemp,
    Param::HawkingTemp,
    Param::SqueezeR,
    Param::SqueezeAngle,
    Param::Coupling,
    Param::Gamma0,
    Param::Omega,
    Param::Lambda,
];

impl Param {
    pub fn name(&self) -> &'static str {
        match self {
            Param::Theta => "theta",
            Param::Phi => "phi",
            Param::ChannelTemp => "T_C",
            Param::HawkingTemp => "T_H",
            Param::SqueezeR => "r",
            Param::SqueezeAngle => "Phi",
            Param::Coupling => "Q",
            Param::Gamma0 => "gamma0",
            Param::Omega => "omega",
            Param::Lambda => "lambda",
        }
    }

    pub fn parse(name: &str) -> Option<Param> {
        ALL_PARAMS.iter().copied().find(|p| p.name() == name)
    }

    pub fn default_value(&self) -> f64 {
        match self {
            Param::Theta => PI / 4.0,
            Param::Phi => 0.0,
            Param::ChannelTemp => 1.0,
            Param::HawkingTemp => 1.0,
            Param::SqueezeR => 0.0,
            Param::SqueezeAngle => 0.0,
            Param::Coupling => 0.5,
            Param::Gamma0 => 1.0,
            Param::Omega => 1.0,
            Param::Lambda => 0.0,
        }
    }

    /// Admissible closed interval, used to validate fixed values and grid
    /// endpoints.
    pub fn range(&self) -> (f64, f64) {
        match self {
            Param::Theta => (-2.0 * PI, 2.0 * PI),
            Param::Phi => (-2.0 * PI, 2.0 * PI),
            Param::ChannelTemp => (1e-6, 1e6),
            Param::HawkingTemp => (1e-6, 1e6),
            Param::SqueezeR => (0.0, 20.0),
            Param::SqueezeAngle => (-2.0 * PI, 2.0 * PI),
            Param::Coupling => (0.0, 1.0),
            Param::Gamma0 => (1e-9, 1e3),
            Param::Omega => (1e-6, 1e6),
            Param::Lambda => (0.0, 1.0),
        }
    }

    /// Which parameters a channel accepts from the user.
    pub fn allowed_for(&self, channel: ChannelKind) -> bool {
        match channel {
            ChannelKind::Sgad => *self != Param::Lambda,
            ChannelKind::Gad => !matches!(
                self,
                Param::SqueezeR | Param::SqueezeAngle | Param::Lambda
            ),
            ChannelKind::Ad => matches!(
                self,
                Param::Theta | Param::Phi | Param::HawkingTemp | Param::Omega | Param::Lambda
            ),
        }
    }
}

/// Inclusive linear grid over one parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct VaryAxis {
    pub param: Param,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl VaryAxis {
    pub fn values(&self) -> Vec<f64> {
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        (0..self.count).map(|i| self.start + i as f64 * step).collect()
    }
}

/// Configuration error with the offending name and admissible range.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

/// Fully resolved run configuration.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub channel: ChannelKind,
    pub vary: Vec<VaryAxis>,
    pub fixed: BTreeMap<Param, f64>,
    pub fd_step: f64,
    pub support_eps: f64,
    pub out: Option<PathBuf>,
    pub variant: ThetaSgadVariant,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            channel: ChannelKind::Sgad,
            vary: Vec::new(),
            fixed: BTreeMap::new(),
            fd_step: qfi_core::qfi::DEFAULT_FD_STEP,
            support_eps: qfi_core::qfi::DEFAULT_SUPPORT_EPS,
            out: None,
            variant: ThetaSgadVariant::Regrouped,
        }
    }
}

impl SweepConfig {
    /// Effective value of a parameter at a fixed point (fixed map or
    /// default).
    pub fn value(&self, p: Param) -> f64 {
        self.fixed.get(&p).copied().unwrap_or_else(|| p.default_value())
    }

    /// Validate channel/parameter compatibility, ranges and grid shape.
    pub fn validate(&self) -> Result<(), ConfigError> {
        let mut seen: Vec<Param> = Vec::new();
        for axis in &self.vary {
            if seen.contains(&axis.param) {
                return err(format!(
                    "parameter {} varied more than once",
                    axis.param.name()
                ));
            }
            seen.push(axis.param);
            if self.fixed.contains_key(&axis.param) {
                return err(format!(
                    "parameter {} appears in both --vary and --set; each parameter appears exactly once",
                    axis.param.name()
                ));
            }
            if axis.count < 2 {
                return err(format!(
                    "vary {} needs count >= 2, got {}",
                    axis.param.name(),
                    axis.count
                ));
            }
            let (lo, hi) = axis.param.range();
            for v in [axis.start, axis.stop] {
                if !(lo..=hi).contains(&v) {
                    return err(format!(
                        "vary {} endpoint {} outside admissible range [{}, {}]",
                        axis.param.name(),
                        v,
                        lo,
                        hi
                    ));
                }
            }
            if !axis.param.allowed_for(self.channel) {
                return err(format!(
                    "parameter {} cannot be varied for channel {}{}",
                    axis.param.name(),
                    self.channel,
                    channel_hint(axis.param, self.channel)
                ));
            }
        }
        for (&p, &v) in &self.fixed {
            let (lo, hi) = p.range();
            if !(lo..=hi).contains(&v) || !v.is_finite() {
                return err(format!(
                    "{} = {} outside admissible range [{}, {}]",
                    p.name(),
                    v,
                    lo,
                    hi
                ));
            }
            if !p.allowed_for(self.channel) {
                return err(format!(
                    "parameter {} cannot be set for channel {}{}",
                    p.name(),
                    self.channel,
                    channel_hint(p, self.channel)
                ));
            }
        }
        if self.fd_step <= 0.0 || self.fd_step > 0.1 {
            return err(format!(
                "fd_step = {} outside admissible range (0, 0.1]",
                self.fd_step
            ));
        }
        if self.support_eps <= 0.0 || self.support_eps > 1e-3 {
            return err(format!(
                "support_eps = {} outside admissible range (0, 1e-3]",
                self.support_eps
            ));
        }
        Ok(())
    }

    /// Total number of grid points.
    pub fn grid_len(&self) -> usize {
        self.vary.iter().map(|a| a.count).product()
    }

    /// Cartesian product of the vary axes, lexicographic in axis order;
    /// each point is the full fixed parameter assignment.
    pub fn grid_points(&self) -> Vec<BTreeMap<Param, f64>> {
        let mut points = vec![BTreeMap::new()];
        for axis in &self.vary {
            let values = axis.values();
            let mut next = Vec::with_capacity(points.len() * values.len());
            for point in &points {
                for &v in &values {
                    let mut p = point.clone();
                    p.insert(axis.param, v);
                    next.push(p);
                }
            }
            points = next;
        }
        for point in &mut points {
            for p in ALL_PARAMS {
                point.entry(p).or_insert_with(|| self.value(p));
            }
        }
        points
    }
}

fn channel_hint(p: Param, channel: ChannelKind) -> &'static str {
    match (p, channel) {
        (Param::Lambda, ChannelKind::Sgad) | (Param::Lambda, ChannelKind::Gad) => {
            " (lambda is derived from the bath parameters; set T_C/gamma0 instead)"
        }
        (Param::SqueezeR, ChannelKind::Gad) | (Param::SqueezeAngle, ChannelKind::Gad) => {
            " (the thermal channel has no squeezing; use channel sgad)"
        }
        (_, ChannelKind::Ad) => " (the zero-temperature channel takes only theta, phi, T_H, omega, lambda)",
        _ => "",
    }
}

pub fn parse_channel(s: &str) -> Result<ChannelKind, ConfigError> {
    match s {
        "ad" => Ok(ChannelKind::Ad),
        "gad" => Ok(ChannelKind::Gad),
        "sgad" => Ok(ChannelKind::Sgad),
        other => err(format!(
            "unknown channel '{other}'; expected one of ad, gad, sgad"
        )),
    }
}

pub fn parse_variant(s: &str) -> Result<ThetaSgadVariant, ConfigError> {
    match s {
        "printed" => Ok(ThetaSgadVariant::Printed),
        "regrouped" => Ok(ThetaSgadVariant::Regrouped),
        other => err(format!(
            "unknown expression variant '{other}'; expected printed or regrouped"
        )),
    }
}

fn parse_f64(name: &str, s: &str) -> Result<f64, ConfigError> {
    s.trim()
        .parse::<f64>()
        .map_err(|_| ConfigError(format!("cannot parse {name} value '{s}' as a number")))
}

/// Parse `NAME=VALUE`.
pub fn parse_set(arg: &str) -> Result<(Param, f64), ConfigError> {
    let (name, value) = arg
        .split_once('=')
        .ok_or_else(|| ConfigError(format!("--set expects NAME=VALUE, got '{arg}'")))?;
    let param = Param::parse(name.trim())
        .ok_or_else(|| ConfigError(format!("unknown parameter '{}'", name.trim())))?;
    Ok((param, parse_f64(name, value)?))
}

/// Parse `NAME=START:STOP:COUNT`.
pub fn parse_vary(arg: &str) -> Result<VaryAxis, ConfigError> {
    let (name, spec) = arg
        .split_once('=')
        .ok_or_else(|| ConfigError(format!("--vary expects NAME=START:STOP:COUNT, got '{arg}'")))?;
    let param = Param::parse(name.trim())
        .ok_or_else(|| ConfigError(format!("unknown parameter '{}'", name.trim())))?;
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return err(format!(
            "--vary {} expects START:STOP:COUNT, got '{spec}'",
            name.trim()
        ));
    }
    let start = parse_f64("start", parts[0])?;
    let stop = parse_f64("stop", parts[1])?;
    let count = parts[2]
        .trim()
        .parse::<usize>()
        .map_err(|_| ConfigError(format!("cannot parse count '{}'", parts[2])))?;
    Ok(VaryAxis {
        param,
        start,
        stop,
        count,
    })
}

/// Apply one `key = value` line from a config file.
fn apply_config_line(cfg: &mut SweepConfig, line: &str) -> Result<(), ConfigError> {
    let line = match line.find('#') {
        Some(i) => &line[..i],
        None => line,
    };
    let line = line.trim();
    if line.is_empty() {
        return Ok(());
    }
    let (key, value) = line
        .split_once('=')
        .ok_or_else(|| ConfigError(format!("config line without '=': '{line}'")))?;
    let key = key.trim();
    let value = value.trim();
    match key {
        "channel" => cfg.channel = parse_channel(value)?,
        "expression_variant" => cfg.variant = parse_variant(value)?,
        "fd_step" => cfg.fd_step = parse_f64(key, value)?,
        "support_eps" => cfg.support_eps = parse_f64(key, value)?,
        "out" => cfg.out = Some(PathBuf::from(value)),
        "vary" => {
            // vary = name:start:stop:count
            let parts: Vec<&str> = value.split(':').collect();
            if parts.len() != 4 {
                return err(format!(
                    "config vary expects name:start:stop:count, got '{value}'"
                ));
            }
            let param = Param::parse(parts[0].trim())
                .ok_or_else(|| ConfigError(format!("unknown parameter '{}'", parts[0])))?;
            cfg.vary.push(VaryAxis {
                param,
                start: parse_f64("start", parts[1])?,
                stop: parse_f64("stop", parts[2])?,
                count: parts[3]
                    .trim()
                    .parse::<usize>()
                    .map_err(|_| ConfigError(format!("cannot parse count '{}'", parts[3])))?,
            });
        }
        name => {
            let param = Param::parse(name)
                .ok_or_else(|| ConfigError(format!("unknown config key '{name}'")))?;
            cfg.fixed.insert(param, parse_f64(name, value)?);
        }
    }
    Ok(())
}

/// Load a plain-text `key = value` config file.
pub fn load_config_file(path: &Path) -> Result<SweepConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("cannot read config file {}: {e}", path.display())))?;
    let mut cfg = SweepConfig::default();
    for line in text.lines() {
        apply_config_line(&mut cfg, line)?;
    }
    Ok(cfg)
}

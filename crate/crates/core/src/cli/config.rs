//! Flat `key=value` configuration shared by flags and config files.

use crate::basis::Qubit;
use crate::correlations::PathPreference;
use crate::error::{Result, TriqError};
use crate::hamiltonian::CouplingConfig;
use crate::sweep::{Axis, Quantity, SweepSpec};
use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

pub const KEYS: &[&str] = &[
    "axis1",
    "axis2",
    "central",
    "couplings",
    "eta",
    "fd_step",
    "format",
    "grid",
    "h",
    "j",
    "omega",
    "out",
    "path",
    "quantity",
    "resolution",
    "svg_kind",
    "tcount",
    "temperature",
    "temperatures",
    "tmax",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Spectrum,
    Ground,
    Correlations,
    Susceptibility,
    Thermal,
    Sweep,
    Classical,
    Validate,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Ground => "ground",
            CommandKind::Correlations => "correlations",
            CommandKind::Susceptibility => "susceptibility",
            CommandKind::Thermal => "thermal",
            CommandKind::Sweep => "sweep",
            CommandKind::Classical => "classical",
            CommandKind::Validate => "validate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

impl FromStr for Format {
    type Err = TriqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            "svg" => Ok(Format::Svg),
            other => Err(TriqError::Usage(format!("unknown format '{other}' (csv | json | svg)"))),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Svg => "svg",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SvgKind {
    Heatmap,
    Lines,
}

impl FromStr for SvgKind {
    type Err = TriqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heatmap" => Ok(SvgKind::Heatmap),
            "lines" => Ok(SvgKind::Lines),
            other => Err(TriqError::Usage(format!("unknown svg kind '{other}' (heatmap | lines)"))),
        }
    }
}

/// Parse `key=value` lines. Blank lines and `#` comments are skipped; `-`
/// in keys is read as `_`.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>> {
    let mut map = BTreeMap::new();
    for (n, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| TriqError::Usage(format!("config line {}: expected key=value", n + 1)))?;
        let key = normalize_key(k);
        if !KEYS.contains(&key.as_str()) {
            return Err(TriqError::Usage(format!("config line {}: unknown key '{}'", n + 1, k.trim())));
        }
        map.insert(key, v.trim().to_string());
    }
    Ok(map)
}

pub fn normalize_key(k: &str) -> String {
    k.trim().trim_start_matches("--").replace('-', "_")
}

/// Everything one invocation needs, after merging file and flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub model: CouplingConfig,
    pub central: Qubit,
    pub path: PathPreference,
    pub fd_step: Option<f64>,
    pub format: Format,
    pub svg_kind: Option<SvgKind>,
    pub out: Option<PathBuf>,
    pub temperature: Option<f64>,
    pub temperatures: Vec<f64>,
    pub tmax: f64,
    pub tcount: usize,
    pub axis1: Option<Axis>,
    pub axis2: Option<Axis>,
    pub quantities: Vec<Quantity>,
    pub couplings: [f64; 3],
    pub resolution: usize,
    pub grid: String,
    /// Effective settings, echoed into every artifact.
    pub echo: BTreeMap<String, String>,
}

fn usage<E: fmt::Display>(key: &str, value: &str) -> impl FnOnce(E) -> TriqError {
    let (key, value) = (key.replace('_', "-"), value.to_string());
    move |e| TriqError::Usage(format!("--{key} '{value}': {e}"))
}

fn num(map: &BTreeMap<String, String>, key: &str, default: f64) -> Result<f64> {
    match map.get(key) {
        Some(v) => v.parse::<f64>().map_err(usage(key, v)),
        None => Ok(default),
    }
}

fn opt_num(map: &BTreeMap<String, String>, key: &str) -> Result<Option<f64>> {
    map.get(key).map(|v| v.parse::<f64>().map_err(usage(key, v))).transpose()
}

fn list(map: &BTreeMap<String, String>, key: &str) -> Result<Vec<f64>> {
    match map.get(key) {
        Some(v) => v
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| s.trim().parse::<f64>().map_err(usage(key, v)))
            .collect(),
        None => Ok(Vec::new()),
    }
}

impl RunConfig {
    pub fn from_map(command: CommandKind, map: &BTreeMap<String, String>) -> Result<Self> {
        for k in map.keys() {
            if !KEYS.contains(&k.as_str()) {
                return Err(TriqError::Usage(format!("unknown setting '{k}'")));
            }
        }
        let model = CouplingConfig {
            j: num(map, "j", 1.0)?,
            h: num(map, "h", 1.0)?,
            eta: num(map, "eta", 1.0)?,
            omega: num(map, "omega", 1.0)?,
        };
        model.validate().map_err(|e| TriqError::Usage(e.to_string()))?;
        let central = match map.get("central") {
            Some(v) => v.parse::<Qubit>().map_err(TriqError::Usage)?,
            None => Qubit::B,
        };
        let path = match map.get("path") {
            Some(v) => v.parse::<PathPreference>().map_err(TriqError::Usage)?,
            None => PathPreference::AnalyticFirst,
        };
        let fd_step = opt_num(map, "fd_step")?;
        if let Some(s) = fd_step {
            if s.is_nan() || s <= 0.0 {
                return Err(TriqError::Usage(format!("--fd-step {s} must be positive")));
            }
        }
        let default_format = match command {
            CommandKind::Sweep => Format::Csv,
            _ => Format::Json,
        };
        let format = match map.get("format") {
            Some(v) => v.parse()?,
            None => default_format,
        };
        if format == Format::Svg && !matches!(command, CommandKind::Sweep | CommandKind::Thermal) {
            return Err(TriqError::Usage(format!(
                "--format svg is only available for sweep and thermal, not {}",
                command.name()
            )));
        }
        let svg_kind = map.get("svg_kind").map(|v| v.parse()).transpose()?;
        let axis = |k: &str| -> Result<Option<Axis>> {
            map.get(k)
                .map(|v| v.parse::<Axis>().map_err(|e| TriqError::Usage(format!("--{k}: {e}"))))
                .transpose()
        };
        let quantities = match map.get("quantity") {
            Some(v) => v
                .split(',')
                .map(|q| q.parse::<Quantity>().map_err(|e| TriqError::Usage(e.to_string())))
                .collect::<Result<Vec<_>>>()?,
            None => vec![Quantity::T3],
        };
        let couplings = match map.get("couplings") {
            Some(v) => {
                let c = list(map, "couplings")?;
                <[f64; 3]>::try_from(c).map_err(|_| {
                    TriqError::Usage(format!("--couplings '{v}' needs three values JAB,JBC,JCA"))
                })?
            }
            None => [-1.0, -1.0, -1.0],
        };
        let resolution = match map.get("resolution") {
            Some(v) => v.parse::<usize>().map_err(usage("resolution", v))?,
            None => crate::sweep::classical::DEFAULT_RESOLUTION,
        };
        let tcount = match map.get("tcount") {
            Some(v) => v.parse::<usize>().map_err(usage("tcount", v))?,
            None => 50,
        };
        let cfg = RunConfig {
            command,
            model,
            central,
            path,
            fd_step,
            format,
            svg_kind,
            out: map.get("out").map(PathBuf::from),
            temperature: opt_num(map, "temperature")?,
            temperatures: list(map, "temperatures")?,
            tmax: num(map, "tmax", 1.5)?,
            tcount,
            axis1: axis("axis1")?,
            axis2: axis("axis2")?,
            quantities,
            couplings,
            resolution,
            grid: map.get("grid").cloned().unwrap_or_else(|| "default".into()),
            echo: BTreeMap::new(),
        };
        if command == CommandKind::Sweep && cfg.axis1.is_none() {
            return Err(TriqError::Usage("sweep needs --axis1 name:min:max:count".into()));
        }
        if cfg.axis2.is_some() && cfg.axis1.is_none() {
            return Err(TriqError::Usage("--axis2 given without --axis1".into()));
        }
        Ok(cfg.with_echo())
    }

    fn with_echo(mut self) -> Self {
        let mut e = BTreeMap::new();
        e.insert("command".into(), self.command.name().into());
        let m = &self.model;
        for (k, v) in [("j", m.j), ("h", m.h), ("eta", m.eta), ("omega", m.omega)] {
            e.insert(k.into(), v.to_string());
        }
        e.insert("path".into(), self.path.to_string());
        e.insert("format".into(), self.format.to_string());
        match self.command {
            CommandKind::Correlations | CommandKind::Susceptibility => {
                e.insert("central".into(), self.central.to_string());
                e.insert(
                    "fd_step".into(),
                    self.fd_step.map_or("default".into(), |s| s.to_string()),
                );
            }
            CommandKind::Thermal => {
                e.insert("central".into(), self.central.to_string());
                if let Some(t) = self.temperature {
                    e.insert("temperature".into(), t.to_string());
                } else if !self.temperatures.is_empty() {
                    e.insert("temperatures".into(), join(&self.temperatures));
                } else {
                    e.insert("tmax".into(), self.tmax.to_string());
                    e.insert("tcount".into(), self.tcount.to_string());
                }
            }
            CommandKind::Sweep => {
                e.insert("central".into(), self.central.to_string());
                if let Some(a) = self.axis1 {
                    e.insert("axis1".into(), a.to_string());
                }
                if let Some(a) = self.axis2 {
                    e.insert("axis2".into(), a.to_string());
                }
                let q: Vec<&str> = self.quantities.iter().map(|q| q.name()).collect();
                e.insert("quantity".into(), q.join(","));
                if !self.temperatures.is_empty() {
                    e.insert("temperatures".into(), join(&self.temperatures));
                }
                e.insert(
                    "fd_step".into(),
                    self.fd_step.map_or("default".into(), |s| s.to_string()),
                );
            }
            CommandKind::Classical => {
                e.insert("couplings".into(), join(&self.couplings));
                e.insert("resolution".into(), self.resolution.to_string());
            }
            CommandKind::Validate => {
                e.insert("grid".into(), self.grid.clone());
            }
            CommandKind::Spectrum | CommandKind::Ground => {}
        }
        self.echo = e;
        self
    }

    pub fn sweep_spec(&self) -> Result<SweepSpec> {
        let axis1 = self
            .axis1
            .ok_or_else(|| TriqError::Usage("sweep needs --axis1".into()))?;
        Ok(SweepSpec {
            axis1,
            axis2: self.axis2,
            fixed: self.model,
            quantities: self.quantities.clone(),
            temperatures: self.temperatures.clone(),
            central: self.central,
            path: self.path,
            fd_step: self.fd_step,
        })
    }
}

fn join(v: &[f64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_file_text() {
        let m = parse_config_text("# run\nj = 6\n\nfd-step=1e-3\n").unwrap();
        assert_eq!(m["j"], "6");
        assert_eq!(m["fd_step"], "1e-3");
        assert!(parse_config_text("nonsense").is_err());
        assert!(parse_config_text("colour=red").is_err());
    }

    #[test]
    fn defaults_and_echo() {
        let c = RunConfig::from_map(CommandKind::Correlations, &BTreeMap::new()).unwrap();
        assert_eq!(c.model, CouplingConfig::one_param(1.0, 1.0));
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.echo["command"], "correlations");
        assert_eq!(c.echo["central"], "B");
    }

    #[test]
    fn svg_only_for_plots() {
        let mut m = BTreeMap::new();
        m.insert("format".to_string(), "svg".to_string());
        assert!(matches!(
            RunConfig::from_map(CommandKind::Ground, &m),
            Err(TriqError::Usage(_))
        ));
        m.insert("axis1".to_string(), "j:-1:1:3".to_string());
        assert!(RunConfig::from_map(CommandKind::Sweep, &m).is_ok());
    }

    #[test]
    fn bad_values_are_usage_errors() {
        for (k, v) in [("j", "six"), ("eta", "-1"), ("central", "D"), ("couplings", "1,2"), ("path", "fast")] {
            let mut m = BTreeMap::new();
            m.insert(k.to_string(), v.to_string());
            let e = RunConfig::from_map(CommandKind::Ground, &m).unwrap_err();
            assert!(matches!(e, TriqError::Usage(_)), "{k}={v}: {e:?}");
        }
    }
}

//! Parameter grids over `(j, eta, omega, T)` and the classical XY triangle.

pub mod classical;

pub use classical::{classical_ground_search, classical_xy_energy, ClassicalGround};

use crate::basis::Qubit;
use crate::correlations::{self, ComputePath, PathPreference};
use crate::error::{Result, TriqError};
use crate::hamiltonian::CouplingConfig;
use crate::thermal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AxisName {
    #[serde(rename = "j")]
    J,
    #[serde(rename = "eta")]
    Eta,
    #[serde(rename = "omega")]
    Omega,
    #[serde(rename = "T")]
    T,
}

impl fmt::Display for AxisName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxisName::J => "j",
            AxisName::Eta => "eta",
            AxisName::Omega => "omega",
            AxisName::T => "T",
        })
    }
}

impl FromStr for AxisName {
    type Err = TriqError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "j" | "J" => Ok(AxisName::J),
            "eta" => Ok(AxisName::Eta),
            "omega" => Ok(AxisName::Omega),
            "T" | "t" => Ok(AxisName::T),
            other => Err(TriqError::InvalidSweep(format!(
                "unknown axis '{other}' (j | eta | omega | T)"
            ))),
        }
    }
}

/// `count` evenly spaced values from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: AxisName,
    pub min: f64,
    pub max: f64,
    pub count: usize,
}

impl Axis {
    pub fn new(name: AxisName, min: f64, max: f64, count: usize) -> Self {
        Axis { name, min, max, count }
    }

    /// A single grid point.
    pub fn point(name: AxisName, value: f64) -> Self {
        Axis::new(name, value, value, 1)
    }

    pub fn validate(&self) -> Result<()> {
        if !self.min.is_finite() || !self.max.is_finite() {
            return Err(TriqError::InvalidSweep(format!("axis {} has non-finite bounds", self.name)));
        }
        let single = self.count == 1 && self.min == self.max;
        if !single && (self.count < 2 || self.min >= self.max) {
            return Err(TriqError::InvalidSweep(format!(
                "axis {} needs count >= 2 and min < max (or count = 1 with min = max), got {}:{}:{}",
                self.name, self.min, self.max, self.count
            )));
        }
        if self.name == AxisName::T && self.min < 0.0 {
            return Err(TriqError::InvalidSweep("temperatures must be >= 0".into()));
        }
        Ok(())
    }

    /// `min + k (max - min)/(count - 1)`, with the last point exactly `max`.
    pub fn value(&self, k: usize) -> f64 {
        if self.count == 1 {
            return self.min;
        }
        if k + 1 == self.count {
            return self.max;
        }
        self.min + k as f64 * (self.max - self.min) / (self.count - 1) as f64
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|k| self.value(k)).collect()
    }
}

impl FromStr for Axis {
    type Err = TriqError;

    /// `name:min:max:count`
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 4 {
            return Err(TriqError::InvalidSweep(format!(
                "axis '{s}' must look like name:min:max:count"
            )));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| TriqError::InvalidSweep(format!("bad number '{p}' in axis '{s}'")))
        };
        let count = parts[3]
            .trim()
            .parse::<usize>()
            .map_err(|_| TriqError::InvalidSweep(format!("bad count '{}' in axis '{s}'", parts[3])))?;
        let axis = Axis::new(parts[0].trim().parse()?, num(parts[1])?, num(parts[2])?, count);
        axis.validate()?;
        Ok(axis)
    }
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}:{}", self.name, self.min, self.max, self.count)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    NAb,
    T3,
    ChiT3,
    ChiM,
    ThermalT3,
    Delta,
}

impl Quantity {
    pub const ALL: [Quantity; 6] = [
        Quantity::NAb,
        Quantity::T3,
        Quantity::ChiT3,
        Quantity::ChiM,
        Quantity::ThermalT3,
        Quantity::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Quantity::NAb => "n_ab",
            Quantity::T3 => "t3",
            Quantity::ChiT3 => "chi_t3",
            Quantity::ChiM => "chi_m",
            Quantity::ThermalT3 => "thermal_t3",
            Quantity::Delta => "delta",
        }
    }

    pub fn is_thermal(self) -> bool {
        matches!(self, Quantity::ThermalT3 | Quantity::Delta)
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Quantity {
    type Err = TriqError;

    fn from_str(s: &str) -> Result<Self> {
        Quantity::ALL
            .into_iter()
            .find(|q| q.name() == s.trim())
            .ok_or_else(|| {
                TriqError::InvalidSweep(format!(
                    "unknown quantity '{s}' (n_ab | t3 | chi_t3 | chi_m | thermal_t3 | delta)"
                ))
            })
    }
}

/// One or two axes over a fixed configuration.
///
/// Thermal quantities without a `T` axis are evaluated at every entry of
/// `temperatures`, one column each (`thermal_t3@0.05`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub axis1: Axis,
    pub axis2: Option<Axis>,
    pub fixed: CouplingConfig,
    pub quantities: Vec<Quantity>,
    pub temperatures: Vec<f64>,
    pub central: Qubit,
    pub path: PathPreference,
    pub fd_step: Option<f64>,
}

impl SweepSpec {
    pub fn new(axis1: Axis, quantities: Vec<Quantity>) -> Self {
        SweepSpec {
            axis1,
            axis2: None,
            fixed: CouplingConfig::default(),
            quantities,
            temperatures: Vec::new(),
            central: Qubit::B,
            path: PathPreference::AnalyticFirst,
            fd_step: None,
        }
    }

    pub fn axes(&self) -> Vec<Axis> {
        std::iter::once(self.axis1).chain(self.axis2).collect()
    }

    fn has_t_axis(&self) -> bool {
        self.axes().iter().any(|a| a.name == AxisName::T)
    }

    pub fn validate(&self) -> Result<()> {
        let axes = self.axes();
        for a in &axes {
            a.validate()?;
        }
        if axes.len() == 2 && axes[0].name == axes[1].name {
            return Err(TriqError::InvalidSweep(format!("axis {} given twice", axes[0].name)));
        }
        if self.quantities.is_empty() {
            return Err(TriqError::InvalidSweep("no quantities requested".into()));
        }
        for (i, q) in self.quantities.iter().enumerate() {
            if self.quantities[..i].contains(q) {
                return Err(TriqError::InvalidSweep(format!("quantity {q} given twice")));
            }
        }
        let thermal = self.quantities.iter().any(|q| q.is_thermal());
        if self.has_t_axis() && !thermal {
            return Err(TriqError::InvalidSweep(
                "a T axis needs thermal_t3 or delta".into(),
            ));
        }
        if thermal && !self.has_t_axis() && self.temperatures.is_empty() {
            return Err(TriqError::InvalidSweep(
                "thermal quantities need a T axis or a temperature list".into(),
            ));
        }
        if self.temperatures.iter().any(|t| !t.is_finite() || *t < 0.0) {
            return Err(TriqError::InvalidSweep("temperatures must be finite and >= 0".into()));
        }
        Ok(())
    }

    fn value_columns(&self) -> Vec<String> {
        let mut cols = Vec::new();
        for q in &self.quantities {
            if q.is_thermal() && !self.has_t_axis() {
                cols.extend(self.temperatures.iter().map(|t| format!("{q}@{t}")));
            } else {
                cols.push(q.name().to_string());
            }
        }
        cols
    }

    pub fn point_count(&self) -> usize {
        self.axes().iter().map(|a| a.count).product()
    }
}

/// One grid point: coordinates and quantities in header order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    /// `None` marks a value that could not be computed.
    pub values: Vec<Option<f64>>,
    pub path: ComputePath,
    /// Space-separated markers such as `one-sided`.
    pub flags: String,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub axes: Vec<Axis>,
    /// Names of the numeric columns; `path`, `flags` and `error` follow.
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn has_flags(&self) -> bool {
        self.rows.iter().any(|r| !r.flags.is_empty())
    }

    pub fn has_errors(&self) -> bool {
        self.rows.iter().any(|r| r.error.is_some())
    }

    /// Full header: numeric columns, `path`, then `flags` and `error` when
    /// any row uses them.
    pub fn header(&self) -> Vec<String> {
        let mut h = self.columns.clone();
        h.push("path".into());
        if self.has_flags() {
            h.push("flags".into());
        }
        if self.has_errors() {
            h.push("error".into());
        }
        h
    }

    pub fn column(&self, name: &str) -> Option<Vec<Option<f64>>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r.values[k]).collect())
    }

    /// Prepend constant columns, e.g. to label results before [`concat`].
    pub fn with_constants(mut self, constants: &[(&str, f64)]) -> Self {
        let names: Vec<String> = constants.iter().map(|(n, _)| n.to_string()).collect();
        self.columns.splice(0..0, names);
        for row in &mut self.rows {
            row.values.splice(0..0, constants.iter().map(|(_, v)| Some(*v)));
        }
        self
    }
}

/// Stack results with identical columns.
pub fn concat(results: Vec<SweepResult>) -> Result<SweepResult> {
    let mut it = results.into_iter();
    let mut first = it
        .next()
        .ok_or_else(|| TriqError::InvalidSweep("nothing to concatenate".into()))?;
    for r in it {
        if r.columns != first.columns {
            return Err(TriqError::InvalidSweep(format!(
                "column mismatch: {:?} vs {:?}",
                first.columns, r.columns
            )));
        }
        first.rows.extend(r.rows);
    }
    Ok(first)
}

fn point_config(fixed: &CouplingConfig, coords: &[(AxisName, f64)]) -> (CouplingConfig, Option<f64>) {
    let mut c = *fixed;
    let mut t = None;
    for &(name, v) in coords {
        match name {
            AxisName::J => c.j = v,
            AxisName::Eta => c.eta = v,
            AxisName::Omega => c.omega = v,
            AxisName::T => t = Some(v),
        }
    }
    (c, t)
}

fn evaluate_point(spec: &SweepSpec, coords: &[(AxisName, f64)]) -> SweepRow {
    let mut values: Vec<Option<f64>> = coords.iter().map(|(_, v)| Some(*v)).collect();
    let n_cols = spec.value_columns().len();
    match evaluate_quantities(spec, coords) {
        Ok((vals, path, flags)) => {
            values.extend(vals.into_iter().map(Some));
            SweepRow {
                values,
                path,
                flags,
                error: None,
            }
        }
        Err(e) => {
            values.extend(std::iter::repeat_n(None, n_cols));
            SweepRow {
                values,
                path: ComputePath::Numeric,
                flags: String::new(),
                error: Some(e.to_string()),
            }
        }
    }
}

fn evaluate_quantities(
    spec: &SweepSpec,
    coords: &[(AxisName, f64)],
) -> Result<(Vec<f64>, ComputePath, String)> {
    let (config, t_axis) = point_config(&spec.fixed, coords);
    config.validate()?;
    let central = spec.central;
    let mut out = Vec::new();
    let mut path = ComputePath::Analytic;
    let mut flags: Vec<&str> = Vec::new();
    let mut ground = None;
    let mut thermal_curve: Option<Vec<f64>> = None;
    let temps: Vec<f64> = match t_axis {
        Some(t) => vec![t],
        None => spec.temperatures.clone(),
    };

    for q in &spec.quantities {
        match q {
            Quantity::NAb | Quantity::T3 => {
                if ground.is_none() {
                    let g = correlations::ground_measures(&config, spec.path)?;
                    path = path.max(g.path);
                    ground = Some(g);
                }
                let g = ground.as_ref().unwrap();
                out.push(match q {
                    Quantity::NAb => g.negativities.n_ab,
                    _ => g.t3(central),
                });
            }
            Quantity::ChiT3 | Quantity::ChiM => {
                let d = if *q == Quantity::ChiT3 {
                    correlations::mqc_susceptibility(&config, central, spec.fd_step, spec.path)?
                } else {
                    correlations::magnetic_susceptibility(&config, spec.fd_step, spec.path)?
                };
                let side = correlations::ground_measures(&config, spec.path)?.path;
                path = path.max(side);
                if d.one_sided && !flags.contains(&"one-sided") {
                    flags.push("one-sided");
                }
                out.push(d.value);
            }
            Quantity::ThermalT3 | Quantity::Delta => {
                if thermal_curve.is_none() {
                    let (spectrum, p) = thermal::spectrum_for(&config, spec.path)?;
                    path = path.max(p);
                    let mut ts = vec![0.0];
                    ts.extend(&temps);
                    thermal_curve = Some(thermal::thermal_curve(&spectrum, &ts, central)?);
                }
                let curve = thermal_curve.as_ref().unwrap();
                for k in 0..temps.len() {
                    out.push(match q {
                        Quantity::ThermalT3 => curve[k + 1],
                        _ => curve[0] - curve[k + 1],
                    });
                }
            }
        }
    }
    if let Some(bad) = out.iter().find(|v| !v.is_finite()) {
        return Err(TriqError::InvalidParameter(format!("non-finite result {bad}")));
    }
    Ok((out, path, flags.join(" ")))
}

/// Evaluate every grid point. `threads = 0` uses the global rayon pool.
///
/// Rows are in axis1-major order and do not depend on the thread count.
pub fn run_sweep(spec: &SweepSpec, threads: usize) -> Result<SweepResult> {
    spec.validate()?;
    let axes = spec.axes();
    let a1 = axes[0].values();
    let a2 = axes.get(1).map(|a| a.values());
    let points: Vec<Vec<(AxisName, f64)>> = a1
        .iter()
        .flat_map(|&x| match &a2 {
            Some(ys) => ys
                .iter()
                .map(|&y| vec![(axes[0].name, x), (axes[1].name, y)])
                .collect::<Vec<_>>(),
            None => vec![vec![(axes[0].name, x)]],
        })
        .collect();

    let eval = || -> Vec<SweepRow> { points.par_iter().map(|p| evaluate_point(spec, p)).collect() };
    let rows = if threads == 0 {
        eval()
    } else {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| TriqError::InvalidParameter(format!("thread pool: {e}")))?
            .install(eval)
    };

    let mut columns: Vec<String> = axes.iter().map(|a| a.name.to_string()).collect();
    columns.extend(spec.value_columns());
    Ok(SweepResult { axes, columns, rows })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axis_parsing_and_values() {
        let a: Axis = "j:-8:8:81".parse().unwrap();
        assert_eq!(a.count, 81);
        let v = a.values();
        assert_eq!(v[0], -8.0);
        assert_eq!(v[40], 0.0);
        assert_eq!(v[80], 8.0);
        assert!("x:0:1:3".parse::<Axis>().is_err());
        assert!("j:1:0:3".parse::<Axis>().is_err());
        assert!("j:0:1:1".parse::<Axis>().is_err());
        assert!("j:2:2:1".parse::<Axis>().is_ok());
    }

    #[test]
    fn single_point_sweep() {
        let mut spec = SweepSpec::new(Axis::point(AxisName::J, 6.0), vec![Quantity::T3]);
        spec.fixed = CouplingConfig::one_param(6.0, 1.0);
        let r = run_sweep(&spec, 1).unwrap();
        assert_eq!(r.rows.len(), 1);
        assert_eq!(r.header(), vec!["j", "t3", "path"]);
        assert!((r.rows[0].values[1].unwrap() - 0.5).abs() < 0.02);
        assert_eq!(r.rows[0].path, ComputePath::Analytic);
    }

    #[test]
    fn grid_shape_and_order() {
        let mut spec = SweepSpec::new("j:-2:2:5".parse().unwrap(), vec![Quantity::T3, Quantity::NAb]);
        spec.axis2 = Some("eta:0.5:1.5:3".parse().unwrap());
        let r = run_sweep(&spec, 2).unwrap();
        assert_eq!(r.rows.len(), 15);
        assert_eq!(r.header(), vec!["j", "eta", "t3", "n_ab", "path"]);
        assert_eq!(r.rows[4].values[0], Some(-1.0));
        assert_eq!(r.rows[4].values[1], Some(1.0));
    }

    #[test]
    fn zero_coupling_is_flagged() {
        let spec = SweepSpec::new("j:-1:1:3".parse().unwrap(), vec![Quantity::ChiT3]);
        let r = run_sweep(&spec, 1).unwrap();
        assert!(r.has_flags());
        assert_eq!(r.rows[1].flags, "one-sided");
        assert_eq!(r.rows[0].flags, "");
    }

    #[test]
    fn failures_stay_in_row() {
        let spec = SweepSpec::new("eta:-1:1:3".parse().unwrap(), vec![Quantity::T3]);
        let r = run_sweep(&spec, 1).unwrap();
        assert_eq!(r.rows.len(), 3);
        assert!(r.rows[0].error.is_some());
        assert_eq!(r.rows[0].values[1], None);
        assert!(r.rows[2].error.is_none());
        assert_eq!(r.header().last().unwrap(), "error");
    }

    #[test]
    fn thermal_columns() {
        let mut spec = SweepSpec::new("j:-6:6:2".parse().unwrap(), vec![Quantity::ThermalT3, Quantity::Delta]);
        assert!(spec.validate().is_err());
        spec.temperatures = vec![0.05, 0.1];
        let r = run_sweep(&spec, 1).unwrap();
        assert_eq!(
            r.columns,
            vec!["j", "thermal_t3@0.05", "thermal_t3@0.1", "delta@0.05", "delta@0.1"]
        );
        let mut spec = SweepSpec::new("T:0:1:4".parse().unwrap(), vec![Quantity::ThermalT3]);
        spec.fixed = CouplingConfig::one_param(-4.0, 1.0);
        let r = run_sweep(&spec, 1).unwrap();
        assert_eq!(r.columns, vec!["T", "thermal_t3"]);
        assert_eq!(r.rows[0].path, ComputePath::Analytic);
    }

    #[test]
    fn thread_count_does_not_change_rows() {
        let mut spec = SweepSpec::new("j:-3:3:7".parse().unwrap(), vec![Quantity::T3, Quantity::ChiM]);
        spec.axis2 = Some("omega:0.5:1.5:5".parse().unwrap());
        assert_eq!(run_sweep(&spec, 1).unwrap(), run_sweep(&spec, 4).unwrap());
    }

    #[test]
    fn relabel_symmetry_of_central_b() {
        // A <-> C swaps the AB and BC bonds; rescaling J restores AB = 1
        for (j, eta, omega) in [(6.0, 0.8, 1.3), (-2.0, 1.4, 0.7), (3.0, 0.6, 1.6)] {
            let t = |j, eta, omega| {
                correlations::ground_measures(&CouplingConfig::two_param(j, eta, omega), PathPreference::NumericOnly)
                    .unwrap()
                    .t3(Qubit::B)
            };
            let a = t(j, eta, omega);
            let b = t(j * omega, eta / omega, 1.0 / omega);
            assert!((a - b).abs() < 1e-8);
        }
    }

    #[test]
    fn concat_and_constants() {
        let spec = SweepSpec::new("j:1:2:2".parse().unwrap(), vec![Quantity::T3]);
        let a = run_sweep(&spec, 1).unwrap().with_constants(&[("eta", 1.0)]);
        let b = run_sweep(&spec, 1).unwrap().with_constants(&[("eta", 1.0)]);
        let c = concat(vec![a, b]).unwrap();
        assert_eq!(c.rows.len(), 4);
        assert_eq!(c.columns, vec!["eta", "j", "t3"]);
        let d = run_sweep(&spec, 1).unwrap();
        assert!(concat(vec![c, d]).is_err());
    }
}

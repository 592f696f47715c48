//! Command-line front end.
//!
//! Every subcommand reads the same flat settings, from flags or a
//! `key=value` file given with `--config` (flags win). Output goes to
//! `--out` or stdout; a one-line summary goes to stderr.

pub mod config;
pub mod output;
pub mod svg;

pub use config::{CommandKind, Format, RunConfig, SvgKind};
pub use output::{emit_csv, read_csv, Table};
pub use svg::emit_svg;

use crate::basis::{ghz_fidelity, Qubit};
use crate::correlations::{self, ComputePath, ReportOptions};
use crate::error::{Result, TriqError};
use crate::sweep::{self, classical, Axis, AxisName, SweepResult, SweepRow};
use crate::thermal;
use crate::validation::{self, GridSize};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::ffi::OsString;
use std::process::ExitCode;

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERIC: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "triq", version, about = "Quantum correlations of the anisotropic Ising triangle")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All eight energies (and eigenvectors in JSON)
    Spectrum(Common),
    /// Ground state amplitudes and energy
    Ground(Common),
    /// Negativities, T3 for each central qubit and susceptibilities
    Correlations(Common),
    /// dT3/dJ and d<Z>/dJ by finite differences
    Susceptibility(Common),
    /// Gibbs-state T3 at one temperature or along a temperature grid
    Thermal(ThermalArgs),
    /// Grid over one or two of j, eta, omega, T
    Sweep(SweepArgs),
    /// Minimum energy of the classical XY triangle
    Classical(ClassicalArgs),
    /// Check the closed forms against diagonalization
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    /// key=value settings file; flags override it
    #[arg(long)]
    pub config: Option<std::path::PathBuf>,
    /// Coupling J in units of h
    #[arg(long, allow_hyphen_values = true)]
    pub j: Option<String>,
    /// Transverse field
    #[arg(long)]
    pub h: Option<String>,
    /// Anisotropy of the C-A bond
    #[arg(long)]
    pub eta: Option<String>,
    /// Anisotropy of the B-C bond
    #[arg(long)]
    pub omega: Option<String>,
    /// Central qubit for T3: A, B or C
    #[arg(long)]
    pub central: Option<String>,
    /// analytic-first or numeric-only
    #[arg(long)]
    pub path: Option<String>,
    /// Finite-difference step in J
    #[arg(long = "fd-step")]
    pub fd_step: Option<String>,
    /// csv, json or svg
    #[arg(long)]
    pub format: Option<String>,
    /// Output file (stdout if absent)
    #[arg(long)]
    pub out: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ThermalArgs {
    #[command(flatten)]
    pub common: Common,
    /// Single temperature (k_B = 1)
    #[arg(long)]
    pub temperature: Option<String>,
    /// Comma-separated temperatures
    #[arg(long)]
    pub temperatures: Option<String>,
    /// Largest temperature of the default grid
    #[arg(long)]
    pub tmax: Option<String>,
    /// Number of grid temperatures
    #[arg(long)]
    pub tcount: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub common: Common,
    /// name:min:max:count with name in j, eta, omega, T
    #[arg(long, allow_hyphen_values = true)]
    pub axis1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub axis2: Option<String>,
    /// Comma-separated: n_ab, t3, chi_t3, chi_m, thermal_t3, delta
    #[arg(long)]
    pub quantity: Option<String>,
    /// Temperatures for thermal quantities when no T axis is swept
    #[arg(long)]
    pub temperatures: Option<String>,
    /// heatmap or lines
    #[arg(long = "svg-kind")]
    pub svg_kind: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ClassicalArgs {
    #[command(flatten)]
    pub common: Common,
    /// JAB,JBC,JCA
    #[arg(long, allow_hyphen_values = true)]
    pub couplings: Option<String>,
    /// Grid points per angle
    #[arg(long)]
    pub resolution: Option<String>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: Common,
    /// default or quick
    #[arg(long)]
    pub grid: Option<String>,
}

fn put(map: &mut BTreeMap<String, String>, key: &str, v: &Option<String>) {
    if let Some(v) = v {
        map.insert(key.into(), v.clone());
    }
}

impl Common {
    fn overlay(&self, map: &mut BTreeMap<String, String>) {
        put(map, "j", &self.j);
        put(map, "h", &self.h);
        put(map, "eta", &self.eta);
        put(map, "omega", &self.omega);
        put(map, "central", &self.central);
        put(map, "path", &self.path);
        put(map, "fd_step", &self.fd_step);
        put(map, "format", &self.format);
        put(map, "out", &self.out);
    }
}

impl Command {
    fn parts(&self) -> (CommandKind, &Common, BTreeMap<String, String>) {
        let mut extra = BTreeMap::new();
        let (kind, common) = match self {
            Command::Spectrum(c) => (CommandKind::Spectrum, c),
            Command::Ground(c) => (CommandKind::Ground, c),
            Command::Correlations(c) => (CommandKind::Correlations, c),
            Command::Susceptibility(c) => (CommandKind::Susceptibility, c),
            Command::Thermal(a) => {
                put(&mut extra, "temperature", &a.temperature);
                put(&mut extra, "temperatures", &a.temperatures);
                put(&mut extra, "tmax", &a.tmax);
                put(&mut extra, "tcount", &a.tcount);
                (CommandKind::Thermal, &a.common)
            }
            Command::Sweep(a) => {
                put(&mut extra, "axis1", &a.axis1);
                put(&mut extra, "axis2", &a.axis2);
                put(&mut extra, "quantity", &a.quantity);
                put(&mut extra, "temperatures", &a.temperatures);
                put(&mut extra, "svg_kind", &a.svg_kind);
                (CommandKind::Sweep, &a.common)
            }
            Command::Classical(a) => {
                put(&mut extra, "couplings", &a.couplings);
                put(&mut extra, "resolution", &a.resolution);
                (CommandKind::Classical, &a.common)
            }
            Command::Validate(a) => {
                put(&mut extra, "grid", &a.grid);
                (CommandKind::Validate, &a.common)
            }
        };
        (kind, common, extra)
    }

    /// Merge the `--config` file (if any) with the flags.
    pub fn run_config(&self) -> Result<RunConfig> {
        let (kind, common, extra) = self.parts();
        let mut map = match &common.config {
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .map_err(|e| TriqError::Usage(format!("{}: {e}", p.display())))?;
                config::parse_config_text(&text)?
            }
            None => BTreeMap::new(),
        };
        common.overlay(&mut map);
        map.extend(extra);
        RunConfig::from_map(kind, &map)
    }
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub body: String,
    pub summary: String,
    /// Set by `validate` when the deviations exceed the tolerances.
    pub failed: bool,
}

fn record(cfg: &RunConfig, value: Value, summary: String) -> Result<Outcome> {
    let body = match cfg.format {
        Format::Json => {
            let mut v = value;
            if let Value::Object(m) = &mut v {
                m.insert("config".into(), json!(cfg.echo));
            }
            output::json_string(&v)
        }
        Format::Csv => output::csv_string(&Table::from_record(&value), &cfg.echo)?,
        Format::Svg => return Err(TriqError::Usage("svg needs a sweep or a thermal curve".into())),
    };
    Ok(Outcome {
        body,
        summary,
        failed: false,
    })
}

fn result_body(cfg: &RunConfig, result: &SweepResult, default_kind: SvgKind) -> Result<String> {
    match cfg.format {
        Format::Csv => output::csv_string(&Table::from_sweep(result), &cfg.echo),
        Format::Json => Ok(output::json_string(&output::sweep_json(result, &cfg.echo))),
        Format::Svg => svg::svg_string(result, cfg.svg_kind.unwrap_or(default_kind), &cfg.echo),
    }
}

fn threads_from_env() -> Result<usize> {
    match std::env::var("TRIQ_THREADS") {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .map_err(|_| TriqError::Usage(format!("TRIQ_THREADS='{v}' is not a count"))),
        Err(_) => Ok(0),
    }
}

fn run_spectrum(cfg: &RunConfig) -> Result<Outcome> {
    let (spec, path) = thermal::spectrum_for(&cfg.model, cfg.path)?;
    let value = json!({
        "energies": spec.energies,
        "vectors": spec.vectors,
        "gap": spec.gap(),
        "ground_multiplicity": spec.ground_multiplicity(crate::hamiltonian::DEFAULT_DEGENERACY_TOL),
        "path": path,
    });
    let value = if cfg.format == Format::Csv {
        json!({ "energies": spec.energies, "gap": spec.gap(), "path": path })
    } else {
        value
    };
    let summary = format!("spectrum: E0={:.10} gap={:.10} path={path}", spec.energies[0], spec.gap());
    record(cfg, value, summary)
}

fn run_ground(cfg: &RunConfig) -> Result<Outcome> {
    let g = correlations::ground_measures(&cfg.model, cfg.path)?;
    let value = json!({
        "energy": g.energy,
        "degenerate": g.degenerate,
        "state": g.state,
        "ghz_fidelity": ghz_fidelity(&g.state),
        "path": g.path,
    });
    let summary = format!("ground: E0={:.10} path={}", g.energy, g.path);
    record(cfg, value, summary)
}

fn run_correlations(cfg: &RunConfig) -> Result<Outcome> {
    let opts = ReportOptions {
        central: cfg.central,
        path: cfg.path,
        fd_step: cfg.fd_step,
        ..ReportOptions::default()
    };
    let report = correlations::correlation_report(&cfg.model, &opts)?;
    let summary = format!(
        "correlations: t3_central_b={:.10} chi_t3={:.6e} regime={} path={}",
        report.t3_central_b, report.chi_t3, report.regime, report.path
    );
    let mut value = serde_json::to_value(&report).expect("report serializes");
    if let Value::Object(m) = &mut value {
        m.remove("config");
    }
    record(cfg, value, summary)
}

fn run_susceptibility(cfg: &RunConfig) -> Result<Outcome> {
    let chi_t3 = correlations::mqc_susceptibility(&cfg.model, cfg.central, cfg.fd_step, cfg.path)?;
    let chi_m = correlations::magnetic_susceptibility(&cfg.model, cfg.fd_step, cfg.path)?;
    let g = correlations::ground_measures(&cfg.model, cfg.path)?;
    let t3 = g.t3(cfg.central);
    let regime = correlations::classify_regime(t3, chi_t3.value, None, correlations::DEFAULT_DEAD_BAND);
    let value = json!({
        "central": cfg.central,
        "t3": t3,
        "chi_t3": chi_t3.value,
        "chi_m": chi_m.value,
        "step": chi_t3.step,
        "one_sided": chi_t3.one_sided,
        "regime": regime,
        "path": g.path,
    });
    let summary = format!(
        "susceptibility: chi_t3={:.6e} chi_m={:.6e} regime={regime} path={}",
        chi_t3.value, chi_m.value, g.path
    );
    record(cfg, value, summary)
}

/// T3 and `T3(0) - T3(T)` along a list of temperatures.
pub fn thermal_result(
    model: &crate::CouplingConfig,
    temperatures: &[f64],
    central: Qubit,
    pref: correlations::PathPreference,
) -> Result<SweepResult> {
    let (spectrum, path) = thermal::spectrum_for(model, pref)?;
    let mut ts = vec![0.0];
    ts.extend(temperatures);
    let curve = thermal::thermal_curve(&spectrum, &ts, central)?;
    let rows = temperatures
        .iter()
        .enumerate()
        .map(|(k, &t)| SweepRow {
            values: vec![Some(t), Some(curve[k + 1]), Some(curve[0] - curve[k + 1])],
            path,
            flags: String::new(),
            error: None,
        })
        .collect();
    let (lo, hi) = temperatures
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &t| (a.min(t), b.max(t)));
    Ok(SweepResult {
        axes: vec![Axis::new(AxisName::T, lo, hi, temperatures.len())],
        columns: vec!["T".into(), "thermal_t3".into(), "delta".into()],
        rows,
    })
}

fn run_thermal(cfg: &RunConfig) -> Result<Outcome> {
    if let Some(t) = cfg.temperature {
        if cfg.format == Format::Svg {
            return Err(TriqError::Usage("svg needs a temperature curve, not --temperature".into()));
        }
        let (spectrum, path) = thermal::spectrum_for(&cfg.model, cfg.path)?;
        let point = thermal::gibbs_state(&spectrum, t).map_err(|e| TriqError::Usage(e.to_string()))?;
        let neg = correlations::Negativities::of_density(&point.rho)?;
        let t3_zero = thermal::thermal_curve(&spectrum, &[0.0], cfg.central)?[0];
        let t3 = neg.t3(cfg.central);
        let value = json!({
            "temperature": t,
            "central": cfg.central,
            "t3": t3,
            "delta": t3_zero - t3,
            "negativities": neg,
            "weights": point.weights,
            "mixed_state_extension": true,
            "path": path,
        });
        let summary = format!("thermal: T={t} t3={t3:.10} path={path}");
        return record(cfg, value, summary);
    }
    let temps = if cfg.temperatures.is_empty() {
        thermal::temperature_grid(cfg.tmax, cfg.tcount).map_err(|e| TriqError::Usage(e.to_string()))?
    } else {
        cfg.temperatures.clone()
    };
    if temps.iter().any(|t| t.is_nan() || *t < 0.0) {
        return Err(TriqError::Usage("temperatures must be >= 0".into()));
    }
    let result = thermal_result(&cfg.model, &temps, cfg.central, cfg.path)?;
    let body = result_body(cfg, &result, SvgKind::Lines)?;
    let summary = format!(
        "thermal: {} temperatures, t3 from {:.6} to {:.6} path={}",
        temps.len(),
        result.rows[0].values[1].unwrap_or(f64::NAN),
        result.rows[temps.len() - 1].values[1].unwrap_or(f64::NAN),
        result.rows[0].path
    );
    Ok(Outcome {
        body,
        summary,
        failed: false,
    })
}

fn run_sweep(cfg: &RunConfig) -> Result<Outcome> {
    let spec = cfg.sweep_spec()?;
    spec.validate().map_err(|e| TriqError::Usage(e.to_string()))?;
    let result = sweep::run_sweep(&spec, threads_from_env()?)?;
    let default_kind = if result.axes.len() == 2 {
        SvgKind::Heatmap
    } else {
        SvgKind::Lines
    };
    let body = result_body(cfg, &result, default_kind)?;
    let failed = result.rows.iter().filter(|r| r.error.is_some()).count();
    let mut paths: Vec<ComputePath> = result.rows.iter().map(|r| r.path).collect();
    paths.sort();
    paths.dedup();
    let paths: Vec<String> = paths.iter().map(|p| p.to_string()).collect();
    let summary = format!(
        "sweep: {} rows, {failed} failed, paths {}",
        result.rows.len(),
        paths.join("/")
    );
    Ok(Outcome {
        body,
        summary,
        failed: false,
    })
}

fn run_classical(cfg: &RunConfig) -> Result<Outcome> {
    let g = classical::classical_ground_search(cfg.couplings, cfg.resolution)
        .map_err(|e| TriqError::Usage(e.to_string()))?;
    let value = json!({
        "couplings": cfg.couplings,
        "thetas": g.thetas,
        "thetas_deg": g.thetas.map(f64::to_degrees),
        "energy": g.energy,
        "path": "numeric",
    });
    let summary = format!("classical: E={:.8}", g.energy);
    record(cfg, value, summary)
}

fn run_validate(cfg: &RunConfig) -> Result<Outcome> {
    let size: GridSize = cfg.grid.parse()?;
    let report = validation::validate(size)?;
    let summary = format!(
        "validate: max energy deviation {:.3e}, max measure deviation {:.3e}, {}",
        report.energy_max_dev,
        report.measure_max_dev,
        if report.passed { "pass" } else { "FAIL" }
    );
    let failed = !report.passed;
    let mut out = record(
        cfg,
        serde_json::to_value(&report).expect("report serializes"),
        summary,
    )?;
    out.failed = failed;
    Ok(out)
}

/// Execute one configured command without touching stdout or files.
pub fn run(cfg: &RunConfig) -> Result<Outcome> {
    let res = match cfg.command {
        CommandKind::Spectrum => run_spectrum(cfg),
        CommandKind::Ground => run_ground(cfg),
        CommandKind::Correlations => run_correlations(cfg),
        CommandKind::Susceptibility => run_susceptibility(cfg),
        CommandKind::Thermal => run_thermal(cfg),
        CommandKind::Sweep => run_sweep(cfg),
        CommandKind::Classical => run_classical(cfg),
        CommandKind::Validate => run_validate(cfg),
    };
    res.map_err(|e| match e {
        TriqError::Usage(_) | TriqError::InvalidSweep(_) | TriqError::InvalidConfig(_) => e,
        other => {
            let m = cfg.model;
            TriqError::InvalidParameter(format!(
                "{other} (at j={}, h={}, eta={}, omega={})",
                m.j, m.h, m.eta, m.omega
            ))
        }
    })
}

pub fn exit_code(e: &TriqError) -> u8 {
    match e {
        TriqError::Usage(_) | TriqError::InvalidSweep(_) | TriqError::InvalidConfig(_) => EXIT_USAGE,
        _ => EXIT_NUMERIC,
    }
}

fn category(code: u8) -> &'static str {
    if code == EXIT_USAGE {
        "usage"
    } else {
        "numeric"
    }
}

/// Parse arguments, run, write the artifact and report. Returns the exit
/// status: 0 ok, 2 usage, 3 numeric failure.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let fail = |e: TriqError| {
        let code = exit_code(&e);
        eprintln!("error[{}]: {e}", category(code));
        ExitCode::from(code)
    };
    let cfg = match cli.command.run_config() {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    let outcome = match run(&cfg) {
        Ok(o) => o,
        Err(e) => return fail(e),
    };
    match &cfg.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &outcome.body) {
                return fail(TriqError::Usage(format!("{}: {e}", p.display())));
            }
        }
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(outcome.body.as_bytes()).and_then(|_| out.flush()) {
                if e.kind() != std::io::ErrorKind::BrokenPipe {
                    return fail(TriqError::Usage(format!("stdout: {e}")));
                }
            }
        }
    }
    eprintln!("{}", outcome.summary);
    if outcome.failed {
        eprintln!("error[numeric]: deviations exceed tolerance");
        return ExitCode::from(EXIT_NUMERIC);
    }
    ExitCode::SUCCESS
}

//! `hyperflow`: run, verify and inspect closed-form flows from scenario files.

mod artifacts;
mod battery;
mod scenario;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperflow::flow::existence_window;
use hyperflow::limits::{classify_limits, BackwardKind, ForwardKind};
use hyperflow::sampling::stratified_chart_samples;
use hyperflow::{catalog, IsoDescriptor, Vector};
use serde::Serialize;

use battery::{BatteryInput, InvariantReport};
use scenario::{Output, ResolvedGrid, Scenario};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("invariant violation")]
    Violation,
    #[error("i/o error: {0}")]
    Io(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Violation => 3,
            CliError::Io(_) => 4,
            CliError::Internal(_) => 1,
        }
    }
}

#[derive(Parser)]
#[command(name = "hyperflow", version, about = "Exact mean curvature flows in hyperbolic space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// Scenario file, or the name of a catalog entry.
    scenario: String,
    /// Output directory; created if missing.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Overrides the sampling seed of the scenario.
    #[arg(long)]
    seed: Option<u64>,
    /// Multiplies every tolerance of the invariant battery.
    #[arg(long, default_value_t = 1.0)]
    tolerance_scale: f64,
    /// Rescales Lorentzian flow positions before checking them.
    #[arg(long, hide = true, default_value_t = 1.0)]
    inject_flow_scale: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a scenario and write trajectories and reports.
    Run(Common),
    /// Run the invariant battery; exit 3 if any check fails.
    Verify(Common),
    /// Compute forward and backward limits.
    Limits(Common),
    /// List the built-in examples, or write their scenarios with --out.
    Catalog {
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// A scenario with everything derived from it.
struct Loaded {
    scenario: Scenario,
    descriptor: IsoDescriptor,
    grid: ResolvedGrid,
    chart_samples: Vec<Vec<f64>>,
    points: Vec<Vector>,
}

fn load(c: &Common) -> Result<Loaded, CliError> {
    if !(c.tolerance_scale > 0.0 && c.tolerance_scale.is_finite()) {
        return Err(CliError::Invalid("--tolerance-scale must be positive".into()));
    }
    let mut scenario = Scenario::resolve(&c.scenario)?;
    if let Some(seed) = c.seed {
        scenario.sampling.seed = seed;
    }
    scenario.validate()?;
    let descriptor = scenario.descriptor()?;
    let grid = scenario.grid(&descriptor)?;
    let chart_samples = stratified_chart_samples(&descriptor, scenario.sampling.per_dim, scenario.sampling.seed);
    let points = chart_samples
        .iter()
        .map(|u| descriptor.immerse(u))
        .collect::<hyperflow::Result<Vec<_>>>()
        .map_err(|e| CliError::Invalid(format!("sampling failed: {e}")))?;
    Ok(Loaded { scenario, descriptor, grid, chart_samples, points })
}

fn battery(l: &Loaded, c: &Common) -> InvariantReport {
    BatteryInput {
        descriptor: &l.descriptor,
        chart_samples: &l.chart_samples,
        points: &l.points,
        times: &l.grid.times,
        oracle: l.scenario.oracle,
        tolerance_scale: c.tolerance_scale,
        flow_scale: c.inject_flow_scale,
    }
    .run()
}

fn out_dir(out: &Option<PathBuf>) -> Result<Option<&Path>, CliError> {
    match out {
        Some(dir) => {
            std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
            Ok(Some(dir.as_path()))
        }
        None => Ok(None),
    }
}

fn print_json(value: &impl Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::Internal(e.to_string()))?;
    writeln!(std::io::stdout().lock(), "{text}").map_err(|e| CliError::Io(format!("stdout: {e}")))
}

fn run(c: &Common) -> Result<(), CliError> {
    let l = load(c)?;
    let dir = out_dir(&c.out)?.unwrap_or(Path::new("."));
    let wants = |o: Output| l.scenario.outputs.contains(&o);
    let frame = l.scenario.frame(l.descriptor.m())?;
    let window = artifacts::window_summary(&l.descriptor, &l.grid);
    if wants(Output::Trajectory) || wants(Output::Ball) {
        let rows = artifacts::trajectories(&l.descriptor, &frame, &l.points, &l.grid.times)?;
        if wants(Output::Trajectory) {
            artifacts::write_csv(&dir.join("trajectory.csv"), "x", &rows, false)?;
        }
        if wants(Output::Ball) {
            artifacts::write_csv(&dir.join("ball.csv"), "y", &rows, true)?;
        }
    }
    if wants(Output::Window) {
        artifacts::write_json(&dir.join("window.json"), &window)?;
    }
    if wants(Output::Limits) {
        artifacts::write_json(&dir.join("limits.json"), &artifacts::limits(&l.descriptor, &l.points)?)?;
    }
    if wants(Output::Invariants) {
        artifacts::write_json(&dir.join("invariants.json"), &battery(&l, c))?;
    }
    print_json(&window)
}

fn verify(c: &Common) -> Result<(), CliError> {
    let l = load(c)?;
    let report = battery(&l, c);
    if let Some(dir) = out_dir(&c.out)? {
        artifacts::write_json(&dir.join("invariants.json"), &report)?;
        artifacts::write_json(&dir.join("limits.json"), &artifacts::limits(&l.descriptor, &l.points)?)?;
    }
    print_json(&report)?;
    if report.overall_pass {
        Ok(())
    } else {
        Err(CliError::Violation)
    }
}

fn limits(c: &Common) -> Result<(), CliError> {
    let l = load(c)?;
    let report = artifacts::limits(&l.descriptor, &l.points)?;
    if let Some(dir) = out_dir(&c.out)? {
        artifacts::write_json(&dir.join("limits.json"), &report)?;
    }
    print_json(&report)
}

#[derive(Serialize)]
struct CatalogEntry {
    name: &'static str,
    n: usize,
    m: usize,
    t: Option<f64>,
    t_dprime: Option<f64>,
    forward: &'static str,
    backward: &'static str,
}

fn forward_name(k: ForwardKind) -> &'static str {
    match k {
        ForwardKind::Stationary => "stationary",
        ForwardKind::FocalCollapse => "focal_collapse",
        ForwardKind::TotallyGeodesic => "totally_geodesic",
        ForwardKind::IdealPoint => "ideal_point",
    }
}

fn list_catalog(out: &Option<PathBuf>) -> Result<(), CliError> {
    let dir = out_dir(out)?;
    let mut entries = Vec::new();
    for (name, d) in catalog::entries::<f64>() {
        let w = existence_window(&d);
        let limits = classify_limits(&d);
        entries.push(CatalogEntry {
            name,
            n: d.n(),
            m: d.m(),
            t: w.t.finite(),
            t_dprime: w.t_dprime.finite(),
            forward: forward_name(limits.forward),
            backward: match limits.backward {
                BackwardKind::Stationary => "stationary",
                BackwardKind::IdealSubmanifold => "ideal_submanifold",
            },
        });
        if let Some(dir) = dir {
            let s = scenario::catalog_scenario(name).ok_or_else(|| CliError::Internal(name.into()))?;
            artifacts::write_json(&dir.join(format!("{name}.json")), &s)?;
        }
    }
    print_json(&entries)
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("HYPERFLOW_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Invalid(format!("HYPERFLOW_THREADS must be a positive integer, got `{v}`")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Internal(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Run(c) => run(c),
        Command::Verify(c) => verify(c),
        Command::Limits(c) => limits(c),
        Command::Catalog { out } => list_catalog(out),
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hyperflow: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

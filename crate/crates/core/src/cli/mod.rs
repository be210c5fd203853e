//! Command-line front end: `perf`, `sweep`, `tradeoff`, `verify` and `figures`.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;
use serde_json::json;

use crate::engine::optimal_performance;
use crate::error::EngineError;
use crate::restrictions::{resolve_params, RestrictionModel};
use crate::sweep::{
    compute_sweep, linspace, write_sweep_csv, write_tradeoff_csv, Axis, Columns, ModelPair, SweepConfig,
};
use crate::verify::{self, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(
    name = "stroke-engine",
    version,
    about = "Three-stroke qubit engine: optimal performance, sweeps and self-checks"
)]
struct Cli {
    /// JSON file with default values; explicit flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal work and efficiency at one temperature pair, as JSON.
    Perf(PointArgs),
    /// CSV of efficiency and work along a grid.
    Sweep(SweepArgs),
    /// CSV of (efficiency, work) pairs along a grid, one block per model.
    Tradeoff(SweepArgs),
    /// Check closed forms against the numerical oracles.
    Verify(VerifyArgs),
    /// Write the preset figure CSVs into a directory.
    Figures(FiguresArgs),
}

#[derive(Debug, Args)]
struct PointArgs {
    /// Hot bath beta*omega.
    #[arg(long)]
    bh: Option<f64>,
    /// Cold bath beta*omega.
    #[arg(long)]
    bc: Option<f64>,
    /// Hot-side restriction: unrestricted, fb:D, jc or lam:X.
    #[arg(long)]
    hot: Option<String>,
    /// Cold-side restriction.
    #[arg(long)]
    cold: Option<String>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Swept parameter: ratio (beta_c/beta_h), bh or bc.
    #[arg(long)]
    axis: Option<String>,
    #[arg(long = "ratio-min", alias = "min")]
    ratio_min: Option<f64>,
    #[arg(long = "ratio-max", alias = "max")]
    ratio_max: Option<f64>,
    #[arg(long = "ratio-steps", alias = "steps")]
    ratio_steps: Option<usize>,
    /// Model to include, `m` or `hot/cold`; repeatable. Defaults to --hot/--cold.
    #[arg(long = "model")]
    models: Vec<String>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Keep non-operational points instead of blanking them.
    #[arg(long)]
    raw: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    seed: Option<u64>,
    /// Intervals per axis of the brute-force search.
    #[arg(long)]
    grid: Option<usize>,
    /// Run only these checks (comma separated or repeated).
    #[arg(long, value_delimiter = ',')]
    only: Vec<String>,
}

#[derive(Debug, Args)]
struct FiguresArgs {
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    bh: Option<f64>,
}

/// Defaults read from `--config`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    bh: Option<f64>,
    bc: Option<f64>,
    hot: Option<String>,
    cold: Option<String>,
    axis: Option<String>,
    ratio_min: Option<f64>,
    ratio_max: Option<f64>,
    ratio_steps: Option<usize>,
    models: Option<Vec<String>>,
    out: Option<PathBuf>,
    raw: Option<bool>,
    seed: Option<u64>,
    grid: Option<usize>,
    only: Option<Vec<String>>,
}

#[derive(Debug)]
enum CliError {
    Invalid(String),
    Io(PathBuf, io::Error),
    VerifyFailed,
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            Self::Invalid(_) => EXIT_INVALID,
            Self::Io(..) => EXIT_IO,
            Self::VerifyFailed => EXIT_VERIFY,
        }
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        Self::Invalid(e.to_string())
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |e| CliError::Io(path.to_path_buf(), e)
}

/// Parses `args` (program name first) and runs the command; returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(stderr, "{text}")
            } else {
                write!(stdout, "{text}")
            };
            return code;
        }
    };
    match dispatch(cli, &command_line(&args), stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            match &e {
                CliError::Invalid(msg) => {
                    let _ = writeln!(stderr, "error: {msg}");
                }
                CliError::Io(path, err) => {
                    let _ = writeln!(stderr, "error: {}: {err}", path.display());
                }
                CliError::VerifyFailed => {
                    let _ = writeln!(stderr, "verify: at least one check failed");
                }
            }
            e.code()
        }
    }
}

/// Arguments after the program name, minus the output location, so that the
/// same sweep written to two places is byte-identical.
fn command_line(args: &[std::ffi::OsString]) -> String {
    let mut kept = Vec::new();
    let mut iter = args.iter().skip(1).map(|a| a.to_string_lossy());
    while let Some(a) = iter.next() {
        if a == "--out" {
            iter.next();
        } else if !a.starts_with("--out=") {
            kept.push(a.into_owned());
        }
    }
    kept.join(" ")
}

fn load_config(path: Option<&Path>) -> Result<ConfigFile, CliError> {
    let Some(path) = path else {
        return Ok(ConfigFile::default());
    };
    let text = fs::read_to_string(path).map_err(io_err(path))?;
    serde_json::from_str(&text).map_err(|e| CliError::Invalid(format!("config {}: {e}", path.display())))
}

fn dispatch(cli: Cli, line: &str, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let cfg = load_config(cli.config.as_deref())?;
    let stdout_err = || io_err(Path::new("<stdout>"));
    match cli.command {
        Command::Perf(a) => perf(&a, &cfg, stdout, stderr),
        Command::Sweep(a) => {
            let sc = sweep_config(&a, &cfg, Columns::Both)?;
            let rows = compute_sweep(&sc)?;
            let meta = format!("stroke-engine {VERSION} {line}");
            emit(out_path(&a, &cfg).as_deref(), stdout, |w| {
                write_sweep_csv(w, &sc, &rows, &meta)
            })
        }
        Command::Tradeoff(a) => {
            let sc = sweep_config(&a, &cfg, Columns::Both)?;
            let rows = compute_sweep(&sc)?;
            let meta = format!("stroke-engine {VERSION} {line}");
            emit(out_path(&a, &cfg).as_deref(), stdout, |w| {
                write_tradeoff_csv(w, &sc, &rows, &meta)
            })
        }
        Command::Verify(a) => {
            let only = if a.only.is_empty() {
                cfg.only.clone()
            } else {
                Some(a.only.clone())
            };
            let opts = VerifyOptions {
                seed: a.seed.or(cfg.seed).unwrap_or(0),
                grid: a.grid.or(cfg.grid).unwrap_or(200),
                only,
                ..VerifyOptions::default()
            };
            let report = verify::run(&opts)?;
            write!(stdout, "{report}").map_err(stdout_err())?;
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerifyFailed)
            }
        }
        Command::Figures(a) => {
            let dir = a.out.or(cfg.out).unwrap_or_else(|| PathBuf::from("figures"));
            let bh = a.bh.or(cfg.bh).unwrap_or(0.2);
            for path in write_figures(&dir, bh)? {
                writeln!(stdout, "{}", path.display()).map_err(stdout_err())?;
            }
            Ok(())
        }
    }
}

fn model(flag: &Option<String>, cfg: &Option<String>) -> Result<RestrictionModel, CliError> {
    match flag.as_ref().or(cfg.as_ref()) {
        Some(s) => Ok(s.parse()?),
        None => Ok(RestrictionModel::Unrestricted),
    }
}

fn perf(a: &PointArgs, cfg: &ConfigFile, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    let bh = a.bh.or(cfg.bh).unwrap_or(0.2);
    let bc = a.bc.or(cfg.bc).unwrap_or(0.6);
    let r = resolve_params(model(&a.hot, &cfg.hot)?, model(&a.cold, &cfg.cold)?, bh, bc)?;
    let point = optimal_performance(&r.params);
    if r.hot.clamped || r.cold.clamped {
        let _ = writeln!(stderr, "warning: lambda_max clamped into [0, 1]");
    }
    if point.cold_hotter {
        let _ = writeln!(stderr, "warning: cold bath is not colder than the hot bath");
    }
    let out = json!({
        "p_opt": point.p_opt,
        "w_max_over_omega": point.w_max,
        "eta_max": point.eta_max,
        "eta_carnot": point.eta_carnot,
        "operational": point.operational,
    });
    writeln!(stdout, "{out}").map_err(io_err(Path::new("<stdout>")))
}

fn out_path(a: &SweepArgs, cfg: &ConfigFile) -> Option<PathBuf> {
    a.out.clone().or_else(|| cfg.out.clone())
}

fn sweep_config(a: &SweepArgs, cfg: &ConfigFile, columns: Columns) -> Result<SweepConfig, CliError> {
    let axis: Axis = match a.axis.as_ref().or(cfg.axis.as_ref()) {
        Some(s) => s.parse()?,
        None => Axis::Ratio,
    };
    let (lo_default, hi_default) = match axis {
        Axis::Ratio => (1.05, 10.0),
        _ => (0.05, 5.0),
    };
    let lo = a.ratio_min.or(cfg.ratio_min).unwrap_or(lo_default);
    let hi = a.ratio_max.or(cfg.ratio_max).unwrap_or(hi_default);
    let steps = a.ratio_steps.or(cfg.ratio_steps).unwrap_or(100);
    if steps == 0 {
        return Err(CliError::Invalid("--ratio-steps must be at least 1".into()));
    }
    let names = if a.models.is_empty() {
        cfg.models.clone().unwrap_or_default()
    } else {
        a.models.clone()
    };
    let models = if names.is_empty() {
        vec![ModelPair {
            hot: model(&a.point.hot, &cfg.hot)?,
            cold: model(&a.point.cold, &cfg.cold)?,
        }]
    } else {
        names.iter().map(|s| s.parse()).collect::<Result<_, _>>()?
    };
    let sc = SweepConfig {
        beta_h_omega: a.point.bh.or(cfg.bh).unwrap_or(0.2),
        beta_c_omega: a.point.bc.or(cfg.bc).unwrap_or(0.6),
        axis,
        grid: linspace(lo, hi, steps),
        models,
        columns,
        raw: a.raw || cfg.raw.unwrap_or(false),
    };
    sc.validate()?;
    Ok(sc)
}

fn emit<F>(path: Option<&Path>, stdout: &mut dyn Write, body: F) -> Result<(), CliError>
where
    F: FnOnce(&mut dyn Write) -> io::Result<()>,
{
    match path {
        Some(p) => {
            let file = File::create(p).map_err(io_err(p))?;
            let mut w = BufWriter::new(file);
            body(&mut w).and_then(|_| w.flush()).map_err(io_err(p))
        }
        None => body(stdout).map_err(io_err(Path::new("<stdout>"))),
    }
}

fn models(names: &[&str]) -> Vec<ModelPair> {
    names.iter().map(|s| s.parse().expect("preset model")).collect()
}

/// Preset sweeps along `β_C/β_H ∈ [1.05, 10]` at fixed `β_H ω`.
pub fn figure_presets(beta_h_omega: f64) -> Vec<(&'static str, SweepConfig, bool)> {
    let base = |names: &[&str], columns| SweepConfig {
        beta_h_omega,
        beta_c_omega: 3.0 * beta_h_omega,
        axis: Axis::Ratio,
        grid: linspace(1.05, 10.0, 100),
        models: models(names),
        columns,
        raw: false,
    };
    let finite = ["unrestricted", "fb:15", "fb:10", "fb:5"];
    vec![
        ("finite_bath_efficiency", base(&finite, Columns::Efficiency), false),
        ("finite_bath_work", base(&finite, Columns::Work), false),
        (
            "jaynes_cummings_efficiency",
            base(&["unrestricted", "fb:10", "jc"], Columns::Efficiency),
            false,
        ),
        (
            "tradeoff",
            base(&["unrestricted", "fb:10", "fb:5", "jc"], Columns::Both),
            true,
        ),
    ]
}

/// Writes one CSV per preset into `dir` and returns their paths.
fn write_figures(dir: &Path, beta_h_omega: f64) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    let mut paths = Vec::new();
    for (name, sc, tradeoff) in figure_presets(beta_h_omega) {
        let rows = compute_sweep(&sc)?;
        let path = dir.join(format!("{name}.csv"));
        let meta = format!(
            "stroke-engine {VERSION} figures preset {name}: ratio beta_c/beta_h in [1.05, 10], 100 points, beta_h*omega = {beta_h_omega}"
        );
        emit(Some(&path), &mut io::sink(), |w| {
            if tradeoff {
                write_tradeoff_csv(w, &sc, &rows, &meta)
            } else {
                write_sweep_csv(w, &sc, &rows, &meta)
            }
        })?;
        paths.push(path);
    }
    Ok(paths)
}

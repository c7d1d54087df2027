//! The `sct` command line: `run` writes `T,lnZ,C,C_err` for one mode and
//! `compare` writes `T,C_<mode>...` for several modes on a shared grid.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::thermo::{Mode, Model, ThermoCurve, DEFAULT_TOL};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "sct", version, about = "Semiclassical thermodynamics of central anharmonic oscillators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Tabulate ln Z and the specific heat for one mode.
    Run {
        /// harmonic, quartic-semiclassical, quartic-classical or quartic-wkb
        #[arg(long)]
        mode: Option<String>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Tabulate the specific heat of several modes side by side.
    Compare {
        /// Comma-separated list of modes.
        #[arg(long, value_delimiter = ',')]
        modes: Option<Vec<String>>,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Debug, Args)]
struct CommonArgs {
    /// Dimensionless coupling g.
    #[arg(long)]
    g: Option<f64>,
    /// Spatial dimension D.
    #[arg(long)]
    dim: Option<usize>,
    /// Lowest temperature (units of hbar omega / k_B).
    #[arg(long)]
    tmin: Option<f64>,
    /// Highest temperature.
    #[arg(long)]
    tmax: Option<f64>,
    /// Number of grid points, uniformly spaced in T.
    #[arg(long)]
    steps: Option<usize>,
    /// Relative quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Output file (standard output when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// File of key=value lines supplying defaults for the flags above.
    #[arg(long)]
    config: Option<PathBuf>,
}

/// One fully specified computation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub mode: Mode,
    pub g: f64,
    pub dim: usize,
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub tol: f64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(mode: Mode, g: f64, dim: usize, t_min: f64, t_max: f64, t_steps: usize) -> Self {
        Self {
            mode,
            g,
            dim,
            t_min,
            t_max,
            t_steps,
            tol: DEFAULT_TOL,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.g >= 0.0 && self.g.is_finite()) {
            return bad(format!("--g must be finite and >= 0, got {}", self.g));
        }
        if self.dim == 0 {
            return bad("--dim must be >= 1".into());
        }
        if !(self.t_min > 0.0 && self.t_min.is_finite()) {
            return bad(format!("--tmin must be > 0, got {}", self.t_min));
        }
        if !(self.t_max > self.t_min && self.t_max.is_finite()) {
            return bad(format!("--tmax must exceed --tmin, got {}", self.t_max));
        }
        if self.t_steps < 2 {
            return bad(format!("--steps must be >= 2, got {}", self.t_steps));
        }
        if !(self.tol > 0.0 && self.tol < 1.0) {
            return bad(format!("--tol must lie in (0, 1), got {}", self.tol));
        }
        if self.mode == Mode::QuarticWkb && self.dim != 1 {
            return bad("wkb requires D=1".into());
        }
        if self.mode == Mode::QuarticSemiclassical && self.g == 0.0 {
            return bad("quartic-semiclassical requires g > 0".into());
        }
        Ok(())
    }

    pub fn temperatures(&self) -> Vec<f64> {
        temperature_grid(self.t_min, self.t_max, self.t_steps)
    }

    pub fn model(&self) -> Result<Model> {
        self.validate()?;
        Model::new(self.mode, self.g, self.dim, self.tol, 1.0 / self.t_max)
    }
}

/// `steps` temperatures uniformly spaced from `t_min` to `t_max` inclusive.
pub fn temperature_grid(t_min: f64, t_max: f64, steps: usize) -> Vec<f64> {
    (0..steps)
        .map(|i| {
            if i + 1 == steps {
                t_max
            } else {
                t_min + (t_max - t_min) * i as f64 / (steps - 1) as f64
            }
        })
        .collect()
}

fn number(x: f64) -> String {
    format!("{x:.14e}")
}

pub fn format_run_csv(curve: &ThermoCurve) -> String {
    let mut s = String::from("T,lnZ,C,C_err\n");
    for i in 0..curve.temperatures.len() {
        let row = [curve.temperatures[i], curve.ln_z[i], curve.c[i], curve.c_err[i]];
        s.push_str(&row.map(number).join(","));
        s.push('\n');
    }
    s
}

pub fn format_compare_csv(columns: &[(Mode, ThermoCurve)]) -> Result<String> {
    let Some((_, first)) = columns.first() else {
        return Err(Error::Config("compare needs at least one mode".into()));
    };
    if columns.iter().any(|(_, c)| c.temperatures != first.temperatures) {
        return Err(Error::GridMismatch);
    }
    let mut s = String::from("T");
    for (mode, _) in columns {
        s.push_str(",C_");
        s.push_str(mode.name());
    }
    s.push('\n');
    for (i, &t) in first.temperatures.iter().enumerate() {
        s.push_str(&number(t));
        for (_, c) in columns {
            s.push(',');
            s.push_str(&number(c.c[i]));
        }
        s.push('\n');
    }
    Ok(s)
}

pub fn run(config: &RunConfig) -> Result<String> {
    let model = config.model()?;
    Ok(format_run_csv(&ThermoCurve::compute(&model, &config.temperatures())?))
}

/// Runs every configuration and lays out their specific heats as columns.
pub fn compare(configs: &[RunConfig]) -> Result<String> {
    if let Some(first) = configs.first() {
        if configs.iter().any(|c| c.temperatures() != first.temperatures()) {
            return Err(Error::GridMismatch);
        }
    }
    let models = configs.iter().map(RunConfig::model).collect::<Result<Vec<_>>>()?;
    let mut columns = Vec::with_capacity(configs.len());
    for (cfg, model) in configs.iter().zip(&models) {
        columns.push((cfg.mode, ThermoCurve::compute(model, &cfg.temperatures())?));
    }
    format_compare_csv(&columns)
}

/// Values read from a configuration file.
#[derive(Debug, Default)]
struct FileValues {
    mode: Option<String>,
    modes: Option<Vec<String>>,
    g: Option<f64>,
    dim: Option<usize>,
    tmin: Option<f64>,
    tmax: Option<f64>,
    steps: Option<usize>,
    tol: Option<f64>,
    out: Option<PathBuf>,
}

fn parse_value<T: std::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("invalid value '{value}' for '{key}' in config file")))
}

fn read_config(path: &PathBuf) -> Result<FileValues> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Config(format!("cannot read config file {}: {e}", path.display())))?;
    let mut v = FileValues::default();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::Config(format!("config line {}: expected key=value", lineno + 1)));
        };
        let (key, value) = (key.trim().trim_start_matches("--"), value.trim());
        match key {
            "mode" => v.mode = Some(value.to_string()),
            "modes" => v.modes = Some(value.split(',').map(|m| m.trim().to_string()).collect()),
            "g" => v.g = Some(parse_value(key, value)?),
            "dim" => v.dim = Some(parse_value(key, value)?),
            "tmin" => v.tmin = Some(parse_value(key, value)?),
            "tmax" => v.tmax = Some(parse_value(key, value)?),
            "steps" => v.steps = Some(parse_value(key, value)?),
            "tol" => v.tol = Some(parse_value(key, value)?),
            "out" => v.out = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("unknown key '{other}' in config file"))),
        }
    }
    Ok(v)
}

/// Flags override the file; remaining gaps take the built-in defaults.
fn resolve(mode: Mode, args: &CommonArgs, file: &FileValues) -> RunConfig {
    RunConfig {
        mode,
        g: args.g.or(file.g).unwrap_or(0.5),
        dim: args.dim.or(file.dim).unwrap_or(1),
        t_min: args.tmin.or(file.tmin).unwrap_or(0.1),
        t_max: args.tmax.or(file.tmax).unwrap_or(5.0),
        t_steps: args.steps.or(file.steps).unwrap_or(50),
        tol: args.tol.or(file.tol).unwrap_or(DEFAULT_TOL),
        out: args.out.clone().or_else(|| file.out.clone()),
    }
}

fn file_values(args: &CommonArgs) -> Result<FileValues> {
    match &args.config {
        Some(p) => read_config(p),
        None => Ok(FileValues::default()),
    }
}

fn execute(command: Command) -> Result<(String, Option<PathBuf>)> {
    match command {
        Command::Run { mode, common } => {
            let file = file_values(&common)?;
            let name = mode
                .or(file.mode.clone())
                .ok_or_else(|| Error::Config("missing --mode".into()))?;
            let cfg = resolve(name.parse()?, &common, &file);
            cfg.validate()?;
            Ok((run(&cfg)?, cfg.out))
        }
        Command::Compare { modes, common } => {
            let file = file_values(&common)?;
            let names = modes
                .or(file.modes.clone())
                .ok_or_else(|| Error::Config("missing --modes".into()))?;
            let configs = names
                .iter()
                .map(|n| Ok(resolve(n.trim().parse()?, &common, &file)))
                .collect::<Result<Vec<_>>>()?;
            for c in &configs {
                c.validate()?;
            }
            let out = configs.first().and_then(|c| c.out.clone());
            Ok((compare(&configs)?, out))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Config(_) => EXIT_CONFIG,
        _ => EXIT_NUMERIC,
    }
}

/// Runs the command line and returns the process exit status.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok((csv, None)) => match stdout.write_all(csv.as_bytes()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write output: {e}");
                EXIT_NUMERIC
            }
        },
        Ok((csv, Some(path))) => match fs::write(&path, csv) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(stderr, "error: cannot write {}: {e}", path.display());
                EXIT_CONFIG
            }
        },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

//! Command-line front end: reads curve, family and kernel files, runs the
//! analyses from `harmsphere`, and writes JSON or CSV reports.
//!
//! Exit status is 0 on success, 1 when a check inside a command fails and 2
//! when the input is unusable.

pub mod commands;
pub mod json;
pub mod selftest;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use harmsphere::gauss::{Chart, GaussError, QuadratureScheme, QuadratureSpec};
use harmsphere::io::IoError;
use thiserror::Error;

pub const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(#[from] IoError),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("family: {0}")]
    Family(#[from] harmsphere::family::FamilyError),
    #[error("kernel: {0}")]
    Kernel(#[from] harmsphere::kernel::KernelError),
    #[error("gauss: {0}")]
    Gauss(#[from] GaussError),
    #[error("curve: {0}")]
    Curve(#[from] harmsphere::CurveError),
}

impl CliError {
    /// 1 for a failed computation, 2 for bad input.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Gauss(GaussError::QuadratureDiverged { .. }) => 1,
            _ => 2,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "harmsphere",
    version,
    about = "Holomorphic curves in CP^2 and their harmonic Gauss transforms"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Gauss–Legendre nodes per dimension in each chart.
    #[arg(long, global = true, default_value_t = 64)]
    pub quad_order: usize,
    /// Finite-difference step for the residual checks.
    #[arg(long, global = true, default_value_t = 1e-3)]
    pub fd_step: f64,
    /// Radius of the circle where integration switches from `z` to `w = 1/z`.
    #[arg(long, global = true, default_value_t = 1.0)]
    pub chart_split: f64,
    /// Override a tolerance, as `name=value`; repeatable.
    #[arg(long = "tol", global = true, value_name = "NAME=VALUE")]
    pub tol: Vec<String>,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ChartArg {
    Z,
    W,
}

impl From<ChartArg> for Chart {
    fn from(c: ChartArg) -> Self {
        match c {
            ChartArg::Z => Chart::Z,
            ChartArg::W => Chart::W,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TraceFormat {
    Json,
    GaussCsv,
    DivisorCsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Degree, ramification divisor and invariant sheet of a curve.
    Analyze {
        #[arg(long)]
        input: PathBuf,
    },
    /// The conjugate polar, as a curve file.
    Polar {
        #[arg(long)]
        input: PathBuf,
    },
    /// The Gauss transform sampled on a square grid, as CSV.
    GaussSample {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        grid: usize,
        #[arg(long, default_value_t = 1.5)]
        half_width: f64,
        #[arg(long, value_enum, default_value = "z")]
        chart: ChartArg,
    },
    /// Numerical degree, energy and residuals of the Gauss transform.
    Geometry {
        #[arg(long)]
        input: PathBuf,
        /// Measure the curve itself instead of its Gauss transform.
        #[arg(long)]
        holomorphic: bool,
        #[arg(long, default_value_t = 20)]
        grid: usize,
    },
    /// Rank and kernel of `p ↦ (p₀p′ − p₀′p) mod a`.
    Kernel {
        #[arg(long)]
        input: PathBuf,
        /// Also build the witness polynomials (needs roots and 2r <= k + 1).
        #[arg(long)]
        witnesses: bool,
    },
    /// Trace the Gauss transform and the divisor along a family.
    Family {
        #[arg(long, conflicts_with = "preset", required_unless_present = "preset")]
        input: Option<PathBuf>,
        /// `burstall`, `coalesce` or `cmr`.
        #[arg(long)]
        preset: Option<String>,
        /// Preset parameters, comma separated (`cmr` takes `k,r`).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        params: Vec<i64>,
        /// Point of the sphere: `re`, `re,im` (rationals) or `inf`.
        #[arg(long, default_value = "0")]
        z0: String,
        #[arg(long, allow_hyphen_values = true)]
        t_min: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        t_max: Option<String>,
        #[arg(long, default_value_t = 41)]
        samples: usize,
        /// Fubini–Study step above which a sample pair is flagged.
        #[arg(long, default_value_t = 0.25)]
        threshold: f64,
        /// Isolate divisor roots numerically and report per-root quotients.
        #[arg(long)]
        roots: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: TraceFormat,
    },
    /// Rerun the worked examples and seeded property samples.
    Selftest,
}

/// Acceptance thresholds used by `geometry` and `selftest`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Tolerances {
    /// Allowed error in numerical degree and energies.
    pub geometry: f64,
    /// Largest acceptable conformality or harmonicity residual.
    pub residual: f64,
    /// Smallest harmonicity residual the non-harmonic control must show.
    pub control: f64,
    /// Allowed error of a jump against `π/2`.
    pub jump: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            geometry: 1e-3,
            residual: 1e-3,
            control: 1e-1,
            jump: 1e-12,
        }
    }
}

impl Tolerances {
    pub fn with_overrides(overrides: &[String]) -> Result<Self, CliError> {
        let mut t = Self::default();
        for o in overrides {
            let (name, value) = o
                .split_once('=')
                .ok_or_else(|| CliError::Argument(format!("tolerance {o:?} is not NAME=VALUE")))?;
            let v: f64 = value.parse().map_err(|_| {
                CliError::Argument(format!("tolerance {o:?} has a non-numeric value"))
            })?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Argument(format!(
                    "tolerance {name} must be positive"
                )));
            }
            let slot = match name {
                "geometry" => &mut t.geometry,
                "residual" => &mut t.residual,
                "control" => &mut t.control,
                "jump" => &mut t.jump,
                _ => return Err(CliError::Argument(format!("unknown tolerance {name:?}"))),
            };
            *slot = v;
        }
        Ok(t)
    }
}

/// Everything a command needs besides its own arguments.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub output: Option<PathBuf>,
    pub quad: QuadratureSpec,
    pub fd_step: f64,
    pub tol: Tolerances,
    pub seed: u64,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let quad = QuadratureSpec {
            split_radius: cli.chart_split,
            order: cli.quad_order,
            scheme: QuadratureScheme::TensorGaussLegendrePolar,
            ..QuadratureSpec::default()
        };
        quad.validate()?;
        if !(cli.fd_step > 0.0 && cli.fd_step.is_finite()) {
            return Err(CliError::Argument("--fd-step must be positive".into()));
        }
        Ok(Self {
            output: cli.output.clone(),
            quad,
            fd_step: cli.fd_step,
            tol: Tolerances::with_overrides(&cli.tol)?,
            seed: cli.seed,
        })
    }
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            output: None,
            quad: QuadratureSpec::default(),
            fd_step: 1e-3,
            tol: Tolerances::default(),
            seed: DEFAULT_SEED,
        }
    }
}

/// A finished report and whether every check in it passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub passed: bool,
}

impl Outcome {
    pub fn ok(text: String) -> Self {
        Self { text, passed: true }
    }
}

pub fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    let cfg = RunConfig::from_cli(cli)?;
    let outcome = match &cli.command {
        Command::Analyze { input } => commands::analyze(&read_input(input)?)?,
        Command::Polar { input } => commands::polar(&read_input(input)?)?,
        Command::GaussSample {
            input,
            grid,
            half_width,
            chart,
        } => commands::gauss_sample(&read_input(input)?, *grid, *half_width, (*chart).into())?,
        Command::Geometry {
            input,
            holomorphic,
            grid,
        } => commands::geometry(&read_input(input)?, *holomorphic, *grid, &cfg)?,
        Command::Kernel { input, witnesses } => commands::kernel(&read_input(input)?, *witnesses)?,
        Command::Family {
            input,
            preset,
            params,
            z0,
            t_min,
            t_max,
            samples,
            threshold,
            roots,
            format,
        } => {
            let fam = match (input, preset) {
                (Some(path), _) => harmsphere::io::parse_family(&read_input(path)?)?,
                (None, Some(name)) => harmsphere::family::CurveFamily::preset(name, params)?,
                (None, None) => {
                    return Err(CliError::Argument(
                        "family needs --input or --preset".into(),
                    ))
                }
            };
            let opts = commands::TraceOptions {
                z0: z0.clone(),
                t_min: t_min.clone(),
                t_max: t_max.clone(),
                samples: *samples,
                threshold: *threshold,
                roots: *roots,
                format: *format,
            };
            commands::family(&fam, &opts)?
        }
        Command::Selftest => selftest::run(&cfg),
    };
    match &cfg.output {
        Some(path) => {
            fs::write(path, &outcome.text).map_err(|source| CliError::Write {
                path: path.clone(),
                source,
            })?;
            Ok(Outcome {
                text: String::new(),
                passed: outcome.passed,
            })
        }
        None => Ok(outcome),
    }
}

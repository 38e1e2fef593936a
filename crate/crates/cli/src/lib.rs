//! Command implementations for the `gbquad` binary.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use gbquad::study::{DEFAULT_DEGREES, DEFAULT_ELL, DEFAULT_OMEGAS};
use gbquad::{
    format_float, loglog_slope, run_study, BuiltinFunction, GridFunction, KernelKind,
    OscillatoryKernel, ProductRule, ReferenceKind, StudyConfig,
};

pub mod sample_file;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Domain(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } => 3,
            CliError::Domain(_) => 4,
        }
    }
}

impl From<gbquad::Error> for CliError {
    fn from(e: gbquad::Error) -> Self {
        match e {
            gbquad::Error::OutOfDomain { .. } | gbquad::Error::NotConverged { .. } => {
                CliError::Domain(e.to_string())
            }
            other => CliError::Usage(other.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gbquad", version, about = "Oscillatory product integration from equispaced samples")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Error table for a built-in function against the m = 512 rule.
    Table(TableArgs),
    /// Evaluate the rule for a sample file or a built-in function.
    Integrate(IntegrateArgs),
    /// Convergence report with a fitted log-log slope.
    Converge(ConvergeArgs),
    /// Dump the per-sample weights w_j(y).
    Weights(WeightsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum FunctionArg {
    F1,
    F2,
}

impl From<FunctionArg> for BuiltinFunction {
    fn from(f: FunctionArg) -> Self {
        match f {
            FunctionArg::F1 => BuiltinFunction::F1,
            FunctionArg::F2 => BuiltinFunction::F2,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum KernelArg {
    Sin,
    Cos,
}

impl From<KernelArg> for KernelKind {
    fn from(k: KernelArg) -> Self {
        match k {
            KernelArg::Sin => KernelKind::Sin,
            KernelArg::Cos => KernelKind::Cos,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReferenceArg {
    #[value(name = "self")]
    SelfReference,
    Oracle,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    #[arg(long, value_enum)]
    pub function: FunctionArg,
    #[arg(long, default_value_t = DEFAULT_ELL)]
    pub ell: usize,
    /// Degrees to tabulate (repeatable); defaults to 4, 8, ..., 256.
    #[arg(long = "m")]
    pub m: Vec<usize>,
    /// Frequencies (repeatable); defaults to 10, 100, 1000.
    #[arg(long = "omega", allow_negative_numbers = true)]
    pub omega: Vec<f64>,
    /// Evaluation points (repeatable); defaults depend on the function.
    #[arg(long = "y", allow_negative_numbers = true)]
    pub y: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).args(["samples", "function"])))]
pub struct IntegrateArgs {
    #[arg(long)]
    pub samples: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub function: Option<FunctionArg>,
    /// Degree for a built-in function.
    #[arg(long = "m")]
    pub m: Option<usize>,
    /// Kernel; defaults to the built-in function's kernel.
    #[arg(long, value_enum)]
    pub kernel: Option<KernelArg>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, default_value_t = DEFAULT_ELL)]
    pub ell: usize,
    #[arg(long = "y", required = true, allow_negative_numbers = true)]
    pub y: Vec<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ConvergeArgs {
    #[arg(long, value_enum)]
    pub function: FunctionArg,
    #[arg(long, value_enum)]
    pub kernel: Option<KernelArg>,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, default_value_t = DEFAULT_ELL)]
    pub ell: usize,
    #[arg(long = "m")]
    pub m: Vec<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub y: f64,
    #[arg(long, value_enum, default_value = "self")]
    pub reference: ReferenceArg,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct WeightsArgs {
    #[arg(long = "m")]
    pub m: usize,
    #[arg(long, default_value_t = 1.0)]
    pub a: f64,
    #[arg(long, default_value_t = DEFAULT_ELL)]
    pub ell: usize,
    #[arg(long, value_enum)]
    pub kernel: KernelArg,
    #[arg(long, allow_negative_numbers = true)]
    pub omega: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub y: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn check_points(a: f64, ys: &[f64]) -> Result<(), CliError> {
    match ys.iter().find(|y| !(y.is_finite() && y.abs() <= a)) {
        Some(y) => Err(CliError::Domain(format!("y = {y} lies outside [-{a}, {a}]"))),
        None => Ok(()),
    }
}

fn or_default<T: Clone>(given: &[T], default: &[T]) -> Vec<T> {
    if given.is_empty() {
        default.to_vec()
    } else {
        given.to_vec()
    }
}

pub fn cmd_table(args: &TableArgs) -> Result<(), CliError> {
    let function = BuiltinFunction::from(args.function);
    let cfg = StudyConfig {
        ell: args.ell,
        degrees: or_default(&args.m, &DEFAULT_DEGREES),
        omegas: or_default(&args.omega, &DEFAULT_OMEGAS),
        points: or_default(&args.y, &function.default_points()),
        ..StudyConfig::table(function)
    };
    check_points(function.half_width(), &cfg.points)?;
    let report = run_study(&cfg)?;
    emit(args.out.as_deref(), &report.to_csv())
}

pub fn cmd_integrate(args: &IntegrateArgs) -> Result<(), CliError> {
    let (samples, default_kernel) = match (&args.samples, args.function) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let fs = sample_file::parse(&text)
                .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
            (fs, None)
        }
        (None, Some(f)) => {
            let f = BuiltinFunction::from(f);
            let m = args
                .m
                .ok_or_else(|| CliError::Usage("--m is required with --function".into()))?;
            (f.samples(m)?, Some(f.kernel_kind()))
        }
        (None, None) => unreachable!("clap enforces the source group"),
    };
    let kind = args
        .kernel
        .map(KernelKind::from)
        .or(default_kernel)
        .ok_or_else(|| CliError::Usage("--kernel is required with --samples".into()))?;
    let text = integrate_csv(&samples, kind, args.omega, args.ell, &args.y)?;
    emit(args.out.as_deref(), &text)
}

/// `y,value` rows for each evaluation point.
pub fn integrate_csv(
    samples: &GridFunction,
    kind: KernelKind,
    omega: f64,
    ell: usize,
    ys: &[f64],
) -> Result<String, CliError> {
    let g = samples.grid();
    check_points(g.half_width(), ys)?;
    let kernel = OscillatoryKernel::new(kind, omega)?;
    let rule = ProductRule::new(g.degree(), g.half_width(), ell, kernel)?;
    let values = rule.integrate_many(samples, ys)?;
    let mut out = String::from("y,value\n");
    for (y, v) in ys.iter().zip(values) {
        writeln!(out, "{},{}", format_float(*y), format_float(v)).unwrap();
    }
    Ok(out)
}

pub fn cmd_converge(args: &ConvergeArgs) -> Result<(), CliError> {
    let function = BuiltinFunction::from(args.function);
    check_points(function.half_width(), &[args.y])?;
    let cfg = StudyConfig {
        function,
        kernel: args.kernel.map(KernelKind::from).unwrap_or(function.kernel_kind()),
        ell: args.ell,
        degrees: or_default(&args.m, &DEFAULT_DEGREES),
        omegas: vec![args.omega],
        points: vec![args.y],
        reference: match args.reference {
            ReferenceArg::SelfReference => ReferenceKind::SelfReference,
            ReferenceArg::Oracle => ReferenceKind::Oracle,
        },
    };
    let report = run_study(&cfg)?;
    let mut text = report.to_csv();
    let slope = loglog_slope(&report.series(args.omega, args.y));
    writeln!(text, "# slope,{}", slope.map(format_float).unwrap_or_default()).unwrap();
    emit(args.out.as_deref(), &text)
}

pub fn cmd_weights(args: &WeightsArgs) -> Result<(), CliError> {
    check_points(args.a, &[args.y])?;
    let kernel = OscillatoryKernel::new(args.kernel.into(), args.omega)?;
    let rule = ProductRule::new(args.m, args.a, args.ell, kernel)?;
    let weights = rule.weights(args.y)?;
    let mut text = String::from("j,t_j,w_j\n");
    for (j, (t, w)) in rule.grid().nodes().iter().zip(&weights.w).enumerate() {
        writeln!(text, "{j},{},{}", format_float(*t), format_float(*w)).unwrap();
    }
    emit(args.out.as_deref(), &text)
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Table(a) => cmd_table(a),
        Command::Integrate(a) => cmd_integrate(a),
        Command::Converge(a) => cmd_converge(a),
        Command::Weights(a) => cmd_weights(a),
    }
}

//! Convergence studies of the product rule on the two built-in test
//! integrands, against either the `m = 512` rule itself or the independent
//! oracle.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::bernstein::{EquispacedGrid, GridFunction};
use crate::error::Result;
use crate::oracle::{reference_integral, ReferenceConfig};
use crate::product::{KernelKind, OscillatoryKernel, ProductRule};

/// Degree used as the self-reference.
pub const SELF_REFERENCE_DEGREE: usize = 512;
pub const DEFAULT_ELL: usize = 256;
pub const DEFAULT_DEGREES: [usize; 7] = [4, 8, 16, 32, 64, 128, 256];
pub const DEFAULT_OMEGAS: [f64; 3] = [10.0, 100.0, 1000.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BuiltinFunction {
    /// `tanh(x + 1)` on `[-1, 1]` with the sine kernel.
    F1,
    /// `|x + 1|^(9/2)` on `[-2, 2]` with the cosine kernel.
    F2,
}

impl BuiltinFunction {
    pub fn eval(self, x: f64) -> f64 {
        match self {
            Self::F1 => (x + 1.0).tanh(),
            Self::F2 => (x + 1.0).abs().powf(4.5),
        }
    }

    pub fn half_width(self) -> f64 {
        match self {
            Self::F1 => 1.0,
            Self::F2 => 2.0,
        }
    }

    pub fn kernel_kind(self) -> KernelKind {
        match self {
            Self::F1 => KernelKind::Sin,
            Self::F2 => KernelKind::Cos,
        }
    }

    pub fn default_points(self) -> Vec<f64> {
        match self {
            Self::F1 => vec![-0.7, 0.5],
            Self::F2 => vec![-1.5, 1.0],
        }
    }

    /// Upper bound for `|f|` on its interval.
    pub fn sup_norm(self) -> f64 {
        match self {
            Self::F1 => 2f64.tanh(),
            Self::F2 => 3f64.powf(4.5),
        }
    }

    pub fn samples(self, m: usize) -> Result<GridFunction> {
        GridFunction::from_fn(EquispacedGrid::new(m, self.half_width())?, |x| self.eval(x))
    }

    /// Oracle settings with the absolute tolerance scaled to the size of
    /// the integrand.
    pub fn oracle_config(self) -> ReferenceConfig {
        let scale = (2.0 * self.half_width() * self.sup_norm()).max(1.0);
        ReferenceConfig {
            target_tol: ReferenceConfig::default().target_tol * scale,
            ..ReferenceConfig::default()
        }
    }
}

impl FromStr for BuiltinFunction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "f1" => Ok(Self::F1),
            "f2" => Ok(Self::F2),
            other => Err(format!("unknown function `{other}` (expected f1 or f2)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReferenceKind {
    /// The rule itself at `m = 512`.
    SelfReference,
    Oracle,
}

impl ReferenceKind {
    pub fn label(self) -> &'static str {
        match self {
            Self::SelfReference => "self_512",
            Self::Oracle => "oracle",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub m: usize,
    pub omega: f64,
    pub y: f64,
    pub value: f64,
    pub error: f64,
    pub reference_kind: ReferenceKind,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ConvergenceReport {
    pub rows: Vec<ConvergenceRow>,
}

/// Fixed 17-significant-digit scientific notation.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

pub const REPORT_HEADER: &str = "m,omega,y,value,error,reference_kind";

impl ConvergenceReport {
    fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            a.omega
                .total_cmp(&b.omega)
                .then(a.y.total_cmp(&b.y))
                .then(a.m.cmp(&b.m))
        });
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(REPORT_HEADER);
        out.push('\n');
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.m,
                format_float(r.omega),
                format_float(r.y),
                format_float(r.value),
                format_float(r.error),
                r.reference_kind.label()
            )
            .unwrap();
        }
        out
    }

    pub fn error_at(&self, m: usize, omega: f64, y: f64) -> Option<f64> {
        self.rows
            .iter()
            .find(|r| r.m == m && r.omega == omega && r.y == y)
            .map(|r| r.error)
    }

    /// `(m, error)` pairs for one `(omega, y)` cell, ascending in `m`.
    pub fn series(&self, omega: f64, y: f64) -> Vec<(usize, f64)> {
        self.rows
            .iter()
            .filter(|r| r.omega == omega && r.y == y)
            .map(|r| (r.m, r.error))
            .collect()
    }
}

/// Least-squares slope of `ln(error)` against `ln(m)`. Rows with zero
/// error are skipped; `None` if fewer than two remain.
pub fn loglog_slope(series: &[(usize, f64)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = series
        .iter()
        .filter(|(_, e)| *e > 0.0)
        .map(|&(m, e)| ((m as f64).ln(), e.ln()))
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    Some(sxy / sxx)
}

#[derive(Debug, Clone)]
pub struct StudyConfig {
    pub function: BuiltinFunction,
    pub kernel: KernelKind,
    pub ell: usize,
    pub degrees: Vec<usize>,
    pub omegas: Vec<f64>,
    pub points: Vec<f64>,
    pub reference: ReferenceKind,
}

impl StudyConfig {
    /// The full table for `function` with its default interval and kernel.
    pub fn table(function: BuiltinFunction) -> Self {
        Self {
            function,
            kernel: function.kernel_kind(),
            ell: DEFAULT_ELL,
            degrees: DEFAULT_DEGREES.to_vec(),
            omegas: DEFAULT_OMEGAS.to_vec(),
            points: function.default_points(),
            reference: ReferenceKind::SelfReference,
        }
    }
}

pub fn run_study(cfg: &StudyConfig) -> Result<ConvergenceReport> {
    let f = cfg.function;
    let a = f.half_width();
    let mut report = ConvergenceReport::default();
    for &omega in &cfg.omegas {
        let kernel = OscillatoryKernel::new(cfg.kernel, omega)?;
        let reference: Vec<f64> = match cfg.reference {
            ReferenceKind::SelfReference => {
                let rule = ProductRule::new(SELF_REFERENCE_DEGREE, a, cfg.ell, kernel)?;
                rule.integrate_many(&f.samples(SELF_REFERENCE_DEGREE)?, &cfg.points)?
            }
            ReferenceKind::Oracle => cfg
                .points
                .iter()
                .map(|&y| {
                    reference_integral(|x| f.eval(x), &kernel, a, y, &f.oracle_config())
                        .map(|r| r.value)
                })
                .collect::<Result<_>>()?,
        };
        for &m in &cfg.degrees {
            let rule = ProductRule::new(m, a, cfg.ell, kernel)?;
            let values = rule.integrate_many(&f.samples(m)?, &cfg.points)?;
            for ((&y, &value), &exact) in cfg.points.iter().zip(&values).zip(&reference) {
                report.rows.push(ConvergenceRow {
                    m,
                    omega,
                    y,
                    value,
                    error: (exact - value).abs(),
                    reference_kind: cfg.reference,
                });
            }
        }
    }
    report.sort();
    Ok(report)
}

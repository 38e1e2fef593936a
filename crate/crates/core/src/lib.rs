//! Product integration of highly oscillatory integrals
//!
//! ```text
//!     ∫_{-a}^{a} κ(ω(y - x)) f(x) dx,   κ ∈ {sin, cos}
//! ```
//!
//! from the values of `f` at `m + 1` equispaced nodes. `f` is replaced by
//! its generalized Bernstein polynomial (an iterated Boolean sum of the
//! classical Bernstein operator), and the oscillatory kernel is integrated
//! against each Bernstein basis polynomial by Gauss–Legendre quadrature on
//! a partition fine enough to resolve the oscillation.
//!
//! ```
//! use gbquad::{BuiltinFunction, OscillatoryKernel, ProductRule};
//!
//! let rule = ProductRule::new(32, 1.0, 16, OscillatoryKernel::sin(10.0)?)?;
//! let samples = BuiltinFunction::F1.samples(32)?;
//! let value = rule.integrate(&samples, -0.7)?;
//! assert!(value.is_finite());
//! # Ok::<(), gbquad::Error>(())
//! ```

pub mod bernstein;
pub mod error;
pub mod gauss;
pub mod matrix;
pub mod oracle;
pub mod product;
pub mod study;

pub use bernstein::{
    basis_eval, basis_eval_all, collocation_matrix, gb_eval, ln_binomial, BernsteinBasis,
    BooleanSumMatrix, EquispacedGrid, GridFunction,
};
pub use error::{Error, Result};
pub use gauss::{gl_rule, gl_rule_cached, GaussRule};
pub use matrix::Matrix;
pub use oracle::{reference_integral, reference_q, Reference, ReferenceConfig};
pub use product::{
    compute_weights, default_gauss_points, integrate, integrate_many, make_partition, moment,
    KernelKind, MomentTable, OscillatoryKernel, Partition, ProductRule, RuleWeights,
};
pub use study::{
    format_float, loglog_slope, run_study, BuiltinFunction, ConvergenceReport, ConvergenceRow,
    ReferenceKind, StudyConfig,
};

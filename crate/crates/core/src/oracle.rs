//! Independent reference integrator.
//!
//! Composite Gauss–Legendre on a refinement of the oscillation-aware
//! partition, doubled until two successive levels agree. Nodes and weights
//! come from the `gauss-quad` crate, so nothing here shares code with the
//! product rule except the Bernstein basis itself.

use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;

use crate::bernstein::basis_eval;
use crate::error::{Error, Result};
use crate::product::OscillatoryKernel;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReferenceConfig {
    /// Panels per oscillation-aware cell at the coarsest level.
    pub refinement: usize,
    pub points_per_panel: usize,
    /// Absolute agreement required between successive levels.
    pub target_tol: f64,
    pub max_doublings: usize,
}

impl Default for ReferenceConfig {
    fn default() -> Self {
        Self {
            refinement: 8,
            points_per_panel: 32,
            target_tol: 1e-13,
            max_doublings: 12,
        }
    }
}

impl ReferenceConfig {
    fn validate(&self) -> Result<()> {
        if self.refinement < 1 {
            return Err(Error::InvalidConfig("refinement must be at least 1"));
        }
        if self.points_per_panel < 2 {
            return Err(Error::InvalidConfig("points_per_panel must be at least 2"));
        }
        if !(self.target_tol > 0.0) {
            return Err(Error::InvalidConfig("target_tol must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reference {
    pub value: f64,
    /// Difference between the last two refinement levels.
    pub achieved_tol: f64,
    /// Panels used at the accepted level.
    pub panels: usize,
}

fn composite(
    rule: &GaussLegendre,
    panels: usize,
    a: f64,
    integrand: &impl Fn(f64) -> f64,
) -> f64 {
    let width = 2.0 * a / panels as f64;
    let half = 0.5 * width;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = -a + (p as f64 + 0.5) * width;
        let panel: f64 = rule
            .as_node_weight_pairs()
            .iter()
            .map(|&(z, w)| w * integrand(mid + half * z))
            .sum();
        total += half * panel;
    }
    total
}

/// Reference value of `∫_{-a}^{a} κ(ω(y - x)) f(x) dx`.
///
/// Fails with [`Error::NotConverged`] when the level-to-level difference is
/// still above `cfg.target_tol` after `cfg.max_doublings` doublings.
pub fn reference_integral(
    f: impl Fn(f64) -> f64,
    kernel: &OscillatoryKernel,
    a: f64,
    y: f64,
    cfg: &ReferenceConfig,
) -> Result<Reference> {
    cfg.validate()?;
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidHalfWidth(a));
    }
    let degree = NonZeroUsize::new(cfg.points_per_panel).expect("validated above");
    let rule = GaussLegendre::new(degree);
    let integrand = |x: f64| kernel.eval(y - x) * f(x);

    let cells = (kernel.omega() * a / PI).floor() as usize + 1;
    let mut panels = cells * cfg.refinement;
    let mut coarse = composite(&rule, panels, a, &integrand);
    let mut diff = f64::INFINITY;
    for _ in 0..cfg.max_doublings {
        panels *= 2;
        let fine = composite(&rule, panels, a, &integrand);
        diff = (fine - coarse).abs();
        if diff <= cfg.target_tol {
            return Ok(Reference {
                value: fine,
                achieved_tol: diff,
                panels,
            });
        }
        coarse = fine;
    }
    Err(Error::NotConverged {
        target: cfg.target_tol,
        achieved: diff,
    })
}

/// Reference value of the moment `q_i(y) = ∫ κ(ω(y - x)) p_{m,i}(x) dx`.
pub fn reference_q(
    i: usize,
    m: usize,
    a: f64,
    kernel: &OscillatoryKernel,
    y: f64,
    cfg: &ReferenceConfig,
) -> Result<Reference> {
    if i > m {
        return Err(Error::IndexOutOfRange { k: i, m });
    }
    basis_eval(m, a, i, 0.0)?;
    reference_integral(
        |x| basis_eval(m, a, i, x.clamp(-a, a)).expect("index and half-width checked"),
        kernel,
        a,
        y,
        cfg,
    )
}

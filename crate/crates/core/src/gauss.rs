//! Gauss–Legendre rules on `[-1, 1]`.
//!
//! Nodes come from Newton iteration on the three-term Legendre recurrence,
//! started from Tricomi's asymptotic approximation of the roots. Only the
//! positive half is computed; the negative half is mirrored, so the rule is
//! exactly symmetric.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 1024;
const MAX_NEWTON_STEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct GaussRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Strictly increasing nodes in `(-1, 1)`.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.nodes.iter().copied().zip(self.weights.iter().copied())
    }

    /// Applies the rule to `f` on `[lo, hi]`.
    pub fn integrate(&self, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> f64 {
        let half = 0.5 * (hi - lo);
        let mid = 0.5 * (hi + lo);
        half * self.iter().map(|(z, w)| w * f(mid + half * z)).sum::<f64>()
    }
}

/// `(P_n(x), P_{n-1}(x))` by the three-term recurrence.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let (mut p_prev, mut p) = (1.0, x);
    for j in 2..=n {
        let jf = j as f64;
        let next = ((2.0 * jf - 1.0) * x * p - (jf - 1.0) * p_prev) / jf;
        p_prev = p;
        p = next;
    }
    (p, p_prev)
}

/// `(P_n(x), P_n'(x))` for `|x| < 1`.
fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let (p, p_prev) = legendre_pair(n, x);
    let dp = n as f64 * (x * p - p_prev) / (x * x - 1.0);
    (p, dp)
}

/// Builds the `n`-point Gauss–Legendre rule, `1 <= n <= 1024`.
pub fn gl_rule(n: usize) -> Result<GaussRule> {
    if n == 0 || n > MAX_POINTS {
        return Err(Error::InvalidRuleSize(n));
    }
    let nf = n as f64;
    let half = n / 2;
    let mut pos_nodes = Vec::with_capacity(half);
    let mut pos_weights = Vec::with_capacity(half);
    // Root k (1-based) counted from the right end, so these are the positive roots.
    for k in 1..=half {
        let theta = PI * (k as f64 - 0.25) / (nf + 0.5);
        let mut z = (1.0 - (nf - 1.0) / (8.0 * nf * nf * nf)) * theta.cos();
        let mut converged = false;
        for _ in 0..MAX_NEWTON_STEPS {
            let (p, dp) = legendre_with_derivative(n, z);
            let dz = p / dp;
            z -= dz;
            if p.abs() <= 1e-15 || dz.abs() <= 4.0 * f64::EPSILON * z.abs() {
                converged = true;
                break;
            }
        }
        if !converged {
            return Err(Error::NewtonDivergence { n, index: k - 1 });
        }
        let (_, dp) = legendre_with_derivative(n, z);
        pos_nodes.push(z);
        pos_weights.push(2.0 / ((1.0 - z * z) * dp * dp));
    }

    let mut nodes = Vec::with_capacity(n);
    let mut weights = Vec::with_capacity(n);
    // pos_nodes is descending; its negation is ascending.
    for (&z, &w) in pos_nodes.iter().zip(&pos_weights) {
        nodes.push(-z);
        weights.push(w);
    }
    if n % 2 == 1 {
        let (_, dp) = legendre_with_derivative(n, 0.0);
        nodes.push(0.0);
        weights.push(2.0 / (dp * dp));
    }
    for (&z, &w) in pos_nodes.iter().zip(&pos_weights).rev() {
        nodes.push(z);
        weights.push(w);
    }
    Ok(GaussRule { nodes, weights })
}

/// Shared instance of [`gl_rule`] from a process-wide cache.
pub fn gl_rule_cached(n: usize) -> Result<Arc<GaussRule>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<GaussRule>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(Arc::clone(hit));
    }
    let rule = Arc::new(gl_rule(n)?);
    Ok(Arc::clone(cache.lock().unwrap().entry(n).or_insert(rule)))
}

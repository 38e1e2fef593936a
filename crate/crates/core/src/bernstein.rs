//! Bernstein basis on `[-a, a]` and the generalized Bernstein operator.
//!
//! The generalized operator of degree `m` and parameter `ell` is the
//! `ell`-fold iterated Boolean sum `f - (f - B_m f)^ell`. On the sampled
//! data it acts through the matrix `C = I + (I - A) + ... + (I - A)^(ell-1)`,
//! where `A[i][j]` is the `j`-th basis polynomial evaluated at node `t_i`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

fn check_half_width(a: f64) -> Result<()> {
    if a.is_finite() && a > 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidHalfWidth(a))
    }
}

fn check_point(a: f64, x: f64) -> Result<()> {
    if x.is_finite() && (-a..=a).contains(&x) {
        Ok(())
    } else {
        Err(Error::OutOfDomain { x, a })
    }
}

/// The `m + 1` equispaced nodes `t_k = -a + 2ak/m`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquispacedGrid {
    m: usize,
    a: f64,
    nodes: Vec<f64>,
}

impl EquispacedGrid {
    pub fn new(m: usize, a: f64) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidDegree { m, min: 1 });
        }
        check_half_width(a)?;
        // a * (2k - m) / m keeps t_{m-k} == -t_k bit for bit and pins both ends.
        let nodes = (0..=m)
            .map(|k| a * ((2 * k) as f64 - m as f64) / m as f64)
            .collect();
        Ok(Self { m, a, nodes })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn half_width(&self) -> f64 {
        self.a
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn step(&self) -> f64 {
        2.0 * self.a / self.m as f64
    }

    pub fn contains(&self, x: f64) -> bool {
        check_point(self.a, x).is_ok()
    }
}

/// Samples of a function on an [`EquispacedGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: EquispacedGrid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn new(grid: EquispacedGrid, values: Vec<f64>) -> Result<Self> {
        let expected = grid.degree() + 1;
        if values.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: values.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFiniteSample { index, value });
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at every node.
    pub fn from_fn(grid: EquispacedGrid, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = grid.nodes().iter().map(|&t| f(t)).collect();
        Self::new(grid, values)
    }

    pub fn grid(&self) -> &EquispacedGrid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// Neumaier-compensated running sum.
#[derive(Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(self) -> f64 {
        self.sum + self.carry
    }
}

/// `ln(m choose k)`, accurate to a few ulps for `m` in the thousands.
pub fn ln_binomial(m: usize, k: usize) -> f64 {
    assert!(k <= m, "k > m");
    let k = k.min(m - k);
    let mut acc = CompensatedSum::default();
    for j in 1..=k {
        acc.add(((m - k + j) as f64).ln());
        acc.add(-(j as f64).ln());
    }
    acc.value()
}

/// All `ln(m choose k)`, `k = 0..=m`.
fn ln_binomial_row(m: usize) -> Vec<f64> {
    (0..=m).map(|k| ln_binomial(m, k)).collect()
}

/// Evaluates `p_{m,k}(x) = C(m,k) ((a+x)/2a)^k ((a-x)/2a)^(m-k)` in log space.
pub fn basis_eval(m: usize, a: f64, k: usize, x: f64) -> Result<f64> {
    check_half_width(a)?;
    if k > m {
        return Err(Error::IndexOutOfRange { k, m });
    }
    check_point(a, x)?;
    if x == -a {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    if x == a {
        return Ok(if k == m { 1.0 } else { 0.0 });
    }
    let two_a = 2.0 * a;
    let ln_left = ((a + x) / two_a).ln();
    let ln_right = ((a - x) / two_a).ln();
    Ok((ln_binomial(m, k) + k as f64 * ln_left + (m - k) as f64 * ln_right).exp())
}

/// Batched basis evaluation with the log-binomial row precomputed.
#[derive(Debug, Clone)]
pub struct BernsteinBasis {
    m: usize,
    a: f64,
    ln_binom: Vec<f64>,
}

impl BernsteinBasis {
    pub fn new(m: usize, a: f64) -> Result<Self> {
        check_half_width(a)?;
        Ok(Self {
            m,
            a,
            ln_binom: ln_binomial_row(m),
        })
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn half_width(&self) -> f64 {
        self.a
    }

    pub fn eval_all(&self, x: f64) -> Result<Vec<f64>> {
        check_point(self.a, x)?;
        let mut out = vec![0.0; self.m + 1];
        self.eval_all_into(x, &mut out);
        Ok(out)
    }

    /// Single basis value `p_{m,k}(x)` for `x` already known to lie in
    /// `[-a, a]` and `k <= m`.
    pub fn eval_one(&self, k: usize, x: f64) -> f64 {
        let (a, m) = (self.a, self.m);
        if x <= -a {
            return if k == 0 { 1.0 } else { 0.0 };
        }
        if x >= a {
            return if k == m { 1.0 } else { 0.0 };
        }
        let two_a = 2.0 * a;
        let ln_left = ((a + x) / two_a).ln();
        let ln_right = ((a - x) / two_a).ln();
        (self.ln_binom[k] + k as f64 * ln_left + (m - k) as f64 * ln_right).exp()
    }

    /// Writes all `m + 1` basis values at `x` into `out`. `x` must already
    /// be known to lie in `[-a, a]`.
    pub fn eval_all_into(&self, x: f64, out: &mut [f64]) {
        debug_assert_eq!(out.len(), self.m + 1);
        let (a, m) = (self.a, self.m);
        if x <= -a || x >= a {
            out.fill(0.0);
            out[if x <= -a { 0 } else { m }] = 1.0;
            return;
        }
        let two_a = 2.0 * a;
        let ln_left = ((a + x) / two_a).ln();
        let ln_right = ((a - x) / two_a).ln();
        for (k, (o, &lb)) in out.iter_mut().zip(&self.ln_binom).enumerate() {
            *o = (lb + k as f64 * ln_left + (m - k) as f64 * ln_right).exp();
        }
    }
}

pub fn basis_eval_all(m: usize, a: f64, x: f64) -> Result<Vec<f64>> {
    BernsteinBasis::new(m, a)?.eval_all(x)
}

/// The collocation matrix `A[i][j] = p_{m,j}(t_i)`; row-stochastic.
pub fn collocation_matrix(m: usize, a: f64) -> Result<Matrix> {
    let grid = EquispacedGrid::new(m, a)?;
    let basis = BernsteinBasis::new(m, a)?;
    let rows = grid
        .nodes()
        .iter()
        .map(|&t| {
            let mut row = vec![0.0; m + 1];
            basis.eval_all_into(t, &mut row);
            row
        })
        .collect();
    Ok(Matrix::from_rows(rows))
}

/// The matrix `C_{m,ell}` mixing Bernstein coefficients into the
/// generalized Bernstein basis.
#[derive(Debug, Clone)]
pub struct BooleanSumMatrix {
    m: usize,
    a: f64,
    ell: usize,
    entries: Matrix,
}

type CacheKey = (usize, u64, usize);

fn cache() -> &'static Mutex<HashMap<CacheKey, Arc<BooleanSumMatrix>>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Arc<BooleanSumMatrix>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

impl BooleanSumMatrix {
    /// Builds `C_{m,ell}`. Powers of two use the doubling recurrence
    /// `C_{2L} = C_L + (I - A)^L C_L`; other values use Horner's scheme
    /// `C <- I + (I - A) C`.
    pub fn new(m: usize, a: f64, ell: usize) -> Result<Self> {
        if ell == 0 {
            return Err(Error::InvalidIteration);
        }
        let a_mat = collocation_matrix(m, a)?;
        let n = m + 1;
        let identity = Matrix::identity(n);
        let entries = if ell == 1 {
            identity
        } else {
            let defect = identity.sub(&a_mat);
            if ell.is_power_of_two() {
                let mut c = identity;
                let mut power = defect;
                let mut level = 1;
                loop {
                    c = c.add(&power.mul(&c));
                    level *= 2;
                    if level == ell {
                        break c;
                    }
                    power = power.mul(&power);
                }
            } else {
                let mut c = identity.clone();
                for _ in 1..ell {
                    c = identity.add(&defect.mul(&c));
                }
                c
            }
        };
        Ok(Self { m, a, ell, entries })
    }

    /// Shared instance from a process-wide cache keyed on `(m, a, ell)`.
    pub fn cached(m: usize, a: f64, ell: usize) -> Result<Arc<Self>> {
        let key = (m, a.to_bits(), ell);
        if let Some(hit) = cache().lock().unwrap().get(&key) {
            return Ok(Arc::clone(hit));
        }
        let built = Arc::new(Self::new(m, a, ell)?);
        Ok(Arc::clone(
            cache().lock().unwrap().entry(key).or_insert(built),
        ))
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn half_width(&self) -> f64 {
        self.a
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn entries(&self) -> &Matrix {
        &self.entries
    }

    /// `C * values`: the Bernstein coefficients of the generalized
    /// Bernstein polynomial of the samples.
    pub fn coefficients(&self, fs: &GridFunction) -> Result<Vec<f64>> {
        self.check_grid(fs)?;
        Ok(self.entries.mul_vec(fs.values()))
    }

    fn check_grid(&self, fs: &GridFunction) -> Result<()> {
        if fs.grid().degree() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m + 1,
                actual: fs.values().len(),
            });
        }
        if fs.grid().half_width() != self.a {
            return Err(Error::InvalidHalfWidth(fs.grid().half_width()));
        }
        Ok(())
    }
}

/// Evaluates the generalized Bernstein polynomial of `fs` at `x`.
pub fn gb_eval(c: &BooleanSumMatrix, fs: &GridFunction, x: f64) -> Result<f64> {
    let coeffs = c.coefficients(fs)?;
    let basis = BernsteinBasis::new(c.m, c.a)?.eval_all(x)?;
    Ok(basis.iter().zip(&coeffs).map(|(p, d)| p * d).sum())
}

//! Product integration rule for `∫_{-a}^{a} κ(ω(y - x)) f(x) dx`.
//!
//! `f` is replaced by its generalized Bernstein polynomial, so the rule is
//! `Σ_j f(t_j) w_j(y)` with `w_j = Σ_i c_{ij} q_i(y)`. The moments
//! `q_i(y) = ∫ κ(ω(y - x)) p_{m,i}(x) dx` carry all of the oscillation; they
//! are computed with an `n`-point Gauss–Legendre rule on each cell of a
//! partition of `[-a, a]` into `N = ⌊ωa/π⌋ + 1` equal cells.

use std::sync::Arc;

use crate::bernstein::{BernsteinBasis, BooleanSumMatrix, EquispacedGrid, GridFunction};
use crate::error::{Error, Result};
use crate::gauss::{gl_rule_cached, GaussRule};

/// Gauss points per leaf of the moment summation tree.
const LEAF_POINTS: usize = 32;
/// Subtrees at least this large are split across threads.
const PAR_POINTS: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KernelKind {
    Sin,
    Cos,
}

/// `κ(ω·s)` with `κ ∈ {sin, cos}` and `ω ≥ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillatoryKernel {
    kind: KernelKind,
    omega: f64,
}

impl OscillatoryKernel {
    pub fn new(kind: KernelKind, omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega >= 0.0) {
            return Err(Error::InvalidFrequency(omega));
        }
        Ok(Self { kind, omega })
    }

    pub fn sin(omega: f64) -> Result<Self> {
        Self::new(KernelKind::Sin, omega)
    }

    pub fn cos(omega: f64) -> Result<Self> {
        Self::new(KernelKind::Cos, omega)
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `κ(ω·s)`.
    #[inline]
    pub fn eval(&self, s: f64) -> f64 {
        let arg = self.omega * s;
        match self.kind {
            KernelKind::Sin => arg.sin(),
            KernelKind::Cos => arg.cos(),
        }
    }
}

/// Equal cells `[x_{h-1}, x_h]` of `[-a, a]`, `h = 1..=N`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    cells: usize,
    a: f64,
    eta: f64,
    breakpoints: Vec<f64>,
}

/// Builds the partition with `N = ⌊ωa/π⌋ + 1` cells.
pub fn make_partition(a: f64, kernel: &OscillatoryKernel) -> Result<Partition> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::InvalidHalfWidth(a));
    }
    let cells = (kernel.omega() * a / std::f64::consts::PI).floor() as usize + 1;
    let eta = 2.0 * a / cells as f64;
    let breakpoints = (0..=cells)
        .map(|h| a * ((2 * h) as f64 - cells as f64) / cells as f64)
        .collect();
    Ok(Partition {
        cells,
        a,
        eta,
        breakpoints,
    })
}

impl Partition {
    pub fn cells(&self) -> usize {
        self.cells
    }

    pub fn half_width(&self) -> f64 {
        self.a
    }

    pub fn cell_width(&self) -> f64 {
        self.eta
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Maps `z ∈ [-1, 1]` onto cell `h` (0-based).
    ///
    /// Written about the cell midpoint so that mirrored `(h, z)` pairs land on
    /// exactly mirrored points.
    #[inline]
    pub fn to_cell(&self, h: usize, z: f64) -> f64 {
        let mid = self.a * ((2 * h + 1) as f64 - self.cells as f64) / self.cells as f64;
        mid + 0.5 * self.eta * z
    }

    /// Inverse of [`Partition::to_cell`].
    pub fn from_cell(&self, h: usize, x: f64) -> f64 {
        2.0 * (x - self.breakpoints[h]) / self.eta - 1.0
    }
}

/// Sums contributions of points `lo..hi` into `width` accumulators.
///
/// The tree shape depends only on `(lo, hi)`: leaves of at most
/// `LEAF_POINTS` points accumulate in index order and siblings are added
/// left + right. Thread scheduling therefore never changes the result.
fn tree_sum<F>(lo: usize, hi: usize, width: usize, leaf: &F) -> Vec<f64>
where
    F: Fn(usize, usize, &mut [f64]) + Sync,
{
    let len = hi - lo;
    if len <= LEAF_POINTS {
        let mut acc = vec![0.0; width];
        leaf(lo, hi, &mut acc);
        return acc;
    }
    let mid = lo + len / 2;
    let (mut left, right) = if len >= PAR_POINTS {
        rayon::join(
            || tree_sum(lo, mid, width, leaf),
            || tree_sum(mid, hi, width, leaf),
        )
    } else {
        (tree_sum(lo, mid, width, leaf), tree_sum(mid, hi, width, leaf))
    };
    for (l, r) in left.iter_mut().zip(&right) {
        *l += r;
    }
    left
}

fn check_y(a: f64, y: f64) -> Result<()> {
    if y.is_finite() && (-a..=a).contains(&y) {
        Ok(())
    } else {
        Err(Error::OutOfDomain { x: y, a })
    }
}

/// Moments `q_i(y)`, `i = 0..=m`, for one evaluation point.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentTable {
    pub y: f64,
    pub kernel: OscillatoryKernel,
    pub m: usize,
    pub q: Vec<f64>,
}

/// Per-sample weights `w_j(y)`; the rule value is `Σ_j w_j f(t_j)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleWeights {
    pub y: f64,
    pub kernel: OscillatoryKernel,
    pub m: usize,
    pub ell: usize,
    pub w: Vec<f64>,
}

impl RuleWeights {
    /// `Σ_j w_j f(t_j)`, summed in ascending `j`.
    pub fn apply(&self, fs: &GridFunction) -> Result<f64> {
        if fs.values().len() != self.w.len() {
            return Err(Error::DimensionMismatch {
                expected: self.w.len(),
                actual: fs.values().len(),
            });
        }
        Ok(dot(&self.w, fs.values()))
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).fold(0.0, |acc, (x, y)| acc + x * y)
}

/// Moment engine shared by [`moment`] and [`ProductRule`].
struct MomentSum<'a> {
    basis: &'a BernsteinBasis,
    part: &'a Partition,
    gauss: &'a GaussRule,
    kernel: OscillatoryKernel,
    y: f64,
}

impl MomentSum<'_> {
    fn points(&self) -> usize {
        self.part.cells() * self.gauss.len()
    }

    fn scale(&self) -> f64 {
        self.part.half_width() / self.part.cells() as f64
    }

    #[inline]
    fn point(&self, p: usize) -> (f64, f64) {
        let n = self.gauss.len();
        let (h, k) = (p / n, p % n);
        let x = self.part.to_cell(h, self.gauss.nodes()[k]);
        let factor = self.gauss.weights()[k] * self.kernel.eval(self.y - x);
        (x, factor)
    }

    fn all(&self) -> Vec<f64> {
        let width = self.basis.degree() + 1;
        let leaf = |lo: usize, hi: usize, acc: &mut [f64]| {
            let mut values = vec![0.0; width];
            for p in lo..hi {
                let (x, factor) = self.point(p);
                self.basis.eval_all_into(x, &mut values);
                for (q, v) in acc.iter_mut().zip(&values) {
                    *q += factor * v;
                }
            }
        };
        let scale = self.scale();
        let mut q = tree_sum(0, self.points(), width, &leaf);
        q.iter_mut().for_each(|v| *v *= scale);
        q
    }

    fn one(&self, i: usize) -> f64 {
        let leaf = |lo: usize, hi: usize, acc: &mut [f64]| {
            for p in lo..hi {
                let (x, factor) = self.point(p);
                acc[0] += factor * self.basis.eval_one(i, x);
            }
        };
        tree_sum(0, self.points(), 1, &leaf)[0] * self.scale()
    }
}

/// Single moment `q_i(y)` by partitioned Gauss–Legendre quadrature.
pub fn moment(
    i: usize,
    y: f64,
    kernel: &OscillatoryKernel,
    part: &Partition,
    m: usize,
    gl: &GaussRule,
) -> Result<f64> {
    if i > m {
        return Err(Error::IndexOutOfRange { k: i, m });
    }
    check_y(part.half_width(), y)?;
    let basis = BernsteinBasis::new(m, part.half_width())?;
    Ok(MomentSum {
        basis: &basis,
        part,
        gauss: gl,
        kernel: *kernel,
        y,
    }
    .one(i))
}

/// Default Gauss points per cell for degree `m`.
pub fn default_gauss_points(m: usize) -> usize {
    m.max(2)
}

/// A fully assembled rule for fixed `(m, a, ell, κ, ω)`, reusable across
/// evaluation points and sample vectors.
#[derive(Debug, Clone)]
pub struct ProductRule {
    grid: EquispacedGrid,
    basis: BernsteinBasis,
    boolean_sum: Arc<BooleanSumMatrix>,
    kernel: OscillatoryKernel,
    partition: Partition,
    gauss: Arc<GaussRule>,
}

impl ProductRule {
    pub fn new(m: usize, a: f64, ell: usize, kernel: OscillatoryKernel) -> Result<Self> {
        Self::with_gauss_points(m, a, ell, kernel, default_gauss_points(m))
    }

    pub fn with_gauss_points(
        m: usize,
        a: f64,
        ell: usize,
        kernel: OscillatoryKernel,
        gauss_points: usize,
    ) -> Result<Self> {
        let grid = EquispacedGrid::new(m, a)?;
        Ok(Self {
            basis: BernsteinBasis::new(m, a)?,
            boolean_sum: BooleanSumMatrix::cached(m, a, ell)?,
            partition: make_partition(a, &kernel)?,
            gauss: gl_rule_cached(gauss_points)?,
            grid,
            kernel,
        })
    }

    pub fn grid(&self) -> &EquispacedGrid {
        &self.grid
    }

    pub fn kernel(&self) -> &OscillatoryKernel {
        &self.kernel
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn gauss(&self) -> &GaussRule {
        &self.gauss
    }

    pub fn boolean_sum(&self) -> &BooleanSumMatrix {
        &self.boolean_sum
    }

    pub fn moments(&self, y: f64) -> Result<MomentTable> {
        check_y(self.grid.half_width(), y)?;
        let q = MomentSum {
            basis: &self.basis,
            part: &self.partition,
            gauss: &self.gauss,
            kernel: self.kernel,
            y,
        }
        .all();
        Ok(MomentTable {
            y,
            kernel: self.kernel,
            m: self.grid.degree(),
            q,
        })
    }

    /// `w_j = Σ_i c_{ij} q_i`, contracted over `i` in ascending order.
    pub fn weights_from_moments(&self, moments: &MomentTable) -> RuleWeights {
        RuleWeights {
            y: moments.y,
            kernel: self.kernel,
            m: self.grid.degree(),
            ell: self.boolean_sum.ell(),
            w: self.boolean_sum.entries().vec_mul(&moments.q),
        }
    }

    pub fn weights(&self, y: f64) -> Result<RuleWeights> {
        Ok(self.weights_from_moments(&self.moments(y)?))
    }

    pub fn integrate(&self, fs: &GridFunction, y: f64) -> Result<f64> {
        self.check_samples(fs)?;
        self.weights(y)?.apply(fs)
    }

    pub fn integrate_many(&self, fs: &GridFunction, ys: &[f64]) -> Result<Vec<f64>> {
        self.check_samples(fs)?;
        ys.iter().map(|&y| self.weights(y)?.apply(fs)).collect()
    }

    fn check_samples(&self, fs: &GridFunction) -> Result<()> {
        if fs.grid().degree() != self.grid.degree() {
            return Err(Error::DimensionMismatch {
                expected: self.grid.degree() + 1,
                actual: fs.values().len(),
            });
        }
        if fs.grid().half_width() != self.grid.half_width() {
            return Err(Error::InvalidHalfWidth(fs.grid().half_width()));
        }
        Ok(())
    }
}

pub fn compute_weights(
    m: usize,
    a: f64,
    ell: usize,
    kernel: OscillatoryKernel,
    y: f64,
) -> Result<RuleWeights> {
    ProductRule::new(m, a, ell, kernel)?.weights(y)
}

pub fn integrate(fs: &GridFunction, kernel: OscillatoryKernel, ell: usize, y: f64) -> Result<f64> {
    let g = fs.grid();
    ProductRule::new(g.degree(), g.half_width(), ell, kernel)?.integrate(fs, y)
}

pub fn integrate_many(
    fs: &GridFunction,
    kernel: OscillatoryKernel,
    ell: usize,
    ys: &[f64],
) -> Result<Vec<f64>> {
    let g = fs.grid();
    ProductRule::new(g.degree(), g.half_width(), ell, kernel)?.integrate_many(fs, ys)
}

//! Power iteration and the transforms that make an operator stochastic,
//! irreducible and aperiodic.
//!
//! Operators act on row vectors: `apply(x)` computes `x·Op`. Smoothed
//! operators are never materialized; the uniform part is applied as a
//! rank-one correction on top of the sparse product.

use std::io::Write;

use crate::error::{Error, Result};
use crate::sparse::CsrMatrix;

/// A square linear map applied to row vectors.
pub trait LinearOperator {
    fn dim(&self) -> usize;

    /// `out = x·Op`. `out` is fully overwritten.
    fn apply(&self, x: &[f64], out: &mut [f64]);
}

impl LinearOperator for CsrMatrix {
    fn dim(&self) -> usize {
        self.n_rows()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.vec_mul(x, out)
    }
}

impl<T: LinearOperator + ?Sized> LinearOperator for &T {
    fn dim(&self) -> usize {
        (**self).dim()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        (**self).apply(x, out)
    }
}

/// Materialize an operator densely: row `i` is `e_i·Op`. Only for small
/// dimensions (tests, diagnostics).
pub fn to_dense(op: &impl LinearOperator) -> Vec<Vec<f64>> {
    let n = op.dim();
    let mut unit = vec![0.0; n];
    (0..n)
        .map(|i| {
            unit[i] = 1.0;
            let mut row = vec![0.0; n];
            op.apply(&unit, &mut row);
            unit[i] = 0.0;
            row
        })
        .collect()
}

/// Row-stochastic matrix stored as its normalized nonzero rows plus the list
/// of rows that were zero and stand for the uniform row `(1/N)·eᵀ`.
#[derive(Debug, Clone)]
pub struct StochasticMatrix {
    normalized: CsrMatrix,
    dangling: Vec<usize>,
}

impl StochasticMatrix {
    pub fn normalized(&self) -> &CsrMatrix {
        &self.normalized
    }

    /// Indices of rows replaced by the uniform row.
    pub fn dangling(&self) -> &[usize] {
        &self.dangling
    }
}

impl LinearOperator for StochasticMatrix {
    fn dim(&self) -> usize {
        self.normalized.n_rows()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.normalized.vec_mul(x, out);
        if !self.dangling.is_empty() {
            let mass: f64 = self.dangling.iter().map(|&i| x[i]).sum();
            let share = mass / self.dim() as f64;
            out.iter_mut().for_each(|o| *o += share);
        }
    }
}

/// Divide every row by its sum; rows summing to zero become uniform.
pub fn stochasticize(matrix: &CsrMatrix) -> Result<StochasticMatrix> {
    if matrix.n_rows() != matrix.n_cols() {
        return Err(Error::DimensionMismatch { expected: matrix.n_rows(), actual: matrix.n_cols() });
    }
    matrix.check_nonnegative()?;
    let sums = matrix.row_sums();
    let dangling = sums.iter().enumerate().filter(|(_, s)| **s <= 0.0).map(|(i, _)| i).collect();
    let inv: Vec<f64> = sums.iter().map(|&s| if s > 0.0 { 1.0 / s } else { 0.0 }).collect();
    Ok(StochasticMatrix { normalized: matrix.scale_rows(&inv), dangling })
}

/// `zeta·Op + ((1 − zeta)/N)·eeᵀ`.
#[derive(Debug, Clone)]
pub struct Smoothed<O> {
    inner: O,
    zeta: f64,
}

impl<O: LinearOperator> Smoothed<O> {
    /// Smooth an arbitrary nonnegative operator. HITS uses this on its
    /// non-stochastic authority and hub operators.
    pub fn new(inner: O, zeta: f64) -> Result<Self> {
        if !(zeta > 0.0 && zeta < 1.0) {
            return Err(Error::Config(format!("zeta must lie in (0, 1), got {zeta}")));
        }
        Ok(Smoothed { inner, zeta })
    }

    pub fn inner(&self) -> &O {
        &self.inner
    }

    pub fn zeta(&self) -> f64 {
        self.zeta
    }
}

impl<O: LinearOperator> LinearOperator for Smoothed<O> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn apply(&self, x: &[f64], out: &mut [f64]) {
        self.inner.apply(x, out);
        let n = self.dim() as f64;
        let teleport = (1.0 - self.zeta) / n * x.iter().sum::<f64>();
        out.iter_mut().for_each(|o| *o = self.zeta * *o + teleport);
    }
}

/// Make a stochastic matrix positive, hence irreducible and aperiodic.
pub fn smooth(matrix: StochasticMatrix, zeta: f64) -> Result<Smoothed<StochasticMatrix>> {
    Smoothed::new(matrix, zeta)
}

/// Residual after each iteration.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConvergenceTrace {
    pub residuals: Vec<f64>,
}

impl ConvergenceTrace {
    /// Two-column plot data: `iteration<TAB>residual`, one row per iteration.
    pub fn write_plot_data(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "iteration\tresidual")?;
        for (k, r) in self.residuals.iter().enumerate() {
            writeln!(out, "{}\t{:e}", k + 1, r)?;
        }
        Ok(())
    }

    pub fn last(&self) -> Option<f64> {
        self.residuals.last().copied()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankResult {
    pub scores: Vec<f64>,
    pub iterations: usize,
    pub trace: ConvergenceTrace,
    pub converged: bool,
}

impl RankResult {
    pub fn final_residual(&self) -> Option<f64> {
        self.trace.last()
    }
}

pub fn uniform(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Iterate `x ← normalize(x·Op)` until the 1-norm distance between
/// successive iterates drops to `tolerance` or `max_iterations` is reached.
///
/// Running out of iterations is not an error; the result reports
/// `converged == false`.
pub fn power_iterate(
    op: &impl LinearOperator,
    start: &[f64],
    tolerance: f64,
    max_iterations: usize,
    normalize_each_step: bool,
) -> Result<RankResult> {
    let n = op.dim();
    if start.len() != n {
        return Err(Error::DimensionMismatch { expected: n, actual: start.len() });
    }
    if n == 0 {
        return Err(Error::EmptyNetwork);
    }
    if start.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(Error::InvalidArgument("start vector must be nonnegative".into()));
    }
    let total: f64 = start.iter().sum();
    if total <= 0.0 {
        return Err(Error::ZeroVector);
    }

    let mut x: Vec<f64> = start.iter().map(|v| v / total).collect();
    let mut next = vec![0.0; n];
    let mut trace = ConvergenceTrace::default();
    let mut converged = false;

    for iteration in 1..=max_iterations {
        op.apply(&x, &mut next);
        if normalize_each_step {
            let norm: f64 = next.iter().map(|v| v.abs()).sum();
            if !norm.is_finite() {
                return Err(Error::NonFinite { iteration });
            }
            if norm == 0.0 {
                return Err(Error::ZeroVector);
            }
            next.iter_mut().for_each(|v| *v /= norm);
        }
        if next.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite { iteration });
        }
        let residual: f64 = x.iter().zip(&next).map(|(a, b)| (a - b).abs()).sum();
        trace.residuals.push(residual);
        std::mem::swap(&mut x, &mut next);
        if residual <= tolerance {
            converged = true;
            break;
        }
    }

    Ok(RankResult { iterations: trace.residuals.len(), scores: x, trace, converged })
}

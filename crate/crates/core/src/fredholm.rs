//! Nyström discretization of K_s on (−s, s) and the deformed determinant
//! det(I − γK_s) = Π (1 − γλ_i).
//!
//! For α = β = 0 the kernel is entire and a single Gauss–Legendre rule on
//! (−s, s) converges spectrally. Otherwise K(x, y) = |x|^α |y|^α K̃(x, y) with
//! K̃ smooth on each closed half-line but jumping across 0 (the χ factor), so
//! the interval is split at the origin and each half gets a Gauss–Jacobi rule
//! for the weight |x|^{2α}. The matrix is then √W_i K̃(x_i, x_j) √W_j.

use nalgebra::DMatrix;
use serde::Serialize;

use crate::kernel::{ChgKernel, KernelParams, ReducedAmplitude};
use crate::par::map_indexed;
use crate::quadrature::{gauss_jacobi, gauss_legendre};
use crate::{Error, Result};

pub const MIN_NODES: usize = 8;
pub const MAX_NODES: usize = 8192;

/// Nodes and weights on (−s, s).
///
/// `weights` belong to the weight function |x|^`exponent`; for a plain
/// Legendre grid the exponent is 0 and the weights sum to 2s.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureGrid {
    pub s: f64,
    pub n: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub exponent: f64,
}

fn check_size(n: usize) -> Result<()> {
    if n < MIN_NODES || n > MAX_NODES || n % 2 != 0 {
        return Err(Error::SizeLimit {
            n,
            min: MIN_NODES,
            max: MAX_NODES,
        });
    }
    Ok(())
}

fn check_s(s: f64) -> Result<()> {
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "half-gap length must be positive and finite",
        });
    }
    Ok(())
}

impl QuadratureGrid {
    /// Gauss–Legendre rule mapped to (−s, s).
    pub fn legendre(s: f64, n: usize) -> Result<Self> {
        check_s(s)?;
        check_size(n)?;
        let rule = gauss_legendre(n)?;
        Ok(QuadratureGrid {
            s,
            n,
            nodes: rule.iter().map(|p| s * p.x).collect(),
            weights: rule.iter().map(|p| s * p.weight).collect(),
            exponent: 0.0,
        })
    }

    /// Gauss–Jacobi rules for |x|^exponent on (−s, 0) and (0, s), n/2 nodes each.
    pub fn split_jacobi(s: f64, n: usize, exponent: f64) -> Result<Self> {
        check_s(s)?;
        check_size(n)?;
        let rule = gauss_jacobi(n / 2, 0.0, exponent)?;
        let half = 0.5 * s;
        let scale = half.powf(exponent + 1.0);
        let mut nodes = Vec::with_capacity(n);
        let mut weights = Vec::with_capacity(n);
        for p in rule.iter().rev() {
            nodes.push(-half * p.one_plus_x);
            weights.push(scale * p.weight);
        }
        for p in &rule {
            nodes.push(half * p.one_plus_x);
            weights.push(scale * p.weight);
        }
        Ok(QuadratureGrid {
            s,
            n,
            nodes,
            weights,
            exponent,
        })
    }

    /// Legendre for α = β = 0, otherwise split Jacobi with exponent 2α.
    pub fn for_params(params: &KernelParams, s: f64, n: usize) -> Result<Self> {
        if params.alpha == 0.0 && params.b == 0.0 {
            Self::legendre(s, n)
        } else {
            Self::split_jacobi(s, n, 2.0 * params.alpha)
        }
    }
}

/// The symmetric matrix √W_i K̃(x_i, x_j) √W_j.
#[derive(Debug, Clone)]
pub struct DiscretizedOperator {
    pub grid: QuadratureGrid,
    pub matrix: DMatrix<f64>,
}

/// Default starting node count for half-gap s: about 12 nodes per wavelength.
pub fn initial_nodes(s: f64) -> usize {
    let n = (8.0 * s).ceil().max(64.0) as usize;
    n + n % 2
}

/// Discretize K_s with the grid chosen by [`QuadratureGrid::for_params`].
pub fn build_operator(params: &KernelParams, s: f64, n: usize) -> Result<DiscretizedOperator> {
    let grid = QuadratureGrid::for_params(params, s, n)?;
    build_operator_on(params, grid)
}

/// Discretize K_s on a given grid.
pub fn build_operator_on(params: &KernelParams, grid: QuadratureGrid) -> Result<DiscretizedOperator> {
    let kernel = ChgKernel::new(*params)?;
    let n = grid.n;
    let amps: Vec<ReducedAmplitude> = map_indexed(n, |i| kernel.reduced_amplitude(grid.nodes[i]))
        .into_iter()
        .collect::<Result<_>>()?;
    // The grid weight carries |x|^exponent; the rest of |x|^{2α} goes here.
    let extra = 2.0 * params.alpha - grid.exponent;
    let scale: Vec<f64> = (0..n)
        .map(|i| (grid.weights[i] * grid.nodes[i].abs().powf(extra)).sqrt())
        .collect();
    let rows: Vec<Vec<f64>> = map_indexed(n, |i| {
        (i..n)
            .map(|j| {
                let k = if i == j {
                    kernel.reduced_diag(&amps[i])
                } else {
                    kernel.reduced_from_amplitudes(&amps[i], &amps[j])?
                };
                Ok(scale[i] * k * scale[j])
            })
            .collect::<Result<Vec<f64>>>()
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut matrix = DMatrix::zeros(n, n);
    for (i, row) in rows.iter().enumerate() {
        for (offset, &v) in row.iter().enumerate() {
            matrix[(i, i + offset)] = v;
            matrix[(i + offset, i)] = v;
        }
    }
    Ok(DiscretizedOperator { grid, matrix })
}

fn check_gamma(gamma: f64) -> Result<()> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "must satisfy 0 <= gamma < 1",
        });
    }
    Ok(())
}

impl DiscretizedOperator {
    pub fn trace(&self) -> f64 {
        self.matrix.trace()
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> Result<Vec<f64>> {
        let ev = self.matrix.clone().symmetric_eigenvalues();
        let mut ev: Vec<f64> = ev.iter().copied().collect();
        if ev.iter().any(|v| !v.is_finite()) {
            return Err(Error::Eigen("non-finite eigenvalue".into()));
        }
        ev.sort_by(|a, b| b.total_cmp(a));
        Ok(ev)
    }

    /// ln det(I − γM) = Σ ln(1 − γλ_i).
    pub fn log_det(&self, gamma: f64) -> Result<f64> {
        check_gamma(gamma)?;
        if gamma == 0.0 {
            return Ok(0.0);
        }
        log_det_from_eigenvalues(&self.eigenvalues()?, gamma)
    }

    /// ln det(I − γM) from an LU factorization; the cross-check path.
    pub fn log_det_lu(&self, gamma: f64) -> Result<f64> {
        check_gamma(gamma)?;
        let n = self.grid.n;
        let a = DMatrix::<f64>::identity(n, n) - &self.matrix * gamma;
        log_det_lu_matrix(a)
    }
}

/// Σ ln(1 − γλ_i), failing if any factor is not positive.
pub fn log_det_from_eigenvalues(eigenvalues: &[f64], gamma: f64) -> Result<f64> {
    let mut acc = 0.0;
    for &lambda in eigenvalues {
        let f = 1.0 - gamma * lambda;
        if !(f > 0.0) {
            return Err(Error::NonPositiveFactor {
                eigenvalue: lambda,
                value: f,
            });
        }
        acc += (-gamma * lambda).ln_1p();
    }
    Ok(acc)
}

pub(crate) fn log_det_lu_matrix(a: DMatrix<f64>) -> Result<f64> {
    let lu = a.lu();
    let sign = lu.p().determinant::<f64>();
    let u = lu.u();
    let mut acc = 0.0;
    let mut negatives = 0usize;
    for i in 0..u.nrows() {
        let d = u[(i, i)];
        if d == 0.0 {
            return Err(Error::NonPositiveFactor {
                eigenvalue: f64::NAN,
                value: 0.0,
            });
        }
        if d < 0.0 {
            negatives += 1;
        }
        acc += d.abs().ln();
    }
    let det_sign = if negatives % 2 == 0 { sign } else { -sign };
    if det_sign < 0.0 {
        return Err(Error::NonPositiveFactor {
            eigenvalue: f64::NAN,
            value: -1.0,
        });
    }
    Ok(acc)
}

/// ln det(I − γM) (free-function form of [`DiscretizedOperator::log_det`]).
pub fn log_det(op: &DiscretizedOperator, gamma: f64) -> Result<f64> {
    op.log_det(gamma)
}

/// Eigenvalues of the discretized operator, descending.
pub fn eigenvalues(op: &DiscretizedOperator) -> Result<Vec<f64>> {
    op.eigenvalues()
}

/// ln det(I − γK_s) at a fixed node count.
pub fn log_det_at(params: &KernelParams, s: f64, gamma: f64, n: usize) -> Result<f64> {
    check_gamma(gamma)?;
    if gamma == 0.0 {
        return Ok(0.0);
    }
    build_operator(params, s, n)?.log_det(gamma)
}

/// Result of a node-doubling sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Converged {
    pub value: f64,
    pub n_used: usize,
    /// |last value − previous value|.
    pub est_err: f64,
}

/// Doubles n from [`initial_nodes`] until successive log-determinants differ by < tol.
pub fn log_det_converged(params: &KernelParams, s: f64, gamma: f64, tol: f64) -> Result<Converged> {
    log_det_converged_from(params, s, gamma, tol, initial_nodes(s))
}

/// As [`log_det_converged`] with an explicit starting node count.
pub fn log_det_converged_from(
    params: &KernelParams,
    s: f64,
    gamma: f64,
    tol: f64,
    n_start: usize,
) -> Result<Converged> {
    params.validate()?;
    check_gamma(gamma)?;
    check_s(s)?;
    check_size(n_start)?;
    if !(tol >= 1e-12) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must be at least 1e-12",
        });
    }
    if gamma == 0.0 {
        return Ok(Converged {
            value: 0.0,
            n_used: n_start,
            est_err: 0.0,
        });
    }
    let mut n = n_start;
    let mut prev = log_det_at(params, s, gamma, n)?;
    loop {
        let next_n = 2 * n;
        if next_n > MAX_NODES {
            return Err(Error::NonConvergence {
                what: "log_det_converged",
                detail: format!("still changing at n = {n} (s = {s}, tol = {tol:e})"),
            });
        }
        let value = log_det_at(params, s, gamma, next_n)?;
        let diff = (value - prev).abs();
        if diff < tol {
            return Ok(Converged {
                value,
                n_used: next_n,
                est_err: diff,
            });
        }
        prev = value;
        n = next_n;
    }
}

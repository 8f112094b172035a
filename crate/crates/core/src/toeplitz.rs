//! Fisher–Hartwig Toeplitz determinants and their scaling limit.
//!
//! The symbol on the unit circle is
//!
//! ```text
//! w(e^{iθ}) = |e^{iθ} − 1|^{2α} · e^{−b(θ−π)} · f(θ),   f = 1 − γ on |θ| < t (mod 2π), 1 elsewhere,
//! ```
//!
//! and `D_n(t)` is the determinant of the n×n matrix `[c_{k−j}]`. The ratio
//! `D_n(2s/n) / D_n(0)` tends to `det(I − γK_s)` as n → ∞.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::kernel::KernelParams;
use crate::par::map_indexed;
use crate::quadrature::{gauss_jacobi, gauss_legendre};
use crate::{Error, Result};

pub const MAX_ORDER: usize = 1024;

/// Node-count multiplier at which coefficient refinement gives up.
const MAX_REFINE: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymbolSpec {
    pub alpha: f64,
    #[serde(rename = "beta_im")]
    pub b: f64,
    pub gamma: f64,
    /// Half-width of the thinned arc around θ = 0.
    pub arc_t: f64,
}

impl SymbolSpec {
    pub fn new(params: &KernelParams, arc_t: f64) -> Result<Self> {
        let sym = Self {
            alpha: params.alpha,
            b: params.b,
            gamma: params.gamma,
            arc_t,
        };
        sym.validate()?;
        Ok(sym)
    }

    pub fn validate(&self) -> Result<()> {
        KernelParams::new(self.alpha, self.b, self.gamma)?;
        if !(0.0..PI).contains(&self.arc_t) {
            return Err(Error::InvalidParameter {
                name: "arc_t",
                value: self.arc_t,
                reason: "must satisfy 0 <= t < pi",
            });
        }
        Ok(())
    }

    /// w(e^{iθ}) for θ in (0, 2π).
    pub fn weight(&self, theta: f64) -> f64 {
        let root = (2.0 * (0.5 * theta).sin()).abs().powf(2.0 * self.alpha);
        let jump = (-self.b * (theta - PI)).exp();
        let thin = if theta < self.arc_t || theta > 2.0 * PI - self.arc_t {
            1.0 - self.gamma
        } else {
            1.0
        };
        root * jump * thin
    }
}

/// Fourier coefficients c_{−(n−1)} … c_{n−1} of a symbol.
#[derive(Debug, Clone, PartialEq)]
pub struct SymbolCoeffs {
    pub n: usize,
    pub coeffs: Vec<Complex64>,
}

impl SymbolCoeffs {
    /// Builds from c_0 … c_{n−1}, filling negative indices by conjugation.
    pub fn from_nonnegative(c: &[Complex64]) -> Self {
        let n = c.len();
        let mut coeffs: Vec<Complex64> = c[1..].iter().rev().map(|z| z.conj()).collect();
        coeffs.extend_from_slice(c);
        Self { n, coeffs }
    }

    /// c_k for |k| < n.
    pub fn get(&self, k: isize) -> Complex64 {
        self.coeffs[(k + self.n as isize - 1) as usize]
    }

    /// max_k |c_{−k} − conj(c_k)|.
    pub fn hermitian_defect(&self) -> f64 {
        (1..self.n as isize)
            .map(|k| (self.get(-k) - self.get(k).conj()).norm())
            .fold(0.0, f64::max)
    }

    /// Row-major Toeplitz matrix T_{jk} = c_{k−j}.
    pub fn matrix(&self, n: usize) -> Vec<Complex64> {
        let mut t = Vec::with_capacity(n * n);
        for j in 0..n {
            for k in 0..n {
                t.push(self.get(k as isize - j as isize));
            }
        }
        t
    }
}

/// Nodes θ and weights for ∫_0^L θ^{2α} g(θ) dθ with smooth g.
///
/// A Jacobi panel of length h₀ ≤ 2/n carries the root singularity; beyond it
/// Legendre panels double in length, so each sits at least its own width
/// away from θ = 0. Node counts follow the oscillation of e^{ikθ}, |k| < n,
/// scaled by `refine`.
fn graded_rule(len: f64, alpha: f64, n: usize, refine: f64) -> Result<Vec<(f64, f64)>> {
    let count = |extra: f64| (refine * (0.5 * n as f64 * extra + 24.0)).ceil() as usize;
    let h0 = len.min(2.0 / n as f64);
    let scale = (0.5 * h0).powf(2.0 * alpha + 1.0);
    let mut rule: Vec<(f64, f64)> = gauss_jacobi(count(h0), 0.0, 2.0 * alpha)?
        .into_iter()
        .map(|nd| (0.5 * h0 * nd.one_plus_x, scale * nd.weight * root_factor(0.5 * h0 * nd.one_plus_x, alpha)))
        .collect();
    let mut lo = h0;
    while lo < len {
        let hi = (2.0 * lo).min(len);
        let (mid, half) = (0.5 * (lo + hi), 0.5 * (hi - lo));
        for nd in gauss_legendre(count(hi - lo))? {
            let th = mid + half * nd.x;
            rule.push((th, half * nd.weight * (2.0 * (0.5 * th).sin()).powf(2.0 * alpha)));
        }
        lo = hi;
    }
    Ok(rule)
}

/// (2 sin(θ/2)/θ)^{2α}, the smooth part of |e^{iθ} − 1|^{2α} next to θ = 0.
fn root_factor(theta: f64, alpha: f64) -> f64 {
    if theta == 0.0 {
        1.0
    } else {
        (2.0 * (0.5 * theta).sin() / theta).powf(2.0 * alpha)
    }
}

/// ∫_0^L over both mirror halves, θ and 2π − θ, of w against e^{−ikθ}
/// (without the thinning factor).
fn mirrored_moments(sym: &SymbolSpec, len: f64, n: usize, refine: f64) -> Result<Vec<Complex64>> {
    // Per node: θ and the weighted symbol on the θ and 2π − θ sides.
    let vals: Vec<(f64, f64, f64)> = graded_rule(len, sym.alpha, n, refine)?
        .into_iter()
        .map(|(th, w)| (th, w * (-sym.b * (th - PI)).exp(), w * (-sym.b * (PI - th)).exp()))
        .collect();
    Ok(map_indexed(2 * n - 1, |i| {
        let k = i as f64 - (n as f64 - 1.0);
        let mut acc = Complex64::new(0.0, 0.0);
        for &(th, wp, wm) in &vals {
            let (s, c) = (k * th).sin_cos();
            // e^{−ikθ} on the θ side, e^{+ikθ} on the mirrored side.
            acc += Complex64::new((wp + wm) * c, (wm - wp) * s);
        }
        acc / (2.0 * PI)
    }))
}

fn coeffs_with(sym: &SymbolSpec, n: usize, refine: f64) -> Result<Vec<Complex64>> {
    let mut c = mirrored_moments(sym, PI, n, refine)?;
    if sym.gamma != 0.0 && sym.arc_t > 0.0 {
        let arc = mirrored_moments(sym, sym.arc_t, n, refine)?;
        for (ci, ai) in c.iter_mut().zip(arc) {
            *ci -= ai * sym.gamma;
        }
    }
    Ok(c)
}

/// Fourier coefficients of the symbol with absolute error at most `tol`.
///
/// The thinned arc is handled as the full-circle integral minus γ times the
/// integral over the arc, so the root singularity always sits at a panel
/// endpoint and the jump of f at a panel boundary. The error is estimated by
/// comparing with rules 3/2 times larger.
pub fn fourier_coeffs(sym: &SymbolSpec, n: usize, tol: f64) -> Result<SymbolCoeffs> {
    sym.validate()?;
    if n == 0 || n > MAX_ORDER {
        return Err(Error::SizeLimit {
            n,
            min: 1,
            max: MAX_ORDER,
        });
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must be positive",
        });
    }
    let mut refine = 1.0;
    let mut prev = coeffs_with(sym, n, refine)?;
    loop {
        refine *= 1.5;
        let next = coeffs_with(sym, n, refine)?;
        let diff = prev
            .iter()
            .zip(&next)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if diff <= tol {
            return Ok(SymbolCoeffs { n, coeffs: next });
        }
        if refine > MAX_REFINE {
            return Err(Error::NonConvergence {
                what: "fourier_coeffs",
                detail: format!("no agreement to {tol:e} at refinement {refine} (last change {diff:e})"),
            });
        }
        prev = next;
    }
}

/// ln D_n from a Cholesky factorization of the Hermitian Toeplitz matrix.
pub fn log_toeplitz_det(coeffs: &SymbolCoeffs, n: usize) -> Result<f64> {
    if n == 0 || n > coeffs.n {
        return Err(Error::SizeLimit {
            n,
            min: 1,
            max: coeffs.n,
        });
    }
    let mut l = coeffs.matrix(n);
    let mut log_det = 0.0;
    for j in 0..n {
        let (row_j, below) = l[j * n..].split_at_mut(n);
        let d = row_j[j].re - row_j[..j].iter().map(|z| z.norm_sqr()).sum::<f64>();
        if !(d > 0.0) {
            return Err(Error::NonPositivePivot { row: j, pivot: d });
        }
        let djj = d.sqrt();
        row_j[j] = Complex64::new(djj, 0.0);
        log_det += 2.0 * djj.ln();
        // Rows below j: L_ij = (A_ij − Σ_k L_ik conj(L_jk)) / L_jj, stored in row i.
        for row_i in below.chunks_exact_mut(n) {
            let mut acc = row_i[j];
            for k in 0..j {
                acc -= row_i[k] * row_j[k].conj();
            }
            row_i[j] = acc / djj;
        }
    }
    Ok(log_det)
}

/// ln D_n(2s/n) − ln D_n(0) for the symbol built from `params`.
pub fn scaling_limit_check(params: &KernelParams, s: f64, n: usize) -> Result<f64> {
    params.validate()?;
    if !(4..=MAX_ORDER).contains(&n) {
        return Err(Error::SizeLimit {
            n,
            min: 4,
            max: MAX_ORDER,
        });
    }
    let t = 2.0 * s / n as f64;
    if !(s > 0.0) || !(t < PI) {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "need s > 0 and 2s/n < pi",
        });
    }
    if params.gamma == 0.0 {
        return Ok(0.0);
    }
    // Coefficients are rounding-limited near 1e-14 (1e-11 as α → −1/2).
    let tol = 1e-10;
    let thinned = fourier_coeffs(&SymbolSpec::new(params, t)?, n, tol)?;
    let plain = fourier_coeffs(&SymbolSpec::new(params, 0.0)?, n, tol)?;
    Ok(log_toeplitz_det(&thinned, n)? - log_toeplitz_det(&plain, n)?)
}

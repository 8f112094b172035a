//! Counting statistics of the determinantal point process on (−s, s).
//!
//! The number of points N(s) in the interval is a sum of independent
//! Bernoulli variables whose success probabilities are the eigenvalues of
//! K_s, so its law, moments and generating function all come from one
//! spectrum.

use std::f64::consts::PI;

use serde::Serialize;

use crate::asymptotics::variance_constant;
use crate::fredholm::{build_operator, initial_nodes, log_det_from_eigenvalues};
use crate::kernel::KernelParams;
use crate::{Error, Result};

/// Eigenvalues below this are dropped before building the distribution.
pub const EIGEN_CUTOFF: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountingSummary {
    pub s: f64,
    pub n_quad: usize,
    /// Eigenvalues kept after the cutoff.
    pub n_eigen: usize,
    pub e_n: f64,
    pub var_n: f64,
    /// P(N = k) for k = 0..=n_eigen.
    pub pmf: Vec<f64>,
    /// Distance to the normal law with continuity correction.
    pub ks_normal: f64,
    /// Plain Kolmogorov distance, including the lattice jumps.
    pub ks_raw: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GenFuncCheck {
    pub nu: f64,
    /// Σ_k P(N = k) e^{−2πνk}
    pub lhs: f64,
    /// det(I − γ(ν) K_s) with γ(ν) = 1 − e^{−2πν}
    pub rhs: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentGaps {
    pub mean_gap: f64,
    pub var_gap: f64,
}

/// Node count used when the caller does not choose one.
pub fn default_nodes(s: f64) -> usize {
    (2 * initial_nodes(s)).min(crate::fredholm::MAX_NODES)
}

/// Eigenvalues of the unthinned operator, clamped to [0, 1], descending.
pub fn counting_spectrum(params: &KernelParams, s: f64, n_quad: usize) -> Result<Vec<f64>> {
    let op = build_operator(params, s, n_quad)?;
    Ok(op.eigenvalues()?.into_iter().map(|l| l.clamp(0.0, 1.0)).collect())
}

/// Law of a sum of independent Bernoulli(p_i) variables.
pub fn poisson_binomial(probs: &[f64]) -> Vec<f64> {
    let mut pmf = vec![0.0; probs.len() + 1];
    pmf[0] = 1.0;
    for (m, &p) in probs.iter().enumerate() {
        for k in (1..=m + 1).rev() {
            pmf[k] = pmf[k] * (1.0 - p) + pmf[k - 1] * p;
        }
        pmf[0] *= 1.0 - p;
    }
    pmf
}

fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x / std::f64::consts::SQRT_2)
}

/// max_k |P(N ≤ k) − Φ((k + ½ − μ)/σ)|.
pub fn ks_normal(pmf: &[f64], mean: f64, var: f64) -> f64 {
    let sd = var.sqrt();
    let mut cdf = 0.0;
    let mut d: f64 = 0.0;
    for (k, p) in pmf.iter().enumerate() {
        cdf += p;
        d = d.max((cdf - normal_cdf((k as f64 + 0.5 - mean) / sd)).abs());
    }
    d
}

/// sup_x |P(N ≤ x) − Φ((x − μ)/σ)|, attained on either side of a lattice jump.
pub fn ks_raw(pmf: &[f64], mean: f64, var: f64) -> f64 {
    let sd = var.sqrt();
    let mut cdf = 0.0;
    let mut d: f64 = 0.0;
    for (k, p) in pmf.iter().enumerate() {
        let phi = normal_cdf((k as f64 - mean) / sd);
        d = d.max((cdf - phi).abs());
        cdf += p;
        d = d.max((cdf - phi).abs());
    }
    d
}

/// Mean, variance, exact law and normal distance of N(s). γ in `params` is ignored.
pub fn counting_summary(params: &KernelParams, s: f64, n_quad: usize) -> Result<CountingSummary> {
    let eig = counting_spectrum(params, s, n_quad)?;
    let kept: Vec<f64> = eig.into_iter().filter(|&l| l > EIGEN_CUTOFF).collect();
    let e_n: f64 = kept.iter().sum();
    let var_n: f64 = kept.iter().map(|l| l * (1.0 - l)).sum();
    let pmf = poisson_binomial(&kept);
    let (ks_normal, ks_raw) = if var_n > 0.0 {
        (ks_normal(&pmf, e_n, var_n), ks_raw(&pmf, e_n, var_n))
    } else {
        (f64::NAN, f64::NAN)
    };
    Ok(CountingSummary {
        s,
        n_quad,
        n_eigen: kept.len(),
        e_n,
        var_n,
        pmf,
        ks_normal,
        ks_raw,
    })
}

/// γ for which det(I − γK) is the generating function E e^{−2πνN}.
pub fn gamma_of_nu(nu: f64) -> f64 {
    -(-2.0 * PI * nu).exp_m1()
}

/// Both sides of E e^{−2πνN} = det(I − γ(ν)K_s) at fixed quadrature.
pub fn genfunc_check(params: &KernelParams, s: f64, nu: f64, n_quad: usize) -> Result<GenFuncCheck> {
    if !(nu >= 0.0) || !nu.is_finite() {
        return Err(Error::InvalidParameter {
            name: "nu",
            value: nu,
            reason: "must be finite and non-negative",
        });
    }
    let eig = counting_spectrum(params, s, n_quad)?;
    let kept: Vec<f64> = eig.iter().copied().filter(|&l| l > EIGEN_CUTOFF).collect();
    let pmf = poisson_binomial(&kept);
    let z = (-2.0 * PI * nu).exp();
    let lhs = pmf.iter().rev().fold(0.0, |acc, p| acc * z + p);
    let rhs = log_det_from_eigenvalues(&eig, gamma_of_nu(nu))?.exp();
    Ok(GenFuncCheck { nu, lhs, rhs })
}

/// ln E e^{−2πνN} over the spectrum; defined for ν of either sign.
pub fn log_genfunc(eigenvalues: &[f64], nu: f64) -> f64 {
    let g = gamma_of_nu(nu);
    eigenvalues.iter().map(|l| (-g * l).ln_1p()).sum()
}

/// Var N as the curvature of ln E e^{−2πνN} at ν = 0, by central differences.
pub fn variance_from_curvature(eigenvalues: &[f64], h: f64) -> f64 {
    let f = |nu| log_genfunc(eigenvalues, nu);
    (f(h) - 2.0 * f(0.0) + f(-h)) / (h * h) / (4.0 * PI * PI)
}

/// Distance of the mean and variance from their large-s forms
/// 2s/π − α and (ln s + 1 + γ_E + 2 ln 2)/π².
pub fn moment_asym_gap(params: &KernelParams, s: f64, n_quad: usize) -> Result<MomentGaps> {
    if !(s >= 5.0) {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "moment asymptotics are compared for s >= 5",
        });
    }
    let sum = counting_summary(params, s, n_quad)?;
    Ok(MomentGaps {
        mean_gap: (sum.e_n - (2.0 * s / PI - params.alpha)).abs(),
        var_gap: (sum.var_n - (s.ln() / (PI * PI) + variance_constant())).abs(),
    })
}

//! Closed-form asymptotics: the large-gap formula
//!
//! ```text
//! ln det(I − γK_s) ≈ 2απc + 2 ln[G(1+ic)G(1−ic)] + 2c² ln(4s) − 4cs,   c = −ln(1−γ)/(2π),
//! ```
//!
//! the counting-statistics constants, and the leading behavior of the coupled
//! Painlevé V solution at both ends of the ray τ ∈ −i(0, ∞).

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::kernel::KernelParams;
use crate::specfun::{barnes_g_log_pair, log_gamma, EULER_GAMMA};
use crate::{Error, Result};

/// arg τ on the ray τ = −it. Every power τ^p is taken as exp(p (ln t + i·TAU_ARG)).
pub const TAU_ARG: f64 = -PI / 2.0;

/// c = −ln(1 − γ)/(2π).
pub fn c_of_gamma(gamma: f64) -> Result<f64> {
    if !(0.0..1.0).contains(&gamma) {
        return Err(Error::InvalidParameter {
            name: "gamma",
            value: gamma,
            reason: "must satisfy 0 <= gamma < 1",
        });
    }
    Ok(-(-gamma).ln_1p() / (2.0 * PI))
}

/// The four terms of the large-gap formula and their sum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymDetBreakdown {
    pub c: f64,
    /// 2απc
    pub term_linear: f64,
    /// 2 ln[G(1+ic) G(1−ic)]
    pub term_barnes: f64,
    /// 2c² ln(4s)
    pub term_log: f64,
    /// −4cs
    pub term_exp: f64,
    pub total: f64,
}

/// Logarithm of the large-gap asymptotic formula, without its (1 + O(1/s)) factor.
pub fn log_asym_det(params: &KernelParams, s: f64) -> Result<AsymDetBreakdown> {
    params.validate()?;
    if !(s > 0.0) || !s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "must be positive and finite",
        });
    }
    let c = c_of_gamma(params.gamma)?;
    let term_linear = 2.0 * params.alpha * PI * c;
    let term_barnes = 2.0 * barnes_g_log_pair(c)?;
    let term_log = 2.0 * c * c * (4.0 * s).ln();
    let term_exp = -4.0 * c * s;
    Ok(AsymDetBreakdown {
        c,
        term_linear,
        term_barnes,
        term_log,
        term_exp,
        total: term_linear + term_barnes + term_log + term_exp,
    })
}

/// Reference mean and variance of the number of points in (−s, s).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CountingRefs {
    /// 2s/π − α
    pub mu: f64,
    /// ln s / π²
    pub sigma2: f64,
    /// (1 + γ_E + 2 ln 2)/π², the constant term of the variance.
    pub var_const: f64,
}

/// (1 + γ_E + 2 ln 2)/π² = 0.300266343…
pub fn variance_constant() -> f64 {
    (1.0 + EULER_GAMMA + 2.0 * LN_2) / (PI * PI)
}

pub fn counting_refs(alpha: f64, s: f64) -> Result<CountingRefs> {
    if !(s >= 1.0) || !s.is_finite() {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "counting references need s >= 1",
        });
    }
    Ok(CountingRefs {
        mu: 2.0 * s / PI - alpha,
        sigma2: s.ln() / (PI * PI),
        var_const: variance_constant(),
    })
}

/// Leading-order values of (u₁, u₂, v₁, v₂, H) at τ = −it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PVRefPoint {
    pub t: f64,
    pub u1: Complex64,
    pub u2: Complex64,
    pub v1: Complex64,
    pub v2: Complex64,
    pub h: Complex64,
}

fn tau_pow(t: f64, p: Complex64) -> Complex64 {
    (p * Complex64::new(t.ln(), TAU_ARG)).exp()
}

/// Leading terms of the large-|τ| behavior at τ = −it.
pub fn pv_large_t_ref(params: &KernelParams, t: f64) -> Result<PVRefPoint> {
    params.validate()?;
    if !(t >= 1.0) || !t.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "large-t reference needs t >= 1",
        });
    }
    let c = c_of_gamma(params.gamma)?;
    let i = Complex64::i();
    let alpha = params.alpha;
    let beta = params.beta();
    let ic = i * c;
    let one = Complex64::new(1.0, 0.0);
    let ln_ab_plus = log_gamma(one + alpha + beta)?;
    let ln_ab_minus = log_gamma(one + alpha - beta)?;
    let ln_c_plus = log_gamma(one + ic)?;
    let ln_c_minus = log_gamma(one - ic)?;
    let tau = Complex64::new(0.0, -t);
    let half_tau = (tau / 2.0).exp();
    let two_2beta = (2.0 * beta * LN_2).exp();

    // Γ(1+α+β)Γ(1−ic) / (Γ(1+α−β)Γ(1+ic))
    let r1 = (ln_ab_plus + ln_c_minus - ln_ab_minus - ln_c_plus).exp();
    // Γ(1+α+β)Γ(1+ic) / (Γ(1+α−β)Γ(1−ic))
    let r2 = (ln_ab_plus + ln_c_plus - ln_ab_minus - ln_c_minus).exp();

    let u1 = ic * r1 * two_2beta * (i * PI * (alpha - beta)).exp() * (-PI * c).exp() * half_tau
        * tau_pow(t, 2.0 * (ic - beta));
    let v1 = two_2beta.inv() / r1 * (-i * PI * (alpha - beta)).exp() * (PI * c).exp() / half_tau
        * tau_pow(t, -2.0 * (ic - beta));
    let u2 = -ic * r2 * two_2beta * (-i * PI * (alpha + beta)).exp() * (PI * c).exp() / half_tau
        * tau_pow(t, -2.0 * (ic + beta));
    let v2 = two_2beta.inv() / r2 * (i * PI * (alpha + beta)).exp() * (-PI * c).exp() * half_tau
        * tau_pow(t, 2.0 * (ic + beta));
    let h = -ic + 2.0 * c * c / tau;
    Ok(PVRefPoint { t, u1, u2, v1, v2, h })
}

/// γ Γ(1+α−β)Γ(1+α+β) / (iπ 2^{2α+1} Γ(1+2α)²), the common factor of the
/// small-|τ| behavior.
pub(crate) fn small_t_prefactor(params: &KernelParams) -> Result<Complex64> {
    let alpha = params.alpha;
    let ln_pair = 2.0 * log_gamma(Complex64::new(1.0 + alpha, params.b))?.re;
    let ln_den = (2.0 * alpha + 1.0) * LN_2 + 2.0 * log_gamma(Complex64::new(1.0 + 2.0 * alpha, 0.0))?.re;
    let real = params.gamma * (ln_pair - ln_den).exp() / PI;
    Ok(Complex64::new(0.0, -real))
}

/// Leading terms of the small-|τ| behavior at τ = −it (v₁ = v₂ = 1).
pub fn pv_small_t_ref(params: &KernelParams, t: f64) -> Result<PVRefPoint> {
    params.validate()?;
    if !(t > 0.0 && t <= 0.1) {
        return Err(Error::InvalidParameter {
            name: "t",
            value: t,
            reason: "small-t reference needs 0 < t <= 0.1",
        });
    }
    let p = small_t_prefactor(params)?;
    let alpha = params.alpha;
    let t2a = t.powf(2.0 * alpha);
    // e^{±πiβ} = e^{∓πb}, cos(βπ) = cosh(πb)
    let u1 = -p * (PI * params.b).exp() * t2a;
    let u2 = p * (-PI * params.b).exp() * t2a;
    let h = p * (PI * params.b).cosh() / (2.0 * alpha + 1.0) * t2a;
    let one = Complex64::new(1.0, 0.0);
    Ok(PVRefPoint {
        t,
        u1,
        u2,
        v1: one,
        v2: one,
        h,
    })
}

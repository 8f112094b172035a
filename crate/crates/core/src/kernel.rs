//! The confluent hypergeometric kernel
//!
//! ```text
//! K(x, y) = C/(2πi) · (A(x) B(y) − A(y) B(x)) / (x − y),   B = conj(A),
//! A(x)    = χ(x)^{1/2} |2x|^α e^{−ix} M(1+α+β, 1+2α, 2ix),
//! C       = Γ(1+α+β) Γ(1+α−β) / Γ(1+2α)²,  β = i b,
//! ```
//!
//! evaluated in the manifestly real form `K = (C/π) Im(A(x) conj A(y)) / (x − y)`.
//! With β imaginary the jump factor χ(x)^{1/2} is e^{∓πb/2} for x ≶ 0.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::specfun::{bessel_j01, kummer_m, kummer_m_deriv, log_gamma, BesselOrder};
use crate::{Error, Result};

/// Below this separation the off-diagonal quotient is replaced by the diagonal
/// value at the midpoint (symmetric, so the error is second order).
pub const NEAR_DIAGONAL: f64 = 1e-5;

/// Kernel parameters: α, β = i·b, and the thinning parameter γ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KernelParams {
    pub alpha: f64,
    /// Imaginary part of β.
    #[serde(rename = "beta_im")]
    pub b: f64,
    pub gamma: f64,
}

impl KernelParams {
    pub fn new(alpha: f64, b: f64, gamma: f64) -> Result<Self> {
        let p = KernelParams { alpha, b, gamma };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > -0.5) || !self.alpha.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha",
                value: self.alpha,
                reason: "must satisfy alpha > -1/2",
            });
        }
        if !self.b.is_finite() {
            return Err(Error::InvalidParameter {
                name: "beta_im",
                value: self.b,
                reason: "must be finite",
            });
        }
        if !(0.0..1.0).contains(&self.gamma) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: self.gamma,
                reason: "must satisfy 0 <= gamma < 1",
            });
        }
        Ok(())
    }

    /// β as a complex number.
    pub fn beta(&self) -> Complex64 {
        Complex64::new(0.0, self.b)
    }

    /// Same α, β with a different thinning parameter.
    pub fn with_gamma(&self, gamma: f64) -> Self {
        KernelParams { gamma, ..*self }
    }
}

/// Kernel with its parameter-only constants precomputed.
///
/// Works with the *reduced* amplitude Ã(x) = A(x)/|x|^α, which is smooth on
/// each half-line; K(x, y) = |x|^α |y|^α K̃(x, y).
#[derive(Debug, Clone)]
pub struct ChgKernel {
    params: KernelParams,
    /// C / π
    scale: f64,
    a: Complex64,
    b: Complex64,
    /// χ^{1/2} · 2^α on x < 0 and x > 0.
    factor_neg: f64,
    factor_pos: f64,
}

/// Reduced amplitude and its x-derivative at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedAmplitude {
    pub x: f64,
    pub value: Complex64,
    pub deriv: Complex64,
}

impl ChgKernel {
    pub fn new(params: KernelParams) -> Result<Self> {
        params.validate()?;
        let alpha = params.alpha;
        let beta = params.beta();
        let one = Complex64::new(1.0 + alpha, 0.0);
        // Γ(1+α+β)Γ(1+α−β) = |Γ(1+α+ib)|²
        let ln_c = 2.0 * log_gamma(one + beta)?.re - 2.0 * log_gamma(Complex64::new(1.0 + 2.0 * alpha, 0.0))?.re;
        let two_alpha = 2f64.powf(alpha);
        Ok(ChgKernel {
            params,
            scale: ln_c.exp() / PI,
            a: one + beta,
            b: Complex64::new(1.0 + 2.0 * alpha, 0.0),
            factor_neg: (-PI * params.b / 2.0).exp() * two_alpha,
            factor_pos: (PI * params.b / 2.0).exp() * two_alpha,
        })
    }

    pub fn params(&self) -> &KernelParams {
        &self.params
    }

    /// Γ(1+α+β)Γ(1+α−β)/Γ(1+2α)².
    pub fn gamma_prefactor(&self) -> f64 {
        self.scale * PI
    }

    pub fn reduced_amplitude(&self, x: f64) -> Result<ReducedAmplitude> {
        if x == 0.0 || !x.is_finite() {
            return Err(Error::Domain {
                function: "amplitude",
                detail: format!("x = {x}; the jump factor is undefined at the origin"),
            });
        }
        let factor = if x < 0.0 { self.factor_neg } else { self.factor_pos };
        let z = Complex64::new(0.0, 2.0 * x);
        let m = kummer_m(self.a, self.b, z)?;
        let dm = kummer_m_deriv(self.a, self.b, z)?;
        let phase = Complex64::new(0.0, -x).exp() * factor;
        let i = Complex64::i();
        Ok(ReducedAmplitude {
            x,
            value: phase * m,
            deriv: phase * (-i * m + 2.0 * i * dm),
        })
    }

    /// K̃(x, x) = (C/π) Im(Ã'(x) conj Ã(x)).
    pub fn reduced_diag(&self, amp: &ReducedAmplitude) -> f64 {
        self.scale * (amp.deriv * amp.value.conj()).im
    }

    /// K̃(x, y) from precomputed reduced amplitudes.
    ///
    /// Pairs closer than [`NEAR_DIAGONAL`] on the same half-line are evaluated
    /// as the diagonal at their midpoint.
    pub fn reduced_from_amplitudes(&self, p: &ReducedAmplitude, q: &ReducedAmplitude) -> Result<f64> {
        let d = p.x - q.x;
        if d == 0.0 {
            return Ok(self.reduced_diag(p));
        }
        if d.abs() < NEAR_DIAGONAL && p.x.signum() == q.x.signum() {
            let mid = self.reduced_amplitude(0.5 * (p.x + q.x))?;
            return Ok(self.reduced_diag(&mid));
        }
        Ok(self.scale * (p.value * q.value.conj()).im / d)
    }

    pub fn amplitude(&self, x: f64) -> Result<Complex64> {
        let r = self.reduced_amplitude(x)?;
        Ok(r.value * x.abs().powf(self.params.alpha))
    }

    pub fn kernel(&self, x: f64, y: f64) -> Result<f64> {
        if x == y {
            return Err(Error::Domain {
                function: "chg_kernel",
                detail: format!("x = y = {x}; use chg_kernel_diag"),
            });
        }
        let p = self.reduced_amplitude(x)?;
        let q = self.reduced_amplitude(y)?;
        let weight = (x.abs() * y.abs()).powf(self.params.alpha);
        Ok(weight * self.reduced_from_amplitudes(&p, &q)?)
    }

    pub fn diag(&self, x: f64) -> Result<f64> {
        let p = self.reduced_amplitude(x)?;
        Ok(x.abs().powf(2.0 * self.params.alpha) * self.reduced_diag(&p))
    }

    /// The literal complex expression C/(2πi)·(A(x)B(y) − A(y)B(x))/(x − y),
    /// whose imaginary part vanishes identically.
    pub fn kernel_unreduced(&self, x: f64, y: f64) -> Result<Complex64> {
        let ax = self.amplitude(x)?;
        let ay = self.amplitude(y)?;
        let num = ax * ay.conj() - ay * ax.conj();
        Ok(num * (self.scale * PI) / (Complex64::new(0.0, 2.0 * PI) * (x - y)))
    }
}

/// 𝔸(x) = χ_β(x)^{1/2} |2x|^α e^{−ix} M(1+α+β, 1+2α, 2ix).
pub fn amplitude(params: &KernelParams, x: f64) -> Result<Complex64> {
    ChgKernel::new(*params)?.amplitude(x)
}

/// K^{(α,β)}(x, y) for x ≠ y, x·y ≠ 0.
pub fn chg_kernel(params: &KernelParams, x: f64, y: f64) -> Result<f64> {
    if x == 0.0 || y == 0.0 {
        return Err(Error::Domain {
            function: "chg_kernel",
            detail: "kernel is evaluated off the origin".into(),
        });
    }
    ChgKernel::new(*params)?.kernel(x, y)
}

/// K^{(α,β)}(x, x) for x ≠ 0.
pub fn chg_kernel_diag(params: &KernelParams, x: f64) -> Result<f64> {
    ChgKernel::new(*params)?.diag(x)
}

/// sin(x − y) / (π (x − y)), with value 1/π on the diagonal.
pub fn sine_kernel(x: f64, y: f64) -> f64 {
    let d = x - y;
    if d == 0.0 {
        1.0 / PI
    } else {
        d.sin() / (PI * d)
    }
}

/// Type-I Bessel kernel at α = 1/2, β = 0:
/// √|xy|/2 · (J₁(x)J₀(y) − J₀(x)J₁(y)) / (x − y).
///
/// The sign prefactor |x|^α|y|^α/(x^α y^α)·√(xy) is taken as √|xy| in every
/// quadrant, which is what makes it agree with the confluent kernel for x, y < 0.
pub fn bessel1_kernel_half(x: f64, y: f64) -> f64 {
    use BesselOrder::{J0, J1};
    let d = x - y;
    if d.abs() < 1e-8 {
        let m = 0.5 * (x + y);
        if m == 0.0 {
            return 0.0;
        }
        let (j0, j1) = (bessel_j01(J0, m), bessel_j01(J1, m));
        return 0.5 * m.abs() * (j0 * j0 + j1 * j1 - j0 * j1 / m);
    }
    let num = bessel_j01(J1, x) * bessel_j01(J0, y) - bessel_j01(J0, x) * bessel_j01(J1, y);
    0.5 * (x * y).abs().sqrt() * num / d
}

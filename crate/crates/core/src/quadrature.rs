//! Gauss–Jacobi and Gauss–Legendre rules.
//!
//! Nodes are found by Newton's method on the angle θ (x = cos θ), started from
//! Gatteschi-type estimates, and each half of the rule is computed from the
//! endpoint it is closest to so that `1 ± x` keeps full relative precision
//! near the weighted endpoint. O(n²) work, no eigensolver.

use std::f64::consts::PI;

use crate::specfun::ln_gamma_real;
use crate::{Error, Result};

/// One node of a rule on [-1, 1] for the weight (1-x)^a (1+x)^b.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiNode {
    pub x: f64,
    /// 1 - x, accurate near x = 1.
    pub one_minus_x: f64,
    /// 1 + x, accurate near x = -1.
    pub one_plus_x: f64,
    pub weight: f64,
}

/// P_n^{(a,b)}(x) and P_{n-1}^{(a,b)}(x) by the three-term recurrence, written
/// in u = 1 - x so that rounding perturbs u relatively rather than x absolutely.
fn jacobi_pair(n: usize, a: f64, b: f64, u: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = (a + 1.0) - 0.5 * (a + b + 2.0) * u;
    if n == 1 {
        return (p1, p0);
    }
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * ((s * (s - 2.0) + a * a - b * b) - s * (s - 2.0) * u);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    (p1, p0)
}

/// sin θ · P_n'(cos θ), using the derivative identity at general x.
fn sin_times_derivative(n: usize, a: f64, b: f64, theta: f64, pn: f64, pnm1: f64) -> f64 {
    let nf = n as f64;
    let s = 2.0 * nf + a + b;
    let u = one_minus_cos(theta);
    (nf * ((a - b - s) + s * u) * pn + 2.0 * (nf + a) * (nf + b) * pnm1) / (s * theta.sin())
}

fn one_minus_cos(theta: f64) -> f64 {
    2.0 * (0.5 * theta).sin().powi(2)
}

/// First `count` roots of P_n^{(a,b)} counted from x = +1, as (θ, weight).
fn roots_from_right(n: usize, a: f64, b: f64, count: usize) -> Result<Vec<(f64, f64)>> {
    let nf = n as f64;
    let ln_ratio = (ln_gamma_real(nf + a + 1.0) - ln_gamma_real(nf + 1.0))
        + (ln_gamma_real(nf + b + 1.0) - ln_gamma_real(nf + a + b + 1.0));
    let scale = ln_ratio.exp() * 2f64.powf(a + b + 1.0);
    let mut out = Vec::with_capacity(count);
    for k in 1..=count {
        let mut theta = (k as f64 + 0.5 * a - 0.25) * PI / (nf + 0.5 * (a + b + 1.0));
        let mut converged = false;
        let mut polish = false;
        for _ in 0..100 {
            let (pn, pnm1) = jacobi_pair(n, a, b, one_minus_cos(theta));
            let dp = sin_times_derivative(n, a, b, theta, pn, pnm1);
            // d/dθ P_n(cos θ) = -sin θ P_n'
            let step = pn / dp;
            theta += step;
            if polish {
                converged = true;
                break;
            }
            // Quadratic convergence: one more step after this reaches rounding level.
            polish = step.abs() <= 1e-9 * theta;
        }
        if !converged || !(theta > 0.0 && theta < PI) {
            return Err(Error::NonConvergence {
                what: "Gauss-Jacobi node",
                detail: format!("root {k} of P_{n}^({a},{b})"),
            });
        }
        let (pn, pnm1) = jacobi_pair(n, a, b, one_minus_cos(theta));
        let dp = sin_times_derivative(n, a, b, theta, pn, pnm1);
        out.push((theta, scale / (dp * dp)));
    }
    Ok(out)
}

/// n-point Gauss–Jacobi rule for (1-x)^a (1+x)^b on [-1, 1], ascending in x.
pub fn gauss_jacobi(n: usize, a: f64, b: f64) -> Result<Vec<JacobiNode>> {
    if n == 0 || n > 20_000 {
        return Err(Error::SizeLimit {
            n,
            min: 1,
            max: 20_000,
        });
    }
    for (name, v) in [("a", a), ("b", b)] {
        if !(v > -1.0) || !v.is_finite() {
            return Err(Error::InvalidParameter {
                name,
                value: v,
                reason: "Jacobi exponents must exceed -1",
            });
        }
    }
    let right = n.div_ceil(2);
    let left = n - right;
    let mut nodes = Vec::with_capacity(n);
    // Roots near x = -1 come from the mirrored polynomial P^{(b,a)}(-x).
    for (theta, weight) in roots_from_right(n, b, a, left)? {
        let half = 0.5 * theta;
        nodes.push(JacobiNode {
            x: -theta.cos(),
            one_minus_x: 2.0 * half.cos().powi(2),
            one_plus_x: 2.0 * half.sin().powi(2),
            weight,
        });
    }
    for (theta, weight) in roots_from_right(n, a, b, right)?.into_iter().rev() {
        let half = 0.5 * theta;
        nodes.push(JacobiNode {
            x: theta.cos(),
            one_minus_x: 2.0 * half.sin().powi(2),
            one_plus_x: 2.0 * half.cos().powi(2),
            weight,
        });
    }
    if nodes.windows(2).any(|w| !(w[0].x < w[1].x)) {
        return Err(Error::NonConvergence {
            what: "Gauss-Jacobi rule",
            detail: format!("nodes of P_{n}^({a},{b}) not strictly increasing"),
        });
    }
    Ok(nodes)
}

/// n-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(n: usize) -> Result<Vec<JacobiNode>> {
    gauss_jacobi(n, 0.0, 0.0)
}

//! Bessel J₀ and J₁ of real argument. Used only as an independent check of the
//! α = 1/2 kernel reduction.

use std::f64::consts::PI;

use super::dd::Dd;

const SERIES_LIMIT: f64 = 25.0;

/// Which Bessel function to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BesselOrder {
    J0,
    J1,
}

/// J₀(x) or J₁(x), absolute error ≲ 1e-13 for |x| ≤ 200.
pub fn bessel_j01(order: BesselOrder, x: f64) -> f64 {
    let ax = x.abs();
    let n = match order {
        BesselOrder::J0 => 0,
        BesselOrder::J1 => 1,
    };
    let value = if ax <= SERIES_LIMIT {
        series(n, ax)
    } else {
        hankel(n, ax)
    };
    if n == 1 && x < 0.0 {
        -value
    } else {
        value
    }
}

fn series(n: u32, x: f64) -> f64 {
    let half = Dd::from_f64(x / 2.0);
    let q = -(half * half);
    let mut term = if n == 0 { Dd::ONE } else { half };
    let mut sum = term;
    for k in 1..200u32 {
        let denom = Dd::from_f64(k as f64 * (k + n) as f64);
        term = term * q / denom;
        sum = sum + term;
        if term.to_f64().abs() < 1e-32 {
            break;
        }
    }
    sum.to_f64()
}

/// Hankel expansion truncated at its smallest term (error ~ e^{-2x}).
fn hankel(n: u32, x: f64) -> f64 {
    let mu = 4.0 * (n * n) as f64;
    let mut p = 0.0;
    let mut q = 0.0;
    let mut a = 1.0f64; // a_k(n) / x^k
    let mut prev = f64::INFINITY;
    for k in 0..200u32 {
        if a.abs() > prev {
            break;
        }
        match k % 4 {
            0 => p += a,
            1 => q += a,
            2 => p -= a,
            _ => q -= a,
        }
        prev = a.abs();
        let odd = (2 * k + 1) as f64;
        a *= (mu - odd * odd) / ((k + 1) as f64 * 8.0 * x);
        if a.abs() < 1e-18 {
            break;
        }
    }
    let chi = x - (n as f64 / 2.0 + 0.25) * PI;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

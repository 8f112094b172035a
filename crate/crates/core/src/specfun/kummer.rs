//! Kummer's confluent hypergeometric function M(a, b, z) = ₁F₁(a; b; z).

use std::f64::consts::PI;

use num_complex::Complex64;

use super::dd::{CDd, Dd};
use super::gamma::log_gamma_unchecked;
use crate::{Error, Result};

/// Beyond this modulus the power series is abandoned for the asymptotic expansion.
pub const SERIES_RADIUS: f64 = 30.0;
/// Largest accepted |z|.
pub const MAX_ARGUMENT: f64 = 120.0;

const RUN_LENGTH: usize = 20;
const MAX_TERMS: usize = 6000;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

fn check_args(function: &'static str, b: Complex64, z: Complex64) -> Result<()> {
    if is_nonpositive_integer(b) {
        return Err(Error::Pole { function, at: b.re });
    }
    if !(z.norm() <= MAX_ARGUMENT) {
        return Err(Error::Domain {
            function,
            detail: format!("|z| = {} exceeds {MAX_ARGUMENT}", z.norm()),
        });
    }
    Ok(())
}

/// M(a, b, z) = Σ (a)_k z^k / ((b)_k k!).
///
/// `|z| ≤ 30` sums the power series in double-double arithmetic, after
/// Kummer's transformation M(a, b, z) = e^z M(b−a, b, −z) when Re z < 0.
/// The partial sums of the series for imaginary z peak near e^{|z|} before
/// cancelling, which would wipe out every f64 digit. Larger `|z|` use the
/// two-branch asymptotic expansion truncated at its smallest term.
pub fn kummer_m(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    check_args("kummer_m", b, z)?;
    if z.norm() <= SERIES_RADIUS {
        return series_either_side(a, b, z);
    }
    let (value, err) = kummer_asymptotic(a, b, z)?;
    if err <= 1e-10 * value.norm() {
        return Ok(value);
    }
    // Just past the radius with large parameters the expansion has not
    // settled yet; the series' own cancellation check decides if it can help.
    series_either_side(a, b, z).map_err(|_| Error::NonConvergence {
        what: "kummer_m asymptotic expansion",
        detail: format!(
            "smallest term {err:e} too large relative to |M| = {:e} at z = {z}",
            value.norm()
        ),
    })
}

fn series_either_side(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    if z.re < 0.0 {
        // Kummer's transformation keeps the series terms from cancelling.
        Ok(z.exp() * kummer_series(b - a, b, -z)?)
    } else {
        kummer_series(a, b, z)
    }
}

/// d/dz M(a, b, z) = (a/b) M(a+1, b+1, z).
pub fn kummer_m_deriv(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    check_args("kummer_m_deriv", b, z)?;
    if a == Complex64::new(0.0, 0.0) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    Ok(a / b * kummer_m(a + 1.0, b + 1.0, z)?)
}

/// The power series alone, summed in double-double arithmetic.
pub fn kummer_series(a: Complex64, b: Complex64, z: Complex64) -> Result<Complex64> {
    check_args("kummer_series", b, z)?;
    let a_dd = CDd::from_c64(a);
    let b_dd = CDd::from_c64(b);
    let z_dd = CDd::from_c64(z);
    let mut term = CDd::ONE;
    let mut sum = CDd::ONE;
    let mut max_term = 1.0f64;
    let mut quiet = 0usize;
    for k in 0..MAX_TERMS {
        let kk = CDd::from_c64(Complex64::new(k as f64, 0.0));
        let num = (a_dd + kk) * z_dd;
        let den = (b_dd + kk).scale(Dd::from_f64(k as f64 + 1.0));
        term = (term * num).div(den);
        sum = sum + term;
        let t = term.approx_abs();
        max_term = max_term.max(t);
        if t <= 1e-17 * sum.approx_abs() {
            quiet += 1;
            if quiet >= RUN_LENGTH {
                let value = sum.to_c64();
                // Rounding in double-double is ~1e-32 per term relative to the
                // largest term; reject when cancellation eats the margin.
                let err = 1e-31 * max_term * (k as f64 + 1.0);
                if err > 1e-13 * value.norm() {
                    return Err(Error::NonConvergence {
                        what: "kummer_m series",
                        detail: format!(
                            "cancellation leaves relative error {:e} at z = {z}",
                            err / value.norm()
                        ),
                    });
                }
                return Ok(value);
            }
        } else {
            quiet = 0;
        }
    }
    Err(Error::NonConvergence {
        what: "kummer_m series",
        detail: format!("no convergence after {MAX_TERMS} terms at z = {z}"),
    })
}

/// Sum of Σ_s (p)_s (q)_s / s! · w^s truncated at the smallest term.
/// Returns the sum and the magnitude of the first omitted term.
fn truncated_asymptotic_sum(p: Complex64, q: Complex64, w: Complex64) -> (Complex64, f64) {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut prev = 1.0f64;
    for s in 0..400 {
        let sf = s as f64;
        let next = term * (p + sf) * (q + sf) / (sf + 1.0) * w;
        let mag = next.norm();
        if mag > prev || mag == 0.0 {
            return (sum, mag.min(prev));
        }
        sum += next;
        if mag < 1e-17 * sum.norm() {
            return (sum, mag);
        }
        prev = mag;
        term = next;
    }
    (sum, prev)
}

/// The large-|z| expansion alone, each branch truncated at its smallest term.
/// Returns the value and the size of the first omitted terms.
pub fn kummer_asymptotic(a: Complex64, b: Complex64, z: Complex64) -> Result<(Complex64, f64)> {
    check_args("kummer_asymptotic", b, z)?;
    let ln_gamma_b = log_gamma_unchecked(b);
    let ln_z = z.ln();
    let i = Complex64::i();
    let sign = if z.im >= 0.0 { 1.0 } else { -1.0 };

    // Algebraic branch: e^{±πia} z^{-a} / Γ(b-a) · Σ (a)_s (a-b+1)_s/s! (-z)^{-s}
    let (branch1, err1) = if is_nonpositive_integer(b - a) {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        let pref = (ln_gamma_b - log_gamma_unchecked(b - a) + i * (sign * PI) * a - a * ln_z).exp();
        let (s, e) = truncated_asymptotic_sum(a, a - b + 1.0, -1.0 / z);
        (pref * s, pref.norm() * e)
    };
    // Exponential branch: e^z z^{a-b} / Γ(a) · Σ (1-a)_s (b-a)_s/s! z^{-s}
    let (branch2, err2) = if is_nonpositive_integer(a) {
        (Complex64::new(0.0, 0.0), 0.0)
    } else {
        let pref = (ln_gamma_b - log_gamma_unchecked(a) + z + (a - b) * ln_z).exp();
        let (s, e) = truncated_asymptotic_sum(1.0 - a, b - a, 1.0 / z);
        (pref * s, pref.norm() * e)
    };
    Ok((branch1 + branch2, err1 + err2))
}

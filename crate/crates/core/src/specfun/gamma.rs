use std::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const LANCZOS_G: f64 = 671.0 / 128.0;
const LANCZOS_C0: f64 = 0.999_999_999_999_997_1;
const LANCZOS: [f64; 14] = [
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_747,
    -0.491_913_816_097_620_2,
    0.339_946_499_848_118_9e-4,
    0.465_236_289_270_485_8e-4,
    -0.983_744_753_048_795_6e-4,
    0.158_088_703_224_912_5e-3,
    -0.210_264_441_724_104_9e-3,
    0.217_439_618_115_212_6e-3,
    -0.164_318_106_536_763_9e-3,
    0.844_182_239_838_527_4e-4,
    -0.261_908_384_015_814_1e-4,
    0.368_991_826_595_316_2e-5,
];
const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round()
}

/// Principal branch of `ln Γ(z)`.
///
/// Lanczos approximation for `Re z >= 0.5`; the reflection formula with the
/// branch correction of Hare (1997) elsewhere, so the imaginary part is the
/// continuous continuation from the positive real axis rather than `arg Γ(z)`
/// reduced to `(-π, π]`.
pub fn log_gamma(z: Complex64) -> Result<Complex64> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::Domain {
            function: "log_gamma",
            detail: format!("non-finite argument {z}"),
        });
    }
    if is_nonpositive_integer(z) {
        return Err(Error::Pole {
            function: "log_gamma",
            at: z.re,
        });
    }
    Ok(log_gamma_unchecked(z))
}

pub(crate) fn log_gamma_unchecked(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let shift = (2.0 * PI).copysign(z.im) * (0.5 * z.re + 0.25).floor();
        let log_sin = (z * PI).sin().ln();
        return Complex64::new(PI.ln(), if z.im == 0.0 { 0.0 } else { shift })
            - log_sin
            - log_gamma_unchecked(1.0 - z);
    }
    let mut denom = z;
    let mut series = Complex64::new(LANCZOS_C0, 0.0);
    for c in LANCZOS {
        denom += 1.0;
        series += c / denom;
    }
    let t = z + LANCZOS_G;
    (z + 0.5) * t.ln() - t + (series * SQRT_2PI / z).ln()
}

/// `ln Γ(x)` for real `x > 0`.
pub(crate) fn ln_gamma_real(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    log_gamma_unchecked(Complex64::new(x, 0.0)).re
}

/// `Γ(z)` as `exp(ln Γ(z))`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    log_gamma(z).map(|l| l.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn known_values() {
        assert!(log_gamma(c(1.0, 0.0)).unwrap().norm() < 1e-15);
        assert!(log_gamma(c(2.0, 0.0)).unwrap().norm() < 1e-15);
        let half = log_gamma(c(0.5, 0.0)).unwrap();
        assert!((half.re - PI.sqrt().ln()).abs() < 1e-15);
        assert_eq!(half.im, 0.0);
        // |Γ(1+i)|² = π / sinh π
        let g = gamma(c(1.0, 1.0)).unwrap();
        let expect = PI / PI.sinh();
        assert!((g.norm_sqr() - expect).abs() / expect < 1e-14);
    }

    #[test]
    fn principal_branch_matches_reference() {
        // mpmath.loggamma at 50 digits.
        let cases = [
            ((-2.5, 0.7), (-1.494_187_308_911_357_5, -8.646_475_682_803_377)),
            ((-7.3, -3.1), (-16.436_798_490_748_293, 18.056_799_806_380_503)),
            ((0.2, 40.0), (-63.019_573_374_362_728, 107.083_855_923_113_95)),
            ((30.0, -45.0), (44.414_559_660_235_4, -163.564_752_380_371_47)),
            ((-0.5, 0.01), (1.265_065_463_940_397, -3.141_227_615_720_128_6)),
        ];
        for ((re, im), (lre, lim)) in cases {
            let v = log_gamma(c(re, im)).unwrap();
            let scale = f64::hypot(lre, lim).max(1.0);
            assert!(
                (v.re - lre).abs() / scale < 2e-15 && (v.im - lim).abs() / scale < 2e-15,
                "lnΓ({re}+{im}i) = {v}, expected {lre}+{lim}i"
            );
        }
    }

    #[test]
    fn poles_are_rejected() {
        for n in [0.0, -1.0, -7.0] {
            assert!(matches!(log_gamma(c(n, 0.0)), Err(Error::Pole { .. })));
        }
        assert!(log_gamma(c(-1.0, 1e-9)).is_ok());
    }

    #[test]
    fn factorials() {
        let mut f = 1.0f64;
        for n in 1..20 {
            f *= n as f64;
            let g = gamma(c(n as f64 + 1.0, 0.0)).unwrap();
            assert!((g.re - f).abs() / f < 1e-13, "Γ({})", n + 1);
        }
    }

    proptest! {
        #[test]
        fn recurrence_holds(re in -20.0f64..20.0, im in -20.0f64..20.0) {
            prop_assume!((re - re.round()).abs() > 1e-3 || im.abs() > 1e-3);
            let z = c(re, im);
            let g1 = gamma(z + 1.0).unwrap();
            let g0 = gamma(z).unwrap();
            prop_assert!((g1 - z * g0).norm() / g1.norm() <= 1e-12);
        }

        #[test]
        fn conjugation(re in 0.1f64..30.0, im in -30.0f64..30.0) {
            let z = c(re, im);
            let a = log_gamma(z).unwrap();
            let b = log_gamma(z.conj()).unwrap();
            prop_assert!((a - b.conj()).norm() <= 1e-13 * a.norm().max(1.0));
        }
    }
}

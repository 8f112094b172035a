use chgdet::fredholm::{build_operator, log_det_at};
use chgdet::toeplitz::{fourier_coeffs, log_toeplitz_det, SymbolSpec};
use chgdet::KernelParams;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn spectrum_lies_in_unit_interval(alpha in -0.45f64..1.5, b in -1.5f64..1.5, s in 0.1f64..4.0) {
        let p = KernelParams::new(alpha, b, 0.0).unwrap();
        let eig = build_operator(&p, s, 64).unwrap().eigenvalues().unwrap();
        for l in eig {
            prop_assert!((-1e-10..=1.0 + 1e-10).contains(&l), "λ = {l}");
        }
    }

    #[test]
    fn log_det_decreases_in_gamma(alpha in -0.45f64..1.5, b in -1.5f64..1.5, s in 0.1f64..4.0, g in 0.05f64..0.9) {
        let p = KernelParams::new(alpha, b, 0.0).unwrap();
        let lo = log_det_at(&p, s, g, 64).unwrap();
        let hi = log_det_at(&p, s, g + 0.05, 64).unwrap();
        prop_assert!(lo <= 0.0 && hi < lo);
    }

    #[test]
    fn toeplitz_symbols_are_hermitian_positive(alpha in -0.4f64..1.5, b in -1.0f64..1.0, g in 0.0f64..0.95, t in 0.0f64..3.0) {
        let sym = SymbolSpec { alpha, b, gamma: g, arc_t: t };
        let c = fourier_coeffs(&sym, 24, 1e-10).unwrap();
        prop_assert!(c.hermitian_defect() < 1e-12);
        prop_assert!(log_toeplitz_det(&c, 24).unwrap().is_finite());
    }
}

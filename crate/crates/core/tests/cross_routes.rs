use std::f64::consts::PI;

use chgdet::asymptotics::log_asym_det;
use chgdet::fredholm::{log_det_converged, QuadratureGrid};
use chgdet::kernel::sine_kernel;
use chgdet::painleve::log_det_via_h;
use chgdet::stats::{counting_summary, default_nodes};
use chgdet::toeplitz::scaling_limit_check;
use chgdet::KernelParams;
use nalgebra::DMatrix;

fn params(alpha: f64, b: f64, gamma: f64) -> KernelParams {
    KernelParams::new(alpha, b, gamma).unwrap()
}

fn quad(p: &KernelParams, s: f64) -> f64 {
    log_det_converged(p, s, p.gamma, 1e-11).unwrap().value
}

#[test]
fn sine_route_matches_plain_nystrom() {
    // Independent discretization straight from sin(x−y)/(π(x−y)).
    let (s, gamma, n) = (2.5, 0.6, 96);
    let g = QuadratureGrid::legendre(s, n).unwrap();
    let m = DMatrix::from_fn(n, n, |i, j| {
        let k = if i == j { 1.0 / PI } else { sine_kernel(g.nodes[i], g.nodes[j]) };
        let e = if i == j { 1.0 } else { 0.0 };
        e - gamma * (g.weights[i] * g.weights[j]).sqrt() * k
    });
    let direct = m.determinant().ln();
    assert!((quad(&params(0.0, 0.0, gamma), s) - direct).abs() < 1e-12);
}

#[test]
fn determinant_is_even_in_beta() {
    for (a, b) in [(0.0, 0.4), (0.7, -1.1), (-0.3, 0.25)] {
        let plus = quad(&params(a, b, 0.5), 2.0);
        let minus = quad(&params(a, -b, 0.5), 2.0);
        assert!((plus - minus).abs() < 1e-10, "a={a} b={b}");
    }
}

#[test]
fn painleve_matches_quadrature_off_sine_point() {
    let p = params(0.5, 0.3, 0.5);
    for s in [1.0, 2.0] {
        let v = log_det_via_h(&p, s, 1e-3, 1e-10).unwrap();
        assert!((v.value - quad(&p, s)).abs() < 1e-6, "s={s}");
        assert!(v.imag_residue.abs() < 1e-6);
    }
    // α < 0 converges more slowly in t0; still inside the route budget.
    let p = params(-0.3, -0.7, 0.5);
    let v = log_det_via_h(&p, 1.0, 1e-3, 1e-10).unwrap();
    assert!((v.value - quad(&p, 1.0)).abs() < 1e-3);
}

#[test]
fn toeplitz_limit_off_sine_point() {
    let p = params(0.5, 0.3, 0.5);
    let q = quad(&p, 1.0);
    let e128 = (scaling_limit_check(&p, 1.0, 128).unwrap() - q).abs();
    let e256 = (scaling_limit_check(&p, 1.0, 256).unwrap() - q).abs();
    assert!(e256 < 1e-2 && e256 < e128);
    // observed first-order rate: halving the error per doubling of n
    assert!((e128 / e256 - 2.0).abs() < 0.05, "{e128} {e256}");
}

#[test]
fn asymptotic_error_shrinks_like_inverse_s() {
    let p = params(-0.3, 0.6, 0.4);
    let e: Vec<f64> = [10.0, 20.0, 40.0]
        .iter()
        .map(|&s| (quad(&p, s) - log_asym_det(&p, s).unwrap().total).abs())
        .collect();
    assert!(e[2] < e[1] && e[1] < e[0], "{e:?}");
    assert!(e[2] * 40.0 < 0.5, "{e:?}");
}

#[test]
fn counting_mean_includes_alpha_shift() {
    let p = params(0.5, 0.3, 0.0);
    let sum = counting_summary(&p, 20.0, default_nodes(20.0)).unwrap();
    assert!((sum.e_n - (40.0 / PI - 0.5)).abs() < 0.1, "{}", sum.e_n);
}

//! WebAssembly bindings for the static demo page in `www/`.
//!
//! Every entry point returns a JSON string; errors come back as a thrown
//! string so the page can show them next to the plot.

use chgdet::asymptotics::log_asym_det;
use chgdet::fredholm::log_det_converged;
use chgdet::painleve::{pv_integrate, DEFAULT_T0};
use chgdet::stats::{counting_summary, default_nodes};
use chgdet::KernelParams;
use serde::Serialize;
use wasm_bindgen::prelude::*;

// Looser than the CLI default so that sliders stay responsive.
const DEMO_TOL: f64 = 1e-8;

#[derive(Serialize)]
struct DetCurve {
    s: Vec<f64>,
    quadrature: Vec<f64>,
    /// `null` below s = 1 where the large-gap formula is meaningless.
    asymptotic: Vec<Option<f64>>,
}

#[derive(Serialize)]
struct Pmf {
    s: f64,
    e_n: f64,
    var_n: f64,
    pmf: Vec<f64>,
}

#[derive(Serialize)]
struct Trajectory {
    t: Vec<f64>,
    h_re: Vec<f64>,
    h_im: Vec<f64>,
}

fn err(e: impl std::fmt::Display) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn to_json<T: Serialize>(v: &T) -> Result<String, JsValue> {
    serde_json::to_string(v).map_err(err)
}

/// ln det(I − γK_s) on `points` equally spaced s in (0, s_max], by quadrature
/// and by the large-gap formula.
fn det_curve_json(alpha: f64, beta_im: f64, gamma: f64, s_max: f64, points: usize) -> chgdet::Result<DetCurve> {
    let p = KernelParams::new(alpha, beta_im, gamma)?;
    let points = points.clamp(2, 200);
    let mut out = DetCurve {
        s: Vec::with_capacity(points),
        quadrature: Vec::with_capacity(points),
        asymptotic: Vec::with_capacity(points),
    };
    for i in 1..=points {
        let s = s_max * i as f64 / points as f64;
        out.s.push(s);
        out.quadrature.push(log_det_converged(&p, s, gamma, DEMO_TOL)?.value);
        out.asymptotic.push(if s >= 1.0 { Some(log_asym_det(&p, s)?.total) } else { None });
    }
    Ok(out)
}

#[wasm_bindgen]
pub fn det_curve(alpha: f64, beta_im: f64, gamma: f64, s_max: f64, points: usize) -> Result<String, JsValue> {
    to_json(&det_curve_json(alpha, beta_im, gamma, s_max, points).map_err(err)?)
}

/// Distribution of the number of points in (−s, s).
#[wasm_bindgen]
pub fn counting_pmf(alpha: f64, beta_im: f64, s: f64) -> Result<String, JsValue> {
    let p = KernelParams::new(alpha, beta_im, 0.0).map_err(err)?;
    let sum = counting_summary(&p, s, default_nodes(s)).map_err(err)?;
    to_json(&Pmf {
        s: sum.s,
        e_n: sum.e_n,
        var_n: sum.var_n,
        pmf: sum.pmf,
    })
}

/// Real and imaginary parts of the Hamiltonian H(t) from t0 to t = 4s.
#[wasm_bindgen]
pub fn painleve_trajectory(alpha: f64, beta_im: f64, gamma: f64, s: f64) -> Result<String, JsValue> {
    let p = KernelParams::new(alpha, beta_im, gamma).map_err(err)?;
    let traj = pv_integrate(&p, DEFAULT_T0, 4.0 * s, DEMO_TOL).map_err(err)?;
    to_json(&Trajectory {
        t: traj.states.iter().map(|x| x.t).collect(),
        h_re: traj.hamiltonians.iter().map(|h| h.re).collect(),
        h_im: traj.hamiltonians.iter().map(|h| h.im).collect(),
    })
}

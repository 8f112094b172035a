//! The coupled Painlevé V system along τ = −it and the integral
//! ln det(I − γK_s) = ∫₀^{−4is} H(τ) dτ = Re ∫₀^{4s} (−i) H(−it) dt.
//!
//! With τ·d/dτ = t·d/dt on the ray, the system is integrated in real t as
//! dX/dt = F(X, −it)/t, together with the running integral of −iH as a fifth
//! component so the determinant is available at every step.

use std::f64::consts::PI;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::asymptotics::{c_of_gamma, small_t_prefactor};
use crate::fredholm::{log_det_at, log_det_converged};
use crate::kernel::KernelParams;
use crate::ode::{self, State};
use crate::{Error, Result};

/// Default starting point of the integration.
pub const DEFAULT_T0: f64 = 1e-3;
const MAX_STEP: f64 = 0.5;
const BLOW_UP: f64 = 1e8;

/// (u₁, u₂, v₁, v₂) at τ = −it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PVState {
    pub t: f64,
    pub u1: Complex64,
    pub u2: Complex64,
    pub v1: Complex64,
    pub v2: Complex64,
}

impl PVState {
    fn tau(&self) -> Complex64 {
        Complex64::new(0.0, -self.t)
    }
}

/// σ·H_V(u, v, σ) = u²v(v−1)² − σuv − αu(v²−1) − βu(v−1)².
fn sigma_hv(u: Complex64, v: Complex64, sigma: Complex64, alpha: f64, beta: Complex64) -> Complex64 {
    let vm = v - 1.0;
    u * u * v * vm * vm - sigma * u * v - alpha * u * (v * v - 1.0) - beta * u * vm * vm
}

fn hamiltonian_tau(
    tau: Complex64,
    [u1, u2, v1, v2]: [Complex64; 4],
    alpha: f64,
    beta: Complex64,
) -> Complex64 {
    // ½ H_V(u, v, ±τ/2) = σH_V / (±τ)
    let h1 = sigma_hv(u1, v1, tau / 2.0, alpha, beta) / tau;
    let h2 = sigma_hv(u2, v2, -tau / 2.0, alpha, beta) / (-tau);
    h1 - h2 + u1 * u2 * (v1 + v2) * (v1 - 1.0) * (v2 - 1.0) / tau
}

/// H(τ) = ½[H_V(u₁,v₁,τ/2) − H_V(u₂,v₂,−τ/2)] + u₁u₂(v₁+v₂)(v₁−1)(v₂−1)/τ at τ = −it.
pub fn pv_hamiltonian(state: &PVState, params: &KernelParams) -> Complex64 {
    hamiltonian_tau(
        state.tau(),
        [state.u1, state.u2, state.v1, state.v2],
        params.alpha,
        params.beta(),
    )
}

/// τ·d/dτ of (u₁, u₂, v₁, v₂).
fn tau_rhs(tau: Complex64, [u1, u2, v1, v2]: [Complex64; 4], alpha: f64, beta: Complex64) -> [Complex64; 4] {
    let ab = 2.0 * (alpha + beta);
    let (w1, w2) = (v1 - 1.0, v2 - 1.0);
    let f1 = tau / 2.0 * u1 - u1 * u1 * w1 * (3.0 * v1 - 1.0) - u1 * u2 * w2 * (2.0 * v1 + v2 - 1.0)
        + ab * u1 * v1
        - 2.0 * beta * u1;
    let f2 = -tau / 2.0 * u2 - u2 * u2 * w2 * (3.0 * v2 - 1.0) - u1 * u2 * w1 * (v1 + 2.0 * v2 - 1.0)
        + ab * u2 * v2
        - 2.0 * beta * u2;
    let f3 = -tau / 2.0 * v1 + 2.0 * u1 * v1 * w1 * w1 + u2 * (v1 + v2) * w1 * w2
        - alpha * (v1 * v1 - 1.0)
        - beta * w1 * w1;
    let f4 = tau / 2.0 * v2 + 2.0 * u2 * v2 * w2 * w2 + u1 * (v1 + v2) * w1 * w2
        - alpha * (v2 * v2 - 1.0)
        - beta * w2 * w2;
    [f1, f2, f3, f4]
}

/// d/dt of (u₁, u₂, v₁, v₂) along τ = −it.
pub fn pv_rhs(state: &PVState, params: &KernelParams) -> [Complex64; 4] {
    let f = tau_rhs(
        state.tau(),
        [state.u1, state.u2, state.v1, state.v2],
        params.alpha,
        params.beta(),
    );
    f.map(|v| v / state.t)
}

fn check_t0(t0: f64, max: f64) -> Result<()> {
    if !(t0 > 0.0 && t0 <= max) {
        return Err(Error::InvalidParameter {
            name: "t0",
            value: t0,
            reason: "starting point outside the small-t range",
        });
    }
    Ok(())
}

/// Leading-order small-t data: v₁ = v₂ = 1 and u₁, u₂ ∝ t^{2α}.
pub fn pv_init_leading(params: &KernelParams, t0: f64) -> Result<PVState> {
    params.validate()?;
    check_t0(t0, 0.01)?;
    let p = small_t_prefactor(params)?;
    let t2a = t0.powf(2.0 * params.alpha);
    let one = Complex64::new(1.0, 0.0);
    Ok(PVState {
        t: t0,
        u1: -p * (PI * params.b).exp() * t2a,
        u2: p * (-PI * params.b).exp() * t2a,
        v1: one,
        v2: one,
    })
}

/// Small-t data including the first corrections, obtained by substituting
/// the leading terms back into the system:
///
/// ```text
/// v₁ = 1 − κτ,   v₂ = 1 + κτ,   κ = 1/(2(1+2α)),
/// u₁ = u₁⁰ (1 + κ(1−2β)τ + δ),   u₂ = u₂⁰ (1 − κ(1−2β)τ + δ),
/// δ = −2iκ (A₁ − A₂) t^{2α+1}/(2α+1),   u_k⁰ = A_k t^{2α}.
/// ```
///
/// The leading terms alone leave an O(t0) error in the determinant.
pub fn pv_init(params: &KernelParams, t0: f64) -> Result<PVState> {
    let lead = pv_init_leading(params, t0)?;
    let alpha = params.alpha;
    let beta = params.beta();
    let kappa = 1.0 / (2.0 * (1.0 + 2.0 * alpha));
    let tau = lead.tau();
    let t2a = t0.powf(2.0 * alpha);
    let (a1, a2) = (lead.u1 / t2a, lead.u2 / t2a);
    let delta = Complex64::new(0.0, -2.0 * kappa) * (a1 - a2) * t0.powf(2.0 * alpha + 1.0) / (2.0 * alpha + 1.0);
    let lin = kappa * (1.0 - 2.0 * beta) * tau;
    Ok(PVState {
        t: t0,
        u1: lead.u1 * (1.0 + lin + delta),
        u2: lead.u2 * (1.0 - lin + delta),
        v1: 1.0 - kappa * tau,
        v2: 1.0 + kappa * tau,
    })
}

/// ∫₀^{t0} (−i) H dt with H from its leading small-t term.
pub fn head_integral(params: &KernelParams, t0: f64) -> Result<Complex64> {
    let p = small_t_prefactor(params)?;
    let e = 2.0 * params.alpha + 1.0;
    let hc = p * (PI * params.b).cosh() / e;
    Ok(-Complex64::i() * hc * t0.powf(e) / e)
}

/// A sampled solution together with H and the running log-determinant integral.
#[derive(Debug, Clone)]
pub struct PVTrajectory {
    pub params: KernelParams,
    pub t0: f64,
    pub tol: f64,
    pub states: Vec<PVState>,
    pub hamiltonians: Vec<Complex64>,
    /// ∫₀^{t} (−i) H dt; its real part approximates ln det(I − γK_{t/4}).
    pub integrals: Vec<Complex64>,
}

fn system(params: KernelParams) -> impl Fn(f64, &State<5>) -> State<5> {
    let alpha = params.alpha;
    let beta = params.beta();
    move |t, y| {
        let tau = Complex64::new(0.0, -t);
        let x = [y[0], y[1], y[2], y[3]];
        let f = tau_rhs(tau, x, alpha, beta);
        let h = hamiltonian_tau(tau, x, alpha, beta);
        [f[0] / t, f[1] / t, f[2] / t, f[3] / t, -Complex64::i() * h]
    }
}

/// Integrate from `pv_init(t0)` to `t1`.
pub fn pv_integrate(params: &KernelParams, t0: f64, t1: f64, tol: f64) -> Result<PVTrajectory> {
    pv_integrate_with_checkpoints(params, t0, t1, tol, &[])
}

/// As [`pv_integrate`], with steps landing exactly on each requested t.
pub fn pv_integrate_with_checkpoints(
    params: &KernelParams,
    t0: f64,
    t1: f64,
    tol: f64,
    checkpoints: &[f64],
) -> Result<PVTrajectory> {
    params.validate()?;
    if !(t0 > 0.0 && t0 < t1 && t1 <= 200.0) {
        return Err(Error::InvalidParameter {
            name: "t1",
            value: t1,
            reason: "need 0 < t0 < t1 <= 200",
        });
    }
    if !(1e-12..=1e-6).contains(&tol) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "must lie in [1e-12, 1e-6]",
        });
    }
    let init = pv_init(params, t0)?;
    let head = head_integral(params, t0)?;
    let mut stops: Vec<f64> = checkpoints.iter().copied().filter(|&t| t > t0 && t < t1).collect();
    stops.push(t1);
    stops.sort_by(f64::total_cmp);
    stops.dedup();

    let f = system(*params);
    let mut states = vec![init];
    let mut hamiltonians = vec![pv_hamiltonian(&init, params)];
    let mut integrals = vec![head];
    let opts = ode::Options {
        rtol: tol,
        atol: 1e-2 * tol,
        h_init: 1e-2 * t0,
        h_max: MAX_STEP,
        blow_up: BLOW_UP,
    };
    let y0 = [init.u1, init.u2, init.v1, init.v2, head];
    ode::integrate(&f, t0, y0, &stops, &opts, |t, y| {
        let s = PVState {
            t,
            u1: y[0],
            u2: y[1],
            v1: y[2],
            v2: y[3],
        };
        hamiltonians.push(pv_hamiltonian(&s, params));
        integrals.push(y[4]);
        states.push(s);
    })?;
    Ok(PVTrajectory {
        params: *params,
        t0,
        tol,
        states,
        hamiltonians,
        integrals,
    })
}

impl PVTrajectory {
    /// Index of the state sitting exactly at `t` (checkpoints are hit exactly).
    pub fn index_at(&self, t: f64) -> Option<usize> {
        self.states.iter().position(|s| s.t == t)
    }

    /// CSV with columns t and the real/imaginary parts of u₁, u₂, v₁, v₂, H.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,u1_re,u1_im,u2_re,u2_im,v1_re,v1_im,v2_re,v2_im,H_re,H_im\n");
        for (s, h) in self.states.iter().zip(&self.hamiltonians) {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{},{}",
                s.t, s.u1.re, s.u1.im, s.u2.re, s.u2.im, s.v1.re, s.v1.im, s.v2.re, s.v2.im, h.re, h.im
            );
        }
        out
    }

    /// max over the trajectory of |d(τH)/dτ + ½(u₁v₁ − u₂v₂)|.
    ///
    /// d(τH)/dτ = H + t dH/dt is taken from a five-point central difference of
    /// H along short RK4 continuations of each stored state.
    pub fn hamiltonian_identity_residual(&self) -> f64 {
        let f = system(self.params);
        let mut worst = 0f64;
        for s in &self.states {
            let h = 1e-3 * (s.t / 4.0).min(1.0);
            let y = [s.u1, s.u2, s.v1, s.v2, Complex64::new(0.0, 0.0)];
            let ham = |dt: f64| {
                let z = ode::rk4_step(&f, s.t, &y, dt);
                let p = PVState {
                    t: s.t + dt,
                    u1: z[0],
                    u2: z[1],
                    v1: z[2],
                    v2: z[3],
                };
                pv_hamiltonian(&p, &self.params)
            };
            let dh = (ham(-2.0 * h) - 8.0 * ham(-h) + 8.0 * ham(h) - ham(2.0 * h)) / (12.0 * h);
            let d_tau_h = pv_hamiltonian(s, &self.params) + s.t * dh;
            let r = (d_tau_h + 0.5 * (s.u1 * s.v1 - s.u2 * s.v2)).norm();
            worst = worst.max(r);
        }
        worst
    }
}

/// Distances from the large-t leading behavior at one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LimitGaps {
    pub t: f64,
    /// |u₁v₁ − ic|
    pub product1: f64,
    /// |u₂v₂ + ic|
    pub product2: f64,
    /// |H + ic − 2c²/τ|
    pub hamiltonian: f64,
}

pub fn limit_gaps(state: &PVState, params: &KernelParams) -> Result<LimitGaps> {
    let c = c_of_gamma(params.gamma)?;
    let ic = Complex64::new(0.0, c);
    let h = pv_hamiltonian(state, params);
    Ok(LimitGaps {
        t: state.t,
        product1: (state.u1 * state.v1 - ic).norm(),
        product2: (state.u2 * state.v2 + ic).norm(),
        hamiltonian: (h + ic - 2.0 * c * c / state.tau()).norm(),
    })
}

/// Log-determinant from the Hamiltonian integral.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ViaH {
    pub value: f64,
    /// Imaginary part of the integral, zero for the exact solution.
    pub imag_residue: f64,
    pub t0: f64,
    pub steps: usize,
}

pub fn log_det_via_h(params: &KernelParams, s: f64, t0: f64, tol: f64) -> Result<ViaH> {
    params.validate()?;
    if !(s > 0.0 && s <= 10.0) {
        return Err(Error::InvalidParameter {
            name: "s",
            value: s,
            reason: "the Painlevé route supports 0 < s <= 10",
        });
    }
    check_t0(t0, 1e-3)?;
    if params.gamma == 0.0 {
        return Ok(ViaH {
            value: 0.0,
            imag_residue: 0.0,
            t0,
            steps: 0,
        });
    }
    let traj = pv_integrate(params, t0, 4.0 * s, tol)?;
    let total = *traj.integrals.last().expect("trajectory is never empty");
    Ok(ViaH {
        value: total.re,
        imag_residue: total.im,
        t0,
        steps: traj.states.len() - 1,
    })
}

/// H(−4is) from the trajectory next to (i/4)·d/ds ln det(I − γK_s) from
/// central differences of the quadrature route at a fixed node count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HOracle {
    pub s: f64,
    pub from_trajectory: Complex64,
    pub from_quadrature: Complex64,
    pub gap: f64,
}

pub fn h_oracle(params: &KernelParams, s: f64, t0: f64, tol: f64, step: f64) -> Result<HOracle> {
    let t = 4.0 * s;
    let traj = pv_integrate(params, t0, t, tol)?;
    let h = *traj.hamiltonians.last().expect("trajectory is never empty");
    let n = log_det_converged(params, s + step, params.gamma, 1e-12)?.n_used;
    let plus = log_det_at(params, s + step, params.gamma, n)?;
    let minus = log_det_at(params, s - step, params.gamma, n)?;
    let fd = Complex64::new(0.0, 0.25) * ((plus - minus) / (2.0 * step));
    Ok(HOracle {
        s,
        from_trajectory: h,
        from_quadrature: fd,
        gap: (h - fd).norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn params(alpha: f64, b: f64, gamma: f64) -> KernelParams {
        KernelParams::new(alpha, b, gamma).unwrap()
    }

    fn sample_state() -> PVState {
        PVState {
            t: 1.7,
            u1: c(0.3, -0.2),
            u2: c(-0.1, 0.4),
            v1: c(0.8, 0.5),
            v2: c(1.3, -0.6),
        }
    }

    #[test]
    fn hamiltonian_vanishes_without_u() {
        let mut s = sample_state();
        s.u1 = c(0.0, 0.0);
        s.u2 = c(0.0, 0.0);
        assert_eq!(pv_hamiltonian(&s, &params(0.4, 0.2, 0.5)), c(0.0, 0.0));
    }

    #[test]
    fn hamiltonian_relabeling_symmetry() {
        let s = sample_state();
        let (alpha, beta) = (0.4, c(0.0, 0.2));
        let tau = c(0.0, -s.t);
        let h = hamiltonian_tau(tau, [s.u1, s.u2, s.v1, s.v2], alpha, beta);
        let swapped = hamiltonian_tau(-tau, [s.u2, s.u1, s.v2, s.v1], alpha, beta);
        assert!((h + swapped).norm() < 1e-14);
    }

    #[test]
    fn rhs_is_hamiltonian_flow() {
        // dv_k/dτ = ∂H/∂u_k, du_k/dτ = −∂H/∂v_k, holomorphic derivatives by central differences.
        let p = params(0.4, 0.2, 0.5);
        let s = sample_state();
        let tau = s.tau();
        let x = [s.u1, s.u2, s.v1, s.v2];
        let f = tau_rhs(tau, x, p.alpha, p.beta());
        let d_tau: Vec<Complex64> = f.iter().map(|v| v / tau).collect();
        let eps = 1e-6;
        let partial = |k: usize| {
            let mut a = x;
            let mut b = x;
            a[k] += eps;
            b[k] -= eps;
            (hamiltonian_tau(tau, a, p.alpha, p.beta()) - hamiltonian_tau(tau, b, p.alpha, p.beta())) / (2.0 * eps)
        };
        let pairs = [(2, 0, 1.0), (3, 1, 1.0), (0, 2, -1.0), (1, 3, -1.0)];
        for (lhs, var, sign) in pairs {
            let expect = partial(var) * sign;
            assert!((d_tau[lhs] - expect).norm() < 1e-6 * expect.norm().max(1.0), "component {lhs}");
        }
    }

    #[test]
    fn rhs_on_trivial_solution() {
        let p = params(0.0, 0.0, 0.0);
        let s = PVState {
            t: 2.0,
            u1: c(0.0, 0.0),
            u2: c(0.0, 0.0),
            v1: c(1.0, 0.0),
            v2: c(1.0, 0.0),
        };
        let d = pv_rhs(&s, &p);
        assert_eq!(d[0], c(0.0, 0.0));
        assert_eq!(d[1], c(0.0, 0.0));
        assert!((d[2] - c(0.0, 0.5)).norm() < 1e-15);
        assert!((d[3] - c(0.0, -0.5)).norm() < 1e-15);
    }

    #[test]
    fn initial_data() {
        let z = pv_init(&params(0.3, 0.1, 0.0), 1e-3).unwrap();
        assert_eq!((z.u1, z.u2), (c(0.0, 0.0), c(0.0, 0.0)));
        let p = params(0.5, 0.3, 0.5);
        let lead = pv_init_leading(&p, 1e-3).unwrap();
        assert!((lead.u1 - c(0.0, 7.379_524_047_944_815e-5)).norm() < 1e-18);
        assert_eq!((lead.v1, lead.v2), (c(1.0, 0.0), c(1.0, 0.0)));
        // u₂/u₁ = −e^{2πiβ}
        let ratio = lead.u2 / lead.u1;
        assert!((ratio + (-2.0 * PI * 0.3f64).exp()).norm() < 1e-15);
        let full = pv_init(&p, 1e-3).unwrap();
        assert!((full.u1 / lead.u1 - 1.0).norm() < 1e-3);
        assert!((full.v1 - 1.0).norm() < 1e-3);
        assert!(pv_init(&p, 0.02).is_err());
    }

    #[test]
    fn small_t_hamiltonian_matches_closed_form() {
        let p = params(0.5, 0.3, 0.5);
        let t = 1e-3;
        let r = crate::asymptotics::pv_small_t_ref(&p, t).unwrap();
        // The O(τ) parts of v₁, v₂ enter H at the same order as u, so the
        // leading-order state alone misses the 1/(2α+1) factor.
        let h = pv_hamiltonian(&pv_init(&p, t).unwrap(), &p);
        assert!((h - r.h).norm() < 5.0 * t * r.h.norm());
        let bare = pv_hamiltonian(&pv_init_leading(&p, t).unwrap(), &p);
        assert!((bare - r.h * (2.0 * p.alpha + 1.0)).norm() < 1e-15);
    }

    #[test]
    fn trivial_trajectory_stays_on_invariant_subspace() {
        let p = params(0.0, 0.0, 0.0);
        let traj = pv_integrate(&p, 1e-3, 20.0, 1e-10).unwrap();
        for s in &traj.states {
            assert!(s.u1.norm() < 1e-10 && s.u2.norm() < 1e-10);
            // |v| = 1 up to the O(t0²) error of the starting data.
            assert!((s.v1.norm() - 1.0).abs() < 1e-6 && (s.v2.norm() - 1.0).abs() < 1e-6);
        }
        assert!(traj.states.windows(2).all(|w| w[0].t < w[1].t));
    }

    #[test]
    fn trajectory_invariants() {
        let p = params(0.5, 0.3, 0.5);
        let traj = pv_integrate_with_checkpoints(&p, 1e-3, 8.0, 1e-10, &[2.0, 4.0]).unwrap();
        assert!(traj.index_at(2.0).is_some() && traj.index_at(4.0).is_some());
        assert_eq!(traj.states.last().unwrap().t, 8.0);
        for (s, h) in traj.states.iter().zip(&traj.hamiltonians) {
            assert!((pv_hamiltonian(s, &p) - h).norm() <= 1e-12 * h.norm().max(1e-300));
        }
        assert!(traj.hamiltonian_identity_residual() < 1e-9);
        // Finite-difference consistency of the right-hand side along the trajectory.
        let i = traj.index_at(4.0).unwrap();
        let f = system(p);
        let s = traj.states[i];
        let y = [s.u1, s.u2, s.v1, s.v2, c(0.0, 0.0)];
        let hstep = 1e-3;
        let fwd = ode::rk4_step(&f, s.t, &y, hstep);
        let bwd = ode::rk4_step(&f, s.t, &y, -hstep);
        let rhs = pv_rhs(&s, &p);
        for k in 0..4 {
            let fd = (fwd[k] - bwd[k]) / (2.0 * hstep);
            assert!((fd - rhs[k]).norm() < 1e-5, "component {k}");
        }
        let csv = traj.to_csv();
        assert!(csv.starts_with("t,u1_re,u1_im"));
        assert_eq!(csv.lines().count(), traj.states.len() + 1);
    }

    #[test]
    fn sine_case_matches_quadrature() {
        let p = params(0.0, 0.0, 0.5);
        let v = log_det_via_h(&p, 1.0, 1e-3, 1e-10).unwrap();
        assert!((v.value + 0.369_802_404_026_596_4).abs() < 1e-5, "{}", v.value);
        assert_eq!(log_det_via_h(&params(0.2, 0.1, 0.0), 2.0, 1e-3, 1e-10).unwrap().value, 0.0);
    }

    #[test]
    fn head_truncation_sensitivity() {
        let p = params(0.5, 0.3, 0.5);
        let a = log_det_via_h(&p, 1.0, 1e-3, 1e-11).unwrap().value;
        let b = log_det_via_h(&p, 1.0, 1e-4, 1e-11).unwrap().value;
        assert!((a - b).abs() < 1e-5, "{a} {b}");
    }
}

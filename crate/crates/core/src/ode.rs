//! Dormand–Prince 5(4) with PI step-size control for complex state vectors.

use num_complex::Complex64;

use crate::{Error, Result};

pub(crate) type State<const N: usize> = [Complex64; N];

#[derive(Debug, Clone, Copy)]
pub(crate) struct Options {
    pub rtol: f64,
    /// Components below this magnitude are controlled absolutely.
    pub atol: f64,
    pub h_init: f64,
    pub h_max: f64,
    /// Abort when any component exceeds this magnitude.
    pub blow_up: f64,
}

const C2: f64 = 1.0 / 5.0;
const C3: f64 = 3.0 / 10.0;
const C4: f64 = 4.0 / 5.0;
const C5: f64 = 8.0 / 9.0;
const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// 5th-order minus embedded 4th-order weights.
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn combine<const N: usize>(y: &State<N>, h: f64, terms: &[(f64, &State<N>)]) -> State<N> {
    let mut out = *y;
    for (i, o) in out.iter_mut().enumerate() {
        let mut acc = Complex64::new(0.0, 0.0);
        for (c, k) in terms {
            acc += k[i] * *c;
        }
        *o += acc * h;
    }
    out
}

/// Integrates y' = f(t, y) from t0, stopping exactly at every checkpoint
/// (ascending, all > t0). `on_step` sees every accepted step. Returns the
/// states at the checkpoints.
pub(crate) fn integrate<const N: usize, F, G>(
    f: F,
    t0: f64,
    y0: State<N>,
    checkpoints: &[f64],
    opts: &Options,
    mut on_step: G,
) -> Result<Vec<State<N>>>
where
    F: Fn(f64, &State<N>) -> State<N>,
    G: FnMut(f64, &State<N>),
{
    let mut t = t0;
    let mut y = y0;
    let mut k1 = f(t, &y);
    let mut h = opts.h_init.min(opts.h_max);
    let mut err_old = 1e-4f64;
    let mut out = Vec::with_capacity(checkpoints.len());
    for &target in checkpoints {
        while t < target {
            let remaining = target - t;
            let last = h >= remaining;
            let step = if last { remaining } else { h };
            if step <= 1e-14 * t.abs().max(1e-300) {
                return Err(Error::StepUnderflow { t, h: step });
            }
            let k2 = f(t + C2 * step, &combine(&y, step, &[(A21, &k1)]));
            let k3 = f(t + C3 * step, &combine(&y, step, &[(A31, &k1), (A32, &k2)]));
            let k4 = f(
                t + C4 * step,
                &combine(&y, step, &[(A41, &k1), (A42, &k2), (A43, &k3)]),
            );
            let k5 = f(
                t + C5 * step,
                &combine(&y, step, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]),
            );
            let k6 = f(
                t + step,
                &combine(&y, step, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]),
            );
            let y_new = combine(&y, step, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
            let t_new = if last { target } else { t + step };
            let k7 = f(t_new, &y_new);

            let mut sq = 0.0;
            for i in 0..N {
                let e = (k1[i] * E1 + k3[i] * E3 + k4[i] * E4 + k5[i] * E5 + k6[i] * E6 + k7[i] * E7) * step;
                let sc = opts.atol + opts.rtol * y[i].norm().max(y_new[i].norm());
                sq += (e.norm() / sc).powi(2);
            }
            let err = (sq / N as f64).sqrt();
            if !err.is_finite() {
                h = 0.2 * step;
                continue;
            }
            if err <= 1.0 {
                let fac = (0.9 * err.max(1e-12).powf(-0.17) * err_old.powf(0.04)).clamp(0.2, 5.0);
                err_old = err.max(1e-4);
                t = t_new;
                y = y_new;
                k1 = k7;
                if let Some(m) = y.iter().map(|v| v.norm()).reduce(f64::max) {
                    if !(m <= opts.blow_up) {
                        return Err(Error::BlowUp { t, magnitude: m });
                    }
                }
                on_step(t, &y);
                // A step clipped to hit a checkpoint says little about the next one.
                if !last {
                    h = (step * fac).min(opts.h_max);
                }
            } else {
                h = step * (0.9 * err.powf(-0.2)).max(0.2);
            }
        }
        out.push(y);
    }
    Ok(out)
}

/// One classical Runge–Kutta step; used for short local stencils.
pub(crate) fn rk4_step<const N: usize, F>(f: &F, t: f64, y: &State<N>, h: f64) -> State<N>
where
    F: Fn(f64, &State<N>) -> State<N>,
{
    let k1 = f(t, y);
    let k2 = f(t + 0.5 * h, &combine(y, h, &[(0.5, &k1)]));
    let k3 = f(t + 0.5 * h, &combine(y, h, &[(0.5, &k2)]));
    let k4 = f(t + h, &combine(y, h, &[(1.0, &k3)]));
    combine(y, h, &[(1.0 / 6.0, &k1), (1.0 / 3.0, &k2), (1.0 / 3.0, &k3), (1.0 / 6.0, &k4)])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(tol: f64) -> Options {
        Options {
            rtol: tol,
            atol: tol,
            h_init: 1e-3,
            h_max: 0.5,
            blow_up: 1e8,
        }
    }

    #[test]
    fn exponential_rotation() {
        // y' = i y, y(0) = 1
        let f = |_t: f64, y: &State<1>| [Complex64::i() * y[0]];
        let mut steps = 0;
        let out = integrate(f, 0.0, [Complex64::new(1.0, 0.0)], &[1.0, 10.0, 30.0], &opts(1e-10), |_, _| steps += 1).unwrap();
        for (y, t) in out.iter().zip([1.0f64, 10.0, 30.0]) {
            assert!((y[0] - Complex64::new(t.cos(), t.sin())).norm() < 1e-8, "t={t}");
        }
        assert!(steps >= 60, "max step must cap at 0.5: {steps}");
    }

    #[test]
    fn tolerance_controls_error() {
        // y' = -2t y, y = exp(-t²)
        let f = |t: f64, y: &State<1>| [y[0] * (-2.0 * t)];
        let errs: Vec<f64> = [1e-6, 1e-10]
            .iter()
            .map(|&tol| {
                let y = integrate(f, 0.0, [Complex64::new(1.0, 0.0)], &[2.0], &opts(tol), |_, _| {}).unwrap();
                (y[0][0].re - (-4f64).exp()).abs()
            })
            .collect();
        assert!(errs[1] < 1e-10 && errs[1] < errs[0]);
    }

    #[test]
    fn blow_up_is_reported() {
        // y' = y², y(0) = 1 blows up at t = 1.
        let f = |_t: f64, y: &State<1>| [y[0] * y[0]];
        let r = integrate(f, 0.0, [Complex64::new(1.0, 0.0)], &[2.0], &opts(1e-8), |_, _| {});
        assert!(matches!(r, Err(Error::BlowUp { .. }) | Err(Error::StepUnderflow { .. })));
    }

    #[test]
    fn rk4_is_fourth_order() {
        let f = |_t: f64, y: &State<1>| [y[0]];
        let one = [Complex64::new(1.0, 0.0)];
        let e1 = (rk4_step(&f, 0.0, &one, 0.1)[0].re - 0.1f64.exp()).abs();
        let e2 = (rk4_step(&f, 0.0, &one, 0.05)[0].re - 0.05f64.exp()).abs();
        assert!((e1 / e2 - 32.0).abs() < 2.0);
    }
}

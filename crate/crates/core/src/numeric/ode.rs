//! Adaptive Dormand–Prince 5(4) integrator for first-order systems.

use crate::error::{Error, Result};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Difference between the 5th- and embedded 4th-order weights.
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
    /// Abort when any component exceeds this magnitude.
    pub blowup: f64,
}

impl Default for OdeOptions {
    fn default() -> Self {
        Self {
            rtol: 1e-10,
            atol: 1e-10,
            max_steps: 200_000,
            blowup: f64::INFINITY,
        }
    }
}

impl OdeOptions {
    pub fn tol(rtol: f64, atol: f64) -> Self {
        Self {
            rtol,
            atol,
            ..Self::default()
        }
    }
}

/// Outcome of an integration that may stop early on blow-up.
#[derive(Debug, Clone, PartialEq)]
pub enum Endpoint {
    Reached(Vec<f64>),
    /// State at the time where the bound was exceeded.
    BlewUp { t: f64, y: Vec<f64> },
}

/// Integrates `y' = f(t, y)` from `t0` to `t1` (either direction).
pub fn integrate<F>(f: F, t0: f64, y0: &[f64], t1: f64, opts: &OdeOptions) -> Result<Vec<f64>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    match integrate_guarded(f, t0, y0, t1, opts)? {
        Endpoint::Reached(y) => Ok(y),
        Endpoint::BlewUp { t, .. } => Err(Error::Integration {
            t,
            detail: format!("solution exceeded {:e}", opts.blowup),
        }),
    }
}

/// Integrates through the ordered output times, returning the state at each.
pub fn integrate_through<F>(mut f: F, t0: f64, y0: &[f64], times: &[f64], opts: &OdeOptions) -> Result<Vec<Vec<f64>>>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let mut out = Vec::with_capacity(times.len());
    let mut t = t0;
    let mut y = y0.to_vec();
    for &target in times {
        y = integrate(&mut f, t, &y, target, opts)?;
        t = target;
        out.push(y.clone());
    }
    Ok(out)
}

pub fn integrate_guarded<F>(mut f: F, t0: f64, y0: &[f64], t1: f64, opts: &OdeOptions) -> Result<Endpoint>
where
    F: FnMut(f64, &[f64], &mut [f64]),
{
    let n = y0.len();
    let mut y = y0.to_vec();
    if t1 == t0 {
        return Ok(Endpoint::Reached(y));
    }
    let span = t1 - t0;
    let dir = span.signum();
    let mut t = t0;
    let mut k: Vec<Vec<f64>> = vec![vec![0.0; n]; 7];
    let mut tmp = vec![0.0; n];
    let mut y_new = vec![0.0; n];

    f(t, &y, &mut k[0]);
    let mut h = initial_step(&y, &k[0], span.abs(), opts) * dir;
    let mut steps = 0usize;

    while (t1 - t) * dir > 0.0 {
        steps += 1;
        if steps > opts.max_steps {
            return Err(Error::Integration {
                t,
                detail: format!("exceeded {} steps", opts.max_steps),
            });
        }
        let last = (t + h - t1) * dir >= 0.0;
        if last {
            h = t1 - t;
        }
        for s in 1..7 {
            for i in 0..n {
                let mut acc = y[i];
                for (j, kj) in k.iter().enumerate().take(s) {
                    acc += h * A[s][j] * kj[i];
                }
                tmp[i] = acc;
            }
            f(t + C[s] * h, &tmp, &mut k[s]);
        }
        // Stage 7 is evaluated at the 5th-order solution (FSAL).
        y_new.copy_from_slice(&tmp);

        let mut err_sq = 0.0;
        for i in 0..n {
            let mut e = 0.0;
            for (s, ks) in k.iter().enumerate() {
                e += E[s] * ks[i];
            }
            let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            err_sq += (h * e / sc).powi(2);
        }
        let err = (err_sq / n as f64).sqrt();

        if !err.is_finite() {
            h *= 0.25;
            if h.abs() < 1e-14 * t.abs().max(1.0) {
                return Err(Error::Integration {
                    t,
                    detail: "non-finite error estimate".into(),
                });
            }
            continue;
        }

        if err <= 1.0 {
            t = if last { t1 } else { t + h };
            y.copy_from_slice(&y_new);
            k.swap(0, 6);
            if y.iter().any(|v| v.abs() > opts.blowup) {
                return Ok(Endpoint::BlewUp { t, y });
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            h *= factor;
        } else {
            h *= (0.9 * err.powf(-0.2)).clamp(0.1, 1.0);
            if h.abs() < 1e-14 * t.abs().max(1.0) {
                return Err(Error::Integration {
                    t,
                    detail: format!("step size underflow (error estimate {err:e})"),
                });
            }
        }
    }
    Ok(Endpoint::Reached(y))
}

fn initial_step(y: &[f64], dy: &[f64], span: f64, opts: &OdeOptions) -> f64 {
    let mut d0 = 0.0;
    let mut d1 = 0.0;
    for (yi, di) in y.iter().zip(dy) {
        let sc = opts.atol + opts.rtol * yi.abs();
        d0 += (yi / sc).powi(2);
        d1 += (di / sc).powi(2);
    }
    let n = y.len().max(1) as f64;
    let (d0, d1) = ((d0 / n).sqrt(), (d1 / n).sqrt());
    let h = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
    h.min(span).max(1e-12 * span)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_growth() {
        let y = integrate(|_, y, d| d[0] = y[0], 0.0, &[1.0], 2.0, &OdeOptions::tol(1e-12, 1e-12)).unwrap();
        assert!((y[0] - 2f64.exp()).abs() < 1e-10);
    }

    #[test]
    fn backward_oscillator() {
        let rhs = |_: f64, y: &[f64], d: &mut [f64]| {
            d[0] = y[1];
            d[1] = -y[0];
        };
        let y = integrate(rhs, 3.0, &[3f64.sin(), 3f64.cos()], 0.5, &OdeOptions::tol(1e-12, 1e-12)).unwrap();
        assert!((y[0] - 0.5f64.sin()).abs() < 1e-10);
        assert!((y[1] - 0.5f64.cos()).abs() < 1e-10);
    }

    #[test]
    fn reports_blowup() {
        // y' = y^2 from y(0)=1 diverges at t = 1.
        let opts = OdeOptions {
            blowup: 1e6,
            ..OdeOptions::default()
        };
        match integrate_guarded(|_, y, d| d[0] = y[0] * y[0], 0.0, &[1.0], 2.0, &opts).unwrap() {
            Endpoint::BlewUp { t, y } => {
                assert!(t < 1.0 && y[0] > 1e6);
            }
            other => panic!("expected blow-up, got {other:?}"),
        }
    }

    #[test]
    fn output_times_are_hit() {
        let ys = integrate_through(|_, y, d| d[0] = -y[0], 0.0, &[1.0], &[0.5, 1.0, 1.5], &OdeOptions::tol(1e-12, 1e-14))
            .unwrap();
        for (y, t) in ys.iter().zip([0.5f64, 1.0, 1.5]) {
            assert!((y[0] - (-t).exp()).abs() < 1e-11);
        }
    }
}

//! The quadratic approximation `Z_2` for the quartic oscillator, integrated
//! over the turning coordinate `q_t` of the closed classical paths.

use std::f64::consts::PI;

use super::{ln_sphere_area, PartitionFunction, DEFAULT_TOL};
use crate::error::{domain, Error, Result};
use crate::fluctuations::{det_longitudinal, det_transverse};
use crate::numeric::quadrature::{integrate_with_breaks, QuadOptions};
use crate::paths::{invert_endpoint, q_theta_max, quartic_action, quartic_path_from_qt, QuarticPath, ReducedParams};

/// Scan points are dropped once the integrand is below this fraction of its peak.
const CUTOFF: f64 = 1e-12;
const MAX_SCAN: usize = 20_000;

/// `(d q0 / d q_t)` at fixed `Theta`, from the longitudinal determinant.
pub fn jacobian_dq0_dqt(path: &QuarticPath) -> Result<f64> {
    let q_t = path.q_t();
    if q_t == 0.0 {
        return Ok((0.5 * path.theta()).cosh());
    }
    let q0 = path.q0();
    let dq = path.excursion();
    // 2 [U(q0) - U(q_t)] = (q0 - q_t)(q0 + q_t)(1 + (q0^2 + q_t^2)/2)
    let kinetic = dq * (q0 + q_t) * (1.0 + 0.5 * (q0 * q0 + q_t * q_t));
    let force = q_t + q_t * q_t * q_t;
    Ok(force * det_longitudinal(path)? / (4.0 * PI * kinetic.sqrt()))
}

struct Integrand {
    g: f64,
    dim: usize,
    theta: f64,
}

/// Logarithms of the integrand in `q_t` and of the Jacobian, so that the
/// integrand in the endpoint variable is `exp(ln_f - ln_jac)`.
struct LogTerms {
    ln_f: f64,
    ln_jac: f64,
}

impl Integrand {
    fn log_terms(&self, q_t: f64) -> Result<LogTerms> {
        let path = quartic_path_from_qt(q_t, self.theta)?;
        let jac = jacobian_dq0_dqt(&path)?;
        let d = self.dim as f64;
        let ln_prefactor = if self.dim == 1 { 0.0 } else { (d - 1.0) * path.q0().ln() };
        let ln_det = if q_t == 0.0 {
            d * det_longitudinal(&path)?.ln()
        } else {
            det_longitudinal(&path)?.ln() + (d - 1.0) * det_transverse(&path)?.ln()
        };
        let action = quartic_action(&path)?;
        let ln_jac = jac.ln();
        Ok(LogTerms {
            ln_f: ln_jac + ln_prefactor - action / self.g - 0.5 * ln_det,
            ln_jac,
        })
    }
}

/// `Z_2(g, D, Theta)` at the default quadrature tolerance.
pub fn z2_quartic(params: &ReducedParams) -> Result<PartitionFunction> {
    z2_quartic_with(params, DEFAULT_TOL)
}

pub fn z2_quartic_with(params: &ReducedParams, tol: f64) -> Result<PartitionFunction> {
    let &ReducedParams { g, dim, theta } = params;
    if !(g > 0.0) {
        return Err(domain("the quartic quadratic approximation needs g > 0"));
    }
    let integrand = Integrand { g, dim, theta };
    let q_theta = q_theta_max(theta)?;

    // Scan in the endpoint q0, on the scale of the narrower of the harmonic
    // and the pure quartic Boltzmann widths.
    let harmonic_width = (g / (0.5 * theta).tanh()).sqrt();
    let quartic_width = (4.0 * g / theta).powf(0.25);
    let step = 0.25 * harmonic_width.min(quartic_width);
    let mut q_ts = vec![0.0];
    let mut ln_h = vec![f64::NEG_INFINITY];
    let mut peak = f64::NEG_INFINITY;
    let mut peak_f = f64::NEG_INFINITY;
    let mut i = 0;
    loop {
        i += 1;
        if i > MAX_SCAN {
            return Err(Error::Convergence {
                what: "z2_quartic scan",
                detail: format!("integrand above cutoff after {MAX_SCAN} points"),
            });
        }
        let q0 = step * i as f64;
        let q_t = invert_endpoint(q0, theta)?;
        if !(q_t < q_theta) {
            break;
        }
        let terms = integrand.log_terms(q_t)?;
        let lh = terms.ln_f - terms.ln_jac;
        q_ts.push(q_t);
        ln_h.push(lh);
        peak = peak.max(lh);
        peak_f = peak_f.max(terms.ln_f);
        if lh < peak + CUTOFF.ln() && lh < *ln_h.iter().rev().nth(1).unwrap() {
            break;
        }
    }
    let n = q_ts.len();
    if n < 3 {
        return Err(Error::Convergence {
            what: "z2_quartic scan",
            detail: format!("only {n} scan points below q_Theta = {q_theta}"),
        });
    }

    // Integrand relative to its scanned peak, to keep exp() in range.
    let f = |q_t: f64| match integrand.log_terms(q_t) {
        Ok(t) => (t.ln_f - peak_f).exp(),
        Err(_) => f64::NAN,
    };
    let quad = integrate_with_breaks(f, &q_ts, QuadOptions::rel(tol))?;

    // Tail beyond the cut in the q0 variable: with log-concave decay the
    // secant slope of the last two scan points bounds it by h(q0*) / slope.
    let slope = (ln_h[n - 2] - ln_h[n - 1]) / step;
    let tail = if slope > 0.0 && ln_h[n - 1].is_finite() {
        (ln_h[n - 1] - peak_f).exp() / slope
    } else {
        0.0
    };
    let value = quad.value;
    let rel_error = (quad.error + tail) / value;
    if !(rel_error <= tol.max(1e-7)) {
        return Err(Error::Quadrature {
            achieved: rel_error,
            requested: tol,
        });
    }
    let d = dim as f64;
    Ok(PartitionFunction {
        ln_z: ln_sphere_area(dim) - 0.5 * d * g.ln() + peak_f + value.ln(),
        rel_error,
    })
}

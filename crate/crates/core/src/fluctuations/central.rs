use std::f64::consts::PI;

use super::Side;
use crate::elliptic::epsilon_from;
use crate::error::{Error, Result};
use crate::paths::{check_time, CanonicalPair, QuarticPath};

const MIN_WRONSKIAN: f64 = 1e-12;
const MIN_OMEGA: f64 = 1e-14;

/// `Omega(theta, theta') = [f_a(theta) f_b(theta') - f_a(theta') f_b(theta)] / W`.
#[derive(Debug, Clone, Copy)]
pub struct OmegaKernel<P> {
    pair: P,
}

pub fn omega_kernel<P: CanonicalPair>(pair: P) -> Result<OmegaKernel<P>> {
    let w = pair.eval(0.0).wronskian();
    if !(w.abs() >= MIN_WRONSKIAN) {
        return Err(Error::Degenerate(format!("Wronskian {w:e} of the solution pair vanishes")));
    }
    Ok(OmegaKernel { pair })
}

impl<P: CanonicalPair> OmegaKernel<P> {
    pub fn pair(&self) -> &P {
        &self.pair
    }

    pub fn eval(&self, theta: f64, theta_p: f64) -> f64 {
        let x = self.pair.eval(theta);
        let y = self.pair.eval(theta_p);
        (x.a * y.b - y.a * x.b) / y.wronskian()
    }

    /// `d Omega / d theta`.
    pub fn dtheta(&self, theta: f64, theta_p: f64) -> f64 {
        let x = self.pair.eval(theta);
        let y = self.pair.eval(theta_p);
        (x.da * y.b - y.a * x.db) / y.wronskian()
    }
}

/// `2 pi sinh(Theta)`, both channels of the harmonic oscillator.
pub fn det_harmonic(big_theta: f64) -> f64 {
    2.0 * PI * big_theta.sinh()
}

/// `2 pi Omega(0, Theta)` from any solution pair.
pub fn det_from_pair<P: CanonicalPair>(pair: &P) -> Result<f64> {
    let w = pair.eval(0.0).wronskian();
    if !(w.abs() >= MIN_WRONSKIAN) {
        return Err(Error::Degenerate(format!("Wronskian {w:e} of the solution pair vanishes")));
    }
    let x = pair.eval(0.0);
    let y = pair.eval(pair.period());
    Ok(2.0 * PI * (x.a * y.b - y.a * x.b) / w)
}

/// Longitudinal determinant of a quartic path in closed form.
pub fn det_longitudinal(path: &QuarticPath) -> Result<f64> {
    if path.q_t() == 0.0 {
        return Ok(det_harmonic(path.theta()));
    }
    let m = path.modulus();
    let (k2, kc2) = (m.k2(), m.kc2());
    let u = path.u_end();
    let j = path.end_jacobi();
    let (sn, cn, dn) = (j.sn, j.cn, j.dn);
    let e = epsilon_from(&j, m)?;
    let bracket = kc2 / k2 * u + (2.0 * k2 - 1.0) / k2 * e + cn * dn / sn + kc2 * sn * cn / dn;
    let c2 = cn * cn;
    Ok(4.0 * PI / path.s() * sn * sn * dn * dn / (c2 * c2) * bracket)
}

/// Transverse determinant of a quartic path in closed form.
pub fn det_transverse(path: &QuarticPath) -> Result<f64> {
    if path.q_t() == 0.0 {
        return Ok(det_harmonic(path.theta()));
    }
    let m = path.modulus();
    let k2 = m.k2();
    let u = path.u_end();
    let j = path.end_jacobi();
    let e = epsilon_from(&j, m)?;
    Ok(4.0 * PI / path.s() / (j.cn * j.cn * k2) * (e + (k2 - 1.0) * u))
}

/// The scalar Green's function `Omega(0, theta_<) Omega(theta_>, Theta) / Omega(0, Theta)`.
#[derive(Debug, Clone, Copy)]
pub struct CentralGreen<P> {
    kernel: OmegaKernel<P>,
    omega_full: f64,
}

impl<P: CanonicalPair> CentralGreen<P> {
    pub fn new(pair: P) -> Result<Self> {
        let kernel = omega_kernel(pair)?;
        let omega_full = kernel.eval(0.0, kernel.pair.period());
        if !(omega_full.abs() >= MIN_OMEGA) {
            return Err(Error::Degenerate(format!("zero mode: Omega(0, Theta) = {omega_full:e}")));
        }
        Ok(Self { kernel, omega_full })
    }

    pub fn period(&self) -> f64 {
        self.kernel.pair.period()
    }

    pub fn value(&self, theta: f64, theta_p: f64) -> Result<f64> {
        let big = self.period();
        check_time(theta, big)?;
        check_time(theta_p, big)?;
        let (lo, hi) = if theta <= theta_p { (theta, theta_p) } else { (theta_p, theta) };
        Ok(self.kernel.eval(0.0, lo) * self.kernel.eval(hi, big) / self.omega_full)
    }

    pub fn dtheta(&self, theta: f64, theta_p: f64, side: Side) -> Result<f64> {
        let big = self.period();
        check_time(theta, big)?;
        check_time(theta_p, big)?;
        let below = theta < theta_p || (theta == theta_p && side == Side::Below);
        let d = if below {
            self.d_left(theta) * self.kernel.eval(theta_p, big)
        } else {
            self.kernel.eval(0.0, theta_p) * self.kernel.dtheta(theta, big)
        };
        Ok(d / self.omega_full)
    }

    /// `d Omega(0, theta) / d theta`.
    fn d_left(&self, theta: f64) -> f64 {
        let x = self.kernel.pair.eval(0.0);
        let y = self.kernel.pair.eval(theta);
        // The Wronskian is constant, so only the numerator is differentiated.
        (x.a * y.db - y.da * x.b) / x.wronskian()
    }
}

pub fn green_central<P: CanonicalPair + Copy>(pair: &P, theta: f64, theta_p: f64) -> Result<f64> {
    CentralGreen::new(*pair)?.value(theta, theta_p)
}

pub fn green_central_dtheta<P: CanonicalPair + Copy>(pair: &P, theta: f64, theta_p: f64, side: Side) -> Result<f64> {
    CentralGreen::new(*pair)?.dtheta(theta, theta_p, side)
}

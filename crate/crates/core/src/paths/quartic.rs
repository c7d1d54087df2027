//! The single-well quartic oscillator in scaled form, `q = sqrt(g) r` and
//! `U(q) = q^2/2 + q^4/4`, whose closed paths are `q_c = q_t nc(u, k)`.

use super::{check_theta, RadialPath};
use crate::elliptic::{complete_k_modulus, epsilon_from, jacobi, Jacobi, Modulus};
use crate::error::{domain, Error, Result};
use crate::numeric::roots::bisect;

const BISECT_TOL: f64 = 1e-12;
const BISECT_MAX: usize = 200;

/// `U(q) = q^2/2 + q^4/4`.
pub(crate) fn scaled_potential(q: f64) -> f64 {
    let q2 = q * q;
    0.5 * q2 + 0.25 * q2 * q2
}

/// Modulus of the path with turning coordinate `q_t`, built from the
/// complement `k'^2 = q_t^2 / (2(1 + q_t^2))` so it stays exact near `k = 1`.
pub(crate) fn modulus_for(q_t: f64) -> Modulus {
    let kc = q_t / (2.0 * (1.0 + q_t * q_t)).sqrt();
    Modulus::from_complement(kc).expect("k' lies in [0, 1/sqrt 2)")
}

/// `s Theta / 2 - K(k)`, negative on the pole-free side.
fn pole_margin(q_t: f64, big_theta: f64) -> f64 {
    let s = (1.0 + q_t * q_t).sqrt();
    match complete_k_modulus(modulus_for(q_t)) {
        Ok(kk) => 0.5 * s * big_theta - kk,
        Err(_) => f64::NEG_INFINITY,
    }
}

/// A closed quartic path through `q0` with turning coordinate `q_t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticPath {
    q_t: f64,
    theta: f64,
    modulus: Modulus,
    s: f64,
    q0: f64,
    end: Jacobi,
}

impl QuarticPath {
    pub fn q_t(&self) -> f64 {
        self.q_t
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn k(&self) -> f64 {
        self.modulus.k()
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Frequency scale `s = sqrt(1 + q_t^2)`.
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    /// `u_Theta = s Theta / 2`.
    pub fn u_end(&self) -> f64 {
        0.5 * self.s * self.theta
    }

    /// Jacobi functions at `u_Theta`.
    pub fn end_jacobi(&self) -> Jacobi {
        self.end
    }

    /// `u(theta) = s (theta - Theta/2)`.
    pub fn u(&self, theta: f64) -> f64 {
        self.s * (theta - 0.5 * self.theta)
    }

    pub(crate) fn jacobi_at(&self, theta: f64) -> Jacobi {
        let u = self.u(theta);
        jacobi(u, self.modulus).unwrap_or(Jacobi {
            sn: f64::NAN,
            cn: f64::NAN,
            dn: f64::NAN,
            am: f64::NAN,
        })
    }

    pub fn position(&self, theta: f64) -> f64 {
        if self.q_t == 0.0 {
            return 0.0;
        }
        self.q_t / self.jacobi_at(theta).cn
    }

    pub fn velocity(&self, theta: f64) -> f64 {
        if self.q_t == 0.0 {
            return 0.0;
        }
        let j = self.jacobi_at(theta);
        self.q_t * self.s * j.sn * j.dn / (j.cn * j.cn)
    }

    /// `q'' = U'(q) = q + q^3`.
    pub fn acceleration(&self, theta: f64) -> f64 {
        let q = self.position(theta);
        q + q * q * q
    }

    /// `q0 - q_t`, computed without cancellation.
    pub fn excursion(&self) -> f64 {
        let c = self.end.cn;
        self.q_t * self.end.sn * self.end.sn / (c * (1.0 + c))
    }
}

impl RadialPath for QuarticPath {
    fn period(&self) -> f64 {
        self.theta
    }

    fn radius(&self, theta: f64) -> f64 {
        self.position(theta)
    }

    fn radial_velocity(&self, theta: f64) -> f64 {
        self.velocity(theta)
    }
}

/// Builds the path with turning coordinate `q_t` and period `Theta`.
pub fn quartic_path_from_qt(q_t: f64, big_theta: f64) -> Result<QuarticPath> {
    check_theta(big_theta)?;
    if !(q_t >= 0.0 && q_t.is_finite()) {
        return Err(domain(format!("turning coordinate q_t = {q_t} must be finite and >= 0")));
    }
    let modulus = modulus_for(q_t);
    let s = (1.0 + q_t * q_t).sqrt();
    if q_t > 0.0 && pole_margin(q_t, big_theta) >= 0.0 {
        return Err(Error::Pole {
            q_t,
            theta: big_theta,
            q_theta: q_theta_max(big_theta).unwrap_or(f64::NAN),
        });
    }
    let end = jacobi(0.5 * s * big_theta, modulus)?;
    if q_t > 0.0 && end.cn <= 0.0 {
        return Err(Error::Pole {
            q_t,
            theta: big_theta,
            q_theta: q_theta_max(big_theta).unwrap_or(f64::NAN),
        });
    }
    let q0 = if q_t == 0.0 { 0.0 } else { q_t / end.cn };
    Ok(QuarticPath {
        q_t,
        theta: big_theta,
        modulus,
        s,
        q0,
        end,
    })
}

/// The turning coordinate `q_Theta` at which `q0` runs off to infinity.
pub fn q_theta_max(big_theta: f64) -> Result<f64> {
    check_theta(big_theta)?;
    let mut hi = 1.0;
    while pole_margin(hi, big_theta) <= 0.0 {
        hi *= 2.0;
        if hi > 1e150 {
            return Err(Error::Convergence {
                what: "q_theta_max",
                detail: format!("no pole below q_t = {hi:e} at Theta = {big_theta}"),
            });
        }
    }
    bisect(|q| pole_margin(q, big_theta), 0.0, hi, BISECT_TOL, BISECT_MAX, |_, f| f.abs() <= 1e-10)
}

/// Inverts `q0(q_t)` at fixed `Theta`.
pub fn invert_endpoint(q0: f64, big_theta: f64) -> Result<f64> {
    check_theta(big_theta)?;
    if !(q0 >= 0.0 && q0.is_finite()) {
        return Err(domain(format!("endpoint q0 = {q0} must be finite and >= 0")));
    }
    if q0 == 0.0 {
        return Ok(0.0);
    }
    let q_theta = q_theta_max(big_theta)?;
    let residual = |q_t: f64| -> f64 {
        if q_t <= 0.0 {
            return -q0;
        }
        if q_t >= q_theta {
            return f64::INFINITY;
        }
        let s = (1.0 + q_t * q_t).sqrt();
        match jacobi(0.5 * s * big_theta, modulus_for(q_t)) {
            Ok(j) if j.cn > 0.0 => q_t / j.cn - q0,
            _ => f64::INFINITY,
        }
    };
    let tol = 1e-10 * (1.0 + q0);
    bisect(residual, 0.0, q_theta, BISECT_TOL, BISECT_MAX, |_, f| f.abs() <= tol)
}

/// The scaled action `I[q_c] = g S / hbar` of a quartic path.
pub fn quartic_action(path: &QuarticPath) -> Result<f64> {
    let q_t = path.q_t;
    if q_t == 0.0 {
        return Ok(0.0);
    }
    let m = path.modulus;
    let u = path.u_end();
    let j = path.end;
    let e = epsilon_from(&j, m)?;
    let nc2 = 1.0 / (j.cn * j.cn);
    let half_q2 = 0.5 * q_t * q_t;
    let bracket = -path.s * (e + half_q2 * u) + j.sn * (1.0 + half_q2 * nc2) * (1.0 + half_q2 * (1.0 + nc2)).sqrt();
    Ok(path.theta * scaled_potential(q_t) + 4.0 / 3.0 * bracket)
}

//! Shooting oracle for closed radial paths `r'' = V'(r)`, `r(0) = r(Theta) = r0`.

use super::{check_theta, RadialPath, DEFAULT_SAMPLES};
use crate::error::{domain, Error, Result};
use crate::numeric::hermite::quintic;
use crate::numeric::ode::{integrate_guarded, integrate_through, Endpoint, OdeOptions};
use crate::numeric::roots::bisect;
use crate::potential::CentralPotential;

#[derive(Debug, Clone, Copy)]
pub struct ShootingOptions {
    pub samples: usize,
    pub ode: OdeOptions,
    /// Accepted `|r(Theta) - r0|`.
    pub boundary_tol: f64,
}

impl Default for ShootingOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            ode: OdeOptions::tol(1e-13, 1e-14),
            boundary_tol: 1e-10,
        }
    }
}

/// A trajectory sampled on a uniform grid, interpolated by quintic Hermite
/// polynomials using the equation of motion for the second derivative.
#[derive(Debug, Clone)]
pub struct SampledRadialPath {
    period: f64,
    initial_velocity: f64,
    r: Vec<f64>,
    v: Vec<f64>,
    acc: Vec<f64>,
}

impl SampledRadialPath {
    pub fn initial_velocity(&self) -> f64 {
        self.initial_velocity
    }

    pub fn samples(&self) -> usize {
        self.r.len()
    }

    /// Sample times and radii.
    pub fn nodes(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let h = self.step();
        self.r.iter().enumerate().map(move |(i, &r)| (i as f64 * h, r))
    }

    fn step(&self) -> f64 {
        self.period / (self.r.len() - 1) as f64
    }

    fn locate(&self, theta: f64) -> (usize, f64) {
        let h = self.step();
        let x = (theta / h).clamp(0.0, (self.r.len() - 1) as f64);
        let i = (x.floor() as usize).min(self.r.len() - 2);
        (i, x - i as f64)
    }
}

impl RadialPath for SampledRadialPath {
    fn period(&self) -> f64 {
        self.period
    }

    fn radius(&self, theta: f64) -> f64 {
        let (i, t) = self.locate(theta);
        let h = self.step();
        quintic(t, h, self.r[i], self.v[i], self.acc[i], self.r[i + 1], self.v[i + 1], self.acc[i + 1])
    }

    fn radial_velocity(&self, theta: f64) -> f64 {
        // Derivative of the quintic through value, slope and curvature data
        // is not needed to interpolation order; difference it locally.
        let h = 1e-6 * self.period;
        let lo = (theta - h).max(0.0);
        let hi = (theta + h).min(self.period);
        (self.radius(hi) - self.radius(lo)) / (hi - lo)
    }
}

pub fn shoot_radial_path<P: CentralPotential>(potential: &P, r0: f64, big_theta: f64) -> Result<SampledRadialPath> {
    shoot_radial_path_with(potential, r0, big_theta, &ShootingOptions::default())
}

pub fn shoot_radial_path_with<P: CentralPotential>(
    potential: &P,
    r0: f64,
    big_theta: f64,
    opts: &ShootingOptions,
) -> Result<SampledRadialPath> {
    check_theta(big_theta)?;
    if !(r0 >= 0.0 && r0.is_finite()) {
        return Err(domain(format!("radius r0 = {r0} must be finite and >= 0")));
    }
    if opts.samples < 2 {
        return Err(domain("at least two samples are required"));
    }
    let n = opts.samples;
    if r0 == 0.0 {
        return Ok(SampledRadialPath {
            period: big_theta,
            initial_velocity: 0.0,
            r: vec![0.0; n],
            v: vec![0.0; n],
            acc: vec![0.0; n],
        });
    }

    let rhs = |_: f64, y: &[f64], d: &mut [f64]| {
        d[0] = y[1];
        d[1] = potential.dv(y[0]);
    };
    let bound = 1e8 * (1.0 + r0);
    let guarded = OdeOptions { blowup: bound, ..opts.ode };
    let miss = |v0: f64| -> f64 {
        match integrate_guarded(rhs, 0.0, &[r0, v0], big_theta, &guarded) {
            Ok(Endpoint::Reached(y)) => y[0] - r0,
            Ok(Endpoint::BlewUp { y, .. }) => y[0].signum() * bound,
            Err(_) => f64::NAN,
        }
    };

    // At zero initial velocity the particle is pushed outward; a steep
    // enough inward launch lands short of r0.
    let mut lo = -r0;
    let mut tried = 0;
    while !(miss(lo) < 0.0) {
        lo *= 2.0;
        tried += 1;
        if tried > 80 {
            return Err(Error::Convergence {
                what: "shooting",
                detail: format!("no bracket for the initial velocity in [{lo:e}, 0]"),
            });
        }
    }
    let tol = opts.boundary_tol * r0.max(1.0);
    let v0 = bisect(miss, lo, 0.0, 0.0, 400, |_, f| f.abs() <= tol).map_err(|e| Error::Convergence {
        what: "shooting",
        detail: format!("bracket [{lo:e}, 0]: {e}"),
    })?;

    let h = big_theta / (n - 1) as f64;
    let times: Vec<f64> = (1..n).map(|i| if i == n - 1 { big_theta } else { i as f64 * h }).collect();
    let states = integrate_through(rhs, 0.0, &[r0, v0], &times, &opts.ode)?;
    let mut r = vec![r0];
    let mut v = vec![v0];
    for y in states {
        r.push(y[0]);
        v.push(y[1]);
    }
    let acc = r.iter().map(|&x| potential.dv(x)).collect();
    Ok(SampledRadialPath {
        period: big_theta,
        initial_velocity: v0,
        r,
        v,
        acc,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{invert_endpoint, quartic_path_from_qt, HarmonicPath};
    use super::*;
    use crate::potential::{Harmonic, Quartic};

    #[test]
    fn harmonic_matches_closed_form() {
        let path = shoot_radial_path(&Harmonic, 1.0, 2.0).unwrap();
        let exact = HarmonicPath { r0: 1.0, theta: 2.0 };
        assert!((path.radius(2.0) - 1.0).abs() < 1e-9);
        for i in 0..=200 {
            let t = 2.0 * i as f64 / 200.0;
            assert!((path.radius(t) - exact.radius(t)).abs() < 1e-8, "{t}");
        }
    }

    #[test]
    fn quartic_matches_closed_form() {
        let q_t = invert_endpoint(1.0, 1.0).unwrap();
        let exact = quartic_path_from_qt(q_t, 1.0).unwrap();
        let path = shoot_radial_path(&Quartic::SCALED, 1.0, 1.0).unwrap();
        for i in 0..=100 {
            let t = i as f64 / 100.0;
            assert!((path.radius(t) - exact.position(t)).abs() < 1e-7, "{t}");
        }
        assert!((path.initial_velocity() - exact.velocity(0.0)).abs() < 1e-7);
    }

    #[test]
    fn origin_is_a_fixed_point() {
        let path = shoot_radial_path(&Quartic::SCALED, 0.0, 3.0).unwrap();
        assert!(path.nodes().all(|(_, r)| r == 0.0));
    }
}

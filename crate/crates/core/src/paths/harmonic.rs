use super::{check_theta, check_time, RadialPath};
use crate::error::{domain, Result};

/// `r_c(theta) = r0 cosh(theta - Theta/2) / cosh(Theta/2)`.
pub fn harmonic_trajectory(r0: f64, big_theta: f64, theta: f64) -> Result<f64> {
    check_theta(big_theta)?;
    check_time(theta, big_theta)?;
    if r0 < 0.0 {
        return Err(domain(format!("radius r0 = {r0} must be >= 0")));
    }
    Ok(HarmonicPath { r0, theta: big_theta }.radius(theta))
}

/// Classical action `r0^2 tanh(Theta/2)`.
pub fn harmonic_action(r0: f64, big_theta: f64) -> Result<f64> {
    check_theta(big_theta)?;
    if r0 < 0.0 {
        return Err(domain(format!("radius r0 = {r0} must be >= 0")));
    }
    Ok(r0 * r0 * (0.5 * big_theta).tanh())
}

/// The closed harmonic-oscillator path through `r0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicPath {
    pub r0: f64,
    pub theta: f64,
}

impl RadialPath for HarmonicPath {
    fn period(&self) -> f64 {
        self.theta
    }

    fn radius(&self, theta: f64) -> f64 {
        self.r0 * (theta - 0.5 * self.theta).cosh() / (0.5 * self.theta).cosh()
    }

    fn radial_velocity(&self, theta: f64) -> f64 {
        self.r0 * (theta - 0.5 * self.theta).sinh() / (0.5 * self.theta).cosh()
    }
}

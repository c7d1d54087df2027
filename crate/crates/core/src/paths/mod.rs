//! Closed Euclidean classical trajectories of central potentials, their
//! actions, and canonical solution pairs of the fluctuation equations.
//!
//! Everything is in reduced units `hbar = m = omega = k_B = 1`; the time
//! variable is `theta` in `[0, Theta]` with `Theta` the dimensionless
//! inverse temperature.

mod canonical;
mod harmonic;
mod quartic;
mod shooting;

use nalgebra::DVector;

use crate::error::{domain, Result};

pub use canonical::{CanonicalPair, HarmonicPair, LongitudinalPair, PairValues, TransversePair};
pub use canonical::{canonical_longitudinal, canonical_transverse};
pub use harmonic::{harmonic_action, harmonic_trajectory, HarmonicPath};
pub use quartic::{invert_endpoint, q_theta_max, quartic_action, quartic_path_from_qt, QuarticPath};
pub use shooting::{shoot_radial_path, shoot_radial_path_with, SampledRadialPath, ShootingOptions};

/// Default number of uniform samples along a trajectory.
pub const DEFAULT_SAMPLES: usize = 256;

/// The dimensionless problem: coupling `g = hbar lambda / m^2 omega^3`,
/// spatial dimension `D` and `Theta = beta hbar omega`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedParams {
    pub g: f64,
    pub dim: usize,
    pub theta: f64,
}

impl ReducedParams {
    pub fn new(g: f64, dim: usize, theta: f64) -> Result<Self> {
        if !(g >= 0.0 && g.is_finite()) {
            return Err(domain(format!("coupling g = {g} must be finite and >= 0")));
        }
        if dim == 0 {
            return Err(domain("dimension D must be >= 1"));
        }
        check_theta(theta)?;
        Ok(Self { g, dim, theta })
    }

    /// Temperature `T = 1 / Theta`.
    pub fn temperature(&self) -> f64 {
        1.0 / self.theta
    }
}

pub(crate) fn check_theta(theta: f64) -> Result<()> {
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(domain(format!("Theta = {theta} must be finite and > 0")));
    }
    Ok(())
}

pub(crate) fn check_time(theta: f64, period: f64) -> Result<()> {
    if !(0.0..=period).contains(&theta) {
        return Err(domain(format!("time {theta} outside [0, {period}]")));
    }
    Ok(())
}

/// A closed radial trajectory `r_c(theta)` with `r_c(0) = r_c(Theta)`.
pub trait RadialPath {
    fn period(&self) -> f64;
    fn radius(&self, theta: f64) -> f64;
    fn radial_velocity(&self, theta: f64) -> f64;
}

/// A trajectory in `R^D`.
pub trait Trajectory {
    fn dim(&self) -> usize;
    fn period(&self) -> f64;
    fn position(&self, theta: f64) -> DVector<f64>;
}

/// A radial path laid along the first axis of `R^D`.
#[derive(Debug, Clone)]
pub struct Embedded<P> {
    pub path: P,
    pub dim: usize,
}

impl<P: RadialPath> Embedded<P> {
    pub fn new(path: P, dim: usize) -> Self {
        Self { path, dim }
    }
}

impl<P: RadialPath> Trajectory for Embedded<P> {
    fn dim(&self) -> usize {
        self.dim
    }

    fn period(&self) -> f64 {
        self.path.period()
    }

    fn position(&self, theta: f64) -> DVector<f64> {
        let mut x = DVector::zeros(self.dim);
        x[0] = self.path.radius(theta);
        x
    }
}

//! Potentials in reduced units (`hbar = m = omega = 1`).

use nalgebra::{DMatrix, DVector};

/// A smooth potential on `R^D` with gradient and Hessian.
pub trait Potential {
    fn value(&self, x: &DVector<f64>) -> f64;
    fn gradient(&self, x: &DVector<f64>) -> DVector<f64>;
    fn hessian(&self, x: &DVector<f64>) -> DMatrix<f64>;
}

/// A central potential `V(r)`.
pub trait CentralPotential {
    fn v(&self, r: f64) -> f64;
    /// `V'(r)`
    fn dv(&self, r: f64) -> f64;
    /// `V''(r)`
    fn d2v(&self, r: f64) -> f64;
}

impl<T: CentralPotential> Potential for T {
    fn value(&self, x: &DVector<f64>) -> f64 {
        self.v(x.norm())
    }

    fn gradient(&self, x: &DVector<f64>) -> DVector<f64> {
        let r = x.norm();
        if r == 0.0 {
            return DVector::zeros(x.len());
        }
        x * (self.dv(r) / r)
    }

    /// `d_i d_j V = (V'/r) delta_ij + (V'' - V'/r) x_i x_j / r^2`
    fn hessian(&self, x: &DVector<f64>) -> DMatrix<f64> {
        let n = x.len();
        let r = x.norm();
        let d2 = self.d2v(r);
        if r == 0.0 {
            return DMatrix::identity(n, n) * d2;
        }
        let radial = self.dv(r) / r;
        let outer = x * x.transpose() / (r * r);
        DMatrix::identity(n, n) * radial + outer * (d2 - radial)
    }
}

/// `V(r) = r^2 / 2`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Harmonic;

impl CentralPotential for Harmonic {
    fn v(&self, r: f64) -> f64 {
        0.5 * r * r
    }
    fn dv(&self, r: f64) -> f64 {
        r
    }
    fn d2v(&self, _r: f64) -> f64 {
        1.0
    }
}

/// `V(r) = r^2 / 2 + coupling * r^4 / 4`.
///
/// With `coupling = 1` this is the scaled quartic potential `U(q)` in which
/// the classical paths are expressed; with `coupling = g` it is the physical
/// potential in reduced units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quartic {
    pub coupling: f64,
}

impl Quartic {
    /// `U(q) = q^2/2 + q^4/4`.
    pub const SCALED: Quartic = Quartic { coupling: 1.0 };
}

impl CentralPotential for Quartic {
    fn v(&self, r: f64) -> f64 {
        let r2 = r * r;
        0.5 * r2 + 0.25 * self.coupling * r2 * r2
    }
    fn dv(&self, r: f64) -> f64 {
        r + self.coupling * r * r * r
    }
    fn d2v(&self, r: f64) -> f64 {
        1.0 + 3.0 * self.coupling * r * r
    }
}

/// `V = 0`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Free;

impl CentralPotential for Free {
    fn v(&self, _r: f64) -> f64 {
        0.0
    }
    fn dv(&self, _r: f64) -> f64 {
        0.0
    }
    fn d2v(&self, _r: f64) -> f64 {
        0.0
    }
}

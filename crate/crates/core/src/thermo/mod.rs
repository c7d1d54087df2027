//! Partition functions (exact harmonic, semiclassical quadratic, classical,
//! WKB) and specific-heat curves, all in reduced units.

mod classical;
mod harmonic;
mod heat;
mod quartic;
mod wkb;

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::paths::ReducedParams;

pub use classical::z_classical;
pub use harmonic::{z2_harmonic_integral, z_harmonic};
pub use heat::{specific_heat, HeatCapacity};
pub use quartic::{jacobian_dq0_dqt, z2_quartic, z2_quartic_with};
pub use wkb::{bohr_sommerfeld_action, wkb_levels, wkb_spectrum_for, z_wkb, WkbSpectrum};

/// Default relative tolerance of the quadratures behind `ln Z`; small enough
/// for the second differences taken by [`specific_heat`].
pub const DEFAULT_TOL: f64 = 1e-12;

/// `ln Z` with the relative error of `Z` (the absolute error of `ln Z`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartitionFunction {
    pub ln_z: f64,
    pub rel_error: f64,
}

impl PartitionFunction {
    pub fn value(&self) -> f64 {
        self.ln_z.exp()
    }
}

/// `ln Gamma(D/2)` by the recursion from `Gamma(1) = 1` or `Gamma(1/2) = sqrt(pi)`.
pub(crate) fn ln_gamma_half(dim: usize) -> f64 {
    let (mut x, mut acc) = if dim % 2 == 0 { (1.0, 0.0) } else { (0.5, 0.5 * PI.ln()) };
    while x < 0.5 * dim as f64 {
        acc += x.ln();
        x += 1.0;
    }
    acc
}

/// `ln(2 pi^{D/2} / Gamma(D/2))`, the area of the unit sphere in `R^D`.
pub(crate) fn ln_sphere_area(dim: usize) -> f64 {
    2f64.ln() + 0.5 * dim as f64 * PI.ln() - ln_gamma_half(dim)
}

/// The ways of computing `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Harmonic,
    QuarticSemiclassical,
    QuarticClassical,
    QuarticWkb,
}

impl Mode {
    pub const ALL: [Mode; 4] = [
        Mode::Harmonic,
        Mode::QuarticSemiclassical,
        Mode::QuarticClassical,
        Mode::QuarticWkb,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Mode::Harmonic => "harmonic",
            Mode::QuarticSemiclassical => "quartic-semiclassical",
            Mode::QuarticClassical => "quartic-classical",
            Mode::QuarticWkb => "quartic-wkb",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Mode::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown mode '{s}'")))
    }
}

/// A mode bound to its parameters, ready to evaluate `ln Z(Theta)`.
#[derive(Debug, Clone)]
pub struct Model {
    mode: Mode,
    g: f64,
    dim: usize,
    tol: f64,
    spectrum: Option<WkbSpectrum>,
}

impl Model {
    /// `theta_min` is the smallest `Theta` that will be requested (the WKB
    /// spectrum is sized for it).
    pub fn new(mode: Mode, g: f64, dim: usize, tol: f64, theta_min: f64) -> Result<Self> {
        ReducedParams::new(g, dim, theta_min)?;
        if !(tol > 0.0 && tol < 1.0) {
            return Err(Error::Config(format!("tolerance {tol} must lie in (0, 1)")));
        }
        let spectrum = match mode {
            Mode::QuarticWkb => {
                if dim != 1 {
                    return Err(Error::Config("wkb requires D=1".into()));
                }
                Some(wkb_spectrum_for(g, theta_min)?)
            }
            Mode::QuarticSemiclassical if g == 0.0 => {
                return Err(Error::Config("the semiclassical quartic mode requires g > 0".into()));
            }
            _ => None,
        };
        Ok(Self {
            mode,
            g,
            dim,
            tol,
            spectrum,
        })
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn partition(&self, theta: f64) -> Result<PartitionFunction> {
        let params = ReducedParams::new(self.g, self.dim, theta)?;
        match self.mode {
            Mode::Harmonic => z_harmonic(self.dim, theta),
            Mode::QuarticSemiclassical => z2_quartic_with(&params, self.tol),
            Mode::QuarticClassical => z_classical(&params),
            Mode::QuarticWkb => z_wkb(self.spectrum.as_ref().expect("built with the model"), theta),
        }
    }
}

/// `ln Z` and `C` on a temperature grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoCurve {
    pub temperatures: Vec<f64>,
    pub ln_z: Vec<f64>,
    pub c: Vec<f64>,
    pub c_err: Vec<f64>,
}

impl ThermoCurve {
    /// Evaluates a model on the given strictly increasing temperatures, in
    /// parallel; a failure is reported for the smallest failing temperature.
    pub fn compute(model: &Model, temperatures: &[f64]) -> Result<Self> {
        if temperatures.windows(2).any(|w| !(w[1] > w[0])) || temperatures.iter().any(|&t| !(t > 0.0)) {
            return Err(Error::Config("temperatures must be positive and strictly increasing".into()));
        }
        let rows: Vec<Result<(f64, HeatCapacity)>> = temperatures
            .par_iter()
            .map(|&t| {
                let theta = 1.0 / t;
                let at = |e: Error| Error::AtTheta {
                    theta,
                    source: Box::new(e),
                };
                let z = model.partition(theta).map_err(at)?;
                let c = specific_heat(|x| model.partition(x), theta).map_err(at)?;
                Ok((z.ln_z, c))
            })
            .collect();
        let mut curve = ThermoCurve {
            temperatures: temperatures.to_vec(),
            ln_z: Vec::with_capacity(rows.len()),
            c: Vec::with_capacity(rows.len()),
            c_err: Vec::with_capacity(rows.len()),
        };
        for row in rows {
            let (ln_z, c) = row?;
            curve.ln_z.push(ln_z);
            curve.c.push(c.value);
            curve.c_err.push(c.error);
        }
        Ok(curve)
    }
}

//! Bohr–Sommerfeld levels of `V(x) = x^2/2 + g x^4/4` in one dimension.

use std::f64::consts::{FRAC_PI_2, PI};

use super::PartitionFunction;
use crate::error::{domain, Error, Result};
use crate::numeric::quadrature::{integrate, QuadOptions};
use crate::numeric::roots::bisect;

/// Accepted `|A(E) - 2 pi (n + 1/2)|`.
const LEVEL_TOL: f64 = 1e-9;
/// The first omitted Boltzmann factor must be below this fraction of the sum.
const TRUNCATION: f64 = 1e-16;
const MAX_LEVELS: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct WkbSpectrum {
    pub g: f64,
    pub levels: Vec<f64>,
}

impl WkbSpectrum {
    pub fn n_max(&self) -> usize {
        self.levels.len() - 1
    }
}

/// Squared turning point: the positive root of `x^2/2 + g x^4/4 = E`.
fn turning_point_sq(g: f64, e: f64) -> f64 {
    4.0 * e / (1.0 + (1.0 + 4.0 * g * e).sqrt())
}

/// `A(E) = oint p dx`, evaluated with `x = x_+ sin(phi)`, which turns the
/// square-root endpoint behaviour into a smooth periodic integrand.
pub fn bohr_sommerfeld_action(g: f64, e: f64) -> Result<f64> {
    if e <= 0.0 {
        return Ok(0.0);
    }
    let xp2 = turning_point_sq(g, e);
    let f = |phi: f64| {
        let (s, c) = phi.sin_cos();
        c * c * (1.0 + 0.5 * g * xp2 * (1.0 + s * s)).sqrt()
    };
    let q = integrate(f, 0.0, FRAC_PI_2, QuadOptions::rel(1e-14))?;
    Ok(4.0 * xp2 * q.value)
}

fn level(g: f64, n: usize) -> Result<f64> {
    let target = 2.0 * PI * (n as f64 + 0.5);
    let residual = |e: f64| bohr_sommerfeld_action(g, e).map(|a| a - target).unwrap_or(f64::NAN);
    // The quartic term only lowers the action, so E_n >= n + 1/2.
    let lo = n as f64 + 0.5;
    let mut hi = 2.0 * lo;
    while residual(hi) < 0.0 {
        hi *= 2.0;
        if !hi.is_finite() {
            return Err(Error::Convergence {
                what: "wkb level",
                detail: format!("no bracket for n = {n}"),
            });
        }
    }
    let (a_lo, a_hi) = (residual(lo) + target, residual(hi) + target);
    if residual(lo).abs() <= LEVEL_TOL {
        return Ok(lo);
    }
    bisect(residual, lo, hi, 0.0, 400, |_, r| r.abs() <= LEVEL_TOL).map_err(|_| Error::Convergence {
        what: "wkb level",
        detail: format!("n = {n}: action {a_lo} at E = {lo}, {a_hi} at E = {hi}, target {target}"),
    })
}

/// Levels `E_0 .. E_{n_max}`.
pub fn wkb_levels(g: f64, n_max: usize) -> Result<WkbSpectrum> {
    if !(g >= 0.0 && g.is_finite()) {
        return Err(domain(format!("coupling g = {g} must be finite and >= 0")));
    }
    let levels = (0..=n_max).map(|n| level(g, n)).collect::<Result<Vec<_>>>()?;
    Ok(WkbSpectrum { g, levels })
}

/// Enough levels for [`z_wkb`] at every `Theta >= theta_min`.
pub fn wkb_spectrum_for(g: f64, theta_min: f64) -> Result<WkbSpectrum> {
    if !(g >= 0.0 && g.is_finite()) {
        return Err(domain(format!("coupling g = {g} must be finite and >= 0")));
    }
    if !(theta_min > 0.0) {
        return Err(domain(format!("Theta = {theta_min} must be > 0")));
    }
    // Leave room for the finite-difference stencil below theta_min.
    let theta = 0.95 * theta_min;
    let mut levels = Vec::new();
    let mut sum = 0.0;
    loop {
        let e = level(g, levels.len())?;
        levels.push(e);
        let w = (-theta * (e - levels[0])).exp();
        sum += w;
        if levels.len() > 1 && w < 0.1 * TRUNCATION * sum {
            break;
        }
        if levels.len() >= MAX_LEVELS {
            return Err(Error::Truncation { omitted: w, partial: sum });
        }
    }
    Ok(WkbSpectrum { g, levels })
}

/// `Z = sum_n exp(-Theta E_n)` over the computed levels.
pub fn z_wkb(spectrum: &WkbSpectrum, theta: f64) -> Result<PartitionFunction> {
    if !(theta > 0.0) {
        return Err(domain(format!("Theta = {theta} must be > 0")));
    }
    let e0 = spectrum.levels[0];
    // Sum from the top so that small terms are added first.
    let sum: f64 = spectrum.levels.iter().rev().map(|&e| (-theta * (e - e0)).exp()).sum();
    let last = (-theta * (spectrum.levels[spectrum.n_max()] - e0)).exp();
    if last >= TRUNCATION * sum {
        return Err(Error::Truncation {
            omitted: last,
            partial: sum,
        });
    }
    Ok(PartitionFunction {
        ln_z: -theta * e0 + sum.ln(),
        rel_error: 2.0 * TRUNCATION,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::z_harmonic;

    #[test]
    fn harmonic_levels_are_exact() {
        let s = wkb_levels(0.0, 20).unwrap();
        for (n, e) in s.levels.iter().enumerate() {
            assert!((e - (n as f64 + 0.5)).abs() < 1e-9);
        }
    }

    #[test]
    fn ground_level_first_order() {
        // Expanding the Bohr–Sommerfeld action to first order in g gives
        // E_0 = 1/2 + 3 g / 32.
        let g = 1e-4;
        let e0 = wkb_levels(g, 0).unwrap().levels[0];
        assert!((e0 - (0.5 + 3.0 * g / 32.0)).abs() < 1e-7, "{e0}");
        let e0 = wkb_levels(0.2, 0).unwrap().levels[0];
        assert!((e0 - 0.517_58).abs() < 1e-5, "{e0}");
    }

    #[test]
    fn levels_increase_and_satisfy_the_condition() {
        let s = wkb_levels(0.2, 40).unwrap();
        for (n, w) in s.levels.windows(2).enumerate() {
            assert!(w[1] > w[0]);
            let a = bohr_sommerfeld_action(0.2, w[0]).unwrap();
            assert!((a - 2.0 * PI * (n as f64 + 0.5)).abs() <= LEVEL_TOL);
        }
    }

    #[test]
    fn harmonic_partition_function() {
        let s = wkb_spectrum_for(0.0, 0.5).unwrap();
        for th in [0.5, 1.0, 4.0] {
            let a = z_wkb(&s, th).unwrap();
            let b = z_harmonic(1, th).unwrap();
            assert!((a.ln_z - b.ln_z).abs() < 1e-13);
        }
    }

    #[test]
    fn truncation_is_detected_and_converged() {
        let s = wkb_levels(0.2, 5).unwrap();
        assert!(matches!(z_wkb(&s, 0.5), Err(Error::Truncation { .. })));
        let a = z_wkb(&wkb_levels(0.2, 40).unwrap(), 5.0).unwrap();
        let b = z_wkb(&wkb_levels(0.2, 80).unwrap(), 5.0).unwrap();
        assert!((a.ln_z - b.ln_z).abs() < 1e-12);
    }

    #[test]
    fn ground_state_dominates_at_low_temperature() {
        let s = wkb_levels(0.2, 60).unwrap();
        let z = z_wkb(&s, 60.0).unwrap();
        assert!((z.ln_z + 60.0 * s.levels[0]).abs() < 1e-10);
    }
}

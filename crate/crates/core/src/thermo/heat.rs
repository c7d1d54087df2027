use super::PartitionFunction;
use crate::error::{domain, Error, Result};

/// Specific heat in units of `k_B` with an error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HeatCapacity {
    pub value: f64,
    pub error: f64,
}

/// Estimates above this (in units of `k_B`, or relative to `C` when `C > 1`)
/// mean the second difference is not trustworthy.
const COLLAPSE: f64 = 1e-3;

/// `C = Theta^2 d^2 ln Z / d Theta^2` from five-point second differences at
/// steps `h` and `2h`, combined by Richardson extrapolation.
pub fn specific_heat<F>(ln_z: F, theta: f64) -> Result<HeatCapacity>
where
    F: Fn(f64) -> Result<PartitionFunction>,
{
    if !(theta > 0.0 && theta.is_finite()) {
        return Err(domain(format!("Theta = {theta} must be finite and > 0")));
    }
    // The absolute floor is capped so that the stencil stays inside Theta > 0.
    let h = (1e-3 * theta).max(1e-4).min(1e-2 * theta);
    if theta - 4.0 * h <= 0.0 {
        return Err(Error::StepCollapse {
            theta,
            estimate: f64::INFINITY,
        });
    }
    let offsets = [-4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0];
    let mut v = [0.0; 7];
    let mut noise: f64 = 0.0;
    for (slot, k) in v.iter_mut().zip(offsets) {
        let z = ln_z(theta + k * h)?;
        *slot = z.ln_z;
        noise = noise.max(z.rel_error);
    }
    let [m4, m2, m1, c0, p1, p2, p4] = v;
    let d_h = (-p2 + 16.0 * p1 - 30.0 * c0 + 16.0 * m1 - m2) / (12.0 * h * h);
    let d_2h = (-p4 + 16.0 * p2 - 30.0 * c0 + 16.0 * m2 - m4) / (48.0 * h * h);
    let t2 = theta * theta;
    let value = t2 * (16.0 * d_h - d_2h) / 15.0;
    let truncation = t2 * (d_h - d_2h).abs() / 15.0;
    // Worst-case propagation of ln Z errors through the extrapolated stencil.
    let propagated = t2 * noise * (16.0 * 64.0 / 12.0 + 64.0 / 48.0) / 15.0 / (h * h);
    let error = truncation + propagated;
    if !value.is_finite() || error > COLLAPSE * value.abs().max(1.0) {
        return Err(Error::StepCollapse { theta, estimate: error });
    }
    Ok(HeatCapacity { value, error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::z_harmonic;

    fn harmonic_c(theta: f64) -> f64 {
        let x = 0.5 * theta;
        (x / x.sinh()).powi(2)
    }

    #[test]
    fn harmonic_oscillator() {
        let c = specific_heat(|t| z_harmonic(1, t), 1.0).unwrap();
        assert!((c.value - 0.920_674).abs() < 1e-6);
        for th in [0.05, 0.3, 2.0, 10.0, 40.0] {
            let c = specific_heat(|t| z_harmonic(3, t), th).unwrap();
            assert!((c.value - 3.0 * harmonic_c(th)).abs() < 1e-7, "{th}");
            assert!(c.error < 1e-6);
        }
    }

    #[test]
    fn vanishes_at_low_temperature() {
        let c = specific_heat(|t| z_harmonic(1, t), 60.0).unwrap();
        assert!(c.value.abs() < 1e-5, "{}", c.value);
    }

    #[test]
    fn noisy_input_collapses() {
        let noisy = |t: f64| {
            let mut z = z_harmonic(1, t)?;
            z.ln_z += 1e-6 * (1e4 * t).sin();
            z.rel_error = 1e-6;
            Ok(z)
        };
        assert!(matches!(specific_heat(noisy, 1.0), Err(Error::StepCollapse { .. })));
    }
}

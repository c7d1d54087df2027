use super::{ln_sphere_area, PartitionFunction};
use crate::error::{domain, Result};
use crate::fluctuations::det_harmonic;
use crate::numeric::quadrature::{integrate_to_infinity, QuadOptions};
use crate::paths::{check_theta, harmonic_action};

fn check(dim: usize, theta: f64) -> Result<()> {
    check_theta(theta)?;
    if dim == 0 {
        return Err(domain("dimension D must be >= 1"));
    }
    Ok(())
}

/// `ln(2 sinh x)` without overflow.
fn ln_two_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp()).ln_1p()
}

/// Exact `Z = [2 sinh(Theta/2)]^{-D}`.
pub fn z_harmonic(dim: usize, theta: f64) -> Result<PartitionFunction> {
    check(dim, theta)?;
    Ok(PartitionFunction {
        ln_z: -(dim as f64) * ln_two_sinh(0.5 * theta),
        rel_error: 0.0,
    })
}

/// The quadratic approximation for the harmonic oscillator, assembled from
/// the classical action and the fluctuation determinant and integrated over
/// the endpoint radius numerically.
pub fn z2_harmonic_integral(dim: usize, theta: f64) -> Result<PartitionFunction> {
    check(dim, theta)?;
    let d = dim as f64;
    let ln_det = d * det_harmonic(theta).ln();
    let width = (0.5 * theta).tanh().sqrt().recip();
    let integrand = |r: f64| {
        let s = harmonic_action(r, theta).unwrap_or(f64::INFINITY);
        r.powi(dim as i32 - 1) * (-s).exp()
    };
    let q = integrate_to_infinity(integrand, 0.0, width, QuadOptions::rel(1e-13))?;
    Ok(PartitionFunction {
        ln_z: ln_sphere_area(dim) + q.value.ln() - 0.5 * ln_det,
        rel_error: q.error / q.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert!((z_harmonic(1, 1.0).unwrap().value() - 0.959_517).abs() < 1e-6);
        assert!((z_harmonic(2, 2.0).unwrap().value() - 0.181_015).abs() < 1e-6);
        let z = z_harmonic(1, 200.0).unwrap();
        assert!((z.ln_z + 100.0).abs() < 1e-12);
    }

    #[test]
    fn pipeline_reproduces_closed_form() {
        for dim in 1..=3 {
            for theta in [0.25, 0.5, 1.0, 2.0, 4.0] {
                let a = z2_harmonic_integral(dim, theta).unwrap().value();
                let b = z_harmonic(dim, theta).unwrap().value();
                assert!(((a - b) / b).abs() < 1e-10, "D = {dim}, Theta = {theta}");
            }
        }
    }
}

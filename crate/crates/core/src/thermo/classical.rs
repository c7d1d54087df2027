use super::{ln_sphere_area, PartitionFunction};
use crate::error::Result;
use crate::numeric::quadrature::{integrate_to_infinity, QuadOptions};
use crate::paths::ReducedParams;

/// Classical `Z = (2 pi Theta)^{-D/2} int d^D r exp(-Theta V(r))` with
/// `V(r) = r^2/2 + g r^4/4`.
pub fn z_classical(params: &ReducedParams) -> Result<PartitionFunction> {
    let &ReducedParams { g, dim, theta } = params;
    let d = dim as f64;
    let harmonic_width = theta.sqrt().recip();
    let width = if g > 0.0 {
        harmonic_width.min((4.0 / (g * theta)).powf(0.25))
    } else {
        harmonic_width
    };
    // Substituting r = width * x keeps the integrand O(1).
    let integrand = |x: f64| {
        let r = width * x;
        let r2 = r * r;
        x.powi(dim as i32 - 1) * (-theta * (0.5 * r2 + 0.25 * g * r2 * r2)).exp()
    };
    let q = integrate_to_infinity(integrand, 0.0, 1.0, QuadOptions::rel(1e-13))?;
    Ok(PartitionFunction {
        ln_z: -0.5 * d * (2.0 * std::f64::consts::PI * theta).ln() + ln_sphere_area(dim) + d * width.ln() + q.value.ln(),
        rel_error: q.error / q.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::specific_heat;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Normal};

    fn zc(g: f64, dim: usize, theta: f64) -> PartitionFunction {
        z_classical(&ReducedParams::new(g, dim, theta).unwrap()).unwrap()
    }

    #[test]
    fn harmonic_limit() {
        for th in [0.1, 1.0, 7.0] {
            assert!((zc(0.0, 1, th).value() - 1.0 / th).abs() < 1e-12 / th);
            assert!((zc(0.0, 3, th).ln_z + 3.0 * th.ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn matches_monte_carlo() {
        // Z = (2 pi Theta)^{-3/2} (2 pi / Theta)^{3/2} E[exp(-Theta g r^4 / 4)]
        // with x ~ N(0, 1/Theta) in each coordinate.
        let (g, th) = (0.5, 1.0);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let normal = Normal::new(0.0, (1.0 / th as f64).sqrt()).unwrap();
        let n = 400_000;
        let mut sum = 0.0;
        for _ in 0..n {
            let r2: f64 = (0..3).map(|_| normal.sample(&mut rng).powi(2)).sum();
            sum += (-th * g * r2 * r2 / 4.0).exp();
        }
        let mc = sum / n as f64 / th.powi(3);
        let z = zc(g, 3, th).value();
        assert!(((z - mc) / z).abs() < 5e-3, "{z} vs {mc}");
    }

    #[test]
    fn specific_heat_tends_to_three_quarters_per_dimension() {
        for dim in 1..=3 {
            let p = |th: f64| z_classical(&ReducedParams::new(0.5, dim, th)?);
            let c = specific_heat(p, 1e-6).unwrap();
            let target = 0.75 * dim as f64;
            assert!(((c.value - target) / target).abs() < 2e-3, "D = {dim}: {}", c.value);
        }
    }

    #[test]
    fn harmonic_specific_heat_is_dulong_petit() {
        let c = specific_heat(|th| z_classical(&ReducedParams::new(0.0, 2, th)?), 0.3).unwrap();
        assert!((c.value - 2.0).abs() < 1e-8);
    }
}

//! Jacobi elliptic functions and Legendre elliptic integrals for real
//! arguments and moduli `0 <= k <= 1`.
//!
//! The functions `sn`, `cn`, `dn` come from the descending Landen (AGM)
//! recursion on the amplitude. Very close to `k = 1` a first-order expansion
//! around the hyperbolic limit is used instead. Incomplete integrals reduce
//! to Carlson's symmetric forms `R_F` and `R_D`.
//!
//! A [`Modulus`] keeps both `k` and the complementary modulus
//! `k' = sqrt(1 - k^2)`, so callers that know `k'` directly (the quartic
//! paths, where `k'^2 = q_t^2 / (2 (1 + q_t^2))`) do not lose digits near
//! `k = 1`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::error::{domain, Result};

/// Elliptic modulus with its complement stored to full precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Modulus {
    k: f64,
    kc: f64,
}

impl Modulus {
    pub fn new(k: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&k) {
            return Err(domain(format!("elliptic modulus k = {k} outside [0, 1]")));
        }
        Ok(Self {
            k,
            kc: ((1.0 - k) * (1.0 + k)).sqrt(),
        })
    }

    /// Builds the modulus from `k' = sqrt(1 - k^2)`.
    pub fn from_complement(kc: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&kc) {
            return Err(domain(format!("complementary modulus k' = {kc} outside [0, 1]")));
        }
        Ok(Self {
            k: ((1.0 - kc) * (1.0 + kc)).sqrt(),
            kc,
        })
    }

    pub fn k(&self) -> f64 {
        self.k
    }

    pub fn kc(&self) -> f64 {
        self.kc
    }

    pub fn k2(&self) -> f64 {
        self.k * self.k
    }

    pub fn kc2(&self) -> f64 {
        self.kc * self.kc
    }
}

/// Argument `u` and modulus `k` of a Jacobi elliptic function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipticArgs {
    pub u: f64,
    pub modulus: Modulus,
}

impl EllipticArgs {
    pub fn new(u: f64, k: f64) -> Result<Self> {
        if !u.is_finite() {
            return Err(domain(format!("elliptic argument u = {u} is not finite")));
        }
        Ok(Self {
            u,
            modulus: Modulus::new(k)?,
        })
    }
}

/// `sn`, `cn`, `dn` and the amplitude `am` at one argument.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jacobi {
    pub sn: f64,
    pub cn: f64,
    pub dn: f64,
    pub am: f64,
}

/// Below this `k'^2` the hyperbolic expansion replaces the AGM recursion.
const HYPERBOLIC_KC2: f64 = 1e-12;
const MAX_AGM: usize = 24;

/// The three Jacobi elliptic functions at `(u, k)`.
pub fn jacobi_sn_cn_dn(args: EllipticArgs) -> Result<Jacobi> {
    jacobi(args.u, args.modulus)
}

/// Same as [`jacobi_sn_cn_dn`] for a prevalidated modulus.
pub fn jacobi(u: f64, m: Modulus) -> Result<Jacobi> {
    if !u.is_finite() {
        return Err(domain(format!("elliptic argument u = {u} is not finite")));
    }
    if m.k == 0.0 {
        let (s, c) = u.sin_cos();
        return Ok(Jacobi { sn: s, cn: c, dn: 1.0, am: u });
    }
    let kc2 = m.kc2();
    if kc2 == 0.0 {
        return Ok(hyperbolic(u, 0.0));
    }
    if kc2 < HYPERBOLIC_KC2 {
        let ch = u.cosh();
        // The neglected O(k'^4) terms grow like k'^4 cosh^4 u.
        if kc2 * ch * ch < 1e-6 {
            return Ok(hyperbolic(u, kc2));
        }
    }
    Ok(landen(u, m))
}

fn hyperbolic(u: f64, kc2: f64) -> Jacobi {
    let t = u.tanh();
    let ch = u.cosh();
    let sech = if ch.is_finite() { 1.0 / ch } else { 0.0 };
    let gd = u.sinh().atan();
    if kc2 == 0.0 {
        return Jacobi { sn: t, cn: sech, dn: sech, am: gd };
    }
    let sc = u.sinh() * ch;
    let q = 0.25 * kc2;
    Jacobi {
        sn: t + q * (sc - u) * sech * sech,
        cn: sech - q * (sc - u) * t * sech,
        dn: sech + q * (sc + u) * t * sech,
        am: gd + q * (sc - u) * sech,
    }
}

fn landen(u: f64, m: Modulus) -> Jacobi {
    let mut a = [0.0; MAX_AGM + 1];
    let mut c = [0.0; MAX_AGM + 1];
    a[0] = 1.0;
    c[0] = m.k;
    let mut b = m.kc;
    let mut n = 0;
    while n < MAX_AGM && c[n].abs() > f64::EPSILON * a[n] {
        let an = a[n];
        a[n + 1] = 0.5 * (an + b);
        c[n + 1] = 0.5 * (an - b);
        b = (an * b).sqrt();
        n += 1;
    }
    let mut phi = 2f64.powi(n as i32) * a[n] * u;
    for j in (1..=n).rev() {
        phi = 0.5 * (phi + (c[j] / a[j] * phi.sin()).asin());
    }
    let (sn, cn) = phi.sin_cos();
    // dn^2 = k'^2 + k^2 cn^2 has no cancellation.
    let dn = (m.kc2() + m.k2() * cn * cn).sqrt();
    Jacobi { sn, cn, dn, am: phi }
}

/// Complete elliptic integral of the first kind, `K(k)`, for `0 <= k < 1`.
pub fn complete_k(k: f64) -> Result<f64> {
    complete_k_modulus(Modulus::new(k)?)
}

pub fn complete_k_modulus(m: Modulus) -> Result<f64> {
    if m.kc == 0.0 {
        return Err(domain("K(k) diverges at k = 1"));
    }
    let (mut a, mut b) = (1.0f64, m.kc);
    for _ in 0..MAX_AGM {
        if (a - b).abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
    }
    Ok(PI / (2.0 * a))
}

/// Complete elliptic integral of the second kind, `E(k)`.
pub fn complete_e(k: f64) -> Result<f64> {
    Ok(complete_e_modulus(Modulus::new(k)?))
}

pub fn complete_e_modulus(m: Modulus) -> f64 {
    if m.kc == 0.0 {
        return 1.0;
    }
    carlson_rf(0.0, m.kc2(), 1.0) - m.k2() / 3.0 * carlson_rd(0.0, m.kc2(), 1.0)
}

/// Incomplete elliptic integral of the second kind,
/// `E(phi, k) = int_0^phi sqrt(1 - k^2 sin^2 t) dt`, for any real `phi`.
pub fn incomplete_e(phi: f64, k: f64) -> Result<f64> {
    incomplete_e_modulus(phi, Modulus::new(k)?)
}

pub fn incomplete_e_modulus(phi: f64, m: Modulus) -> Result<f64> {
    if !phi.is_finite() {
        return Err(domain(format!("amplitude phi = {phi} is not finite")));
    }
    let periods = (phi / PI).round();
    let reduced = phi - periods * PI;
    let (s, c) = reduced.sin_cos();
    let base = e_reduced(s, c, (m.kc2() + m.k2() * c * c).sqrt(), m);
    if periods == 0.0 {
        Ok(base)
    } else {
        Ok(2.0 * periods * complete_e_modulus(m) + base)
    }
}

/// Jacobi's epsilon function `E(am u, k)`, the second-kind integral along
/// the signed amplitude of `u`.
pub fn epsilon(u: f64, m: Modulus) -> Result<f64> {
    let j = jacobi(u, m)?;
    epsilon_from(&j, m)
}

/// [`epsilon`] reusing already evaluated Jacobi functions.
pub fn epsilon_from(j: &Jacobi, m: Modulus) -> Result<f64> {
    if j.am.abs() <= FRAC_PI_2 {
        Ok(e_reduced(j.sn, j.cn, j.dn, m))
    } else {
        incomplete_e_modulus(j.am, m)
    }
}

/// `E(phi, k)` for `|phi| <= pi/2` from `sin phi`, `cos phi` and
/// `sqrt(1 - k^2 sin^2 phi)`.
fn e_reduced(s: f64, c: f64, delta: f64, m: Modulus) -> f64 {
    if m.kc == 0.0 {
        return s;
    }
    if s == 0.0 {
        return 0.0;
    }
    let x = c * c;
    let y = delta * delta;
    s * carlson_rf(x, y, 1.0) - m.k2() / 3.0 * s * s * s * carlson_rd(x, y, 1.0)
}

/// Carlson's symmetric integral `R_F(x, y, z)`; at most one argument zero.
pub(crate) fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + z) / 3.0;
    let mut a = a0;
    let q = (3.0 * f64::EPSILON).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut scale = 1.0;
    while scale * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        scale *= 0.25;
    }
    let xx = (a0 - x0) * scale / a;
    let yy = (a0 - y0) * scale / a;
    let zz = -xx - yy;
    let e2 = xx * yy - zz * zz;
    let e3 = xx * yy * zz;
    (1.0 - e2 / 10.0 + e3 / 14.0 + e2 * e2 / 24.0 - 3.0 * e2 * e3 / 44.0) / a.sqrt()
}

/// Carlson's `R_D(x, y, z)`; `z > 0`, at most one of `x`, `y` zero.
pub(crate) fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    let (x0, y0) = (x, y);
    let (mut x, mut y, mut z) = (x, y, z);
    let a0 = (x + y + 3.0 * z) / 5.0;
    let mut a = a0;
    let q = (0.25 * f64::EPSILON).powf(-1.0 / 6.0) * (a0 - x).abs().max((a0 - y).abs()).max((a0 - z).abs());
    let mut scale = 1.0;
    let mut sum = 0.0;
    while scale * q >= a.abs() {
        let (sx, sy, sz) = (x.sqrt(), y.sqrt(), z.sqrt());
        let lam = sx * sy + sy * sz + sz * sx;
        sum += scale / (sz * (z + lam));
        x = 0.25 * (x + lam);
        y = 0.25 * (y + lam);
        z = 0.25 * (z + lam);
        a = 0.25 * (a + lam);
        scale *= 0.25;
    }
    let xx = (a0 - x0) * scale / a;
    let yy = (a0 - y0) * scale / a;
    let zz = -(xx + yy) / 3.0;
    let xy = xx * yy;
    let z2 = zz * zz;
    let e2 = xy - 6.0 * z2;
    let e3 = (3.0 * xy - 8.0 * z2) * zz;
    let e4 = 3.0 * (xy - z2) * z2;
    let e5 = xy * z2 * zz;
    let series = 1.0 - 3.0 * e2 / 14.0 + e3 / 6.0 + 9.0 * e2 * e2 / 88.0 - 3.0 * e4 / 22.0 - 9.0 * e2 * e3 / 52.0
        + 3.0 * e5 / 26.0;
    scale * a.powf(-1.5) * series + 3.0 * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::quadrature::{integrate, QuadOptions};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    fn sncndn(u: f64, k: f64) -> Jacobi {
        jacobi_sn_cn_dn(EllipticArgs::new(u, k).unwrap()).unwrap()
    }

    #[test]
    fn zero_argument() {
        let j = sncndn(0.0, 0.8);
        assert_eq!((j.sn, j.cn, j.dn), (0.0, 1.0, 1.0));
    }

    #[test]
    fn unit_modulus_is_hyperbolic() {
        let j = sncndn(1.2, 1.0);
        assert!(rel(j.sn, 1.2f64.tanh()) < 1e-15);
        assert!(rel(j.cn, 1.0 / 1.2f64.cosh()) < 1e-15);
        assert!(rel(j.dn, 1.0 / 1.2f64.cosh()) < 1e-15);
    }

    #[test]
    fn reference_values() {
        // 40-digit reference values.
        let cases: [(f64, f64, [f64; 3]); 4] = [
            (0.7, 0.9, [0.611_965_845_576_637_05, 0.790_884_191_173_190_42, 0.834_657_547_211_198_47]),
            (3.0, 0.99, [0.998_681_589_962_355_68, 0.051_333_048_519_070_831, 0.149_942_134_642_144_86]),
            (-2.5, 0.5, [-0.749_903_049_901_784_14, -0.661_547_742_606_686_13, 0.927_044_418_535_056_26]),
            (5.0, (1.0f64 - 1e-8).sqrt(), [0.999_909_206_760_081_16, 0.013_475_096_898_548_231, 0.013_475_467_880_911_660]),
        ];
        for (u, k, [sn, cn, dn]) in cases {
            let j = sncndn(u, k);
            assert!(rel(j.sn, sn) < 1e-12, "sn({u},{k})");
            assert!(rel(j.cn, cn) < 1e-12, "cn({u},{k}): {} vs {cn}", j.cn);
            assert!(rel(j.dn, dn) < 1e-12, "dn({u},{k})");
        }
    }

    #[test]
    fn agrees_with_inverted_first_kind_integral() {
        // Oracle: solve F(phi, k) = u by bisection on a quadrature of the
        // defining integral; sn = sin(phi).
        let (u, k) = (0.7, 0.9);
        let f = |phi: f64| {
            integrate(|t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, QuadOptions::rel(1e-15))
                .unwrap()
                .value
        };
        let (mut lo, mut hi) = (0.0, FRAC_PI_2);
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if f(mid) < u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let phi = 0.5 * (lo + hi);
        let j = sncndn(u, k);
        assert!((j.sn - phi.sin()).abs() < 1e-13);
        assert!((j.cn - phi.cos()).abs() < 1e-13);
        assert!((j.dn - (1.0 - k * k * phi.sin().powi(2)).sqrt()).abs() < 1e-13);
        assert!((j.am - phi).abs() < 1e-13);
    }

    #[test]
    fn identities_and_reductions_on_grid() {
        for i in 0..=200 {
            let u = -5.0 + 0.05 * i as f64;
            for k in [0.0, 0.3, 0.5, std::f64::consts::FRAC_1_SQRT_2, 0.99, 0.999_999_9, 1.0] {
                let j = sncndn(u, k);
                assert!((j.sn * j.sn + j.cn * j.cn - 1.0).abs() < 1e-12);
                assert!((j.dn * j.dn + k * k * j.sn * j.sn - 1.0).abs() < 1e-12);
                let m = sncndn(-u, k);
                assert_eq!(m.sn, -j.sn);
                assert_eq!((m.cn, m.dn), (j.cn, j.dn));
            }
            let z = sncndn(u, 0.0);
            assert!((z.sn - u.sin()).abs() < 1e-12 && (z.cn - u.cos()).abs() < 1e-12 && z.dn == 1.0);
            let o = sncndn(u, 1.0);
            let sech = 1.0 / u.cosh();
            assert!((o.sn - u.tanh()).abs() < 1e-12 && (o.cn - sech).abs() < 1e-12 && (o.dn - sech).abs() < 1e-12);
        }
    }

    #[test]
    fn hyperbolic_branch_matches_landen_at_switch() {
        let m = Modulus::from_complement(1.1e-6).unwrap();
        for u in [0.1, 1.0, 3.0, 6.0] {
            let a = hyperbolic(u, m.kc2());
            let b = landen(u, m);
            assert!((a.sn - b.sn).abs() < 1e-13, "u={u}");
            assert!(rel(a.cn, b.cn) < 1e-11, "u={u}: {} {}", a.cn, b.cn);
            assert!(rel(a.dn, b.dn) < 1e-11, "u={u}");
        }
    }

    #[test]
    fn complete_first_kind() {
        assert_eq!(complete_k(0.0).unwrap(), FRAC_PI_2);
        let k = 0.5f64.sqrt();
        let agm = complete_k(k).unwrap();
        let quad = integrate(|t: f64| 1.0 / (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, QuadOptions::rel(1e-15))
            .unwrap()
            .value;
        assert!((agm - 1.854_074_677_301_37).abs() < 1e-13);
        assert!(rel(agm, quad) < 1e-13);
        assert!(complete_k(1.0).is_err());
        assert!(complete_k(1.2).is_err());
        assert!(complete_k(-0.1).is_err());
    }

    #[test]
    fn complete_first_kind_log_divergence() {
        let m = Modulus::from_complement(1e-5).unwrap(); // k^2 = 1 - 1e-10
        let ratio = complete_k_modulus(m).unwrap() / (4.0 / m.kc()).ln();
        assert!((ratio - 1.0).abs() < 1e-9);
        let via_k = complete_k((1.0f64 - 1e-10).sqrt()).unwrap() / (4.0 / 1e-5f64).ln();
        assert!((via_k - 1.0).abs() < 1e-6);
    }

    #[test]
    fn second_kind_special_values() {
        for phi in [0.0, 0.3, 1.0, 1.5] {
            assert!((incomplete_e(phi, 0.0).unwrap() - phi).abs() < 1e-15);
        }
        assert!((incomplete_e(FRAC_PI_2, 0.0).unwrap() - FRAC_PI_2).abs() < 1e-15);
        for k in [0.2, 0.7, 0.95] {
            assert!(rel(incomplete_e(FRAC_PI_2, k).unwrap(), complete_e(k).unwrap()) < 1e-14);
        }
        assert!((complete_e(1.0).unwrap() - 1.0).abs() < 1e-15);
        assert!((incomplete_e(0.4, 1.0).unwrap() - 0.4f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn second_kind_against_quadrature() {
        let (phi, k) = (0.9, 0.95);
        let quad = integrate(|t: f64| (1.0 - k * k * t.sin().powi(2)).sqrt(), 0.0, phi, QuadOptions::rel(1e-15))
            .unwrap()
            .value;
        let e = incomplete_e(phi, k).unwrap();
        assert!(rel(e, quad) < 1e-12);
        assert!(rel(e, 0.796_273_836_398_239_93) < 1e-14);
    }

    #[test]
    fn second_kind_quasi_periodic() {
        assert!(rel(incomplete_e(2.5, 0.8).unwrap(), 1.938_048_755_343_657_3) < 1e-13);
        assert!(rel(incomplete_e(-4.0, 0.3).unwrap(), -3.919_822_715_164_328_8) < 1e-13);
    }

    #[test]
    fn second_kind_monotonicity() {
        let mut prev = 0.0;
        for i in 1..=50 {
            let phi = FRAC_PI_2 * i as f64 / 50.0;
            let e = incomplete_e(phi, 0.9).unwrap();
            assert!(e > prev);
            prev = e;
        }
        let mut prev = f64::INFINITY;
        for i in 0..=50 {
            let e = incomplete_e(1.2, i as f64 / 50.0).unwrap();
            assert!(e < prev);
            prev = e;
        }
    }

    #[test]
    fn epsilon_is_odd_and_matches_amplitude() {
        let m = Modulus::new(0.93).unwrap();
        for u in [0.2, 1.1, 2.0, 4.0] {
            let j = jacobi(u, m).unwrap();
            let e = epsilon(u, m).unwrap();
            assert!(rel(e, incomplete_e_modulus(j.am, m).unwrap()) < 1e-13);
            assert_eq!(epsilon(-u, m).unwrap(), -e);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(EllipticArgs::new(1.0, 1.5).is_err());
        assert!(EllipticArgs::new(f64::NAN, 0.5).is_err());
        assert!(EllipticArgs::new(f64::INFINITY, 0.5).is_err());
        assert!(incomplete_e(0.5, -0.2).is_err());
    }
}

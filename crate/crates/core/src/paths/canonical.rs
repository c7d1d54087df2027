//! Canonical solution pairs `(f_a, f_b)` of `-f'' + w(theta) f = 0` with
//! `f_b(0) = 0` and unit Wronskian `f_a f_b' - f_a' f_b = 1`.

use super::QuarticPath;
use crate::elliptic::{epsilon, epsilon_from};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairValues {
    pub a: f64,
    pub b: f64,
    pub da: f64,
    pub db: f64,
}

impl PairValues {
    pub fn wronskian(&self) -> f64 {
        self.a * self.db - self.da * self.b
    }
}

pub trait CanonicalPair {
    fn period(&self) -> f64;
    fn eval(&self, theta: f64) -> PairValues;
    /// The coefficient `w(theta)` of the fluctuation operator.
    fn weight(&self, theta: f64) -> f64;
}

/// `(cosh theta, sinh theta)` for the harmonic oscillator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HarmonicPair {
    pub theta: f64,
}

impl CanonicalPair for HarmonicPair {
    fn period(&self) -> f64 {
        self.theta
    }

    fn eval(&self, theta: f64) -> PairValues {
        let (c, s) = (theta.cosh(), theta.sinh());
        PairValues { a: c, b: s, da: s, db: c }
    }

    fn weight(&self, _theta: f64) -> f64 {
        1.0
    }
}

/// Longitudinal pair along a quartic path; `w = 1 + 3 q_c^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LongitudinalPair {
    path: QuarticPath,
    b0: f64,
}

/// Transverse pair along a quartic path; `w = 1 + q_c^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransversePair {
    path: QuarticPath,
    g0: f64,
}

fn degenerate() -> Error {
    Error::Degenerate("q_t = 0: the quartic pair collapses, use the harmonic pair".into())
}

pub fn canonical_longitudinal(path: &QuarticPath) -> Result<LongitudinalPair> {
    if path.q_t() == 0.0 {
        return Err(degenerate());
    }
    let mut pair = LongitudinalPair { path: *path, b0: 0.0 };
    let u0 = -path.u_end();
    let j = path.jacobi_at(0.0);
    let f = pair.f(u0, j.sn, j.cn, j.dn, epsilon(u0, path.modulus())?);
    pair.b0 = f - j.cn * j.dn / j.sn;
    Ok(pair)
}

pub fn canonical_transverse(path: &QuarticPath) -> Result<TransversePair> {
    if path.q_t() == 0.0 {
        return Err(degenerate());
    }
    let k2 = path.modulus().k2();
    let u0 = -path.u_end();
    let g0 = epsilon(u0, path.modulus())? + (k2 - 1.0) * u0;
    Ok(TransversePair { path: *path, g0 })
}

impl LongitudinalPair {
    pub fn path(&self) -> &QuarticPath {
        &self.path
    }

    /// The regular part of the bracket; the full bracket is `F - cn dn / sn`.
    fn f(&self, u: f64, sn: f64, cn: f64, dn: f64, e: f64) -> f64 {
        let k2 = self.path.modulus().k2();
        let a = (k2 - 1.0) / k2;
        let b = (1.0 - 2.0 * k2) / k2;
        a * u + b * e + (k2 - 1.0) * sn * cn / dn
    }
}

impl CanonicalPair for LongitudinalPair {
    fn period(&self) -> f64 {
        self.path.theta()
    }

    // With P = sn dn / cn^2 the second solution is (P (F - B0) - dn^2/cn)
    // up to scale; the pole of cn dn / sn is cancelled by the zero of P.
    fn eval(&self, theta: f64) -> PairValues {
        let p = &self.path;
        let (q_t, s) = (p.q_t(), p.s());
        let m = p.modulus();
        let k2 = m.k2();
        let u = p.u(theta);
        let j = p.jacobi_at(theta);
        let (sn, cn, dn) = (j.sn, j.cn, j.dn);
        let e = epsilon_from(&j, m).unwrap_or(f64::NAN);

        let pp = sn * dn / (cn * cn);
        let dpp = (cn * cn * dn * dn - k2 * sn * sn * cn * cn + 2.0 * sn * sn * dn * dn) / (cn * cn * cn);
        let f = self.f(u, sn, cn, dn, e);
        let a = (k2 - 1.0) / k2;
        let b = (1.0 - 2.0 * k2) / k2;
        let df = a + b * dn * dn + (k2 - 1.0) * (cn * cn - sn * sn + k2 * sn * sn * cn * cn / (dn * dn));
        let n = pp * f - dn * dn / cn;
        let dn2_over_cn = sn * dn * (dn * dn - 2.0 * k2 * cn * cn) / (cn * cn);
        let dnn = dpp * f + pp * df - dn2_over_cn;

        PairValues {
            a: q_t * s * pp,
            da: q_t * s * s * dpp,
            b: (n - pp * self.b0) / (q_t * s * s),
            db: (dnn - dpp * self.b0) / (q_t * s),
        }
    }

    fn weight(&self, theta: f64) -> f64 {
        let q = self.path.position(theta);
        1.0 + 3.0 * q * q
    }
}

impl TransversePair {
    pub fn path(&self) -> &QuarticPath {
        &self.path
    }
}

impl CanonicalPair for TransversePair {
    fn period(&self) -> f64 {
        self.path.theta()
    }

    fn eval(&self, theta: f64) -> PairValues {
        let p = &self.path;
        let (q_t, s) = (p.q_t(), p.s());
        let m = p.modulus();
        let k2 = m.k2();
        let u = p.u(theta);
        let j = p.jacobi_at(theta);
        let (sn, cn, dn) = (j.sn, j.cn, j.dn);
        let g = epsilon_from(&j, m).unwrap_or(f64::NAN) + (k2 - 1.0) * u - self.g0;
        PairValues {
            a: q_t / cn,
            da: q_t * s * sn * dn / (cn * cn),
            b: g / (q_t * s * k2 * cn),
            db: (sn * dn / (cn * cn) * g + k2 * cn) / (q_t * k2),
        }
    }

    fn weight(&self, theta: f64) -> f64 {
        let q = self.path.position(theta);
        1.0 + q * q
    }
}

#[cfg(test)]
mod tests {
    use super::super::quartic_path_from_qt;
    use super::*;

    fn pairs(q_t: f64, th: f64) -> (LongitudinalPair, TransversePair) {
        let p = quartic_path_from_qt(q_t, th).unwrap();
        (canonical_longitudinal(&p).unwrap(), canonical_transverse(&p).unwrap())
    }

    fn check_pair(pair: &dyn CanonicalPair, label: &str) {
        check_wronskian(pair, label);
        let th = pair.period();
        assert!(pair.eval(0.0).b.abs() < 1e-12, "{label}: f_b(0) = {}", pair.eval(0.0).b);
        let h = 1e-4 * th.max(0.1);
        for i in 0..50 {
            let t = th * (i as f64 + 0.5) / 50.0;
            let v = pair.eval(t);
            let w = pair.weight(t);
            let parts: [(fn(PairValues) -> f64, &str); 2] = [(|v| v.a, "a"), (|v| v.b, "b")];
            for (f, name) in parts {
                let (fm, f0, fp) = (f(pair.eval(t - h)), f(v), f(pair.eval(t + h)));
                let residual = -(fp - 2.0 * f0 + fm) / (h * h) + w * f0;
                let scale = (w * f0).abs().max(1.0);
                assert!(residual.abs() < 1e-6 * scale, "{label} {name}: residual {residual} at {t}");
            }
            let (vm, vp) = (pair.eval(t - h), pair.eval(t + h));
            assert!(((vp.a - vm.a) / (2.0 * h) - v.da).abs() < 1e-6 * v.da.abs().max(1.0));
            assert!(((vp.b - vm.b) / (2.0 * h) - v.db).abs() < 1e-6 * v.db.abs().max(1.0));
        }
    }

    fn check_wronskian(pair: &dyn CanonicalPair, label: &str) {
        let th = pair.period();
        for i in 0..50 {
            let t = th * (i as f64 + 0.5) / 50.0;
            let w = pair.eval(t).wronskian();
            assert!((w - 1.0).abs() < 1e-9, "{label}: W({t}) = {w}");
        }
    }

    #[test]
    fn small_turning_point_keeps_unit_wronskian() {
        for q_t in [1e-2, 1e-4] {
            let (l, t) = pairs(q_t, 2.0);
            check_wronskian(&l, "longitudinal");
            check_wronskian(&t, "transverse");
        }
    }

    #[test]
    fn pairs_are_canonical_solutions() {
        for (q_t, th) in [(1.0, 1.0), (1.0, 1.8), (0.3, 3.0), (2.0, 0.5), (0.1, 2.0), (5.0, 0.2)] {
            let (l, t) = pairs(q_t, th);
            check_pair(&l, &format!("longitudinal q_t={q_t} Theta={th}"));
            check_pair(&t, &format!("transverse q_t={q_t} Theta={th}"));
        }
        check_pair(&HarmonicPair { theta: 2.0 }, "harmonic");
    }

    #[test]
    fn first_solutions_follow_the_path() {
        let p = quartic_path_from_qt(1.0, 1.0).unwrap();
        let (l, t) = pairs(1.0, 1.0);
        let h = 1e-5;
        for i in 0..=10 {
            let th = 0.1 * i as f64;
            assert!((t.eval(th).a - p.position(th)).abs() < 1e-14);
            let fd = (p.position(th + h) - p.position(th - h)) / (2.0 * h);
            assert!((l.eval(th).a - fd).abs() < 1e-8);
        }
    }

    #[test]
    fn regular_at_the_midpoint() {
        let (l, _) = pairs(1.0, 1.0);
        let mid = l.eval(0.5);
        let near = l.eval(0.5 + 1e-9);
        assert!(mid.b.is_finite() && mid.db.is_finite());
        assert!((mid.b - near.b).abs() < 1e-8);
        assert!((mid.wronskian() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn harmonic_limit() {
        let th = 2.0;
        let (l, t) = pairs(1e-4, th);
        let q_t = 1e-4;
        for i in 0..=10 {
            let x = th * i as f64 / 10.0;
            // Both pairs reduce to combinations of cosh and sinh of (theta - Theta/2).
            let c = (x - 0.5 * th).cosh();
            assert!(((t.eval(x).a - q_t * c) / (q_t * c)).abs() < 1e-7);
            // f_b(0) = 0 and f_b'(0) = 1 / f_a(0) fix f_b = sinh(theta) / f_a(0).
            let b_h = x.sinh();
            for pair in [&l as &dyn CanonicalPair, &t] {
                let b = pair.eval(x).b * pair.eval(0.0).a;
                assert!((b - b_h).abs() < 1e-6 * b_h.max(1.0), "{b} vs {b_h}");
            }
        }
    }

    #[test]
    fn zero_turning_point_is_degenerate() {
        let p = quartic_path_from_qt(0.0, 1.0).unwrap();
        assert!(matches!(canonical_longitudinal(&p), Err(Error::Degenerate(_))));
        assert!(matches!(canonical_transverse(&p), Err(Error::Degenerate(_))));
    }
}

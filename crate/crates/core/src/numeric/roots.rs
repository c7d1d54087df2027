use crate::error::{Error, Result};

/// Bisection on a sign change of `f` in `[lo, hi]`.
///
/// Stops once the bracket is narrower than `interval_tol` and
/// `accept(x, f(x))` holds, or when the bracket reaches float resolution.
pub fn bisect<F, A>(mut f: F, mut lo: f64, mut hi: f64, interval_tol: f64, max_iter: usize, accept: A) -> Result<f64>
where
    F: FnMut(f64) -> f64,
    A: Fn(f64, f64) -> bool,
{
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return Err(Error::Convergence {
            what: "bisection",
            detail: format!("no sign change on [{lo}, {hi}]: f = ({f_lo:e}, {f_hi:e})"),
        });
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            return Ok(mid);
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
        if hi - lo <= interval_tol {
            let x = 0.5 * (lo + hi);
            if accept(x, f(x)) {
                return Ok(x);
            }
        }
    }
    Err(Error::Convergence {
        what: "bisection",
        detail: format!("{max_iter} iterations, bracket [{lo}, {hi}]"),
    })
}

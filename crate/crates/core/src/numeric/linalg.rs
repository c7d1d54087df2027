//! Small dense matrix helpers with explicit conditioning checks.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Inversions whose 2-norm condition number exceeds this are refused.
pub const MAX_CONDITION: f64 = 1e12;

pub fn condition_number(m: &DMatrix<f64>) -> f64 {
    let sv = m.singular_values();
    let max = sv.max();
    let min = sv.min();
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

/// Inverse via partially pivoted LU, refused above [`MAX_CONDITION`].
pub fn checked_inverse(m: &DMatrix<f64>, what: &'static str) -> Result<DMatrix<f64>> {
    let condition = condition_number(m);
    if !condition.is_finite() || condition > MAX_CONDITION {
        return Err(Error::Singular { what, condition });
    }
    m.clone().lu().try_inverse().ok_or(Error::Singular { what, condition })
}

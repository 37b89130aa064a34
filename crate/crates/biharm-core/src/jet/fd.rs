//! Finite-difference oracle for cross-validating jets.
//!
//! Nested central differences with one Richardson extrapolation level:
//! `(4·D(h/2) − D(h))/3` cancels the leading h² term, leaving O(h⁴) error.

use super::Expr;
use crate::error::Error;
use crate::scalar::Real;
use crate::Result;
use alloc::string::ToString;
use alloc::vec::Vec;

/// Finite-difference value plus a cancellation warning, raised when the
/// requested step amplifies roundoff beyond what the oracle can certify.
#[derive(Clone, Copy, Debug)]
pub struct FdResult {
    pub value: f64,
    pub warning: bool,
}

fn central(e: &Expr, point: &mut Vec<f64>, mi: &mut [u8], h: f64) -> Result<f64> {
    let Some(axis) = mi.iter().position(|&k| k > 0) else {
        return e.eval(point);
    };
    mi[axis] -= 1;
    point[axis] += h;
    let plus = central(e, point, mi, h)?;
    point[axis] -= 2.0 * h;
    let minus = central(e, point, mi, h)?;
    point[axis] += h;
    mi[axis] += 1;
    Ok((plus - minus) / (2.0 * h))
}

/// Mixed partial `∂^mi e` at `point` by central differences.
///
/// Total order must be ≤ 4 and `step > 0`. Returns the Richardson-combined
/// value; `warning` is set when the cancellation estimate
/// `ε·4^ord/(2·step)^ord` exceeds `10⁻⁶·(1+|value|)`.
pub fn fd_derivative(e: &Expr, point: &[f64], multi_index: &[u8], step: f64) -> Result<FdResult> {
    let order: usize = multi_index.iter().map(|&k| k as usize).sum();
    if order > 4 {
        return Err(Error::Order {
            needed: order,
            available: 4,
        });
    }
    if !(step > 0.0) {
        return Err(Error::Domain("step must be positive".to_string()));
    }
    if order == 0 {
        return Ok(FdResult {
            value: e.eval(point)?,
            warning: false,
        });
    }
    let mut mi = multi_index.to_vec();
    let mut pt = point.to_vec();
    let coarse = central(e, &mut pt, &mut mi, step)?;
    let fine = central(e, &mut pt, &mut mi, step / 2.0)?;
    let value = (4.0 * fine - coarse) / 3.0;
    let amplification =
        f64::EPSILON * Real::powi(4.0, order as i32) / Real::powi(step, order as i32);
    let warning = amplification > 1e-6 * (1.0 + value.abs());
    Ok(FdResult { value, warning })
}

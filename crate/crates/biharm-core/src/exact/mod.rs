//! Exact arithmetic: arbitrary-precision rationals, quadratic surds, exact
//! quadratic solving and certified decimal/interval evaluation.
//!
//! Every classification predicate downstream is polynomial in squared radii,
//! so deciding them inside a single degree-2 extension `Q(√d)` is enough; no
//! general algebraic-number tower is kept.

mod interval;
mod surd;

pub use interval::Interval;
pub use surd::{solve_quadratic_exact, solve_quadratic_surd, RootKind, RootSet, Surd};

use crate::error::Error;
use crate::Result;
use alloc::format;
use alloc::string::String;
use num_bigint::BigInt;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator (the backing type canonicalizes on construction).
pub type Rational = num_rational::BigRational;

/// `p/q` as a `Rational` from machine integers.
pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

/// Integer `n` as a `Rational`.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Renders as `num/den`, denominator always present (so `5` prints `5/1`).
pub fn rational_string(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `a`, `a/b` or a plain decimal like `-0.25` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Build(format!("cannot parse rational from {s:?}"));
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num.trim().parse().map_err(|_| bad())?;
        let d: BigInt = den.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(Error::Build(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        let digits = frac_part.len() as u32;
        let joined = format!("{int_part}{frac_part}");
        let n: BigInt = joined.parse().map_err(|_| bad())?;
        let scale = BigInt::from(10).pow(digits);
        return Ok(Rational::new(n, scale));
    }
    let n: BigInt = s.parse().map_err(|_| bad())?;
    Ok(Rational::from_integer(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("6/7").unwrap(), rat(6, 7));
        assert_eq!(parse_rational("-3").unwrap(), rat_int(-3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("1/0").is_err());
    }

    #[test]
    fn rational_render() {
        assert_eq!(rational_string(&rat(10, 3)), "10/3");
        assert_eq!(rational_string(&rat_int(5)), "5/1");
        assert_eq!(rational_string(&rat(-4, 8)), "-1/2");
    }
}

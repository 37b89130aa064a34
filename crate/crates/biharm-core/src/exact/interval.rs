//! Rational interval arithmetic with certified square-root enclosures, used
//! for cross-radicand comparisons and the nested-radical equality
//! certificates.

use super::Rational;
use num_bigint::BigInt;
use num_traits::Signed;

/// Closed rational interval `[lo, hi]` guaranteed to contain the true value.
#[derive(Clone, Debug, PartialEq)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Interval {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Interval {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }
    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// Enclosure of `√n` for integer `n ≥ 0` with width ≤ 10⁻ᵈⁱᵍⁱᵗˢ:
    /// `⌊√(n·10^{2g})⌋ / 10^g ≤ √n ≤ (⌊√(n·10^{2g})⌋+1) / 10^g`.
    pub fn sqrt_of_int(n: &BigInt, digits: usize) -> Interval {
        debug_assert!(!n.is_negative());
        let scale = BigInt::from(10).pow(digits as u32);
        let scaled = n * &scale * &scale;
        let root = scaled.sqrt();
        Interval {
            lo: Rational::new(root.clone(), scale.clone()),
            hi: Rational::new(root + BigInt::from(1), scale),
        }
    }

    /// Enclosure of `√r` for rational `r ≥ 0`.
    pub fn sqrt_of_rational(r: &Rational, digits: usize) -> Interval {
        debug_assert!(!r.is_negative());
        // √(a/b) = √(a·b)/b
        let ab = r.numer() * r.denom();
        let inner = Interval::sqrt_of_int(&ab, digits);
        inner.scale(&Rational::new(BigInt::from(1), r.denom().clone()))
    }

    pub fn shift(&self, c: &Rational) -> Interval {
        Interval {
            lo: &self.lo + c,
            hi: &self.hi + c,
        }
    }

    pub fn scale(&self, c: &Rational) -> Interval {
        if c.is_negative() {
            Interval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Interval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let candidates = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let mut lo = candidates[0].clone();
        let mut hi = candidates[0].clone();
        for c in &candidates[1..] {
            if c < &lo {
                lo = c.clone();
            }
            if c > &hi {
                hi = c.clone();
            }
        }
        Interval { lo, hi }
    }

    pub fn strictly_below(&self, o: &Interval) -> bool {
        self.hi < o.lo
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// True when the whole interval lies within `10^{-digits}` of zero.
    pub fn abs_below_pow10(&self, digits: usize) -> bool {
        let bound = Rational::new(BigInt::from(1), BigInt::from(10).pow(digits as u32));
        let mag = if self.lo.abs() > self.hi.abs() {
            self.lo.abs()
        } else {
            self.hi.abs()
        };
        mag < bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn sqrt_enclosure_tightens() {
        let iv = Interval::sqrt_of_int(&BigInt::from(2), 30);
        assert!(iv.width() <= rat(1, 10i64.pow(18)) * rat(1, 10i64.pow(12)));
        assert!(iv.lo() < iv.hi());
        let sq = iv.mul(&iv);
        assert!(sq.lo() <= &rat_int(2) && &rat_int(2) <= sq.hi());
    }

    #[test]
    fn negative_scale_flips() {
        let iv = Interval::new(rat_int(1), rat_int(2)).scale(&rat_int(-3));
        assert_eq!(iv.lo(), &rat_int(-6));
        assert_eq!(iv.hi(), &rat_int(-3));
    }

    #[test]
    fn abs_bound_check() {
        let tiny = Interval::new(rat(-1, 10i64.pow(12)), rat(1, 10i64.pow(12)));
        assert!(tiny.abs_below_pow10(11));
        assert!(!tiny.abs_below_pow10(13));
    }
}

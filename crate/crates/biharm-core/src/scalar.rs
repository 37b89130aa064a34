//! Scalar abstraction over the two working precisions.
//!
//! All pointwise numerics are generic over [`Real`]. The default instance is
//! `f64`; [`Dd`] is an unevaluated double-double sum giving ~32 significant
//! digits, used by the order-6 residual suite where a `Δ²` chain loses too
//! many digits in double precision.

use crate::exact::Rational;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use num_traits::ToPrimitive;

/// Floating scalar with the elementary functions the chart grammar needs.
pub trait Real:
    Copy
    + Clone
    + PartialEq
    + PartialOrd
    + fmt::Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    /// Short name used in reports ("f64" or "dd").
    const NAME: &'static str;

    fn zero() -> Self;
    fn one() -> Self;
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn from_i64(n: i64) -> Self;
    /// Correctly-rounded-to-working-precision conversion of an exact rational.
    fn from_rational(r: &Rational) -> Self;
    fn sqrt(self) -> Self;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn abs(self) -> Self;
    fn powi(self, n: i32) -> Self;
    fn recip(self) -> Self {
        Self::one() / self
    }
    fn pi() -> Self;
    /// Unit roundoff of the representation.
    fn epsilon() -> f64;
    fn max_of(self, other: Self) -> Self {
        if self > other {
            self
        } else {
            other
        }
    }
    fn is_finite(self) -> bool {
        self.to_f64().is_finite()
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl Real for f64 {
    const NAME: &'static str = "f64";

    fn zero() -> Self {
        0.0
    }
    fn one() -> Self {
        1.0
    }
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn from_i64(n: i64) -> Self {
        n as f64
    }
    fn from_rational(r: &Rational) -> Self {
        rational_to_f64(r)
    }
    fn sqrt(self) -> Self {
        libm::sqrt(self)
    }
    fn sin(self) -> Self {
        libm::sin(self)
    }
    fn cos(self) -> Self {
        libm::cos(self)
    }
    fn abs(self) -> Self {
        libm::fabs(self)
    }
    fn powi(self, n: i32) -> Self {
        let mut acc = 1.0;
        let mut base = if n < 0 { 1.0 / self } else { self };
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc
    }
    fn pi() -> Self {
        core::f64::consts::PI
    }
    fn epsilon() -> f64 {
        f64::EPSILON
    }
}

/// Double-double number: the unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Dd {
    hi: f64,
    lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, libm::fma(a, b, -p))
}

// π/2 split into three doubles; the third term keeps the argument reduction
// error well below the double-double roundoff.
const PI2_HI: f64 = 1.570796326794896557998981734272092580795288085937500e0;
const PI2_MID: f64 = 6.123233995736766035868820147291983023128014905611e-17;
const PI2_LO: f64 = -1.4973849048591698329435039987894998441631916087848e-33;

impl Dd {
    pub const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };
    pub const ONE: Dd = Dd { hi: 1.0, lo: 0.0 };

    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (s, e) = two_sum(hi, lo);
        Dd { hi: s, lo: e }
    }

    #[inline]
    pub fn from_f64(x: f64) -> Self {
        Dd { hi: x, lo: 0.0 }
    }

    pub fn hi(self) -> f64 {
        self.hi
    }
    pub fn lo(self) -> f64 {
        self.lo
    }

    fn add_dd(self, o: Dd) -> Dd {
        let (s, mut e) = two_sum(self.hi, o.hi);
        let (t, f) = two_sum(self.lo, o.lo);
        e += t;
        let (s, mut e2) = quick_two_sum(s, e);
        e2 += f;
        let (hi, lo) = quick_two_sum(s, e2);
        Dd { hi, lo }
    }

    fn mul_dd(self, o: Dd) -> Dd {
        let (p, mut e) = two_prod(self.hi, o.hi);
        e += self.hi * o.lo + self.lo * o.hi;
        let (hi, lo) = quick_two_sum(p, e);
        Dd { hi, lo }
    }

    fn div_dd(self, o: Dd) -> Dd {
        let q1 = self.hi / o.hi;
        let r = self.add_dd(-(o.mul_dd(Dd::from_f64(q1))));
        let q2 = r.hi / o.hi;
        let r = r.add_dd(-(o.mul_dd(Dd::from_f64(q2))));
        let q3 = r.hi / o.hi;
        let (s, e) = quick_two_sum(q1, q2);
        Dd { hi: s, lo: e }.add_dd(Dd::from_f64(q3))
    }

    fn sqrt_dd(self) -> Dd {
        if self.hi == 0.0 && self.lo == 0.0 {
            return Dd::ZERO;
        }
        // One Newton step on a double-precision seed restores full precision.
        let y = Dd::from_f64(libm::sqrt(self.hi));
        let residual = self.add_dd(-(y.mul_dd(y)));
        y.add_dd(residual.div_dd(y.add_dd(y)))
    }

    /// sin and cos on a reduced argument |r| ≤ π/4 + ε, by Taylor series.
    fn sin_cos_reduced(r: Dd) -> (Dd, Dd) {
        let r2 = r.mul_dd(r);
        // sin
        let mut term = r;
        let mut sin = r;
        let mut k = 1i64;
        loop {
            term = term.mul_dd(r2).div_dd(Dd::from_f64(-((2 * k) * (2 * k + 1)) as f64));
            sin = sin.add_dd(term);
            k += 1;
            if libm::fabs(term.hi) < 1e-36 || k > 40 {
                break;
            }
        }
        // cos
        let mut term = Dd::ONE;
        let mut cos = Dd::ONE;
        let mut k = 1i64;
        loop {
            term = term.mul_dd(r2).div_dd(Dd::from_f64(-((2 * k - 1) * (2 * k)) as f64));
            cos = cos.add_dd(term);
            k += 1;
            if libm::fabs(term.hi) < 1e-36 || k > 40 {
                break;
            }
        }
        (sin, cos)
    }

    fn sin_cos(self) -> (Dd, Dd) {
        let n = libm::round(self.hi / PI2_HI);
        let nd = Dd::from_f64(n);
        let mut r = self.add_dd(-(Dd::new(PI2_HI, PI2_MID).mul_dd(nd)));
        r = r.add_dd(Dd::from_f64(-n * PI2_LO));
        let (s, c) = Dd::sin_cos_reduced(r);
        match (n as i64).rem_euclid(4) {
            0 => (s, c),
            1 => (c, -s),
            2 => (-s, -c),
            _ => (-c, s),
        }
    }
}

impl PartialEq for Dd {
    fn eq(&self, o: &Self) -> bool {
        self.hi == o.hi && self.lo == o.lo
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&o.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&o.lo),
            other => other,
        }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, o: Dd) -> Dd {
        self.add_dd(o)
    }
}
impl Sub for Dd {
    type Output = Dd;
    fn sub(self, o: Dd) -> Dd {
        self.add_dd(-o)
    }
}
impl Mul for Dd {
    type Output = Dd;
    fn mul(self, o: Dd) -> Dd {
        self.mul_dd(o)
    }
}
impl Div for Dd {
    type Output = Dd;
    fn div(self, o: Dd) -> Dd {
        self.div_dd(o)
    }
}
impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}
impl AddAssign for Dd {
    fn add_assign(&mut self, o: Dd) {
        *self = *self + o;
    }
}
impl SubAssign for Dd {
    fn sub_assign(&mut self, o: Dd) {
        *self = *self - o;
    }
}
impl MulAssign for Dd {
    fn mul_assign(&mut self, o: Dd) {
        *self = *self * o;
    }
}

impl fmt::Display for Dd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:e}{:+e}", self.hi, self.lo)
    }
}

impl Real for Dd {
    const NAME: &'static str = "dd";

    fn zero() -> Self {
        Dd::ZERO
    }
    fn one() -> Self {
        Dd::ONE
    }
    fn from_f64(x: f64) -> Self {
        Dd::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        self.hi
    }
    fn from_i64(n: i64) -> Self {
        // |n| below 2^53 is exact in the hi part alone.
        Dd::from_f64(n as f64)
    }
    fn from_rational(r: &Rational) -> Self {
        let hi = rational_to_f64(r);
        if !hi.is_finite() {
            return Dd::from_f64(hi);
        }
        let hi_exact = Rational::from_float(hi).expect("finite float");
        let lo = rational_to_f64(&(r - hi_exact));
        Dd::new(hi, lo)
    }
    fn sqrt(self) -> Self {
        self.sqrt_dd()
    }
    fn sin(self) -> Self {
        self.sin_cos().0
    }
    fn cos(self) -> Self {
        self.sin_cos().1
    }
    fn abs(self) -> Self {
        if self.hi < 0.0 || (self.hi == 0.0 && self.lo < 0.0) {
            -self
        } else {
            self
        }
    }
    fn powi(self, n: i32) -> Self {
        let mut acc = Dd::ONE;
        let mut base = if n < 0 { Dd::ONE / self } else { self };
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
    fn pi() -> Self {
        Dd::new(3.141592653589793115997963468544185161590576171875e0, 1.2246467991473532071737640294583966046256921181166e-16)
    }
    fn epsilon() -> f64 {
        2.5e-32
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn assert_dd_close(x: Dd, expect_hi: f64, expect_lo: f64, tol: f64) {
        let diff = (x - Dd::new(expect_hi, expect_lo)).abs();
        assert!(
            diff.to_f64() < tol,
            "got {:?}, want ({expect_hi}, {expect_lo}), diff {:e}",
            x,
            diff.to_f64()
        );
    }

    #[test]
    fn dd_basic_arithmetic() {
        let a = Dd::from_f64(1.0) / Dd::from_f64(3.0);
        let three = Dd::from_f64(3.0);
        let err = (a * three - Dd::ONE).abs();
        assert!(err.to_f64() < 1e-31);
    }

    #[test]
    fn dd_sqrt_two() {
        // sqrt(2) = 1.41421356237309504880168872420969807856967187537694...
        let s = Dd::from_f64(2.0).sqrt();
        assert_dd_close(s, 1.4142135623730951, -9.667293313452913e-17, 1e-31);
        let back = s * s - Dd::from_f64(2.0);
        assert!(back.abs().to_f64() < 1e-31);
    }

    #[test]
    fn dd_sin_cos_known_values() {
        // mpmath, 40 digits:
        // sin(1) = 0.8414709848078965066525023216302989996226
        // cos(1) = 0.5403023058681397174009366074429766037323
        let (s, c) = Dd::from_f64(1.0).sin_cos();
        assert_dd_close(s, 0.8414709848078965, 1.776845092935536e-18, 2e-32);
        assert_dd_close(c, 0.5403023058681398, -4.760954612604417e-17, 2e-32);
        // Pythagorean identity at an awkward point near pi.
        let x = Dd::from_f64(3.1) + Dd::from_f64(4e-2);
        let (s, c) = x.sin_cos();
        let one = s * s + c * c;
        assert!((one - Dd::ONE).abs().to_f64() < 1e-31);
    }

    #[test]
    fn dd_sin_large_argument_reduction() {
        // sin(6.2) = -0.0830894028174965780005792890984
        let (s, _) = Dd::from_f64(6.2).sin_cos();
        assert!((s.to_f64() - (-0.08308940281749658)).abs() < 1e-15);
        assert!((s * s).to_f64() >= 0.0);
    }

    #[test]
    fn dd_from_rational_two_limbs() {
        let r = rat(1, 3);
        let x = Dd::from_rational(&r);
        // 1/3 - hi must be captured by lo to full precision.
        let three = Dd::from_f64(3.0);
        assert!((x * three - Dd::ONE).abs().to_f64() < 1e-32);
    }

    #[test]
    fn dd_powi_matches_repeated_mul() {
        let x = Dd::from_f64(1.1);
        let mut acc = Dd::ONE;
        for _ in 0..7 {
            acc = acc * x;
        }
        assert!((x.powi(7) - acc).abs().to_f64() < 1e-30);
        assert!((x.powi(-2) * x * x - Dd::ONE).abs().to_f64() < 1e-30);
    }

    #[test]
    fn f64_powi_negative() {
        assert!((2.0f64.powi(-3) - 0.125).abs() < 1e-16);
    }
}

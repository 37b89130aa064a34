//! Quadratic surds `p + q√d` over the rationals, canonicalized so that
//! equality is structural and sign queries are exact.

use super::interval::Interval;
use super::{rational_string, Rational};
use crate::error::Error;
use crate::Result;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// `p + q·√d` with `p, q` rational and `d` a squarefree non-negative integer.
///
/// Canonical form: rational square factors of the radicand are folded into
/// `q`; if the value is rational then `q = 0` and `d = 0`. Two surds over the
/// same radicand compare exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Surd {
    p: Rational,
    q: Rational,
    d: BigInt,
}

/// Splits `n ≥ 0` as `s²·f` with `f` squarefree; returns `(s, f)`.
fn extract_square_part(n: &BigInt) -> (BigInt, BigInt) {
    let mut f = n.clone();
    let mut s = BigInt::one();
    if f.is_zero() {
        return (BigInt::one(), f);
    }
    // Perfect-square fast path.
    let r = f.sqrt();
    if &r * &r == f {
        return (r, BigInt::one());
    }
    let mut p = BigInt::from(2);
    loop {
        let pp = &p * &p;
        if &pp > &f {
            break;
        }
        while (&f % &pp).is_zero() {
            f /= &pp;
            s *= &p;
        }
        p += 1;
    }
    (s, f)
}

impl Surd {
    /// Canonicalizing constructor; `d` may be any non-negative rational.
    pub fn new(p: Rational, q: Rational, d: Rational) -> Result<Surd> {
        if d.is_negative() {
            return Err(Error::NegativeRadicand);
        }
        // √(a/b) = √(a·b)/b pulls the radicand down to an integer.
        let den = d.denom().clone();
        let int_rad: BigInt = d.numer() * &den;
        let q = q / Rational::from_integer(den);
        let (square, free) = extract_square_part(&int_rad);
        let q = q * Rational::from_integer(square);
        if free.is_one() || q.is_zero() || free.is_zero() {
            let extra = if free.is_one() { q } else { Rational::zero() };
            return Ok(Surd {
                p: p + extra,
                q: Rational::zero(),
                d: BigInt::zero(),
            });
        }
        Ok(Surd { p, q, d: free })
    }

    pub fn from_rational(p: Rational) -> Surd {
        Surd {
            p,
            q: Rational::zero(),
            d: BigInt::zero(),
        }
    }

    pub fn from_int(n: i64) -> Surd {
        Surd::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `√r` for rational `r ≥ 0`, e.g. `√(6/7) = (1/7)√42`.
    pub fn sqrt_of_rational(r: &Rational) -> Result<Surd> {
        Surd::new(Rational::zero(), Rational::one(), r.clone())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.p
    }
    pub fn surd_coeff(&self) -> &Rational {
        &self.q
    }
    pub fn radicand(&self) -> Rational {
        Rational::from_integer(self.d.clone())
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// The exact rational value, if the surd is rational.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    fn same_field(&self, o: &Surd) -> bool {
        self.q.is_zero() || o.q.is_zero() || self.d == o.d
    }

    fn join(p: Rational, q: Rational, d: BigInt) -> Surd {
        if q.is_zero() {
            Surd::from_rational(p)
        } else {
            Surd { p, q, d }
        }
    }

    fn field_radicand(&self, o: &Surd) -> BigInt {
        if self.q.is_zero() {
            o.d.clone()
        } else {
            self.d.clone()
        }
    }

    pub fn try_add(&self, o: &Surd) -> Result<Surd> {
        if !self.same_field(o) {
            return Err(Error::MixedRadicands);
        }
        let d = self.field_radicand(o);
        Ok(Surd::join(&self.p + &o.p, &self.q + &o.q, d))
    }

    pub fn try_mul(&self, o: &Surd) -> Result<Surd> {
        if !self.same_field(o) {
            return Err(Error::MixedRadicands);
        }
        let d = self.field_radicand(o);
        let dr = Rational::from_integer(d.clone());
        let p = &self.p * &o.p + &self.q * &o.q * dr;
        let q = &self.p * &o.q + &self.q * &o.p;
        Ok(Surd::join(p, q, d))
    }

    /// Multiplicative inverse via the conjugate; errors on zero.
    pub fn try_recip(&self) -> Result<Surd> {
        if self.is_zero() {
            return Err(Error::Domain("inverse of zero surd".into()));
        }
        let dr = Rational::from_integer(self.d.clone());
        let norm = &self.p * &self.p - &self.q * &self.q * dr;
        if norm.is_zero() {
            // p = ±q√d with d square; canonical form excludes this unless zero.
            return Err(Error::Domain("inverse of zero surd".into()));
        }
        Ok(Surd::join(&self.p / &norm, -(&self.q) / &norm, self.d.clone()))
    }

    pub fn try_div(&self, o: &Surd) -> Result<Surd> {
        self.try_mul(&o.try_recip()?)
    }

    pub fn scale(&self, r: &Rational) -> Surd {
        Surd::join(&self.p * r, &self.q * r, self.d.clone())
    }

    /// Exact sign of the value: `Less`, `Equal` or `Greater` than zero.
    pub fn sign(&self) -> Ordering {
        if self.q.is_zero() {
            return self.p.cmp(&Rational::zero());
        }
        if self.p.is_zero() {
            return self.q.cmp(&Rational::zero());
        }
        let p_pos = self.p.is_positive();
        let q_pos = self.q.is_positive();
        if p_pos == q_pos {
            return if p_pos { Ordering::Greater } else { Ordering::Less };
        }
        // Opposite signs: compare p² against q²·d.
        let dr = Rational::from_integer(self.d.clone());
        let lhs = &self.p * &self.p;
        let rhs = &self.q * &self.q * dr;
        match lhs.cmp(&rhs) {
            Ordering::Equal => Ordering::Equal,
            Ordering::Greater => {
                if p_pos {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            Ordering::Less => {
                if q_pos {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Exact comparison; requires both operands in the same `Q(√d)`.
    pub fn try_cmp(&self, o: &Surd) -> Result<Ordering> {
        if !self.same_field(o) {
            return Err(Error::MixedRadicands);
        }
        let d = self.field_radicand(o);
        Ok(Surd::join(&self.p - &o.p, &self.q - &o.q, d).sign())
    }

    /// Comparison across radicands by certified interval refinement; `None`
    /// if the values cannot be separated at interval width 10⁻⁴⁰.
    pub fn cmp_interval(&self, o: &Surd) -> Option<Ordering> {
        if self.same_field(o) {
            return self.try_cmp(o).ok();
        }
        for digits in [20usize, 40, 60] {
            let a = self.to_interval(digits);
            let b = o.to_interval(digits);
            if a.strictly_below(&b) {
                return Some(Ordering::Less);
            }
            if b.strictly_below(&a) {
                return Some(Ordering::Greater);
            }
        }
        // Enclosures narrower than 10⁻⁴⁰ still straddle each other.
        None
    }

    /// Rational enclosure `[lo, hi]` of the value, width ≤ 2·10⁻ᵈⁱᵍⁱᵗˢ·|q|.
    pub fn to_interval(&self, digits: usize) -> Interval {
        if self.q.is_zero() {
            return Interval::point(self.p.clone());
        }
        let root = Interval::sqrt_of_int(&self.d, digits);
        root.scale(&self.q).shift(&self.p)
    }

    /// Deterministic decimal rendering with `digits` digits after the point,
    /// rounded to nearest (half away from zero for the rational case;
    /// irrational values never tie).
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10).pow(digits as u32);
        let n: BigInt = if self.q.is_zero() {
            // round(p·10^digits) half away from zero
            let scaled = &self.p * Rational::from_integer(scale.clone());
            let twice: BigInt =
                (scaled.numer() * BigInt::from(2) + scaled.denom() * BigInt::from(scaled.numer().signum()))
                    / (scaled.denom() * BigInt::from(2));
            twice
        } else {
            let mut guard = digits + 8;
            loop {
                let iv = self.to_interval(guard);
                let half = Rational::new(BigInt::one(), BigInt::from(2));
                let lo = (iv.lo() * Rational::from_integer(scale.clone()) + &half).floor();
                let hi = (iv.hi() * Rational::from_integer(scale.clone()) + &half).floor();
                if lo == hi {
                    break lo.to_integer();
                }
                guard += 16;
                if guard > digits + 200 {
                    break lo.to_integer();
                }
            }
        };
        let neg = n.is_negative();
        let n = n.abs();
        let int_part = &n / &scale;
        let frac_part = &n % &scale;
        let frac_str = format!("{:0width$}", frac_part, width = digits);
        let sign = if neg { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_str}")
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.q.is_zero() {
            write!(f, "{}", rational_string(&self.p))
        } else if self.p.is_zero() {
            write!(f, "{}*sqrt({})", rational_string(&self.q), self.d)
        } else {
            write!(
                f,
                "{} + {}*sqrt({})",
                rational_string(&self.p),
                rational_string(&self.q),
                self.d
            )
        }
    }
}

impl Add for &Surd {
    type Output = Surd;
    fn add(self, o: &Surd) -> Surd {
        self.try_add(o).expect("mixed radicands in +")
    }
}
impl Sub for &Surd {
    type Output = Surd;
    fn sub(self, o: &Surd) -> Surd {
        self.try_add(&-o).expect("mixed radicands in -")
    }
}
impl Mul for &Surd {
    type Output = Surd;
    fn mul(self, o: &Surd) -> Surd {
        self.try_mul(o).expect("mixed radicands in *")
    }
}
impl Div for &Surd {
    type Output = Surd;
    fn div(self, o: &Surd) -> Surd {
        self.try_div(o).expect("division failed")
    }
}
impl Neg for &Surd {
    type Output = Surd;
    fn neg(self) -> Surd {
        Surd::join(-(&self.p), -(&self.q), self.d.clone())
    }
}

/// How many real roots a quadratic has.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootKind {
    None,
    Double,
    Pair,
}

/// Real roots of a quadratic with exact coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSet {
    pub kind: RootKind,
    /// Ascending; empty, one (double) or two entries.
    pub roots: Vec<Surd>,
    pub discriminant: Rational,
}

/// All real roots of `A z² + B z + C = 0` as surds over the radicand `B²−4AC`.
pub fn solve_quadratic_exact(a: &Rational, b: &Rational, c: &Rational) -> Result<RootSet> {
    if a.is_zero() {
        return Err(Error::DegenerateQuadratic);
    }
    let four = Rational::from_integer(BigInt::from(4));
    let two = Rational::from_integer(BigInt::from(2));
    let disc = b * b - four * (a * c);
    match disc.cmp(&Rational::zero()) {
        Ordering::Less => Ok(RootSet {
            kind: RootKind::None,
            roots: vec![],
            discriminant: disc,
        }),
        Ordering::Equal => Ok(RootSet {
            kind: RootKind::Double,
            roots: vec![Surd::from_rational(-b / (&two * a))],
            discriminant: disc,
        }),
        Ordering::Greater => {
            let half_inv = (&two * a).recip();
            let r1 = Surd::new(-b * &half_inv, -(&half_inv), disc.clone())?;
            let r2 = Surd::new(-b * &half_inv, half_inv, disc.clone())?;
            let (lo, hi) = match r1.try_cmp(&r2)? {
                Ordering::Greater => (r2, r1),
                _ => (r1, r2),
            };
            Ok(RootSet {
                kind: RootKind::Pair,
                roots: vec![lo, hi],
                discriminant: disc,
            })
        }
    }
}

/// Quadratic with a surd linear coefficient, `A z² + B z + C = 0` with
/// rational `A`, `C`. Closed in `Q(√d)` only when the discriminant is zero or
/// a rational perfect square times `d`; otherwise errors.
pub fn solve_quadratic_surd(a: &Rational, b: &Surd, c: &Rational) -> Result<RootSet> {
    if a.is_zero() {
        return Err(Error::DegenerateQuadratic);
    }
    if let Some(br) = b.as_rational() {
        return solve_quadratic_exact(a, br, c);
    }
    let four = Rational::from_integer(BigInt::from(4));
    let two = Rational::from_integer(BigInt::from(2));
    let b_sq = b.try_mul(b)?;
    let disc = &b_sq - &Surd::from_rational(four * (a * c));
    match disc.sign() {
        Ordering::Less => Ok(RootSet {
            kind: RootKind::None,
            roots: vec![],
            discriminant: disc.as_rational().cloned().unwrap_or_else(Rational::zero),
        }),
        Ordering::Equal => {
            let neg_b = -b;
            let root = neg_b.scale(&(&two * a).recip());
            Ok(RootSet {
                kind: RootKind::Double,
                roots: vec![root],
                discriminant: Rational::zero(),
            })
        }
        Ordering::Greater => {
            let disc_rat = disc
                .as_rational()
                .ok_or(Error::MixedRadicands)?
                .clone();
            let sqrt_disc = Surd::sqrt_of_rational(&disc_rat)?;
            let half_inv = (&two * a).recip();
            let neg_b = -b;
            let r1 = (&neg_b - &sqrt_disc).scale(&half_inv);
            let r2 = (&neg_b + &sqrt_disc).scale(&half_inv);
            let (lo, hi) = match r1.try_cmp(&r2)? {
                Ordering::Greater => (r2, r1),
                _ => (r1, r2),
            };
            Ok(RootSet {
                kind: RootKind::Pair,
                roots: vec![lo, hi],
                discriminant: disc_rat,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    fn surd(p: Rational, q: Rational, d: i64) -> Surd {
        Surd::new(p, q, rat_int(d)).unwrap()
    }

    #[test]
    fn canonical_square_extraction() {
        // √12 = 2√3
        let s = Surd::sqrt_of_rational(&rat_int(12)).unwrap();
        assert_eq!(s.surd_coeff(), &rat_int(2));
        assert_eq!(s.radicand(), rat_int(3));
        // √(6/7) = (1/7)√42
        let s = Surd::sqrt_of_rational(&rat(6, 7)).unwrap();
        assert_eq!(s.surd_coeff(), &rat(1, 7));
        assert_eq!(s.radicand(), rat_int(42));
        // √9 = 3 folds into the rational part
        let s = Surd::sqrt_of_rational(&rat_int(9)).unwrap();
        assert!(s.is_rational());
        assert_eq!(s.as_rational().unwrap(), &rat_int(3));
        // idempotent: re-canonicalizing a canonical surd changes nothing
        let s = surd(rat(1, 2), rat(3, 5), 10);
        let s2 = Surd::new(s.rational_part().clone(), s.surd_coeff().clone(), s.radicand()).unwrap();
        assert_eq!(s, s2);
    }

    #[test]
    fn sign_is_exact() {
        // 7 - 4√3 > 0 (since 49 > 48) but barely
        let s = surd(rat_int(7), rat_int(-4), 3);
        assert_eq!(s.sign(), Ordering::Greater);
        // 7 - 5√2 < 0 (49 < 50)
        let s = surd(rat_int(7), rat_int(-5), 2);
        assert_eq!(s.sign(), Ordering::Less);
        // 2 - √4 = 0 via canonicalization
        let s = Surd::new(rat_int(2), rat_int(-1), rat_int(4)).unwrap();
        assert_eq!(s.sign(), Ordering::Equal);
        assert!(s.is_zero());
    }

    #[test]
    fn arithmetic_closure() {
        let a = surd(rat_int(1), rat_int(1), 2); // 1 + √2
        let b = surd(rat_int(3), rat_int(-2), 2); // 3 − 2√2
        let prod = &a * &b; // 3 − 2√2 + 3√2 − 4 = −1 + √2
        assert_eq!(prod, surd(rat_int(-1), rat_int(1), 2));
        let quot = &prod / &a; // back to b-free value: (−1+√2)/(1+√2) = 3 − 2√2 … check by re-multiplying
        assert_eq!(&quot * &a, prod);
        let recip = a.try_recip().unwrap();
        assert_eq!(&recip * &a, Surd::from_int(1));
    }

    #[test]
    fn mixed_radicands_rejected() {
        let a = surd(rat_int(0), rat_int(1), 2);
        let b = surd(rat_int(0), rat_int(1), 3);
        assert_eq!(a.try_add(&b), Err(Error::MixedRadicands));
        // …but interval comparison still decides them.
        assert_eq!(a.cmp_interval(&b), Some(Ordering::Less));
    }

    #[test]
    fn quadratic_pair_example() {
        // 3z² − 4z + 1 = (3z−1)(z−1): roots 1/3 and 1.
        let rs = solve_quadratic_exact(&rat_int(3), &rat_int(-4), &rat_int(1)).unwrap();
        assert_eq!(rs.kind, RootKind::Pair);
        assert_eq!(rs.roots[0], Surd::from_rational(rat(1, 3)));
        assert_eq!(rs.roots[1], Surd::from_int(1));
        assert_eq!(rs.discriminant, rat_int(4));
    }

    #[test]
    fn quadratic_double_and_none() {
        let rs = solve_quadratic_exact(&rat_int(1), &rat_int(-2), &rat_int(1)).unwrap();
        assert_eq!(rs.kind, RootKind::Double);
        assert_eq!(rs.roots, vec![Surd::from_int(1)]);
        let rs = solve_quadratic_exact(&rat_int(1), &rat_int(0), &rat_int(1)).unwrap();
        assert_eq!(rs.kind, RootKind::None);
        assert_eq!(rs.discriminant, rat_int(-4));
        assert!(rs.roots.is_empty());
        assert_eq!(
            solve_quadratic_exact(&rat_int(0), &rat_int(1), &rat_int(1)),
            Err(Error::DegenerateQuadratic)
        );
    }

    #[test]
    fn roots_substitute_back_to_zero() {
        // irrational pair: z² − 4z + 1, roots 2 ± √3
        let (a, b, c) = (rat_int(1), rat_int(-4), rat_int(1));
        let rs = solve_quadratic_exact(&a, &b, &c).unwrap();
        assert_eq!(rs.kind, RootKind::Pair);
        for z in &rs.roots {
            let val = &(&(&z.try_mul(z).unwrap()).scale(&a) + &z.scale(&b)) + &Surd::from_rational(c.clone());
            assert!(val.is_zero(), "residue {val}");
        }
    }

    #[test]
    fn decimal_rendering() {
        let s = Surd::sqrt_of_rational(&rat_int(2)).unwrap();
        assert_eq!(s.to_decimal(10), "1.4142135624");
        let half = Surd::from_rational(rat(1, 2));
        assert_eq!(half.to_decimal(5), "0.50000");
        // |H|² of the six-dimensional critical hypersphere: 5/6 + √649/30.
        let s = Surd::new(rat(5, 6), rat(1, 30), rat_int(649)).unwrap();
        assert_eq!(s.to_decimal(12), "1.682515946857");
        let neg = Surd::new(rat_int(0), rat_int(-1), rat_int(2)).unwrap();
        assert_eq!(neg.to_decimal(4), "-1.4142");
    }

    #[test]
    fn surd_coefficient_quadratic_at_double_root() {
        // n₂ z² − 2√(n₁n₂) z + n₁ at its double root z = √(n₁/n₂); take (n₁,n₂)=(1,3):
        // 3z² − 2√3 z + 1 = 0, z = √3/3 = (1/3)√3.
        let b = Surd::new(rat_int(0), rat_int(-2), rat_int(3)).unwrap();
        let rs = solve_quadratic_surd(&rat_int(3), &b, &rat_int(1)).unwrap();
        assert_eq!(rs.kind, RootKind::Double);
        assert_eq!(rs.roots[0], surd(rat_int(0), rat(1, 3), 3));
    }
}

//! Exact, closed-form classification of the catalog families: biharmonicity
//! indices, root counts with their optimal bound, the special
//! conformal-harmonic radii in dimensions four and six, and the compact-case
//! gates. Everything here is decided in rational or quadratic-surd
//! arithmetic; the verifier side of the crate independently certifies each
//! record numerically.

use crate::error::Error;
use crate::exact::{
    rat, rat_int, solve_quadratic_exact, solve_quadratic_surd, Interval, Rational, RootKind,
    RootSet, Surd,
};
use crate::Result;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Exact verdict for one family member.
#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Harmonic,
    ProperlyBiharmonic { k: Surd },
    /// Properly conformal-harmonic (order-4 case also stores its index).
    CHarmonic { k: Option<Surd> },
    /// No submanifold satisfies the query.
    None,
}

/// One exact classification result with its auxiliary certificates.
#[derive(Clone, Debug)]
pub struct ClassificationRecord {
    pub family: String,
    /// Named exact parameters in fixed order.
    pub params: Vec<(String, Surd)>,
    pub verdict: Verdict,
    pub h_norm2: Option<Surd>,
    /// Discriminant of the torus quadratic, when one was solved.
    pub discriminant: Option<Rational>,
    /// Optimal torus bound `n₁+n₂−2√(n₁n₂)`, when relevant.
    pub bound: Option<Surd>,
    /// Squared radius of the enclosing sphere `1/(1+|H|²)`.
    pub enclosing_radius2: Option<Surd>,
    /// Squared distance of its center from the origin, `|H|²/(1+|H|²)`.
    pub enclosing_center_norm2: Option<Surd>,
}

impl ClassificationRecord {
    fn bare(family: &str, params: Vec<(String, Surd)>, verdict: Verdict) -> Self {
        ClassificationRecord {
            family: family.into(),
            params,
            verdict,
            h_norm2: None,
            discriminant: None,
            bound: None,
            enclosing_radius2: None,
            enclosing_center_norm2: None,
        }
    }

    /// The squared radius parameter, when present.
    pub fn a2(&self) -> Option<&Surd> {
        self.params
            .iter()
            .find(|(name, _)| name == "a2")
            .map(|(_, v)| v)
    }

    /// The certified index, when the verdict carries one.
    pub fn index(&self) -> Option<&Surd> {
        match &self.verdict {
            Verdict::ProperlyBiharmonic { k } => Some(k),
            Verdict::CHarmonic { k } => k.as_ref(),
            _ => None,
        }
    }
}

fn check_unit_range(a2: &Surd, allow_one: bool) -> Result<()> {
    if a2.sign() != Ordering::Greater {
        return Err(Error::Build("a² must be positive".into()));
    }
    match a2.try_cmp(&Surd::from_int(1))? {
        Ordering::Less => Ok(()),
        Ordering::Equal if allow_one => Ok(()),
        _ => Err(Error::Build("a² out of range".into())),
    }
}

/// `S^{n−1}(a) ⊂ S^n`: harmonic iff `a = 1`, otherwise properly biharmonic
/// of index `(n−1)(1 − b²/a²) = (n−1)(2a²−1)/a²` with `|H|² = (1−a²)/a²`.
pub fn classify_hypersphere(n: usize, a2: &Surd) -> Result<ClassificationRecord> {
    if n < 2 {
        return Err(Error::Build("hypersphere needs n ≥ 2".into()));
    }
    check_unit_range(a2, true)?;
    let params = vec![
        ("n".into(), Surd::from_int(n as i64)),
        ("a2".into(), a2.clone()),
    ];
    let one = Surd::from_int(1);
    if a2.try_cmp(&one)? == Ordering::Equal {
        return Ok(ClassificationRecord::bare("hypersphere", params, Verdict::Harmonic));
    }
    let m = Surd::from_int((n - 1) as i64);
    let b2 = &one - a2;
    let h2 = b2.try_div(a2)?;
    let k = m.try_mul(&(&one - &h2))?;
    let denom = &one + &h2; // = 1/a²
    let radius2 = one.try_div(&denom)?; // = a²
    let center2 = h2.try_div(&denom)?; // = b²
    let mut rec = ClassificationRecord::bare(
        "hypersphere",
        params,
        Verdict::ProperlyBiharmonic { k },
    );
    rec.h_norm2 = Some(h2);
    rec.enclosing_radius2 = Some(radius2);
    rec.enclosing_center_norm2 = Some(center2);
    Ok(rec)
}

/// Inverts `k = (n−1)(1−b²/a²)`: the hypersphere properly biharmonic of
/// index `k` in `S^n` has `a² = (n−1)/(2(n−1)−k)`, and exists iff `k < n−1`.
pub fn hypersphere_for_index(n: usize, k: &Rational) -> Result<ClassificationRecord> {
    if n < 2 {
        return Err(Error::Build("hypersphere needs n ≥ 2".into()));
    }
    let m = rat_int((n - 1) as i64);
    if k >= &m {
        return Ok(ClassificationRecord::bare(
            "hypersphere",
            vec![
                ("n".into(), Surd::from_int(n as i64)),
                ("k".into(), Surd::from_rational(k.clone())),
            ],
            Verdict::None,
        ));
    }
    let a2 = &m / (rat_int(2) * &m - k);
    let rec = classify_hypersphere(n, &Surd::from_rational(a2))?;
    debug_assert_eq!(rec.index().and_then(|s| s.as_rational()), Some(k));
    Ok(rec)
}

/// Clifford torus `S^{n₁}(a)×S^{n₂}(b) ⊂ S^n`: harmonic iff
/// `b²n₁ = a²n₂`, otherwise properly biharmonic of index
/// `(1−b²/a²)n₁ + (1−a²/b²)n₂`, with
/// `|H|² = ((b²/a²)n₁² − 2n₁n₂ + (a²/b²)n₂²)/(n₁+n₂)²`.
pub fn classify_torus(n1: usize, n2: usize, a2: &Surd) -> Result<ClassificationRecord> {
    if n1 < 1 || n2 < 1 {
        return Err(Error::Build("torus needs n₁, n₂ ≥ 1".into()));
    }
    check_unit_range(a2, false)?;
    let params = vec![
        ("n1".into(), Surd::from_int(n1 as i64)),
        ("n2".into(), Surd::from_int(n2 as i64)),
        ("a2".into(), a2.clone()),
    ];
    let one = Surd::from_int(1);
    let b2 = &one - a2;
    let n1s = Surd::from_int(n1 as i64);
    let n2s = Surd::from_int(n2 as i64);
    let harmonic_defect = &b2.try_mul(&n1s)? - &a2.try_mul(&n2s)?;
    if harmonic_defect.is_zero() {
        return Ok(ClassificationRecord::bare("clifford", params, Verdict::Harmonic));
    }
    let z = b2.try_div(a2)?; // b²/a²
    let z_inv = a2.try_div(&b2)?;
    let k = &n1s.try_mul(&(&one - &z))? + &n2s.try_mul(&(&one - &z_inv))?;
    let msum = Surd::from_int((n1 + n2) as i64);
    let h2_num = &(&z.try_mul(&n1s.try_mul(&n1s)?)?
        - &Surd::from_int(2 * (n1 * n2) as i64))
        + &z_inv.try_mul(&n2s.try_mul(&n2s)?)?;
    let h2 = h2_num.try_div(&msum.try_mul(&msum)?)?;
    let mut rec =
        ClassificationRecord::bare("clifford", params, Verdict::ProperlyBiharmonic { k });
    rec.h_norm2 = Some(h2);
    Ok(rec)
}

/// The optimal torus bound `n₁ + n₂ − 2√(n₁n₂)` as an exact surd.
pub fn torus_bound(n1: usize, n2: usize) -> Result<Surd> {
    let two_root = Surd::new(Rational::from_integer(0.into()), rat_int(-2), rat_int((n1 * n2) as i64))?;
    Ok(&Surd::from_int((n1 + n2) as i64) + &two_root)
}

/// All proper Clifford tori biharmonic of index `k`: solves
/// `n₂z² − (n₁+n₂−k)z + n₁ = 0` exactly, discards non-positive roots and the
/// harmonic root `z = n₁/n₂` (present exactly when `k = 0`), and converts
/// each surviving root to `a² = z/(1+z)`.
///
/// Surd-valued `k` is accepted so the bound case can be tested exactly; away
/// from the bound an irrational `k` leaves `Q(√d)` and is rejected.
pub fn tori_for_index(
    n1: usize,
    n2: usize,
    k: &Surd,
) -> Result<(Vec<ClassificationRecord>, Surd, RootSet)> {
    if n1 < 1 || n2 < 1 {
        return Err(Error::Build("torus needs n₁, n₂ ≥ 1".into()));
    }
    let bound = torus_bound(n1, n2)?;
    let a = rat_int(n2 as i64);
    let c = rat_int(n1 as i64);
    let b = k - &Surd::from_int((n1 + n2) as i64); // z-coefficient is +(k − n₁ − n₂)
    let roots = match b.as_rational() {
        Some(br) => solve_quadratic_exact(&a, br, &c)?,
        None => solve_quadratic_surd(&a, &b, &c)?,
    };
    let one = Surd::from_int(1);
    let harmonic_z = Surd::from_rational(rat(n1 as i64, n2 as i64));
    let mut records = Vec::new();
    for z in &roots.roots {
        if z.sign() != Ordering::Greater {
            continue;
        }
        if z.try_cmp(&harmonic_z).map(|o| o == Ordering::Equal).unwrap_or(false) {
            continue; // the harmonic torus, never a proper solution
        }
        let a2 = z.try_div(&(&one + z))?;
        let rec = classify_torus(n1, n2, &a2)?;
        // Exact cross-check: the record's index is the query index.
        match rec.index() {
            Some(ki) if ki.try_cmp(k)? == Ordering::Equal => {}
            _ => {
                return Err(Error::Precondition(format!(
                    "root z = {z} failed to reproduce index {k}"
                )))
            }
        }
        let mut rec = rec;
        rec.discriminant = Some(roots.discriminant.clone());
        rec.bound = Some(bound.clone());
        records.push(rec);
    }
    // Exact relation between the two root radii when both exist:
    // z₊/(1+z₊) = n₁/(n₁ + n₂ z₋).
    if roots.kind == RootKind::Pair {
        let (zm, zp) = (&roots.roots[0], &roots.roots[1]);
        let lhs = zp.try_div(&(&one + zp))?;
        let rhs = Surd::from_int(n1 as i64).try_div(
            &(&Surd::from_int(n1 as i64) + &zm.scale(&rat_int(n2 as i64))),
        )?;
        if lhs.try_cmp(&rhs)? != Ordering::Equal {
            return Err(Error::Precondition(
                "paired-root radius relation failed".into(),
            ));
        }
    }
    Ok((records, bound, roots))
}

/// The certified proper-biharmonicity index of a catalog family member
/// (zero for harmonic members, where every index works).
pub fn certified_index(family: &crate::catalog::Family) -> Result<Surd> {
    use crate::catalog::Family;
    let one = Surd::from_int(1);
    match family {
        Family::Hypersphere { n, a2 } => {
            let rec = classify_hypersphere(*n, a2)?;
            Ok(rec.index().cloned().unwrap_or_else(|| Surd::from_int(0)))
        }
        Family::Clifford { n1, n2, a2 } => {
            let rec = classify_torus(*n1, *n2, a2)?;
            Ok(rec.index().cloned().unwrap_or_else(|| Surd::from_int(0)))
        }
        Family::EquatorialInHypersphere { m_sub, n: _, a2 } => {
            let b2 = &one - a2;
            let ratio = b2.try_div(a2)?;
            Ok(Surd::from_int(*m_sub as i64).try_mul(&(&one - &ratio))?)
        }
        Family::ProductInTorus { m1, m2, a2, .. } => {
            let b2 = &one - a2;
            // harmonic when b²m₁ = a²m₂
            let defect = &b2.scale(&rat_int(*m1 as i64)) - &a2.scale(&rat_int(*m2 as i64));
            if defect.is_zero() {
                return Ok(Surd::from_int(0));
            }
            let z = b2.try_div(a2)?;
            let z_inv = a2.try_div(&b2)?;
            Ok(&Surd::from_int(*m1 as i64).try_mul(&(&one - &z))?
                + &Surd::from_int(*m2 as i64).try_mul(&(&one - &z_inv))?)
        }
        Family::Helper => Err(Error::Precondition(
            "helper immersions carry no certified index".into(),
        )),
    }
}

/// Verdict of the compact-case gate.
#[derive(Clone, Debug, PartialEq)]
pub enum GateVerdict {
    /// `m < k`: biharmonic of index `k` forces harmonic.
    HarmonicOnly,
    /// Pseudo-umbilic window: proper ⇔ parallel mean curvature of constant
    /// squared norm `(m−k)/m`.
    ProperIffParallelConstH { h2: Rational },
    /// The gate hypotheses do not apply.
    Inconclusive,
}

impl core::fmt::Display for GateVerdict {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            GateVerdict::HarmonicOnly => write!(f, "harmonic only"),
            GateVerdict::ProperIffParallelConstH { h2 } => write!(
                f,
                "proper iff mean curvature parallel with |H|^2 = {}/{}",
                h2.numer(),
                h2.denom()
            ),
            GateVerdict::Inconclusive => write!(f, "gate inconclusive"),
        }
    }
}

/// Compact-case rigidity gate: for compact `M^m`, `m < k` forces harmonicity;
/// in the pseudo-umbilic window `m(1 − inf|H|²) ≤ k < m` proper
/// biharmonicity of index `k` forces `∇ᴺH = 0` and `|H|² = (m−k)/m`.
pub fn compact_gate(
    m: usize,
    k: &Rational,
    inf_h2: &Rational,
    pseudo_umbilical: bool,
) -> GateVerdict {
    let mr = rat_int(m as i64);
    if &mr < k {
        return GateVerdict::HarmonicOnly;
    }
    let lower = &mr * (rat_int(1) - inf_h2);
    if pseudo_umbilical && &lower <= k && k < &mr {
        return GateVerdict::ProperIffParallelConstH {
            h2: (&mr - k) / &mr,
        };
    }
    GateVerdict::Inconclusive
}

/// The six-dimensional conformal-harmonic radius `a² = (275 − 5√649)/396`.
pub fn charm6_radius2() -> Surd {
    Surd::new(rat(275, 396), rat(-5, 396), rat_int(649)).expect("fixed surd")
}

/// Its squared mean curvature `|H|² = (25 + √649)/30`.
pub fn charm6_h2() -> Surd {
    Surd::new(rat(25, 30), rat(1, 30), rat_int(649)).expect("fixed surd")
}

/// Certifies that the rationalized radius equals the nested-radical form
/// `(1/36)(25 − 5√(59/11))` to better than 10⁻³⁰, by interval arithmetic at
/// 40 digits. Returns the width bound exponent actually achieved.
pub fn charm6_radius_certificate() -> Result<()> {
    let digits = 45;
    let rationalized = charm6_radius2().to_interval(digits);
    let inner = Interval::sqrt_of_rational(&rat(59, 11), digits);
    let nested = inner
        .scale(&rat_int(-5))
        .shift(&rat_int(25))
        .scale(&rat(1, 36));
    let diff = rationalized.sub(&nested);
    if diff.abs_below_pow10(30) {
        Ok(())
    } else {
        Err(Error::UndecidedComparison)
    }
}

/// Outcome of the conformal-harmonic classification in one even dimension.
#[derive(Clone, Debug)]
pub struct CharmReport {
    pub m: usize,
    pub n: usize,
    /// The unique properly conformal-harmonic hypersphere, when one exists.
    pub hypersphere: Option<ClassificationRecord>,
    /// Exact proof that no Clifford torus of this dimension qualifies.
    pub torus_exists: bool,
    pub notes: Vec<String>,
}

/// Classifies the properly conformal-harmonic hyperspheres and Clifford
/// tori of dimension `m ∈ {4, 6}` in `S^n`.
pub fn charm_classify(m: usize, n: usize) -> Result<CharmReport> {
    match m {
        4 => charm_classify_dim4(n),
        6 => charm_classify_dim6(n),
        _ => Err(Error::Dimension { expected: 4, got: m }),
    }
}

fn charm_classify_dim4(n: usize) -> Result<CharmReport> {
    if n < 5 {
        return Err(Error::Build("dimension-4 submanifolds need n ≥ 5".into()));
    }
    let mut notes = Vec::new();
    // The order-4 conformal equation is the indexed equation at
    // k = n(n−1)/6; the compact gate kills every n with k > 4.
    let k = rat((n * (n - 1)) as i64, 6);
    if k > rat_int(4) {
        notes.push(format!(
            "k = {}/{} exceeds m = 4: compact gate forces harmonicity",
            k.numer(),
            k.denom()
        ));
        return Ok(CharmReport {
            m: 4,
            n,
            hypersphere: None,
            torus_exists: false,
            notes,
        });
    }
    // n = 5: k = 10/3, radius from the index inversion.
    let mut rec = hypersphere_for_index(n, &k)?;
    debug_assert_eq!(rec.a2().and_then(|s| s.as_rational()), Some(&rat(6, 7)));
    if let Verdict::ProperlyBiharmonic { k } = rec.verdict.clone() {
        rec.verdict = Verdict::CHarmonic { k: Some(k) };
    }
    // Torus non-existence: k must not exceed the bound for any split of
    // n₁+n₂ = 4, and it does for all of them.
    let mut torus_exists = false;
    for n1 in 1..4 {
        let n2 = 4 - n1;
        let bound = torus_bound(n1, n2)?;
        let ks = Surd::from_rational(k.clone());
        match ks.try_cmp(&bound) {
            Ok(Ordering::Greater) => {
                notes.push(format!(
                    "split ({n1},{n2}): k = 10/3 exceeds the bound {bound}, no torus"
                ));
            }
            _ => {
                torus_exists = true;
                notes.push(format!("split ({n1},{n2}): bound not exceeded"));
            }
        }
    }
    Ok(CharmReport {
        m: 4,
        n,
        hypersphere: Some(rec),
        torus_exists,
        notes,
    })
}

fn charm_classify_dim6(n: usize) -> Result<CharmReport> {
    if n < 7 {
        return Err(Error::Build("dimension-6 submanifolds need n ≥ 7".into()));
    }
    let mut notes = Vec::new();
    if n >= 8 {
        notes.push(
            "n ≥ 8: every coefficient of the integrated sixth-order form is positive; \
             compact pseudo-umbilic submanifolds must be harmonic"
                .into(),
        );
        return Ok(CharmReport {
            m: 6,
            n,
            hypersphere: None,
            torus_exists: false,
            notes,
        });
    }
    // n = 7: the critical squared mean curvature solves
    // 36x² − 60x − 24/25 = 0 (largest root), giving the exact radius.
    let h2 = charm6_h2();
    let poly = |x: &Surd| -> Result<Surd> {
        let x2 = x.try_mul(x)?;
        Ok(&(&x2.scale(&rat_int(36)) - &x.scale(&rat_int(60))) - &Surd::from_rational(rat(24, 25)))
    };
    if !poly(&h2)?.is_zero() {
        return Err(Error::Precondition(
            "critical |H|² fails its defining quadratic".into(),
        ));
    }
    let a2 = charm6_radius2();
    // a² = 1/(1+|H|²), exactly.
    let recomputed = Surd::from_int(1).try_div(&(&Surd::from_int(1) + &h2))?;
    if a2.try_cmp(&recomputed)? != Ordering::Equal {
        return Err(Error::Precondition(
            "rationalized radius disagrees with 1/(1+|H|²)".into(),
        ));
    }
    charm6_radius_certificate()?;
    notes.push("radius certificate: rationalized and nested forms agree to 1e-30".into());
    let mut rec = classify_hypersphere(7, &a2)?;
    rec.verdict = Verdict::CHarmonic { k: None };
    rec.h_norm2 = Some(h2);
    // Torus non-existence via the sum-of-squares certificate: with
    // z = a²/b², the sixth-order torus residual polynomial equals
    // (n₁z − n₁ + 1)² + 8(n₁n₂ − 337/100) + (n₂/z − n₂ + 1)², which is
    // strictly positive because n₁n₂ ≥ 5 for every split of 6.
    for n1 in 1..6 {
        let n2 = 6 - n1;
        sos_identity_check(n1, n2)?;
        let min_product = rat_int((n1 * n2) as i64) - rat(337, 100);
        if min_product <= rat_int(0) {
            return Err(Error::Precondition(format!(
                "split ({n1},{n2}): certificate middle term not positive"
            )));
        }
        notes.push(format!(
            "split ({n1},{n2}): sum-of-squares certificate positive (8(n₁n₂ − 337/100) = {}/{})",
            (min_product.numer() * 8u8),
            min_product.denom()
        ));
    }
    Ok(CharmReport {
        m: 6,
        n,
        hypersphere: Some(rec),
        torus_exists: false,
        notes,
    })
}

/// Verifies, coefficient by coefficient in `z` after clearing `z²`, that
/// `n₁²z² − 2n₁(n₁−1)z + 6n₁n₂ − 24/25 − 2n₂(n₂−1)/z + n₂²/z²` equals
/// `(n₁z−n₁+1)² + 8(n₁n₂ − 337/100) + (n₂/z−n₂+1)²` whenever `n₁+n₂ = 6`.
fn sos_identity_check(n1: usize, n2: usize) -> Result<()> {
    debug_assert_eq!(n1 + n2, 6);
    let (n1r, n2r) = (rat_int(n1 as i64), rat_int(n2 as i64));
    // Coefficients of z^4 .. z^0 of z²·LHS
    let lhs = [
        &n1r * &n1r,
        rat_int(-2) * &n1r * (&n1r - rat_int(1)),
        rat_int(6) * &n1r * &n2r - rat(24, 25),
        rat_int(-2) * &n2r * (&n2r - rat_int(1)),
        &n2r * &n2r,
    ];
    // z²·RHS: (n₁z² − (n₁−1)z)… expand (n₁z − n₁ + 1)²z⁰ → degree-2 in z,
    // times z²? Work with p(z) = n₁z − n₁ + 1 and q(z) = n₂ − (n₂−1)z (from
    // (n₂/z − n₂ + 1)·z). Then z²·RHS = p²z² … careful: (n₂/z − n₂+1)² z² = q(z)²
    // with q(z) = n₂ − (n₂−1)z. And p(z)² gains z² only after multiplying.
    let p = [rat_int(1) - &n1r, n1r.clone()]; // p = (1−n₁) + n₁ z
    let q = [n2r.clone(), rat_int(1) - &n2r]; // q = n₂ + (1−n₂) z
    let sq = |c: &[Rational; 2]| -> [Rational; 3] {
        [
            &c[0] * &c[0],
            rat_int(2) * &c[0] * &c[1],
            &c[1] * &c[1],
        ]
    };
    let p2 = sq(&p);
    let q2 = sq(&q);
    let mid = rat_int(8) * (&n1r * &n2r - rat(337, 100));
    // z²·RHS = p(z)²·z² + mid·z² + q(z)²
    let mut rhs = [
        q2[0].clone(),
        q2[1].clone(),
        &q2[2] + &mid + &p2[0],
        p2[1].clone(),
        p2[2].clone(),
    ];
    rhs.reverse(); // match lhs ordering z⁴..z⁰
    for (l, r) in lhs.iter().zip(rhs.iter()) {
        if l != r {
            return Err(Error::Precondition(format!(
                "sum-of-squares identity failed for ({n1},{n2}): {l} vs {r}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hypersphere_classification_examples() {
        // (5, 6/7) → k = 10/3
        let rec = classify_hypersphere(5, &Surd::from_rational(rat(6, 7))).unwrap();
        assert_eq!(rec.index().unwrap(), &Surd::from_rational(rat(10, 3)));
        assert_eq!(rec.h_norm2.as_ref().unwrap(), &Surd::from_rational(rat(1, 6)));
        // enclosing sphere: radius² = a², center² = b²
        assert_eq!(
            rec.enclosing_radius2.as_ref().unwrap(),
            &Surd::from_rational(rat(6, 7))
        );
        assert_eq!(
            rec.enclosing_center_norm2.as_ref().unwrap(),
            &Surd::from_rational(rat(1, 7))
        );
        // (n, 1/2) → k = 0 for every n
        for n in [3, 5, 9] {
            let rec = classify_hypersphere(n, &Surd::from_rational(rat(1, 2))).unwrap();
            assert_eq!(rec.index().unwrap(), &Surd::from_int(0));
        }
        // equator is harmonic
        let rec = classify_hypersphere(6, &Surd::from_int(1)).unwrap();
        assert_eq!(rec.verdict, Verdict::Harmonic);
        assert!(classify_hypersphere(5, &Surd::from_rational(rat(9, 8))).is_err());
    }

    #[test]
    fn index_inversion_round_trip() {
        // (5, 10/3) → a² = 6/7
        let rec = hypersphere_for_index(5, &rat(10, 3)).unwrap();
        assert_eq!(rec.a2().unwrap(), &Surd::from_rational(rat(6, 7)));
        // (n, 0) → a² = 1/2
        let rec = hypersphere_for_index(7, &rat_int(0)).unwrap();
        assert_eq!(rec.a2().unwrap(), &Surd::from_rational(rat(1, 2)));
        // k = n−1 is the harmonic boundary: none
        let rec = hypersphere_for_index(5, &rat_int(4)).unwrap();
        assert_eq!(rec.verdict, Verdict::None);
        // dense round trip
        for i in 1..100i64 {
            let k = rat(3 * i % 47 - 23, 1 + (i % 7));
            if k >= rat_int(4) {
                continue;
            }
            let rec = hypersphere_for_index(5, &k).unwrap();
            let back = classify_hypersphere(5, rec.a2().unwrap()).unwrap();
            assert_eq!(back.index().unwrap().as_rational(), Some(&k));
        }
    }

    #[test]
    fn torus_classification_examples() {
        // (1, 3, 1/2): k = 0, |H|² = 1/4
        let rec = classify_torus(1, 3, &Surd::from_rational(rat(1, 2))).unwrap();
        assert_eq!(rec.index().unwrap(), &Surd::from_int(0));
        assert_eq!(rec.h_norm2.as_ref().unwrap(), &Surd::from_rational(rat(1, 4)));
        // (1, 3, 1/4): harmonic
        let rec = classify_torus(1, 3, &Surd::from_rational(rat(1, 4))).unwrap();
        assert_eq!(rec.verdict, Verdict::Harmonic);
        // (2, 2, 1/2): harmonic
        let rec = classify_torus(2, 2, &Surd::from_rational(rat(1, 2))).unwrap();
        assert_eq!(rec.verdict, Verdict::Harmonic);
    }

    #[test]
    fn tori_for_index_examples() {
        // k = 0 on (1,3): roots {1/3, 1}; z = 1/3 is harmonic, filtered.
        let (recs, bound, roots) = tori_for_index(1, 3, &Surd::from_int(0)).unwrap();
        assert_eq!(roots.kind, RootKind::Pair);
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].a2().unwrap(), &Surd::from_rational(rat(1, 2)));
        assert_eq!(bound, &Surd::from_int(4) - &Surd::new(rat_int(0), rat_int(2), rat_int(3)).unwrap());
        // (2,2) at k = 0: double root z = 1 is harmonic → empty.
        let (recs, _, roots) = tori_for_index(2, 2, &Surd::from_int(0)).unwrap();
        assert_eq!(roots.kind, RootKind::Double);
        assert!(recs.is_empty());
        // exactly at the bound (surd k): single proper torus with z = √(n₁/n₂)
        let bound = torus_bound(1, 3).unwrap();
        let (recs, _, roots) = tori_for_index(1, 3, &bound).unwrap();
        assert_eq!(roots.kind, RootKind::Double);
        assert_eq!(recs.len(), 1);
        let z = &roots.roots[0];
        // z = √(1/3) = (1/3)√3
        assert_eq!(z, &Surd::new(rat_int(0), rat(1, 3), rat_int(3)).unwrap());
        // above the bound: none
        let (recs, _, roots) = tori_for_index(1, 3, &Surd::from_int(1)).unwrap();
        assert_eq!(roots.kind, RootKind::None);
        assert!(recs.is_empty());
    }

    #[test]
    fn trichotomy_counts_exact() {
        let bound = torus_bound(1, 3).unwrap();
        for i in 0..200i64 {
            let k = rat(i - 100, 29);
            let ks = Surd::from_rational(k.clone());
            let (recs, _, _) = tori_for_index(1, 3, &ks).unwrap();
            let expected = match ks.try_cmp(&bound).unwrap() {
                Ordering::Greater => 0,
                Ordering::Equal => 1,
                Ordering::Less => {
                    if k == rat_int(0) {
                        1
                    } else {
                        2
                    }
                }
            };
            assert_eq!(recs.len(), expected, "count at k = {k}");
        }
    }

    #[test]
    fn gate_verdicts() {
        assert_eq!(compact_gate(4, &rat_int(5), &rat_int(0), false), GateVerdict::HarmonicOnly);
        assert_eq!(
            compact_gate(4, &rat(10, 3), &rat(1, 6), true),
            GateVerdict::ProperIffParallelConstH { h2: rat(1, 6) }
        );
        assert_eq!(compact_gate(6, &rat_int(7), &rat_int(0), true), GateVerdict::HarmonicOnly);
        assert_eq!(compact_gate(6, &rat_int(1), &rat_int(0), false), GateVerdict::Inconclusive);
    }

    #[test]
    fn charm_dim4_results() {
        let report = charm_classify(4, 5).unwrap();
        let rec = report.hypersphere.unwrap();
        assert_eq!(rec.a2().unwrap(), &Surd::from_rational(rat(6, 7)));
        assert_eq!(
            rec.index().unwrap(),
            &Surd::from_rational(rat(10, 3))
        );
        assert!(!report.torus_exists);
        // n ≥ 6: nothing
        let report = charm_classify(4, 9).unwrap();
        assert!(report.hypersphere.is_none());
        assert!(!report.torus_exists);
    }

    #[test]
    fn charm_dim6_results() {
        let report = charm_classify(6, 7).unwrap();
        let rec = report.hypersphere.unwrap();
        assert_eq!(rec.a2().unwrap(), &charm6_radius2());
        assert_eq!(rec.h_norm2.as_ref().unwrap(), &charm6_h2());
        assert!(!report.torus_exists);
        let report = charm_classify(6, 8).unwrap();
        assert!(report.hypersphere.is_none());
        // decimal sanity against the frozen high-precision value
        assert_eq!(
            charm6_radius2().to_decimal(20),
            "0.37278436356421725280"
        );
        assert_eq!(charm6_h2().to_decimal(12), "1.682515946857");
    }

    #[test]
    fn charm6_certificate_and_identity() {
        charm6_radius_certificate().unwrap();
        for n1 in 1..6 {
            sos_identity_check(n1, 6 - n1).unwrap();
        }
    }

    #[test]
    fn theorem_bridge_index_equals_m_times_one_minus_h2() {
        // For every hypersphere record, k = m(1−|H|²) with m = n−1, exactly.
        for (n, a2) in [(4usize, rat(1, 3)), (5, rat(1, 2)), (7, rat(6, 7)), (6, rat(2, 5))] {
            let rec = classify_hypersphere(n, &Surd::from_rational(a2)).unwrap();
            let m = Surd::from_int((n - 1) as i64);
            let h2 = rec.h_norm2.clone().unwrap();
            let expect = m.try_mul(&(&Surd::from_int(1) - &h2)).unwrap();
            assert_eq!(rec.index().unwrap(), &expect);
        }
    }
}

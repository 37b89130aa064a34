//! The explicit submanifolds under study, realized as analytic charts into
//! the unit sphere, plus deterministic low-discrepancy sample plans.
//!
//! Charts are products of sines and cosines (standard spherical coordinates
//! on each factor sphere): bounded derivatives of every order and a
//! singular locus that is just the coordinate poles, which sampling avoids
//! by a fixed margin. One chart per family is enough because every checked
//! identity is tensorial and pointwise away from a measure-zero set.

use crate::error::Error;
use crate::exact::{rat, rational_string, Rational, Surd};
use crate::jet::{jet_at, Expr, Jet, JetSpace};
use crate::scalar::Real;
use crate::Result;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

/// Which catalog family a spec belongs to, with its exact parameters.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `S^{n−1}(a) = {(x, b) : |x| = a} ⊂ S^n`, `b = √(1−a²)`.
    Hypersphere { n: usize, a2: Surd },
    /// `S^{n₁}(a) × S^{n₂}(b) ⊂ S^n`, `n = n₁+n₂+1`.
    Clifford { n1: usize, n2: usize, a2: Surd },
    /// Equatorial `S^{m_sub}(a)` inside the hypersphere `S^{n−1}(a) ⊂ S^n`.
    EquatorialInHypersphere { m_sub: usize, n: usize, a2: Surd },
    /// Product of equatorial factors inside the Clifford torus factors.
    ProductInTorus {
        m1: usize,
        n1: usize,
        m2: usize,
        n2: usize,
        a2: Surd,
    },
    /// Internal helper immersion (lifted equator copies, torus factors, …).
    Helper,
}

/// An analytic chart of a submanifold of a round sphere.
#[derive(Clone, Debug)]
pub struct ImmersionSpec {
    pub name: String,
    pub family: Family,
    /// Source dimension.
    pub m: usize,
    /// Ambient sphere dimension (the chart maps into `R^{n+1}`).
    pub n: usize,
    /// Chart components, `n+1` expressions in `m` coordinates.
    pub chart: Vec<Expr>,
    /// Per-coordinate open interval.
    pub domain: Vec<(f64, f64)>,
    /// Coordinates whose interval endpoints are chart poles (metric
    /// degenerates there); sampling keeps clear of all box edges anyway.
    pub polar_coords: Vec<usize>,
    /// Expected squared chart norm (1 for catalog entries, `a²` for factor
    /// helpers living on a radius-`a` sphere).
    pub chart_norm2: Surd,
}

fn surd_in_unit_interval(a2: &Surd, allow_one: bool) -> Result<()> {
    if a2.sign() != Ordering::Greater {
        return Err(Error::Build("a² must be positive".into()));
    }
    let one = Surd::from_int(1);
    match a2.try_cmp(&one)? {
        Ordering::Less => Ok(()),
        Ordering::Equal if allow_one => Ok(()),
        _ => Err(Error::Build(if allow_one {
            "a² must satisfy 0 < a² ≤ 1".into()
        } else {
            "a² must satisfy 0 < a² < 1".into()
        })),
    }
}

fn b2_of(a2: &Surd) -> Surd {
    &Surd::from_int(1) - a2
}

/// Spherical-coordinate chart of the unit `d`-sphere in `R^{d+1}`, using
/// source coordinates `offset..offset+d`.
fn sigma_chart(d: usize, offset: usize) -> Vec<Expr> {
    let mut comps = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut e: Option<Expr> = None;
        for j in 0..i.min(d) {
            let s = Expr::coord(offset + j).sin();
            e = Some(match e {
                None => s,
                Some(prev) => prev.mul(s),
            });
        }
        if i < d {
            let c = Expr::coord(offset + i).cos();
            e = Some(match e {
                None => c,
                Some(prev) => prev.mul(c),
            });
        }
        comps.push(e.expect("d >= 1"));
    }
    comps
}

/// Domain intervals and polar-coordinate list of `σ_d` at `offset`.
fn sigma_domain(d: usize, offset: usize) -> (Vec<(f64, f64)>, Vec<usize>) {
    let mut dom = Vec::with_capacity(d);
    let mut polar = Vec::new();
    for i in 0..d {
        if i + 1 == d {
            dom.push((0.0, 2.0 * core::f64::consts::PI));
        } else {
            dom.push((0.0, core::f64::consts::PI));
            polar.push(offset + i);
        }
    }
    (dom, polar)
}

fn scale_all(exprs: Vec<Expr>, c: &Surd) -> Vec<Expr> {
    exprs
        .into_iter()
        .map(|e| Expr::constant(c.clone()).sqrt().mul(e))
        .collect()
}

fn display_radius2(a2: &Surd) -> String {
    match a2.as_rational() {
        Some(r) => rational_string(r),
        None => format!("{a2}"),
    }
}

/// The hypersphere `S^{n−1}(a) ⊂ S^n`; `a² = 1` builds the equator.
pub fn hypersphere(n: usize, a2: Surd) -> Result<ImmersionSpec> {
    if n < 2 {
        return Err(Error::Build("hypersphere needs n ≥ 2".into()));
    }
    surd_in_unit_interval(&a2, true)?;
    let m = n - 1;
    let mut chart = scale_all(sigma_chart(m, 0), &a2);
    chart.push(Expr::constant(b2_of(&a2)).sqrt());
    let (domain, polar_coords) = sigma_domain(m, 0);
    Ok(ImmersionSpec {
        name: format!("hypersphere:n={n},a2={}", display_radius2(&a2)),
        family: Family::Hypersphere { n, a2 },
        m,
        n,
        chart,
        domain,
        polar_coords,
        chart_norm2: Surd::from_int(1),
    })
}

/// The generalized Clifford torus `S^{n₁}(a) × S^{n₂}(b) ⊂ S^{n₁+n₂+1}`.
pub fn clifford(n1: usize, n2: usize, a2: Surd) -> Result<ImmersionSpec> {
    if n1 < 1 || n2 < 1 {
        return Err(Error::Build("clifford needs n₁, n₂ ≥ 1".into()));
    }
    surd_in_unit_interval(&a2, false)?;
    let b2 = b2_of(&a2);
    let m = n1 + n2;
    let n = m + 1;
    let mut chart = scale_all(sigma_chart(n1, 0), &a2);
    chart.extend(scale_all(sigma_chart(n2, n1), &b2));
    let (mut domain, mut polar_coords) = sigma_domain(n1, 0);
    let (dom2, polar2) = sigma_domain(n2, n1);
    domain.extend(dom2);
    polar_coords.extend(polar2);
    Ok(ImmersionSpec {
        name: format!("clifford:n1={n1},n2={n2},a2={}", display_radius2(&a2)),
        family: Family::Clifford { n1, n2, a2 },
        m,
        n,
        chart,
        domain,
        polar_coords,
        chart_norm2: Surd::from_int(1),
    })
}

/// Equatorial `S^{m_sub}(a)` sitting inside the hypersphere `S^{n−1}(a)`,
/// itself inside `S^n`: chart `(a·σ(u), 0, …, 0, b)`. Totally geodesic in
/// `S^{n−1}(a)`, hence harmonic there.
pub fn equatorial_in_hypersphere(m_sub: usize, n: usize, a2: Surd) -> Result<ImmersionSpec> {
    if m_sub < 1 || m_sub + 1 >= n {
        return Err(Error::Build(
            "equatorial factor needs 1 ≤ m_sub < n−1".into(),
        ));
    }
    surd_in_unit_interval(&a2, true)?;
    let mut chart = scale_all(sigma_chart(m_sub, 0), &a2);
    for _ in 0..(n - m_sub - 1) {
        chart.push(Expr::zero());
    }
    chart.push(Expr::constant(b2_of(&a2)).sqrt());
    debug_assert_eq!(chart.len(), n + 1);
    let (domain, polar_coords) = sigma_domain(m_sub, 0);
    Ok(ImmersionSpec {
        name: format!(
            "equatorial:msub={m_sub},n={n},a2={}",
            display_radius2(&a2)
        ),
        family: Family::EquatorialInHypersphere { m_sub, n, a2 },
        m: m_sub,
        n,
        chart,
        domain,
        polar_coords,
        chart_norm2: Surd::from_int(1),
    })
}

/// Product `M₁ × M₂` of equatorial factors `S^{m₁}(a) ⊂ S^{n₁}(a)` and
/// `S^{m₂}(b) ⊂ S^{n₂}(b)` inside the Clifford torus, living in
/// `S^{n₁+n₂+1}`.
pub fn product_in_torus(
    m1: usize,
    n1: usize,
    m2: usize,
    n2: usize,
    a2: Surd,
) -> Result<ImmersionSpec> {
    if m1 < 1 || m1 >= n1 || m2 < 1 || m2 >= n2 {
        return Err(Error::Build(
            "product factors need 0 < m₁ < n₁ and 0 < m₂ < n₂".into(),
        ));
    }
    surd_in_unit_interval(&a2, false)?;
    let b2 = b2_of(&a2);
    let m = m1 + m2;
    let n = n1 + n2 + 1;
    let mut chart = scale_all(sigma_chart(m1, 0), &a2);
    for _ in 0..(n1 - m1) {
        chart.push(Expr::zero());
    }
    chart.extend(scale_all(sigma_chart(m2, m1), &b2));
    for _ in 0..(n2 - m2) {
        chart.push(Expr::zero());
    }
    debug_assert_eq!(chart.len(), n + 1);
    let (mut domain, mut polar_coords) = sigma_domain(m1, 0);
    let (dom2, polar2) = sigma_domain(m2, m1);
    domain.extend(dom2);
    polar_coords.extend(polar2);
    Ok(ImmersionSpec {
        name: format!(
            "product:m1={m1},n1={n1},m2={m2},n2={n2},a2={}",
            display_radius2(&a2)
        ),
        family: Family::ProductInTorus { m1, n1, m2, n2, a2 },
        m,
        n,
        chart,
        domain,
        polar_coords,
        chart_norm2: Surd::from_int(1),
    })
}

/// Re-embeds `spec` inside the equator of a one-dimension-higher sphere by
/// appending a zero coordinate. Residuals computed in both realizations must
/// agree; this backs the equator-embedding check.
pub fn lift_to_equator(spec: &ImmersionSpec) -> ImmersionSpec {
    let mut chart = spec.chart.clone();
    chart.push(Expr::zero());
    ImmersionSpec {
        name: format!("{}+equator-lift", spec.name),
        family: Family::Helper,
        m: spec.m,
        n: spec.n + 1,
        chart,
        domain: spec.domain.clone(),
        polar_coords: spec.polar_coords.clone(),
        chart_norm2: spec.chart_norm2.clone(),
    }
}

/// The two factor immersions of a product-in-torus spec, each in its own
/// block `R^{nᵢ+1}` and on a sphere of radius `a` (resp. `b`): used by the
/// torus splitting identity, whose factor Laplacians live on the factors.
pub fn torus_factors(spec: &ImmersionSpec) -> Result<(ImmersionSpec, ImmersionSpec)> {
    let Family::ProductInTorus { m1, n1, m2, n2, a2 } = &spec.family else {
        return Err(Error::Precondition(
            "torus factors exist only for product-in-torus specs".into(),
        ));
    };
    let b2 = b2_of(a2);
    let build = |m_f: usize, n_f: usize, r2: &Surd, label: &str| {
        let mut chart = scale_all(sigma_chart(m_f, 0), r2);
        for _ in 0..(n_f - m_f) {
            chart.push(Expr::zero());
        }
        let (domain, polar_coords) = sigma_domain(m_f, 0);
        ImmersionSpec {
            name: format!("{}#{label}", spec.name),
            family: Family::Helper,
            m: m_f,
            n: n_f,
            chart,
            domain,
            polar_coords,
            chart_norm2: r2.clone(),
        }
    };
    // Each factor uses its own coordinates 0..m_f; callers slice the product
    // point into its u- and v-parts.
    let f1 = build(*m1, *n1, a2, "factor1");
    let f2 = build(*m2, *n2, &b2, "factor2");
    Ok((f1, f2))
}

impl ImmersionSpec {
    /// Squared-radius parameter of the family, when there is one.
    pub fn a2(&self) -> Option<&Surd> {
        match &self.family {
            Family::Hypersphere { a2, .. }
            | Family::Clifford { a2, .. }
            | Family::EquatorialInHypersphere { a2, .. }
            | Family::ProductInTorus { a2, .. } => Some(a2),
            Family::Helper => None,
        }
    }

    pub fn eval_chart<S: Real>(&self, u: &[S]) -> Result<Vec<S>> {
        self.chart.iter().map(|e| e.eval(u)).collect()
    }

    pub fn chart_jets<S: Real>(&self, space: &Rc<JetSpace>, u: &[S]) -> Result<Vec<Jet<S>>> {
        self.chart.iter().map(|e| jet_at(e, space, u)).collect()
    }

    /// Interior sample point used by smoke tests: midpoint-ish, irrational
    /// offsets to avoid accidental symmetry.
    pub fn probe_point(&self) -> Vec<f64> {
        self.domain
            .iter()
            .enumerate()
            .map(|(i, (lo, hi))| lo + (hi - lo) * (0.31 + 0.17 * ((i as f64 * 0.618) % 0.31)))
            .collect()
    }
}

/// Deterministic verification points for one spec.
#[derive(Clone, Debug)]
pub struct SamplePlan {
    pub count: usize,
    pub seed: u64,
    pub points: Vec<Vec<f64>>,
}

/// Distance kept between samples and the domain boundary (and hence the
/// chart poles), in coordinate units.
pub const SINGULAR_MARGIN: f64 = 2e-2;

fn halton(mut index: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while index > 0 {
        f /= base as f64;
        r += f * (index % base) as f64;
        index /= base;
    }
    r
}

const HALTON_PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

/// Low-discrepancy points inside the spec's box, margin away from the
/// singular locus; identical for identical `(count, seed)`.
pub fn sample(spec: &ImmersionSpec, count: usize, seed: u64) -> Result<SamplePlan> {
    if count == 0 {
        return Err(Error::EmptyPlan);
    }
    if spec.m > HALTON_PRIMES.len() {
        return Err(Error::Build("sampling supports at most 8 coordinates".into()));
    }
    for (lo, hi) in &spec.domain {
        if hi - lo <= 2.0 * SINGULAR_MARGIN {
            return Err(Error::Build("domain box too small for the margin".into()));
        }
    }
    let offset = seed.wrapping_mul(577).wrapping_add(1) % 100_000;
    let points = (0..count)
        .map(|i| {
            let idx = offset + i as u64;
            spec.domain
                .iter()
                .enumerate()
                .map(|(c, (lo, hi))| {
                    let t = halton(idx + 1, HALTON_PRIMES[c]);
                    let a = lo + SINGULAR_MARGIN;
                    let b = hi - SINGULAR_MARGIN;
                    a + t * (b - a)
                })
                .collect()
        })
        .collect();
    Ok(SamplePlan {
        count,
        seed,
        points,
    })
}

/// Checks `|chart|² = chart_norm²` at every plan point to 10⁻¹² and that the
/// differential has full rank m (SPD induced metric).
pub fn validate_plan(spec: &ImmersionSpec, plan: &SamplePlan) -> Result<()> {
    use crate::linalg::{dot, Mat};
    let space = JetSpace::new(spec.m, 1);
    let norm2 = {
        let p = spec.chart_norm2.rational_part();
        let q = spec.chart_norm2.surd_coeff();
        let d = spec.chart_norm2.radicand();
        f64::from_rational(p) + f64::from_rational(q) * f64::from_rational(&d).sqrt()
    };
    for u in &plan.points {
        let jets = spec.chart_jets::<f64>(&space, u)?;
        let vals: Vec<f64> = jets.iter().map(|j| j.value()).collect();
        let r2 = dot(&vals, &vals);
        if (r2 - norm2).abs() > 1e-12 {
            return Err(Error::Build(format!(
                "chart norm² off by {:e} at {u:?}",
                (r2 - norm2).abs()
            )));
        }
        let mut g = Mat::<f64>::zeros(spec.m, spec.m);
        let e: Vec<Vec<f64>> = (0..spec.m)
            .map(|i| {
                let mut ei = vec![0u8; spec.m];
                ei[i] = 1;
                jets.iter().map(|j| j.coeff(&ei)).collect()
            })
            .collect();
        for i in 0..spec.m {
            for j in 0..spec.m {
                g[(i, j)] = dot(&e[i], &e[j]);
            }
        }
        if g.cholesky().is_none() {
            return Err(Error::SingularMetric {
                cond: g.sym_condition(),
            });
        }
    }
    Ok(())
}

/// Convenience: `a²` from machine integers.
pub fn a2_rat(p: i64, q: i64) -> Surd {
    Surd::from_rational(rat(p, q))
}

/// Named rational parameter as exact `Rational`.
pub fn rational_param(p: i64, q: i64) -> Rational {
    rat(p, q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dot;

    #[test]
    fn hypersphere_chart_lies_on_unit_sphere() {
        let spec = hypersphere(5, a2_rat(6, 7)).unwrap();
        assert_eq!(spec.m, 4);
        assert_eq!(spec.chart.len(), 6);
        let plan = sample(&spec, 8, 42).unwrap();
        validate_plan(&spec, &plan).unwrap();
        // last coordinate is b = √(1/7)
        let v = spec.eval_chart::<f64>(&plan.points[0]).unwrap();
        assert!((v[5] - (1.0f64 / 7.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn equator_chart_has_zero_last_coordinate() {
        let spec = hypersphere(4, a2_rat(1, 1)).unwrap();
        let plan = sample(&spec, 4, 7).unwrap();
        validate_plan(&spec, &plan).unwrap();
        for u in &plan.points {
            let v = spec.eval_chart::<f64>(u).unwrap();
            assert_eq!(v[4], 0.0);
        }
    }

    #[test]
    fn clifford_flat_two_torus_radii() {
        let spec = clifford(1, 3, a2_rat(1, 2)).unwrap();
        assert_eq!(spec.m, 4);
        assert_eq!(spec.n, 5);
        let plan = sample(&spec, 6, 42).unwrap();
        validate_plan(&spec, &plan).unwrap();
        for u in &plan.points {
            let v = spec.eval_chart::<f64>(u).unwrap();
            let x2 = dot(&v[..2], &v[..2]);
            let y2 = dot(&v[2..], &v[2..]);
            assert!((x2 - 0.5).abs() < 1e-14);
            assert!((y2 - 0.5).abs() < 1e-14);
        }
    }

    #[test]
    fn builders_reject_bad_parameters() {
        assert!(hypersphere(5, a2_rat(0, 1)).is_err());
        assert!(hypersphere(5, a2_rat(3, 2)).is_err());
        assert!(clifford(1, 3, a2_rat(1, 1)).is_err());
        assert!(clifford(0, 3, a2_rat(1, 2)).is_err());
        assert!(equatorial_in_hypersphere(3, 4, a2_rat(1, 2)).is_err());
        assert!(product_in_torus(2, 2, 1, 2, a2_rat(1, 3)).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_clear_of_poles() {
        let spec = clifford(2, 3, a2_rat(1, 3)).unwrap();
        let p1 = sample(&spec, 32, 7).unwrap();
        let p2 = sample(&spec, 32, 7).unwrap();
        assert_eq!(p1.points, p2.points);
        let p3 = sample(&spec, 32, 8).unwrap();
        assert_ne!(p1.points, p3.points);
        for u in &p1.points {
            for (c, (lo, hi)) in spec.domain.iter().enumerate() {
                assert!(u[c] >= lo + 1e-2 && u[c] <= hi - 1e-2, "margin violated");
            }
        }
        assert!(matches!(sample(&spec, 0, 1), Err(Error::EmptyPlan)));
    }

    #[test]
    fn product_in_torus_chart_structure() {
        let spec = product_in_torus(1, 2, 1, 2, a2_rat(1, 3)).unwrap();
        assert_eq!(spec.m, 2);
        assert_eq!(spec.n, 5);
        let plan = sample(&spec, 5, 42).unwrap();
        validate_plan(&spec, &plan).unwrap();
        let v = spec.eval_chart::<f64>(&plan.points[0]).unwrap();
        // layout: (a σ_1(u), 0, b σ_1(v), 0)
        assert_eq!(v[2], 0.0);
        assert_eq!(v[5], 0.0);
        let a2 = dot(&v[..3], &v[..3]);
        assert!((a2 - 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn lifted_equator_copy_is_valid() {
        let spec = hypersphere(3, a2_rat(1, 2)).unwrap();
        let lifted = lift_to_equator(&spec);
        assert_eq!(lifted.n, 4);
        let plan = sample(&lifted, 4, 42).unwrap();
        validate_plan(&lifted, &plan).unwrap();
    }

    #[test]
    fn torus_factor_charts() {
        let spec = product_in_torus(1, 2, 1, 2, a2_rat(1, 3)).unwrap();
        let (f1, f2) = torus_factors(&spec).unwrap();
        assert_eq!(f1.m, 1);
        assert_eq!(f1.chart.len(), 3);
        assert_eq!(f2.chart.len(), 3);
        // factor 1 lives on the radius-a sphere
        let v = f1.eval_chart::<f64>(&[1.1]).unwrap();
        assert!((dot(&v, &v) - 1.0 / 3.0).abs() < 1e-15);
        // factor 2 on the radius-b sphere, with its own coordinate
        let w = f2.eval_chart::<f64>(&[2.2]).unwrap();
        assert!((dot(&w, &w) - 2.0 / 3.0).abs() < 1e-15);
    }
}

//! Suite execution: per-point work items dispatched to a scoped worker pool
//! with a deterministic, point-ordered reduction.

use anyhow::{anyhow, bail, Result};
use biharm_core::catalog::{sample, Family, ImmersionSpec, SamplePlan};
use biharm_core::classify::tori_for_index;
use biharm_core::exact::{rational_string, Rational, Surd};
use biharm_core::geometry::{surd_to_scalar, Ambient};
use biharm_core::identities::{identity_suite, IdentityCase};
use biharm_core::linalg::norm;
use biharm_core::operators::{
    biharm_point_data, integrate, residual_charm4, residual_charm6, CharmMode, ResidualReport,
};
use biharm_core::scalar::{Dd, Real};
use biharm_core::variation::{expected_instability, instability_value};
use serde_json::{json, Value};

/// Numeric precision the verifier runs at.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Precision {
    Double,
    Extended,
}

/// Runs `f` over all plan points, in order, on up to `threads` workers.
pub fn map_points<T, F>(points: &[Vec<f64>], threads: usize, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&[f64]) -> Result<T> + Sync,
{
    if threads <= 1 || points.len() <= 1 {
        return points.iter().map(|u| f(u)).collect();
    }
    let chunk = points.len().div_ceil(threads);
    let mut slots: Vec<Option<Result<T>>> = Vec::new();
    slots.resize_with(points.len(), || None);
    std::thread::scope(|scope| {
        let mut remaining: &mut [Option<Result<T>>] = &mut slots;
        let mut offset = 0usize;
        let f = &f;
        while !remaining.is_empty() {
            let take = chunk.min(remaining.len());
            let (head, tail) = remaining.split_at_mut(take);
            let base = offset;
            scope.spawn(move || {
                for (i, slot) in head.iter_mut().enumerate() {
                    *slot = Some(f(&points[base + i]));
                }
            });
            remaining = tail;
            offset += take;
        }
    });
    slots
        .into_iter()
        .map(|s| s.expect("worker filled slot"))
        .collect()
}

fn to_scalar_point<S: Real>(u: &[f64]) -> Vec<S> {
    u.iter().map(|x| S::from_f64(*x)).collect()
}

fn run_biharmonic_typed<S: Real>(
    spec: &ImmersionSpec,
    plan: &SamplePlan,
    k: &Surd,
    threads: usize,
    tol: f64,
) -> Result<ResidualReport> {
    let amb = Ambient::<S>::unit_sphere(spec.n + 1);
    let ks = surd_to_scalar::<S>(k);
    let results = map_points(&plan.points, threads, |u| {
        let us = to_scalar_point::<S>(u);
        let data = biharm_point_data(spec, &amb, &us)?;
        let r = data.residual_at(ks);
        Ok((
            norm(&r.full).to_f64(),
            norm(&r.normal).to_f64(),
            norm(&r.tangent).to_f64(),
        ))
    })
    .map_err(|e| anyhow!("biharmonic suite: {e}"))?;
    let per_point: Vec<f64> = results.iter().map(|r| r.0).collect();
    let mut rep = ResidualReport::from_norms(
        "biharmonic-index",
        spec,
        amb.describe(),
        Some(format!("{k}")),
        per_point,
        tol,
    );
    rep.normal_max = Some(results.iter().map(|r| r.1).fold(0.0, f64::max));
    rep.tangent_max = Some(results.iter().map(|r| r.2).fold(0.0, f64::max));
    Ok(rep)
}

pub fn run_biharmonic(
    spec: &ImmersionSpec,
    plan: &SamplePlan,
    k: &Surd,
    threads: usize,
    precision: Precision,
) -> Result<ResidualReport> {
    match precision {
        Precision::Double => run_biharmonic_typed::<f64>(spec, plan, k, threads, 1e-8),
        Precision::Extended => run_biharmonic_typed::<Dd>(spec, plan, k, threads, 1e-8),
    }
}

pub fn run_charm4(
    spec: &ImmersionSpec,
    plan: &SamplePlan,
    mode: CharmMode,
    threads: usize,
) -> Result<ResidualReport> {
    let per_point = map_points(&plan.points, threads, |u| {
        Ok(norm(&residual_charm4::<f64>(spec, u, mode)?))
    })
    .map_err(|e| anyhow!("charm4 suite: {e}"))?;
    let name = match mode {
        CharmMode::Reduced => "charm4-reduced",
        CharmMode::Full => "charm4-full",
    };
    Ok(ResidualReport::from_norms(
        name,
        spec,
        format!("S^{}", spec.n),
        None,
        per_point,
        1e-9,
    ))
}

fn run_charm6_typed<S: Real>(
    spec: &ImmersionSpec,
    plan: &SamplePlan,
    threads: usize,
) -> Result<ResidualReport> {
    let per_point = map_points(&plan.points, threads, |u| {
        let us = to_scalar_point::<S>(u);
        Ok(norm(&residual_charm6::<S>(spec, &us)?).to_f64())
    })
    .map_err(|e| anyhow!("charm6 suite: {e}"))?;
    Ok(ResidualReport::from_norms(
        "charm6",
        spec,
        format!("S^{}", spec.n),
        None,
        per_point,
        1e-6,
    ))
}

pub fn run_charm6(
    spec: &ImmersionSpec,
    plan: &SamplePlan,
    threads: usize,
    precision: Precision,
) -> Result<ResidualReport> {
    match precision {
        Precision::Double => run_charm6_typed::<f64>(spec, plan, threads),
        Precision::Extended => run_charm6_typed::<Dd>(spec, plan, threads),
    }
}

/// Which identity cases make sense for a family.
pub fn applicable_cases(family: &Family) -> Vec<IdentityCase> {
    use IdentityCase::*;
    let all = [TangentSplit, NormalSplit, LaplacianSplit, Weitzenboeck];
    let pu = [PuTrace, LaplacianSplitPu, PsiConstancy];
    let mut cases: Vec<IdentityCase> = all.to_vec();
    match family {
        Family::Hypersphere { .. } | Family::EquatorialInHypersphere { .. } => {
            cases.extend(pu);
            cases.push(HypersphereSplit);
        }
        Family::ProductInTorus { .. } => cases.push(TorusSplit),
        Family::Clifford { .. } | Family::Helper => {}
    }
    cases
}

pub fn run_identities(
    spec: &ImmersionSpec,
    plan: &SamplePlan,
    case: Option<IdentityCase>,
) -> Result<Vec<ResidualReport>> {
    let amb = Ambient::<f64>::unit_sphere(spec.n + 1);
    let cases = match case {
        Some(c) => vec![c],
        None => applicable_cases(&spec.family),
    };
    cases
        .into_iter()
        .map(|c| {
            identity_suite::<f64>(spec, &amb, plan, c, c.default_tol())
                .map_err(|e| anyhow!("identity case {}: {e}", c.name()))
        })
        .collect()
}

/// Instability certificate: pointwise `⟨I_k(H), H⟩` against `−4m²|H|⁴`, the
/// spread across samples, and the sign of the integral.
pub fn run_instability(
    spec: &ImmersionSpec,
    plan: &SamplePlan,
    k: &Surd,
    threads: usize,
) -> Result<(ResidualReport, f64)> {
    let ks = surd_to_scalar::<f64>(k);
    let values = map_points(&plan.points, threads, |u| {
        let v = instability_value::<f64>(spec, u, ks)?;
        let expect = expected_instability::<f64>(spec, u)?;
        Ok((v, expect))
    })
    .map_err(|e| anyhow!("instability suite: {e}"))?;
    let per_point: Vec<f64> = values
        .iter()
        .map(|(v, e)| {
            let scale = e.abs().max(1e-30);
            (v - e).abs() / scale
        })
        .collect();
    let mut rep = ResidualReport::from_norms(
        "instability",
        spec,
        format!("S^{}", spec.n),
        Some(format!("{k}")),
        per_point,
        1e-5,
    );
    // spread of the raw pointwise values, relative
    let raw: Vec<f64> = values.iter().map(|(v, _)| *v).collect();
    let vmax = raw.iter().cloned().fold(f64::MIN, f64::max);
    let vmin = raw.iter().cloned().fold(f64::MAX, f64::min);
    let scale = raw.iter().map(|v| v.abs()).fold(1e-30, f64::max);
    let spread = (vmax - vmin) / scale;
    if spread > 1e-6 {
        rep.pass = false;
    }
    // integral over the chart must be strictly negative for proper records
    let nodes = if spec.m <= 2 { 12 } else { 4 };
    let integral = integrate(spec, nodes, |u| {
        Ok(instability_value::<f64>(spec, u, ks)?)
    })
    .map_err(|e| anyhow!("instability integral: {e}"))?;
    let h_probe = expected_instability::<f64>(spec, &plan.points[0])?;
    if h_probe.abs() > 1e-20 && integral >= 0.0 {
        rep.pass = false;
    }
    Ok((rep, integral))
}

/// One row of the torus index sweep.
pub fn scan_tori(n1: usize, n2: usize, grid: &[Rational]) -> Result<Vec<Value>> {
    if grid.is_empty() {
        bail!("empty k grid");
    }
    let mut rows = Vec::new();
    for k in grid {
        let ks = Surd::from_rational(k.clone());
        let (records, bound, roots) =
            tori_for_index(n1, n2, &ks).map_err(|e| anyhow!("scan at k={k}: {e}"))?;
        let radii: Vec<String> = records
            .iter()
            .map(|r| r.a2().map(|s| s.to_decimal(12)).unwrap_or_default())
            .collect();
        rows.push(json!({
            "k": rational_string(k),
            "proper_tori": records.len(),
            "discriminant": rational_string(&roots.discriminant),
            "bound": bound.to_decimal(12),
            "a2": radii,
        }));
    }
    Ok(rows)
}

/// One row of the hypersphere radius sweep.
pub fn scan_hypersphere(
    n: usize,
    grid: &[Rational],
    k_arg: &str,
    samples: usize,
    seed: u64,
    threads: usize,
) -> Result<(Vec<Value>, bool)> {
    if grid.is_empty() {
        bail!("empty a2 grid");
    }
    let mut rows = Vec::new();
    let mut all_pass = true;
    for a2 in grid {
        let spec = biharm_core::catalog::hypersphere(n, Surd::from_rational(a2.clone()))
            .map_err(|e| anyhow!("a2={a2}: {e}"))?;
        let k = crate::descriptor::resolve_index(&spec, k_arg)?;
        let plan = sample(&spec, samples, seed)?;
        let rep = run_biharmonic(&spec, &plan, &k, threads, Precision::Double)?;
        all_pass &= rep.pass;
        rows.push(json!({
            "a2": rational_string(a2),
            "k": format!("{k}"),
            "max": rep.max,
            "mean": rep.mean,
            "pass": rep.pass,
        }));
    }
    Ok((rows, all_pass))
}

/// Parses `start:end:step` into an inclusive exact grid.
pub fn parse_grid(arg: &str) -> Result<Vec<Rational>> {
    use biharm_core::exact::parse_rational;
    let parts: Vec<&str> = arg.split(':').collect();
    if parts.len() != 3 {
        bail!("grid must look like start:end:step");
    }
    let start = parse_rational(parts[0]).map_err(|e| anyhow!("{e}"))?;
    let end = parse_rational(parts[1]).map_err(|e| anyhow!("{e}"))?;
    let step = parse_rational(parts[2]).map_err(|e| anyhow!("{e}"))?;
    if step <= Rational::from_integer(0.into()) {
        bail!("grid step must be positive");
    }
    let mut out = Vec::new();
    let mut x = start;
    while x <= end {
        out.push(x.clone());
        x += step.clone();
    }
    if out.is_empty() {
        bail!("empty grid");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use biharm_core::catalog::hypersphere;
    use biharm_core::exact::rat;

    #[test]
    fn grid_parsing() {
        let g = parse_grid("-2:1:0.25").unwrap();
        assert_eq!(g.len(), 13);
        assert_eq!(g[0], rat(-2, 1));
        assert_eq!(g[12], rat(1, 1));
        assert!(parse_grid("1:0:0.5").is_err());
        assert!(parse_grid("0:1:0").is_err());
        assert!(parse_grid("0:1").is_err());
    }

    #[test]
    fn thread_pool_is_deterministic() {
        let spec = hypersphere(5, Surd::from_rational(rat(6, 7))).unwrap();
        let plan = sample(&spec, 8, 42).unwrap();
        let k = Surd::from_rational(rat(10, 3));
        let seq = run_biharmonic(&spec, &plan, &k, 1, Precision::Double).unwrap();
        let par = run_biharmonic(&spec, &plan, &k, 4, Precision::Double).unwrap();
        assert_eq!(seq.per_point, par.per_point);
        assert!(seq.pass);
    }

    #[test]
    fn tori_scan_counts() {
        let grid = parse_grid("-2:1:0.25").unwrap();
        let rows = scan_tori(1, 3, &grid).unwrap();
        // bound 4 − 2√3 ≈ 0.536: counts 2 below (except k = 0 → 1), 0 above
        for row in &rows {
            let k: f64 = {
                let s = row["k"].as_str().unwrap();
                let (num, den) = s.split_once('/').unwrap();
                num.parse::<f64>().unwrap() / den.parse::<f64>().unwrap()
            };
            let count = row["proper_tori"].as_u64().unwrap();
            let expected = if k > 0.5358983848622454 {
                0
            } else if k == 0.0 {
                1
            } else {
                2
            };
            assert_eq!(count, expected, "at k = {k}");
        }
    }
}

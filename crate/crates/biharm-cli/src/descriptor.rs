//! Manifold descriptor strings, e.g. `hypersphere:n=5,a2=6/7`.

use anyhow::{anyhow, bail, Context, Result};
use biharm_core::catalog::{
    clifford, equatorial_in_hypersphere, hypersphere, product_in_torus, ImmersionSpec,
};
use biharm_core::classify::{certified_index, charm6_radius2};
use biharm_core::exact::{parse_rational, Surd};
use std::collections::BTreeMap;

fn parse_params(body: &str) -> Result<BTreeMap<String, String>> {
    let mut out = BTreeMap::new();
    for item in body.split(',') {
        let (key, value) = item
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value, got {item:?}"))?;
        out.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(out)
}

fn take_usize(params: &BTreeMap<String, String>, key: &str) -> Result<usize> {
    params
        .get(key)
        .ok_or_else(|| anyhow!("missing parameter {key}"))?
        .parse()
        .with_context(|| format!("parameter {key} must be an integer"))
}

fn take_radius2(params: &BTreeMap<String, String>, n: Option<usize>) -> Result<Surd> {
    let raw = params
        .get("a2")
        .ok_or_else(|| anyhow!("missing parameter a2"))?;
    if raw == "exact" {
        if n != Some(7) {
            bail!("a2=exact refers to the six-dimensional critical radius and needs n=7");
        }
        return Ok(charm6_radius2());
    }
    Ok(Surd::from_rational(parse_rational(raw)?))
}

/// Builds the immersion named by a descriptor string.
pub fn build_manifold(descriptor: &str) -> Result<ImmersionSpec> {
    let (family, body) = descriptor
        .split_once(':')
        .ok_or_else(|| anyhow!("descriptor must look like family:key=value,…"))?;
    let params = parse_params(body)?;
    let spec = match family {
        "hypersphere" => {
            let n = take_usize(&params, "n")?;
            hypersphere(n, take_radius2(&params, Some(n))?)
        }
        "clifford" => clifford(
            take_usize(&params, "n1")?,
            take_usize(&params, "n2")?,
            take_radius2(&params, None)?,
        ),
        "equatorial" => equatorial_in_hypersphere(
            take_usize(&params, "msub")?,
            take_usize(&params, "n")?,
            take_radius2(&params, None)?,
        ),
        "product" => product_in_torus(
            take_usize(&params, "m1")?,
            take_usize(&params, "n1")?,
            take_usize(&params, "m2")?,
            take_usize(&params, "n2")?,
            take_radius2(&params, None)?,
        ),
        other => bail!("unknown manifold family {other:?}"),
    };
    spec.map_err(|e| anyhow!("cannot build {descriptor}: {e}"))
}

/// Resolves a `--k` argument: `auto` asks the classifier, anything else is
/// an exact rational.
pub fn resolve_index(spec: &ImmersionSpec, k_arg: &str) -> Result<Surd> {
    if k_arg == "auto" {
        return certified_index(&spec.family).map_err(|e| anyhow!("cannot resolve k: {e}"));
    }
    Ok(Surd::from_rational(parse_rational(k_arg)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use biharm_core::exact::rat;

    #[test]
    fn parse_descriptors() {
        let spec = build_manifold("hypersphere:n=5,a2=6/7").unwrap();
        assert_eq!(spec.m, 4);
        let spec = build_manifold("clifford:n1=1,n2=3,a2=1/2").unwrap();
        assert_eq!(spec.n, 5);
        let spec = build_manifold("equatorial:msub=2,n=4,a2=2/3").unwrap();
        assert_eq!(spec.m, 2);
        let spec = build_manifold("product:m1=1,n1=2,m2=1,n2=2,a2=1/3").unwrap();
        assert_eq!(spec.n, 5);
        assert!(build_manifold("moebius:n=2").is_err());
        assert!(build_manifold("hypersphere:n=5").is_err());
        assert!(build_manifold("hypersphere:n=5,a2=exact").is_err());
        assert!(build_manifold("hypersphere:n=7,a2=exact").is_ok());
    }

    #[test]
    fn k_resolution() {
        let spec = build_manifold("hypersphere:n=5,a2=6/7").unwrap();
        let k = resolve_index(&spec, "auto").unwrap();
        assert_eq!(k, Surd::from_rational(rat(10, 3)));
        let k = resolve_index(&spec, "-3/2").unwrap();
        assert_eq!(k, Surd::from_rational(rat(-3, 2)));
        // harmonic specs resolve to k = 0
        let eq = build_manifold("hypersphere:n=5,a2=1").unwrap();
        assert_eq!(resolve_index(&eq, "auto").unwrap(), Surd::from_int(0));
        // the two theorem scenarios
        let spec = build_manifold("equatorial:msub=2,n=4,a2=2/3").unwrap();
        assert_eq!(resolve_index(&spec, "auto").unwrap(), Surd::from_int(1));
        let spec = build_manifold("product:m1=1,n1=2,m2=1,n2=2,a2=1/3").unwrap();
        assert_eq!(
            resolve_index(&spec, "auto").unwrap(),
            Surd::from_rational(rat(-1, 2))
        );
    }
}

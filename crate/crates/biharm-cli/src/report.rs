//! Machine-readable rendering: JSON carries exact fields verbatim, CSV
//! rounds to 12 significant digits for spreadsheet use.

use biharm_core::classify::{CharmReport, ClassificationRecord, Verdict};
use biharm_core::exact::{rational_string, Surd};
use biharm_core::operators::ResidualReport;
use serde_json::{json, Map, Value};

/// Decimal digits carried by the `approx` field of exact values.
const APPROX_DIGITS: usize = 24;

pub fn surd_json(s: &Surd) -> Value {
    json!({
        "p": rational_string(s.rational_part()),
        "q": rational_string(s.surd_coeff()),
        "d": rational_string(&s.radicand()),
        "approx": s.to_decimal(APPROX_DIGITS),
    })
}

/// 12-significant-digit decimal used in CSV cells.
pub fn csv_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.11e}")
}

pub fn verdict_json(v: &Verdict) -> Value {
    match v {
        Verdict::Harmonic => json!({"type": "harmonic"}),
        Verdict::ProperlyBiharmonic { k } => json!({
            "type": "properly_biharmonic",
            "k": surd_json(k),
        }),
        Verdict::CHarmonic { k } => {
            let mut map = Map::new();
            map.insert("type".into(), json!("c_harmonic"));
            if let Some(k) = k {
                map.insert("k".into(), surd_json(k));
            }
            Value::Object(map)
        }
        Verdict::None => json!({"type": "none"}),
    }
}

pub fn record_json(rec: &ClassificationRecord) -> Value {
    let mut params = Map::new();
    for (name, value) in &rec.params {
        params.insert(name.clone(), surd_json(value));
    }
    let mut map = Map::new();
    map.insert("family".into(), json!(rec.family));
    map.insert("params".into(), Value::Object(params));
    map.insert("verdict".into(), verdict_json(&rec.verdict));
    if let Some(h2) = &rec.h_norm2 {
        map.insert("h_norm2".into(), surd_json(h2));
    }
    if let Some(d) = &rec.discriminant {
        map.insert("discriminant".into(), json!(rational_string(d)));
    }
    if let Some(b) = &rec.bound {
        map.insert("bound".into(), surd_json(b));
    }
    if let (Some(r2), Some(c2)) = (&rec.enclosing_radius2, &rec.enclosing_center_norm2) {
        map.insert(
            "enclosing".into(),
            json!({
                "radius2": surd_json(r2),
                "center_norm2": surd_json(c2),
            }),
        );
    }
    Value::Object(map)
}

pub fn charm_json(report: &CharmReport) -> Value {
    json!({
        "m": report.m,
        "n": report.n,
        "hypersphere": report.hypersphere.as_ref().map(record_json),
        "tori": if report.torus_exists { json!("possible") } else { json!("none") },
        "notes": report.notes,
    })
}

pub fn residual_json(rep: &ResidualReport) -> Value {
    json!({
        "equation": rep.equation,
        "spec": rep.spec,
        "ambient": rep.ambient,
        "k": rep.k,
        "points": rep.points,
        "max": rep.max,
        "mean": rep.mean,
        "tol": rep.tol,
        "pass": rep.pass,
    })
}

pub const RESIDUAL_CSV_HEADER: &str = "equation,spec,ambient,k,points,max,mean,tol,pass";

pub fn residual_csv_row(rep: &ResidualReport) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{}",
        rep.equation,
        rep.spec,
        rep.ambient,
        rep.k.clone().unwrap_or_default(),
        rep.points,
        csv_number(rep.max),
        csv_number(rep.mean),
        csv_number(rep.tol),
        rep.pass
    )
}

pub fn record_csv_rows(recs: &[ClassificationRecord]) -> Vec<String> {
    let mut rows = vec![String::from(
        "family,params,verdict,k,h_norm2,discriminant,bound,enclosing_radius2",
    )];
    for rec in recs {
        let params = rec
            .params
            .iter()
            .map(|(k, v)| format!("{k}={}", v.to_decimal(12)))
            .collect::<Vec<_>>()
            .join(";");
        let verdict = match &rec.verdict {
            Verdict::Harmonic => "harmonic".to_string(),
            Verdict::ProperlyBiharmonic { .. } => "properly_biharmonic".to_string(),
            Verdict::CHarmonic { .. } => "c_harmonic".to_string(),
            Verdict::None => "none".to_string(),
        };
        let k = rec.index().map(|s| s.to_decimal(12)).unwrap_or_default();
        let h2 = rec
            .h_norm2
            .as_ref()
            .map(|s| s.to_decimal(12))
            .unwrap_or_default();
        let disc = rec
            .discriminant
            .as_ref()
            .map(rational_string)
            .unwrap_or_default();
        let bound = rec
            .bound
            .as_ref()
            .map(|s| s.to_decimal(12))
            .unwrap_or_default();
        let enc = rec
            .enclosing_radius2
            .as_ref()
            .map(|s| s.to_decimal(12))
            .unwrap_or_default();
        rows.push(format!(
            "{},{params},{verdict},{k},{h2},{disc},{bound},{enc}",
            rec.family
        ));
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use biharm_core::exact::rat;

    #[test]
    fn surd_serialization_schema() {
        let s = Surd::new(rat(5, 6), rat(1, 30), rat(649, 1)).unwrap();
        let v = surd_json(&s);
        assert_eq!(v["p"], "5/6");
        assert_eq!(v["q"], "1/30");
        assert_eq!(v["d"], "649/1");
        assert!(v["approx"].as_str().unwrap().starts_with("1.68251594685713311927"));
    }

    #[test]
    fn csv_sig_digits() {
        assert_eq!(csv_number(0.0), "0");
        assert_eq!(csv_number(1.0 / 3.0), "3.33333333333e-1");
    }
}

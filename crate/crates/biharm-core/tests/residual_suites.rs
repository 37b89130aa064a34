//! Cross-module integration checks: the classifier's exact records drive the
//! numerical residual suites and the two engines must agree.

use biharm_core::catalog::{
    a2_rat, clifford, equatorial_in_hypersphere, hypersphere, lift_to_equator, product_in_torus,
    sample,
};
use biharm_core::classify::{charm6_radius2, classify_hypersphere, classify_torus, tori_for_index};
use biharm_core::exact::{rat, Surd};
use biharm_core::geometry::{extrinsic_at, surd_to_scalar, Ambient};
use biharm_core::linalg::norm;
use biharm_core::operators::{residual_biharmonic, residual_charm6, verify_biharmonic};
use biharm_core::scalar::{Dd, Real};

#[test]
fn classifier_verifier_agreement_hyperspheres() {
    // Residual ≤ 1e-8 at the certified index, ≥ 1e-3·|H| half an index away.
    for (n, a2) in [(4usize, rat(1, 3)), (5, rat(1, 2)), (7, rat(6, 7))] {
        let rec = classify_hypersphere(n, &Surd::from_rational(a2.clone())).unwrap();
        let k = rec.index().unwrap().clone();
        let spec = hypersphere(n, Surd::from_rational(a2)).unwrap();
        let amb = Ambient::<f64>::unit_sphere(spec.n + 1);
        let plan = sample(&spec, 8, 42).unwrap();
        let rep = verify_biharmonic::<f64>(&spec, &amb, &plan, &k, 1e-8).unwrap();
        assert!(rep.pass, "{}: residual {:e}", spec.name, rep.max);
        let h = surd_to_scalar::<f64>(rec.h_norm2.as_ref().unwrap()).sqrt();
        for delta in [-0.5f64, 0.5] {
            let kk = surd_to_scalar::<f64>(&k) + delta;
            let r = residual_biharmonic(&spec, &amb, &plan.points[0], kk).unwrap();
            assert!(norm(&r.full) >= 1e-3 * h, "detuned residual too small");
        }
    }
}

#[test]
fn classifier_verifier_agreement_tori() {
    for (n1, n2, a2) in [(1usize, 3usize, rat(1, 2)), (2, 3, rat(1, 3))] {
        let rec = classify_torus(n1, n2, &Surd::from_rational(a2.clone())).unwrap();
        let k = rec.index().unwrap().clone();
        let spec = clifford(n1, n2, Surd::from_rational(a2)).unwrap();
        let amb = Ambient::<f64>::unit_sphere(spec.n + 1);
        let plan = sample(&spec, 8, 42).unwrap();
        let rep = verify_biharmonic::<f64>(&spec, &amb, &plan, &k, 1e-8).unwrap();
        assert!(rep.pass, "{}: residual {:e}", spec.name, rep.max);
    }
}

#[test]
fn tori_for_index_records_verify_numerically() {
    // Every record of the exact root solver is a genuine residual zero.
    let (recs, _, _) = tori_for_index(1, 3, &Surd::from_rational(rat(1, 4))).unwrap();
    assert_eq!(recs.len(), 2);
    for rec in recs {
        let a2 = rec.a2().unwrap().clone();
        let k = rec.index().unwrap().clone();
        let spec = clifford(1, 3, a2).unwrap();
        let amb = Ambient::<f64>::unit_sphere(spec.n + 1);
        let plan = sample(&spec, 4, 42).unwrap();
        let rep = verify_biharmonic::<f64>(&spec, &amb, &plan, &k, 1e-8).unwrap();
        assert!(rep.pass, "{}: residual {:e}", spec.name, rep.max);
    }
}

#[test]
fn equator_embedding_residuals_agree() {
    // A residual computed in S^{n} and in the equator of S^{n+1} must match.
    let spec = hypersphere(4, a2_rat(2, 5)).unwrap();
    let lifted = lift_to_equator(&spec);
    let amb_lo = Ambient::<f64>::unit_sphere(spec.n + 1);
    let amb_hi = Ambient::<f64>::unit_sphere(lifted.n + 1);
    let plan = sample(&spec, 6, 42).unwrap();
    for u in &plan.points {
        for k in [-1.0f64, 0.0, 0.75, 2.0] {
            let r_lo = residual_biharmonic(&spec, &amb_lo, u, k).unwrap();
            let r_hi = residual_biharmonic(&lifted, &amb_hi, u, k).unwrap();
            // components agree (the lift appends a zero coordinate)
            for c in 0..spec.n + 1 {
                assert!((r_lo.full[c] - r_hi.full[c]).abs() < 1e-8);
            }
            assert!(r_hi.full[spec.n + 1].abs() < 1e-10);
        }
    }
}

#[test]
fn equatorial_in_hypersphere_scenario() {
    // S²(a) ⊂ S³(a) ⊂ S⁴ with a² = 2/3: harmonic in the sub-sphere and
    // properly biharmonic of index k = 2(1 − b²/a²) = 1 in S⁴.
    let spec = equatorial_in_hypersphere(2, 4, a2_rat(2, 3)).unwrap();
    let plan = sample(&spec, 8, 42).unwrap();
    let sub = Ambient::<f64>::sub_sphere_of(&spec).unwrap();
    for u in &plan.points {
        let ext = extrinsic_at(&spec, &sub, u).unwrap();
        assert!(ext.h_norm2.sqrt() < 1e-10, "H_M = {:e}", ext.h_norm2.sqrt());
    }
    let amb = Ambient::<f64>::unit_sphere(spec.n + 1);
    let k = Surd::from_rational(rat(1, 1));
    let rep = verify_biharmonic::<f64>(&spec, &amb, &plan, &k, 1e-8).unwrap();
    assert!(rep.pass, "residual {:e}", rep.max);
    // detuned by ±1/2 the residual comes alive
    let ext = extrinsic_at(&spec, &amb, &plan.points[0]).unwrap();
    let h = ext.h_norm2.sqrt();
    for kk in [0.5f64, 1.5] {
        let r = residual_biharmonic(&spec, &amb, &plan.points[0], kk).unwrap();
        assert!(norm(&r.full) >= 1e-3 * h);
    }
}

#[test]
fn product_in_torus_scenario() {
    // S¹(a)×S¹(b) ⊂ S⁵ (n₁ = n₂ = 2): at a² = 1/3 properly biharmonic of
    // index (1−b²/a²) + (1−a²/b²) = −1/2; at a² = 1/2 harmonic.
    let spec = product_in_torus(1, 2, 1, 2, a2_rat(1, 3)).unwrap();
    let plan = sample(&spec, 8, 42).unwrap();
    let amb = Ambient::<f64>::unit_sphere(spec.n + 1);
    let k = Surd::from_rational(rat(-1, 2));
    let rep = verify_biharmonic::<f64>(&spec, &amb, &plan, &k, 1e-8).unwrap();
    assert!(rep.pass, "residual {:e}", rep.max);
    let balanced = product_in_torus(1, 2, 1, 2, a2_rat(1, 2)).unwrap();
    for u in &sample(&balanced, 4, 42).unwrap().points {
        let ext = extrinsic_at(&balanced, &amb, u).unwrap();
        assert!(ext.h_norm2.sqrt() < 1e-10);
    }
}

#[test]
fn charm6_residual_double_precision_probe() {
    // Detuned hypersphere(7, 1/2): |λ² + 2λ − 72 + (2/75)(−3)(12)|·|H| = 24.96.
    let spec = hypersphere(7, a2_rat(1, 2)).unwrap();
    let u = spec.probe_point();
    let r = residual_charm6::<f64>(&spec, &u).unwrap();
    assert!(
        (norm(&r) - 24.96).abs() < 1e-4,
        "detuned sixth-order residual {}",
        norm(&r)
    );
    // equator: zero
    let eq = hypersphere(7, a2_rat(1, 1)).unwrap();
    let r = residual_charm6::<f64>(&eq, &eq.probe_point()).unwrap();
    assert!(norm(&r) < 1e-9);
    // wrong dimension rejected
    let bad = hypersphere(6, a2_rat(1, 2)).unwrap();
    assert!(residual_charm6::<f64>(&bad, &bad.probe_point()).is_err());
    // non-pseudo-umbilic spec rejected
    let torus = clifford(3, 3, a2_rat(1, 3)).unwrap();
    assert!(residual_charm6::<f64>(&torus, &torus.probe_point()).is_err());
}

#[test]
fn charm6_residual_at_exact_radius_extended_precision() {
    let spec = hypersphere(7, charm6_radius2()).unwrap();
    let plan = sample(&spec, 4, 42).unwrap();
    for u in &plan.points {
        let ud: Vec<Dd> = u.iter().map(|x| Dd::from_f64(*x)).collect();
        let r = residual_charm6::<Dd>(&spec, &ud).unwrap();
        let rn = norm(&r).to_f64();
        assert!(rn <= 1e-6, "sixth-order residual {rn:e} at {u:?}");
    }
}

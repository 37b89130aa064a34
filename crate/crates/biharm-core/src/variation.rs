//! Second variation of the indexed bienergy along the inclusion: pointwise
//! evaluation of `⟨I_k(V), W⟩` and the instability certificate
//! `⟨I_k(H), H⟩ = −4m²|H|⁴` for properly biharmonic inclusions.
//!
//! The long operator display is assembled term by term; bracket conventions
//! (where traces contract, which factors are projected) are fixed so that
//! the `−4m²|H|⁴` identity holds on both a hypersphere and a torus, which
//! pins every ambiguous contraction:
//!   * `tr⟨V, Tφ⟩Tφ` is the tangential projection `P_T V`;
//!   * `⟨dΔφ, Tφ⟩ = g^{ij}⟨∇_i Δφ, E_j⟩` and likewise for `⟨dV, Tφ⟩`;
//!   * `tr⟨V, dΔφ⟩Tφ = g^{ij}⟨V, ∇_i Δφ⟩ E_j`, same shape for `dV`;
//!   * `Δφ := δTφ = −m·H` for the inclusion, and `|Tφ|² = m` isometrically.

use crate::catalog::ImmersionSpec;
use crate::geometry::{jets_value, Ambient, GeoCtx};
use crate::jet::Jet;
use crate::linalg::dot;
use crate::operators::{laplacian_jets, LapVariant, VectorField};
use crate::scalar::Real;
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// Every term of `I_k(V)` at a point, exposed for debugging, plus the sum.
pub struct IkTerms<S> {
    pub lap2_v: Vec<S>,
    pub lap_of_tangential_block: Vec<S>,
    pub curvature_scalar_block: Vec<S>,
    pub trace_blocks: Vec<S>,
    pub first_order_blocks: Vec<S>,
    pub k_block: Vec<S>,
    pub total: Vec<S>,
}

/// Evaluates `I_k(V)` at `u` for an ambient-sphere-tangent field `V`.
///
/// Needs chart jets of order 6 when `V` itself consumes two orders (as the
/// mean curvature field does); `order` is the chart jet order to use.
pub fn ik_apply<S: Real>(
    spec: &ImmersionSpec,
    u: &[S],
    field: &dyn VectorField<S>,
    k: S,
    order: usize,
) -> Result<IkTerms<S>> {
    let ctx = GeoCtx::new(spec, u, order)?;
    let amb = Ambient::unit_sphere(spec.n + 1);
    let m = ctx.m();
    let nn = ctx.space_dim();
    let mf = S::from_i64(m as i64);

    let v = field.eval(&ctx)?;
    let h = ctx.extrinsic(&amb)?.h;
    // Δφ = δTφ = −m·H as a jet field.
    let dphi: Vec<Jet<S>> = h.iter().map(|c| c.scale(-mf)).collect();

    // |Tφ|² = g^{ij} g_ij (equals m for an isometric inclusion; computed
    // honestly as a jet).
    let mut tphi_sq = Jet::constant(&ctx.space, S::zero());
    for i in 0..m {
        for j in 0..m {
            tphi_sq = tphi_sq.add(&ctx.g_inv[i][j].mul(&ctx.g[i][j]));
        }
    }

    let pt_v = ctx.project_tangent(&v);

    // Δ²V
    let lap_v = laplacian_jets(&ctx, &amb, LapVariant::Pullback, &v)?;
    let lap2_v = jets_value(&laplacian_jets(&ctx, &amb, LapVariant::Pullback, &lap_v)?);

    // Δ(tr⟨V,Tφ⟩Tφ − |Tφ|²V)
    let inner: Vec<Jet<S>> = pt_v
        .iter()
        .zip(&v)
        .map(|(t, vv)| t.sub(&tphi_sq.mul(vv)))
        .collect();
    let lap_of_tangential_block =
        jets_value(&laplacian_jets(&ctx, &amb, LapVariant::Pullback, &inner)?);

    // ∇_i Δφ and ∇_i V (pullback connection)
    let grad_dphi: Vec<Vec<Jet<S>>> = (0..m)
        .map(|i| {
            amb.project(
                &ctx.chart,
                &dphi.iter().map(|c| c.derivative(i)).collect::<Vec<_>>(),
            )
        })
        .collect();
    let grad_v: Vec<Vec<Jet<S>>> = (0..m)
        .map(|i| {
            amb.project(
                &ctx.chart,
                &v.iter().map(|c| c.derivative(i)).collect::<Vec<_>>(),
            )
        })
        .collect();

    let g_inv_val = |i: usize, j: usize| ctx.g_inv[i][j].value();
    let e_val: Vec<Vec<S>> = ctx.e.iter().map(|ei| jets_value(ei)).collect();
    let v_val = jets_value(&v);
    let dphi_val = jets_value(&dphi);
    let pt_v_val = jets_value(&pt_v);
    let m_val = tphi_sq.value();

    // ⟨dΔφ, Tφ⟩ = g^{ij}⟨∇_i Δφ, E_j⟩
    let mut dphi_dot_t = S::zero();
    // ⟨dV, Tφ⟩
    let mut dv_dot_t = S::zero();
    // tr⟨V, dΔφ⟩Tφ and tr⟨Δφ, dV⟩Tφ
    let mut tr_v_ddphi = vec![S::zero(); nn];
    let mut tr_dphi_dv = vec![S::zero(); nn];
    for i in 0..m {
        let gdi = jets_value(&grad_dphi[i]);
        let gvi = jets_value(&grad_v[i]);
        for j in 0..m {
            let w = g_inv_val(i, j);
            dphi_dot_t += w * dot(&gdi, &e_val[j]);
            dv_dot_t += w * dot(&gvi, &e_val[j]);
            let c1 = w * dot(&v_val, &gdi);
            let c2 = w * dot(&dphi_val, &gvi);
            for (slot, ec) in tr_v_ddphi.iter_mut().zip(&e_val[j]) {
                *slot += c1 * *ec;
            }
            for (slot, ec) in tr_dphi_dv.iter_mut().zip(&e_val[j]) {
                *slot += c2 * *ec;
            }
        }
    }

    let dphi_sq = dot(&dphi_val, &dphi_val);
    let dphi_dot_v = dot(&dphi_val, &v_val);

    // −2⟨dΔφ,Tφ⟩V + |Δφ|²V
    let two = S::from_f64(2.0);
    let curvature_scalar_block: Vec<S> = v_val
        .iter()
        .map(|vc| (-two * dphi_dot_t + dphi_sq) * *vc)
        .collect();

    // tr⟨ΔV,Tφ⟩Tφ = P_T(ΔV), tr⟨Tφ, P_T V⟩Tφ = P_T(P_T V), −2|Tφ|²·P_T V
    let pt_lap_v = jets_value(&ctx.project_tangent(&lap_v));
    let pt_pt_v = jets_value(&ctx.project_tangent(&pt_v));
    let trace_blocks: Vec<S> = (0..nn)
        .map(|c| pt_lap_v[c] + pt_pt_v[c] - two * m_val * pt_v_val[c])
        .collect();

    // 2tr⟨V,dΔφ⟩Tφ + 2tr⟨Δφ,dV⟩Tφ − ⟨Δφ,V⟩Δφ − 2⟨dV,Tφ⟩Δφ
    let first_order_blocks: Vec<S> = (0..nn)
        .map(|c| {
            two * tr_v_ddphi[c] + two * tr_dphi_dv[c]
                - dphi_dot_v * dphi_val[c]
                - two * dv_dot_t * dphi_val[c]
        })
        .collect();

    // −|Tφ|²ΔV + |Tφ|⁴V
    let lap_v_val = jets_value(&lap_v);
    let tphi4 = m_val * m_val;

    // k(ΔV − |Tφ|²V + P_T V)
    let k_block: Vec<S> = (0..nn)
        .map(|c| k * (lap_v_val[c] - m_val * v_val[c] + pt_v_val[c]))
        .collect();

    let total: Vec<S> = (0..nn)
        .map(|c| {
            lap2_v[c]
                + lap_of_tangential_block[c]
                + curvature_scalar_block[c]
                + trace_blocks[c]
                + first_order_blocks[c]
                - m_val * lap_v_val[c]
                + tphi4 * v_val[c]
                + k_block[c]
        })
        .collect();

    Ok(IkTerms {
        lap2_v,
        lap_of_tangential_block,
        curvature_scalar_block,
        trace_blocks,
        first_order_blocks,
        k_block,
        total,
    })
}

/// `⟨I_k(V)(u), W(u)⟩`.
pub fn ik_pairing<S: Real>(
    spec: &ImmersionSpec,
    u: &[S],
    v: &dyn VectorField<S>,
    w: &dyn VectorField<S>,
    k: S,
    order: usize,
) -> Result<S> {
    let terms = ik_apply(spec, u, v, k, order)?;
    let ctx = GeoCtx::new(spec, u, 2)?;
    let w_val = jets_value(&w.eval(&ctx)?);
    Ok(dot(&terms.total, &w_val))
}

/// `⟨I_k(H)(u), H(u)⟩`; equals `−4m²|H|⁴` pointwise on the homogeneous
/// catalog entries certified properly biharmonic of index `k`.
pub fn instability_value<S: Real>(spec: &ImmersionSpec, u: &[S], k: S) -> Result<S> {
    let amb = Ambient::unit_sphere(spec.n + 1);
    let h_field = crate::operators::MeanCurvatureField { ambient: amb };
    ik_pairing(spec, u, &h_field, &h_field, k, 6)
}

/// Expected pointwise instability value `−4m²|H|⁴` from extrinsic data.
pub fn expected_instability<S: Real>(spec: &ImmersionSpec, u: &[S]) -> Result<S> {
    let amb = Ambient::unit_sphere(spec.n + 1);
    let ctx = GeoCtx::new(spec, u, 3)?;
    let ext = ctx.extrinsic(&amb)?;
    let h = jets_value(&ext.h);
    let h2 = dot(&h, &h);
    let mf = S::from_i64(spec.m as i64);
    Ok(-S::from_f64(4.0) * mf * mf * h2 * h2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a2_rat, clifford, hypersphere, sample};
    use crate::operators::{Bundle, TrigRecipeField};

    #[test]
    fn instability_identity_on_critical_hypersphere() {
        // ⟨I_k(H), H⟩ = −4m²|H|⁴ = −16/9 on hypersphere(5, 6/7) at k = 10/3.
        let spec = hypersphere(5, a2_rat(6, 7)).unwrap();
        let k = 10.0 / 3.0;
        let plan = sample(&spec, 4, 42).unwrap();
        for u in &plan.points {
            let v = instability_value::<f64>(&spec, u, k).unwrap();
            let expect = -16.0 / 9.0;
            assert!(
                (v - expect).abs() < 1e-5 * expect.abs(),
                "got {v}, want {expect}"
            );
        }
    }

    #[test]
    fn instability_identity_on_torus() {
        // clifford(1,3,1/2) at k = 0: −4·16·(1/4)² = −4.
        let spec = clifford(1, 3, a2_rat(1, 2)).unwrap();
        let plan = sample(&spec, 4, 42).unwrap();
        for u in &plan.points {
            let v = instability_value::<f64>(&spec, u, 0.0).unwrap();
            assert!((v + 4.0).abs() < 1e-5 * 4.0, "got {v}");
        }
    }

    #[test]
    fn instability_zero_on_harmonic_specs() {
        let spec = hypersphere(5, a2_rat(1, 1)).unwrap();
        let v = instability_value::<f64>(&spec, &spec.probe_point(), 1.0).unwrap();
        assert!(v.abs() < 1e-12);
        let spec = clifford(1, 3, a2_rat(1, 4)).unwrap();
        let v = instability_value::<f64>(&spec, &spec.probe_point(), 0.0).unwrap();
        assert!(v.abs() < 1e-9);
    }

    #[test]
    fn k_dependence_is_affine() {
        // I_k is affine in k: values at k = 0, 1, 2 must be collinear.
        let spec = hypersphere(4, a2_rat(2, 3)).unwrap();
        let u = spec.probe_point();
        let vals: Vec<f64> = [0.0, 1.0, 2.0]
            .iter()
            .map(|k| instability_value::<f64>(&spec, &u, *k).unwrap())
            .collect();
        let second_difference = vals[0] - 2.0 * vals[1] + vals[2];
        assert!(second_difference.abs() < 1e-9, "not affine: {vals:?}");
    }

    #[test]
    fn integrated_symmetry_of_ik() {
        // ∫⟨I_k(V), W⟩ = ∫⟨I_k(W), V⟩ for seeded fields at a critical pair
        // (hypersphere(3, 1/2) is biharmonic at k = 0).
        let spec = hypersphere(3, a2_rat(1, 2)).unwrap();
        let amb = Ambient::<f64>::unit_sphere(spec.n + 1);
        let v = TrigRecipeField {
            seed: 5,
            bundle: Bundle::AmbientTangent,
            ambient: amb.clone(),
        };
        let w = TrigRecipeField {
            seed: 9,
            bundle: Bundle::AmbientTangent,
            ambient: amb.clone(),
        };
        let k = 0.0;
        let lhs = crate::operators::integrate(&spec, 16, |u| {
            Ok(ik_pairing::<f64>(&spec, u, &v, &w, k, 6)?)
        })
        .unwrap();
        let rhs = crate::operators::integrate(&spec, 16, |u| {
            Ok(ik_pairing::<f64>(&spec, u, &w, &v, k, 6)?)
        })
        .unwrap();
        let scale = lhs.abs().max(rhs.abs()).max(1e-12);
        assert!(
            (lhs - rhs).abs() < 1e-5 * scale,
            "asymmetry: {lhs} vs {rhs}"
        );
    }
}

//! Pointwise identity suite: the second-order frame decompositions, the
//! Laplacian splitting across nested ambients, the Weitzenböck identity and
//! the constancy of the recentering map, all checked as residuals on sample
//! plans.
//!
//! The two frame decompositions hold pointwise for an arbitrary direction
//! field only when the squared direction is parallel at the evaluation
//! point; the suite therefore extends the seeded direction by first-order
//! parallel transport (see [`crate::operators::ParallelAtPointField`]) and
//! leaves the other fields arbitrary.

use crate::catalog::{torus_factors, Family, ImmersionSpec, SamplePlan};
use crate::error::Error;
use crate::exact::Surd;
use crate::geometry::{
    extrinsic_from_ctx, jets_dot, jets_value, surd_to_scalar, Ambient, GeoCtx,
};
use crate::jet::Jet;
use crate::linalg::{dot, norm, vec_sub};
use crate::operators::{
    laplacian_jets, scalar_laplacian_jets, LapVariant, ParallelAtPointField, ResidualReport,
    TrigRecipeField, VectorField,
};
use crate::scalar::Real;
use crate::Result;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

/// Which identity to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentityCase {
    /// Second-order decomposition of `∇_V∇_V U` for tangent `U`, `V`.
    TangentSplit,
    /// Second-order decomposition of `∇_V∇_V X` for normal `X`.
    NormalSplit,
    /// `tr A_{∇ᴺH}(·) = −((m−2)/2)·d|H|²` on pseudo-umbilic specs.
    PuTrace,
    /// `ΔH = ΔᴺH + tr B(·,A_H·) + (m/2)d|H|² + 2 tr A_{∇ᴺH}(·)`.
    LaplacianSplit,
    /// Pseudo-umbilic form `ΔH = ΔᴺH + m|H|²H − ((m−4)/2)d|H|²`.
    LaplacianSplitPu,
    /// `½Δ|H|² = ⟨ΔᴺH, H⟩ − |∇ᴺH|²`.
    Weitzenboeck,
    /// `ΔH = (Δˢ + m b²/a²)H_M + m(|H_M|² + b²/a²)H_s` across
    /// `M ⊂ S^{n−1}(a) ⊂ S^n`.
    HypersphereSplit,
    /// The product splitting of `m·ΔH` across the Clifford torus factors.
    TorusSplit,
    /// Constancy of `Ψ = p + H̃/(1+|H|²)` plus its two norm identities.
    PsiConstancy,
}

impl IdentityCase {
    pub const ALL: [IdentityCase; 9] = [
        IdentityCase::TangentSplit,
        IdentityCase::NormalSplit,
        IdentityCase::PuTrace,
        IdentityCase::LaplacianSplit,
        IdentityCase::LaplacianSplitPu,
        IdentityCase::Weitzenboeck,
        IdentityCase::HypersphereSplit,
        IdentityCase::TorusSplit,
        IdentityCase::PsiConstancy,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            IdentityCase::TangentSplit => "tangent_split",
            IdentityCase::NormalSplit => "normal_split",
            IdentityCase::PuTrace => "pu_trace",
            IdentityCase::LaplacianSplit => "laplacian_split",
            IdentityCase::LaplacianSplitPu => "laplacian_split_pu",
            IdentityCase::Weitzenboeck => "weitzenboeck",
            IdentityCase::HypersphereSplit => "hypersphere_split",
            IdentityCase::TorusSplit => "torus_split",
            IdentityCase::PsiConstancy => "psi_constancy",
        }
    }

    pub fn parse(s: &str) -> Result<IdentityCase> {
        IdentityCase::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Build(format!("unknown identity case {s:?}")))
    }

    pub fn default_tol(&self) -> f64 {
        match self {
            IdentityCase::PsiConstancy => 1e-10,
            _ => 1e-8,
        }
    }
}

struct DirDerivative<'c, 'a, S: Real> {
    ctx: &'c GeoCtx<'a, S>,
    amb: &'c Ambient<S>,
}

impl<'c, 'a, S: Real> DirDerivative<'c, 'a, S> {
    /// Coordinate components `V^i = ⟨V, F^i⟩` of a tangent field.
    fn components(&self, v: &[Jet<S>]) -> Vec<Jet<S>> {
        (0..self.ctx.m())
            .map(|i| jets_dot(v, &self.ctx.dual[i]))
            .collect()
    }

    /// Unprojected directional derivative `Σ_i V^i ∂_i W`.
    fn raw(&self, v_comps: &[Jet<S>], w: &[Jet<S>]) -> Vec<Jet<S>> {
        let mut out = vec![Jet::constant(&self.ctx.space, S::zero()); w.len()];
        for (i, vc) in v_comps.iter().enumerate() {
            for (o, wc) in out.iter_mut().zip(w) {
                *o = o.add(&vc.mul(&wc.derivative(i)));
            }
        }
        out
    }

    fn pullback(&self, v_comps: &[Jet<S>], w: &[Jet<S>]) -> Vec<Jet<S>> {
        self.amb.project(&self.ctx.chart, &self.raw(v_comps, w))
    }

    fn tangential(&self, v_comps: &[Jet<S>], w: &[Jet<S>]) -> Vec<Jet<S>> {
        self.ctx.project_tangent(&self.raw(v_comps, w))
    }

    fn normal(&self, v_comps: &[Jet<S>], w: &[Jet<S>]) -> Vec<Jet<S>> {
        self.ctx.project_normal(self.amb, &self.raw(v_comps, w))
    }
}

/// `B(V, W)` as a jet field from the second-fundamental-form jets.
fn b_of<S: Real>(
    ctx: &GeoCtx<'_, S>,
    b: &[Vec<Vec<Jet<S>>>],
    v_comps: &[Jet<S>],
    w_comps: &[Jet<S>],
) -> Vec<Jet<S>> {
    let nn = ctx.space_dim();
    let mut out = vec![Jet::constant(&ctx.space, S::zero()); nn];
    for (i, vc) in v_comps.iter().enumerate() {
        for (j, wc) in w_comps.iter().enumerate() {
            let weight = vc.mul(wc);
            for (o, bc) in out.iter_mut().zip(&b[i][j]) {
                *o = o.add(&weight.mul(bc));
            }
        }
    }
    out
}

/// Shape operator `A_X(V)` at values, for a normal `X` and tangent `V`.
fn shape_apply<S: Real>(
    ctx: &GeoCtx<'_, S>,
    b_vals: &[Vec<Vec<S>>],
    x: &[S],
    v_comps: &[S],
) -> Vec<S> {
    let m = ctx.m();
    let nn = ctx.space_dim();
    let mut out = vec![S::zero(); nn];
    for k in 0..m {
        let mut coeff = S::zero();
        for l in 0..m {
            for (j, vc) in v_comps.iter().enumerate() {
                coeff += ctx.g_inv[k][l].value() * dot(&b_vals[l][j], x) * *vc;
            }
        }
        for (o, ec) in out.iter_mut().zip(&ctx.e[k]) {
            *o += coeff * ec.value();
        }
    }
    out
}

fn values<S: Real>(v: &[Jet<S>]) -> Vec<S> {
    jets_value(v)
}

/// Residual of one identity case at one point (Ψ-constancy is handled at the
/// plan level instead).
fn case_residual_at_point<S: Real>(
    spec: &ImmersionSpec,
    amb: &Ambient<S>,
    case: IdentityCase,
    u: &[f64],
    seed: u64,
) -> Result<f64> {
    let us: Vec<S> = u.iter().map(|x| S::from_f64(*x)).collect();
    match case {
        IdentityCase::TangentSplit | IdentityCase::NormalSplit => {
            let ctx = GeoCtx::new(spec, &us, 4)?;
            let dd = DirDerivative { ctx: &ctx, amb };
            let ext = ctx.extrinsic(amb)?;
            let b_vals: Vec<Vec<Vec<S>>> = ext
                .b
                .iter()
                .map(|row| row.iter().map(|v| values(v)).collect())
                .collect();
            let v_field = ParallelAtPointField { seed };
            let v = v_field.eval(&ctx)?;
            let vc = dd.components(&v);
            let vc_vals: Vec<S> = vc.iter().map(|c| c.value()).collect();
            if case == IdentityCase::TangentSplit {
                let u_field = TrigRecipeField {
                    seed: seed ^ 0xabcdef,
                    bundle: crate::operators::Bundle::Tangent,
                    ambient: amb.clone(),
                };
                let uf = u_field.eval(&ctx)?;
                let uc = dd.components(&uf);
                // LHS: ∇_V ∇_V U
                let inner = dd.pullback(&vc, &uf);
                let lhs = values(&dd.pullback(&vc, &inner));
                // RHS: ∇ᵀ_V∇ᵀ_V U − A_{B(V,U)}(V) + 2B(V, ∇ᵀ_V U) + ∇ᴺ_U B(V,V)
                let tt = dd.tangential(&vc, &dd.tangential(&vc, &uf));
                let b_vu = values(&b_of(&ctx, &ext.b, &vc, &uc));
                let a_term = shape_apply(&ctx, &b_vals, &b_vu, &vc_vals);
                let nabla_t_u = dd.tangential(&vc, &uf);
                let ntu_comps = dd.components(&nabla_t_u);
                let b_v_ntu = values(&b_of(&ctx, &ext.b, &vc, &ntu_comps));
                let bvv_field = b_of(&ctx, &ext.b, &vc, &vc);
                let uc_vals: Vec<Jet<S>> = uc.clone();
                let dn_u_bvv = values(&dd.normal(&uc_vals, &bvv_field));
                let mut rhs = values(&tt);
                for c in 0..rhs.len() {
                    rhs[c] = rhs[c] - a_term[c]
                        + S::from_f64(2.0) * b_v_ntu[c]
                        + dn_u_bvv[c];
                }
                Ok(norm(&vec_sub(&lhs, &rhs)).to_f64())
            } else {
                let x_field = TrigRecipeField {
                    seed: seed ^ 0x13579b,
                    bundle: crate::operators::Bundle::Normal,
                    ambient: amb.clone(),
                };
                let x = x_field.eval(&ctx)?;
                let x_vals = values(&x);
                // LHS: ∇_V ∇_V X
                let inner = dd.pullback(&vc, &x);
                let lhs = values(&dd.pullback(&vc, &inner));
                // RHS: ∇ᴺ_V∇ᴺ_V X − B(V, A_X V) − g(∇ᴺB(V,V), X)↑ − 2A_{∇ᴺ_V X}(V)
                let nn_x = dd.normal(&vc, &dd.normal(&vc, &x));
                let a_x_v = shape_apply(&ctx, &b_vals, &x_vals, &vc_vals);
                let a_x_v_comps: Vec<S> = (0..ctx.m())
                    .map(|i| {
                        dot(
                            &a_x_v,
                            &ctx.dual[i].iter().map(|c| c.value()).collect::<Vec<S>>(),
                        )
                    })
                    .collect();
                let b_v_axv = {
                    let m = ctx.m();
                    let nn = ctx.space_dim();
                    let mut out = vec![S::zero(); nn];
                    for i in 0..m {
                        for j in 0..m {
                            let w = vc_vals[i] * a_x_v_comps[j];
                            for (o, bc) in out.iter_mut().zip(&b_vals[i][j]) {
                                *o += w * *bc;
                            }
                        }
                    }
                    out
                };
                // g-raised 1-form W ↦ ⟨∇ᴺ_W B(V,V), X⟩
                let bvv_field = b_of(&ctx, &ext.b, &vc, &vc);
                let m = ctx.m();
                let nn_dim = ctx.space_dim();
                let mut raised = vec![S::zero(); nn_dim];
                for w_idx in 0..m {
                    let d_bvv: Vec<Jet<S>> =
                        bvv_field.iter().map(|c| c.derivative(w_idx)).collect();
                    let pn = ctx.project_normal(amb, &d_bvv);
                    let pairing = dot(&values(&pn), &x_vals);
                    for i in 0..m {
                        let w = ctx.g_inv[i][w_idx].value() * pairing;
                        for (o, ec) in raised.iter_mut().zip(&ctx.e[i]) {
                            *o += w * ec.value();
                        }
                    }
                }
                let dn_v_x = values(&dd.normal(&vc, &x));
                let a_dnvx_v = shape_apply(&ctx, &b_vals, &dn_v_x, &vc_vals);
                let mut rhs = values(&nn_x);
                for c in 0..rhs.len() {
                    rhs[c] = rhs[c] - b_v_axv[c] - raised[c]
                        - S::from_f64(2.0) * a_dnvx_v[c];
                }
                Ok(norm(&vec_sub(&lhs, &rhs)).to_f64())
            }
        }
        IdentityCase::PuTrace => {
            let ctx = GeoCtx::new(spec, &us, 3)?;
            let ext = extrinsic_from_ctx(&ctx, amb)?;
            require_pu(ext.pu_defect.to_f64())?;
            let m = ctx.m();
            let nn = ctx.space_dim();
            // tr A_{∇ᴺH}(·) = g^{ij} A_{∇ᴺ_i H}(E_j)
            let mut tr_a = vec![S::zero(); nn];
            for i in 0..m {
                for j in 0..m {
                    for k in 0..m {
                        for l in 0..m {
                            let w = ctx.g_inv[i][j].value()
                                * ctx.g_inv[k][l].value()
                                * dot(&ext.b[l][j], &ext.nabla_n_h[i]);
                            for (o, ec) in tr_a.iter_mut().zip(&ctx.e[k]) {
                                *o += w * ec.value();
                            }
                        }
                    }
                }
            }
            // −((m−2)/2)·∇|H|²
            let mut grad = vec![S::zero(); nn];
            for i in 0..m {
                for j in 0..m {
                    let w = ctx.g_inv[i][j].value() * ext.d_h2[j];
                    for (o, ec) in grad.iter_mut().zip(&ctx.e[i]) {
                        *o += w * ec.value();
                    }
                }
            }
            let c = -S::from_i64((m as i64) - 2) / S::from_f64(2.0);
            let rhs: Vec<S> = grad.iter().map(|g| c * *g).collect();
            Ok(norm(&vec_sub(&tr_a, &rhs)).to_f64())
        }
        IdentityCase::LaplacianSplit => {
            let data = crate::operators::biharm_point_data(spec, amb, &us)?;
            // ΔH − ΔᴺH − trB(·,A_H·) − tangent block
            let diff: Vec<S> = (0..data.h.len())
                .map(|c| data.lap_h[c] - data.lap_n_h[c] - data.tr_b_ah[c] - data.tangent[c])
                .collect();
            Ok(norm(&diff).to_f64())
        }
        IdentityCase::LaplacianSplitPu => {
            let ctx = GeoCtx::new(spec, &us, 4)?;
            let ext = extrinsic_from_ctx(&ctx, amb)?;
            require_pu(ext.pu_defect.to_f64())?;
            let ext_jets = ctx.extrinsic(amb)?;
            let lap_h = values(&laplacian_jets(&ctx, amb, LapVariant::Pullback, &ext_jets.h)?);
            let lap_n_h = values(&laplacian_jets(&ctx, amb, LapVariant::Normal, &ext_jets.h)?);
            let m = ctx.m();
            let nn = ctx.space_dim();
            let mut grad = vec![S::zero(); nn];
            for i in 0..m {
                for j in 0..m {
                    let w = ctx.g_inv[i][j].value() * ext.d_h2[j];
                    for (o, ec) in grad.iter_mut().zip(&ctx.e[i]) {
                        *o += w * ec.value();
                    }
                }
            }
            let mf = S::from_i64(m as i64);
            let cg = (mf - S::from_f64(4.0)) / S::from_f64(2.0);
            let diff: Vec<S> = (0..nn)
                .map(|c| {
                    lap_h[c]
                        - (lap_n_h[c] + mf * ext.h_norm2 * ext.h[c] - cg * grad[c])
                })
                .collect();
            Ok(norm(&diff).to_f64())
        }
        IdentityCase::Weitzenboeck => {
            let ctx = GeoCtx::new(spec, &us, 4)?;
            let ext_jets = ctx.extrinsic(amb)?;
            let h2_jet = jets_dot(&ext_jets.h, &ext_jets.h);
            let lhs = S::from_f64(0.5) * scalar_laplacian_jets(&ctx, &h2_jet).value();
            let lap_n_h = values(&laplacian_jets(&ctx, amb, LapVariant::Normal, &ext_jets.h)?);
            let h = values(&ext_jets.h);
            let mut nabla_sq = S::zero();
            let m = ctx.m();
            for i in 0..m {
                for j in 0..m {
                    let di = values(
                        &ctx.project_normal(
                            amb,
                            &ext_jets.h.iter().map(|c| c.derivative(i)).collect::<Vec<_>>(),
                        ),
                    );
                    let dj = values(
                        &ctx.project_normal(
                            amb,
                            &ext_jets.h.iter().map(|c| c.derivative(j)).collect::<Vec<_>>(),
                        ),
                    );
                    nabla_sq += ctx.g_inv[i][j].value() * dot(&di, &dj);
                }
            }
            // ½Δ|H|² = ⟨ΔᴺH, H⟩ − |∇ᴺH|²  (positive Laplacian brings the
            // sign to the right-hand side as written)
            let rhs = dot(&lap_n_h, &h) - nabla_sq;
            Ok((lhs - rhs).abs().to_f64())
        }
        IdentityCase::HypersphereSplit => {
            if !matches!(
                spec.family,
                Family::Hypersphere { .. } | Family::EquatorialInHypersphere { .. }
            ) {
                return Err(Error::Precondition(
                    "hypersphere splitting needs a (sub)hypersphere spec".into(),
                ));
            }
            let a2 = spec.a2().expect("family has radius");
            let b2 = &Surd::from_int(1) - a2;
            let ratio = surd_to_scalar::<S>(&b2.try_div(a2)?);
            let ctx = GeoCtx::new(spec, &us, 4)?;
            let outer = Ambient::unit_sphere(spec.n + 1);
            let inner = Ambient::<S>::sub_sphere_of(spec)?;
            let h_jets = ctx.extrinsic(&outer)?.h;
            let hm_jets = ctx.extrinsic(&inner)?.h;
            let lap_h = values(&laplacian_jets(&ctx, &outer, LapVariant::Pullback, &h_jets)?);
            let lap_s_hm =
                values(&laplacian_jets(&ctx, &inner, LapVariant::Pullback, &hm_jets)?);
            let h = values(&h_jets);
            let hm = values(&hm_jets);
            let hs = vec_sub(&h, &hm);
            let hm2 = dot(&hm, &hm);
            let mf = S::from_i64(ctx.m() as i64);
            let rhs: Vec<S> = (0..h.len())
                .map(|c| {
                    lap_s_hm[c] + mf * ratio * hm[c] + mf * (hm2 + ratio) * hs[c]
                })
                .collect();
            Ok(norm(&vec_sub(&lap_h, &rhs)).to_f64())
        }
        IdentityCase::TorusSplit => torus_split_residual(spec, &us),
        IdentityCase::PsiConstancy => Err(Error::Precondition(
            "psi constancy is evaluated on the whole plan".into(),
        )),
    }
}

fn require_pu(defect: f64) -> Result<()> {
    if defect > 1e-6 {
        return Err(Error::Precondition(format!(
            "pseudo-umbilic defect {defect:e} exceeds 1e-6"
        )));
    }
    Ok(())
}

/// The full product splitting of `m·ΔH` on a product-in-torus spec.
fn torus_split_residual<S: Real>(spec: &ImmersionSpec, us: &[S]) -> Result<f64> {
    let Family::ProductInTorus { m1, n1, m2, n2, a2 } = &spec.family else {
        return Err(Error::Precondition(
            "torus splitting needs a product-in-torus spec".into(),
        ));
    };
    let (m1, n1v, m2, n2v) = (*m1, *n1, *m2, *n2);
    let _ = (n1v, n2v);
    let b2 = &Surd::from_int(1) - a2;
    let z = b2.try_div(a2)?; // b²/a²
    let z_inv = a2.try_div(&b2)?;
    let ba: S = surd_to_scalar::<S>(&z).sqrt(); // b/a
    let ab: S = surd_to_scalar::<S>(&z_inv).sqrt();
    let zb: S = surd_to_scalar(&z);
    let zb_inv: S = surd_to_scalar(&z_inv);
    let m = spec.m;
    let nn = spec.n + 1;
    let mf = S::from_i64(m as i64);
    let m1f = S::from_i64(m1 as i64);
    let m2f = S::from_i64(m2 as i64);

    // Left side: m·ΔH on the product.
    let ctx = GeoCtx::new(spec, us, 4)?;
    let outer = Ambient::unit_sphere(nn);
    let h_jets = ctx.extrinsic(&outer)?.h;
    let lap_h = jets_value(&laplacian_jets(&ctx, &outer, LapVariant::Pullback, &h_jets)?);
    let lhs: Vec<S> = lap_h.iter().map(|x| mf * *x).collect();

    // η_t = (−(b/a)·x, (a/b)·y) from the chart point.
    let p = jets_value(&ctx.chart);
    let mut eta = vec![S::zero(); nn];
    for i in 0..nn {
        eta[i] = if i <= n1v { -ba * p[i] } else { ab * p[i] };
    }

    // Factor data: H₁, Δ₁ˢH₁ in block one; H₂, Δ₂ˢH₂ in block two.
    let (f1, f2) = torus_factors(spec)?;
    let u1: Vec<S> = us[..m1].to_vec();
    let u2: Vec<S> = us[m1..].to_vec();
    let amb1 = Ambient::Sphere {
        center: vec![S::zero(); n1v + 1],
        radius: surd_to_scalar::<S>(a2).sqrt(),
    };
    let amb2 = Ambient::Sphere {
        center: vec![S::zero(); n2v + 1],
        radius: surd_to_scalar::<S>(&b2).sqrt(),
    };
    let ctx1 = GeoCtx::new(&f1, &u1, 4)?;
    let h1_jets = ctx1.extrinsic(&amb1)?.h;
    let h1_small = jets_value(&h1_jets);
    let lap1_small = jets_value(&laplacian_jets(&ctx1, &amb1, LapVariant::Pullback, &h1_jets)?);
    let ctx2 = GeoCtx::new(&f2, &u2, 4)?;
    let h2_jets = ctx2.extrinsic(&amb2)?.h;
    let h2_small = jets_value(&h2_jets);
    let lap2_small = jets_value(&laplacian_jets(&ctx2, &amb2, LapVariant::Pullback, &h2_jets)?);
    let pad = |small: &[S], offset: usize| -> Vec<S> {
        let mut out = vec![S::zero(); nn];
        for (i, v) in small.iter().enumerate() {
            out[offset + i] = *v;
        }
        out
    };
    let h1 = pad(&h1_small, 0);
    let lap1 = pad(&lap1_small, 0);
    let h2v = pad(&h2_small, n1v + 1);
    let lap2 = pad(&lap2_small, n1v + 1);
    let h1_sq = dot(&h1, &h1);
    let h2_sq = dot(&h2v, &h2v);

    // scalar factor on η_t
    let s_eta = (ba * m1f - ab * m2f) * (zb * m1f + zb_inv * m2f) + ba * m1f * h1_sq
        - ab * m2f * h2_sq;
    let mut rhs = vec![S::zero(); nn];
    for c in 0..nn {
        rhs[c] = m1f * (lap1[c] + (zb * m1f - m2f) * h1[c])
            + m2f * (lap2[c] + (zb_inv * m2f - m1f) * h2v[c])
            + s_eta * eta[c];
    }
    Ok(norm(&vec_sub(&lhs, &rhs)).to_f64())
}

/// Ψ-constancy over a plan: max pairwise spread of `Ψ = p + H̃/(1+|H|²)`
/// together with the pointwise norm identities `|p−Ψ|² = 1/(1+|H|²)` and
/// `|Ψ| = |H|/√(1+|H|²)`.
fn psi_constancy_residuals<S: Real>(
    spec: &ImmersionSpec,
    plan: &SamplePlan,
) -> Result<Vec<f64>> {
    let amb = Ambient::unit_sphere(spec.n + 1);
    let mut psis: Vec<Vec<f64>> = Vec::with_capacity(plan.points.len());
    let mut pointwise = Vec::with_capacity(plan.points.len());
    for u in &plan.points {
        let us: Vec<S> = u.iter().map(|x| S::from_f64(*x)).collect();
        let ctx = GeoCtx::new(spec, &us, 3)?;
        let ext = extrinsic_from_ctx(&ctx, &amb)?;
        require_pu(ext.pu_defect.to_f64())?;
        for row in &ext.nabla_n_h {
            if norm(row).to_f64() > 1e-6 {
                return Err(Error::Precondition(
                    "mean curvature is not parallel".into(),
                ));
            }
        }
        let p = jets_value(&ctx.chart);
        let denom = S::one() + ext.h_norm2;
        let inv = S::one() / denom;
        let psi: Vec<S> = (0..p.len())
            .map(|c| p[c] + inv * (ext.h[c] - p[c]))
            .collect();
        let pm = vec_sub(&p, &psi);
        let e1 = (dot(&pm, &pm) - inv).abs().to_f64();
        let e2 = (norm(&psi) - (ext.h_norm2.sqrt() / denom.sqrt()))
            .abs()
            .to_f64();
        pointwise.push(e1.max(e2));
        psis.push(psi.iter().map(|x| x.to_f64()).collect());
    }
    let mut spread = 0.0f64;
    for i in 0..psis.len() {
        for j in (i + 1)..psis.len() {
            let d: Vec<f64> = psis[i]
                .iter()
                .zip(&psis[j])
                .map(|(a, b)| a - b)
                .collect();
            spread = spread.max(norm(&d));
        }
    }
    Ok(pointwise
        .into_iter()
        .map(|e| e.max(spread))
        .collect())
}

/// Runs one identity case over a sample plan and aggregates the residuals.
pub fn identity_suite<S: Real>(
    spec: &ImmersionSpec,
    amb: &Ambient<S>,
    plan: &SamplePlan,
    case: IdentityCase,
    tol: f64,
) -> Result<ResidualReport> {
    let per_point = if case == IdentityCase::PsiConstancy {
        psi_constancy_residuals::<S>(spec, plan)?
    } else {
        let mut out = Vec::with_capacity(plan.points.len());
        for (idx, u) in plan.points.iter().enumerate() {
            let seed = plan
                .seed
                .wrapping_mul(0x5851f42d4c957f2d)
                .wrapping_add(idx as u64);
            out.push(case_residual_at_point::<S>(spec, amb, case, u, seed)?);
        }
        out
    };
    Ok(ResidualReport::from_norms(
        case.name(),
        spec,
        amb.describe(),
        None,
        per_point,
        tol,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{
        a2_rat, clifford, equatorial_in_hypersphere, hypersphere, product_in_torus, sample,
    };

    fn run(spec: &ImmersionSpec, case: IdentityCase, points: usize) -> ResidualReport {
        let amb = Ambient::<f64>::unit_sphere(spec.n + 1);
        let plan = sample(spec, points, 42).unwrap();
        identity_suite(spec, &amb, &plan, case, case.default_tol()).unwrap()
    }

    #[test]
    fn tangent_split_on_catalog_specs() {
        for spec in [
            hypersphere(4, a2_rat(1, 2)).unwrap(),
            clifford(1, 2, a2_rat(1, 3)).unwrap(),
        ] {
            let rep = run(&spec, IdentityCase::TangentSplit, 4);
            assert!(rep.pass, "{}: max {:e}", spec.name, rep.max);
        }
    }

    #[test]
    fn normal_split_on_catalog_specs() {
        for spec in [
            hypersphere(4, a2_rat(1, 2)).unwrap(),
            clifford(2, 2, a2_rat(2, 5)).unwrap(),
        ] {
            let rep = run(&spec, IdentityCase::NormalSplit, 4);
            assert!(rep.pass, "{}: max {:e}", spec.name, rep.max);
        }
    }

    #[test]
    fn laplacian_splits() {
        for spec in [
            hypersphere(5, a2_rat(6, 7)).unwrap(),
            clifford(1, 3, a2_rat(1, 2)).unwrap(),
        ] {
            let rep = run(&spec, IdentityCase::LaplacianSplit, 4);
            assert!(rep.pass, "{}: max {:e}", spec.name, rep.max);
        }
        // pseudo-umbilic variant on a hypersphere
        let spec = hypersphere(6, a2_rat(1, 3)).unwrap();
        let rep = run(&spec, IdentityCase::LaplacianSplitPu, 4);
        assert!(rep.pass, "pu split max {:e}", rep.max);
        // …but rejected on a non-pseudo-umbilic torus
        let torus = clifford(1, 3, a2_rat(1, 2)).unwrap();
        let amb = Ambient::<f64>::unit_sphere(torus.n + 1);
        let plan = sample(&torus, 2, 42).unwrap();
        assert!(identity_suite(
            &torus,
            &amb,
            &plan,
            IdentityCase::LaplacianSplitPu,
            1e-8
        )
        .is_err());
    }

    #[test]
    fn pu_trace_and_weitzenboeck() {
        let spec = hypersphere(5, a2_rat(2, 3)).unwrap();
        let rep = run(&spec, IdentityCase::PuTrace, 3);
        assert!(rep.pass, "max {:e}", rep.max);
        for spec in [
            hypersphere(5, a2_rat(2, 3)).unwrap(),
            clifford(2, 3, a2_rat(1, 3)).unwrap(),
        ] {
            let rep = run(&spec, IdentityCase::Weitzenboeck, 3);
            assert!(rep.pass, "{}: max {:e}", spec.name, rep.max);
        }
    }

    #[test]
    fn hypersphere_split_identity() {
        // equatorial S²(a) ⊂ S³(a) ⊂ S⁴
        let spec = equatorial_in_hypersphere(2, 4, a2_rat(2, 3)).unwrap();
        let rep = run(&spec, IdentityCase::HypersphereSplit, 4);
        assert!(rep.pass, "max {:e}", rep.max);
        // and on a plain hypersphere (H_M ≡ 0 inside its own sub-sphere)
        let spec = hypersphere(5, a2_rat(1, 2)).unwrap();
        let rep = run(&spec, IdentityCase::HypersphereSplit, 3);
        assert!(rep.pass, "max {:e}", rep.max);
    }

    #[test]
    fn torus_split_identity() {
        let spec = product_in_torus(1, 2, 1, 2, a2_rat(1, 3)).unwrap();
        let rep = run(&spec, IdentityCase::TorusSplit, 4);
        assert!(rep.pass, "max {:e}", rep.max);
        let spec = product_in_torus(1, 2, 2, 3, a2_rat(2, 5)).unwrap();
        let rep = run(&spec, IdentityCase::TorusSplit, 3);
        assert!(rep.pass, "max {:e}", rep.max);
    }

    #[test]
    fn psi_constancy_on_hyperspheres() {
        // |p−Ψ| = a on the critical hypersphere since 1/(1+|H|²) = a².
        let spec = hypersphere(5, a2_rat(6, 7)).unwrap();
        let rep = run(&spec, IdentityCase::PsiConstancy, 8);
        assert!(rep.pass, "max {:e}", rep.max);
        let spec = hypersphere(6, a2_rat(1, 3)).unwrap();
        let rep = run(&spec, IdentityCase::PsiConstancy, 8);
        assert!(rep.pass, "max {:e}", rep.max);
        // rejected on the non-pseudo-umbilic torus
        let torus = clifford(1, 3, a2_rat(1, 2)).unwrap();
        let amb = Ambient::<f64>::unit_sphere(torus.n + 1);
        let plan = sample(&torus, 3, 42).unwrap();
        assert!(
            identity_suite(&torus, &amb, &plan, IdentityCase::PsiConstancy, 1e-10).is_err()
        );
    }

    #[test]
    fn case_names_round_trip() {
        for case in IdentityCase::ALL {
            assert_eq!(IdentityCase::parse(case.name()).unwrap(), case);
        }
        assert!(IdentityCase::parse("nonsense").is_err());
    }
}

//! Pointwise extrinsic geometry of a chart relative to a chosen ambient,
//! computed entirely in jet arithmetic.
//!
//! Every bundle-valued object is an ambient `R^{n+1}` vector plus projectors,
//! never an abstract normal frame: covariant derivatives and Laplacians then
//! follow one uniform pattern, differentiate the ambient representative and
//! project. The ambient is a parameter (unit sphere, sub-sphere, affine
//! sphere, Euclidean space) so the same code produces the mean curvature of
//! a submanifold relative to each of the nested ambients the splitting
//! identities compare.

use crate::catalog::ImmersionSpec;
use crate::error::Error;
use crate::exact::Surd;
use crate::jet::{Jet, JetSpace};
use crate::linalg::{dot, Mat};
use crate::scalar::Real;
use crate::Result;
use alloc::format;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Numeric value of an exact surd at working precision.
pub fn surd_to_scalar<S: Real>(s: &Surd) -> S {
    let p = S::from_rational(s.rational_part());
    let q = S::from_rational(s.surd_coeff());
    let d = S::from_rational(&s.radicand());
    p + q * d.sqrt()
}

/// The space a chart is immersed in, as seen by the pullback connection.
#[derive(Clone, Debug)]
pub enum Ambient<S> {
    /// Flat `R^{n+1}` with its trivial connection.
    Euclidean,
    /// Round sphere `{|w − center| = radius}` of full dimension `N−1`.
    Sphere { center: Vec<S>, radius: S },
    /// Sphere `{|w_block| = radius}` inside the coordinate block
    /// `start..start+len`, all other coordinates frozen to their chart
    /// values. This is the sub-sphere `S^{n−1}(a)` (block = first `n`
    /// coordinates) and the Clifford factor spheres.
    BlockSphere {
        start: usize,
        len: usize,
        radius: S,
    },
}

impl<S: Real> Ambient<S> {
    pub fn unit_sphere(space_dim: usize) -> Ambient<S> {
        Ambient::Sphere {
            center: vec![S::zero(); space_dim],
            radius: S::one(),
        }
    }

    pub fn euclidean() -> Ambient<S> {
        Ambient::Euclidean
    }

    /// The hypersphere `S^{n−1}(a)` through the spec's chart, as an ambient:
    /// block sphere over the first `n` coordinates with radius `a`.
    pub fn sub_sphere_of(spec: &ImmersionSpec) -> Result<Ambient<S>> {
        let a2 = spec.a2().ok_or_else(|| {
            Error::Precondition("spec has no radius parameter".into())
        })?;
        Ok(Ambient::BlockSphere {
            start: 0,
            len: spec.n,
            radius: surd_to_scalar::<S>(a2).sqrt(),
        })
    }

    pub fn affine_sphere(center: Vec<S>, radius: S) -> Ambient<S> {
        Ambient::Sphere { center, radius }
    }

    /// Dimension of the ambient manifold sitting inside `R^{space_dim}`.
    pub fn manifold_dim(&self, space_dim: usize) -> usize {
        match self {
            Ambient::Euclidean => space_dim,
            Ambient::Sphere { .. } => space_dim - 1,
            Ambient::BlockSphere { len, .. } => len - 1,
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Ambient::Euclidean => "euclidean".into(),
            Ambient::Sphere { center, radius } => {
                let off = center.iter().fold(S::zero(), |acc, c| acc + *c * *c);
                if off == S::zero() && *radius == S::one() {
                    format!("S^{}", center.len() - 1)
                } else {
                    format!("sphere(r={:.6})", radius.to_f64())
                }
            }
            Ambient::BlockSphere { start, len, radius } => {
                format!(
                    "subsphere(block={}..{},r={:.6})",
                    start,
                    start + len,
                    radius.to_f64()
                )
            }
        }
    }

    /// Projects an ambient-space vector of jets onto the ambient tangent
    /// space along the chart.
    pub fn project(&self, chart: &[Jet<S>], w: &[Jet<S>]) -> Vec<Jet<S>> {
        match self {
            Ambient::Euclidean => w.to_vec(),
            Ambient::Sphere { center, radius } => {
                let inv_r = S::one() / *radius;
                let nu: Vec<Jet<S>> = chart
                    .iter()
                    .zip(center)
                    .map(|(x, c)| {
                        x.sub(&Jet::constant(x.space(), *c)).scale(inv_r)
                    })
                    .collect();
                let mut proj = jets_dot(w, &nu);
                proj = proj.neg();
                w.iter()
                    .zip(&nu)
                    .map(|(wi, ni)| wi.add(&proj.mul(ni)))
                    .collect()
            }
            Ambient::BlockSphere { start, len, radius } => {
                let inv_r = S::one() / *radius;
                let space = chart[0].space();
                let zero = Jet::constant(space, S::zero());
                let mut out: Vec<Jet<S>> = vec![zero; w.len()];
                let rng = *start..(*start + *len);
                let nu: Vec<Jet<S>> = rng
                    .clone()
                    .map(|i| chart[i].scale(inv_r))
                    .collect();
                let wb: Vec<Jet<S>> = rng.clone().map(|i| w[i].clone()).collect();
                let proj = jets_dot(&wb, &nu).neg();
                for (k, i) in rng.enumerate() {
                    out[i] = wb[k].add(&proj.mul(&nu[k]));
                }
                out
            }
        }
    }
}

pub fn jets_dot<S: Real>(a: &[Jet<S>], b: &[Jet<S>]) -> Jet<S> {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = a[0].mul(&b[0]);
    for (x, y) in a.iter().zip(b).skip(1) {
        acc = acc.add(&x.mul(y));
    }
    acc
}

pub fn jets_value<S: Real>(v: &[Jet<S>]) -> Vec<S> {
    v.iter().map(|j| j.value()).collect()
}

fn invert_jet_matrix<S: Real>(a: &[Vec<Jet<S>>]) -> Result<Vec<Vec<Jet<S>>>> {
    let n = a.len();
    let space = a[0][0].space().clone();
    let valid = a
        .iter()
        .flat_map(|row| row.iter().map(|j| j.valid_order()))
        .min()
        .unwrap();
    let mut work: Vec<Vec<Jet<S>>> = a
        .iter()
        .map(|row| row.iter().map(|j| j.truncated(valid)).collect())
        .collect();
    let mut inv: Vec<Vec<Jet<S>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    Jet::constant(&space, if i == j { S::one() } else { S::zero() })
                        .truncated(valid)
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let mut pivot = col;
        let mut best = work[col][col].value().abs();
        for r in col + 1..n {
            let mag = work[r][col].value().abs();
            if mag > best {
                best = mag;
                pivot = r;
            }
        }
        if best == S::zero() {
            return Err(Error::SingularMetric { cond: f64::INFINITY });
        }
        work.swap(col, pivot);
        inv.swap(col, pivot);
        let piv = work[col][col].clone();
        for r in 0..n {
            if r == col {
                continue;
            }
            let factor = work[r][col].div(&piv)?;
            for j in 0..n {
                let w = work[col][j].mul(&factor);
                work[r][j] = work[r][j].sub(&w);
                let v = inv[col][j].mul(&factor);
                inv[r][j] = inv[r][j].sub(&v);
            }
        }
    }
    for col in 0..n {
        let piv = work[col][col].clone();
        for j in 0..n {
            inv[col][j] = inv[col][j].div(&piv)?;
        }
    }
    Ok(inv)
}

/// Chart jets and intrinsic data at one point, shared by every operator.
pub struct GeoCtx<'a, S: Real> {
    pub spec: &'a ImmersionSpec,
    pub u: Vec<S>,
    pub space: Rc<JetSpace>,
    /// Chart components as jets at full order ω.
    pub chart: Vec<Jet<S>>,
    /// Tangent vectors `E_i = ∂_i chart`, order ω−1.
    pub e: Vec<Vec<Jet<S>>>,
    /// Induced metric, order ω−1.
    pub g: Vec<Vec<Jet<S>>>,
    /// Inverse metric, order ω−2.
    pub g_inv: Vec<Vec<Jet<S>>>,
    /// Christoffel symbols `Γ^k_{ij}` indexed `[k][i][j]`, order ω−2.
    pub gamma: Vec<Vec<Vec<Jet<S>>>>,
    /// Dual frame `F^j = Σ_i g^{ij} E_i`, order ω−2.
    pub dual: Vec<Vec<Jet<S>>>,
    /// Condition number of the metric value.
    pub metric_cond: f64,
}

/// Pointwise extrinsic payload relative to one ambient, still jet-valued.
pub struct ExtrinsicJets<S: Real> {
    /// `B_ij`, ambient vectors, `[i][j]` symmetric; order ω−2.
    pub b: Vec<Vec<Vec<Jet<S>>>>,
    /// Mean curvature vector `H = (1/m) g^{ij} B_ij`; order ω−2.
    pub h: Vec<Jet<S>>,
}

impl<'a, S: Real> GeoCtx<'a, S> {
    pub fn new(spec: &'a ImmersionSpec, u: &[S], order: usize) -> Result<GeoCtx<'a, S>> {
        if order < 2 {
            return Err(Error::Order {
                needed: 2,
                available: order,
            });
        }
        if u.len() != spec.m {
            return Err(Error::Dimension {
                expected: spec.m,
                got: u.len(),
            });
        }
        let space = JetSpace::new(spec.m, order);
        let chart = spec.chart_jets(&space, u)?;
        let m = spec.m;
        let e: Vec<Vec<Jet<S>>> = (0..m)
            .map(|i| chart.iter().map(|c| c.derivative(i)).collect())
            .collect();
        let mut g: Vec<Vec<Jet<S>>> = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..m {
                if j < i {
                    let cloned = g[j][i].clone();
                    g[i].push(cloned);
                } else {
                    g[i].push(jets_dot(&e[i], &e[j]));
                }
            }
        }
        // Condition check on the metric values.
        let mut g_val = Mat::<S>::zeros(m, m);
        for i in 0..m {
            for j in 0..m {
                g_val[(i, j)] = g[i][j].value();
            }
        }
        let metric_cond = g_val.sym_condition();
        if !(metric_cond < 1e10) {
            return Err(Error::SingularMetric { cond: metric_cond });
        }
        let g_low: Vec<Vec<Jet<S>>> = g
            .iter()
            .map(|row| row.iter().map(|j| j.truncated(order - 2)).collect())
            .collect();
        let g_inv = invert_jet_matrix(&g_low)?;
        // ∂_k g_ij, order ω−2
        let dg: Vec<Vec<Vec<Jet<S>>>> = (0..m)
            .map(|k| {
                (0..m)
                    .map(|i| (0..m).map(|j| g[i][j].derivative(k)).collect())
                    .collect()
            })
            .collect();
        let half = S::from_f64(0.5);
        let mut gamma: Vec<Vec<Vec<Jet<S>>>> = Vec::with_capacity(m);
        for k in 0..m {
            let mut per_i = Vec::with_capacity(m);
            for i in 0..m {
                let mut per_j = Vec::with_capacity(m);
                for j in 0..m {
                    let mut acc: Option<Jet<S>> = None;
                    for l in 0..m {
                        let sum = dg[i][l][j].add(&dg[j][l][i]).sub(&dg[l][i][j]);
                        let term = g_inv[k][l].mul(&sum);
                        acc = Some(match acc {
                            None => term,
                            Some(prev) => prev.add(&term),
                        });
                    }
                    per_j.push(acc.unwrap().scale(half));
                }
                per_i.push(per_j);
            }
            gamma.push(per_i);
        }
        let dual: Vec<Vec<Jet<S>>> = (0..m)
            .map(|j| {
                let mut acc: Option<Vec<Jet<S>>> = None;
                for i in 0..m {
                    let scaled: Vec<Jet<S>> =
                        e[i].iter().map(|c| c.mul(&g_inv[i][j])).collect();
                    acc = Some(match acc {
                        None => scaled,
                        Some(prev) => prev
                            .iter()
                            .zip(&scaled)
                            .map(|(a, b)| a.add(b))
                            .collect(),
                    });
                }
                acc.unwrap()
            })
            .collect();
        Ok(GeoCtx {
            spec,
            u: u.to_vec(),
            space,
            chart,
            e,
            g,
            g_inv,
            gamma,
            dual,
            metric_cond,
        })
    }

    pub fn m(&self) -> usize {
        self.spec.m
    }

    /// Ambient-space dimension `n+1`.
    pub fn space_dim(&self) -> usize {
        self.chart.len()
    }

    pub fn order(&self) -> usize {
        self.space.order()
    }

    /// Tangential projection `P_T w = Σ_j ⟨w, E_j⟩ F^j`.
    pub fn project_tangent(&self, w: &[Jet<S>]) -> Vec<Jet<S>> {
        let m = self.m();
        let mut out: Vec<Jet<S>> = vec![Jet::constant(&self.space, S::zero()); w.len()];
        for j in 0..m {
            let coeff = jets_dot(w, &self.e[j]);
            for (o, f) in out.iter_mut().zip(&self.dual[j]) {
                *o = o.add(&coeff.mul(f));
            }
        }
        out
    }

    /// Normal projection relative to `amb`: `P_N = P_amb − P_T`.
    pub fn project_normal(&self, amb: &Ambient<S>, w: &[Jet<S>]) -> Vec<Jet<S>> {
        let pa = amb.project(&self.chart, w);
        let pt = self.project_tangent(w);
        pa.iter().zip(&pt).map(|(a, t)| a.sub(t)).collect()
    }

    /// Second fundamental form and mean curvature relative to `amb`.
    pub fn extrinsic(&self, amb: &Ambient<S>) -> Result<ExtrinsicJets<S>> {
        let m = self.m();
        let nn = self.space_dim();
        let mut b: Vec<Vec<Vec<Jet<S>>>> = vec![vec![Vec::new(); m]; m];
        for i in 0..m {
            for j in i..m {
                // ∂_i E_j − Γ^k_{ij} E_k, then the normal projection.
                let mut w: Vec<Jet<S>> = self.e[j].iter().map(|c| c.derivative(i)).collect();
                for k in 0..m {
                    let gam = &self.gamma[k][i][j];
                    for (slot, ek) in w.iter_mut().zip(&self.e[k]) {
                        *slot = slot.sub(&gam.mul(ek));
                    }
                }
                let bij = self.project_normal(amb, &w);
                b[i][j] = bij.clone();
                if j != i {
                    b[j][i] = bij;
                }
            }
        }
        let inv_m = S::one() / S::from_i64(m as i64);
        let mut h: Vec<Jet<S>> = vec![Jet::constant(&self.space, S::zero()); nn];
        for i in 0..m {
            for j in 0..m {
                let w = &self.g_inv[i][j];
                for (slot, bc) in h.iter_mut().zip(&b[i][j]) {
                    *slot = slot.add(&w.mul(bc));
                }
            }
        }
        let h = h.into_iter().map(|c| c.scale(inv_m)).collect();
        Ok(ExtrinsicJets { b, h })
    }
}

/// First-order frame payload at a point (values only).
pub struct FrameData<S> {
    pub point: Vec<S>,
    pub e: Vec<Vec<S>>,
    pub g: Mat<S>,
    pub g_inv: Mat<S>,
    /// `gamma[k][(i,j)] = Γ^k_{ij}`.
    pub gamma: Vec<Mat<S>>,
    pub p_amb: Mat<S>,
    pub p_n: Mat<S>,
    pub metric_cond: f64,
}

/// Second-order extrinsic payload at a point (values, plus the first
/// derivatives of `H` that the tangent residuals need).
pub struct ExtrinsicData<S> {
    pub b: Vec<Vec<Vec<S>>>,
    pub h: Vec<S>,
    pub h_norm2: S,
    /// Shape operator of `H` in the coordinate frame, `(A_H)^k_j`.
    pub a_h: Mat<S>,
    /// `∇ᴺ_i H` as ambient vectors.
    pub nabla_n_h: Vec<Vec<S>>,
    /// Components `∂_i |H|²`.
    pub d_h2: Vec<S>,
    /// Operator norm of `A_H − |H|²·Id` in a g-orthonormal frame.
    pub pu_defect: S,
    /// Unit normal within the ambient, when the normal bundle is a line.
    pub eta: Option<Vec<S>>,
}

/// Induced intrinsic curvature at a point.
pub struct CurvatureData<S> {
    /// `R^l_{ijk}` with `R(∂_i, ∂_j)∂_k = R^l_{ijk} ∂_l`, indexed `[l][i][j][k]`.
    pub riemann: Vec<Vec<Vec<Vec<S>>>>,
    pub ricci: Mat<S>,
    pub scal: S,
    pub einstein_defect: S,
}

/// Frame, metric, Christoffels and projectors at `u`.
pub fn frame_at<'a, S: Real>(
    spec: &'a ImmersionSpec,
    amb: &Ambient<S>,
    u: &[S],
) -> Result<FrameData<S>> {
    let ctx = GeoCtx::new(spec, u, 3)?;
    frame_from_ctx(&ctx, amb)
}

pub fn frame_from_ctx<S: Real>(ctx: &GeoCtx<'_, S>, amb: &Ambient<S>) -> Result<FrameData<S>> {
    let m = ctx.m();
    let nn = ctx.space_dim();
    let point = jets_value(&ctx.chart);
    let e: Vec<Vec<S>> = ctx.e.iter().map(|ei| jets_value(ei)).collect();
    let mut g = Mat::<S>::zeros(m, m);
    let mut g_inv = Mat::<S>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            g[(i, j)] = ctx.g[i][j].value();
            g_inv[(i, j)] = ctx.g_inv[i][j].value();
        }
    }
    let gamma: Vec<Mat<S>> = (0..m)
        .map(|k| {
            let mut mk = Mat::<S>::zeros(m, m);
            for i in 0..m {
                for j in 0..m {
                    mk[(i, j)] = ctx.gamma[k][i][j].value();
                }
            }
            mk
        })
        .collect();
    // Projector matrices column by column.
    let mut p_amb = Mat::<S>::zeros(nn, nn);
    let mut p_n = Mat::<S>::zeros(nn, nn);
    for col in 0..nn {
        let mut basis = vec![Jet::constant(&ctx.space, S::zero()); nn];
        basis[col] = Jet::constant(&ctx.space, S::one());
        let pa = amb.project(&ctx.chart, &basis);
        let pn = ctx.project_normal(amb, &basis);
        for row in 0..nn {
            p_amb[(row, col)] = pa[row].value();
            p_n[(row, col)] = pn[row].value();
        }
    }
    Ok(FrameData {
        point,
        e,
        g,
        g_inv,
        gamma,
        p_amb,
        p_n,
        metric_cond: ctx.metric_cond,
    })
}

/// Second fundamental form, mean curvature, shape operator, normal
/// derivative of `H`, `d|H|²`, pseudo-umbilic defect and (codimension one)
/// the unit normal.
pub fn extrinsic_at<S: Real>(
    spec: &ImmersionSpec,
    amb: &Ambient<S>,
    u: &[S],
) -> Result<ExtrinsicData<S>> {
    let ctx = GeoCtx::new(spec, u, 3)?;
    extrinsic_from_ctx(&ctx, amb)
}

pub fn extrinsic_from_ctx<S: Real>(
    ctx: &GeoCtx<'_, S>,
    amb: &Ambient<S>,
) -> Result<ExtrinsicData<S>> {
    let m = ctx.m();
    let nn = ctx.space_dim();
    let ext = ctx.extrinsic(amb)?;
    let b: Vec<Vec<Vec<S>>> = ext
        .b
        .iter()
        .map(|row| row.iter().map(|v| jets_value(v)).collect())
        .collect();
    let h = jets_value(&ext.h);
    let h_norm2 = dot(&h, &h);
    // (A_H)^k_j = g^{kl} ⟨B_lj, H⟩
    let mut bh = Mat::<S>::zeros(m, m);
    for l in 0..m {
        for j in 0..m {
            bh[(l, j)] = dot(&b[l][j], &h);
        }
    }
    let mut g_val = Mat::<S>::zeros(m, m);
    let mut g_inv_val = Mat::<S>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            g_val[(i, j)] = ctx.g[i][j].value();
            g_inv_val[(i, j)] = ctx.g_inv[i][j].value();
        }
    }
    let a_h = g_inv_val.matmul(&bh);
    // ∇ᴺ_i H and d|H|².
    let h2_jet = jets_dot(&ext.h, &ext.h);
    let d_h2: Vec<S> = (0..m).map(|i| h2_jet.derivative(i).value()).collect();
    let nabla_n_h: Vec<Vec<S>> = (0..m)
        .map(|i| {
            let dh: Vec<Jet<S>> = ext.h.iter().map(|c| c.derivative(i)).collect();
            jets_value(&ctx.project_normal(amb, &dh))
        })
        .collect();
    // pu defect: largest |eigenvalue| of G^{-1}(⟨B,H⟩ − |H|²G) in g-metric.
    let mut k_mat = Mat::<S>::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            k_mat[(i, j)] = bh[(i, j)] - h_norm2 * g_val[(i, j)];
        }
    }
    let l = g_val.cholesky().ok_or(Error::SingularMetric {
        cond: ctx.metric_cond,
    })?;
    let x = l.solve(&k_mat)?; // L⁻¹ K
    let xt = transpose(&x);
    let ct = l.solve(&xt)?; // L⁻¹ Kᵀ L⁻ᵀ … transpose back
    let c = transpose(&ct);
    let eigs = c.sym_eigenvalues();
    let pu_defect = eigs
        .iter()
        .map(|e| e.abs())
        .fold(S::zero(), |a, b| a.max_of(b));
    // Unit normal for line normal bundles.
    let codim = amb.manifold_dim(nn) - m;
    let eta = if codim == 1 {
        let mut best: Option<Vec<S>> = None;
        let mut best_norm = S::zero();
        for col in 0..nn {
            let mut basis = vec![Jet::constant(&ctx.space, S::zero()); nn];
            basis[col] = Jet::constant(&ctx.space, S::one());
            let w = jets_value(&ctx.project_normal(amb, &basis));
            let n2 = dot(&w, &w);
            if n2 > best_norm {
                best_norm = n2;
                best = Some(w);
            }
        }
        best.map(|w| {
            let inv = S::one() / dot(&w, &w).sqrt();
            let mut v: Vec<S> = w.iter().map(|x| *x * inv).collect();
            let orient = dot(&v, &h);
            let flip = if orient.abs().to_f64() > 1e-8 {
                orient < S::zero()
            } else {
                // No curvature to orient by; make the largest entry positive.
                let (mut idx, mut mag) = (0usize, S::zero());
                for (i, x) in v.iter().enumerate() {
                    if x.abs() > mag {
                        mag = x.abs();
                        idx = i;
                    }
                }
                v[idx] < S::zero()
            };
            if flip {
                for x in &mut v {
                    *x = -*x;
                }
            }
            v
        })
    } else {
        None
    };
    Ok(ExtrinsicData {
        b,
        h,
        h_norm2,
        a_h,
        nabla_n_h,
        d_h2,
        pu_defect,
        eta,
    })
}

fn transpose<S: Real>(m: &Mat<S>) -> Mat<S> {
    let mut out = Mat::zeros(m.cols, m.rows);
    for i in 0..m.rows {
        for j in 0..m.cols {
            out[(j, i)] = m[(i, j)];
        }
    }
    out
}

/// Riemann, Ricci, scalar curvature and the Einstein defect of the induced
/// metric at `u`.
pub fn induced_curvature_at<S: Real>(spec: &ImmersionSpec, u: &[S]) -> Result<CurvatureData<S>> {
    let ctx = GeoCtx::new(spec, u, 4)?;
    let m = ctx.m();
    // R^l_{ijk} = ∂_i Γ^l_{jk} − ∂_j Γ^l_{ik} + Γ^h_{jk} Γ^l_{ih} − Γ^h_{ik} Γ^l_{jh}
    let mut riemann = vec![vec![vec![vec![S::zero(); m]; m]; m]; m];
    for l in 0..m {
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    let mut val = ctx.gamma[l][j][k].derivative(i).value()
                        - ctx.gamma[l][i][k].derivative(j).value();
                    for h in 0..m {
                        val += ctx.gamma[h][j][k].value() * ctx.gamma[l][i][h].value()
                            - ctx.gamma[h][i][k].value() * ctx.gamma[l][j][h].value();
                    }
                    riemann[l][i][j][k] = val;
                }
            }
        }
    }
    let mut ricci = Mat::<S>::zeros(m, m);
    for j in 0..m {
        for k in 0..m {
            let mut acc = S::zero();
            for i in 0..m {
                acc += riemann[i][i][j][k];
            }
            ricci[(j, k)] = acc;
        }
    }
    let mut scal = S::zero();
    for j in 0..m {
        for k in 0..m {
            scal += ctx.g_inv[j][k].value() * ricci[(j, k)];
        }
    }
    let ratio = scal / S::from_i64(m as i64);
    let mut einstein_defect = S::zero();
    for i in 0..m {
        for j in 0..m {
            let d = (ricci[(i, j)] - ratio * ctx.g[i][j].value()).abs();
            einstein_defect = einstein_defect.max_of(d);
        }
    }
    Ok(CurvatureData {
        riemann,
        ricci,
        scal,
        einstein_defect,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{a2_rat, clifford, hypersphere, sample};

    fn unit_amb(spec: &ImmersionSpec) -> Ambient<f64> {
        Ambient::unit_sphere(spec.n + 1)
    }

    #[test]
    fn frame_tangents_orthogonal_to_position() {
        let spec = hypersphere(5, a2_rat(1, 2)).unwrap();
        let plan = sample(&spec, 6, 42).unwrap();
        let amb = unit_amb(&spec);
        for u in &plan.points {
            let f = frame_at(&spec, &amb, u).unwrap();
            for ei in &f.e {
                assert!(dot(ei, &f.point).abs() < 1e-12);
            }
            // projectors are idempotent and P_N annihilates the tangents
            let pn2 = f.p_n.matmul(&f.p_n);
            for i in 0..f.p_n.rows {
                for j in 0..f.p_n.cols {
                    assert!((pn2[(i, j)] - f.p_n[(i, j)]).abs() < 1e-12);
                }
            }
            for ei in &f.e {
                let w = f.p_n.mul_vec(ei);
                assert!(crate::linalg::norm(&w) < 1e-12);
            }
        }
    }

    #[test]
    fn equator_frame_has_extra_normal_rank() {
        let spec = hypersphere(4, a2_rat(1, 1)).unwrap();
        let u = spec.probe_point();
        let amb = unit_amb(&spec);
        let f = frame_at(&spec, &amb, &u).unwrap();
        assert_eq!(f.point[4], 0.0);
        // codim in S^4 is 1: trace of P_N is 1
        let mut tr = 0.0;
        for i in 0..f.p_n.rows {
            tr += f.p_n[(i, i)];
        }
        assert!((tr - 1.0).abs() < 1e-12);
    }

    #[test]
    fn clifford_metric_is_block_diagonal() {
        let spec = clifford(1, 3, a2_rat(1, 2)).unwrap();
        let u = spec.probe_point();
        let amb = unit_amb(&spec);
        let f = frame_at(&spec, &amb, &u).unwrap();
        // block 1: a²·(round S¹) = 1/2
        assert!((f.g[(0, 0)] - 0.5).abs() < 1e-14);
        for j in 1..4 {
            assert!(f.g[(0, j)].abs() < 1e-14);
        }
        // block 2: b²·(round S³ in spherical coordinates)
        let b2 = 0.5;
        assert!((f.g[(1, 1)] - b2).abs() < 1e-14);
        let s1 = u[1].sin();
        assert!((f.g[(2, 2)] - b2 * s1 * s1).abs() < 1e-14);
        let s2 = u[2].sin();
        assert!((f.g[(3, 3)] - b2 * s1 * s1 * s2 * s2).abs() < 1e-14);
    }

    #[test]
    fn hypersphere_shape_operator_and_mean_curvature() {
        // A_{η} = (b/a)·Id, |H| = b/a, pseudo-umbilic, ∇ᴺH = 0.
        let spec = hypersphere(5, a2_rat(1, 2)).unwrap();
        let plan = sample(&spec, 5, 42).unwrap();
        let amb = unit_amb(&spec);
        for u in &plan.points {
            let ext = extrinsic_at(&spec, &amb, u).unwrap();
            let ba = 1.0; // b/a = 1 at a² = 1/2
            assert!((ext.h_norm2.sqrt() - ba).abs() < 1e-10);
            assert!(ext.pu_defect < 1e-9);
            for row in &ext.nabla_n_h {
                assert!(crate::linalg::norm(row) < 1e-9);
            }
            for v in &ext.d_h2 {
                assert!(v.abs() < 1e-10);
            }
            // eta is H-aligned here
            let eta = ext.eta.as_ref().unwrap();
            let cosang = dot(eta, &ext.h) / ext.h_norm2.sqrt();
            assert!((cosang - 1.0).abs() < 1e-10);
            // ⟨H, p⟩ = 0 and ⟨H, E_i⟩ = 0
            let f = frame_at(&spec, &amb, u).unwrap();
            assert!(dot(&ext.h, &f.point).abs() < 1e-10);
            for ei in &f.e {
                assert!(dot(&ext.h, ei).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn clifford_shape_operator_eigenvalues() {
        // A_{η} eigenvalues b/a (×n₁) and −a/b (×n₂) for the H-side normal.
        let spec = clifford(1, 3, a2_rat(1, 2)).unwrap();
        let u = spec.probe_point();
        let amb = unit_amb(&spec);
        let ext = extrinsic_at(&spec, &amb, &u).unwrap();
        // |H| = |(b/a)n₁ − (a/b)n₂| / (n₁+n₂) = |1−3|/4 = 1/2
        assert!((ext.h_norm2 - 0.25).abs() < 1e-10);
        // not pseudo-umbilic
        assert!(ext.pu_defect > 1e-3);
        // shape operator of the unit normal η aligned with H: A_H = |H|·A_η when
        // H = |H|η, so eigenvalues of A_H are |H|·{−1 (×1), +1 (×3)} here
        // (η_H = −η_t since (b/a)n₁ − (a/b)n₂ = −2 < 0).
        let g = frame_at(&spec, &amb, &u).unwrap().g;
        let l = g.cholesky().unwrap();
        let mut k = Mat::<f64>::zeros(4, 4);
        for i in 0..4 {
            for j in 0..4 {
                k[(i, j)] = (0..4).map(|t| g[(i, t)] * ext.a_h[(t, j)]).sum();
            }
        }
        let x = l.solve(&k).unwrap();
        let xt = transpose(&x);
        let c = transpose(&l.solve(&xt).unwrap());
        let eig = c.sym_eigenvalues();
        let expect = [-0.5, 0.5, 0.5, 0.5]; // |H|·{−1, +1,+1,+1}
        for (a, b) in eig.iter().zip(expect) {
            assert!((a - b).abs() < 1e-9, "eig {eig:?}");
        }
    }

    #[test]
    fn minimal_clifford_has_zero_mean_curvature() {
        // a² = n₁/(n₁+n₂) makes the torus harmonic.
        let spec = clifford(1, 3, a2_rat(1, 4)).unwrap();
        let u = spec.probe_point();
        let ext = extrinsic_at(&spec, &unit_amb(&spec), &u).unwrap();
        assert!(ext.h_norm2 < 1e-20);
    }

    #[test]
    fn gauss_weingarten_consistency() {
        // ⟨B(V,W), X⟩ = g(A_X V, W) for the normal X = H.
        let spec = clifford(2, 3, a2_rat(1, 3)).unwrap();
        let plan = sample(&spec, 4, 11).unwrap();
        let amb = unit_amb(&spec);
        for u in &plan.points {
            let f = frame_at(&spec, &amb, u).unwrap();
            let ext = extrinsic_at(&spec, &amb, u).unwrap();
            for i in 0..spec.m {
                for j in 0..spec.m {
                    let lhs = dot(&ext.b[i][j], &ext.h);
                    let mut rhs = 0.0;
                    for k in 0..spec.m {
                        rhs += f.g[(k, j)] * ext.a_h[(k, i)];
                    }
                    assert!((lhs - rhs).abs() < 1e-9);
                }
            }
        }
    }

    #[test]
    fn round_sphere_scalar_curvature() {
        // S⁴(a) has scal = 12/a²; induced metric Einstein.
        let spec = hypersphere(5, a2_rat(6, 7)).unwrap();
        let u = spec.probe_point();
        let c = induced_curvature_at(&spec, &u).unwrap();
        let expect = 12.0 / (6.0 / 7.0);
        assert!((c.scal - expect).abs() < 1e-7, "scal {}", c.scal);
        assert!(c.einstein_defect < 1e-8);
        // unit 2-sphere: scal = 2
        let spec = hypersphere(3, a2_rat(1, 1)).unwrap();
        let c = induced_curvature_at(&spec, &spec.probe_point()).unwrap();
        assert!((c.scal - 2.0).abs() < 1e-9);
    }

    #[test]
    fn product_curvature_flat_circle_factor_rows_vanish() {
        let spec = clifford(1, 3, a2_rat(1, 2)).unwrap();
        let c = induced_curvature_at(&spec, &spec.probe_point()).unwrap();
        for j in 0..4 {
            assert!(c.ricci[(0, j)].abs() < 1e-9);
            assert!(c.ricci[(j, 0)].abs() < 1e-9);
        }
        // Riemann symmetries: R_{lijk} = −R_{ljik} (first pair antisymmetry in
        // the two curvature arguments).
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        assert!(
                            (c.riemann[l][i][j][k] + c.riemann[l][j][i][k]).abs() < 1e-8
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn sub_sphere_ambient_mean_curvature_of_equatorial_factor() {
        use crate::catalog::equatorial_in_hypersphere;
        // S²(a) equatorial in S³(a) ⊂ S⁴: relative to the block sphere the
        // inclusion is totally geodesic, H_M = 0.
        let spec = equatorial_in_hypersphere(2, 4, a2_rat(2, 3)).unwrap();
        let amb = Ambient::<f64>::sub_sphere_of(&spec).unwrap();
        let plan = sample(&spec, 5, 42).unwrap();
        for u in &plan.points {
            let ext = extrinsic_at(&spec, &amb, u).unwrap();
            assert!(ext.h_norm2 < 1e-20, "H_M should vanish, got {}", ext.h_norm2);
        }
        // …while relative to S⁴ it has |H|² = b²/a² = 1/2.
        let amb = Ambient::<f64>::unit_sphere(spec.n + 1);
        let ext = extrinsic_at(&spec, &amb, &plan.points[0]).unwrap();
        assert!((ext.h_norm2 - 0.5).abs() < 1e-10);
    }
}

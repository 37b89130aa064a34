//! Truncated multivariate Taylor jets: forward propagation of all mixed
//! partial derivatives up to total order 6 through closed-form expressions.
//!
//! Coefficient convention, fixed repo-wide: a jet stores Taylor coefficients
//! `c_α = ∂^α f / α!` indexed by multi-index `α`; [`Jet::partial`] converts
//! back to the raw derivative by multiplying with `α!`. With this convention
//! multiplication is plain truncated convolution.
//!
//! Every jet carries the maximal order of its space as *capacity* and a
//! current *valid* order; differentiation lowers the valid order by one and
//! binary operations truncate to the smaller operand. Truncation is exact:
//! a jet computed at order ω and truncated to ω′ < ω equals the jet computed
//! directly at ω′.

mod expr;
mod fd;

pub use expr::{jet_at, Expr};
pub use fd::{fd_derivative, FdResult};

use crate::error::Error;
use crate::exact::Rational;
use crate::scalar::Real;
use crate::Result;
use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

/// Shared tables for jets in `vars` variables to total order ≤ `order`:
/// the graded multi-index list, the convolution pair table grouped by result
/// degree, and the index-shift maps used by differentiation.
#[derive(Debug)]
pub struct JetSpace {
    vars: usize,
    order: usize,
    /// Multi-indices in graded lexicographic order (degree 0 first).
    indices: Vec<Vec<u8>>,
    /// Position lookup.
    pos: BTreeMap<Vec<u8>, usize>,
    /// First position of each total degree in `indices`; length `order + 2`.
    degree_start: Vec<usize>,
    /// `(result, left, right)` triples with `deg(result) = deg(left) + deg(right)`,
    /// sorted by result degree.
    pairs: Vec<(u32, u32, u32)>,
    /// First pair whose result degree reaches `d`; length `order + 2`.
    pair_degree_start: Vec<usize>,
    /// `shift_up[i][pos(α)] = pos(α + e_i)` where defined.
    shift_up: Vec<Vec<u32>>,
    /// `α!` per position, as f64 (orders ≤ 6 keep this exact).
    factorial: Vec<f64>,
}

fn enumerate_indices(vars: usize, order: usize) -> Vec<Vec<u8>> {
    fn rec(out: &mut Vec<Vec<u8>>, current: &mut Vec<u8>, var: usize, left: usize) {
        if var + 1 == current.len() {
            current[var] = left as u8;
            out.push(current.clone());
            return;
        }
        for take in 0..=left {
            current[var] = take as u8;
            rec(out, current, var + 1, left - take);
        }
    }
    let mut out: Vec<Vec<u8>> = Vec::new();
    let mut current = vec![0u8; vars];
    for degree in 0..=order {
        rec(&mut out, &mut current, 0, degree);
    }
    out
}

impl JetSpace {
    pub fn new(vars: usize, order: usize) -> Rc<JetSpace> {
        assert!(vars >= 1, "at least one variable");
        assert!(order <= 6, "orders above 6 are not supported");
        let indices = enumerate_indices(vars, order);
        let pos: BTreeMap<Vec<u8>, usize> = indices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, a)| (a, i))
            .collect();
        let deg = |a: &[u8]| a.iter().map(|&x| x as usize).sum::<usize>();

        let mut degree_start = vec![0usize; order + 2];
        for d in 0..=order + 1 {
            degree_start[d] = indices.partition_point(|a| deg(a) < d);
        }

        let mut raw_pairs: Vec<(usize, u32, u32, u32)> = Vec::new();
        for (i, a) in indices.iter().enumerate() {
            let da = deg(a);
            for (j, b) in indices.iter().enumerate() {
                let db = deg(b);
                if da + db > order {
                    continue;
                }
                let sum: Vec<u8> = a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                let k = pos[&sum];
                raw_pairs.push((da + db, k as u32, i as u32, j as u32));
            }
        }
        raw_pairs.sort_unstable();
        let mut pair_degree_start = vec![0usize; order + 2];
        for d in 0..=order + 1 {
            pair_degree_start[d] = raw_pairs.partition_point(|p| p.0 < d);
        }
        let pairs: Vec<(u32, u32, u32)> =
            raw_pairs.into_iter().map(|(_, k, i, j)| (k, i, j)).collect();

        let mut shift_up = vec![vec![u32::MAX; indices.len()]; vars];
        for (i, a) in indices.iter().enumerate() {
            if deg(a) >= order {
                continue;
            }
            for (v, shift) in shift_up.iter_mut().enumerate() {
                let mut b = a.clone();
                b[v] += 1;
                shift[i] = pos[&b] as u32;
            }
        }

        let factorial = indices
            .iter()
            .map(|a| {
                a.iter()
                    .map(|&x| (1..=x as u64).product::<u64>().max(1) as f64)
                    .product()
            })
            .collect();

        Rc::new(JetSpace {
            vars,
            order,
            indices,
            pos,
            degree_start,
            pairs,
            pair_degree_start,
            shift_up,
            factorial,
        })
    }

    pub fn vars(&self) -> usize {
        self.vars
    }
    pub fn order(&self) -> usize {
        self.order
    }
    pub fn len(&self) -> usize {
        self.indices.len()
    }
    pub fn is_empty(&self) -> bool {
        false
    }
    pub fn indices(&self) -> &[Vec<u8>] {
        &self.indices
    }

    pub fn position(&self, alpha: &[u8]) -> Option<usize> {
        self.pos.get(alpha).copied()
    }

    /// Number of positions with total degree ≤ `v`.
    fn len_at(&self, v: usize) -> usize {
        self.degree_start[v.min(self.order) + 1]
    }
}

/// A truncated Taylor expansion of a scalar quantity at a base point.
#[derive(Clone, Debug)]
pub struct Jet<S> {
    space: Rc<JetSpace>,
    valid: usize,
    c: Vec<S>,
}

impl<S: Real> Jet<S> {
    pub fn constant(space: &Rc<JetSpace>, value: S) -> Jet<S> {
        let mut c = vec![S::zero(); space.len()];
        c[0] = value;
        Jet {
            space: space.clone(),
            valid: space.order(),
            c,
        }
    }

    /// The affine jet `value + (u_var − value-point)` of coordinate `var`.
    pub fn variable(space: &Rc<JetSpace>, var: usize, value: S) -> Jet<S> {
        let mut jet = Jet::constant(space, value);
        if space.order() >= 1 {
            let mut e = vec![0u8; space.vars()];
            e[var] = 1;
            let p = space.position(&e).expect("first-order position");
            jet.c[p] = S::one();
        }
        jet
    }

    pub fn space(&self) -> &Rc<JetSpace> {
        &self.space
    }
    pub fn valid_order(&self) -> usize {
        self.valid
    }
    pub fn value(&self) -> S {
        self.c[0]
    }

    /// Taylor coefficient `∂^α f / α!`, zero beyond the valid order.
    pub fn coeff(&self, alpha: &[u8]) -> S {
        match self.space.position(alpha) {
            Some(p) if p < self.space.len_at(self.valid) => self.c[p],
            _ => S::zero(),
        }
    }

    /// Raw mixed partial `∂^α f` (coefficient times `α!`).
    pub fn partial(&self, alpha: &[u8]) -> S {
        let p = match self.space.position(alpha) {
            Some(p) if p < self.space.len_at(self.valid) => p,
            _ => return S::zero(),
        };
        self.c[p] * S::from_f64(self.space.factorial[p])
    }

    pub fn truncated(&self, v: usize) -> Jet<S> {
        let v = v.min(self.valid);
        let mut out = self.clone();
        out.valid = v;
        for i in out.space.len_at(v)..out.c.len() {
            out.c[i] = S::zero();
        }
        out
    }

    fn check_same_space(&self, o: &Jet<S>) {
        assert!(
            Rc::ptr_eq(&self.space, &o.space),
            "jets from different spaces"
        );
    }

    pub fn add(&self, o: &Jet<S>) -> Jet<S> {
        self.check_same_space(o);
        let v = self.valid.min(o.valid);
        let n = self.space.len_at(v);
        let mut c = vec![S::zero(); self.space.len()];
        for i in 0..n {
            c[i] = self.c[i] + o.c[i];
        }
        Jet {
            space: self.space.clone(),
            valid: v,
            c,
        }
    }

    pub fn sub(&self, o: &Jet<S>) -> Jet<S> {
        self.check_same_space(o);
        let v = self.valid.min(o.valid);
        let n = self.space.len_at(v);
        let mut c = vec![S::zero(); self.space.len()];
        for i in 0..n {
            c[i] = self.c[i] - o.c[i];
        }
        Jet {
            space: self.space.clone(),
            valid: v,
            c,
        }
    }

    pub fn neg(&self) -> Jet<S> {
        let mut out = self.clone();
        for x in &mut out.c {
            *x = -*x;
        }
        out
    }

    pub fn mul(&self, o: &Jet<S>) -> Jet<S> {
        self.check_same_space(o);
        let v = self.valid.min(o.valid);
        let mut c = vec![S::zero(); self.space.len()];
        let end = self.space.pair_degree_start[v + 1];
        for &(k, i, j) in &self.space.pairs[..end] {
            c[k as usize] += self.c[i as usize] * o.c[j as usize];
        }
        Jet {
            space: self.space.clone(),
            valid: v,
            c,
        }
    }

    pub fn scale(&self, s: S) -> Jet<S> {
        let mut out = self.clone();
        for x in &mut out.c {
            *x = *x * s;
        }
        out
    }

    pub fn scale_rational(&self, r: &Rational) -> Jet<S> {
        self.scale(S::from_rational(r))
    }

    /// Partial derivative along variable `i`; valid order drops by one.
    pub fn derivative(&self, i: usize) -> Jet<S> {
        assert!(
            self.valid >= 1,
            "cannot differentiate a jet with no derivative information"
        );
        let v = self.valid - 1;
        let mut c = vec![S::zero(); self.space.len()];
        let n = self.space.len_at(v);
        for p in 0..n {
            let up = self.space.shift_up[i][p];
            debug_assert!(up != u32::MAX);
            let alpha_i = self.space.indices[p][i] as i64;
            c[p] = self.c[up as usize] * S::from_i64(alpha_i + 1);
        }
        Jet {
            space: self.space.clone(),
            valid: v,
            c,
        }
    }

    /// Is every stored coefficient beyond the constant term zero?
    fn is_constant(&self) -> bool {
        self.c[1..].iter().all(|x| *x == S::zero())
    }

    /// Composition with a univariate analytic `g`, given the scaled
    /// derivatives `g_j = g^{(j)}(c₀)/j!` for `j = 0..=valid`.
    fn compose(&self, scaled_derivs: &[S]) -> Jet<S> {
        let v = self.valid;
        let mut tilde = self.clone();
        tilde.c[0] = S::zero();
        let mut acc = Jet::constant(&self.space, S::one()).truncated(v);
        let mut out = Jet::constant(&self.space, scaled_derivs[0]).truncated(v);
        for j in 1..=v {
            acc = acc.mul(&tilde);
            out = out.add(&acc.scale(scaled_derivs[j]));
        }
        out
    }

    pub fn recip(&self) -> Result<Jet<S>> {
        let c0 = self.c[0];
        if c0 == S::zero() {
            return Err(Error::Domain(
                "division by zero in jet arithmetic".to_string(),
            ));
        }
        let inv = S::one() / c0;
        let mut g = vec![S::zero(); self.valid + 1];
        let mut cur = inv;
        for slot in g.iter_mut() {
            *slot = cur;
            cur = -cur * inv;
        }
        Ok(self.compose(&g))
    }

    pub fn div(&self, o: &Jet<S>) -> Result<Jet<S>> {
        Ok(self.mul(&o.recip()?))
    }

    pub fn sqrt(&self) -> Result<Jet<S>> {
        let c0 = self.c[0];
        if self.is_constant() {
            if c0 < S::zero() {
                return Err(Error::Domain("square root of negative value".to_string()));
            }
            return Ok(Jet::constant(&self.space, c0.sqrt()).truncated(self.valid));
        }
        if c0 <= S::zero() {
            return Err(Error::Domain(
                "square root at a non-positive base value".to_string(),
            ));
        }
        let root = c0.sqrt();
        let mut g = vec![S::zero(); self.valid + 1];
        g[0] = root;
        // g_j = g_{j−1} · (3/2 − j) / (j c₀)
        let mut prev = root;
        for (j, slot) in g.iter_mut().enumerate().skip(1) {
            let factor = (S::from_f64(1.5) - S::from_i64(j as i64))
                / (S::from_i64(j as i64) * c0);
            prev = prev * factor;
            *slot = prev;
        }
        Ok(self.compose(&g))
    }

    pub fn sin(&self) -> Jet<S> {
        let (s0, c0v) = (self.c[0].sin(), self.c[0].cos());
        self.compose(&trig_derivs(self.valid, s0, c0v, true))
    }

    pub fn cos(&self) -> Jet<S> {
        let (s0, c0v) = (self.c[0].sin(), self.c[0].cos());
        self.compose(&trig_derivs(self.valid, s0, c0v, false))
    }

    pub fn powi(&self, n: i32) -> Result<Jet<S>> {
        if n == 0 {
            return Ok(Jet::constant(&self.space, S::one()).truncated(self.valid));
        }
        let base = if n < 0 { self.recip()? } else { self.clone() };
        let mut acc = base.clone();
        for _ in 1..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }
}

/// Scaled derivative table for sin (or cos) at a base value.
fn trig_derivs<S: Real>(order: usize, s0: S, c0: S, is_sin: bool) -> Vec<S> {
    let cycle = if is_sin {
        [s0, c0, -s0, -c0]
    } else {
        [c0, -s0, -c0, s0]
    };
    let mut out = vec![S::zero(); order + 1];
    let mut fact = S::one();
    for (j, slot) in out.iter_mut().enumerate() {
        if j > 0 {
            fact = fact * S::from_i64(j as i64);
        }
        *slot = cycle[j % 4] / fact;
    }
    out
}

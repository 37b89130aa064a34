//! Gauss–Legendre nodes and tensorized quadrature over a chart box.

use alloc::vec;
use alloc::vec::Vec;

/// Nodes and weights of `n`-point Gauss–Legendre quadrature on `[-1, 1]`,
/// by Newton iteration on the Legendre recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1);
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        let mut pp = 0.0;
        for _ in 0..100 {
            // Legendre P_n(x) and derivative via recurrence.
            let mut p0 = 1.0;
            let mut p1 = x;
            for k in 2..=n {
                let pk = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = pk;
            }
            pp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / pp;
            x -= dx;
            if libm::fabs(dx) < 1e-15 {
                break;
            }
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        let w = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Tensor-product Gauss–Legendre cubature of `f` over `box_`, with
/// `nodes_per_axis` points per axis. Reduction order is fixed
/// (lexicographic) for determinism.
pub fn integrate_box<F>(box_: &[(f64, f64)], nodes_per_axis: usize, mut f: F) -> crate::Result<f64>
where
    F: FnMut(&[f64]) -> crate::Result<f64>,
{
    let dim = box_.len();
    let (x, w) = gauss_legendre(nodes_per_axis);
    let mut idx = vec![0usize; dim];
    let mut point = vec![0.0f64; dim];
    let mut total = 0.0f64;
    loop {
        let mut weight = 1.0;
        for d in 0..dim {
            let (lo, hi) = box_[d];
            let half = 0.5 * (hi - lo);
            point[d] = lo + half * (x[idx[d]] + 1.0);
            weight *= half * w[idx[d]];
        }
        let v = f(&point)?;
        if !v.is_finite() {
            return Err(crate::Error::NonFinite("quadrature node value".into()));
        }
        total += weight * v;
        // odometer increment
        let mut d = 0;
        loop {
            if d == dim {
                return Ok(total);
            }
            idx[d] += 1;
            if idx[d] < nodes_per_axis {
                break;
            }
            idx[d] = 0;
            d += 1;
        }
    }
}

/// Machinery check: `Real`-generic monomial integral helper for tests.
pub fn reference_integral_x2(n: usize) -> f64 {
    let (x, w) = gauss_legendre(n);
    x.iter().zip(&w).map(|(xi, wi)| wi * xi * xi).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nodes_integrate_polynomials_exactly() {
        // ∫_{-1}^{1} x² dx = 2/3
        assert!((reference_integral_x2(4) - 2.0 / 3.0).abs() < 1e-14);
        // degree 2n−1 exactness: x⁵ with n = 3
        let (x, w) = gauss_legendre(3);
        let int_x5: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(5)).sum();
        assert!(int_x5.abs() < 1e-14);
        let total: f64 = w.iter().sum();
        assert!((total - 2.0).abs() < 1e-14);
    }

    #[test]
    fn box_integration_of_sin() {
        // ∫₀^π sin = 2
        let v = integrate_box(&[(0.0, core::f64::consts::PI)], 24, |u| Ok(u[0].sin())).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        // 2-d: ∫∫ sin(x)sin(y) over [0,π]² = 4
        let v = integrate_box(
            &[(0.0, core::f64::consts::PI), (0.0, core::f64::consts::PI)],
            16,
            |u| Ok(u[0].sin() * u[1].sin()),
        )
        .unwrap();
        assert!((v - 4.0).abs() < 1e-10);
    }
}

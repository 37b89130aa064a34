//! Small dense linear algebra over a generic scalar: the metric and shape
//! operators here are at most 6×6 (domain) by 8 (ambient) sized, so plain
//! Gaussian elimination and Jacobi sweeps are plenty.

use crate::error::Error;
use crate::scalar::Real;
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// Row-major rectangular matrix.
#[derive(Clone, Debug)]
pub struct Mat<S> {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<S>,
}

impl<S: Real> Mat<S> {
    pub fn zeros(rows: usize, cols: usize) -> Mat<S> {
        Mat {
            rows,
            cols,
            a: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Mat<S> {
        let mut m = Mat::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Mat<S> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut a = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c);
            a.extend(row);
        }
        Mat { rows: r, cols: c, a }
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(x.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = S::zero();
                for j in 0..self.cols {
                    acc += self[(i, j)] * x[j];
                }
                acc
            })
            .collect()
    }

    pub fn matmul(&self, o: &Mat<S>) -> Mat<S> {
        assert_eq!(self.cols, o.rows);
        let mut out = Mat::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let v = self[(i, k)];
                if v == S::zero() {
                    continue;
                }
                for j in 0..o.cols {
                    out[(i, j)] += v * o[(k, j)];
                }
            }
        }
        out
    }

    /// Solves `self · X = rhs` (square, partial pivoting).
    pub fn solve(&self, rhs: &Mat<S>) -> Result<Mat<S>> {
        assert_eq!(self.rows, self.cols);
        assert_eq!(rhs.rows, self.rows);
        let n = self.rows;
        let mut a = self.clone();
        let mut b = rhs.clone();
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[(col, col)].abs();
            for r in col + 1..n {
                let mag = a[(r, col)].abs();
                if mag > best {
                    best = mag;
                    pivot = r;
                }
            }
            if best == S::zero() {
                return Err(Error::SingularMetric { cond: f64::INFINITY });
            }
            if pivot != col {
                for j in 0..n {
                    a.a.swap(col * n + j, pivot * n + j);
                }
                for j in 0..b.cols {
                    b.a.swap(col * b.cols + j, pivot * b.cols + j);
                }
            }
            let inv = S::one() / a[(col, col)];
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)] * inv;
                if f == S::zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
                for j in 0..b.cols {
                    let v = b[(col, j)];
                    b[(r, j)] -= f * v;
                }
            }
        }
        for i in 0..n {
            let inv = S::one() / a[(i, i)];
            for j in 0..b.cols {
                b[(i, j)] *= inv;
            }
        }
        Ok(b)
    }

    pub fn inverse(&self) -> Result<Mat<S>> {
        self.solve(&Mat::identity(self.rows))
    }

    pub fn det(&self) -> S {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = S::one();
        for col in 0..n {
            let mut pivot = col;
            let mut best = a[(col, col)].abs();
            for r in col + 1..n {
                let mag = a[(r, col)].abs();
                if mag > best {
                    best = mag;
                    pivot = r;
                }
            }
            if best == S::zero() {
                return S::zero();
            }
            if pivot != col {
                for j in 0..n {
                    a.a.swap(col * n + j, pivot * n + j);
                }
                det = -det;
            }
            det *= a[(col, col)];
            let inv = S::one() / a[(col, col)];
            for r in col + 1..n {
                let f = a[(r, col)] * inv;
                for j in col..n {
                    let v = a[(col, j)];
                    a[(r, j)] -= f * v;
                }
            }
        }
        det
    }

    /// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
    pub fn sym_eigenvalues(&self) -> Vec<S> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let scale = self
            .a
            .iter()
            .map(|x| x.abs().to_f64())
            .fold(0.0f64, f64::max)
            .max(1e-300);
        for _sweep in 0..64 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in i + 1..n {
                    off += a[(i, j)].abs().to_f64();
                }
            }
            if off <= scale * S::epsilon() * (n * n) as f64 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    let apq = a[(p, q)];
                    if apq == S::zero() {
                        continue;
                    }
                    let theta = (a[(q, q)] - a[(p, p)]) / (S::from_f64(2.0) * apq);
                    // t = sign(θ)/(|θ| + √(θ²+1))
                    let t = {
                        let root = (theta * theta + S::one()).sqrt();
                        if theta >= S::zero() {
                            S::one() / (theta + root)
                        } else {
                            -(S::one() / (-theta + root))
                        }
                    };
                    let c = S::one() / (t * t + S::one()).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let akp = a[(k, p)];
                        let akq = a[(k, q)];
                        a[(k, p)] = c * akp - s * akq;
                        a[(k, q)] = s * akp + c * akq;
                    }
                    for k in 0..n {
                        let apk = a[(p, k)];
                        let aqk = a[(q, k)];
                        a[(p, k)] = c * apk - s * aqk;
                        a[(q, k)] = s * apk + c * aqk;
                    }
                }
            }
        }
        let mut eig: Vec<S> = (0..n).map(|i| a[(i, i)]).collect();
        eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
        eig
    }

    /// λ_max/λ_min magnitude ratio of a symmetric positive matrix.
    pub fn sym_condition(&self) -> f64 {
        let eig = self.sym_eigenvalues();
        let lo = eig
            .iter()
            .map(|e| e.abs().to_f64())
            .fold(f64::INFINITY, f64::min);
        let hi = eig
            .iter()
            .map(|e| e.abs().to_f64())
            .fold(0.0f64, f64::max);
        if lo == 0.0 {
            f64::INFINITY
        } else {
            hi / lo
        }
    }

    /// Cholesky factor of a symmetric positive definite matrix, or `None`.
    pub fn cholesky(&self) -> Option<Mat<S>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut l = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let mut sum = self[(i, j)];
                for k in 0..j {
                    sum -= l[(i, k)] * l[(j, k)];
                }
                if i == j {
                    if !(sum > S::zero()) {
                        return None;
                    }
                    l[(i, j)] = sum.sqrt();
                } else {
                    l[(i, j)] = sum / l[(j, j)];
                }
            }
        }
        Some(l)
    }
}

impl<S> core::ops::Index<(usize, usize)> for Mat<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.a[i * self.cols + j]
    }
}

impl<S> core::ops::IndexMut<(usize, usize)> for Mat<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.a[i * self.cols + j]
    }
}

pub fn dot<S: Real>(x: &[S], y: &[S]) -> S {
    debug_assert_eq!(x.len(), y.len());
    let mut acc = S::zero();
    for (a, b) in x.iter().zip(y) {
        acc += *a * *b;
    }
    acc
}

pub fn norm<S: Real>(x: &[S]) -> S {
    dot(x, x).sqrt()
}

pub fn axpy<S: Real>(out: &mut [S], alpha: S, x: &[S]) {
    for (o, v) in out.iter_mut().zip(x) {
        *o += alpha * *v;
    }
}

pub fn scaled<S: Real>(x: &[S], alpha: S) -> Vec<S> {
    x.iter().map(|v| *v * alpha).collect()
}

pub fn vec_sub<S: Real>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| *a - *b).collect()
}

pub fn vec_add<S: Real>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| *a + *b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_inverse() {
        let m = Mat::from_rows(vec![vec![4.0, 1.0], vec![1.0, 3.0]]);
        let inv = m.inverse().unwrap();
        let id = m.matmul(&inv);
        assert!((id[(0, 0)] - 1.0).abs() < 1e-14);
        assert!(id[(0, 1)].abs() < 1e-14);
        assert!((m.det() - 11.0).abs() < 1e-12);
    }

    #[test]
    fn jacobi_eigenvalues_of_known_matrix() {
        // eigenvalues of [[2,1],[1,2]] are 1 and 3
        let m = Mat::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        let e = m.sym_eigenvalues();
        assert!((e[0] - 1.0).abs() < 1e-12);
        assert!((e[1] - 3.0).abs() < 1e-12);
    }

    #[test]
    fn cholesky_detects_non_spd() {
        let spd = Mat::from_rows(vec![vec![2.0, 0.5], vec![0.5, 1.0]]);
        assert!(spd.cholesky().is_some());
        let not = Mat::from_rows(vec![vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(not.cholesky().is_none());
    }

    #[test]
    fn singular_solve_errors() {
        let m = Mat::from_rows(vec![vec![1.0, 2.0], vec![2.0, 4.0]]);
        assert!(m.inverse().is_err());
    }
}

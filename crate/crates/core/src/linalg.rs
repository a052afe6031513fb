//! Dense matrices and the rank / null space / linear-system primitives.
//!
//! Rational matrices are reduced by exact Gauss-Jordan elimination. Float
//! matrices go through an SVD; a singular value counts as nonzero when it
//! exceeds `RANK_RTOL` times the largest column norm.

use std::ops::{Index, IndexMut};

use nalgebra::{DMatrix, DVector};
use num::{One, Zero};

use crate::scalar::{Scalar, Q};

pub const RANK_RTOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = S::one();
        }
        m
    }

    pub fn from_rows(rows: &[Vec<S>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        Matrix { rows: r, cols: c, data }
    }

    /// Matrix whose columns are `cols`; `nrows` is needed when `cols` is empty.
    pub fn from_cols(nrows: usize, cols: &[Vec<S>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), nrows);
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<S> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn push_row(&mut self, row: Vec<S>) {
        if self.rows == 0 && self.cols == 0 {
            self.cols = row.len();
        }
        assert_eq!(row.len(), self.cols);
        self.data.extend(row);
        self.rows += 1;
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<S>) -> Matrix<S> {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = out[(i, j)].clone() + a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, x: &[S]) -> Vec<S> {
        assert_eq!(self.cols, x.len());
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn trace(&self) -> S {
        (0..self.rows.min(self.cols)).fold(S::zero(), |acc, i| acc + self[(i, i)].clone())
    }

    pub fn map<T, F: Fn(&S) -> T>(&self, f: F) -> Matrix<T> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        self.map(|x| x.to_f64())
    }

    pub fn to_nalgebra(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].to_f64())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    /// Frobenius norm, in floating point.
    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|x| x.to_f64().powi(2)).sum::<f64>().sqrt()
    }

    pub fn to_rows(&self) -> Vec<Vec<S>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;
    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

pub fn dot<S: Scalar>(a: &[S], b: &[S]) -> S {
    let mut acc = S::zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = acc + x.clone() * y.clone();
        }
    }
    acc
}

pub fn axpy<S: Scalar>(alpha: &S, x: &[S], y: &mut [S]) {
    if alpha.is_zero() {
        return;
    }
    for (yi, xi) in y.iter_mut().zip(x) {
        if !xi.is_zero() {
            *yi = yi.clone() + alpha.clone() * xi.clone();
        }
    }
}

pub fn scale<S: Scalar>(alpha: &S, x: &[S]) -> Vec<S> {
    x.iter().map(|v| alpha.clone() * v.clone()).collect()
}

pub fn add<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() + b.clone()).collect()
}

pub fn sub<S: Scalar>(x: &[S], y: &[S]) -> Vec<S> {
    x.iter().zip(y).map(|(a, b)| a.clone() - b.clone()).collect()
}

pub fn unit<S: Scalar>(n: usize, i: usize) -> Vec<S> {
    let mut v = vec![S::zero(); n];
    v[i] = S::one();
    v
}

pub fn is_zero_vec<S: Scalar>(x: &[S]) -> bool {
    x.iter().all(|v| v.is_zero())
}

/// Result of solving `M x = b`.
#[derive(Clone, Debug)]
pub struct Solution<S> {
    /// Decided exactly in rational mode; `None` in float mode, where
    /// consistency is a matter of residual tolerance.
    pub consistent: Option<bool>,
    /// Exact solution (free variables zero) when consistent, else the
    /// minimum-norm least-squares solution in float mode and zeros in exact
    /// mode.
    pub x: Vec<S>,
    pub rank: usize,
}

/// Field-specific linear algebra.
pub trait Field: Scalar {
    fn rank(m: &Matrix<Self>) -> usize;
    fn nullspace(m: &Matrix<Self>) -> Vec<Vec<Self>>;
    fn solve(m: &Matrix<Self>, b: &[Self]) -> Solution<Self>;
    /// Pivots of symmetric elimination (rational) or Cholesky (float).
    fn is_positive_definite(m: &Matrix<Self>) -> bool;
}

/// Reduced row echelon form; returns pivot columns.
pub fn rref(m: &mut Matrix<Q>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..m.cols {
                m.data.swap(p * m.cols + j, r * m.cols + j);
            }
        }
        let inv = Q::from_integer(1.into()) / m[(r, c)].clone();
        for j in c..m.cols {
            let v = m[(r, j)].clone() * inv.clone();
            m[(r, j)] = v;
        }
        for i in 0..m.rows {
            if i == r || m[(i, c)].is_zero() {
                continue;
            }
            let f = m[(i, c)].clone();
            for j in c..m.cols {
                if !m[(r, j)].is_zero() {
                    let v = m[(i, j)].clone() - f.clone() * m[(r, j)].clone();
                    m[(i, j)] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

impl Field for Q {
    fn rank(m: &Matrix<Q>) -> usize {
        rref(&mut m.clone()).len()
    }

    fn nullspace(m: &Matrix<Q>) -> Vec<Vec<Q>> {
        let mut a = m.clone();
        let pivots = rref(&mut a);
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Q::zero(); m.cols];
                v[f] = Q::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -a[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    fn solve(m: &Matrix<Q>, b: &[Q]) -> Solution<Q> {
        assert_eq!(m.rows, b.len());
        let n = m.cols;
        let mut aug = Matrix::zeros(m.rows, n + 1);
        for i in 0..m.rows {
            for j in 0..n {
                aug[(i, j)] = m[(i, j)].clone();
            }
            aug[(i, n)] = b[i].clone();
        }
        let pivots = rref(&mut aug);
        let consistent = !pivots.contains(&n);
        let rank = pivots.iter().filter(|&&p| p < n).count();
        let mut x = vec![Q::zero(); n];
        if consistent {
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = aug[(r, n)].clone();
            }
        }
        Solution { consistent: Some(consistent), x, rank }
    }

    fn is_positive_definite(m: &Matrix<Q>) -> bool {
        exact_positive_definite(m)
    }
}

/// Float least-squares diagnostics.
#[derive(Clone, Debug)]
pub struct Lstsq {
    pub x: Vec<f64>,
    pub residual: Vec<f64>,
    pub rank: usize,
    pub sigma_max: f64,
    /// Smallest singular value above the rank threshold; `None` at rank 0.
    pub sigma_min_nonzero: Option<f64>,
}

fn max_col_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// SVD with `V^T` always square (the matrix is zero-padded when wide).
fn full_svd(m: &DMatrix<f64>) -> (DMatrix<f64>, DVector<f64>, DMatrix<f64>) {
    let (r, c) = m.shape();
    let padded = if r < c {
        let mut p = DMatrix::zeros(c, c);
        p.view_mut((0, 0), (r, c)).copy_from(m);
        p
    } else {
        m.clone()
    };
    let svd = padded.svd(true, true);
    (svd.u.unwrap(), svd.singular_values, svd.v_t.unwrap())
}

pub fn lstsq(m: &Matrix<f64>, b: &[f64]) -> Lstsq {
    let (r, c) = (m.rows, m.cols);
    assert_eq!(r, b.len());
    if c == 0 || r == 0 {
        return Lstsq {
            x: vec![0.0; c],
            residual: b.iter().map(|v| -v).collect(),
            rank: 0,
            sigma_max: 0.0,
            sigma_min_nonzero: None,
        };
    }
    let a = m.to_nalgebra();
    let tol = RANK_RTOL * max_col_norm(&a);
    let (u, s, vt) = full_svd(&a);
    let bv = if r < c {
        let mut p = DVector::zeros(c);
        p.rows_mut(0, r).copy_from(&DVector::from_column_slice(b));
        p
    } else {
        DVector::from_column_slice(b)
    };
    let mut x = DVector::zeros(c);
    let mut rank = 0;
    let mut smin: Option<f64> = None;
    let mut smax: f64 = 0.0;
    for k in 0..s.len() {
        let sk = s[k];
        smax = smax.max(sk);
        if sk > tol && sk > 0.0 {
            rank += 1;
            smin = Some(smin.map_or(sk, |v: f64| v.min(sk)));
            let coef = u.column(k).dot(&bv) / sk;
            x += vt.row(k).transpose() * coef;
        }
    }
    let ax = &a * &x;
    let residual: Vec<f64> = (0..r).map(|i| ax[i] - b[i]).collect();
    Lstsq { x: x.iter().cloned().collect(), residual, rank, sigma_max: smax, sigma_min_nonzero: smin }
}

impl Field for f64 {
    fn rank(m: &Matrix<f64>) -> usize {
        if m.rows == 0 || m.cols == 0 {
            return 0;
        }
        let a = m.to_nalgebra();
        let tol = RANK_RTOL * max_col_norm(&a);
        a.singular_values().iter().filter(|&&s| s > tol && s > 0.0).count()
    }

    fn nullspace(m: &Matrix<f64>) -> Vec<Vec<f64>> {
        let c = m.cols;
        if m.rows == 0 {
            return (0..c).map(|i| unit(c, i)).collect();
        }
        if c == 0 {
            return Vec::new();
        }
        let a = m.to_nalgebra();
        let tol = RANK_RTOL * max_col_norm(&a);
        let (_, s, vt) = full_svd(&a);
        (0..c)
            .filter(|&k| k >= s.len() || !(s[k] > tol && s[k] > 0.0))
            .map(|k| vt.row(k).iter().cloned().collect())
            .collect()
    }

    fn solve(m: &Matrix<f64>, b: &[f64]) -> Solution<f64> {
        let ls = lstsq(m, b);
        Solution { consistent: None, x: ls.x, rank: ls.rank }
    }

    fn is_positive_definite(m: &Matrix<f64>) -> bool {
        m.to_nalgebra().cholesky().is_some()
    }
}

/// Positive definiteness of a symmetric matrix.
pub fn is_positive_definite<S: Field>(m: &Matrix<S>) -> bool {
    S::is_positive_definite(m)
}

fn exact_positive_definite(m: &Matrix<Q>) -> bool {
    let mut a = m.clone();
    let n = a.rows;
    for k in 0..n {
        let p = a[(k, k)].clone();
        if !num::Signed::is_positive(&p) {
            return false;
        }
        for i in k + 1..n {
            let f = a[(i, k)].clone() / p.clone();
            if f.is_zero() {
                continue;
            }
            for j in k..n {
                let v = a[(i, j)].clone() - f.clone() * a[(k, j)].clone();
                a[(i, j)] = v;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qi};

    #[test]
    fn exact_nullspace_and_solve() {
        let m = Matrix::from_rows(&[vec![qi(1), qi(2), qi(3)], vec![qi(2), qi(4), qi(6)]]);
        assert_eq!(Q::rank(&m), 1);
        let ns = Q::nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(is_zero_vec(&m.mul_vec(v)));
        }
        let s = Q::solve(&m, &[qi(1), qi(2)]);
        assert_eq!(s.consistent, Some(true));
        assert_eq!(m.mul_vec(&s.x), vec![qi(1), qi(2)]);
        let s = Q::solve(&m, &[qi(1), qi(3)]);
        assert_eq!(s.consistent, Some(false));
    }

    #[test]
    fn float_matches_exact_rank() {
        let m = Matrix::from_rows(&[vec![q(1, 3), q(2, 7), qi(0)], vec![qi(1), qi(1), qi(1)]]);
        assert_eq!(Q::rank(&m), f64::rank(&m.to_f64()));
        let ns = f64::nullspace(&m.to_f64());
        assert_eq!(ns.len(), 1);
        let r = m.to_f64().mul_vec(&ns[0]);
        assert!(r.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn lstsq_residual() {
        let m = Matrix::from_rows(&[vec![1.0], vec![1.0]]);
        let ls = lstsq(&m, &[1.0, 3.0]);
        assert!((ls.x[0] - 2.0).abs() < 1e-12);
        assert!((ls.residual[0] - 1.0).abs() < 1e-12);
        assert_eq!(ls.rank, 1);
    }

    #[test]
    fn definiteness() {
        let m = Matrix::from_rows(&[vec![qi(2), qi(1)], vec![qi(1), qi(2)]]);
        assert!(is_positive_definite(&m));
        let m = Matrix::from_rows(&[vec![qi(1), qi(2)], vec![qi(2), qi(1)]]);
        assert!(!is_positive_definite(&m));
        assert!(!is_positive_definite(&m.to_f64()));
    }
}

//! Small dense linear algebra: row-major matrices, one-sided Jacobi SVD,
//! and the matrix exponential / logarithm used for exponential coordinates.
//!
//! Everything here targets the desk-scale dimensions of the algebra layer
//! (tens of rows), so there is no blocking or BLAS dispatch.

use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::scalar::{lit, Scalar};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Scalar> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from a row-major buffer. Returns `None` on a length mismatch.
    pub fn from_row_slice(rows: usize, cols: usize, data: &[T]) -> Option<Self> {
        (data.len() == rows * cols).then(|| Self { rows, cols, data: data.to_vec() })
    }

    /// Builds a matrix from nested rows. Returns `None` if the rows are ragged.
    pub fn from_rows(rows: &[Vec<T>]) -> Option<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return None;
        }
        Some(Self { rows: rows.len(), cols, data: rows.concat() })
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<T>]) -> Self {
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn from_f64(other: &Matrix<f64>) -> Self {
        Self { rows: other.rows, cols: other.cols, data: other.data.iter().map(|&x| lit(x)).collect() }
    }

    pub fn to_f64(&self) -> Matrix<f64> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.as_f64()).collect() }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn scale(&self, s: T) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&x| x * s).collect() }
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(&a, &b)| a * b).sum())
            .collect()
    }

    /// `A B - B A`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |m, x| m.max(x.abs()))
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&x| x * x).sum::<T>().sqrt()
    }

    /// Induced 1-norm (maximum absolute column sum).
    pub fn norm_1(&self) -> T {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self[(i, j)].abs()).sum::<T>())
            .fold(T::zero(), T::max)
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let mut out = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = self[(i, j)];
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out[(self.rows + i, self.cols + j)] = other[(i, j)];
            }
        }
        out
    }

    /// Copies out the `rows × cols` block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Gauss–Jordan inverse with partial pivoting. `None` if numerically singular.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        let scale = self.max_abs().max(T::min_positive_value());
        for col in 0..n {
            let pivot = (col..n).max_by(|&r, &s| {
                a[(r, col)].abs().partial_cmp(&a[(s, col)].abs()).unwrap_or(std::cmp::Ordering::Equal)
            })?;
            if a[(pivot, col)].abs() <= T::epsilon() * scale {
                return None;
            }
            if pivot != col {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = a[(col, col)];
            for j in 0..n {
                a[(col, j)] = a[(col, j)] / p;
                inv[(col, j)] = inv[(col, j)] / p;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a[(r, col)];
                if f == T::zero() {
                    continue;
                }
                for j in 0..n {
                    a[(r, j)] = a[(r, j)] - f * a[(col, j)];
                    inv[(r, j)] = inv[(r, j)] - f * inv[(col, j)];
                }
            }
        }
        Some(inv)
    }

    fn swap_rows(&mut self, r: usize, s: usize) {
        for j in 0..self.cols {
            self.data.swap(r * self.cols + j, s * self.cols + j);
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.cols + j]
    }
}

impl<T: Scalar> Mul for &Matrix<T> {
    type Output = Matrix<T>;
    fn mul(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == T::zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = out[(i, j)] + a * rhs[(k, j)];
                }
            }
        }
        out
    }
}

impl<T: Scalar> Add for &Matrix<T> {
    type Output = Matrix<T>;
    fn add(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a + b).collect(),
        }
    }
}

impl<T: Scalar> Sub for &Matrix<T> {
    type Output = Matrix<T>;
    fn sub(self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape mismatch");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| a - b).collect(),
        }
    }
}

impl<T: Scalar> Neg for &Matrix<T> {
    type Output = Matrix<T>;
    fn neg(self) -> Matrix<T> {
        self.scale(-T::one())
    }
}

// ---------------------------------------------------------------------------
// vector helpers

pub fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

pub fn norm<T: Scalar>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

pub fn max_abs_diff<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |m, (&x, &y)| m.max((x - y).abs()))
}

pub fn axpy<T: Scalar>(alpha: T, x: &[T], y: &[T]) -> Vec<T> {
    x.iter().zip(y).map(|(&a, &b)| alpha * a + b).collect()
}

pub fn scaled<T: Scalar>(alpha: T, x: &[T]) -> Vec<T> {
    x.iter().map(|&a| alpha * a).collect()
}

pub fn unit<T: Scalar>(n: usize, i: usize) -> Vec<T> {
    let mut v = vec![T::zero(); n];
    v[i] = T::one();
    v
}

// ---------------------------------------------------------------------------
// SVD

/// Thin singular value decomposition `A = U diag(σ) Vᵀ` from one-sided Jacobi.
///
/// `singular_values` has one entry per column of `A`, sorted descending;
/// `v` is the full `cols × cols` orthogonal factor. Columns of `u` that belong
/// to zero singular values are zero.
#[derive(Clone, Debug)]
pub struct Svd<T> {
    pub u: Matrix<T>,
    pub singular_values: Vec<T>,
    pub v: Matrix<T>,
}

impl<T: Scalar> Svd<T> {
    pub fn new(a: &Matrix<T>) -> Self {
        let (m, n) = a.shape();
        let mut w = a.clone();
        let mut v = Matrix::identity(n);
        let eps = T::epsilon();
        for _sweep in 0..100 {
            let mut rotated = false;
            for p in 0..n {
                for q in (p + 1)..n {
                    let (mut alpha, mut beta, mut gamma) = (T::zero(), T::zero(), T::zero());
                    for i in 0..m {
                        let (wp, wq) = (w[(i, p)], w[(i, q)]);
                        alpha = alpha + wp * wp;
                        beta = beta + wq * wq;
                        gamma = gamma + wp * wq;
                    }
                    if gamma == T::zero() || gamma.abs() <= eps * (alpha * beta).sqrt() {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (lit::<T>(2.0) * gamma);
                    let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                    let c = T::one() / (T::one() + t * t).sqrt();
                    let s = c * t;
                    for i in 0..m {
                        let (wp, wq) = (w[(i, p)], w[(i, q)]);
                        w[(i, p)] = c * wp - s * wq;
                        w[(i, q)] = s * wp + c * wq;
                    }
                    for i in 0..n {
                        let (vp, vq) = (v[(i, p)], v[(i, q)]);
                        v[(i, p)] = c * vp - s * vq;
                        v[(i, q)] = s * vp + c * vq;
                    }
                }
            }
            if !rotated {
                break;
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        let norms: Vec<T> = (0..n).map(|j| norm(&w.column(j))).collect();
        order.sort_by(|&a, &b| norms[b].partial_cmp(&norms[a]).unwrap_or(std::cmp::Ordering::Equal));

        let singular_values: Vec<T> = order.iter().map(|&j| norms[j]).collect();
        let u = Matrix::from_fn(m, n, |i, k| {
            let j = order[k];
            if norms[j] > T::zero() {
                w[(i, j)] / norms[j]
            } else {
                T::zero()
            }
        });
        let v = Matrix::from_fn(n, n, |i, k| v[(i, order[k])]);
        Self { u, singular_values, v }
    }

    pub fn max_singular_value(&self) -> T {
        self.singular_values.first().copied().unwrap_or_else(T::zero)
    }

    /// Number of singular values above `rel_tol · σ_max`.
    pub fn rank(&self, rel_tol: T) -> usize {
        let cut = rel_tol * self.max_singular_value();
        if self.max_singular_value() == T::zero() {
            return 0;
        }
        self.singular_values.iter().filter(|&&s| s > cut).count()
    }

    /// Right singular vectors spanning the numerical kernel.
    pub fn kernel(&self, rel_tol: T) -> Vec<Vec<T>> {
        let r = self.rank(rel_tol);
        (r..self.v.cols()).map(|k| self.v.column(k)).collect()
    }

    /// Orthonormal basis of the column space (left singular vectors of the retained values).
    pub fn range(&self, rel_tol: T) -> Vec<Vec<T>> {
        let r = self.rank(rel_tol);
        (0..r).map(|k| self.u.column(k)).collect()
    }

    /// Moore–Penrose pseudo-inverse with the given relative cutoff.
    pub fn pseudo_inverse(&self, rel_tol: T) -> Matrix<T> {
        let r = self.rank(rel_tol);
        let (m, n) = (self.u.rows(), self.v.rows());
        Matrix::from_fn(n, m, |i, j| {
            (0..r).map(|k| self.v[(i, k)] * self.u[(j, k)] / self.singular_values[k]).sum()
        })
    }
}

/// Orthonormal basis for `span(vectors)` (each of length `dim`).
pub fn orthonormal_basis<T: Scalar>(dim: usize, vectors: &[Vec<T>], rel_tol: T) -> Vec<Vec<T>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    Svd::new(&Matrix::from_columns(dim, vectors)).range(rel_tol)
}

/// Distance from `x` to the span of the orthonormal vectors `q`.
pub fn projection_residual<T: Scalar>(q: &[Vec<T>], x: &[T]) -> T {
    let mut r = x.to_vec();
    for qi in q {
        let c = dot(qi, x);
        for (rk, &qk) in r.iter_mut().zip(qi) {
            *rk = *rk - c * qk;
        }
    }
    norm(&r)
}

// ---------------------------------------------------------------------------
// exponential and logarithm

/// Failure of the principal matrix logarithm.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum LogError {
    #[error("matrix logarithm requires a square matrix")]
    NotSquare,
    #[error("square-root iteration did not converge (eigenvalue near the negative real axis?)")]
    SqrtDiverged,
    #[error("matrix not within the logarithm domain after {0} square roots")]
    OutOfDomain(usize),
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
///
/// The series is evaluated on `A / 2^s` with `‖A/2^s‖₁ ≤ 1/2` and truncated once
/// the term norm falls below machine epsilon, which keeps the truncation error
/// far beneath 1e-14 in double precision.
pub fn expm<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    assert!(a.is_square(), "expm requires a square matrix");
    let n = a.rows();
    let norm = a.norm_1();
    let mut squarings = 0u32;
    if norm > lit(0.5) {
        squarings = (norm / lit(0.5)).log2().ceil().to_u32().unwrap_or(0);
    }
    let scaled = a.scale(T::one() / lit::<T>(2.0).powi(squarings as i32));

    let mut result = Matrix::identity(n);
    let mut term = Matrix::identity(n);
    for k in 1..=40 {
        term = (&term * &scaled).scale(T::one() / lit::<T>(k as f64));
        result = &result + &term;
        if term.norm_1() <= T::epsilon() * result.norm_1() {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Principal square root by the Denman–Beavers iteration.
pub fn sqrtm<T: Scalar>(a: &Matrix<T>) -> Result<Matrix<T>, LogError> {
    if !a.is_square() {
        return Err(LogError::NotSquare);
    }
    let half = lit::<T>(0.5);
    let mut y = a.clone();
    let mut z = Matrix::identity(a.rows());
    for _ in 0..60 {
        let y_inv = y.inverse().ok_or(LogError::SqrtDiverged)?;
        let z_inv = z.inverse().ok_or(LogError::SqrtDiverged)?;
        let y_next = (&y + &z_inv).scale(half);
        let z_next = (&z + &y_inv).scale(half);
        let change = (&y_next - &y).norm_1();
        y = y_next;
        z = z_next;
        if !change.is_finite() {
            return Err(LogError::SqrtDiverged);
        }
        if change <= lit::<T>(10.0) * T::epsilon() * y.norm_1() {
            return Ok(y);
        }
    }
    Err(LogError::SqrtDiverged)
}

/// Principal matrix logarithm by inverse scaling and squaring.
///
/// Square roots are taken until `‖M − I‖₁ ≤ 1/4`, then the Mercator series is
/// summed and the result rescaled by `2^k`. Matrices still outside the domain
/// after 40 roots are rejected.
pub fn logm<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>, LogError> {
    if !m.is_square() {
        return Err(LogError::NotSquare);
    }
    let n = m.rows();
    let id = Matrix::identity(n);
    let mut x = m.clone();
    let mut roots = 0usize;
    while (&x - &id).norm_1() > lit(0.25) {
        if roots >= 40 {
            return Err(LogError::OutOfDomain(roots));
        }
        x = sqrtm(&x)?;
        roots += 1;
    }
    let e = &x - &id;
    let mut power = e.clone();
    let mut result = e.clone();
    for k in 2..=200 {
        power = &power * &e;
        let sign = if k % 2 == 0 { -T::one() } else { T::one() };
        let term = power.scale(sign / lit::<T>(k as f64));
        result = &result + &term;
        if term.norm_1() <= T::epsilon() * result.norm_1().max(T::min_positive_value()) {
            break;
        }
    }
    Ok(result.scale(lit::<T>(2.0).powi(roots as i32)))
}

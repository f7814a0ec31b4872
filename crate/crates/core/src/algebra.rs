//! Lie algebras, Lie-algebra modules and Leibniz algebras in structure-constant
//! form, with toleranced axiom checkers.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Svd};
use crate::report::ValidityReport;
use crate::scalar::{lit, Scalar};

/// Default absolute tolerance: `1e-9`, raised for low-precision scalars.
pub fn default_tolerance<T: Scalar>() -> T {
    lit::<T>(1e-9).max(lit::<T>(1000.0) * T::epsilon())
}

/// Structure constants `[e_i, e_j] = Σ_k C[i][j][k] e_k`, stored densely.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LieAlgebraData<T> {
    dim: usize,
    labels: Vec<String>,
    constants: Vec<T>,
}

impl<T: Scalar> LieAlgebraData<T> {
    /// Builds from a flat `n³` buffer in `[i][j][k]` order.
    pub fn new(labels: Vec<String>, constants: Vec<T>) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::shape("Lie algebra dimension must be positive"));
        }
        if constants.len() != dim * dim * dim {
            return Err(Error::shape(format!(
                "structure constants have {} entries, expected {}",
                constants.len(),
                dim * dim * dim
            )));
        }
        Ok(Self { dim, labels, constants })
    }

    /// Builds from sparse `(i, j, k, value)` entries; unlisted entries are zero.
    /// Entries are taken literally, antisymmetry is not filled in.
    pub fn from_entries(labels: Vec<String>, entries: &[(usize, usize, usize, T)]) -> Result<Self> {
        let n = labels.len();
        let mut c = vec![T::zero(); n * n * n];
        for &(i, j, k, v) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::shape(format!("structure constant index ({i},{j},{k}) out of range for dim {n}")));
            }
            c[(i * n + j) * n + k] = v;
        }
        Self::new(labels, c)
    }

    /// Builds from brackets `[e_i, e_j] = Σ value·e_k` with `i < j`, filling in
    /// the antisymmetric partner.
    pub fn from_brackets(labels: &[&str], brackets: &[(usize, usize, usize, f64)]) -> Result<Self> {
        let n = labels.len();
        let mut c = vec![T::zero(); n * n * n];
        for &(i, j, k, v) in brackets {
            if i >= n || j >= n || k >= n {
                return Err(Error::shape(format!("bracket index ({i},{j},{k}) out of range for dim {n}")));
            }
            c[(i * n + j) * n + k] = c[(i * n + j) * n + k] + lit(v);
            c[(j * n + i) * n + k] = c[(j * n + i) * n + k] - lit(v);
        }
        Self::new(labels.iter().map(|s| s.to_string()).collect(), c)
    }

    /// Derives structure constants from a linearly independent family of
    /// matrices closed under commutators.
    pub fn from_matrix_basis(labels: &[&str], basis: &[Matrix<T>]) -> Result<Self> {
        let n = basis.len();
        if labels.len() != n || n == 0 {
            return Err(Error::shape("one label per basis matrix required"));
        }
        let m = basis[0].rows();
        let flat: Vec<Vec<T>> = basis.iter().map(|b| b.as_slice().to_vec()).collect();
        let stack = Matrix::from_columns(m * m, &flat);
        let svd = Svd::new(&stack);
        if svd.rank(default_tolerance()) < n {
            return Err(Error::shape("basis matrices are linearly dependent"));
        }
        let pinv = svd.pseudo_inverse(default_tolerance());
        let mut c = vec![T::zero(); n * n * n];
        for i in 0..n {
            for j in 0..n {
                let coeffs = pinv.mul_vec(basis[i].commutator(&basis[j]).as_slice());
                for k in 0..n {
                    c[(i * n + j) * n + k] = coeffs[k];
                }
            }
        }
        Self::new(labels.iter().map(|s| s.to_string()).collect(), c)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn constants(&self) -> &[T] {
        &self.constants
    }

    #[inline]
    pub fn c(&self, i: usize, j: usize, k: usize) -> T {
        self.constants[(i * self.dim + j) * self.dim + k]
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.dim;
        let mut out = vec![T::zero(); n];
        for i in 0..n {
            if x[i] == T::zero() {
                continue;
            }
            for j in 0..n {
                let w = x[i] * y[j];
                if w == T::zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = *o + w * self.c(i, j, k);
                }
            }
        }
        out
    }

    /// `ad_x` as an `n×n` matrix acting on coordinate columns.
    pub fn ad(&self, x: &[T]) -> Matrix<T> {
        let n = self.dim;
        Matrix::from_fn(n, n, |k, j| (0..n).map(|i| x[i] * self.c(i, j, k)).sum())
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<T> {
        let n = self.dim;
        Matrix::from_fn(n, n, |k, j| self.c(i, j, k))
    }

    /// The adjoint module `(e_i)·v = [e_i, v]`.
    pub fn adjoint_action(&self) -> ModuleAction<T> {
        ModuleAction {
            algebra: self.clone(),
            dim_v: self.dim,
            matrices: (0..self.dim).map(|i| self.ad_basis(i)).collect(),
        }
    }

    /// Basis of the center, the common kernel of all `ad_{e_i}`.
    pub fn center(&self, tol: T) -> SubspaceBasis<T> {
        let n = self.dim;
        let stacked = Matrix::from_fn(n * n, n, |r, j| {
            let (i, k) = (r / n, r % n);
            self.c(i, j, k)
        });
        SubspaceBasis::from_orthonormal(n, kernel_of(&stacked, tol))
    }

    pub fn scaled(&self, s: T) -> Self {
        Self {
            dim: self.dim,
            labels: self.labels.clone(),
            constants: self.constants.iter().map(|&c| c * s).collect(),
        }
    }

    /// The same tensor read as a Leibniz bracket.
    pub fn as_leibniz(&self) -> LeibnizAlgebraData<T> {
        LeibnizAlgebraData { dim: self.dim, tensor: self.constants.clone() }
    }
}

/// Kernel of a matrix via singular values below `tol · max(σ_max, 1)`.
pub(crate) fn kernel_of<T: Scalar>(m: &Matrix<T>, tol: T) -> Vec<Vec<T>> {
    let svd = Svd::new(m);
    let cutoff = tol * svd.max_singular_value().max(T::one());
    let r = svd.singular_values.iter().filter(|&&s| s > cutoff).count();
    (r..svd.v.cols()).map(|k| svd.v.column(k)).collect()
}

/// Antisymmetry and Jacobi residuals of a structure-constant tensor.
pub fn check_lie_algebra<T: Scalar>(alg: &LieAlgebraData<T>, tol: T) -> ValidityReport<T> {
    let n = alg.dim;
    let mut report = ValidityReport::new(tol);
    report.declare("antisymmetry");
    report.declare("jacobi");
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                report.record("antisymmetry", &[i, j, k], (alg.c(i, j, k) + alg.c(j, i, k)).abs());
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let r: T = (0..n)
                        .map(|m| {
                            alg.c(i, j, m) * alg.c(m, k, l)
                                + alg.c(j, k, m) * alg.c(m, i, l)
                                + alg.c(k, i, m) * alg.c(m, j, l)
                        })
                        .sum();
                    report.record("jacobi", &[i, j, k, l], r.abs());
                }
            }
        }
    }
    report
}

/// Action of a Lie algebra on `ℝ^d`: `(e_i)·v = A_i v`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ModuleAction<T> {
    algebra: LieAlgebraData<T>,
    dim_v: usize,
    matrices: Vec<Matrix<T>>,
}

impl<T: Scalar> ModuleAction<T> {
    pub fn new(algebra: &LieAlgebraData<T>, dim_v: usize, matrices: Vec<Matrix<T>>) -> Result<Self> {
        if matrices.len() != algebra.dim() {
            return Err(Error::shape(format!(
                "{} action matrices for an algebra of dimension {}",
                matrices.len(),
                algebra.dim()
            )));
        }
        if let Some((i, m)) = matrices.iter().enumerate().find(|(_, m)| m.shape() != (dim_v, dim_v)) {
            return Err(Error::shape(format!(
                "action matrix {i} has shape {:?}, expected ({dim_v}, {dim_v})",
                m.shape()
            )));
        }
        Ok(Self { algebra: algebra.clone(), dim_v, matrices })
    }

    /// The zero action on `ℝ^d`.
    pub fn trivial(algebra: &LieAlgebraData<T>, dim_v: usize) -> Self {
        Self { algebra: algebra.clone(), dim_v, matrices: vec![Matrix::zeros(dim_v, dim_v); algebra.dim()] }
    }

    pub fn algebra(&self) -> &LieAlgebraData<T> {
        &self.algebra
    }

    #[inline]
    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn matrices(&self) -> &[Matrix<T>] {
        &self.matrices
    }

    /// `Σ a_i A_i`.
    pub fn matrix_of(&self, a: &[T]) -> Matrix<T> {
        let mut out = Matrix::zeros(self.dim_v, self.dim_v);
        for (ai, m) in a.iter().zip(&self.matrices) {
            if *ai != T::zero() {
                out = &out + &m.scale(*ai);
            }
        }
        out
    }

    pub fn act(&self, a: &[T], v: &[T]) -> Vec<T> {
        self.matrix_of(a).mul_vec(v)
    }
}

/// Homomorphism defect `Σ_k C[i][j][k] A_k − [A_i, A_j]` over basis pairs.
pub fn check_module<T: Scalar>(act: &ModuleAction<T>, tol: T) -> ValidityReport<T> {
    let alg = &act.algebra;
    let n = alg.dim();
    let mut report = ValidityReport::new(tol);
    report.declare("homomorphism");
    for i in 0..n {
        for j in 0..n {
            let structure: Vec<T> = (0..n).map(|k| alg.c(i, j, k)).collect();
            let lhs = act.matrix_of(&structure);
            let rhs = act.matrices[i].commutator(&act.matrices[j]);
            report.record("homomorphism", &[i, j], (&lhs - &rhs).max_abs());
        }
    }
    report
}

/// Bilinear bracket `[e_i, e_j] = Σ_k B[i][j][k] e_k` on `ℝ^d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LeibnizAlgebraData<T> {
    dim: usize,
    tensor: Vec<T>,
}

impl<T: Scalar> LeibnizAlgebraData<T> {
    pub fn new(dim: usize, tensor: Vec<T>) -> Result<Self> {
        if tensor.len() != dim * dim * dim {
            return Err(Error::shape(format!(
                "bracket tensor has {} entries, expected {}",
                tensor.len(),
                dim * dim * dim
            )));
        }
        Ok(Self { dim, tensor })
    }

    pub fn from_entries(dim: usize, entries: &[(usize, usize, usize, T)]) -> Result<Self> {
        let mut t = vec![T::zero(); dim * dim * dim];
        for &(i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::shape(format!("bracket index ({i},{j},{k}) out of range for dim {dim}")));
            }
            t[(i * dim + j) * dim + k] = v;
        }
        Self::new(dim, t)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn tensor(&self) -> &[T] {
        &self.tensor
    }

    #[inline]
    pub fn b(&self, i: usize, j: usize, k: usize) -> T {
        self.tensor[(i * self.dim + j) * self.dim + k]
    }

    pub fn bracket(&self, u: &[T], v: &[T]) -> Vec<T> {
        let d = self.dim;
        let mut out = vec![T::zero(); d];
        for i in 0..d {
            for j in 0..d {
                let w = u[i] * v[j];
                if w == T::zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o = *o + w * self.b(i, j, k);
                }
            }
        }
        out
    }
}

/// Leibniz identity `[u,[v,w]] = [[u,v],w] + [v,[u,w]]` over basis triples,
/// plus an informational `antisymmetric` flag.
pub fn check_leibniz<T: Scalar>(leib: &LeibnizAlgebraData<T>, tol: T) -> ValidityReport<T> {
    let d = leib.dim;
    let mut report = ValidityReport::new(tol);
    report.declare("leibniz");
    let basis: Vec<Vec<T>> = (0..d).map(|i| linalg::unit(d, i)).collect();
    for i in 0..d {
        for j in 0..d {
            let uv = leib.bracket(&basis[i], &basis[j]);
            for k in 0..d {
                let lhs = leib.bracket(&basis[i], &leib.bracket(&basis[j], &basis[k]));
                let r1 = leib.bracket(&uv, &basis[k]);
                let r2 = leib.bracket(&basis[j], &leib.bracket(&basis[i], &basis[k]));
                let res = (0..d).fold(T::zero(), |m, c| m.max((lhs[c] - r1[c] - r2[c]).abs()));
                report.record("leibniz", &[i, j, k], res);
            }
        }
    }
    let antisymmetric = (0..d)
        .all(|i| (0..d).all(|j| (0..d).all(|k| (leib.b(i, j, k) + leib.b(j, i, k)).abs() <= tol)));
    report.flag("antisymmetric", antisymmetric);
    report
}

/// Linearly independent vectors spanning a subspace of `ℝ^ambient_dim`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubspaceBasis<T> {
    ambient_dim: usize,
    vectors: Vec<Vec<T>>,
}

impl<T: Scalar> SubspaceBasis<T> {
    /// Validates lengths and linear independence.
    pub fn new(ambient_dim: usize, vectors: Vec<Vec<T>>) -> Result<Self> {
        if let Some(v) = vectors.iter().find(|v| v.len() != ambient_dim) {
            return Err(Error::shape(format!("basis vector of length {} in ambient dimension {ambient_dim}", v.len())));
        }
        if !vectors.is_empty() {
            let rank = Svd::new(&Matrix::from_columns(ambient_dim, &vectors)).rank(default_tolerance());
            if rank < vectors.len() {
                return Err(Error::shape(format!(
                    "{} basis vectors span only a {rank}-dimensional space",
                    vectors.len()
                )));
            }
        }
        Ok(Self { ambient_dim, vectors })
    }

    /// Orthonormal basis of the span of arbitrary (possibly dependent) vectors.
    pub fn span_of(ambient_dim: usize, vectors: &[Vec<T>], tol: T) -> Self {
        Self { ambient_dim, vectors: linalg::orthonormal_basis(ambient_dim, vectors, tol) }
    }

    pub(crate) fn from_orthonormal(ambient_dim: usize, vectors: Vec<Vec<T>>) -> Self {
        Self { ambient_dim, vectors }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self { ambient_dim, vectors: (0..ambient_dim).map(|i| linalg::unit(ambient_dim, i)).collect() }
    }

    #[inline]
    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<T>] {
        &self.vectors
    }

    pub fn orthonormal(&self) -> Vec<Vec<T>> {
        linalg::orthonormal_basis(self.ambient_dim, &self.vectors, default_tolerance())
    }

    /// Least-squares distance from `x` to the span.
    pub fn residual(&self, x: &[T]) -> T {
        linalg::projection_residual(&self.orthonormal(), x)
    }

    pub fn contains(&self, x: &[T], tol: T) -> bool {
        self.residual(x) <= tol
    }

    /// Orthogonal projection of `x` onto the span.
    pub fn project(&self, x: &[T]) -> Vec<T> {
        let q = self.orthonormal();
        let mut out = vec![T::zero(); self.ambient_dim];
        for qi in &q {
            let c = linalg::dot(qi, x);
            out = linalg::axpy(c, qi, &out);
        }
        out
    }
}

/// Worst projection residual of `[b_p, b_q]` onto `span(sub)` over all basis pairs.
pub fn bracket_closure_residual<T: Scalar>(alg: &LieAlgebraData<T>, sub: &SubspaceBasis<T>) -> Result<T> {
    if sub.ambient_dim() != alg.dim() {
        return Err(Error::shape(format!(
            "subspace lives in dimension {}, algebra has dimension {}",
            sub.ambient_dim(),
            alg.dim()
        )));
    }
    let q = sub.orthonormal();
    let vs = sub.vectors();
    let mut worst = T::zero();
    for p in 0..vs.len() {
        for r in p..vs.len() {
            let b = alg.bracket(&vs[p], &vs[r]);
            worst = worst.max(linalg::projection_residual(&q, &b));
        }
    }
    Ok(worst)
}

/// True iff `span(sub)` is closed under the bracket within `tol`.
/// An empty basis is the zero subalgebra.
pub fn bracket_closure_check<T: Scalar>(alg: &LieAlgebraData<T>, sub: &SubspaceBasis<T>, tol: T) -> Result<bool> {
    Ok(bracket_closure_residual(alg, sub)? <= tol)
}

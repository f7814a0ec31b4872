//! Embedding tensors and Lie-Leibniz triples: construction and constraint
//! checks, the strictness defect `aθ`, relaxed augmentations, morphisms and
//! Lie-algebra crossed modules.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{
    bracket_closure_residual, check_leibniz, check_lie_algebra, check_module, kernel_of, LeibnizAlgebraData,
    LieAlgebraData, ModuleAction, SubspaceBasis,
};
use crate::catalog::{self, CatalogAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Svd};
use crate::report::ValidityReport;
use crate::scalar::{lit, Scalar};

/// `θ: V → 𝔤` as an `n × d` matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EmbeddingTensor<T> {
    matrix: Matrix<T>,
}

impl<T: Scalar> EmbeddingTensor<T> {
    pub fn new(matrix: Matrix<T>) -> Self {
        Self { matrix }
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        self.matrix.mul_vec(v)
    }
}

/// Unvalidated `(𝔤, V, θ)`; [`TripleComponents::build`] turns it into a triple.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TripleComponents<T> {
    pub algebra: LieAlgebraData<T>,
    pub action: ModuleAction<T>,
    pub theta: Matrix<T>,
}

impl<T: Scalar> TripleComponents<T> {
    pub fn new(algebra: LieAlgebraData<T>, action: ModuleAction<T>, theta: Matrix<T>) -> Self {
        Self { algebra, action, theta }
    }

    /// Runs every check without building. `Err` only for shape problems.
    pub fn check(&self, tol: T) -> Result<ValidityReport<T>> {
        check_components(&self.algebra, &self.action, &self.theta, tol)
    }

    pub fn build(&self, tol: T) -> Result<LieLeibnizTriple<T>> {
        build_triple(&self.algebra, &self.action, &self.theta, tol)
    }
}

/// A validated Lie-Leibniz triple with its cached derived bracket `[u,v] = θ(u)·v`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LieLeibnizTriple<T> {
    algebra: LieAlgebraData<T>,
    action: ModuleAction<T>,
    theta: EmbeddingTensor<T>,
    derived_bracket: LeibnizAlgebraData<T>,
}

fn check_shapes<T: Scalar>(alg: &LieAlgebraData<T>, action: &ModuleAction<T>, theta: &Matrix<T>) -> Result<()> {
    if action.algebra().dim() != alg.dim() {
        return Err(Error::shape(format!(
            "module is over an algebra of dimension {}, triple algebra has dimension {}",
            action.algebra().dim(),
            alg.dim()
        )));
    }
    if theta.shape() != (alg.dim(), action.dim_v()) {
        return Err(Error::shape(format!(
            "embedding tensor has shape {:?}, expected ({}, {})",
            theta.shape(),
            alg.dim(),
            action.dim_v()
        )));
    }
    Ok(())
}

fn derived_bracket_of<T: Scalar>(action: &ModuleAction<T>, theta: &Matrix<T>) -> LeibnizAlgebraData<T> {
    let d = action.dim_v();
    let mut tensor = vec![T::zero(); d * d * d];
    for i in 0..d {
        let a = action.matrix_of(&theta.column(i));
        for j in 0..d {
            for k in 0..d {
                tensor[(i * d + j) * d + k] = a[(k, j)];
            }
        }
    }
    LeibnizAlgebraData::new(d, tensor).expect("tensor sized d³")
}

fn check_components<T: Scalar>(
    alg: &LieAlgebraData<T>,
    action: &ModuleAction<T>,
    theta: &Matrix<T>,
    tol: T,
) -> Result<ValidityReport<T>> {
    check_shapes(alg, action, theta)?;
    let mut report = ValidityReport::new(tol);
    report.absorb("lie_algebra", &check_lie_algebra(alg, tol));
    let module = ModuleAction::new(alg, action.dim_v(), action.matrices().to_vec())?;
    report.absorb("module", &check_module(&module, tol));

    let d = action.dim_v();
    let n = alg.dim();
    let derived = derived_bracket_of(action, theta);
    let theta_cols: Vec<Vec<T>> = (0..d).map(|i| theta.column(i)).collect();

    report.declare("linear_constraint");
    report.declare("quadratic_constraint");
    for i in 0..d {
        for j in 0..d {
            let uv = derived.bracket(&linalg::unit(d, i), &linalg::unit(d, j));
            let expected = action.act(&theta_cols[i], &linalg::unit(d, j));
            report.record("linear_constraint", &[i, j], linalg::max_abs_diff(&uv, &expected));
            let lhs = theta.mul_vec(&uv);
            let rhs = alg.bracket(&theta_cols[i], &theta_cols[j]);
            report.record("quadratic_constraint", &[i, j], linalg::max_abs_diff(&lhs, &rhs));
        }
    }
    report.absorb("derived", &check_leibniz(&derived, tol));

    let image = SubspaceBasis::span_of(n, &theta_cols, tol);
    let closure = bracket_closure_residual(alg, &image)?;
    report.record_derived("image_subalgebra", &[], closure);
    Ok(report)
}

/// Builds a triple, verifying the component axioms, the quadratic constraint
/// `θ[u,v] = [θu, θv]` and the Leibniz identity of the derived bracket.
pub fn build_triple<T: Scalar>(
    alg: &LieAlgebraData<T>,
    action: &ModuleAction<T>,
    theta: &Matrix<T>,
    tol: T,
) -> Result<LieLeibnizTriple<T>> {
    let report = check_components(alg, action, theta, tol)?;
    if let Some(fail) = report.first_failure() {
        return Err(Error::Axiom { law: fail.name.clone(), residual: fail.max_residual.as_f64() });
    }
    Ok(LieLeibnizTriple {
        algebra: alg.clone(),
        action: ModuleAction::new(alg, action.dim_v(), action.matrices().to_vec())?,
        theta: EmbeddingTensor::new(theta.clone()),
        derived_bracket: derived_bracket_of(action, theta),
    })
}

impl<T: Scalar> LieLeibnizTriple<T> {
    pub fn algebra(&self) -> &LieAlgebraData<T> {
        &self.algebra
    }

    pub fn action(&self) -> &ModuleAction<T> {
        &self.action
    }

    pub fn theta(&self) -> &EmbeddingTensor<T> {
        &self.theta
    }

    pub fn derived_bracket(&self) -> &LeibnizAlgebraData<T> {
        &self.derived_bracket
    }

    #[inline]
    pub fn dim_g(&self) -> usize {
        self.algebra.dim()
    }

    #[inline]
    pub fn dim_v(&self) -> usize {
        self.action.dim_v()
    }

    pub fn components(&self) -> TripleComponents<T> {
        TripleComponents::new(self.algebra.clone(), self.action.clone(), self.theta.matrix.clone())
    }

    /// Orthonormal basis of `Im(θ)`.
    pub fn image(&self, tol: T) -> SubspaceBasis<T> {
        let cols: Vec<Vec<T>> = (0..self.dim_v()).map(|i| self.theta.matrix.column(i)).collect();
        SubspaceBasis::span_of(self.dim_g(), &cols, tol)
    }

    /// Orthonormal basis of `Ker(θ)`.
    pub fn kernel(&self, tol: T) -> SubspaceBasis<T> {
        SubspaceBasis::span_of(self.dim_v(), &kernel_of(&self.theta.matrix, tol), tol)
    }
}

/// The defect `aθ: v ↦ [a, θ(v)] − θ(a·v)` as an `n × d` matrix.
pub fn a_theta<T: Scalar>(triple: &LieLeibnizTriple<T>, a: &[T]) -> Matrix<T> {
    let (n, d) = (triple.dim_g(), triple.dim_v());
    let theta = triple.theta.matrix();
    let acted = triple.action.matrix_of(a);
    let mut out = Matrix::zeros(n, d);
    for j in 0..d {
        let tv = theta.column(j);
        let lhs = triple.algebra.bracket(a, &tv);
        let rhs = theta.mul_vec(&acted.column(j));
        for i in 0..n {
            out[(i, j)] = lhs[i] - rhs[i];
        }
    }
    out
}

/// True iff `aθ` vanishes (max-norm ≤ `tol`) for every basis vector of `𝔤`.
pub fn is_strict<T: Scalar>(triple: &LieLeibnizTriple<T>, tol: T) -> bool {
    (0..triple.dim_g()).all(|i| a_theta(triple, &linalg::unit(triple.dim_g(), i)).max_abs() <= tol)
}

/// `𝔥_max = { a ∈ 𝔤 : aθ = 0 }`, the kernel of `a ↦ aθ` by singular-value thresholding.
pub fn max_strictness_subalgebra<T: Scalar>(triple: &LieLeibnizTriple<T>, tol: T) -> SubspaceBasis<T> {
    let (n, d) = (triple.dim_g(), triple.dim_v());
    let columns: Vec<Vec<T>> =
        (0..n).map(|i| a_theta(triple, &linalg::unit(n, i)).as_slice().to_vec()).collect();
    let map = Matrix::from_columns(n * d, &columns);
    SubspaceBasis::from_orthonormal(n, kernel_of(&map, tol))
}

/// A triple together with a subalgebra `𝔥 ⊇ Im(θ)` on which `aθ = 0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelaxedAugmentation<T> {
    triple: LieLeibnizTriple<T>,
    h_basis: SubspaceBasis<T>,
}

impl<T: Scalar> RelaxedAugmentation<T> {
    pub fn check(triple: &LieLeibnizTriple<T>, h_basis: &SubspaceBasis<T>, tol: T) -> Result<ValidityReport<T>> {
        if h_basis.ambient_dim() != triple.dim_g() {
            return Err(Error::shape(format!(
                "h basis lives in dimension {}, algebra has dimension {}",
                h_basis.ambient_dim(),
                triple.dim_g()
            )));
        }
        let mut report = ValidityReport::new(tol);
        report.record("subalgebra", &[], bracket_closure_residual(triple.algebra(), h_basis)?);
        report.declare("contains_image");
        for j in 0..triple.dim_v() {
            report.record("contains_image", &[j], h_basis.residual(&triple.theta.matrix().column(j)));
        }
        report.declare("equivariance");
        for (k, a) in h_basis.vectors().iter().enumerate() {
            report.record("equivariance", &[k], a_theta(triple, a).max_abs());
        }
        Ok(report)
    }

    pub fn new(triple: LieLeibnizTriple<T>, h_basis: SubspaceBasis<T>, tol: T) -> Result<Self> {
        let report = Self::check(&triple, &h_basis, tol)?;
        if let Some(fail) = report.first_failure() {
            return Err(Error::Axiom { law: format!("relaxed augmentation: {}", fail.name), residual: fail.max_residual.as_f64() });
        }
        Ok(Self { triple, h_basis })
    }

    /// Uses `𝔥_max`.
    pub fn maximal(triple: LieLeibnizTriple<T>, tol: T) -> Result<Self> {
        let h = max_strictness_subalgebra(&triple, tol);
        Self::new(triple, h, tol)
    }

    pub fn triple(&self) -> &LieLeibnizTriple<T> {
        &self.triple
    }

    pub fn h_basis(&self) -> &SubspaceBasis<T> {
        &self.h_basis
    }

    /// The Leibniz bracket `[u, v] = θ(u)·v`.
    pub fn bracket(&self, u: &[T], v: &[T]) -> Vec<T> {
        self.triple.derived_bracket.bracket(u, v)
    }
}

/// `(φ, ψ)` between two triples.
#[derive(Clone, Debug)]
pub struct TripleMorphism<'a, T> {
    pub phi: Matrix<T>,
    pub psi: Matrix<T>,
    pub source: &'a LieLeibnizTriple<T>,
    pub target: &'a LieLeibnizTriple<T>,
}

impl<'a, T: Scalar> TripleMorphism<'a, T> {
    pub fn identity(triple: &'a LieLeibnizTriple<T>) -> Self {
        Self {
            phi: Matrix::identity(triple.dim_g()),
            psi: Matrix::identity(triple.dim_v()),
            source: triple,
            target: triple,
        }
    }
}

/// Checks that `φ` is a Lie morphism, `θ'ψ = φθ` and `ψ(a·v) = φ(a)·ψ(v)`.
/// The consequence `ψ[u,v] = [ψu, ψv]` is reported as the derived law `leibniz_morphism`.
pub fn check_morphism<T: Scalar>(m: &TripleMorphism<'_, T>, tol: T) -> Result<ValidityReport<T>> {
    let (src, dst) = (m.source, m.target);
    let (n, d, n2, d2) = (src.dim_g(), src.dim_v(), dst.dim_g(), dst.dim_v());
    if m.phi.shape() != (n2, n) || m.psi.shape() != (d2, d) {
        return Err(Error::shape(format!(
            "morphism shapes φ {:?}, ψ {:?}; expected ({n2}, {n}) and ({d2}, {d})",
            m.phi.shape(),
            m.psi.shape()
        )));
    }
    let mut report = ValidityReport::new(tol);
    for law in ["phi_lie_morphism", "theta_intertwining", "action_equivariance"] {
        report.declare(law);
    }
    report.declare_derived("leibniz_morphism");

    let phi_basis: Vec<Vec<T>> = (0..n).map(|i| m.phi.column(i)).collect();
    for i in 0..n {
        for j in 0..n {
            let lhs = m.phi.mul_vec(&src.algebra.bracket(&linalg::unit(n, i), &linalg::unit(n, j)));
            let rhs = dst.algebra.bracket(&phi_basis[i], &phi_basis[j]);
            report.record("phi_lie_morphism", &[i, j], linalg::max_abs_diff(&lhs, &rhs));
        }
    }
    let psi_basis: Vec<Vec<T>> = (0..d).map(|i| m.psi.column(i)).collect();
    for v in 0..d {
        let lhs = dst.theta.apply(&psi_basis[v]);
        let rhs = m.phi.mul_vec(&src.theta.matrix().column(v));
        report.record("theta_intertwining", &[v], linalg::max_abs_diff(&lhs, &rhs));
    }
    for a in 0..n {
        for v in 0..d {
            let lhs = m.psi.mul_vec(&src.action.act(&linalg::unit(n, a), &linalg::unit(d, v)));
            let rhs = dst.action.act(&phi_basis[a], &psi_basis[v]);
            report.record("action_equivariance", &[a, v], linalg::max_abs_diff(&lhs, &rhs));
        }
    }
    for u in 0..d {
        for v in 0..d {
            let lhs = m.psi.mul_vec(&src.derived_bracket.bracket(&linalg::unit(d, u), &linalg::unit(d, v)));
            let rhs = dst.derived_bracket.bracket(&psi_basis[u], &psi_basis[v]);
            report.record_derived("leibniz_morphism", &[u, v], linalg::max_abs_diff(&lhs, &rhs));
        }
    }
    Ok(report)
}

/// `(𝔪, 𝔫, μ, η)`, optionally relaxed by a subalgebra `𝔫′ ⊇ Im(μ)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LieAlgCrossedModule<T> {
    pub m: LieAlgebraData<T>,
    pub n: LieAlgebraData<T>,
    /// `dim 𝔫 × dim 𝔪`.
    pub mu: Matrix<T>,
    /// Action of `𝔫` on the vector space underlying `𝔪`.
    pub eta: ModuleAction<T>,
    pub n_prime: Option<SubspaceBasis<T>>,
}

impl<T: Scalar> LieAlgCrossedModule<T> {
    pub fn check(&self, tol: T) -> Result<ValidityReport<T>> {
        let (dm, dn) = (self.m.dim(), self.n.dim());
        if self.mu.shape() != (dn, dm) {
            return Err(Error::shape(format!("μ has shape {:?}, expected ({dn}, {dm})", self.mu.shape())));
        }
        if self.eta.algebra().dim() != dn || self.eta.dim_v() != dm {
            return Err(Error::shape("η must be an action of 𝔫 on the underlying space of 𝔪"));
        }
        if let Some(np) = &self.n_prime {
            if np.ambient_dim() != dn {
                return Err(Error::shape("𝔫′ basis must live in 𝔫"));
            }
        }
        let mut report = ValidityReport::new(tol);
        report.absorb("n_lie", &check_lie_algebra(&self.n, tol));
        report.absorb("m_lie", &check_lie_algebra(&self.m, tol));
        report.absorb("eta_module", &check_module(&self.eta, tol));

        let equivariant: Vec<Vec<T>> = match &self.n_prime {
            Some(np) => np.vectors().to_vec(),
            None => (0..dn).map(|i| linalg::unit(dn, i)).collect(),
        };
        let mu_cols: Vec<Vec<T>> = (0..dm).map(|i| self.mu.column(i)).collect();

        report.declare("equivariance");
        for (k, nv) in equivariant.iter().enumerate() {
            for mi in 0..dm {
                let lhs = self.mu.mul_vec(&self.eta.act(nv, &linalg::unit(dm, mi)));
                let rhs = self.n.bracket(nv, &mu_cols[mi]);
                report.record("equivariance", &[k, mi], linalg::max_abs_diff(&lhs, &rhs));
            }
        }
        report.declare("peiffer");
        for a in 0..dm {
            for b in 0..dm {
                let lhs = self.eta.act(&mu_cols[a], &linalg::unit(dm, b));
                let rhs = self.m.bracket(&linalg::unit(dm, a), &linalg::unit(dm, b));
                report.record("peiffer", &[a, b], linalg::max_abs_diff(&lhs, &rhs));
            }
        }
        if let Some(np) = &self.n_prime {
            report.record("n_prime_subalgebra", &[], bracket_closure_residual(&self.n, np)?);
            report.declare("n_prime_contains_image");
            for (i, c) in mu_cols.iter().enumerate() {
                report.record("n_prime_contains_image", &[i], np.residual(c));
            }
        }

        report.declare_derived("mu_homomorphism");
        for a in 0..dm {
            for b in 0..dm {
                let lhs = self.mu.mul_vec(&self.m.bracket(&linalg::unit(dm, a), &linalg::unit(dm, b)));
                let rhs = self.n.bracket(&mu_cols[a], &mu_cols[b]);
                report.record_derived("mu_homomorphism", &[a, b], linalg::max_abs_diff(&lhs, &rhs));
            }
        }
        report.declare_derived("eta_derivation");
        for (k, nv) in equivariant.iter().enumerate() {
            let act = self.eta.matrix_of(nv);
            for a in 0..dm {
                for b in 0..dm {
                    let (ea, eb) = (linalg::unit(dm, a), linalg::unit(dm, b));
                    let lhs = act.mul_vec(&self.m.bracket(&ea, &eb));
                    let r1 = self.m.bracket(&act.mul_vec(&ea), &eb);
                    let r2 = self.m.bracket(&ea, &act.mul_vec(&eb));
                    let rhs: Vec<T> = r1.iter().zip(&r2).map(|(&x, &y)| x + y).collect();
                    report.record_derived("eta_derivation", &[k, a, b], linalg::max_abs_diff(&lhs, &rhs));
                }
            }
        }
        Ok(report)
    }

    pub fn is_relaxed(&self) -> bool {
        self.n_prime.is_some()
    }
}

/// The triple `(𝔫, 𝔪, μ)` of a crossed module, with `𝔫′` as relaxed augmentation when present.
#[derive(Clone, Debug)]
pub struct CrossedModuleTriple<T> {
    pub triple: LieLeibnizTriple<T>,
    pub augmentation: Option<RelaxedAugmentation<T>>,
    pub report: ValidityReport<T>,
}

pub fn triple_from_crossed_module<T: Scalar>(cm: &LieAlgCrossedModule<T>, tol: T) -> Result<CrossedModuleTriple<T>> {
    let report = cm.check(tol)?;
    if let Some(fail) = report.first_failure() {
        return Err(Error::Axiom { law: format!("crossed module: {}", fail.name), residual: fail.max_residual.as_f64() });
    }
    if let Some(law) = report.law("mu_homomorphism").filter(|l| !l.passed) {
        return Err(Error::Axiom { law: "crossed module: mu_homomorphism".into(), residual: law.max_residual.as_f64() });
    }
    let triple = build_triple(&cm.n, &cm.eta, &cm.mu, tol)?;
    let augmentation = match &cm.n_prime {
        Some(np) => Some(RelaxedAugmentation::new(triple.clone(), np.clone(), tol)?),
        None => None,
    };
    Ok(CrossedModuleTriple { triple, augmentation, report })
}

// ---------------------------------------------------------------------------
// named constructions and random generation

/// `F(λ)`: `𝔤 = span{a, b}` with `[a, b] = b`, `V = span{v}`, `θ(v) = b`,
/// `a·v = λv`, `b·v = 0`.
pub fn scaling_family<T: Scalar>(lambda: T) -> TripleComponents<T> {
    let alg = catalog::aff1::<T>();
    let action = ModuleAction::new(&alg, 1, vec![Matrix::from_fn(1, 1, |_, _| lambda), Matrix::zeros(1, 1)])
        .expect("1×1 action matrices");
    let theta = Matrix::from_fn(2, 1, |i, _| if i == 1 { T::one() } else { T::zero() });
    TripleComponents::new(alg, action, theta)
}

/// `(𝔤, 𝔤, id)` with the adjoint action.
pub fn adjoint_triple<T: Scalar>(alg: &LieAlgebraData<T>) -> TripleComponents<T> {
    TripleComponents::new(alg.clone(), alg.adjoint_action(), Matrix::identity(alg.dim()))
}

/// `(𝔤, 𝔦, ι)` for an ideal `𝔦` given by the columns of `basis` (`n × k`, full column rank),
/// with `𝔤` acting on `𝔦` by the restricted adjoint action.
pub fn ideal_triple<T: Scalar>(alg: &LieAlgebraData<T>, basis: &Matrix<T>) -> Result<TripleComponents<T>> {
    let n = alg.dim();
    if basis.rows() != n {
        return Err(Error::shape("ideal basis must have one row per algebra basis vector"));
    }
    let k = basis.cols();
    let pinv = Svd::new(basis).pseudo_inverse(lit(1e-12));
    let mats: Vec<Matrix<T>> = (0..n).map(|i| &(&pinv * &alg.ad_basis(i)) * basis).collect();
    let action = ModuleAction::new(alg, k, mats)?;
    Ok(TripleComponents::new(alg.clone(), action, basis.clone()))
}

/// `𝔦 → 𝔤` for an ideal spanned by the columns of `basis`, with `𝔤` acting on
/// `𝔦` by the restricted adjoint action.
pub fn inclusion_crossed_module<T: Scalar>(alg: &LieAlgebraData<T>, basis: &Matrix<T>) -> Result<LieAlgCrossedModule<T>> {
    let comps = ideal_triple(alg, basis)?;
    let k = basis.cols();
    let pinv = Svd::new(basis).pseudo_inverse(lit(1e-12));
    let cols: Vec<Vec<T>> = (0..k).map(|i| basis.column(i)).collect();
    let mut constants = vec![T::zero(); k * k * k];
    for i in 0..k {
        for j in 0..k {
            let c = pinv.mul_vec(&alg.bracket(&cols[i], &cols[j]));
            constants[(i * k + j) * k..(i * k + j + 1) * k].copy_from_slice(&c);
        }
    }
    let m = LieAlgebraData::new((0..k).map(|i| format!("m{i}")).collect(), constants)?;
    Ok(LieAlgCrossedModule { m, n: alg.clone(), mu: basis.clone(), eta: comps.action, n_prime: None })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TripleFamily {
    /// `(𝔤, 𝔦, inclusion)` for a catalog algebra and one of its ideals, in a
    /// seed-dependent basis of the ideal. `None` picks from the seed.
    StrictFromIdeal { algebra: Option<CatalogAlgebra>, ideal: Option<String> },
    /// `F(λ)`; `None` draws `λ ∈ [−2, 2]` from the seed.
    ScalingFamily { lambda: Option<f64> },
    /// `F(λ)` with `λ ∈ [1, 2]` and `θ(v) = b ± ε·a`, violating the quadratic
    /// constraint by at least `ε`.
    PerturbedInvalid { epsilon: f64 },
}

/// Raw output of [`random_triple`]; invalid families are returned unbuilt.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratedTriple<T> {
    pub label: String,
    pub components: TripleComponents<T>,
    /// A faithful representation of `𝔤` (one matrix per basis vector).
    pub faithful_rep: Vec<Matrix<T>>,
}

/// Deterministic in `seed`.
pub fn random_triple<T: Scalar>(seed: u64, family: &TripleFamily) -> GeneratedTriple<T> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match family {
        TripleFamily::StrictFromIdeal { algebra, ideal } => {
            let which = algebra.unwrap_or_else(|| CatalogAlgebra::ALL[rng.gen_range(0..CatalogAlgebra::ALL.len())]);
            let ideals = which.ideals();
            let (name, vectors) = match ideal {
                Some(name) => ideals
                    .iter()
                    .find(|(n, _)| n == name)
                    .cloned()
                    .unwrap_or_else(|| panic!("catalog algebra {} has no ideal named {name}", which.name())),
                None => ideals[rng.gen_range(0..ideals.len())].clone(),
            };
            let alg = which.algebra::<T>();
            let n = alg.dim();
            let k = vectors.len();
            // random well-conditioned change of basis inside the ideal
            let mix = loop {
                let q = Matrix::<f64>::from_fn(k, k, |i, j| {
                    let r: f64 = rng.gen_range(-0.5..0.5);
                    if i == j { 1.0 + r } else { r }
                });
                let svd = Svd::new(&q);
                let smallest = svd.singular_values.last().copied().unwrap_or(0.0);
                if smallest > 0.2 {
                    break q;
                }
            };
            let span = Matrix::<f64>::from_columns(n, &vectors);
            let basis = Matrix::<T>::from_f64(&(&span * &mix));
            let components = ideal_triple(&alg, &basis).expect("catalog ideal has full column rank");
            GeneratedTriple {
                label: format!("{}/{name}", which.name()),
                components,
                faithful_rep: which.faithful_rep(),
            }
        }
        TripleFamily::ScalingFamily { lambda } => {
            let l = lambda.unwrap_or_else(|| rng.gen_range(-2.0..2.0));
            GeneratedTriple {
                label: format!("scaling:{l}"),
                components: scaling_family(lit(l)),
                faithful_rep: catalog::aff1_rep(),
            }
        }
        TripleFamily::PerturbedInvalid { epsilon } => {
            let l: f64 = rng.gen_range(1.0..2.0);
            let sign = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
            let mut components = scaling_family::<T>(lit(l));
            components.theta[(0, 0)] = lit(sign * epsilon);
            GeneratedTriple {
                label: format!("perturbed:{l:.4}:{}", sign * epsilon),
                components,
                faithful_rep: catalog::aff1_rep(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-9;

    fn f(lambda: f64) -> LieLeibnizTriple<f64> {
        scaling_family(lambda).build(TOL).unwrap()
    }

    fn sl2_adjoint() -> LieLeibnizTriple<f64> {
        adjoint_triple(&catalog::sl2()).build(TOL).unwrap()
    }

    #[test]
    fn adjoint_sl2_is_valid_strict_with_lie_bracket() {
        let t = sl2_adjoint();
        assert!(is_strict(&t, TOL));
        assert_eq!(t.derived_bracket().tensor(), catalog::sl2::<f64>().constants());
    }

    #[test]
    fn scaling_family_is_valid_with_zero_bracket() {
        for l in [-3.0, -1.0, 0.0, 0.5, 1.0, 2.0, 7.5] {
            let t = f(l);
            assert!(t.derived_bracket().tensor().iter().all(|&x| x == 0.0));
        }
    }

    #[test]
    fn scaling_family_with_b_acting_fails_quadratic() {
        let mut c = scaling_family::<f64>(2.0);
        c.action = ModuleAction::new(&c.algebra, 1, vec![Matrix::from_fn(1, 1, |_, _| 2.0), Matrix::identity(1)])
            .unwrap();
        // the module check already fails ([a,b]=b needs [A_a,A_b] = A_b, i.e. 0 = 1)
        let report = c.check(TOL).unwrap();
        assert!(!report.law("quadratic_constraint").unwrap().passed);
        // θ[v,v] = θ(v) = b while [b,b] = 0
        assert!((report.law("quadratic_constraint").unwrap().max_residual - 1.0).abs() < 1e-15);
        assert!(c.build(TOL).is_err());
    }

    #[test]
    fn a_theta_examples() {
        let t2 = f(2.0);
        let m = a_theta(&t2, &[1.0, 0.0]);
        assert_eq!(m.column(0), vec![0.0, -1.0]);
        assert_eq!(a_theta(&f(1.0), &[1.0, 0.0]).max_abs(), 0.0);
        // a ∈ Im θ
        for t in [f(2.0), sl2_adjoint()] {
            for u in 0..t.dim_v() {
                let a = t.theta().matrix().column(u);
                assert!(a_theta(&t, &a).max_abs() <= TOL);
            }
        }
    }

    #[test]
    fn strictness_examples() {
        assert!(is_strict(&sl2_adjoint(), TOL));
        assert!(!is_strict(&f(2.0), TOL));
        assert!(is_strict(&f(1.0), TOL));
    }

    #[test]
    fn h_max_examples() {
        assert_eq!(max_strictness_subalgebra(&sl2_adjoint(), TOL).dim(), 3);
        let h = max_strictness_subalgebra(&f(2.0), TOL);
        assert_eq!(h.dim(), 1);
        assert!(h.contains(&[0.0, 1.0], 1e-12));

        let alg = catalog::aff1::<f64>();
        let zero = TripleComponents::new(alg.clone(), ModuleAction::trivial(&alg, 2), Matrix::zeros(2, 2))
            .build(TOL)
            .unwrap();
        assert_eq!(max_strictness_subalgebra(&zero, TOL).dim(), 2);
        assert!(is_strict(&zero, TOL));
    }

    #[test]
    fn relaxed_augmentation_rejects_bad_h() {
        let t = f(2.0);
        // span{a} misses Im θ = span{b} and has aθ ≠ 0
        let h = SubspaceBasis::new(2, vec![vec![1.0, 0.0]]).unwrap();
        let r = RelaxedAugmentation::check(&t, &h, TOL).unwrap();
        assert!(!r.law("contains_image").unwrap().passed);
        assert!(!r.law("equivariance").unwrap().passed);
        assert!(RelaxedAugmentation::new(t.clone(), h, TOL).is_err());
        assert!(RelaxedAugmentation::maximal(t, TOL).is_ok());
    }

    #[test]
    fn identity_morphism_passes() {
        let t = sl2_adjoint();
        let r = check_morphism(&TripleMorphism::identity(&t), TOL).unwrap();
        assert!(r.passed && r.derived_passed());
    }

    #[test]
    fn inclusion_into_direct_sum_with_trivial_summand() {
        // F(1) ⊕ trivial: 𝔤 unchanged, V' = span{v, w} with w inert and θ'(w) = 0.
        let src = f(1.0);
        let alg = catalog::aff1::<f64>();
        let a = Matrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let action = ModuleAction::new(&alg, 2, vec![a, Matrix::zeros(2, 2)]).unwrap();
        let theta = Matrix::from_rows(&[vec![0.0, 0.0], vec![1.0, 0.0]]).unwrap();
        let dst = build_triple(&alg, &action, &theta, TOL).unwrap();
        let m = TripleMorphism {
            phi: Matrix::identity(2),
            psi: Matrix::from_rows(&[vec![1.0], vec![0.0]]).unwrap(),
            source: &src,
            target: &dst,
        };
        let r = check_morphism(&m, TOL).unwrap();
        assert!(r.passed && r.derived_passed(), "{r:?}");
    }

    #[test]
    fn zero_psi_fails_theta_intertwining() {
        let t = sl2_adjoint();
        let m = TripleMorphism { phi: Matrix::identity(3), psi: Matrix::zeros(3, 3), source: &t, target: &t };
        let r = check_morphism(&m, TOL).unwrap();
        assert!(!r.passed);
        assert!(!r.law("theta_intertwining").unwrap().passed);
    }

    #[test]
    fn morphism_shape_mismatch() {
        let t = sl2_adjoint();
        let m = TripleMorphism { phi: Matrix::identity(2), psi: Matrix::identity(3), source: &t, target: &t };
        assert!(matches!(check_morphism(&m, TOL), Err(Error::Shape(_))));
    }

    fn inclusion_crossed_module() -> LieAlgCrossedModule<f64> {
        let n = catalog::aff1::<f64>();
        let m = catalog::abelian::<f64>(1);
        // η(a)(m) = m, η(b)(m) = 0: ad restricted to the ideal span{b}
        let eta = ModuleAction::new(&n, 1, vec![Matrix::identity(1), Matrix::zeros(1, 1)]).unwrap();
        let mu = Matrix::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        LieAlgCrossedModule { m, n, mu, eta, n_prime: None }
    }

    #[test]
    fn inclusion_crossed_module_gives_strict_triple() {
        let out = triple_from_crossed_module(&inclusion_crossed_module(), TOL).unwrap();
        assert!(out.augmentation.is_none());
        assert!(is_strict(&out.triple, TOL));
        assert!(out.report.derived_passed());
    }

    #[test]
    fn identity_crossed_module_is_adjoint_triple() {
        let g = catalog::sl2::<f64>();
        let cm = LieAlgCrossedModule {
            m: g.clone(),
            n: g.clone(),
            mu: Matrix::identity(3),
            eta: g.adjoint_action(),
            n_prime: None,
        };
        let out = triple_from_crossed_module(&cm, TOL).unwrap();
        assert_eq!(out.triple, sl2_adjoint());
    }

    #[test]
    fn relaxed_crossed_module_yields_f2() {
        let n = catalog::aff1::<f64>();
        let m = catalog::abelian::<f64>(1);
        let eta = ModuleAction::new(&n, 1, vec![Matrix::from_fn(1, 1, |_, _| 2.0), Matrix::zeros(1, 1)]).unwrap();
        let mu = Matrix::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        let np = SubspaceBasis::new(2, vec![vec![0.0, 1.0]]).unwrap();
        let cm = LieAlgCrossedModule { m, n, mu: mu.clone(), eta: eta.clone(), n_prime: Some(np) };
        let out = triple_from_crossed_module(&cm, TOL).unwrap();
        assert!(out.augmentation.is_some());
        let expected = scaling_family(2.0);
        assert_eq!(out.triple.action().matrices(), expected.action.matrices());
        assert_eq!(out.triple.theta().matrix(), &expected.theta);

        // without 𝔫′ the equivariance condition fails on a
        let plain = LieAlgCrossedModule { n_prime: None, ..cm };
        let r = plain.check(TOL).unwrap();
        assert!(!r.law("equivariance").unwrap().passed);
        assert!(triple_from_crossed_module(&plain, TOL).is_err());
    }

    #[test]
    fn heisenberg_center_is_strict() {
        let g = random_triple::<f64>(
            1,
            &TripleFamily::StrictFromIdeal { algebra: Some(CatalogAlgebra::Heisenberg), ideal: Some("center".into()) },
        );
        let t = g.components.build(TOL).unwrap();
        assert!(is_strict(&t, TOL));
    }

    #[test]
    fn perturbed_invalid_is_caught_at_quadratic_constraint() {
        for (seed, eps) in [(3, 0.1), (4, 1e-3)] {
            let g = random_triple::<f64>(seed, &TripleFamily::PerturbedInvalid { epsilon: eps });
            match g.components.build(TOL) {
                Err(Error::Axiom { law, residual }) => {
                    assert_eq!(law, "quadratic_constraint");
                    assert!(residual >= eps / 2.0);
                }
                other => panic!("expected quadratic-constraint failure, got {other:?}"),
            }
        }
    }

    #[test]
    fn random_triple_is_deterministic() {
        let fam = TripleFamily::StrictFromIdeal { algebra: None, ideal: None };
        let a = random_triple::<f64>(42, &fam);
        let b = random_triple::<f64>(42, &fam);
        assert_eq!(a.components, b.components);
        assert_eq!(a.label, b.label);
    }
}

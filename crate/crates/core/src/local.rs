//! Local Lie groups in canonical coordinates of the first kind.
//!
//! A group element near the identity is stored as its coordinates `ξ ∈ ℝⁿ`
//! together with `exp(Σ ξ_i Ř_i)`, where `Ř = R ⊕ A` is a working
//! representation: a faithful representation `R` of the algebra, optionally
//! extended block-diagonally by a module action `A`. Products are taken in the
//! matrix group and pulled back through the principal logarithm of the
//! faithful block.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{check_module, default_tolerance, LieAlgebraData, ModuleAction, SubspaceBasis};
use crate::error::{Error, Result};
use crate::linalg::{self, expm, logm, Matrix, Svd};
use crate::scalar::{lit, Scalar};

/// Default bound on `‖ξ‖` for group elements.
pub const DEFAULT_CHART_RADIUS: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MatrixRep<T> {
    algebra: LieAlgebraData<T>,
    matrices: Vec<Matrix<T>>,
    faithful_dim: usize,
    module_dim: usize,
    /// Pseudo-inverse of the flattened faithful block, `n × faithful_dim²`.
    coord_pinv: Matrix<T>,
    /// Flattened faithful block, `faithful_dim² × n`.
    coord_map: Matrix<T>,
    chart_radius: T,
}

impl<T: Scalar> MatrixRep<T> {
    /// A faithful representation `e_i ↦ matrices[i]`; checks the homomorphism
    /// property and linear independence of the images.
    pub fn new(algebra: &LieAlgebraData<T>, matrices: Vec<Matrix<T>>, tol: T) -> Result<Self> {
        let n = algebra.dim();
        if matrices.len() != n {
            return Err(Error::shape(format!("{} representation matrices for dimension {n}", matrices.len())));
        }
        let m = matrices[0].rows();
        if matrices.iter().any(|r| r.shape() != (m, m)) {
            return Err(Error::shape("representation matrices must be square and equally sized"));
        }
        let as_module = ModuleAction::new(algebra, m, matrices.clone())?;
        let report = check_module(&as_module, tol);
        if !report.passed {
            return Err(Error::Axiom { law: "representation homomorphism".into(), residual: report.max_residual().as_f64() });
        }
        let flat: Vec<Vec<T>> = matrices.iter().map(|r| r.as_slice().to_vec()).collect();
        let coord_map = Matrix::from_columns(m * m, &flat);
        let svd = Svd::new(&coord_map);
        if svd.rank(default_tolerance()) < n {
            return Err(Error::Axiom { law: "representation faithfulness".into(), residual: 1.0 });
        }
        let coord_pinv = svd.pseudo_inverse(default_tolerance());
        Ok(Self {
            algebra: algebra.clone(),
            matrices,
            faithful_dim: m,
            module_dim: 0,
            coord_pinv,
            coord_map,
            chart_radius: lit(DEFAULT_CHART_RADIUS),
        })
    }

    /// The adjoint representation, available only when the center is trivial.
    pub fn adjoint_rep(algebra: &LieAlgebraData<T>, tol: T) -> Result<Self> {
        let center = algebra.center(tol);
        if center.dim() > 0 {
            return Err(Error::Capability(format!(
                "the algebra has a {}-dimensional center, so its adjoint representation is not faithful; \
                 supply a faithful representation",
                center.dim()
            )));
        }
        let mats = (0..algebra.dim()).map(|i| algebra.ad_basis(i)).collect();
        Self::new(algebra, mats, tol)
    }

    /// `Ř = R ⊕ A`: appends the module action as a second diagonal block.
    pub fn with_module(&self, action: &ModuleAction<T>) -> Result<Self> {
        if action.algebra().dim() != self.algebra.dim() {
            return Err(Error::shape("module is over a different algebra"));
        }
        let base: Vec<Matrix<T>> = self.matrices.iter().map(|m| m.block(0, 0, self.faithful_dim, self.faithful_dim)).collect();
        let matrices = base.iter().zip(action.matrices()).map(|(r, a)| r.block_diag(a)).collect();
        Ok(Self { matrices, module_dim: action.dim_v(), ..self.clone() })
    }

    pub fn with_chart_radius(mut self, radius: T) -> Self {
        self.chart_radius = radius;
        self
    }

    pub fn algebra(&self) -> &LieAlgebraData<T> {
        &self.algebra
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn matrices(&self) -> &[Matrix<T>] {
        &self.matrices
    }

    pub fn faithful_dim(&self) -> usize {
        self.faithful_dim
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn chart_radius(&self) -> T {
        self.chart_radius
    }

    /// `Σ ξ_i Ř_i`.
    pub fn generator(&self, xi: &[T]) -> Matrix<T> {
        let size = self.faithful_dim + self.module_dim;
        let mut out = Matrix::zeros(size, size);
        for (&x, m) in xi.iter().zip(&self.matrices) {
            if x != T::zero() {
                out = &out + &m.scale(x);
            }
        }
        out
    }

    fn faithful_block(&self, m: &Matrix<T>) -> Matrix<T> {
        m.block(0, 0, self.faithful_dim, self.faithful_dim)
    }

    /// Coordinates of an element of `R(𝔤)` (faithful block only).
    fn preimage(&self, x: &Matrix<T>) -> Result<Vec<T>> {
        let xi = self.coord_pinv.mul_vec(x.as_slice());
        let back = self.coord_map.mul_vec(&xi);
        let miss = linalg::max_abs_diff(&back, x.as_slice());
        let scale = x.max_abs().max(T::one());
        if miss > lit::<T>(1e-6) * scale {
            return Err(Error::Chart(format!("matrix is not in the image of the algebra (residual {miss})")));
        }
        Ok(xi)
    }

    fn check_chart(&self, xi: &[T]) -> Result<()> {
        let r = linalg::norm(xi);
        if !(r < self.chart_radius) {
            return Err(Error::Chart(format!("coordinate norm {r} is not below the chart radius {}", self.chart_radius)));
        }
        Ok(())
    }

    /// `exp(ξ)`; fails if `‖ξ‖` is not below the chart radius.
    pub fn element(&self, xi: &[T]) -> Result<GroupElement<T>> {
        if xi.len() != self.dim() {
            return Err(Error::shape(format!("coordinate vector of length {} for dimension {}", xi.len(), self.dim())));
        }
        self.check_chart(xi)?;
        Ok(GroupElement { coords: xi.to_vec(), matrix: expm(&self.generator(xi)) })
    }

    pub fn identity(&self) -> GroupElement<T> {
        let size = self.faithful_dim + self.module_dim;
        GroupElement { coords: vec![T::zero(); self.dim()], matrix: Matrix::identity(size) }
    }

    /// Canonical coordinates of a matrix in the image of `exp ∘ Ř`.
    pub fn from_matrix(&self, m: &Matrix<T>) -> Result<GroupElement<T>> {
        let log = logm(&self.faithful_block(m))?;
        let xi = self.preimage(&log)?;
        self.element(&xi)
    }

    pub fn inverse(&self, g: &GroupElement<T>) -> GroupElement<T> {
        let xi: Vec<T> = g.coords.iter().map(|&x| -x).collect();
        GroupElement { matrix: expm(&self.generator(&xi)), coords: xi }
    }

    /// Local group law `g₁g₂`.
    pub fn group_mul(&self, g1: &GroupElement<T>, g2: &GroupElement<T>) -> Result<GroupElement<T>> {
        self.from_matrix(&(&g1.matrix * &g2.matrix))
    }

    /// Product of several elements, taking a single logarithm at the end.
    pub fn product(&self, factors: &[&GroupElement<T>]) -> Result<GroupElement<T>> {
        let size = self.faithful_dim + self.module_dim;
        let m = factors.iter().fold(Matrix::identity(size), |acc, g| &acc * &g.matrix);
        self.from_matrix(&m)
    }

    /// `h g h⁻¹`.
    pub fn conjugate(&self, h: &GroupElement<T>, g: &GroupElement<T>) -> Result<GroupElement<T>> {
        let hinv = self.inverse(h);
        self.product(&[h, g, &hinv])
    }

    /// `Ad_g ξ = exp(ad_{coords(g)}) ξ` from the structure constants.
    pub fn adjoint(&self, g: &GroupElement<T>, xi: &[T]) -> Vec<T> {
        expm(&self.algebra.ad(&g.coords)).mul_vec(xi)
    }

    /// `Ad_g ξ` by conjugating `R(ξ)` in the faithful block.
    pub fn adjoint_via_rep(&self, g: &GroupElement<T>, xi: &[T]) -> Result<Vec<T>> {
        let mg = self.faithful_block(&g.matrix);
        let mg_inv = self.faithful_block(&self.inverse(g).matrix);
        let x = self.faithful_block(&self.generator(xi));
        self.preimage(&(&(&mg * &x) * &mg_inv))
    }

    /// `ρ_g`, the module block of the cached matrix.
    pub fn rho(&self, g: &GroupElement<T>) -> Matrix<T> {
        g.matrix.block(self.faithful_dim, self.faithful_dim, self.module_dim, self.module_dim)
    }
}

/// A group element in canonical coordinates with its cached representation matrix.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupElement<T> {
    coords: Vec<T>,
    matrix: Matrix<T>,
}

impl<T: Scalar> GroupElement<T> {
    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }
}

/// The section `s: G′ → 𝔤′`, realized as the identity on canonical
/// coordinates. Fails unless the coordinates lie in `span(g_prime)`.
pub fn s_map<T: Scalar>(g: &GroupElement<T>, g_prime: &SubspaceBasis<T>, tol: T) -> Result<Vec<T>> {
    let r = g_prime.residual(g.coords());
    if r > tol {
        return Err(Error::Membership(format!("coordinates are {r} away from the subalgebra")));
    }
    Ok(g.coords().to_vec())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Second-order central differences.
    Central,
    /// Central differences at `h` and `2h` combined to fourth order.
    Richardson,
}

impl std::str::FromStr for Scheme {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "central" => Ok(Scheme::Central),
            "richardson" => Ok(Scheme::Richardson),
            other => Err(format!("unknown scheme {other:?} (expected central or richardson)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DiffConfig<T> {
    pub step: T,
    pub scheme: Scheme,
    pub tolerance: T,
}

impl<T: Scalar> Default for DiffConfig<T> {
    fn default() -> Self {
        Self { step: lit(1e-4), scheme: Scheme::Central, tolerance: lit(1e-5) }
    }
}

impl<T: Scalar> DiffConfig<T> {
    pub fn new(step: T, scheme: Scheme) -> Result<Self> {
        if !(step > T::zero()) {
            return Err(Error::Precondition(format!("finite-difference step must be positive, got {step}")));
        }
        Ok(Self { step, scheme, ..Self::default() })
    }

    pub fn with_step(self, step: T) -> Self {
        Self { step, ..self }
    }
}

fn combine<T: Scalar>(a: &[T], wa: T, b: &[T], wb: T) -> Vec<T> {
    a.iter().zip(b).map(|(&x, &y)| wa * x + wb * y).collect()
}

fn central_first<T: Scalar, F>(curve: &F, h: T) -> Result<Vec<T>>
where
    F: Fn(T) -> Result<Vec<T>>,
{
    let (p, m) = (curve(h)?, curve(-h)?);
    let w = T::one() / (lit::<T>(2.0) * h);
    Ok(combine(&p, w, &m, -w))
}

fn central_mixed<T: Scalar, F>(surface: &F, h: T) -> Result<Vec<T>>
where
    F: Fn(T, T) -> Result<Vec<T>>,
{
    let pp = surface(h, h)?;
    let pm = surface(h, -h)?;
    let mp = surface(-h, h)?;
    let mm = surface(-h, -h)?;
    let w = T::one() / (lit::<T>(4.0) * h * h);
    Ok((0..pp.len()).map(|k| w * ((pp[k] - pm[k]) - (mp[k] - mm[k]))).collect())
}

/// `d/dt f(t)` at `t = 0`.
pub fn derivative_at_identity<T: Scalar, F>(curve: F, cfg: &DiffConfig<T>) -> Result<Vec<T>>
where
    F: Fn(T) -> Result<Vec<T>>,
{
    let h = cfg.step;
    match cfg.scheme {
        Scheme::Central => central_first(&curve, h),
        Scheme::Richardson => {
            let fine = central_first(&curve, h)?;
            let coarse = central_first(&curve, lit::<T>(2.0) * h)?;
            Ok(combine(&fine, lit(4.0 / 3.0), &coarse, lit(-1.0 / 3.0)))
        }
    }
}

/// `∂²f/∂t₁∂t₂` at the origin from the `{±h}×{±h}` stencil.
pub fn mixed_second_derivative<T: Scalar, F>(surface: F, cfg: &DiffConfig<T>) -> Result<Vec<T>>
where
    F: Fn(T, T) -> Result<Vec<T>>,
{
    let h = cfg.step;
    match cfg.scheme {
        Scheme::Central => central_mixed(&surface, h),
        Scheme::Richardson => {
            let fine = central_mixed(&surface, h)?;
            let coarse = central_mixed(&surface, lit::<T>(2.0) * h)?;
            Ok(combine(&fine, lit(4.0 / 3.0), &coarse, lit(-1.0 / 3.0)))
        }
    }
}

/// Uniform sample from the ball of the given radius in `span(basis)`
/// (all of `ℝ^dim` when `basis` is `None`).
pub fn sample_ball<T: Scalar, R: Rng>(rng: &mut R, dim: usize, basis: Option<&SubspaceBasis<T>>, radius: f64) -> Vec<T> {
    let k = basis.map_or(dim, SubspaceBasis::dim);
    if k == 0 {
        return vec![T::zero(); dim];
    }
    let dir: Vec<f64> = loop {
        let v: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = linalg::norm(&v);
        if n > 1e-3 && n <= 1.0 {
            break v.iter().map(|x| x / n).collect();
        }
    };
    let r = radius * rng.gen_range(0.0f64..1.0).powf(1.0 / k as f64);
    match basis {
        None => dir.iter().map(|&x| lit(r * x)).collect(),
        Some(b) => {
            let q = b.orthonormal();
            let mut out = vec![T::zero(); dim];
            for (c, qi) in dir.iter().zip(&q) {
                out = linalg::axpy(lit(r * c), qi, &out);
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, CatalogAlgebra};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sl2_rep() -> MatrixRep<f64> {
        MatrixRep::new(&catalog::sl2(), catalog::sl2_fundamental(), 1e-9).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let rep = sl2_rep();
        let g = rep.element(&[0.1, -0.2, 0.05]).unwrap();
        let ge = rep.group_mul(&g, &rep.identity()).unwrap();
        assert!(linalg::max_abs_diff(ge.coords(), g.coords()) < 1e-14);
        let gi = rep.group_mul(&g, &rep.inverse(&g)).unwrap();
        assert!(linalg::norm(gi.coords()) < 1e-12);
    }

    #[test]
    fn nilpotent_exponentials_add() {
        let rep = sl2_rep();
        let (t, s) = (0.13, -0.21);
        let g = rep.group_mul(&rep.element(&[0.0, t, 0.0]).unwrap(), &rep.element(&[0.0, s, 0.0]).unwrap()).unwrap();
        assert!(linalg::max_abs_diff(g.coords(), &[0.0, t + s, 0.0]) < 1e-14);
    }

    #[test]
    fn chart_exit_is_reported() {
        let rep = sl2_rep();
        assert!(matches!(rep.element(&[0.4, 0.4, 0.0]), Err(Error::Chart(_))));
        let g = rep.element(&[0.3, 0.0, 0.0]).unwrap();
        assert!(matches!(rep.group_mul(&g, &g), Err(Error::Chart(_))));
    }

    #[test]
    fn adjoint_examples() {
        let rep = sl2_rep();
        let xi = [0.3, -0.7, 1.1];
        assert!(linalg::max_abs_diff(&rep.adjoint(&rep.identity(), &xi), &xi) < 1e-15);
        let t = 0.2;
        let g = rep.element(&[t, 0.0, 0.0]).unwrap();
        let ad_e = rep.adjoint(&g, &[0.0, 1.0, 0.0]);
        assert!(linalg::max_abs_diff(&ad_e, &[0.0, (2.0 * t).exp(), 0.0]) < 1e-14);
        let via_rep = rep.adjoint_via_rep(&g, &[0.0, 1.0, 0.0]).unwrap();
        assert!(linalg::max_abs_diff(&ad_e, &via_rep) < 1e-13);
    }

    #[test]
    fn adjoint_preserves_brackets() {
        let rep = sl2_rep();
        let alg = rep.algebra().clone();
        let g = rep.element(&[0.1, 0.2, -0.15]).unwrap();
        let (x, y) = ([0.4, -0.3, 0.9], [-1.2, 0.5, 0.25]);
        let lhs = rep.adjoint(&g, &alg.bracket(&x, &y));
        let rhs = alg.bracket(&rep.adjoint(&g, &x), &rep.adjoint(&g, &y));
        assert!(linalg::max_abs_diff(&lhs, &rhs) < 1e-13);
    }

    #[test]
    fn adjoint_requires_trivial_center() {
        assert!(MatrixRep::adjoint_rep(&catalog::aff1::<f64>(), 1e-9).is_ok());
        assert!(matches!(MatrixRep::adjoint_rep(&catalog::heisenberg::<f64>(), 1e-9), Err(Error::Capability(_))));
    }

    #[test]
    fn non_homomorphic_matrices_rejected() {
        let mut mats = catalog::sl2_fundamental::<f64>();
        mats[1] = mats[1].scale(2.0);
        assert!(matches!(MatrixRep::new(&catalog::sl2(), mats, 1e-9), Err(Error::Axiom { .. })));
    }

    #[test]
    fn working_rep_module_block_is_rho() {
        let alg = catalog::sl2::<f64>();
        let rep = sl2_rep().with_module(&alg.adjoint_action()).unwrap();
        let g = rep.element(&[0.1, 0.05, -0.2]).unwrap();
        let rho = rep.rho(&g);
        let expected = expm(&alg.ad(g.coords()));
        assert!((&rho - &expected).max_abs() < 1e-14);
    }

    #[test]
    fn associativity_per_catalog_algebra() {
        for which in CatalogAlgebra::ALL {
            let alg = which.algebra::<f64>();
            let rep = MatrixRep::new(&alg, which.faithful_rep(), 1e-9).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(7);
            let mut worst = 0.0f64;
            for _ in 0..100 {
                let g: Vec<GroupElement<f64>> =
                    (0..3).map(|_| rep.element(&sample_ball(&mut rng, alg.dim(), None, 0.1)).unwrap()).collect();
                let left = rep.group_mul(&rep.group_mul(&g[0], &g[1]).unwrap(), &g[2]).unwrap();
                let right = rep.group_mul(&g[0], &rep.group_mul(&g[1], &g[2]).unwrap()).unwrap();
                worst = worst.max(linalg::max_abs_diff(left.coords(), right.coords()));
            }
            assert!(worst <= 1e-9, "{}: {worst}", which.name());
        }
    }

    #[test]
    fn adjoint_routes_agree_on_samples() {
        for which in CatalogAlgebra::ALL {
            let alg = which.algebra::<f64>();
            let rep = MatrixRep::new(&alg, which.faithful_rep(), 1e-9).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(11);
            for _ in 0..20 {
                let g = rep.element(&sample_ball(&mut rng, alg.dim(), None, 0.4)).unwrap();
                let xi: Vec<f64> = sample_ball(&mut rng, alg.dim(), None, 1.0);
                let a = rep.adjoint(&g, &xi);
                let b = rep.adjoint_via_rep(&g, &xi).unwrap();
                assert!(linalg::max_abs_diff(&a, &b) <= 1e-9, "{}", which.name());
            }
        }
    }

    #[test]
    fn s_map_properties() {
        let alg = catalog::sl2::<f64>();
        let rep = sl2_rep();
        let g_prime = SubspaceBasis::full(3);
        assert_eq!(s_map(&rep.identity(), &g_prime, 1e-12).unwrap(), vec![0.0; 3]);

        // T_e s = id by finite differences along basis directions
        let cfg = DiffConfig::default();
        for i in 0..3 {
            let d = derivative_at_identity(
                |t| s_map(&rep.element(&linalg::scaled(t, &linalg::unit(3, i)))?, &g_prime, 1e-12),
                &cfg,
            )
            .unwrap();
            assert!(linalg::max_abs_diff(&d, &linalg::unit(3, i)) <= 1e-6);
        }

        // s(h g h⁻¹) = Ad_h s(g)
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..25 {
            let h = rep.element(&sample_ball(&mut rng, 3, None, 0.1)).unwrap();
            let g = rep.element(&sample_ball(&mut rng, 3, None, 0.2)).unwrap();
            let lhs = s_map(&rep.conjugate(&h, &g).unwrap(), &g_prime, 1e-12).unwrap();
            let rhs = rep.adjoint(&h, &s_map(&g, &g_prime, 1e-12).unwrap());
            assert!(linalg::max_abs_diff(&lhs, &rhs) <= 1e-8);
        }
        let _ = alg;
    }

    #[test]
    fn s_map_rejects_non_members() {
        let rep = sl2_rep();
        let line = SubspaceBasis::new(3, vec![vec![0.0, 1.0, 0.0]]).unwrap();
        let g = rep.element(&[0.1, 0.1, 0.0]).unwrap();
        assert!(matches!(s_map(&g, &line, 1e-9), Err(Error::Membership(_))));
    }

    #[test]
    fn first_derivative_examples() {
        let cfg = DiffConfig::<f64>::default();
        let d = derivative_at_identity(|_| Ok(vec![3.0, -1.0]), &cfg).unwrap();
        assert_eq!(d, vec![0.0, 0.0]);
        let d = derivative_at_identity(|t| Ok(vec![t * t * 2.0, t * t]), &cfg).unwrap();
        assert_eq!(d, vec![0.0, 0.0]);

        let rep = sl2_rep();
        let xi = [0.7, -0.4, 0.2];
        let h = cfg.step;
        let d = derivative_at_identity(|t| Ok(rep.element(&linalg::scaled(t, &xi))?.coords().to_vec()), &cfg).unwrap();
        assert!(linalg::max_abs_diff(&d, &xi) <= 10.0 * h * h * linalg::norm(&xi));
    }

    #[test]
    fn mixed_derivative_examples() {
        let cfg = DiffConfig::<f64>::default();
        let w = [1.5, -2.0];
        let d = mixed_second_derivative(|a, b| Ok(linalg::scaled(a * b, &w)), &cfg).unwrap();
        assert!(linalg::max_abs_diff(&d, &w) < 1e-12);
        let d = mixed_second_derivative(|a, b| Ok(vec![a * a + b * b]), &cfg).unwrap();
        assert!(d[0].abs() < 1e-12);
    }

    #[test]
    fn conjugation_surface_recovers_structure_constants() {
        for scheme in [Scheme::Central, Scheme::Richardson] {
            let cfg = DiffConfig::new(1e-4, scheme).unwrap();
            let bound = match scheme {
                Scheme::Central => 100.0 * cfg.step * cfg.step,
                // truncation is negligible; the stencil's rounding floor is about eps/h²
                Scheme::Richardson => 1e-7,
            };
            for which in CatalogAlgebra::ALL {
                let alg = which.algebra::<f64>();
                let n = alg.dim();
                let rep = MatrixRep::new(&alg, which.faithful_rep(), 1e-9).unwrap();
                for i in 0..n {
                    for j in 0..n {
                        let d = mixed_second_derivative(
                            |t1, t2| {
                                let a = rep.element(&linalg::scaled(t1, &linalg::unit(n, i)))?;
                                let b = rep.element(&linalg::scaled(t2, &linalg::unit(n, j)))?;
                                Ok(rep.conjugate(&a, &b)?.coords().to_vec())
                            },
                            &cfg,
                        )
                        .unwrap();
                        let expected = alg.bracket(&linalg::unit(n, i), &linalg::unit(n, j));
                        let err = linalg::max_abs_diff(&d, &expected);
                        assert!(err <= bound, "{} ({i},{j}) {scheme:?}: {err}", which.name());
                    }
                }
            }
        }
    }

    #[test]
    fn nonpositive_step_rejected() {
        assert!(DiffConfig::<f64>::new(0.0, Scheme::Central).is_err());
    }
}

//! Local relaxed augmented Lie racks integrating a Lie-Leibniz triple.
//!
//! The model is `M_U = {(v, u) : u = θ(v), ‖u‖ < r_U}` with the local action
//! `q(g, (v, u)) = (ρ_g v, θ(ρ_g v))`, the map `Φ(v, u) = exp(u)` and the rack
//! product `p₁ ▷ p₂ = q(Φ(p₁), p₂)`. Everything is evaluated in a working
//! representation `Ř = R ⊕ A` (see [`MatrixRep::with_module`]).

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebra::{default_tolerance, SubspaceBasis};
use crate::error::{Error, Result};
use crate::linalg::{self, Matrix, Svd};
use crate::local::{
    derivative_at_identity, mixed_second_derivative, sample_ball, DiffConfig, GroupElement, MatrixRep, Scheme,
};
use crate::report::ValidityReport;
use crate::scalar::{lit, Scalar};
use crate::triples::{a_theta, is_strict, max_strictness_subalgebra, LieLeibnizTriple, RelaxedAugmentation};

/// Radius of the coordinate ball from which group samples are drawn.
pub const GROUP_SAMPLE_RADIUS: f64 = 0.1;

#[derive(Clone, Debug)]
pub struct ModelOptions<T> {
    /// A faithful representation of `𝔤`; the adjoint one is tried when absent.
    pub rep: Option<MatrixRep<T>>,
    /// Defaults to `𝔥_max`.
    pub h_basis: Option<SubspaceBasis<T>>,
    /// Defaults to `min(0.3, 0.6 × chart radius)`.
    pub radius: Option<T>,
    pub cfg: DiffConfig<T>,
    pub tolerance: T,
}

impl<T: Scalar> Default for ModelOptions<T> {
    fn default() -> Self {
        Self { rep: None, h_basis: None, radius: None, cfg: DiffConfig::default(), tolerance: default_tolerance() }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalRackModel<T> {
    triple: LieLeibnizTriple<T>,
    rep: MatrixRep<T>,
    h_basis: SubspaceBasis<T>,
    radius: T,
    cfg: DiffConfig<T>,
    strict: bool,
    tolerance: T,
}

/// A point `(v, u)` of `M_U`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MPoint<T> {
    pub v: Vec<T>,
    pub u: Vec<T>,
}

pub fn build_model<T: Scalar>(triple: LieLeibnizTriple<T>, opts: ModelOptions<T>) -> Result<LocalRackModel<T>> {
    let tol = opts.tolerance;
    let faithful = match opts.rep {
        Some(rep) => {
            let diff = linalg::max_abs_diff(rep.algebra().constants(), triple.algebra().constants());
            if rep.algebra().dim() != triple.dim_g() || diff > tol {
                return Err(Error::Precondition("representation is for a different algebra".into()));
            }
            rep
        }
        None => MatrixRep::adjoint_rep(triple.algebra(), tol)?,
    };
    let rep = faithful.with_module(triple.action())?;
    let chart = rep.chart_radius();
    let radius = opts.radius.unwrap_or_else(|| lit::<T>(0.3).min(lit::<T>(0.6) * chart));
    if !(radius > T::zero()) || radius > chart {
        return Err(Error::Precondition(format!("radius {radius} must lie in (0, {chart}]")));
    }
    let h_basis = match opts.h_basis {
        Some(h) => h,
        None => max_strictness_subalgebra(&triple, tol),
    };
    let aug = RelaxedAugmentation::new(triple, h_basis, tol)?;
    let strict = is_strict(aug.triple(), tol);
    Ok(LocalRackModel {
        h_basis: aug.h_basis().clone(),
        triple: aug.triple().clone(),
        rep,
        radius,
        cfg: opts.cfg,
        strict,
        tolerance: tol,
    })
}

impl<T: Scalar> LocalRackModel<T> {
    pub fn triple(&self) -> &LieLeibnizTriple<T> {
        &self.triple
    }

    pub fn rep(&self) -> &MatrixRep<T> {
        &self.rep
    }

    pub fn h_basis(&self) -> &SubspaceBasis<T> {
        &self.h_basis
    }

    pub fn radius(&self) -> T {
        self.radius
    }

    pub fn cfg(&self) -> &DiffConfig<T> {
        &self.cfg
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn with_cfg(mut self, cfg: DiffConfig<T>) -> Self {
        self.cfg = cfg;
        self
    }

    fn theta(&self, v: &[T]) -> Vec<T> {
        self.triple.theta().apply(v)
    }

    /// `(v, θ(v))`; fails outside `M_U`.
    pub fn point(&self, v: &[T]) -> Result<MPoint<T>> {
        if v.len() != self.triple.dim_v() {
            return Err(Error::shape(format!("fiber vector of length {} for dim V = {}", v.len(), self.triple.dim_v())));
        }
        let u = self.theta(v);
        let r = linalg::norm(&u);
        if !(r < self.radius) {
            return Err(Error::Domain(format!("‖θ(v)‖ = {r} is not below r_U = {}", self.radius)));
        }
        Ok(MPoint { v: v.to_vec(), u })
    }

    /// The distinguished point `(0, 0)`.
    pub fn base_point(&self) -> MPoint<T> {
        MPoint { v: vec![T::zero(); self.triple.dim_v()], u: vec![T::zero(); self.triple.dim_g()] }
    }

    /// Checks both invariants of an externally supplied point.
    pub fn validate_point(&self, p: &MPoint<T>) -> Result<()> {
        let expected = self.point(&p.v)?;
        let drift = linalg::max_abs_diff(&expected.u, &p.u);
        if drift > self.tolerance {
            return Err(Error::Precondition(format!("point has u ≠ θ(v) (difference {drift})")));
        }
        Ok(())
    }

    pub fn group_element(&self, xi: &[T]) -> Result<GroupElement<T>> {
        self.rep.element(xi)
    }

    fn acted(&self, g: &GroupElement<T>, p: &MPoint<T>) -> Vec<T> {
        self.rep.rho(g).mul_vec(&p.v)
    }

    pub fn in_omega(&self, g: &GroupElement<T>, p: &MPoint<T>) -> bool {
        linalg::norm(&self.theta(&self.acted(g, p))) < self.radius
    }

    /// `q(g, p) = (ρ_g v, θ(ρ_g v))`.
    pub fn q_action(&self, g: &GroupElement<T>, p: &MPoint<T>) -> Result<MPoint<T>> {
        self.point(&self.acted(g, p))
    }

    /// `Φ(v, u) = exp(u)`.
    pub fn phi_map(&self, p: &MPoint<T>) -> Result<GroupElement<T>> {
        self.rep.element(&p.u)
    }

    /// `p₁ ▷ p₂ = q(Φ(p₁), p₂)`.
    pub fn rack_product(&self, p1: &MPoint<T>, p2: &MPoint<T>) -> Result<MPoint<T>> {
        let g = self.phi_map(p1)?;
        self.q_action(&g, p2)
    }

    /// `Φ(q(g, p))` against `g Φ(p) g⁻¹` in coordinates.
    pub fn equivariance_defect(&self, g: &GroupElement<T>, p: &MPoint<T>) -> Result<T> {
        let lhs = self.phi_map(&self.q_action(g, p)?)?;
        let rhs = self.rep.conjugate(g, &self.phi_map(p)?)?;
        Ok(linalg::max_abs_diff(lhs.coords(), rhs.coords()))
    }

    fn point_radius(&self) -> f64 {
        let sigma = Svd::new(self.triple.theta().matrix()).max_singular_value().as_f64();
        0.5 * self.radius.as_f64() / sigma.max(1.0)
    }

    fn sample_point(&self, rng: &mut ChaCha8Rng) -> Result<MPoint<T>> {
        let v: Vec<T> = sample_ball(rng, self.triple.dim_v(), None, self.point_radius());
        self.point(&v)
    }

    fn sample_group(&self, rng: &mut ChaCha8Rng, within: Option<&SubspaceBasis<T>>) -> Result<GroupElement<T>> {
        let xi: Vec<T> = sample_ball(rng, self.triple.dim_g(), within, GROUP_SAMPLE_RADIUS);
        self.rep.element(&xi)
    }
}

fn diff_point<T: Scalar>(a: &MPoint<T>, b: &MPoint<T>) -> T {
    linalg::max_abs_diff(&a.v, &b.v).max(linalg::max_abs_diff(&a.u, &b.u))
}

/// Bound on the local G-set composition law and on left injectivity.
pub const GSET_TOLERANCE: f64 = 1e-9;
/// Bound on local self-distributivity.
pub const RACK_TOLERANCE: f64 = 1e-8;

/// Local G-set and local rack laws on `samples` seeded configurations.
///
/// Configurations whose memberships fail are skipped; each law's `checked`
/// count is the number of composable configurations actually evaluated.
/// Unit, fixed-point and pointedness laws must hold exactly.
pub fn check_local_laws<T: Scalar>(model: &LocalRackModel<T>, samples: usize, seed: u64) -> Result<ValidityReport<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ValidityReport::new(T::zero());
    for law in ["pointed", "gset_unit", "fixed_point", "rack_left_unit", "rack_right_unit"] {
        report.declare(law);
    }
    report.declare_with_tolerance("gset_composition", lit(GSET_TOLERANCE));
    report.declare_with_tolerance("self_distributivity", lit(RACK_TOLERANCE));
    report.declare_with_tolerance("left_injectivity", lit(GSET_TOLERANCE));
    let e = model.base_point();
    let id = model.rep.identity();

    report.record("pointed", &[], linalg::norm(model.phi_map(&e)?.coords()));
    for s in 0..samples {
        let g1 = model.sample_group(&mut rng, None)?;
        let g2 = model.sample_group(&mut rng, None)?;
        let x = model.sample_point(&mut rng)?;
        let (y, z) = (model.sample_point(&mut rng)?, model.sample_point(&mut rng)?);

        report.record("gset_unit", &[s], diff_point(&model.q_action(&id, &x)?, &x));
        report.record("fixed_point", &[s], diff_point(&model.q_action(&g1, &e)?, &e));
        report.record("rack_left_unit", &[s], diff_point(&model.rack_product(&e, &x)?, &x));
        report.record("rack_right_unit", &[s], diff_point(&model.rack_product(&x, &e)?, &e));

        let g12 = model.rep.group_mul(&g1, &g2)?;
        if model.in_omega(&g2, &x) && model.in_omega(&g12, &x) {
            let inner = model.q_action(&g2, &x)?;
            if model.in_omega(&g1, &inner) {
                let lhs = model.q_action(&g1, &inner)?;
                let rhs = model.q_action(&g12, &x)?;
                report.record("gset_composition", &[s], diff_point(&lhs, &rhs));
            }
        }

        let fx = model.phi_map(&x)?;
        if model.in_omega(&fx, &y) && model.in_omega(&fx, &z) && model.in_omega(&model.phi_map(&y)?, &z) {
            let xy = model.rack_product(&x, &y)?;
            let xz = model.rack_product(&x, &z)?;
            let yz = model.rack_product(&y, &z)?;
            if model.in_omega(&fx, &yz) && model.in_omega(&model.phi_map(&xy)?, &xz) {
                let lhs = model.rack_product(&x, &yz)?;
                let rhs = model.rack_product(&xy, &xz)?;
                report.record("self_distributivity", &[s], diff_point(&lhs, &rhs));
            }
            // x ▷ · is undone by ρ of Φ(x)⁻¹
            let back = model.point(&model.rep.rho(&model.rep.inverse(&fx)).mul_vec(&xy.v))?;
            report.record("left_injectivity", &[s], diff_point(&back, &y));
        }
    }
    Ok(report)
}

/// `Φ(q(h̃, p)) = h̃ Φ(p) h̃⁻¹` for `h̃ ∈ exp(𝔥)`, and for `h̃ ∈ exp(𝔤)` when the
/// triple is strict.
pub fn check_equivariance<T: Scalar>(model: &LocalRackModel<T>, samples: usize, seed: u64, tol: T) -> Result<ValidityReport<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = ValidityReport::new(tol);
    report.declare("equivariance_h");
    if model.strict {
        report.declare("equivariance_g");
    }
    report.flag("strict", model.strict);
    for s in 0..samples {
        let h = model.sample_group(&mut rng, Some(&model.h_basis))?;
        let p = model.sample_point(&mut rng)?;
        if model.in_omega(&h, &p) {
            report.record("equivariance_h", &[s], model.equivariance_defect(&h, &p)?);
        }
        if model.strict {
            let g = model.sample_group(&mut rng, None)?;
            if model.in_omega(&g, &p) {
                report.record("equivariance_g", &[s], model.equivariance_defect(&g, &p)?);
            }
        }
    }
    Ok(report)
}

/// Tensors recovered by differentiating the local rack model.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecoveredTriple<T> {
    /// `n × d`.
    pub theta: Matrix<T>,
    /// One `d × d` matrix per basis vector of `𝔤`.
    pub action: Vec<Matrix<T>>,
    /// `[v_i, v_j]_k` at flat index `(i·d + j)·d + k`.
    pub bracket: Vec<T>,
}

fn with_retry<T: Scalar, F>(cfg: &DiffConfig<T>, f: F) -> Result<Vec<T>>
where
    F: Fn(&DiffConfig<T>) -> Result<Vec<T>>,
{
    match f(cfg) {
        Err(e) if e.is_domain_exit() => f(&cfg.with_step(cfg.step / lit(10.0))),
        other => other,
    }
}

pub fn recover_tangent_triple<T: Scalar>(model: &LocalRackModel<T>) -> Result<RecoveredTriple<T>> {
    let (n, d) = (model.triple.dim_g(), model.triple.dim_v());
    let cfg = &model.cfg;
    let line = |v: &[T], t: T| model.point(&linalg::scaled(t, v));

    let mut theta = Matrix::zeros(n, d);
    for j in 0..d {
        let v = linalg::unit(d, j);
        let col = with_retry(cfg, |c| derivative_at_identity(|t| Ok(model.phi_map(&line(&v, t)?)?.coords().to_vec()), c))?;
        for i in 0..n {
            theta[(i, j)] = col[i];
        }
    }

    let mut action = vec![Matrix::zeros(d, d); n];
    for (i, mat) in action.iter_mut().enumerate() {
        let a = linalg::unit(n, i);
        for j in 0..d {
            let v = linalg::unit(d, j);
            let col = with_retry(cfg, |c| {
                mixed_second_derivative(
                    |t1, t2| {
                        let g = model.rep.element(&linalg::scaled(t2, &a))?;
                        Ok(model.q_action(&g, &line(&v, t1)?)?.v)
                    },
                    c,
                )
            })?;
            for k in 0..d {
                mat[(k, j)] = col[k];
            }
        }
    }

    let mut bracket = vec![T::zero(); d * d * d];
    for i in 0..d {
        let u = linalg::unit(d, i);
        for j in 0..d {
            let v = linalg::unit(d, j);
            let val = with_retry(cfg, |c| {
                mixed_second_derivative(|t1, t2| Ok(model.rack_product(&line(&u, t1)?, &line(&v, t2)?)?.v), c)
            })?;
            bracket[(i * d + j) * d..(i * d + j + 1) * d].copy_from_slice(&val);
        }
    }
    Ok(RecoveredTriple { theta, action, bracket })
}

/// Entrywise residuals of a recovered triple against the model's input.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RoundTrip<T> {
    pub theta: T,
    pub action: T,
    pub bracket: T,
    pub max: T,
}

pub fn roundtrip_residuals<T: Scalar>(model: &LocalRackModel<T>, rec: &RecoveredTriple<T>) -> RoundTrip<T> {
    let t = &model.triple;
    let theta = (&rec.theta - t.theta().matrix()).max_abs();
    let action = rec.action.iter().zip(t.action().matrices()).fold(T::zero(), |m, (r, a)| m.max((r - a).max_abs()));
    let bracket = linalg::max_abs_diff(&rec.bracket, t.derived_bracket().tensor());
    RoundTrip { theta, action, bracket, max: theta.max(action).max(bracket) }
}

/// Mixed derivative of the coordinates of
/// `(e^{t₁a} Φ(p(t₂)) e^{−t₁a}) · Φ(q(e^{t₁a}, p(t₂)))⁻¹` with `p(t) = (tv, θ(tv))`.
pub fn recover_a_theta<T: Scalar>(model: &LocalRackModel<T>, a: &[T], v: &[T]) -> Result<Vec<T>> {
    with_retry(&model.cfg, |c| {
        mixed_second_derivative(
            |t1, t2| {
                let g = model.rep.element(&linalg::scaled(t1, a))?;
                let p = model.point(&linalg::scaled(t2, v))?;
                let conj = model.rep.conjugate(&g, &model.phi_map(&p)?)?;
                let moved = model.phi_map(&model.q_action(&g, &p)?)?;
                let moved_inv = model.rep.inverse(&moved);
                Ok(model.rep.product(&[&conj, &moved_inv])?.coords().to_vec())
            },
            c,
        )
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ATheta<T> {
    pub a: usize,
    pub v: usize,
    pub recovered: Vec<T>,
    pub expected: Vec<T>,
}

/// `recover_a_theta` on every pair of basis vectors, with the algebraic value alongside.
pub fn a_theta_correspondence<T: Scalar>(model: &LocalRackModel<T>) -> Result<Vec<ATheta<T>>> {
    let (n, d) = (model.triple.dim_g(), model.triple.dim_v());
    let mut out = Vec::with_capacity(n * d);
    for i in 0..n {
        let a = linalg::unit(n, i);
        let expected = a_theta(&model.triple, &a);
        for j in 0..d {
            let recovered = recover_a_theta(model, &a, &linalg::unit(d, j))?;
            out.push(ATheta { a: i, v: j, recovered, expected: expected.column(j) });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegrationSettings {
    pub samples: usize,
    pub seed: u64,
    /// Bound on the round-trip residual.
    pub tolerance: f64,
}

impl Default for IntegrationSettings {
    fn default() -> Self {
        Self { samples: 200, seed: 0, tolerance: 1e-4 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegrationReport<T> {
    pub passed: bool,
    pub dim_g: usize,
    pub dim_v: usize,
    pub h_dim: usize,
    pub strict: bool,
    pub radius: T,
    pub step: T,
    pub scheme: Scheme,
    pub samples: usize,
    pub seed: u64,
    pub local_laws: ValidityReport<T>,
    pub equivariance: ValidityReport<T>,
    pub roundtrip: RoundTrip<T>,
    pub max_roundtrip_residual: T,
    pub recovered: RecoveredTriple<T>,
    pub a_theta_max_residual: T,
    pub a_theta_recovered: Vec<ATheta<T>>,
}

/// Runs every suite. `passed` reflects the round-trip residual only.
pub fn integrate<T: Scalar>(model: &LocalRackModel<T>, settings: &IntegrationSettings) -> Result<IntegrationReport<T>> {
    let local_laws = check_local_laws(model, settings.samples, settings.seed)?;
    let equivariance = check_equivariance(model, settings.samples, settings.seed.wrapping_add(1), lit(1e-8))?;
    let recovered = recover_tangent_triple(model)?;
    let roundtrip = roundtrip_residuals(model, &recovered);
    let a_theta_recovered = a_theta_correspondence(model)?;
    let a_theta_max_residual =
        a_theta_recovered.iter().fold(T::zero(), |m, e| m.max(linalg::max_abs_diff(&e.recovered, &e.expected)));
    Ok(IntegrationReport {
        passed: roundtrip.max <= lit(settings.tolerance),
        dim_g: model.triple.dim_g(),
        dim_v: model.triple.dim_v(),
        h_dim: model.h_basis.dim(),
        strict: model.strict,
        radius: model.radius,
        step: model.cfg.step,
        scheme: model.cfg.scheme,
        samples: settings.samples,
        seed: settings.seed,
        local_laws,
        equivariance,
        max_roundtrip_residual: roundtrip.max,
        roundtrip,
        recovered,
        a_theta_max_residual,
        a_theta_recovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ModuleAction;
    use crate::catalog;
    use crate::triples::{adjoint_triple, scaling_family, TripleComponents};

    const TOL: f64 = 1e-9;

    fn f_model(lambda: f64) -> LocalRackModel<f64> {
        build_model(scaling_family(lambda).build(TOL).unwrap(), ModelOptions::default()).unwrap()
    }

    fn sl2_model() -> LocalRackModel<f64> {
        build_model(adjoint_triple(&catalog::sl2()).build(TOL).unwrap(), ModelOptions::default()).unwrap()
    }

    fn zero_theta_model() -> LocalRackModel<f64> {
        let alg = catalog::abelian::<f64>(2);
        let comps = TripleComponents::new(alg.clone(), ModuleAction::trivial(&alg, 2), Matrix::zeros(2, 2));
        let rep = MatrixRep::new(&alg, catalog::abelian_rep(2), TOL).unwrap();
        build_model(comps.build(TOL).unwrap(), ModelOptions { rep: Some(rep), ..Default::default() }).unwrap()
    }

    #[test]
    fn build_examples() {
        let m = sl2_model();
        assert_eq!(m.h_basis().dim(), 3);
        assert!(m.is_strict());
        assert!((m.radius() - 0.3).abs() < 1e-15);
        let f2 = f_model(2.0);
        assert_eq!(f2.h_basis().dim(), 1);
        assert!(f2.h_basis().contains(&[0.0, 1.0], 1e-12));
    }

    #[test]
    fn heisenberg_without_rep_is_a_capability_error() {
        let t = adjoint_triple(&catalog::heisenberg()).build(TOL).unwrap();
        assert!(matches!(build_model(t, ModelOptions::default()), Err(Error::Capability(_))));
    }

    #[test]
    fn invalid_h_basis_rejected() {
        let t = scaling_family(2.0).build(TOL).unwrap();
        let h = SubspaceBasis::full(2);
        assert!(matches!(
            build_model(t, ModelOptions { h_basis: Some(h), ..Default::default() }),
            Err(Error::Axiom { .. })
        ));
    }

    #[test]
    fn zero_theta_model_fixes_u() {
        let m = zero_theta_model();
        let p = m.point(&[5.0, -3.0]).unwrap();
        let g = m.group_element(&[0.2, 0.1]).unwrap();
        assert!(m.in_omega(&g, &p));
        assert_eq!(m.q_action(&g, &p).unwrap().u, vec![0.0, 0.0]);
        assert_eq!(m.phi_map(&p).unwrap().coords(), &[0.0, 0.0]);
        let rec = recover_tangent_triple(&m).unwrap();
        assert!(rec.theta.max_abs() == 0.0 && rec.bracket.iter().all(|&x| x == 0.0));
        assert!(m.equivariance_defect(&g, &p).unwrap() <= 1e-15);
    }

    #[test]
    fn omega_boundary_in_scaling_family() {
        let m = f_model(2.0);
        let p = m.point(&[0.9 * m.radius()]).unwrap();
        assert!(m.in_omega(&m.rep().identity(), &p));
        let g = m.group_element(&[0.1, 0.0]).unwrap();
        assert!(!m.in_omega(&g, &p));
        assert!(matches!(m.q_action(&g, &p), Err(Error::Domain(_))));
    }

    #[test]
    fn phi_examples() {
        let m = sl2_model();
        assert_eq!(m.phi_map(&m.base_point()).unwrap().coords(), &[0.0; 3]);
        let v = [0.05, -0.1, 0.02];
        let g = m.phi_map(&m.point(&v).unwrap()).unwrap();
        assert!((g.matrix() - m.group_element(&v).unwrap().matrix()).max_abs() < 1e-15);
        let f2 = f_model(2.0);
        assert_eq!(f2.phi_map(&f2.point(&[0.2]).unwrap()).unwrap().coords(), &[0.0, 0.2]);
    }

    #[test]
    fn rack_units_and_fixed_point() {
        let m = sl2_model();
        let e = m.base_point();
        let p = m.point(&[0.1, 0.05, -0.07]).unwrap();
        assert_eq!(m.rack_product(&e, &p).unwrap(), p);
        assert_eq!(m.rack_product(&p, &e).unwrap(), e);
        let g = m.group_element(&[0.2, -0.1, 0.3]).unwrap();
        assert_eq!(m.q_action(&g, &e).unwrap(), e);
    }

    #[test]
    fn drifted_point_rejected() {
        let m = sl2_model();
        let mut p = m.point(&[0.1, 0.0, 0.0]).unwrap();
        p.u[0] += 1e-3;
        assert!(m.validate_point(&p).is_err());
    }

    #[test]
    fn local_laws_hold_on_samples() {
        for m in [sl2_model(), f_model(2.0), f_model(-1.0), zero_theta_model()] {
            let r = check_local_laws(&m, 200, 5).unwrap();
            assert!(r.passed, "{:?}", r.first_failure());
            assert!(r.law("self_distributivity").unwrap().checked > 100);
            assert!(r.law("gset_composition").unwrap().checked > 100);
        }
    }

    #[test]
    fn equivariance_examples() {
        let r = check_equivariance(&sl2_model(), 200, 1, 1e-8).unwrap();
        assert!(r.passed);
        assert_eq!(r.law("equivariance_g").unwrap().checked, 200);

        let m = f_model(2.0);
        assert!(check_equivariance(&m, 200, 1, 1e-8).unwrap().passed);
        let g = m.group_element(&[0.1, 0.0]).unwrap();
        let p = m.point(&[0.05]).unwrap();
        assert!(m.equivariance_defect(&g, &p).unwrap() > 1e-4);
    }

    #[test]
    fn sl2_roundtrip_recovers_structure_constants() {
        let m = sl2_model();
        let rec = recover_tangent_triple(&m).unwrap();
        let rt = roundtrip_residuals(&m, &rec);
        assert!(rt.bracket <= 1e-5 && rt.max <= 1e-4, "{rt:?}");
        let m = m.with_cfg(DiffConfig::new(1e-4, Scheme::Richardson).unwrap());
        let rt = roundtrip_residuals(&m, &recover_tangent_triple(&m).unwrap());
        assert!(rt.max <= 1e-7, "{rt:?}");
    }

    #[test]
    fn scaling_roundtrip_examples() {
        let m = f_model(2.0);
        let rec = recover_tangent_triple(&m).unwrap();
        assert!((rec.action[0][(0, 0)] - 2.0).abs() <= 1e-5);
        assert!((&rec.theta - m.triple().theta().matrix()).max_abs() <= 1e-6);
    }

    #[test]
    fn a_theta_examples() {
        let m = f_model(2.0);
        let d = recover_a_theta(&m, &[1.0, 0.0], &[1.0]).unwrap();
        assert!(linalg::max_abs_diff(&d, &[0.0, -1.0]) <= 1e-4, "{d:?}");
        // a in the image of θ
        let d = recover_a_theta(&m, &[0.0, 1.0], &[1.0]).unwrap();
        assert!(linalg::norm(&d) <= 1e-5);
        let s = sl2_model();
        for e in a_theta_correspondence(&s).unwrap() {
            assert!(linalg::norm(&e.recovered) <= 1e-5);
        }
    }

    #[test]
    fn integration_report_is_deterministic() {
        let m = f_model(2.0);
        let settings = IntegrationSettings { samples: 50, ..Default::default() };
        let a = integrate(&m, &settings).unwrap();
        let b = integrate(&m, &settings).unwrap();
        assert!(a.passed);
        assert_eq!(format!("{a:?}"), format!("{b:?}"));
    }
}

//! Lie-Leibniz triples, racks, and the local integration of a triple into a
//! local relaxed augmented Lie rack, realized numerically in exponential
//! coordinates.
//!
//! The numerical layers are generic over the scalar type (`f32` or `f64`, see
//! [`Scalar`]); the aliases at the crate root fix `f64`, which is what the CLI
//! and the default tolerances are calibrated for.

pub mod algebra;
pub mod builtins;
pub mod catalog;
pub mod error;
pub mod integrator;
pub mod linalg;
pub mod local;
pub mod racks;
pub mod report;
pub mod scalar;
pub mod triples;

pub use algebra::{
    bracket_closure_check, check_leibniz, check_lie_algebra, check_module, default_tolerance, LeibnizAlgebraData,
    LieAlgebraData, ModuleAction, SubspaceBasis,
};
pub use builtins::{standard_corpus, Builtin};
pub use error::{Error, Result};
pub use integrator::{
    build_model, check_equivariance, check_local_laws, integrate, recover_a_theta, recover_tangent_triple,
    IntegrationReport, IntegrationSettings, LocalRackModel, MPoint, ModelOptions, RecoveredTriple,
};
pub use linalg::Matrix;
pub use local::{derivative_at_identity, mixed_second_derivative, s_map, DiffConfig, GroupElement, MatrixRep, Scheme};
pub use racks::{
    a3_in_s3, augmented_rack_from_crossed_module, check_group_rack_triple, check_rack, check_rack_triple_morphism,
    conjugation_rack, g_theta, FiniteGroup, FiniteRack, GroupCrossedModule, GroupRackTriple,
};
pub use report::{LawCheck, ValidityReport, Violation};
pub use scalar::Scalar;
pub use triples::{
    a_theta, build_triple, check_morphism, is_strict, max_strictness_subalgebra, random_triple,
    triple_from_crossed_module, EmbeddingTensor, LieAlgCrossedModule, LieLeibnizTriple, RelaxedAugmentation,
    TripleComponents, TripleFamily, TripleMorphism,
};

pub type LieAlgebra = LieAlgebraData<f64>;
pub type Module = ModuleAction<f64>;
pub type LeibnizAlgebra = LeibnizAlgebraData<f64>;
pub type Subspace = SubspaceBasis<f64>;
pub type Report = ValidityReport<f64>;
pub type Triple = LieLeibnizTriple<f64>;
pub type Rep = MatrixRep<f64>;
pub type Model = LocalRackModel<f64>;

//! Named examples and the standard triple corpus.

use std::str::FromStr;

use crate::catalog::{self, CatalogAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Svd};
use crate::racks::{FiniteGroup, GroupRackTriple};
use crate::scalar::{lit, Scalar};
use crate::triples::{adjoint_triple, ideal_triple, scaling_family, GeneratedTriple, TripleComponents};

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Builtin {
    /// `(sl2, sl2, id)` with the adjoint action.
    Sl2Adjoint,
    /// `F(λ)`.
    Scaling(f64),
    /// The Heisenberg algebra acting on its ideal `span{y, z}`, with the 3×3
    /// strictly upper-triangular representation.
    HeisenbergIdeal,
    /// The conjugation rack triple of `S3`.
    S3Conjugation,
}

impl Builtin {
    pub const NAMES: [&'static str; 4] = ["sl2-adjoint", "scaling:<λ>", "heisenberg-ideal", "s3-conjugation"];

    pub fn name(&self) -> String {
        match self {
            Builtin::Sl2Adjoint => "sl2-adjoint".into(),
            Builtin::Scaling(l) => format!("scaling:{l}"),
            Builtin::HeisenbergIdeal => "heisenberg-ideal".into(),
            Builtin::S3Conjugation => "s3-conjugation".into(),
        }
    }

    /// The triple with an optional faithful representation; `None` for racks.
    pub fn triple<T: Scalar>(&self) -> Option<(TripleComponents<T>, Option<Vec<Matrix<T>>>)> {
        match *self {
            Builtin::Sl2Adjoint => Some((adjoint_triple(&catalog::sl2()), None)),
            Builtin::Scaling(l) => Some((scaling_family(lit(l)), None)),
            Builtin::HeisenbergIdeal => {
                let alg = catalog::heisenberg::<T>();
                let basis = Matrix::from_columns(3, &[vec![T::zero(), T::one(), T::zero()], vec![T::zero(), T::zero(), T::one()]]);
                let comps = ideal_triple(&alg, &basis).expect("span{y, z} is an ideal");
                Some((comps, Some(catalog::heisenberg_rep())))
            }
            Builtin::S3Conjugation => None,
        }
    }

    pub fn rack(&self) -> Option<GroupRackTriple> {
        match self {
            Builtin::S3Conjugation => Some(GroupRackTriple::conjugation(&FiniteGroup::symmetric(3))),
            _ => None,
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl2-adjoint" => Ok(Builtin::Sl2Adjoint),
            "heisenberg-ideal" => Ok(Builtin::HeisenbergIdeal),
            "s3-conjugation" => Ok(Builtin::S3Conjugation),
            _ => match s.strip_prefix("scaling:") {
                Some(l) => l
                    .parse::<f64>()
                    .ok()
                    .filter(|l| l.is_finite())
                    .map(Builtin::Scaling)
                    .ok_or_else(|| Error::Precondition(format!("invalid scaling parameter {l:?}"))),
                None => Err(Error::Precondition(format!("unknown builtin {s:?}; expected one of {}", Builtin::NAMES.join(", ")))),
            },
        }
    }
}

/// Scaling parameters of the standard corpus.
pub const CORPUS_LAMBDAS: [f64; 5] = [-1.0, 0.0, 0.5, 1.0, 2.0];

/// Every catalog ideal triple, `F(λ)` over [`CORPUS_LAMBDAS`] and the adjoint
/// triple of every catalog algebra, each with a faithful representation.
pub fn standard_corpus<T: Scalar>() -> Vec<GeneratedTriple<T>> {
    let mut out = Vec::new();
    for which in CatalogAlgebra::ALL {
        let alg = which.algebra::<T>();
        for (name, vectors) in which.ideals() {
            let cols: Vec<Vec<T>> = vectors.iter().map(|v| v.iter().map(|&x| lit(x)).collect()).collect();
            let basis = Matrix::from_columns(alg.dim(), &cols);
            debug_assert!(Svd::new(&basis).rank(lit(1e-12)) == cols.len());
            out.push(GeneratedTriple {
                label: format!("ideal:{}/{name}", which.name()),
                components: ideal_triple(&alg, &basis).expect("catalog ideals have full rank"),
                faithful_rep: which.faithful_rep(),
            });
        }
    }
    for l in CORPUS_LAMBDAS {
        out.push(GeneratedTriple {
            label: format!("scaling:{l}"),
            components: scaling_family(lit(l)),
            faithful_rep: catalog::aff1_rep(),
        });
    }
    for which in CatalogAlgebra::ALL {
        out.push(GeneratedTriple {
            label: format!("adjoint:{}", which.name()),
            components: adjoint_triple(&which.algebra()),
            faithful_rep: which.faithful_rep(),
        });
    }
    out
}

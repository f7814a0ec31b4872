//! Named Lie algebras with faithful matrix representations and a few of their ideals.

use serde::{Deserialize, Serialize};

use crate::algebra::LieAlgebraData;
use crate::linalg::{self, Matrix};
use crate::scalar::{lit, Scalar};

fn mat<T: Scalar>(rows: &[&[f64]]) -> Matrix<T> {
    let rows: Vec<Vec<T>> = rows.iter().map(|r| r.iter().map(|&x| lit(x)).collect()).collect();
    Matrix::from_rows(&rows).expect("catalog matrices are rectangular")
}

/// Elementary matrix `E_{ij}` of size `n`.
fn elementary<T: Scalar>(n: usize, i: usize, j: usize) -> Matrix<T> {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = T::one();
    m
}

pub fn abelian<T: Scalar>(n: usize) -> LieAlgebraData<T> {
    let labels: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
    LieAlgebraData::new(labels, vec![T::zero(); n * n * n]).expect("abelian algebra is well-shaped")
}

/// The 2-dimensional nonabelian algebra `[a, b] = b`.
pub fn aff1<T: Scalar>() -> LieAlgebraData<T> {
    LieAlgebraData::from_brackets(&["a", "b"], &[(0, 1, 1, 1.0)]).expect("static data")
}

/// `[x, y] = z`.
pub fn heisenberg<T: Scalar>() -> LieAlgebraData<T> {
    LieAlgebraData::from_brackets(&["x", "y", "z"], &[(0, 1, 2, 1.0)]).expect("static data")
}

/// `[h, e] = 2e`, `[h, f] = −2f`, `[e, f] = h`.
pub fn sl2<T: Scalar>() -> LieAlgebraData<T> {
    LieAlgebraData::from_brackets(&["h", "e", "f"], &[(0, 1, 1, 2.0), (0, 2, 2, -2.0), (1, 2, 0, 1.0)])
        .expect("static data")
}

const UPPER3_LABELS: [&str; 6] = ["E11", "E12", "E13", "E22", "E23", "E33"];
const UPPER3_POSITIONS: [(usize, usize); 6] = [(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];

/// Upper-triangular 3×3 matrices with basis `E11, E12, E13, E22, E23, E33`.
pub fn upper_triangular3<T: Scalar>() -> LieAlgebraData<T> {
    LieAlgebraData::from_matrix_basis(&UPPER3_LABELS, &upper_triangular3_rep()).expect("static data")
}

pub fn sl2_fundamental<T: Scalar>() -> Vec<Matrix<T>> {
    vec![mat(&[&[1.0, 0.0], &[0.0, -1.0]]), mat(&[&[0.0, 1.0], &[0.0, 0.0]]), mat(&[&[0.0, 0.0], &[1.0, 0.0]])]
}

/// `a ↦ E11`, `b ↦ E12`.
pub fn aff1_rep<T: Scalar>() -> Vec<Matrix<T>> {
    vec![elementary(2, 0, 0), elementary(2, 0, 1)]
}

/// Strictly upper-triangular 3×3 matrices: `x ↦ E12`, `y ↦ E23`, `z ↦ E13`.
pub fn heisenberg_rep<T: Scalar>() -> Vec<Matrix<T>> {
    vec![elementary(3, 0, 1), elementary(3, 1, 2), elementary(3, 0, 2)]
}

/// Diagonal matrices `x_i ↦ E_ii`.
pub fn abelian_rep<T: Scalar>(n: usize) -> Vec<Matrix<T>> {
    (0..n).map(|i| elementary(n, i, i)).collect()
}

pub fn upper_triangular3_rep<T: Scalar>() -> Vec<Matrix<T>> {
    UPPER3_POSITIONS.iter().map(|&(i, j)| elementary(3, i, j)).collect()
}

/// Algebras available to the generators and the CLI.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CatalogAlgebra {
    Abelian3,
    Aff1,
    Heisenberg,
    Sl2,
    UpperTriangular3,
}

impl CatalogAlgebra {
    pub const ALL: [CatalogAlgebra; 5] = [
        CatalogAlgebra::Abelian3,
        CatalogAlgebra::Aff1,
        CatalogAlgebra::Heisenberg,
        CatalogAlgebra::Sl2,
        CatalogAlgebra::UpperTriangular3,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogAlgebra::Abelian3 => "abelian3",
            CatalogAlgebra::Aff1 => "aff1",
            CatalogAlgebra::Heisenberg => "heisenberg",
            CatalogAlgebra::Sl2 => "sl2",
            CatalogAlgebra::UpperTriangular3 => "upper_triangular3",
        }
    }

    pub fn algebra<T: Scalar>(self) -> LieAlgebraData<T> {
        match self {
            CatalogAlgebra::Abelian3 => abelian(3),
            CatalogAlgebra::Aff1 => aff1(),
            CatalogAlgebra::Heisenberg => heisenberg(),
            CatalogAlgebra::Sl2 => sl2(),
            CatalogAlgebra::UpperTriangular3 => upper_triangular3(),
        }
    }

    pub fn faithful_rep<T: Scalar>(self) -> Vec<Matrix<T>> {
        match self {
            CatalogAlgebra::Abelian3 => abelian_rep(3),
            CatalogAlgebra::Aff1 => aff1_rep(),
            CatalogAlgebra::Heisenberg => heisenberg_rep(),
            CatalogAlgebra::Sl2 => sl2_fundamental(),
            CatalogAlgebra::UpperTriangular3 => upper_triangular3_rep(),
        }
    }

    /// Named ideals, each given by spanning coordinate vectors.
    pub fn ideals(self) -> Vec<(&'static str, Vec<Vec<f64>>)> {
        let e = |n: usize, i: usize| linalg::unit::<f64>(n, i);
        match self {
            CatalogAlgebra::Abelian3 => vec![
                ("line", vec![e(3, 0)]),
                ("plane", vec![e(3, 0), e(3, 1)]),
                ("full", (0..3).map(|i| e(3, i)).collect()),
            ],
            CatalogAlgebra::Aff1 => vec![("derived", vec![e(2, 1)]), ("full", vec![e(2, 0), e(2, 1)])],
            CatalogAlgebra::Heisenberg => vec![
                ("center", vec![e(3, 2)]),
                ("yz", vec![e(3, 1), e(3, 2)]),
                ("xz", vec![e(3, 0), e(3, 2)]),
                ("full", (0..3).map(|i| e(3, i)).collect()),
            ],
            CatalogAlgebra::Sl2 => vec![("full", (0..3).map(|i| e(3, i)).collect())],
            CatalogAlgebra::UpperTriangular3 => vec![
                ("corner", vec![e(6, 2)]),
                ("row", vec![e(6, 1), e(6, 2)]),
                ("nilradical", vec![e(6, 1), e(6, 2), e(6, 4)]),
                ("center", vec![vec![1.0, 0.0, 0.0, 1.0, 0.0, 1.0]]),
                ("full", (0..6).map(|i| e(6, i)).collect()),
            ],
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|a| a.name() == name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{bracket_closure_check, check_lie_algebra, SubspaceBasis};

    #[test]
    fn catalog_algebras_are_lie_and_reps_reproduce_constants() {
        for alg in CatalogAlgebra::ALL {
            let data = alg.algebra::<f64>();
            assert!(check_lie_algebra(&data, 1e-9).passed, "{}", alg.name());
            let labels: Vec<&str> = data.labels().iter().map(String::as_str).collect();
            let from_rep = LieAlgebraData::from_matrix_basis(&labels, &alg.faithful_rep::<f64>()).unwrap();
            let diff = from_rep.constants().iter().zip(data.constants()).fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
            assert!(diff < 1e-12, "{}", alg.name());
        }
    }

    #[test]
    fn catalog_ideals_are_ideals() {
        for alg in CatalogAlgebra::ALL {
            let data = alg.algebra::<f64>();
            for (name, vecs) in alg.ideals() {
                let sub = SubspaceBasis::new(data.dim(), vecs.clone()).unwrap();
                assert!(bracket_closure_check(&data, &sub, 1e-12).unwrap());
                for i in 0..data.dim() {
                    for v in &vecs {
                        let b = data.bracket(&linalg::unit(data.dim(), i), v);
                        assert!(sub.contains(&b, 1e-12), "{} / {name}", alg.name());
                    }
                }
            }
        }
    }

    #[test]
    fn upper_triangular_brackets() {
        let u = upper_triangular3::<f64>();
        // [E12, E23] = E13
        assert!((u.c(1, 4, 2) - 1.0).abs() < 1e-12);
        // [E11, E12] = E12
        assert!((u.c(0, 1, 1) - 1.0).abs() < 1e-12);
    }
}

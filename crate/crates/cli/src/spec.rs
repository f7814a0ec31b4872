//! JSON input formats.

use serde::Deserialize;

use lierack::triples::TripleComponents;
use lierack::{
    Error, FiniteGroup, GroupRackTriple, LieAlgebra, Matrix, Module, Rep, Scheme, Subspace,
};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LieAlgebraSpec {
    pub dim: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    /// `[i, j, k, value]`: the coefficient of `e_k` in `[e_i, e_j]`.
    pub structure_constants: Vec<(usize, usize, usize, f64)>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub dim_v: usize,
    /// One `dim_v × dim_v` matrix (list of rows) per algebra basis vector.
    pub action_matrices: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThetaSpec {
    /// `dim × dim_v`, list of rows.
    pub matrix: Vec<Vec<f64>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RepSpec {
    pub matrix_dim: usize,
    pub matrices: Vec<Vec<Vec<f64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HBasisSpec {
    pub vectors: Vec<Vec<f64>>,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigSpec {
    pub tolerance: Option<f64>,
    pub radius: Option<f64>,
    pub step: Option<f64>,
    pub scheme: Option<Scheme>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TargetSpec {
    pub lie_algebra: LieAlgebraSpec,
    pub module: ModuleSpec,
    pub theta: ThetaSpec,
}

/// `(φ, ψ)` from the file's triple to `target` (the triple itself when absent).
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub phi: Vec<Vec<f64>>,
    pub psi: Vec<Vec<f64>>,
    #[serde(default)]
    pub target: Option<TargetSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TripleSpecFile {
    pub lie_algebra: LieAlgebraSpec,
    pub module: ModuleSpec,
    pub theta: ThetaSpec,
    #[serde(default)]
    pub faithful_rep: Option<RepSpec>,
    #[serde(default)]
    pub h_basis: Option<HBasisSpec>,
    #[serde(default)]
    pub config: Option<ConfigSpec>,
    #[serde(default)]
    pub morphism: Option<MorphismSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub size: usize,
    pub mul_table: Vec<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RackSpecFile {
    pub group: GroupSpec,
    pub x_size: usize,
    /// `action_table[g][x] = g·x`.
    pub action_table: Vec<Vec<usize>>,
    pub theta_table: Vec<usize>,
    pub basepoint: usize,
}

pub enum SpecFile {
    Triple(Box<TripleSpecFile>),
    Rack(RackSpecFile),
}

/// Parse failure with the position reported by the JSON reader.
#[derive(Debug)]
pub struct ParseError(pub String);

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn parse_error(e: serde_json::Error) -> ParseError {
    ParseError(e.to_string())
}

pub fn parse(text: &str) -> Result<SpecFile, ParseError> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(parse_error)?;
    match value.as_object() {
        Some(obj) if obj.contains_key("group") => serde_json::from_str(text).map(SpecFile::Rack).map_err(parse_error),
        Some(obj) if obj.contains_key("lie_algebra") => {
            serde_json::from_str(text).map(|t| SpecFile::Triple(Box::new(t))).map_err(parse_error)
        }
        _ => Err(ParseError("expected a JSON object with a \"lie_algebra\" or a \"group\" key".into())),
    }
}

fn matrix(rows: &[Vec<f64>], shape: (usize, usize), what: &str) -> Result<Matrix<f64>, Error> {
    let bad = || Error::Shape(format!("{what} must be {}×{}", shape.0, shape.1));
    if rows.len() != shape.0 || rows.iter().any(|r| r.len() != shape.1) {
        return Err(bad());
    }
    if shape.1 == 0 {
        return Ok(Matrix::zeros(shape.0, 0));
    }
    Matrix::from_rows(rows).ok_or_else(bad)
}

fn algebra(spec: &LieAlgebraSpec) -> Result<LieAlgebra, Error> {
    let labels = match &spec.labels {
        Some(l) if l.len() != spec.dim => {
            return Err(Error::Shape(format!("{} labels for dimension {}", l.len(), spec.dim)))
        }
        Some(l) => l.clone(),
        None => (0..spec.dim).map(|i| format!("e{i}")).collect(),
    };
    LieAlgebra::from_entries(labels, &spec.structure_constants)
}

fn components(alg: &LieAlgebraSpec, module: &ModuleSpec, theta: &ThetaSpec) -> Result<TripleComponents<f64>, Error> {
    let algebra = algebra(alg)?;
    let (n, d) = (alg.dim, module.dim_v);
    if module.action_matrices.len() != n {
        return Err(Error::Shape(format!("{} action matrices for dimension {n}", module.action_matrices.len())));
    }
    let mats = module
        .action_matrices
        .iter()
        .enumerate()
        .map(|(i, m)| matrix(m, (d, d), &format!("action matrix {i}")))
        .collect::<Result<Vec<_>, _>>()?;
    let action = Module::new(&algebra, d, mats)?;
    let theta = matrix(&theta.matrix, (n, d), "theta")?;
    Ok(TripleComponents::new(algebra, action, theta))
}

impl TripleSpecFile {
    pub fn components(&self) -> Result<TripleComponents<f64>, Error> {
        components(&self.lie_algebra, &self.module, &self.theta)
    }

    pub fn rep(&self, algebra: &LieAlgebra, tol: f64) -> Result<Option<Rep>, Error> {
        let Some(spec) = &self.faithful_rep else { return Ok(None) };
        let m = spec.matrix_dim;
        let mats = spec
            .matrices
            .iter()
            .enumerate()
            .map(|(i, r)| matrix(r, (m, m), &format!("representation matrix {i}")))
            .collect::<Result<Vec<_>, _>>()?;
        Rep::new(algebra, mats, tol).map(Some)
    }

    pub fn h_basis(&self) -> Result<Option<Subspace>, Error> {
        self.h_basis.as_ref().map(|h| Subspace::new(self.lie_algebra.dim, h.vectors.clone())).transpose()
    }
}

impl MorphismSpec {
    pub fn target(&self) -> Option<Result<TripleComponents<f64>, Error>> {
        self.target.as_ref().map(|t| components(&t.lie_algebra, &t.module, &t.theta))
    }

    pub fn matrices(&self, source: (usize, usize), target: (usize, usize)) -> Result<(Matrix<f64>, Matrix<f64>), Error> {
        Ok((matrix(&self.phi, (target.0, source.0), "phi")?, matrix(&self.psi, (target.1, source.1), "psi")?))
    }
}

impl RackSpecFile {
    pub fn triple(&self) -> Result<GroupRackTriple, Error> {
        let g = &self.group;
        if g.mul_table.len() != g.size || g.mul_table.iter().any(|r| r.len() != g.size) {
            return Err(Error::Shape(format!("mul_table must be {0}×{0}", g.size)));
        }
        let group = FiniteGroup::from_rows(&g.mul_table)?;
        if self.action_table.len() != g.size || self.action_table.iter().any(|r| r.len() != self.x_size) {
            return Err(Error::Shape(format!("action_table must be {}×{}", g.size, self.x_size)));
        }
        GroupRackTriple::new(group, self.x_size, self.action_table.concat(), self.theta_table.clone(), self.basepoint)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SCALING: &str = r#"{
        "lie_algebra": {"dim": 2, "labels": ["a", "b"], "structure_constants": [[0, 1, 1, 1.0], [1, 0, 1, -1.0]]},
        "module": {"dim_v": 1, "action_matrices": [[[2.0]], [[0.0]]]},
        "theta": {"matrix": [[0.0], [1.0]]}
    }"#;

    #[test]
    fn triple_file_parses() {
        let SpecFile::Triple(t) = parse(SCALING).unwrap() else { panic!("expected a triple") };
        let c = t.components().unwrap();
        assert!(c.check(1e-9).unwrap().passed);
    }

    #[test]
    fn parse_errors_carry_positions() {
        let e = parse("{\n  \"lie_algebra\": [1,\n").err().unwrap();
        assert!(e.0.contains("line"));
        let e = parse(r#"{"lie_algebra": {"dim": 2}}"#).err().unwrap();
        assert!(e.0.contains("structure_constants"));
    }

    #[test]
    fn dimension_mismatch_is_shape_error() {
        let text = SCALING.replace(r#"[[0.0], [1.0]]"#, r#"[[0.0, 1.0]]"#);
        let SpecFile::Triple(t) = parse(&text).unwrap() else { panic!() };
        assert!(matches!(t.components(), Err(Error::Shape(_))));
    }

    #[test]
    fn rack_file_parses() {
        let text = r#"{"group": {"size": 2, "mul_table": [[0, 1], [1, 0]]},
            "x_size": 2, "action_table": [[0, 1], [0, 1]], "theta_table": [0, 1], "basepoint": 0}"#;
        let SpecFile::Rack(r) = parse(text).unwrap() else { panic!() };
        assert!(lierack::check_group_rack_triple(&r.triple().unwrap()).passed);
    }
}

//! Serde schemas for tuples, polynomials, ideals, Pick problems and automorphisms.
//!
//! Complex numbers are `[re, im]` pairs and matrices are row-major lists of rows. Letters
//! in words are zero based. Conversions into domain objects validate every invariant and
//! report failures as [`NcError::Invalid`] with a field path such as `generators[1]`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{NcError, Result};
use crate::freealg::{FreePoly, MatrixTuple, Word};
use crate::ideals::GradedIdeal;
use crate::linalg::{CMatrix, CVector};
use crate::mobius::BallAutomorphism;
use crate::pick::PickProblem;

pub type ComplexJson = [f64; 2];
pub type MatrixJson = Vec<Vec<ComplexJson>>;
pub type VectorJson = Vec<ComplexJson>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TupleJson {
    pub d: usize,
    pub n: usize,
    pub matrices: Vec<MatrixJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub word: Vec<usize>,
    pub re: f64,
    #[serde(default)]
    pub im: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    pub d: usize,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealJson {
    pub d: usize,
    #[serde(default)]
    pub generators: Vec<PolyJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PickJson {
    pub nodes: Vec<TupleJson>,
    pub targets: Vec<MatrixJson>,
    #[serde(default = "default_e")]
    pub e: usize,
}

fn default_e() -> usize {
    1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AutomorphismJson {
    pub d: usize,
    #[serde(rename = "T")]
    pub t: MatrixJson,
}

fn at(path: &str, err: NcError) -> NcError {
    match err {
        NcError::Invalid { path: inner, message } => NcError::Invalid {
            path: format!("{path}.{inner}"),
            message,
        },
        other => NcError::Invalid {
            path: path.to_string(),
            message: other.to_string(),
        },
    }
}

fn complex(c: &ComplexJson) -> Complex64 {
    Complex64::new(c[0], c[1])
}

fn pair(c: Complex64) -> ComplexJson {
    [c.re, c.im]
}

/// Row-major matrix with exactly `rows × cols` entries.
pub fn matrix_from_json(m: &MatrixJson, rows: usize, cols: usize, path: &str) -> Result<CMatrix> {
    if m.len() != rows {
        return Err(NcError::invalid(path, format!("expected {rows} rows, found {}", m.len())));
    }
    for (i, row) in m.iter().enumerate() {
        if row.len() != cols {
            return Err(NcError::invalid(
                format!("{path}[{i}]"),
                format!("expected {cols} entries, found {}", row.len()),
            ));
        }
    }
    Ok(CMatrix::from_fn(rows, cols, |i, j| complex(&m[i][j])))
}

/// Square matrix of any size.
pub fn square_from_json(m: &MatrixJson, path: &str) -> Result<CMatrix> {
    matrix_from_json(m, m.len(), m.len(), path)
}

pub fn matrix_to_json(m: &CMatrix) -> MatrixJson {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| pair(m[(i, j)])).collect())
        .collect()
}

pub fn vector_from_json(v: &VectorJson) -> CVector {
    CVector::from_iterator(v.len(), v.iter().map(complex))
}

impl TupleJson {
    pub fn to_tuple(&self, path: &str) -> Result<MatrixTuple> {
        if self.matrices.len() != self.d {
            return Err(NcError::invalid(
                format!("{path}matrices"),
                format!("expected d = {} matrices, found {}", self.d, self.matrices.len()),
            ));
        }
        if self.n == 0 {
            return Err(NcError::invalid(format!("{path}n"), "level must be positive"));
        }
        let matrices = self
            .matrices
            .iter()
            .enumerate()
            .map(|(j, m)| matrix_from_json(m, self.n, self.n, &format!("{path}matrices[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        let context = if path.is_empty() { "matrices" } else { path.trim_end_matches('.') };
        MatrixTuple::new(matrices).map_err(|e| at(context, e))
    }
}

impl From<&MatrixTuple> for TupleJson {
    fn from(x: &MatrixTuple) -> Self {
        TupleJson {
            d: x.arity(),
            n: x.level(),
            matrices: x.matrices().iter().map(matrix_to_json).collect(),
        }
    }
}

impl PolyJson {
    pub fn to_poly(&self, path: &str) -> Result<FreePoly> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (k, t) in self.terms.iter().enumerate() {
            let word = Word::from_usize(&t.word, self.d)
                .map_err(|e| at(&format!("{path}terms[{k}].word"), e))?;
            terms.push((word, Complex64::new(t.re, t.im)));
        }
        FreePoly::from_terms(self.d, terms).map_err(|e| at(&format!("{path}d"), e))
    }
}

impl From<&FreePoly> for PolyJson {
    fn from(p: &FreePoly) -> Self {
        PolyJson {
            d: p.arity(),
            terms: p
                .terms()
                .map(|(w, c)| TermJson {
                    word: w.letters().iter().map(|&l| l as usize).collect(),
                    re: c.re,
                    im: c.im,
                })
                .collect(),
        }
    }
}

impl IdealJson {
    pub fn to_ideal(&self) -> Result<GradedIdeal> {
        let mut generators = Vec::with_capacity(self.generators.len());
        for (i, g) in self.generators.iter().enumerate() {
            let path = format!("generators[{i}]");
            if g.d != self.d {
                return Err(NcError::invalid(
                    format!("{path}.d"),
                    format!("generator arity {} differs from ideal arity {}", g.d, self.d),
                ));
            }
            let p = g.to_poly(&format!("{path}."))?;
            if !p.is_homogeneous() {
                return Err(NcError::invalid(
                    path,
                    format!(
                        "generator {i} is not homogeneous (degrees {}..={})",
                        p.min_degree().unwrap_or(0),
                        p.degree().unwrap_or(0)
                    ),
                ));
            }
            generators.push(p);
        }
        GradedIdeal::new(self.d, generators).map_err(|e| at("d", e))
    }
}

impl From<&GradedIdeal> for IdealJson {
    fn from(j: &GradedIdeal) -> Self {
        IdealJson {
            d: j.arity(),
            generators: j.generators().iter().map(PolyJson::from).collect(),
        }
    }
}

impl PickJson {
    pub fn to_problem(&self) -> Result<PickProblem> {
        if self.targets.len() != self.nodes.len() {
            return Err(NcError::invalid(
                "targets",
                format!("expected {} targets, found {}", self.nodes.len(), self.targets.len()),
            ));
        }
        let nodes = self
            .nodes
            .iter()
            .enumerate()
            .map(|(i, z)| z.to_tuple(&format!("nodes[{i}].")))
            .collect::<Result<Vec<_>>>()?;
        let targets = self
            .targets
            .iter()
            .zip(&nodes)
            .enumerate()
            .map(|(i, (w, z))| {
                let size = z.level() * self.e;
                matrix_from_json(w, size, size, &format!("targets[{i}]"))
            })
            .collect::<Result<Vec<_>>>()?;
        PickProblem::new(nodes, targets, self.e).map_err(|e| at("problem", e))
    }
}

impl AutomorphismJson {
    pub fn to_automorphism(&self) -> Result<BallAutomorphism> {
        let t = matrix_from_json(&self.t, self.d + 1, self.d + 1, "T")?;
        BallAutomorphism::from_matrix(t).map_err(|e| at("T", e))
    }
}

impl From<&BallAutomorphism> for AutomorphismJson {
    fn from(phi: &BallAutomorphism) -> Self {
        AutomorphismJson {
            d: phi.arity(),
            t: matrix_to_json(phi.matrix()),
        }
    }
}

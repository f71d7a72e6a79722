//! File loading with schema validation and input digests.

use std::fmt;

use serde::de::DeserializeOwned;

use ncball::json::{
    square_from_json, vector_from_json, AutomorphismJson, IdealJson, MatrixJson, PickJson, PolyJson,
    TupleJson, VectorJson,
};
use ncball::{BallAutomorphism, CMatrix, CVector, FreePoly, GradedIdeal, MatrixTuple, NcError, PickProblem};

use crate::record::InputDigest;

/// A usage or data error; always exit code 2.
#[derive(Clone, Debug, PartialEq)]
pub struct CliError(pub String);

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CliError {}

impl From<NcError> for CliError {
    fn from(e: NcError) -> Self {
        CliError(e.to_string())
    }
}

/// Reads input files and remembers their digests.
#[derive(Debug, Default)]
pub struct Loader {
    pub digests: Vec<InputDigest>,
}

impl Loader {
    fn parse<T: DeserializeOwned>(&mut self, path: &str) -> Result<T, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError(format!("{path}: {e}")))?;
        self.digests.push(InputDigest::of(path, &bytes));
        serde_json::from_slice(&bytes).map_err(|e| CliError(format!("{path}: {e}")))
    }

    fn context(path: &str) -> impl Fn(NcError) -> CliError + '_ {
        move |e| CliError(format!("{path}: {e}"))
    }

    pub fn tuple(&mut self, path: &str) -> Result<MatrixTuple, CliError> {
        self.parse::<TupleJson>(path)?
            .to_tuple("")
            .map_err(Self::context(path))
    }

    pub fn poly(&mut self, path: &str) -> Result<FreePoly, CliError> {
        self.parse::<PolyJson>(path)?
            .to_poly("")
            .map_err(Self::context(path))
    }

    pub fn ideal(&mut self, path: &str) -> Result<GradedIdeal, CliError> {
        self.parse::<IdealJson>(path)?
            .to_ideal()
            .map_err(Self::context(path))
    }

    pub fn problem(&mut self, path: &str) -> Result<PickProblem, CliError> {
        self.parse::<PickJson>(path)?
            .to_problem()
            .map_err(Self::context(path))
    }

    pub fn automorphism(&mut self, path: &str) -> Result<BallAutomorphism, CliError> {
        self.parse::<AutomorphismJson>(path)?
            .to_automorphism()
            .map_err(Self::context(path))
    }

    pub fn square(&mut self, path: &str) -> Result<CMatrix, CliError> {
        let m: MatrixJson = self.parse(path)?;
        square_from_json(&m, "matrix").map_err(Self::context(path))
    }

    pub fn vector(&mut self, path: &str) -> Result<CVector, CliError> {
        let v: VectorJson = self.parse(path)?;
        Ok(vector_from_json(&v))
    }
}

/// Loads and validates a tuple file.
pub fn load_tuple(path: &str) -> Result<MatrixTuple, CliError> {
    Loader::default().tuple(path)
}

/// Loads and validates an ideal file.
pub fn load_ideal(path: &str) -> Result<GradedIdeal, CliError> {
    Loader::default().ideal(path)
}

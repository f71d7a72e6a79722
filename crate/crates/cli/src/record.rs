//! Per-invocation run records, appended to a log file as JSON lines.

use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

impl InputDigest {
    pub fn of(path: &str, bytes: &[u8]) -> Self {
        InputDigest {
            path: path.to_string(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Parameters {
    pub degree: usize,
    pub t: f64,
    pub tol: f64,
    pub samples: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub parameters: Parameters,
    pub exit_code: i32,
    pub outputs: serde_json::Value,
    pub wall_ms: f64,
}

impl RunRecord {
    pub fn to_line(&self) -> String {
        let mut line = serde_json::to_string(self).expect("run record serializes");
        line.push('\n');
        line
    }

    pub fn from_line(line: &str) -> serde_json::Result<RunRecord> {
        serde_json::from_str(line)
    }

    pub fn append_to(&self, path: &Path) -> std::io::Result<()> {
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        file.write_all(self.to_line().as_bytes())
    }
}

#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::Command;

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub struct Case {
    pub name: String,
    pub expected_code: i32,
    pub args: Vec<String>,
}

pub struct CaseRun {
    pub case: Case,
    pub code: i32,
    pub stdout: String,
    pub golden: Option<String>,
}

impl CaseRun {
    pub fn matches(&self) -> bool {
        self.code == self.case.expected_code && self.golden.as_deref() == Some(self.stdout.as_str())
    }
}

pub fn cases() -> Vec<Case> {
    let manifest = std::fs::read_to_string(fixtures().join("cases.tsv")).expect("cases.tsv");
    manifest
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|line| {
            let mut cols = line.split('\t');
            let name = cols.next().expect("name").to_string();
            let expected_code = cols.next().expect("exit code").parse().expect("numeric exit code");
            let args = cols
                .next()
                .expect("arguments")
                .split_whitespace()
                .map(str::to_string)
                .collect();
            Case {
                name,
                expected_code,
                args,
            }
        })
        .collect()
}

/// Runs the binary on `args` from the fixture directory.
pub fn run_binary(args: &[String]) -> (i32, String) {
    let output = Command::new(env!("CARGO_BIN_EXE_ncball"))
        .args(args)
        .current_dir(fixtures())
        .output()
        .expect("spawn ncball");
    (
        output.status.code().expect("exit code"),
        String::from_utf8(output.stdout).expect("utf-8 output"),
    )
}

/// Runs every case; with `NCBALL_UPDATE_GOLDEN` set, rewrites the golden files first.
pub fn run_corpus() -> Vec<CaseRun> {
    let update = std::env::var_os("NCBALL_UPDATE_GOLDEN").is_some();
    cases()
        .into_iter()
        .map(|case| {
            let (code, stdout) = run_binary(&case.args);
            let path = fixtures().join("golden").join(format!("{}.json", case.name));
            if update {
                std::fs::write(&path, &stdout).expect("write golden file");
            }
            let golden = std::fs::read_to_string(&path).ok();
            CaseRun {
                case,
                code,
                stdout,
                golden,
            }
        })
        .collect()
}

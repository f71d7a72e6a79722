//! Command-line front end for `ncball`.
//!
//! Every command prints one newline-terminated JSON document. Exit code 0 is an
//! affirmative answer (or plain success), 1 a negative answer (infeasible, non-member,
//! inequivalent, or no witness because the polynomial is a member) and 2 a usage or data
//! error, reported as `{"error": ...}`.

pub mod args;
pub mod commands;
pub mod emit;
pub mod load;
pub mod record;

use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

use crate::args::Cli;
use crate::emit::Json;
use crate::load::Loader;
use crate::record::{Parameters, RunRecord};

pub use crate::load::{load_ideal, load_tuple, CliError};

pub const EXIT_AFFIRMATIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn error_document(message: &str) -> String {
    Json::object([("error", Json::from(message))]).render()
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome {
                code: EXIT_AFFIRMATIVE,
                stdout: e.to_string(),
                stderr: String::new(),
            };
        }
        Err(e) => {
            let rendered = e.to_string();
            let first = rendered.lines().next().unwrap_or("usage error");
            return Outcome {
                code: EXIT_ERROR,
                stdout: error_document(first.trim_start_matches("error: ")),
                stderr: rendered,
            };
        }
    };
    let start = Instant::now();
    let mut loader = Loader::default();
    let (code, body) = match commands::execute(&cli.command, &cli.flags, &mut loader) {
        Ok(response) => (response.code, response.body),
        Err(e) => (EXIT_ERROR, Json::object([("error", Json::from(e.0.as_str()))])),
    };
    let mut stderr = String::new();
    if let Some(path) = &cli.flags.log {
        let record = RunRecord {
            command: cli.command.name().to_string(),
            inputs: loader.digests,
            parameters: Parameters {
                degree: cli.flags.degree,
                t: cli.flags.t,
                tol: cli.flags.tol,
                samples: cli.flags.samples,
                seed: cli.flags.seed,
            },
            exit_code: code,
            outputs: body.to_value(),
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        if let Err(e) = record.append_to(path) {
            stderr = format!("warning: could not append run record to {}: {e}\n", path.display());
        }
    }
    Outcome {
        code,
        stdout: body.render(),
        stderr,
    }
}

// SPDX-License-Identifier: Apache-2.0

//! The `ergolab` batch tool. Each command returns its exit code and output
//! instead of printing, so tests can drive it in-process.

pub mod args;
pub mod commands;
pub mod fuzz;
pub mod grammar;

use std::path::Path;

use ergolab::format::FormatError;
use serde::Serialize;
use serde_json::Value;

pub use args::{Cli, Command, Emit, GlobalArgs, Method};

pub const EXIT_OK: u8 = 0;
/// The system is invalid, not ergodic, or a check failed.
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
/// Deciders disagree, which no valid system should ever produce.
pub const EXIT_DISAGREEMENT: u8 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{0}")]
    Format(#[from] FormatError),
    #[error(transparent)]
    Core(#[from] ergolab::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn to_json(&self) -> Value {
        match self {
            Self::Format(e) => serde_json::json!({ "error": { "path": e.path, "message": e.message } }),
            other => serde_json::json!({ "error": { "message": other.to_string() } }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    pub fn new(code: u8, stdout: String) -> Self {
        Self { code, stdout, stderr: String::new() }
    }

    fn error(err: &CliError, pretty: bool) -> Self {
        Self { code: EXIT_USAGE, stdout: render(&err.to_json(), pretty), stderr: format!("error: {err}\n") }
    }
}

pub fn run(cli: &Cli) -> Output {
    let GlobalArgs { cap, pretty } = cli.global;
    let cap = ergolab::BruteForceCap(cap);
    let result = match &cli.command {
        Command::Validate { path } => commands::validate(path, pretty),
        Command::Check { path, method, exhaustive } => commands::check(path, *method, *exhaustive, cap, pretty),
        Command::Converge { path, vector, with, n_grid, emit } => {
            commands::converge(path, vector, with.as_deref(), n_grid, *emit, pretty)
        }
        Command::Fuzz { atoms, systems, seed } => fuzz::run(*atoms, *systems, *seed, cap).map(|summary| {
            let code = if summary.clean() { EXIT_OK } else { EXIT_NEGATIVE };
            Output::new(code, render(&summary, pretty))
        }),
    };
    result.unwrap_or_else(|err| Output::error(&err, pretty))
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

/// One JSON document per line, or indented with decimal rationals when `pretty`.
pub fn render(value: &impl Serialize, pretty: bool) -> String {
    let mut value = serde_json::to_value(value).expect("reports serialize");
    let mut text = if pretty {
        decimalize(&mut value);
        serde_json::to_string_pretty(&value)
    } else {
        serde_json::to_string(&value)
    }
    .expect("values serialize");
    text.push('\n');
    text
}

/// Replaces every `{"num", "den"}` object by its decimal value.
fn decimalize(value: &mut Value) {
    match value {
        Value::Object(map) => {
            if map.len() == 2 {
                if let (Some(num), Some(den)) =
                    (map.get("num").and_then(Value::as_f64), map.get("den").and_then(Value::as_f64))
                {
                    *value = serde_json::json!(num / den);
                    return;
                }
            }
            map.values_mut().for_each(decimalize);
        }
        Value::Array(items) => items.iter_mut().for_each(decimalize),
        _ => {}
    }
}

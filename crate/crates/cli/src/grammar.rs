// SPDX-License-Identifier: Apache-2.0

//! Command-line mini-grammars for vectors and `n` grids.

use std::str::FromStr;

use ergolab::ergodicity::geometric_grid;
use ergolab::{Component, Rational, RieszVector};

use crate::CliError;

fn bad(what: &str, text: &str, why: impl std::fmt::Display) -> CliError {
    CliError::Usage(format!("bad {what} `{text}`: {why}"))
}

/// Parses `basis:i`, `component:bits` or `rat:a/b,c/d,...` on `n` atoms.
pub fn parse_vector(text: &str, n: usize) -> Result<RieszVector, CliError> {
    let err = |why: String| bad("vector", text, why);
    let (kind, body) = text.split_once(':').ok_or_else(|| err("expected `kind:value`".into()))?;
    match kind {
        "basis" => {
            let i: usize = body.parse().map_err(|e| err(format!("{e}")))?;
            if i >= n {
                return Err(err(format!("index {i} is out of range 0..{n}")));
            }
            Ok(RieszVector::basis(n, i))
        }
        "component" => {
            let p = Component::parse_bits(body).map_err(|e| err(e.to_string()))?;
            if p.len() != n {
                return Err(err(format!("{} bits for {n} atoms", p.len())));
            }
            Ok(p.to_vector())
        }
        "rat" => {
            let entries = body
                .split(',')
                .map(|s| {
                    let s = s.trim();
                    if s.ends_with("/0") {
                        return Err(err(format!("`{s}` has a zero denominator")));
                    }
                    Rational::from_str(s).map_err(|_| err(format!("`{s}` is not a rational")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if entries.len() != n {
                return Err(err(format!("{} entries for {n} atoms", entries.len())));
            }
            RieszVector::new(entries).map_err(|e| err(e.to_string()))
        }
        other => Err(err(format!("unknown kind `{other}`"))),
    }
}

/// Parses `geometric:a:b` into `a, 2a, 4a, ... <= b`.
pub fn parse_grid(text: &str) -> Result<Vec<u64>, CliError> {
    let err = |why: &str| bad("grid", text, why);
    let mut parts = text.split(':');
    if parts.next() != Some("geometric") {
        return Err(err("expected `geometric:a:b`"));
    }
    let mut next = || -> Result<u64, CliError> {
        parts.next().and_then(|s| s.parse().ok()).ok_or_else(|| err("expected positive integers a and b"))
    };
    let (start, max) = (next()?, next()?);
    if parts.next().is_some() {
        return Err(err("trailing fields"));
    }
    if start == 0 || start > max {
        return Err(err("need 1 <= a <= b"));
    }
    Ok(geometric_grid(start, max, 2))
}

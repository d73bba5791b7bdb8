// SPDX-License-Identifier: Apache-2.0

//! JSON system files:
//!
//! ```json
//! { "n": 2,
//!   "weights": [{"num": 1, "den": 2}, {"num": 1, "den": 2}],
//!   "partition": [[0, 1]],
//!   "sigma": [1, 0] }
//! ```
//!
//! Errors point at the offending location with a `$.field[index]` path.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::expectation::CondExpectation;
use crate::numeric::{format_rational, serialize_rationals, Rational};
use crate::system::{CandidateSystem, KoopmanMap};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub struct FormatError {
    pub path: String,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.path, self.message)
    }
}

fn fail<T>(path: impl Into<String>, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { path: path.into(), message: message.into() })
}

const FIELDS: [&str; 4] = ["n", "weights", "partition", "sigma"];

fn field<'a>(root: &'a Map<String, Value>, name: &str) -> Result<&'a Value, FormatError> {
    root.get(name).map_or_else(|| fail("$", format!("missing field `{name}`")), Ok)
}

fn array<'a>(value: &'a Value, path: &str) -> Result<&'a Vec<Value>, FormatError> {
    value.as_array().map_or_else(|| fail(path, "expected an array"), Ok)
}

fn index(value: &Value, path: &str, n: usize) -> Result<usize, FormatError> {
    let Some(i) = value.as_u64() else {
        return fail(path, "expected a non-negative integer");
    };
    match usize::try_from(i) {
        Ok(i) if i < n => Ok(i),
        _ => fail(path, format!("atom {i} is out of range 0..{n}")),
    }
}

fn integer(value: Option<&Value>, path: &str) -> Result<BigInt, FormatError> {
    match value {
        Some(Value::Number(num)) => {
            if let Some(i) = num.as_i64() {
                Ok(BigInt::from(i))
            } else if let Some(u) = num.as_u64() {
                Ok(BigInt::from(u))
            } else {
                fail(path, "expected an integer")
            }
        }
        Some(_) => fail(path, "expected an integer"),
        None => fail(path, "missing"),
    }
}

/// Parses `{"num": int, "den": int}` with `den > 0`.
pub fn parse_rational(value: &Value, path: &str) -> Result<Rational, FormatError> {
    let Some(obj) = value.as_object() else {
        return fail(path, r#"expected {"num": int, "den": int}"#);
    };
    if let Some(extra) = obj.keys().find(|k| *k != "num" && *k != "den") {
        return fail(path, format!("unknown field `{extra}`"));
    }
    let num = integer(obj.get("num"), &format!("{path}.num"))?;
    let den = integer(obj.get("den"), &format!("{path}.den"))?;
    if !den.is_positive() {
        return fail(format!("{path}.den"), "denominator must be positive");
    }
    Ok(Rational::new(num, den))
}

pub fn parse_system(text: &str) -> Result<CandidateSystem, FormatError> {
    let value: Value = serde_json::from_str(text)
        .map_err(|e| FormatError { path: "$".into(), message: format!("invalid JSON: {e}") })?;
    system_from_value(&value)
}

pub fn system_from_value(value: &Value) -> Result<CandidateSystem, FormatError> {
    let Some(root) = value.as_object() else {
        return fail("$", "expected an object");
    };
    if let Some(extra) = root.keys().find(|k| !FIELDS.contains(&k.as_str())) {
        return fail(format!("$.{extra}"), "unknown field");
    }

    let n = match field(root, "n")?.as_u64() {
        Some(n) if n >= 1 => usize::try_from(n).map_or_else(|_| fail("$.n", "too large"), Ok)?,
        _ => return fail("$.n", "expected a positive integer"),
    };

    let raw_weights = array(field(root, "weights")?, "$.weights")?;
    if raw_weights.len() != n {
        return fail("$.weights", format!("expected {n} weights, found {}", raw_weights.len()));
    }
    let mut weights = Vec::with_capacity(n);
    for (i, w) in raw_weights.iter().enumerate() {
        let path = format!("$.weights[{i}]");
        let w = parse_rational(w, &path)?;
        if !w.is_positive() {
            return fail(path, "weight must be strictly positive");
        }
        weights.push(w);
    }
    let total: Rational = weights.iter().sum();
    if !total.is_one() {
        return fail("$.weights", format!("weights sum to {}, not 1", format_rational(&total)));
    }

    let raw_partition = array(field(root, "partition")?, "$.partition")?;
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut partition = Vec::with_capacity(raw_partition.len());
    for (b, raw_block) in raw_partition.iter().enumerate() {
        let path = format!("$.partition[{b}]");
        let raw_block = array(raw_block, &path)?;
        if raw_block.is_empty() {
            return fail(path, "block is empty");
        }
        let mut block = Vec::with_capacity(raw_block.len());
        for (k, atom) in raw_block.iter().enumerate() {
            let path = format!("$.partition[{b}][{k}]");
            let atom = index(atom, &path, n)?;
            if let Some(prev) = owner[atom] {
                return fail(path, format!("atom {atom} already belongs to block {prev}"));
            }
            owner[atom] = Some(b);
            block.push(atom);
        }
        partition.push(block);
    }
    if let Some(atom) = owner.iter().position(Option::is_none) {
        return fail("$.partition", format!("atom {atom} is not covered by any block"));
    }

    let raw_sigma = array(field(root, "sigma")?, "$.sigma")?;
    if raw_sigma.len() != n {
        return fail("$.sigma", format!("expected {n} entries, found {}", raw_sigma.len()));
    }
    let sigma = raw_sigma
        .iter()
        .enumerate()
        .map(|(i, v)| index(v, &format!("$.sigma[{i}]"), n))
        .collect::<Result<Vec<_>, _>>()?;

    let expectation = CondExpectation::new(weights, partition).or_else(|e| fail("$", e.to_string()))?;
    let koopman = KoopmanMap::new(sigma).or_else(|e| fail("$.sigma", e.to_string()))?;
    CandidateSystem::new(expectation, koopman).or_else(|e| fail("$", e.to_string()))
}

#[derive(Serialize)]
struct SystemFile<'a> {
    n: usize,
    #[serde(serialize_with = "serialize_rationals")]
    weights: &'a [Rational],
    partition: &'a [Vec<usize>],
    sigma: &'a [usize],
}

pub fn system_to_value(sys: &CandidateSystem) -> Value {
    let file = SystemFile {
        n: sys.atoms(),
        weights: sys.expectation().weights(),
        partition: sys.expectation().blocks(),
        sigma: sys.koopman().sigma(),
    };
    serde_json::to_value(file).expect("system files serialize")
}

pub fn system_to_json(sys: &CandidateSystem) -> String {
    serde_json::to_string_pretty(&system_to_value(sys)).expect("system files serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_CYCLE: &str = r#"{"n": 2, "weights": [{"num": 1, "den": 2}, {"num": 1, "den": 2}],
        "partition": [[0, 1]], "sigma": [1, 0]}"#;

    fn error_of(text: &str) -> FormatError {
        parse_system(text).unwrap_err()
    }

    #[test]
    fn parses_and_round_trips() {
        let sys = parse_system(TWO_CYCLE).unwrap();
        assert_eq!(sys.atoms(), 2);
        assert!(sys.is_valid());
        let again = parse_system(&system_to_json(&sys)).unwrap();
        assert_eq!(again, sys);
    }

    #[test]
    fn locates_sigma_out_of_range() {
        let err = error_of(
            r#"{"n": 2, "weights": [{"num": 1, "den": 2}, {"num": 1, "den": 2}], "partition": [[0, 1]], "sigma": [1, 2]}"#,
        );
        assert_eq!(err.path, "$.sigma[1]");
        assert!(err.message.contains("out of range"));
    }

    #[test]
    fn locates_schema_violations() {
        let w = r#"[{"num": 1, "den": 2}, {"num": 1, "den": 2}]"#;
        let cases = [
            (r#"[1]"#.to_string(), "$"),
            (format!(r#"{{"weights": {w}, "partition": [[0, 1]], "sigma": [1, 0]}}"#), "$"),
            (format!(r#"{{"n": 0, "weights": {w}, "partition": [[0, 1]], "sigma": [1, 0]}}"#), "$.n"),
            (r#"{"n": 2, "weights": [{"num": 1, "den": 2}], "partition": [[0, 1]], "sigma": [1, 0]}"#.into(), "$.weights"),
            (r#"{"n": 2, "weights": [{"num": 1, "den": 2}, {"num": 1, "den": 0}], "partition": [[0, 1]], "sigma": [1, 0]}"#.into(), "$.weights[1].den"),
            (r#"{"n": 2, "weights": [{"num": 1, "den": 1}, {"num": 0, "den": 1}], "partition": [[0, 1]], "sigma": [1, 0]}"#.into(), "$.weights[1]"),
            (r#"{"n": 2, "weights": [{"num": 1, "den": 2}, {"num": 1, "den": 3}], "partition": [[0, 1]], "sigma": [1, 0]}"#.into(), "$.weights"),
            (r#"{"n": 2, "weights": [{"num": 1, "den": 2}, 0.5], "partition": [[0, 1]], "sigma": [1, 0]}"#.into(), "$.weights[1]"),
            (format!(r#"{{"n": 2, "weights": {w}, "partition": [[0], [0, 1]], "sigma": [1, 0]}}"#), "$.partition[1][0]"),
            (format!(r#"{{"n": 2, "weights": {w}, "partition": [[0], []], "sigma": [1, 0]}}"#), "$.partition[1]"),
            (format!(r#"{{"n": 2, "weights": {w}, "partition": [[0]], "sigma": [1, 0]}}"#), "$.partition"),
            (format!(r#"{{"n": 2, "weights": {w}, "partition": [[0, 1]], "sigma": [1]}}"#), "$.sigma"),
            (format!(r#"{{"n": 2, "weights": {w}, "partition": [[0, 1]], "sigma": [1, -1]}}"#), "$.sigma[1]"),
            (format!(r#"{{"n": 2, "weights": {w}, "partition": [[0, 1]], "sigma": [1, 0], "extra": 1}}"#), "$.extra"),
        ];
        for (text, path) in cases {
            assert_eq!(error_of(&text).path, path, "{text}");
        }
        assert_eq!(error_of("{").path, "$");
    }

    #[test]
    fn invalid_systems_still_parse() {
        let sys = parse_system(
            r#"{"n": 2, "weights": [{"num": 1, "den": 4}, {"num": 3, "den": 4}], "partition": [[0, 1]], "sigma": [1, 0]}"#,
        )
        .unwrap();
        assert!(!sys.is_valid());
    }

    #[test]
    fn rationals_need_exact_shape() {
        let ok = parse_rational(&serde_json::json!({"num": -2, "den": 4}), "$").unwrap();
        assert_eq!(ok, crate::numeric::rat(-1, 2));
        assert!(parse_rational(&serde_json::json!({"num": 1, "den": 2, "x": 0}), "$").is_err());
        assert!(parse_rational(&serde_json::json!({"num": 1.5, "den": 2}), "$").is_err());
    }
}

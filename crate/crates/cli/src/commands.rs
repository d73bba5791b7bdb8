// SPDX-License-Identifier: Apache-2.0

use std::fmt::Write as _;
use std::path::Path;

use ergolab::ergodicity::{cesaro_bound, cesaro_trace, correlation_limit, Criterion, ErgodicityReport, ReportOptions};
use ergolab::format::parse_system;
use ergolab::numeric::{format_rational, serialize_rational};
use ergolab::{BruteForceCap, CepsSystem, Rational, RieszVector, ScanMode};
use serde::Serialize;

use crate::grammar::{parse_grid, parse_vector};
use crate::{read, render, CliError, Emit, Method, Output, EXIT_DISAGREEMENT, EXIT_NEGATIVE, EXIT_OK};

pub fn validate(path: &Path, pretty: bool) -> Result<Output, CliError> {
    let candidate = parse_system(&read(path)?)?;
    let report = candidate.validate();
    let code = if report.all_passed() { EXIT_OK } else { EXIT_NEGATIVE };
    Ok(Output::new(code, render(&report, pretty)))
}

/// Parses and validates; an invalid system is a usage error for the analysis commands.
fn load_system(path: &Path) -> Result<CepsSystem, CliError> {
    Ok(parse_system(&read(path)?)?.into_ceps()?)
}

pub fn check(
    path: &Path,
    method: Method,
    exhaustive: bool,
    cap: BruteForceCap,
    pretty: bool,
) -> Result<Output, CliError> {
    let sys = load_system(path)?;
    let mode = if exhaustive { ScanMode::Exhaustive } else { ScanMode::Auto };
    let options = ReportOptions { mode, cap };
    let verdicts = method
        .criteria()
        .into_iter()
        .map(|c: Criterion| c.decide(&sys, options).map(|v| (c, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let report = ErgodicityReport::from_verdicts(verdicts);
    let code = match report.consensus() {
        Some(true) => EXIT_OK,
        Some(false) => EXIT_NEGATIVE,
        None => EXIT_DISAGREEMENT,
    };
    let mut out = Output::new(code, render(&report, pretty));
    if code == EXIT_DISAGREEMENT {
        out.stderr = "error: deciders disagree on a valid system\n".into();
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct ConvergeRow {
    n: u64,
    #[serde(serialize_with = "serialize_rational")]
    sup_error: Rational,
    #[serde(serialize_with = "serialize_rational")]
    bound: Rational,
    within_bound: bool,
    /// `‖T(f·S_n g) − T(f·L_S g)‖_∞`.
    #[serde(serialize_with = "serialize_rational")]
    correlation_error: Rational,
    /// `‖f‖_∞ · 2·ℓ_max·‖g‖_∞ / n`.
    #[serde(serialize_with = "serialize_rational")]
    correlation_bound: Rational,
}

#[derive(Debug, Serialize)]
struct ConvergeTable {
    f: RieszVector,
    g: RieszVector,
    limit: RieszVector,
    longest_cycle: usize,
    rows: Vec<ConvergeRow>,
}

pub fn converge(
    path: &Path,
    vector: &str,
    with: Option<&str>,
    n_grid: &str,
    emit: Emit,
    pretty: bool,
) -> Result<Output, CliError> {
    let sys = load_system(path)?;
    let n = sys.atoms();
    let f = parse_vector(vector, n)?;
    let g = with.map_or_else(|| Ok(f.clone()), |text| parse_vector(text, n))?;
    let grid = parse_grid(n_grid)?;

    let trace = cesaro_trace(&sys, &f, &grid)?;
    let g_trace = cesaro_trace(&sys, &g, &grid)?;
    let corr_limit = correlation_limit(&sys, &f, &g)?;
    let rows: Vec<ConvergeRow> = trace
        .values
        .iter()
        .zip(&trace.sup_errors)
        .zip(&g_trace.values)
        .map(|(((n, _), err), (_, sg))| {
            let bound = cesaro_bound(&sys, &f, *n);
            let corr = sys.apply_t(&f.e_multiply(sg).expect("same n")).expect("same n");
            ConvergeRow {
                n: *n,
                within_bound: *err <= bound,
                sup_error: err.clone(),
                bound,
                correlation_error: (&corr - &corr_limit).sup_norm(),
                correlation_bound: f.sup_norm() * cesaro_bound(&sys, &g, *n),
            }
        })
        .collect();
    let code = if rows.iter().all(|r| r.within_bound) { EXIT_OK } else { EXIT_NEGATIVE };

    let stdout = match emit {
        Emit::Csv => {
            let mut csv = String::from("n,sup_error,bound,within_bound\n");
            for r in &rows {
                writeln!(
                    csv,
                    "{},{},{},{}",
                    r.n,
                    format_rational(&r.sup_error),
                    format_rational(&r.bound),
                    r.within_bound
                )
                .expect("writing to a String");
            }
            csv
        }
        Emit::Json => {
            let table = ConvergeTable { f, g, limit: trace.limit, longest_cycle: sys.longest_cycle(), rows };
            render(&table, pretty)
        }
    };
    Ok(Output::new(code, stdout))
}

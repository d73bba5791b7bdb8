// SPDX-License-Identifier: Apache-2.0

//! Seeded campaigns over generated systems.

use ergolab::ergodicity::{check_isometry, full_report, Exponent, ReportOptions};
use ergolab::generate::{derive_seed, generate_random_ceps, random_vector};
use ergolab::oracle::oracle_ergodic;
use ergolab::{BruteForceCap, CepsSystem, ScanMode};
use rayon::prelude::*;
use serde::Serialize;

use crate::CliError;

pub const ISOMETRY_VECTORS: u64 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    Disagreement,
    Isometry,
    Oracle,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub index: usize,
    pub seed: u64,
    pub kind: FailureKind,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FuzzSummary {
    pub atoms: usize,
    pub systems: usize,
    pub seed: u64,
    pub cap: usize,
    pub ergodic: usize,
    pub non_ergodic: usize,
    pub disagreements: usize,
    pub isometry_failures: usize,
    pub oracle_checked: usize,
    pub oracle_disagreements: usize,
    pub errors: usize,
    /// In index order.
    pub failures: Vec<Failure>,
}

impl FuzzSummary {
    pub fn clean(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Default)]
struct SystemResult {
    ergodic: Option<bool>,
    oracle_checked: bool,
    failures: Vec<(FailureKind, String)>,
}

fn examine(sys: &CepsSystem, seed: u64, cap: BruteForceCap) -> SystemResult {
    let mut result = SystemResult::default();
    let options = ReportOptions { mode: ScanMode::Auto, cap };
    match full_report(sys, options) {
        Ok(report) => {
            result.ergodic = report.consensus();
            if !report.agreement {
                let verdicts = serde_json::to_string(&report.verdicts).expect("verdicts serialize");
                result.failures.push((FailureKind::Disagreement, verdicts));
            }
        }
        Err(e) => result.failures.push((FailureKind::Error, e.to_string())),
    }

    for k in 0..ISOMETRY_VECTORS {
        let x = random_vector(sys.atoms(), derive_seed(seed, k));
        for q in Exponent::CHECKED {
            if !check_isometry(sys, &x, q).unwrap_or(false) {
                result.failures.push((FailureKind::Isometry, format!("q = {q}, x = {x}")));
            }
        }
    }

    if cap.allows(sys.atoms()) {
        result.oracle_checked = true;
        match oracle_ergodic(sys, cap) {
            Ok(truth) if result.ergodic.is_some_and(|e| e != truth) => {
                result.failures.push((FailureKind::Oracle, format!("oracle says ergodic = {truth}")));
            }
            Ok(_) => {}
            Err(e) => result.failures.push((FailureKind::Error, e.to_string())),
        }
    }
    result
}

/// System `i` uses seed `derive_seed(seed, i)` and `1 + seed_i mod min(4, atoms)` blocks.
/// Systems are examined in parallel; the summary depends only on the arguments.
pub fn run(atoms: usize, systems: usize, seed: u64, cap: BruteForceCap) -> Result<FuzzSummary, CliError> {
    if atoms == 0 || systems == 0 {
        return Err(CliError::Usage("--atoms and --systems must be at least 1".into()));
    }
    let max_blocks = atoms.min(4) as u64;
    let results: Vec<(u64, ergolab::Result<SystemResult>)> = (0..systems)
        .into_par_iter()
        .map(|i| {
            let s = derive_seed(seed, i as u64);
            let blocks = 1 + (s % max_blocks) as usize;
            (s, generate_random_ceps(atoms, blocks, s).map(|sys| examine(&sys, s, cap)))
        })
        .collect();

    let mut summary = FuzzSummary {
        atoms,
        systems,
        seed,
        cap: cap.0,
        ergodic: 0,
        non_ergodic: 0,
        disagreements: 0,
        isometry_failures: 0,
        oracle_checked: 0,
        oracle_disagreements: 0,
        errors: 0,
        failures: Vec::new(),
    };
    for (index, (s, result)) in results.into_iter().enumerate() {
        let result = result.unwrap_or_else(|e| SystemResult {
            failures: vec![(FailureKind::Error, e.to_string())],
            ..SystemResult::default()
        });
        match result.ergodic {
            Some(true) => summary.ergodic += 1,
            Some(false) => summary.non_ergodic += 1,
            None => {}
        }
        summary.oracle_checked += usize::from(result.oracle_checked);
        for (kind, detail) in result.failures {
            match kind {
                FailureKind::Disagreement => summary.disagreements += 1,
                FailureKind::Isometry => summary.isometry_failures += 1,
                FailureKind::Oracle => summary.oracle_disagreements += 1,
                FailureKind::Error => summary.errors += 1,
            }
            summary.failures.push(Failure { index, seed: s, kind, detail });
        }
    }
    Ok(summary)
}

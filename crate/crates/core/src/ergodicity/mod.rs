// SPDX-License-Identifier: Apache-2.0

//! Ergodicity of a conditional expectation preserving system, decided in
//! every equivalent form: invariant elements, invariant components, the
//! component criteria on `(e − p)Sp` and `⋁ Sⁿp`, time averages, and
//! correlation limits. [`full_report`] runs them all and records whether they
//! agree.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::config::{BruteForceCap, ScanMode};
use crate::error::Result;
use crate::riesz::{Component, RieszVector};
use crate::system::CepsSystem;

pub mod cesaro;
pub mod correlation;
pub mod deciders;
pub mod isometry;

pub use cesaro::{birkhoff_limit, cesaro_bound, cesaro_mean, cesaro_trace, geometric_grid, CesaroTrace};
pub use correlation::{correlation_limit, correlation_mean, decide_correlation, CorrelationVariant};
pub use deciders::{
    decide_definition, decide_lemma_lc, decide_thm4_ii, decide_thm4_iii, decide_thm_l1, invariant_join,
};
pub use isometry::{check_isometry, isometry_holds, norm_power, Exponent};

/// A counterexample to a criterion.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Witness {
    Component(Component),
    Vector(RieszVector),
    ComponentPair { f: Component, g: Component },
    VectorPair { f: RieszVector, g: RieszVector },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Verdict {
    pub fn holds() -> Self {
        Self { holds: true, witness: None }
    }

    pub fn fails(witness: Witness) -> Self {
        Self { holds: false, witness: Some(witness) }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Criterion {
    /// `Sf = f ⇒ Tf = f`.
    Definition,
    /// `Sp = p ⇒ Tp = p` for components.
    LemmaLc,
    /// `T((e − p)Sp) = 0 ⇒ p ∈ R(T)`.
    Thm4Ii,
    /// `⋁_{n≥1} Sⁿp ∈ R(T)`.
    Thm4Iii,
    /// `L_S f = Tf`.
    ThmL1,
    CorrIi,
    CorrIii,
    CorrIv,
    CorrV,
    CorrVi,
}

impl Criterion {
    pub const ALL: [Self; 10] = [
        Self::Definition,
        Self::LemmaLc,
        Self::Thm4Ii,
        Self::Thm4Iii,
        Self::ThmL1,
        Self::CorrIi,
        Self::CorrIii,
        Self::CorrIv,
        Self::CorrV,
        Self::CorrVi,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Self::Definition => "definition",
            Self::LemmaLc => "lemma_lc",
            Self::Thm4Ii => "thm4_ii",
            Self::Thm4Iii => "thm4_iii",
            Self::ThmL1 => "thm_l1",
            Self::CorrIi => "corr_ii",
            Self::CorrIii => "corr_iii",
            Self::CorrIv => "corr_iv",
            Self::CorrV => "corr_v",
            Self::CorrVi => "corr_vi",
        }
    }

    pub fn correlation_variant(self) -> Option<CorrelationVariant> {
        match self {
            Self::CorrIi => Some(CorrelationVariant::Ii),
            Self::CorrIii => Some(CorrelationVariant::Iii),
            Self::CorrIv => Some(CorrelationVariant::Iv),
            Self::CorrV => Some(CorrelationVariant::V),
            Self::CorrVi => Some(CorrelationVariant::Vi),
            _ => None,
        }
    }

    /// Runs this criterion's decider.
    pub fn decide(self, sys: &CepsSystem, options: ReportOptions) -> Result<Verdict> {
        let ReportOptions { mode, cap } = options;
        match self {
            Self::Definition => Ok(decide_definition(sys)),
            Self::LemmaLc => decide_lemma_lc(sys, mode, cap),
            Self::Thm4Ii => decide_thm4_ii(sys, mode, cap),
            Self::Thm4Iii => decide_thm4_iii(sys, mode, cap),
            Self::ThmL1 => Ok(decide_thm_l1(sys)),
            corr => decide_correlation(sys, corr.correlation_variant().expect("correlation criterion"), mode, cap),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub mode: ScanMode,
    pub cap: BruteForceCap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ErgodicityReport {
    pub verdicts: BTreeMap<Criterion, bool>,
    pub witnesses: BTreeMap<Criterion, Option<Witness>>,
    pub agreement: bool,
}

impl ErgodicityReport {
    pub fn from_verdicts(verdicts: impl IntoIterator<Item = (Criterion, Verdict)>) -> Self {
        let mut report = Self { verdicts: BTreeMap::new(), witnesses: BTreeMap::new(), agreement: true };
        for (criterion, verdict) in verdicts {
            report.verdicts.insert(criterion, verdict.holds);
            report.witnesses.insert(criterion, verdict.witness);
        }
        let mut values = report.verdicts.values();
        let first = values.next().copied();
        report.agreement = values.all(|&v| Some(v) == first);
        report
    }

    /// The common verdict, if every criterion agrees.
    pub fn consensus(&self) -> Option<bool> {
        if self.agreement {
            self.verdicts.values().next().copied()
        } else {
            None
        }
    }
}

/// Runs every decider.
pub fn full_report(sys: &CepsSystem, options: ReportOptions) -> Result<ErgodicityReport> {
    let verdicts =
        Criterion::ALL.iter().map(|&c| c.decide(sys, options).map(|v| (c, v))).collect::<Result<Vec<_>>>()?;
    Ok(ErgodicityReport::from_verdicts(verdicts))
}

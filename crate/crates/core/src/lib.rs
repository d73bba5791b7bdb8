// SPDX-License-Identifier: Apache-2.0

//! Exact conditional expectation preserving systems on finite atomic Riesz
//! spaces.
//!
//! Vectors are rational functions on `n` atoms; a conditional expectation is
//! blockwise weighted averaging over a partition, and the system map is a
//! composition operator `f ↦ f∘σ`. On top of that the crate decides
//! ergodicity through each of its equivalent characterizations and carries
//! brute-force oracles for cross-checking.

pub mod config;
pub mod ergodicity;
pub mod error;
pub mod expectation;
pub mod format;
pub mod generate;
pub mod numeric;
pub mod oracle;
pub mod orbit;
pub mod report;
pub mod riesz;
pub mod system;

pub use config::{BruteForceCap, ScanMode};
pub use error::{Error, Result};
pub use expectation::CondExpectation;
pub use numeric::Rational;
pub use report::{Check, CheckReport};
pub use riesz::{band_projection_component, freudenthal_approx, is_component, Component, RieszVector, StepFunction};
pub use system::{check_lemma_tpc, CandidateSystem, CepsSystem, KoopmanMap};

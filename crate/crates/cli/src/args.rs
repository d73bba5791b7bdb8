// SPDX-License-Identifier: Apache-2.0

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ergolab::ergodicity::Criterion;
use ergolab::BruteForceCap;

#[derive(Debug, Parser)]
#[command(name = "ergolab", version, about = "Verify conditional expectation preserving systems")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Brute-force budget in bits; exhaustive scans over 2^bits items need bits <= cap.
    #[arg(long, global = true, env = "ERGOLAB_CAP", default_value_t = BruteForceCap::DEFAULT.0)]
    pub cap: usize,
    /// Indented JSON with rationals rendered as decimals. Not machine-stable.
    #[arg(long, global = true)]
    pub pretty: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check that a system file describes a valid CEPS.
    Validate { path: PathBuf },
    /// Decide ergodicity.
    Check {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
        /// Enumerate every component (or pair); fails if that exceeds the cap.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Tabulate the Cesàro error `‖S_n f − L_S f‖_∞` over a grid of `n`.
    Converge {
        path: PathBuf,
        /// `basis:i`, `component:bits` or `rat:a/b,c/d,...`.
        #[arg(long)]
        vector: String,
        /// Second argument of the correlation columns (JSON only); defaults to `--vector`.
        #[arg(long)]
        with: Option<String>,
        /// `geometric:a:b` for `a, 2a, 4a, ... <= b`.
        #[arg(long, default_value = "geometric:1:4096")]
        n_grid: String,
        #[arg(long, value_enum, default_value_t = Emit::Csv)]
        emit: Emit,
    },
    /// Generate systems and cross-check every decider on them.
    Fuzz {
        #[arg(long)]
        atoms: usize,
        #[arg(long)]
        systems: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    All,
    Definition,
    LemmaLc,
    #[value(name = "thm4-ii")]
    Thm4Ii,
    #[value(name = "thm4-iii")]
    Thm4Iii,
    #[value(name = "L1", alias = "l1")]
    L1,
    CorrIi,
    CorrIii,
    CorrIv,
    CorrV,
    CorrVi,
}

impl Method {
    pub fn criteria(self) -> Vec<Criterion> {
        let one = match self {
            Self::All => return Criterion::ALL.to_vec(),
            Self::Definition => Criterion::Definition,
            Self::LemmaLc => Criterion::LemmaLc,
            Self::Thm4Ii => Criterion::Thm4Ii,
            Self::Thm4Iii => Criterion::Thm4Iii,
            Self::L1 => Criterion::ThmL1,
            Self::CorrIi => Criterion::CorrIi,
            Self::CorrIii => Criterion::CorrIii,
            Self::CorrIv => Criterion::CorrIv,
            Self::CorrV => Criterion::CorrV,
            Self::CorrVi => Criterion::CorrVi,
        };
        vec![one]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Emit {
    Csv,
    Json,
}

// SPDX-License-Identifier: Apache-2.0

use crate::error::{Error, Result};

/// Largest number of free bits an exhaustive scan may enumerate: component
/// scans need `n` bits, component-pair scans `2n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BruteForceCap(pub usize);

impl BruteForceCap {
    pub const DEFAULT: Self = Self(16);

    pub fn allows(self, bits: usize) -> bool {
        bits <= self.0
    }

    pub fn require(self, bits: usize) -> Result<()> {
        if self.allows(bits) {
            Ok(())
        } else {
            Err(Error::CapExceeded { bits, cap: self.0 })
        }
    }
}

impl Default for BruteForceCap {
    fn default() -> Self {
        Self::DEFAULT
    }
}

/// How a decider discharges a universally quantified statement.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum ScanMode {
    /// Enumerate every candidate; refuses inputs beyond the cap.
    Exhaustive,
    /// Test a finite generating set that is sufficient by linearity or the
    /// orbit structure.
    #[default]
    Reduction,
    /// Exhaustive within the cap, reduction beyond it.
    Auto,
}

impl ScanMode {
    /// Whether to run the exhaustive scan over `bits` free bits.
    pub(crate) fn exhaustive_for(self, bits: usize, cap: BruteForceCap) -> Result<bool> {
        match self {
            Self::Exhaustive => cap.require(bits).map(|()| true),
            Self::Reduction => Ok(false),
            Self::Auto => Ok(cap.allows(bits)),
        }
    }
}

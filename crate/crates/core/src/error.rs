// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} atoms, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("a Riesz vector needs at least one atom")]
    Empty,

    #[error("entry {index} is {value}, not 0 or 1")]
    NotAComponent { index: usize, value: String },

    #[error("components {first} and {second} of the step function overlap")]
    OverlappingComponents { first: usize, second: usize },

    #[error("step function has {coefficients} coefficients but {components} components")]
    StepArity { coefficients: usize, components: usize },

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid atom map: {0}")]
    InvalidAtomMap(String),

    #[error("system is not conditional expectation preserving: {0}")]
    NotCeps(String),

    /// An exhaustive scan over `2^bits` candidates was refused.
    #[error("brute-force cap exceeded: scan needs {bits} free bits, cap is {cap}")]
    CapExceeded { bits: usize, cap: usize },

    #[error("invalid generator parameters: {0}")]
    Infeasible(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn same_len(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

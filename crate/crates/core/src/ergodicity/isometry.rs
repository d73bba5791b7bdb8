// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::expectation::CondExpectation;
use crate::riesz::RieszVector;
use crate::system::{CepsSystem, KoopmanMap};

/// Exponent of an `L^q(T)` norm.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinity,
}

impl Exponent {
    pub const CHECKED: [Self; 4] = [Self::Finite(1), Self::Finite(2), Self::Finite(3), Self::Infinity];
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Finite(q) => write!(f, "{q}"),
            Self::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Exponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "inf" | "infinity" | "∞" => Ok(Self::Infinity),
            _ => match s.parse::<u32>() {
                Ok(q) if q >= 1 => Ok(Self::Finite(q)),
                _ => Err(Error::InvalidArgument(format!("exponent `{s}` is not a positive integer or inf"))),
            },
        }
    }
}

/// The `R(T)`-valued norm of `x`: `T(|x|^q)` for finite `q`, `‖x‖_{T,∞}` otherwise.
pub fn norm_power(t: &CondExpectation, x: &RieszVector, q: Exponent) -> Result<RieszVector> {
    match q {
        Exponent::Finite(q) => t.norm_q_power(x, q),
        Exponent::Infinity => t.norm_inf(x),
    }
}

/// `‖Sx‖_{T,q} = ‖x‖_{T,q}` for an arbitrary (possibly invalid) pair `T`, `S`.
pub fn isometry_holds(t: &CondExpectation, s: &KoopmanMap, x: &RieszVector, q: Exponent) -> Result<bool> {
    let sx = s.apply(x)?;
    Ok(norm_power(t, &sx, q)? == norm_power(t, x, q)?)
}

pub fn check_isometry(sys: &CepsSystem, x: &RieszVector, q: Exponent) -> Result<bool> {
    isometry_holds(sys.expectation(), sys.koopman(), x, q)
}

// SPDX-License-Identifier: Apache-2.0

//! Exact rational scalars and their `{"num","den"}` wire form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde::ser::{Error as _, SerializeStruct};
use serde::{Serialize, Serializer};

/// Scalar field of every vector in the crate.
pub type Rational = BigRational;

/// `num / den` in lowest terms. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

/// Reciprocal of a positive count, as used by averages.
pub fn inverse_count(count: usize) -> Rational {
    Rational::new(BigInt::from(1u8), BigInt::from(count))
}

/// Nearest `f64`, for display only.
pub fn to_f64(value: &Rational) -> f64 {
    value.to_f64().unwrap_or(if value.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Renders `a/b`, or `a` when the denominator is one.
pub fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Borrowing serializer for a rational as `{"num": int, "den": int}`.
pub struct RationalJson<'a>(pub &'a Rational);

impl Serialize for RationalJson<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut state = serializer.serialize_struct("Rational", 2)?;
        state.serialize_field("num", &integer_field(self.0.numer()).map_err(S::Error::custom)?)?;
        state.serialize_field("den", &integer_field(self.0.denom()).map_err(S::Error::custom)?)?;
        state.end()
    }
}

fn integer_field(value: &BigInt) -> Result<i128, String> {
    value.to_i128().ok_or_else(|| format!("integer {value} does not fit a 128-bit JSON number"))
}

/// `serialize_with` adapter for a single rational.
pub fn serialize_rational<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    RationalJson(value).serialize(serializer)
}

/// `serialize_with` adapter for a slice of rationals.
pub fn serialize_rationals<S: Serializer>(values: &[Rational], serializer: S) -> Result<S::Ok, S::Error> {
    serializer.collect_seq(values.iter().map(RationalJson))
}

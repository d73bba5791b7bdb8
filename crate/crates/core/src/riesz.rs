// SPDX-License-Identifier: Apache-2.0

//! The finite atomic vector lattice: rational vectors on `n` atoms with the
//! entrywise order, components of the weak unit, band projections and dyadic
//! step approximation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{same_len, Error, Result};
use crate::numeric::{format_rational, Rational, RationalJson};

/// An element of `E`, a function on `n >= 1` atoms.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RieszVector {
    entries: Vec<Rational>,
}

impl RieszVector {
    pub fn new(entries: Vec<Rational>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { entries })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Rational::from_integer(BigInt::from(v))).collect())
    }

    /// Panics if `n == 0`.
    pub fn zeros(n: usize) -> Self {
        assert!(n > 0, "a Riesz vector needs at least one atom");
        Self { entries: vec![Rational::zero(); n] }
    }

    /// The weak order unit `e`.
    pub fn unit(n: usize) -> Self {
        assert!(n > 0, "a Riesz vector needs at least one atom");
        Self { entries: vec![Rational::one(); n] }
    }

    /// Standard basis vector `e_i`, which is also the singleton component at `i`.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(i < n, "basis index {i} out of range for {n} atoms");
        let mut v = Self::zeros(n);
        v.entries[i] = Rational::one();
        v
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    /// Always false; vectors have at least one atom.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.entries
    }

    pub fn get(&self, i: usize) -> &Rational {
        &self.entries[i]
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Rational> {
        self.entries.iter()
    }

    fn zip_with(&self, other: &Self, op: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        same_len(self.len(), other.len())?;
        Ok(Self { entries: self.entries.iter().zip(&other.entries).map(|(a, b)| op(a, b)).collect() })
    }

    fn map(&self, op: impl Fn(&Rational) -> Rational) -> Self {
        Self { entries: self.entries.iter().map(op).collect() }
    }

    /// `f ∨ g`.
    pub fn sup(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    /// `f ∧ g`.
    pub fn inf(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a.min(b).clone())
    }

    pub fn abs(&self) -> Self {
        self.map(Signed::abs)
    }

    /// `f⁺ = f ∨ 0`.
    pub fn pos_part(&self) -> Self {
        self.map(|a| if a.is_positive() { a.clone() } else { Rational::zero() })
    }

    /// `f⁻ = (−f) ∨ 0`.
    pub fn neg_part(&self) -> Self {
        self.map(|a| if a.is_negative() { -a } else { Rational::zero() })
    }

    /// The f-algebra product with unit `e` (entrywise).
    pub fn e_multiply(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        self.map(|a| a * factor)
    }

    /// Entrywise `q`-th power.
    pub fn powi(&self, q: u32) -> Self {
        self.map(|a| num_traits::pow(a.clone(), q as usize))
    }

    /// Scalar sup norm `max_i |f_i|`.
    pub fn sup_norm(&self) -> Rational {
        self.entries.iter().map(Signed::abs).max().expect("non-empty")
    }

    pub fn max_entry(&self) -> &Rational {
        self.entries.iter().max().expect("non-empty")
    }

    pub fn min_entry(&self) -> &Rational {
        self.entries.iter().min().expect("non-empty")
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_nonnegative(&self) -> bool {
        !self.entries.iter().any(Signed::is_negative)
    }

    /// `f ≤ g` in the entrywise order.
    pub fn le(&self, other: &Self) -> Result<bool> {
        same_len(self.len(), other.len())?;
        Ok(self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b))
    }

    /// Common denominator of all entries together with the integer numerators over it.
    pub(crate) fn over_common_denominator(&self) -> (BigInt, Vec<BigInt>) {
        let den = self.entries.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let nums = self.entries.iter().map(|v| v.numer() * (&den / v.denom())).collect();
        (den, nums)
    }
}

impl Add for &RieszVector {
    type Output = RieszVector;

    /// Panics on a dimension mismatch; use [`RieszVector::checked_add`] otherwise.
    fn add(self, rhs: Self) -> RieszVector {
        self.checked_add(rhs).expect("dimension mismatch in vector addition")
    }
}

impl Sub for &RieszVector {
    type Output = RieszVector;

    fn sub(self, rhs: Self) -> RieszVector {
        self.checked_sub(rhs).expect("dimension mismatch in vector subtraction")
    }
}

impl Neg for &RieszVector {
    type Output = RieszVector;

    fn neg(self) -> RieszVector {
        self.map(|a| -a)
    }
}

impl fmt::Display for RieszVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(v))?;
        }
        write!(f, ")")
    }
}

impl Serialize for RieszVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.entries.iter().map(RationalJson))
    }
}

/// True iff `p ∧ (e − p) = 0`, i.e. every entry is 0 or 1.
pub fn is_component(p: &RieszVector) -> bool {
    p.iter().all(|v| v.is_zero() || v.is_one())
}

/// A component of the weak unit `e`, stored as its support indicator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Component {
    bits: Vec<bool>,
}

impl Component {
    pub fn new(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Empty);
        }
        Ok(Self { bits })
    }

    pub fn zero(n: usize) -> Self {
        assert!(n > 0, "a component needs at least one atom");
        Self { bits: vec![false; n] }
    }

    pub fn unit(n: usize) -> Self {
        assert!(n > 0, "a component needs at least one atom");
        Self { bits: vec![true; n] }
    }

    pub fn singleton(n: usize, i: usize) -> Self {
        let mut p = Self::zero(n);
        p.bits[i] = true;
        p
    }

    pub fn from_support(n: usize, support: impl IntoIterator<Item = usize>) -> Self {
        let mut p = Self::zero(n);
        for i in support {
            p.bits[i] = true;
        }
        p
    }

    /// The component whose bitstring, read with atom 0 as the most significant
    /// bit, is `mask`. Counting `mask` upward enumerates components in
    /// lexicographic order.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        assert!((1..=64).contains(&n), "mask components support 1..=64 atoms");
        Self { bits: (0..n).map(|i| (mask >> (n - 1 - i)) & 1 == 1).collect() }
    }

    /// Parses a string of `0`/`1` characters.
    pub fn parse_bits(text: &str) -> Result<Self> {
        let bits = text
            .chars()
            .enumerate()
            .map(|(index, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::NotAComponent { index, value: other.to_string() }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    pub fn from_vector(v: &RieszVector) -> Result<Self> {
        let bits = v
            .iter()
            .enumerate()
            .map(|(index, value)| {
                if value.is_zero() {
                    Ok(false)
                } else if value.is_one() {
                    Ok(true)
                } else {
                    Err(Error::NotAComponent { index, value: format_rational(value) })
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(bits)
    }

    pub fn to_vector(&self) -> RieszVector {
        RieszVector { entries: self.bits.iter().map(|&b| if b { Rational::one() } else { Rational::zero() }).collect() }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn contains(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn count(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn is_zero(&self) -> bool {
        !self.bits.iter().any(|&b| b)
    }

    pub fn is_unit(&self) -> bool {
        self.bits.iter().all(|&b| b)
    }

    pub fn join(&self, other: &Self) -> Result<Self> {
        same_len(self.len(), other.len())?;
        Ok(Self { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a || *b).collect() })
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        same_len(self.len(), other.len())?;
        Ok(Self { bits: self.bits.iter().zip(&other.bits).map(|(a, b)| *a && *b).collect() })
    }

    /// `e − p`.
    pub fn complement(&self) -> Self {
        Self { bits: self.bits.iter().map(|b| !b).collect() }
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| !(*a && *b))
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl Serialize for Component {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `P_{(αe − f)⁺} e`: the indicator of `{ i : f_i < α }`.
pub fn band_projection_component(f: &RieszVector, alpha: &Rational) -> Component {
    Component { bits: f.iter().map(|v| v < alpha).collect() }
}

/// `Σ_k c_k p_k` over pairwise disjoint components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StepFunction {
    coefficients: Vec<Rational>,
    components: Vec<Component>,
}

impl StepFunction {
    pub fn new(coefficients: Vec<Rational>, components: Vec<Component>) -> Result<Self> {
        if coefficients.len() != components.len() {
            return Err(Error::StepArity { coefficients: coefficients.len(), components: components.len() });
        }
        let Some(first) = components.first() else {
            return Err(Error::Empty);
        };
        for c in &components {
            same_len(first.len(), c.len())?;
        }
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if !components[i].is_disjoint(&components[j]) {
                    return Err(Error::OverlappingComponents { first: i, second: j });
                }
            }
        }
        Ok(Self { coefficients, components })
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coefficients
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn evaluate(&self) -> RieszVector {
        let n = self.components[0].len();
        let mut entries = vec![Rational::zero(); n];
        for (c, p) in self.coefficients.iter().zip(&self.components) {
            for i in p.support() {
                entries[i] += c;
            }
        }
        RieszVector { entries }
    }
}

/// Dyadic step approximation of `f` from below.
///
/// With `h = (max f − min f) / 2^k`, each atom is rounded down to the grid
/// `min f + j·h`; the level sets are differences of band projection
/// components. The result satisfies `0 ≤ f − s_k < h·e` (or `f = s_k` when `f`
/// is constant) and increases with `k`.
pub fn freudenthal_approx(f: &RieszVector, k: u32) -> Result<StepFunction> {
    if k == 0 {
        return Err(Error::InvalidArgument("approximation depth k must be at least 1".into()));
    }
    let n = f.len();
    let low = f.min_entry().clone();
    let range = f.max_entry() - &low;
    if range.is_zero() {
        return StepFunction::new(vec![low], vec![Component::unit(n)]);
    }
    let step = range / Rational::from_integer(BigInt::one() << k as usize);

    let mut levels: BTreeMap<BigInt, Vec<usize>> = BTreeMap::new();
    for (i, v) in f.iter().enumerate() {
        let j = ((v - &low) / &step).floor().to_integer();
        levels.entry(j).or_default().push(i);
    }
    let mut coefficients = Vec::with_capacity(levels.len());
    let mut components = Vec::with_capacity(levels.len());
    for (j, atoms) in levels {
        // Level set {jh ≤ f − min < (j+1)h}, written as a difference of band projections.
        let lower = &low + &step * Rational::from_integer(j.clone());
        let upper = &lower + &step;
        let below_upper = band_projection_component(f, &upper);
        let below_lower = band_projection_component(f, &lower);
        let level = below_upper.meet(&below_lower.complement())?;
        debug_assert_eq!(level, Component::from_support(n, atoms));
        coefficients.push(lower);
        components.push(level);
    }
    StepFunction::new(coefficients, components)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn v(values: &[i64]) -> RieszVector {
        RieszVector::from_ints(values).unwrap()
    }

    /// `sup_n (e ∧ n(αe − f)⁺)` evaluated through lattice operations until the
    /// increasing sequence stops changing.
    fn band_projection_by_sup(f: &RieszVector, alpha: &Rational) -> RieszVector {
        let n = f.len();
        let e = RieszVector::unit(n);
        let gap = (&e.scale(alpha) - f).pos_part();
        let mut acc = RieszVector::zeros(n);
        let mut m = 1i64;
        loop {
            let term = e.inf(&gap.scale(&int(m))).unwrap();
            let next = acc.sup(&term).unwrap();
            if next == acc && m > 1 && is_component(&next) {
                return next;
            }
            acc = next;
            m *= 2;
        }
    }

    #[test]
    fn lattice_operations() {
        assert_eq!(v(&[1, -1]).sup(&v(&[0, 0])).unwrap(), v(&[1, 0]));
        assert_eq!(v(&[1, -1]).inf(&v(&[0, 0])).unwrap(), v(&[0, -1]));
        assert_eq!(v(&[2, -3]).pos_part(), v(&[2, 0]));
        assert_eq!(v(&[2, -3]).neg_part(), v(&[0, 3]));
        let f = v(&[-1, 2]);
        assert_eq!(&f.pos_part() + &f.neg_part(), v(&[1, 2]));
        assert_eq!(f.abs(), v(&[1, 2]));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let err = v(&[1, 2]).sup(&v(&[1])).unwrap_err();
        assert_eq!(err, Error::DimensionMismatch { expected: 2, found: 1 });
        assert!(v(&[1]).e_multiply(&v(&[1, 2])).is_err());
        assert_eq!(RieszVector::new(vec![]).unwrap_err(), Error::Empty);
    }

    #[test]
    fn component_recognition() {
        assert!(is_component(&v(&[1, 0, 1])));
        assert!(!is_component(&RieszVector::new(vec![rat(1, 2), int(0)]).unwrap()));
        assert!(is_component(&RieszVector::unit(3)));
        assert!(is_component(&RieszVector::zeros(3)));
        assert!(Component::from_vector(&v(&[2, 0])).is_err());
    }

    #[test]
    fn mask_order_is_lexicographic() {
        let all: Vec<String> = (0..4).map(|m| Component::from_mask(2, m).to_string()).collect();
        assert_eq!(all, ["00", "01", "10", "11"]);
        assert_eq!(Component::parse_bits("101").unwrap(), Component::from_mask(3, 5));
        assert!(Component::parse_bits("12").is_err());
    }

    #[test]
    fn band_projection_examples() {
        let f = v(&[0, 1, 2]);
        let p = band_projection_component(&f, &rat(3, 2));
        assert_eq!(p.to_vector(), v(&[1, 1, 0]));
        assert_eq!(band_projection_by_sup(&f, &rat(3, 2)), v(&[1, 1, 0]));
        assert!(band_projection_component(&RieszVector::unit(4), &int(1)).is_zero());
        assert!(band_projection_component(&v(&[5, -2, 3]), &int(6)).is_unit());
    }

    #[test]
    fn freudenthal_examples() {
        let f = v(&[0, 1]);
        for k in 1..5 {
            assert_eq!(freudenthal_approx(&f, k).unwrap().evaluate(), f);
        }

        let f = RieszVector::new(vec![int(0), rat(1, 3), int(1)]).unwrap();
        let s = freudenthal_approx(&f, 2).unwrap().evaluate();
        // grid of width 1/4: 1/3 rounds down to 1/4
        assert_eq!(s, RieszVector::new(vec![int(0), rat(1, 4), int(1)]).unwrap());
        let err = (&f - &s).sup_norm();
        assert!(err <= rat(1, 4));
        assert_eq!(err, rat(1, 12));

        let dyadic = RieszVector::new(vec![int(0), rat(1, 4), rat(3, 4), int(1)]).unwrap();
        assert_eq!(freudenthal_approx(&dyadic, 2).unwrap().evaluate(), dyadic);
        assert_eq!(freudenthal_approx(&dyadic, 7).unwrap().evaluate(), dyadic);

        assert!(freudenthal_approx(&f, 0).is_err());
        let constant = v(&[3, 3]);
        assert_eq!(freudenthal_approx(&constant, 3).unwrap().evaluate(), constant);
    }

    #[test]
    fn step_function_rejects_overlap() {
        let a = Component::parse_bits("110").unwrap();
        let b = Component::parse_bits("011").unwrap();
        assert_eq!(
            StepFunction::new(vec![int(1), int(2)], vec![a.clone(), b]).unwrap_err(),
            Error::OverlappingComponents { first: 0, second: 1 }
        );
        let c = Component::parse_bits("001").unwrap();
        let s = StepFunction::new(vec![int(1), int(2)], vec![a, c]).unwrap();
        assert_eq!(s.evaluate(), v(&[1, 1, 2]));
    }

    #[test]
    fn e_multiply_examples() {
        let p = Component::parse_bits("1011").unwrap().to_vector();
        assert_eq!(p.e_multiply(&p).unwrap(), p);
        let f = v(&[4, -2, 7, 0]);
        assert_eq!(f.e_multiply(&RieszVector::unit(4)).unwrap(), f);
        assert_eq!(v(&[1, 2]).e_multiply(&v(&[3, 4])).unwrap(), v(&[3, 8]));
    }

    #[test]
    fn common_denominator_representation() {
        let f = RieszVector::new(vec![rat(1, 2), rat(-2, 3), int(1)]).unwrap();
        let (den, nums) = f.over_common_denominator();
        assert_eq!(den, BigInt::from(6));
        assert_eq!(nums, vec![BigInt::from(3), BigInt::from(-4), BigInt::from(6)]);
    }
}

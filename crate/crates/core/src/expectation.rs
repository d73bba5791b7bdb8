// SPDX-License-Identifier: Apache-2.0

//! Conditional expectation on a finite atomic space: blockwise weighted
//! averaging over a partition of the atoms. Its range `R(T)` is the space of
//! block-constant vectors, kept implicit in the partition.

use num_traits::{One, Signed, Zero};

use crate::error::{same_len, Error, Result};
use crate::numeric::{to_f64, Rational};
use crate::report::CheckReport;
use crate::riesz::{Component, RieszVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CondExpectation {
    weights: Vec<Rational>,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
    block_mass: Vec<Rational>,
}

impl CondExpectation {
    /// Weights must be strictly positive and sum to one; blocks must be
    /// non-empty, disjoint and cover `0..weights.len()`.
    pub fn new(weights: Vec<Rational>, partition: Vec<Vec<usize>>) -> Result<Self> {
        let n = weights.len();
        if n == 0 {
            return Err(Error::Empty);
        }
        if let Some(i) = weights.iter().position(|w| !w.is_positive()) {
            return Err(Error::InvalidWeights(format!("weight {i} is not strictly positive")));
        }
        let total: Rational = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidWeights(format!("weights sum to {total}, not 1")));
        }

        let mut block_of = vec![usize::MAX; n];
        for (b, block) in partition.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {b} is empty")));
            }
            for &i in block {
                if i >= n {
                    return Err(Error::InvalidPartition(format!(
                        "block {b} names atom {i}, but there are only {n} atoms"
                    )));
                }
                if block_of[i] != usize::MAX {
                    return Err(Error::InvalidPartition(format!("atom {i} appears in blocks {} and {b}", block_of[i])));
                }
                block_of[i] = b;
            }
        }
        if let Some(i) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidPartition(format!("atom {i} is not covered by any block")));
        }

        let block_mass = partition.iter().map(|block| block.iter().map(|&i| &weights[i]).sum()).collect();
        Ok(Self { weights, blocks: partition, block_of, block_mass })
    }

    /// Uniform weights over the given partition.
    pub fn uniform(partition: Vec<Vec<usize>>) -> Result<Self> {
        let n = partition.iter().map(Vec::len).sum::<usize>();
        if n == 0 {
            return Err(Error::Empty);
        }
        Self::new(vec![crate::numeric::inverse_count(n); n], partition)
    }

    /// The expectation operator: one block, uniform weights.
    pub fn trivial(n: usize) -> Self {
        Self::uniform(vec![(0..n).collect()]).expect("one block covers every atom")
    }

    pub fn atoms(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_of(&self, atom: usize) -> usize {
        self.block_of[atom]
    }

    pub fn block_mass(&self, block: usize) -> &Rational {
        &self.block_mass[block]
    }

    pub fn block_indicator(&self, block: usize) -> Component {
        Component::from_support(self.atoms(), self.blocks[block].iter().copied())
    }

    pub fn block_indicators(&self) -> Vec<Component> {
        (0..self.blocks.len()).map(|b| self.block_indicator(b)).collect()
    }

    /// Per-block averages of `f`.
    fn block_averages(&self, f: &RieszVector) -> Vec<Rational> {
        self.blocks
            .iter()
            .zip(&self.block_mass)
            .map(|(block, mass)| {
                let total: Rational = block.iter().map(|&i| &self.weights[i] * f.get(i)).sum();
                total / mass
            })
            .collect()
    }

    fn spread(&self, per_block: &[Rational]) -> RieszVector {
        RieszVector::new(self.block_of.iter().map(|&b| per_block[b].clone()).collect()).expect("at least one atom")
    }

    /// `(Tf)_i = Σ_{j∈B} μ_j f_j / Σ_{j∈B} μ_j` for the block `B ∋ i`.
    pub fn apply(&self, f: &RieszVector) -> Result<RieszVector> {
        same_len(self.atoms(), f.len())?;
        Ok(self.spread(&self.block_averages(f)))
    }

    /// `T(p)` for a component: the μ-fraction of each block covered by `p`.
    pub fn apply_component(&self, p: &Component) -> Result<RieszVector> {
        same_len(self.atoms(), p.len())?;
        let mut covered = vec![Rational::zero(); self.blocks.len()];
        for i in p.support() {
            covered[self.block_of[i]] += &self.weights[i];
        }
        for (c, mass) in covered.iter_mut().zip(&self.block_mass) {
            *c /= mass;
        }
        Ok(self.spread(&covered))
    }

    /// `T(p·h)` for a component `p`, summing only over the support of `p`.
    pub fn apply_restricted(&self, p: &Component, h: &RieszVector) -> Result<RieszVector> {
        same_len(self.atoms(), p.len())?;
        same_len(self.atoms(), h.len())?;
        let mut per_block = vec![Rational::zero(); self.blocks.len()];
        for i in p.support() {
            per_block[self.block_of[i]] += &self.weights[i] * h.get(i);
        }
        for (c, mass) in per_block.iter_mut().zip(&self.block_mass) {
            *c /= mass;
        }
        Ok(self.spread(&per_block))
    }

    /// Membership in `R(T)`: constant on every block.
    pub fn range_contains(&self, f: &RieszVector) -> bool {
        f.len() == self.atoms() && self.blocks.iter().all(|block| block.iter().all(|&i| f.get(i) == f.get(block[0])))
    }

    pub fn range_contains_component(&self, p: &Component) -> bool {
        p.len() == self.atoms()
            && self.blocks.iter().all(|block| block.iter().all(|&i| p.contains(i) == p.contains(block[0])))
    }

    /// Checks the conditional expectation axioms on the standard basis.
    pub fn verify_axioms(&self) -> CheckReport {
        let n = self.atoms();
        let mut report = CheckReport::new();
        let images: Vec<RieszVector> = (0..n).map(|i| self.apply(&RieszVector::basis(n, i)).expect("same n")).collect();

        report.record(
            "idempotent",
            images.iter().enumerate().find_map(|(i, te)| {
                let tte = self.apply(te).expect("same n");
                (tte != *te).then(|| (RieszVector::basis(n, i), format!("T(T e_{i}) != T e_{i}")))
            }),
        );

        let e = RieszVector::unit(n);
        let te = self.apply(&e).expect("same n");
        report.record("unit", (te != e).then(|| (te.clone(), "T e != e".to_string())));

        report.record(
            "range",
            images.iter().enumerate().find_map(|(i, te)| {
                (!self.range_contains(te)).then(|| (RieszVector::basis(n, i), format!("T e_{i} is not block-constant")))
            }),
        );

        let positive_structurally = self.weights.iter().all(Signed::is_positive);
        let positive_on_basis = images.iter().enumerate().find_map(|(i, te)| {
            (te.is_zero() || !te.is_nonnegative())
                .then(|| (RieszVector::basis(n, i), format!("T e_{i} is not a nonzero positive vector")))
        });
        match (positive_structurally, positive_on_basis) {
            (true, None) => report.pass_with_note("strictly_positive", "all weights > 0"),
            (_, Some((w, note))) => report.fail("strictly_positive", w, note),
            (false, None) => unreachable!("non-positive weights are rejected at construction"),
        };

        let mut averaging = None;
        'outer: for g in self.block_indicators() {
            let g = g.to_vector();
            for (i, te) in images.iter().enumerate() {
                let f = RieszVector::basis(n, i);
                let lhs = self.apply(&g.e_multiply(&f).expect("same n")).expect("same n");
                let rhs = g.e_multiply(te).expect("same n");
                if lhs != rhs {
                    averaging = Some((f, format!("T(g e_{i}) != g T(e_{i}) for block indicator {g}")));
                    break 'outer;
                }
            }
        }
        report.record("averaging", averaging);
        report.pass_with_note("dedekind_complete_range", "finite dimension");
        report
    }

    /// `T(|x|^q)`, the `q`-th power of the `R(T)`-valued norm `‖x‖_{T,q}`.
    pub fn norm_q_power(&self, x: &RieszVector, q: u32) -> Result<RieszVector> {
        if q == 0 {
            return Err(Error::InvalidArgument("norm exponent q must be at least 1".into()));
        }
        self.apply(&x.abs().powi(q))
    }

    /// Floating `q`-th root of [`Self::norm_q_power`], for display.
    pub fn norm_q_f64(&self, x: &RieszVector, q: u32) -> Result<Vec<f64>> {
        let power = self.norm_q_power(x, q)?;
        Ok(power.iter().map(|v| to_f64(v).powf(1.0 / f64::from(q))).collect())
    }

    /// `‖x‖_{T,∞}`: the least block-constant vector dominating `|x|`.
    pub fn norm_inf(&self, x: &RieszVector) -> Result<RieszVector> {
        same_len(self.atoms(), x.len())?;
        let per_block: Vec<Rational> = self
            .blocks
            .iter()
            .map(|block| block.iter().map(|&i| x.get(i).abs()).max().expect("non-empty block"))
            .collect();
        Ok(self.spread(&per_block))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{int, rat};

    fn v(values: &[i64]) -> RieszVector {
        RieszVector::from_ints(values).unwrap()
    }

    fn two_blocks() -> CondExpectation {
        CondExpectation::new(vec![rat(1, 4), rat(1, 4), rat(1, 2)], vec![vec![0, 1], vec![2]]).unwrap()
    }

    #[test]
    fn apply_examples() {
        let t = CondExpectation::trivial(3);
        assert_eq!(t.apply(&v(&[0, 1, 2])).unwrap(), v(&[1, 1, 1]));
        assert_eq!(t.apply(&RieszVector::unit(3)).unwrap(), RieszVector::unit(3));
        // (1·1/4 + 3·1/4) / (1/2) = 2 on the first block
        assert_eq!(two_blocks().apply(&v(&[1, 3, 5])).unwrap(), v(&[2, 2, 5]));
        assert!(two_blocks().apply(&v(&[1, 3])).is_err());
    }

    #[test]
    fn apply_component_matches_apply() {
        let t = two_blocks();
        for mask in 0..8 {
            let p = Component::from_mask(3, mask);
            assert_eq!(t.apply_component(&p).unwrap(), t.apply(&p.to_vector()).unwrap());
            let h = v(&[3, -1, 2]);
            assert_eq!(t.apply_restricted(&p, &h).unwrap(), t.apply(&p.to_vector().e_multiply(&h).unwrap()).unwrap());
        }
    }

    #[test]
    fn range_membership() {
        let t = two_blocks();
        assert!(t.range_contains(&RieszVector::unit(3)));
        assert!(t.range_contains(&v(&[1, 1, 7])));
        assert!(!t.range_contains(&v(&[1, 2, 7])));
        assert!(t.range_contains(&t.apply(&v(&[1, 2, 7])).unwrap()));
        assert!(t.range_contains_component(&Component::parse_bits("110").unwrap()));
        assert!(!t.range_contains_component(&Component::parse_bits("100").unwrap()));
    }

    #[test]
    fn construction_rejects_bad_input() {
        let zero_weight = CondExpectation::new(vec![int(0), int(1)], vec![vec![0, 1]]);
        assert!(matches!(zero_weight, Err(Error::InvalidWeights(_))));
        let not_normalized = CondExpectation::new(vec![rat(1, 2), rat(1, 3)], vec![vec![0, 1]]);
        assert!(matches!(not_normalized, Err(Error::InvalidWeights(_))));
        let overlap = CondExpectation::new(vec![rat(1, 2); 2], vec![vec![0, 1], vec![1]]);
        assert!(matches!(overlap, Err(Error::InvalidPartition(_))));
        let uncovered = CondExpectation::new(vec![rat(1, 2); 2], vec![vec![0]]);
        assert!(matches!(uncovered, Err(Error::InvalidPartition(_))));
        let empty_block = CondExpectation::new(vec![rat(1, 2); 2], vec![vec![0, 1], vec![]]);
        assert!(matches!(empty_block, Err(Error::InvalidPartition(_))));
        let outside = CondExpectation::new(vec![rat(1, 2); 2], vec![vec![0, 2]]);
        assert!(matches!(outside, Err(Error::InvalidPartition(_))));
    }

    #[test]
    fn axioms_hold_by_construction() {
        for t in [two_blocks(), CondExpectation::trivial(4), CondExpectation::trivial(1)] {
            let report = t.verify_axioms();
            assert!(report.all_passed(), "{report:?}");
        }
    }

    #[test]
    fn averaging_with_block_indicator_and_basis_vector() {
        let t = two_blocks();
        let g = t.block_indicator(0).to_vector();
        let f = RieszVector::basis(3, 1);
        // both sides: (1/2, 1/2, 0)
        let expected = RieszVector::new(vec![rat(1, 2), rat(1, 2), int(0)]).unwrap();
        assert_eq!(t.apply(&g.e_multiply(&f).unwrap()).unwrap(), expected);
        assert_eq!(g.e_multiply(&t.apply(&f).unwrap()).unwrap(), expected);
    }

    #[test]
    fn norms() {
        let t = CondExpectation::trivial(2);
        assert_eq!(t.norm_q_power(&v(&[1, -3]), 2).unwrap(), v(&[5, 5]));
        assert!(t.norm_q_power(&v(&[1, -3]), 0).is_err());
        let p = Component::parse_bits("10").unwrap().to_vector();
        for q in 1..5 {
            assert_eq!(t.norm_q_power(&p, q).unwrap(), t.apply(&p).unwrap());
            assert_eq!(t.norm_q_power(&RieszVector::unit(2), q).unwrap(), RieszVector::unit(2));
        }
        assert_eq!(two_blocks().norm_inf(&v(&[1, -4, 2])).unwrap(), v(&[4, 4, 2]));
        assert_eq!(two_blocks().norm_inf(&RieszVector::unit(3)).unwrap(), RieszVector::unit(3));
        let roots = t.norm_q_f64(&v(&[1, -3]), 2).unwrap();
        assert!((roots[0] - 5f64.sqrt()).abs() < 1e-12);
    }
}

// SPDX-License-Identifier: Apache-2.0

//! Conditional expectation preserving systems `(E, T, S, e)`.
//!
//! `S` is always a composition operator `(Sf)_i = f_{σ(i)}`. A
//! [`CandidateSystem`] pairs an expectation with any atom map and can be
//! inspected even when the axioms fail; a [`CepsSystem`] only exists once
//! [`CandidateSystem::validate`] passes, and is what the deciders accept.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{same_len, Error, Result};
use crate::expectation::CondExpectation;
use crate::numeric::Rational;
use crate::orbit;
use crate::report::CheckReport;
use crate::riesz::{Component, RieszVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoopmanMap {
    sigma: Vec<usize>,
}

impl KoopmanMap {
    pub fn new(sigma: Vec<usize>) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::Empty);
        }
        let n = sigma.len();
        if let Some(i) = sigma.iter().position(|&j| j >= n) {
            return Err(Error::InvalidAtomMap(format!("sigma[{i}] = {} is out of range for {n} atoms", sigma[i])));
        }
        Ok(Self { sigma })
    }

    pub fn identity(n: usize) -> Self {
        Self::new((0..n).collect()).expect("identity map is in range")
    }

    /// The `n`-cycle `i ↦ i + 1 mod n`.
    pub fn rotation(n: usize) -> Self {
        Self::new((0..n).map(|i| (i + 1) % n).collect()).expect("rotation is in range")
    }

    pub fn atoms(&self) -> usize {
        self.sigma.len()
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn is_permutation(&self) -> bool {
        orbit::is_permutation(&self.sigma)
    }

    /// `(Sf)_i = f_{σ(i)}`.
    pub fn apply(&self, f: &RieszVector) -> Result<RieszVector> {
        same_len(self.atoms(), f.len())?;
        RieszVector::new(self.sigma.iter().map(|&j| f.get(j).clone()).collect())
    }

    pub fn apply_component(&self, p: &Component) -> Result<Component> {
        same_len(self.atoms(), p.len())?;
        Component::new(self.sigma.iter().map(|&j| p.contains(j)).collect())
    }
}

/// An expectation and an atom map on the same atoms, not yet validated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSystem {
    expectation: CondExpectation,
    koopman: KoopmanMap,
}

impl CandidateSystem {
    pub fn new(expectation: CondExpectation, koopman: KoopmanMap) -> Result<Self> {
        same_len(expectation.atoms(), koopman.atoms())?;
        Ok(Self { expectation, koopman })
    }

    pub fn atoms(&self) -> usize {
        self.expectation.atoms()
    }

    pub fn expectation(&self) -> &CondExpectation {
        &self.expectation
    }

    pub fn koopman(&self) -> &KoopmanMap {
        &self.koopman
    }

    /// Checks `TS = T` on the basis, `Se = e`, the lattice-homomorphism
    /// property and the equivalent structural description: `σ` is a
    /// permutation preserving every block whose preimages keep their weight.
    pub fn validate(&self) -> CheckReport {
        let t = &self.expectation;
        let s = &self.koopman;
        let n = self.atoms();
        let mut report = CheckReport::new();

        let ts_defect = (0..n).find_map(|k| {
            let ek = RieszVector::basis(n, k);
            let ts = t.apply(&s.apply(&ek).expect("same n")).expect("same n");
            (ts != t.apply(&ek).expect("same n")).then(|| (ek, format!("T(S e_{k}) != T e_{k}")))
        });
        report.record("ts_equals_t", ts_defect);

        let e = RieszVector::unit(n);
        let se = s.apply(&e).expect("same n");
        report.record("s_unit", (se != e).then(|| (se.clone(), "S e != e".to_string())));

        report.pass_with_note("lattice_homomorphism", "composition operators preserve ∨ and ∧");

        report.record("structure", self.structure_defect());
        report
    }

    fn structure_defect(&self) -> Option<(RieszVector, String)> {
        let t = &self.expectation;
        let sigma = self.koopman.sigma();
        let n = self.atoms();
        if !orbit::is_permutation(sigma) {
            let mut hit = vec![false; n];
            for &j in sigma {
                hit[j] = true;
            }
            let missed = Component::from_support(n, (0..n).filter(|&k| !hit[k]));
            return Some((
                missed.to_vector(),
                "sigma is not a permutation; witness marks atoms without preimage".into(),
            ));
        }
        if let Some(i) = (0..n).find(|&i| t.block_of(sigma[i]) != t.block_of(i)) {
            return Some((
                RieszVector::basis(n, i),
                format!("sigma({i}) = {} leaves block {}", sigma[i], t.block_of(i)),
            ));
        }
        let mut preimage_mass = vec![Rational::zero(); n];
        for (i, &j) in sigma.iter().enumerate() {
            preimage_mass[j] += &t.weights()[i];
        }
        (0..n)
            .find(|&k| preimage_mass[k] != t.weights()[k])
            .map(|k| (RieszVector::basis(n, k), format!("weight of sigma^-1({k}) differs from weight of {k}")))
    }

    pub fn is_valid(&self) -> bool {
        self.validate().all_passed()
    }

    /// `Sg = g` for every block indicator `g`, which spans `R(T)`.
    pub fn check_lemma_st(&self) -> CheckReport {
        let mut report = CheckReport::new();
        let witness = self.expectation.block_indicators().into_iter().enumerate().find_map(|(b, g)| {
            let sg = self.koopman.apply_component(&g).expect("same n");
            (sg != g).then(|| (g.to_vector(), format!("S moves the indicator of block {b}")))
        });
        report.record("s_fixes_range", witness);
        report
    }

    pub fn into_ceps(self) -> Result<CepsSystem> {
        let report = self.validate();
        if let Some(failed) = report.failures().next() {
            return Err(Error::NotCeps(format!(
                "check `{}` failed: {}",
                failed.name,
                failed.note.as_deref().unwrap_or("")
            )));
        }
        let cycles = orbit::cycles(self.koopman.sigma()).expect("validated maps are permutations");
        let mut cycle_of = vec![0; self.atoms()];
        for (c, cycle) in cycles.iter().enumerate() {
            for &i in cycle {
                cycle_of[i] = c;
            }
        }
        Ok(CepsSystem { inner: self, cycles, cycle_of })
    }
}

/// A validated conditional expectation preserving system with its cached
/// cycle decomposition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CepsSystem {
    inner: CandidateSystem,
    cycles: Vec<Vec<usize>>,
    cycle_of: Vec<usize>,
}

impl CepsSystem {
    pub fn new(expectation: CondExpectation, koopman: KoopmanMap) -> Result<Self> {
        CandidateSystem::new(expectation, koopman)?.into_ceps()
    }

    pub fn atoms(&self) -> usize {
        self.inner.atoms()
    }

    pub fn expectation(&self) -> &CondExpectation {
        &self.inner.expectation
    }

    pub fn koopman(&self) -> &KoopmanMap {
        &self.inner.koopman
    }

    pub fn candidate(&self) -> &CandidateSystem {
        &self.inner
    }

    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn cycle_of(&self, atom: usize) -> usize {
        self.cycle_of[atom]
    }

    pub fn longest_cycle(&self) -> usize {
        self.cycles.iter().map(Vec::len).max().expect("at least one atom")
    }

    pub fn apply_t(&self, f: &RieszVector) -> Result<RieszVector> {
        self.expectation().apply(f)
    }

    pub fn apply_s(&self, f: &RieszVector) -> Result<RieszVector> {
        self.koopman().apply(f)
    }

    pub fn check_lemma_st(&self) -> CheckReport {
        self.inner.check_lemma_st()
    }
}

/// For random components `p`: whenever `Tp` is a component, `Tp = p`.
///
/// `p = 0` and `p = e` are always included; the note records how many
/// instances met the hypothesis.
pub fn check_lemma_tpc(t: &CondExpectation, trials: usize, seed: u64) -> CheckReport {
    let n = t.atoms();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = [Component::zero(n), Component::unit(n)]
        .into_iter()
        .chain((0..trials).map(|_| Component::new((0..n).map(|_| rng.random_bool(0.5)).collect()).expect("n >= 1")));

    let mut non_vacuous = 0usize;
    let mut violation = None;
    for p in candidates {
        let tp = t.apply_component(&p).expect("same n");
        if !crate::riesz::is_component(&tp) {
            continue;
        }
        non_vacuous += 1;
        if tp != p.to_vector() {
            violation = Some((p.to_vector(), format!("T p = {tp} is a component but differs from p")));
            break;
        }
    }
    let mut report = CheckReport::new();
    match violation {
        None => report.pass_with_note(
            "tp_component_implies_fixed",
            format!("{non_vacuous} of {} components met the hypothesis", trials + 2),
        ),
        Some((w, note)) => report.fail("tp_component_implies_fixed", w, note),
    };
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rat;

    fn v(values: &[i64]) -> RieszVector {
        RieszVector::from_ints(values).unwrap()
    }

    #[test]
    fn apply_s_examples() {
        let f = v(&[10, 20, 30]);
        assert_eq!(KoopmanMap::identity(3).apply(&f).unwrap(), f);
        let s = KoopmanMap::new(vec![1, 2, 0]).unwrap();
        assert_eq!(s.apply(&f).unwrap(), v(&[20, 30, 10]));
        let p = Component::parse_bits("100").unwrap();
        assert!(crate::riesz::is_component(&s.apply(&p.to_vector()).unwrap()));
        assert!(KoopmanMap::new(vec![0, 3]).is_err());
    }

    #[test]
    fn permutation_on_one_block_is_valid() {
        let sys =
            CandidateSystem::new(CondExpectation::trivial(4), KoopmanMap::new(vec![2, 0, 3, 1]).unwrap()).unwrap();
        assert!(sys.validate().all_passed());
        assert!(sys.into_ceps().is_ok());
    }

    #[test]
    fn non_surjective_map_fails() {
        let sys = CandidateSystem::new(CondExpectation::trivial(3), KoopmanMap::new(vec![0, 0, 1]).unwrap()).unwrap();
        let report = sys.validate();
        assert!(!report.get("ts_equals_t").unwrap().passed);
        let structure = report.get("structure").unwrap();
        assert!(!structure.passed);
        assert_eq!(structure.witness.as_ref().unwrap(), &v(&[0, 0, 1]));
        assert!(matches!(sys.into_ceps(), Err(Error::NotCeps(_))));
    }

    #[test]
    fn block_crossing_map_fails() {
        let t = CondExpectation::uniform(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let sys = CandidateSystem::new(t, KoopmanMap::new(vec![2, 1, 0, 3]).unwrap()).unwrap();
        let report = sys.validate();
        assert!(!report.get("ts_equals_t").unwrap().passed);
        assert!(!report.get("structure").unwrap().passed);
        let st = sys.check_lemma_st();
        assert!(!st.all_passed());
        assert_eq!(st.checks[0].witness.as_ref().unwrap(), &v(&[1, 1, 0, 0]));
    }

    #[test]
    fn cycle_with_unequal_weights_fails() {
        let t = CondExpectation::new(vec![rat(1, 4), rat(3, 4)], vec![vec![0, 1]]).unwrap();
        let sys = CandidateSystem::new(t, KoopmanMap::new(vec![1, 0]).unwrap()).unwrap();
        let report = sys.validate();
        assert!(!report.get("ts_equals_t").unwrap().passed);
        assert!(!report.get("structure").unwrap().passed);
        assert!(report.get("s_unit").unwrap().passed);
    }

    #[test]
    fn lemma_st_on_valid_and_trivial_systems() {
        let t = CondExpectation::uniform(vec![vec![0, 1], vec![2, 3]]).unwrap();
        let sys = CepsSystem::new(t, KoopmanMap::new(vec![1, 0, 3, 2]).unwrap()).unwrap();
        assert!(sys.check_lemma_st().all_passed());
        let trivial = CepsSystem::new(CondExpectation::trivial(3), KoopmanMap::rotation(3)).unwrap();
        assert!(trivial.check_lemma_st().all_passed());
    }

    #[test]
    fn single_atom_system() {
        let sys = CepsSystem::new(CondExpectation::trivial(1), KoopmanMap::identity(1)).unwrap();
        assert_eq!(sys.cycles(), &[vec![0]]);
        assert_eq!(sys.longest_cycle(), 1);
    }

    #[test]
    fn lemma_tpc_cases() {
        let t = CondExpectation::new(vec![rat(1, 4), rat(1, 4), rat(1, 2)], vec![vec![0, 1], vec![2]]).unwrap();
        // full block union: T p = p
        let p = Component::parse_bits("110").unwrap();
        assert_eq!(t.apply_component(&p).unwrap(), p.to_vector());
        // strictly inside a block: T p is not a component
        let inside = Component::parse_bits("100").unwrap();
        assert!(!crate::riesz::is_component(&t.apply_component(&inside).unwrap()));
        let report = check_lemma_tpc(&t, 50, 3);
        assert!(report.all_passed(), "{report:?}");
        let single = check_lemma_tpc(&CondExpectation::trivial(1), 0, 0);
        assert!(single.all_passed());
    }
}

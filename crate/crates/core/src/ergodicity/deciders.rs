// SPDX-License-Identifier: Apache-2.0

//! Deciders for ergodicity stated through invariant elements, components and
//! time averages.

use crate::config::{BruteForceCap, ScanMode};
use crate::error::Result;
use crate::orbit;
use crate::riesz::{Component, RieszVector};
use crate::system::CepsSystem;

use super::cesaro::birkhoff_limit;
use super::{Verdict, Witness};

/// Every component in lexicographic order (atom 0 most significant).
pub(crate) fn all_components(n: usize) -> impl Iterator<Item = Component> {
    (0..1u64 << n).map(move |mask| Component::from_mask(n, mask))
}

fn first_failure(candidates: impl IntoIterator<Item = Component>, fails: impl Fn(&Component) -> bool) -> Verdict {
    match candidates.into_iter().find(|p| fails(p)) {
        None => Verdict::holds(),
        Some(p) => Verdict::fails(Witness::Component(p)),
    }
}

fn cycle_indicators(sys: &CepsSystem) -> impl Iterator<Item = Component> + '_ {
    sys.cycles().iter().map(|c| Component::from_support(sys.atoms(), c.iter().copied()))
}

/// `Sf = f ⇒ Tf = f`, checked on a basis of the invariant subspace.
///
/// The invariant vectors are those constant on the weakly connected classes
/// of the graph `i → σ(i)`, so the class indicators span them.
pub fn decide_definition(sys: &CepsSystem) -> Verdict {
    let n = sys.atoms();
    let classes = orbit::functional_graph_classes(sys.koopman().sigma());
    first_failure(classes.into_iter().map(|c| Component::from_support(n, c)), |p| {
        let f = p.to_vector();
        sys.apply_t(&f).expect("same n") != f
    })
}

/// `Sp = p ⇒ Tp = p` over components of `e`.
///
/// Reduction mode tests the indicators of the σ-cycles: every invariant
/// component is a disjoint union of them.
pub fn decide_lemma_lc(sys: &CepsSystem, mode: ScanMode, cap: BruteForceCap) -> Result<Verdict> {
    let t = sys.expectation();
    let s = sys.koopman();
    let fails = |p: &Component| {
        s.apply_component(p).expect("same n") == *p && t.apply_component(p).expect("same n") != p.to_vector()
    };
    Ok(if mode.exhaustive_for(sys.atoms(), cap)? {
        first_failure(all_components(sys.atoms()), fails)
    } else {
        first_failure(cycle_indicators(sys), fails)
    })
}

/// `T((e − p)·Sp) = 0 ⇒ p ∈ R(T)` over components of `e`.
///
/// By strict positivity of `T` the hypothesis forces `Sp = p`, so reduction
/// mode tests only the cycle indicators, for which it holds trivially.
pub fn decide_thm4_ii(sys: &CepsSystem, mode: ScanMode, cap: BruteForceCap) -> Result<Verdict> {
    let t = sys.expectation();
    let s = sys.koopman();
    let n = sys.atoms();
    let e = RieszVector::unit(n);
    let fails = |p: &Component| {
        let pv = p.to_vector();
        let sp = s.apply(&pv).expect("same n");
        let hypothesis = (&e - &pv).e_multiply(&sp).expect("same n");
        t.apply(&hypothesis).expect("same n").is_zero() && !t.range_contains(&pv)
    };
    Ok(if mode.exhaustive_for(n, cap)? {
        first_failure(all_components(n), fails)
    } else {
        first_failure(cycle_indicators(sys), fails)
    })
}

/// `⋁_{n≥1} Sⁿp`, iterating `c ← Sp ∨ Sc` until it stops changing.
pub fn invariant_join(sys: &CepsSystem, p: &Component) -> Component {
    let s = sys.koopman();
    let sp = s.apply_component(p).expect("same n");
    let mut c = sp.clone();
    loop {
        let next = sp.join(&s.apply_component(&c).expect("same n")).expect("same n");
        if next == c {
            return c;
        }
        c = next;
    }
}

/// `⋁_{n≥1} Sⁿp ∈ R(T)` for every component `p`.
///
/// Reduction mode scans singletons: the join commutes with `∨` in `p`, and
/// block-constant components are closed under `∨`.
pub fn decide_thm4_iii(sys: &CepsSystem, mode: ScanMode, cap: BruteForceCap) -> Result<Verdict> {
    let t = sys.expectation();
    let n = sys.atoms();
    let fails = |p: &Component| !t.range_contains_component(&invariant_join(sys, p));
    Ok(if mode.exhaustive_for(n, cap)? {
        first_failure(all_components(n), fails)
    } else {
        first_failure((0..n).map(|i| Component::singleton(n, i)), fails)
    })
}

/// `L_S f = Tf` on the standard basis, hence for all `f`.
pub fn decide_thm_l1(sys: &CepsSystem) -> Verdict {
    let n = sys.atoms();
    (0..n)
        .map(|i| RieszVector::basis(n, i))
        .find(|ei| birkhoff_limit(sys, ei).expect("same n") != sys.apply_t(ei).expect("same n"))
        .map_or_else(Verdict::holds, |ei| Verdict::fails(Witness::Vector(ei)))
}

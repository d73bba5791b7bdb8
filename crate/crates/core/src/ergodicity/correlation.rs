// SPDX-License-Identifier: Apache-2.0

//! Correlation averages `(1/n) Σ_{k<n} T(f·S^k g)` and the criteria built on
//! their limits.

use serde::Serialize;

use crate::config::{BruteForceCap, ScanMode};
use crate::error::{same_len, Result};
use crate::numeric::Rational;
use crate::riesz::{Component, RieszVector};
use crate::system::CepsSystem;

use super::cesaro::{birkhoff_limit, cesaro_mean};
use super::deciders::all_components;
use super::{Verdict, Witness};

/// Which family of `(f, g)` pairs a correlation criterion quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CorrelationVariant {
    /// `f ∈ L^∞(T)`, `g ∈ L^1(T)`.
    Ii,
    /// `f, g ∈ E_e`.
    Iii,
    /// `f, g` components of `e`.
    Iv,
    /// `f = g ∈ E_e`.
    V,
    /// `f = g` a component of `e`.
    Vi,
}

impl CorrelationVariant {
    pub const ALL: [Self; 5] = [Self::Ii, Self::Iii, Self::Iv, Self::V, Self::Vi];
}

/// `(1/n) Σ_{k=0}^{n−1} T(f·S^k g)`, computed as `T(f·S_n g)`.
pub fn correlation_mean(sys: &CepsSystem, f: &RieszVector, g: &RieszVector, n: u64) -> Result<RieszVector> {
    same_len(sys.atoms(), f.len())?;
    let mean = cesaro_mean(sys, g, n)?;
    sys.apply_t(&f.e_multiply(&mean)?)
}

/// `lim_n (1/n) Σ_{k<n} T(f·S^k g) = T(f·L_S g)`.
pub fn correlation_limit(sys: &CepsSystem, f: &RieszVector, g: &RieszVector) -> Result<RieszVector> {
    same_len(sys.atoms(), f.len())?;
    let limit = birkhoff_limit(sys, g)?;
    sys.apply_t(&f.e_multiply(&limit)?)
}

fn product_of_expectations(sys: &CepsSystem, f: &RieszVector, g: &RieszVector) -> RieszVector {
    let tf = sys.apply_t(f).expect("same n");
    let tg = sys.apply_t(g).expect("same n");
    tf.e_multiply(&tg).expect("same n")
}

fn vector_pair_check(sys: &CepsSystem, pairs: impl IntoIterator<Item = (RieszVector, RieszVector)>) -> Verdict {
    for (f, g) in pairs {
        let limit = correlation_limit(sys, &f, &g).expect("same n");
        if limit != product_of_expectations(sys, &f, &g) {
            return Verdict::fails(if f == g { Witness::Vector(f) } else { Witness::VectorPair { f, g } });
        }
    }
    Verdict::holds()
}

/// Integer form of both sides of the correlation identity for components.
///
/// With `t_i = μ_i / μ(B(i))`, `u_i = t_i / |cycle(i)|` and `k_i(g) = |g ∩ cycle(i)|`,
/// block `B` of `T(f·L_S g)` is `Σ_{i∈f∩B} u_i k_i(g)` and block `B` of `Tf·Tg`
/// is `(Σ_{i∈f∩B} t_i)(Σ_{j∈g∩B} t_j)`. Scaling by the common denominator `D`
/// of all `t_i, u_i` turns the comparison into
/// `D·Σ U_i k_i(g) = (Σ T_i)(Σ T_j)` over integers.
struct ScaledTables {
    scale: i128,
    t: Vec<i128>,
    u: Vec<i128>,
    block_of: Vec<usize>,
    blocks: usize,
}

impl ScaledTables {
    /// Bound on scaled entries that keeps every sum and product inside `i128`.
    const LIMIT: i128 = 1 << 40;

    fn new(sys: &CepsSystem) -> Option<Self> {
        use num_integer::Integer;
        use num_traits::ToPrimitive;

        let t = sys.expectation();
        let n = sys.atoms();
        if n > 64 {
            return None;
        }
        let tv: Vec<Rational> = (0..n).map(|i| &t.weights()[i] / t.block_mass(t.block_of(i))).collect();
        let uv: Vec<Rational> =
            (0..n).map(|i| &tv[i] * crate::numeric::inverse_count(sys.cycles()[sys.cycle_of(i)].len())).collect();
        let scale = tv.iter().chain(&uv).fold(num_bigint::BigInt::from(1), |acc, v| acc.lcm(v.denom()));
        let scaled = |v: &Rational| -> Option<i128> {
            let x = (v * Rational::from_integer(scale.clone())).to_integer().to_i128()?;
            (x.abs() < Self::LIMIT).then_some(x)
        };
        let scale_int = scale.to_i128().filter(|d| *d < Self::LIMIT)?;
        Some(Self {
            scale: scale_int,
            t: tv.iter().map(scaled).collect::<Option<_>>()?,
            u: uv.iter().map(scaled).collect::<Option<_>>()?,
            block_of: (0..n).map(|i| t.block_of(i)).collect(),
            blocks: t.blocks().len(),
        })
    }

    fn block_sums(&self, p: &Component) -> Vec<i128> {
        let mut sums = vec![0; self.blocks];
        for i in p.support() {
            sums[self.block_of[i]] += self.t[i];
        }
        sums
    }

    /// `U_i k_i(g)` per atom.
    fn weighted_limit(&self, sys: &CepsSystem, g: &Component) -> Vec<i128> {
        let counts: Vec<i128> =
            sys.cycles().iter().map(|c| c.iter().filter(|&&j| g.contains(j)).count() as i128).collect();
        (0..self.u.len()).map(|i| self.u[i] * counts[sys.cycle_of(i)]).collect()
    }

    fn pair_holds(&self, f: &Component, tf: &[i128], lg: &[i128], tg: &[i128]) -> bool {
        let mut lhs = vec![0i128; self.blocks];
        for i in f.support() {
            lhs[self.block_of[i]] += lg[i];
        }
        lhs.iter().zip(tf.iter().zip(tg)).all(|(l, (a, b))| self.scale * l == a * b)
    }
}

/// Component pairs `(f, g)` from `fs × gs`, or the diagonal `(f, f)` of `fs`.
/// Per-component quantities are computed once.
fn component_pair_check(sys: &CepsSystem, fs: &[Component], gs: &[Component], diagonal: bool) -> Verdict {
    if let Some(tables) = ScaledTables::new(sys) {
        let tf: Vec<Vec<i128>> = fs.iter().map(|f| tables.block_sums(f)).collect();
        if diagonal {
            for (f, tf) in fs.iter().zip(&tf) {
                if !tables.pair_holds(f, tf, &tables.weighted_limit(sys, f), tf) {
                    return Verdict::fails(Witness::Component(f.clone()));
                }
            }
            return Verdict::holds();
        }
        let rhs: Vec<(Vec<i128>, Vec<i128>)> =
            gs.iter().map(|g| (tables.weighted_limit(sys, g), tables.block_sums(g))).collect();
        for (f, tf) in fs.iter().zip(&tf) {
            for (g, (lg, tg)) in gs.iter().zip(&rhs) {
                if !tables.pair_holds(f, tf, lg, tg) {
                    return Verdict::fails(Witness::ComponentPair { f: f.clone(), g: g.clone() });
                }
            }
        }
        return Verdict::holds();
    }
    rational_pair_check(sys, fs, gs, diagonal)
}

fn rational_pair_check(sys: &CepsSystem, fs: &[Component], gs: &[Component], diagonal: bool) -> Verdict {
    let t = sys.expectation();
    let expect = |p: &Component| t.apply_component(p).expect("same n");
    let tf: Vec<RieszVector> = fs.iter().map(expect).collect();
    let check = |f_idx: usize, lg: &RieszVector, tg: &RieszVector| {
        let lhs = t.apply_restricted(&fs[f_idx], lg).expect("same n");
        lhs == tf[f_idx].e_multiply(tg).expect("same n")
    };
    if diagonal {
        for (i, f) in fs.iter().enumerate() {
            let lg = birkhoff_limit(sys, &f.to_vector()).expect("same n");
            if !check(i, &lg, &tf[i]) {
                return Verdict::fails(Witness::Component(f.clone()));
            }
        }
        return Verdict::holds();
    }
    let limits: Vec<(RieszVector, RieszVector)> =
        gs.iter().map(|g| (birkhoff_limit(sys, &g.to_vector()).expect("same n"), expect(g))).collect();
    for (i, f) in fs.iter().enumerate() {
        for (g, (lg, tg)) in gs.iter().zip(&limits) {
            if !check(i, lg, tg) {
                return Verdict::fails(Witness::ComponentPair { f: f.clone(), g: g.clone() });
            }
        }
    }
    Verdict::holds()
}

/// Singletons `e_i` and pairs `e_i + e_j`, `i < j`. Their diagonal values
/// determine the symmetric part of a bilinear form by polarization.
fn polarization_set(n: usize) -> Vec<Component> {
    let mut out: Vec<Component> = (0..n).map(|i| Component::singleton(n, i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            out.push(Component::from_support(n, [i, j]));
        }
    }
    out
}

/// `lim_n (1/n) Σ_{k<n} T(f·S^k g) = Tf·Tg` over the pairs named by `variant`.
///
/// | variant | pairs |
/// |---|---|
/// | ii, iii | basis pairs `(e_i, e_j)`, sufficient by bilinearity |
/// | iv | all component pairs if `2n` fits the cap, else singleton pairs |
/// | v | diagonal over `e_i` and `e_i + e_j` |
/// | vi | diagonal over all components if `n` fits the cap, else over `e_i`, `e_i + e_j` |
///
/// In `Reduction` mode iv and vi always use the reduced sets.
pub fn decide_correlation(
    sys: &CepsSystem,
    variant: CorrelationVariant,
    mode: ScanMode,
    cap: BruteForceCap,
) -> Result<Verdict> {
    let n = sys.atoms();
    let basis = |i| RieszVector::basis(n, i);
    Ok(match variant {
        CorrelationVariant::Ii | CorrelationVariant::Iii => {
            vector_pair_check(sys, (0..n).flat_map(|i| (0..n).map(move |j| (basis(i), basis(j)))))
        }
        CorrelationVariant::Iv => {
            let set: Vec<Component> = if mode.exhaustive_for(2 * n, cap)? {
                all_components(n).collect()
            } else {
                (0..n).map(|i| Component::singleton(n, i)).collect()
            };
            component_pair_check(sys, &set, &set, false)
        }
        CorrelationVariant::V => {
            vector_pair_check(sys, polarization_set(n).into_iter().map(|p| (p.to_vector(), p.to_vector())))
        }
        CorrelationVariant::Vi => {
            let set: Vec<Component> =
                if mode.exhaustive_for(n, cap)? { all_components(n).collect() } else { polarization_set(n) };
            component_pair_check(sys, &set, &[], true)
        }
    })
}

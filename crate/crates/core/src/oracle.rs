// SPDX-License-Identifier: Apache-2.0

//! Brute-force references that certify the fast paths.
//!
//! `T` and `S` are rebuilt here as dense matrices straight from the raw
//! weights, partition and atom map, and every quantifier is discharged by
//! enumeration. Nothing below calls the operator code in `expectation`,
//! `system` or `ergodicity`.

use num_traits::{One, Signed, Zero};

use crate::config::BruteForceCap;
use crate::error::{same_len, Error, Result};
use crate::numeric::Rational;
use crate::riesz::{Component, RieszVector};
use crate::system::{CandidateSystem, CepsSystem};

/// Every component of `e` on `n` atoms, in lexicographic order.
pub fn enumerate_components(n: usize, cap: BruteForceCap) -> Result<impl Iterator<Item = Component>> {
    if n == 0 {
        return Err(Error::Empty);
    }
    cap.require(n)?;
    Ok((0..1u64 << n).map(move |mask| Component::from_mask(n, mask)))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    rows: Vec<Vec<Rational>>,
}

impl DenseMatrix {
    pub fn mul_vec(&self, v: &RieszVector) -> RieszVector {
        let entries = self.rows.iter().map(|row| row.iter().zip(v.iter()).map(|(a, b)| a * b).sum()).collect();
        RieszVector::new(entries).expect("square matrix of positive size")
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.rows.len();
        let rows = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| &self.rows[i][k] * &other.rows[k][j]).sum()).collect())
            .collect();
        Self { rows }
    }
}

/// `T` and `S` as dense matrices.
#[derive(Clone, Debug)]
pub struct DenseOperators {
    pub t: DenseMatrix,
    pub s: DenseMatrix,
}

impl DenseOperators {
    /// `T_ij = μ_j / μ(B)` when `i, j` share a block `B`; `S_ij = [j = σ(i)]`.
    pub fn from_candidate(sys: &CandidateSystem) -> Self {
        let n = sys.atoms();
        let weights = sys.expectation().weights();
        let mut t = vec![vec![Rational::zero(); n]; n];
        for block in sys.expectation().blocks() {
            let mass: Rational = block.iter().map(|&j| &weights[j]).sum();
            for &i in block {
                for &j in block {
                    t[i][j] = &weights[j] / &mass;
                }
            }
        }
        let mut s = vec![vec![Rational::zero(); n]; n];
        for (i, &j) in sys.koopman().sigma().iter().enumerate() {
            s[i][j] = Rational::one();
        }
        Self { t: DenseMatrix { rows: t }, s: DenseMatrix { rows: s } }
    }

    pub fn from_system(sys: &CepsSystem) -> Self {
        Self::from_candidate(sys.candidate())
    }
}

/// `TS = T` as a matrix identity.
pub fn oracle_preserves_expectation(sys: &CandidateSystem) -> bool {
    let ops = DenseOperators::from_candidate(sys);
    ops.t.mul(&ops.s) == ops.t
}

/// Ergodicity by exhaustive scan: every component `p` with `Sp = p` has `Tp = p`.
pub fn oracle_ergodic(sys: &CepsSystem, cap: BruteForceCap) -> Result<bool> {
    Ok(oracle_ergodic_witness(sys, cap)?.is_none())
}

/// The first invariant component not fixed by `T`, if any.
pub fn oracle_ergodic_witness(sys: &CepsSystem, cap: BruteForceCap) -> Result<Option<Component>> {
    let ops = DenseOperators::from_system(sys);
    for p in enumerate_components(sys.atoms(), cap)? {
        let pv = p.to_vector();
        if ops.s.mul_vec(&pv) == pv && ops.t.mul_vec(&pv) != pv {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmpiricalBirkhoff {
    /// `S_{n_max} f`.
    pub mean: RieszVector,
    /// `‖S_{n_max} f − S_{⌊n_max/2⌋} f‖_∞`.
    pub gap: Rational,
}

/// `S_n f` by repeated dense matrix-vector products.
pub fn oracle_birkhoff(sys: &CepsSystem, f: &RieszVector, n_max: u64) -> Result<EmpiricalBirkhoff> {
    same_len(sys.atoms(), f.len())?;
    if n_max < 2 {
        return Err(Error::InvalidArgument("empirical Birkhoff average needs n_max >= 2".into()));
    }
    let ops = DenseOperators::from_system(sys);
    let half = n_max / 2;
    let mut power = f.clone();
    let mut sum = RieszVector::zeros(f.len());
    let mut half_mean = None;
    for k in 1..=n_max {
        sum = &sum + &power;
        power = ops.s.mul_vec(&power);
        if k == half {
            half_mean = Some(sum.scale(&Rational::new(1.into(), half.into())));
        }
    }
    let mean = sum.scale(&Rational::new(1.into(), n_max.into()));
    let gap = (&mean - &half_mean.expect("half >= 1")).sup_norm();
    Ok(EmpiricalBirkhoff { mean, gap })
}

/// `(1/n) Σ_{k<n} T(f·S^k g)` term by term.
pub fn oracle_correlation_mean(sys: &CepsSystem, f: &RieszVector, g: &RieszVector, n: u64) -> Result<RieszVector> {
    same_len(sys.atoms(), f.len())?;
    same_len(sys.atoms(), g.len())?;
    let ops = DenseOperators::from_system(sys);
    let mut power = g.clone();
    let mut sum = RieszVector::zeros(f.len());
    for _ in 0..n {
        sum = &sum + &ops.t.mul_vec(&f.e_multiply(&power)?);
        power = ops.s.mul_vec(&power);
    }
    Ok(sum.scale(&Rational::new(1.into(), n.into())))
}

/// `⋁_{n≥1} Sⁿp` pointwise: atom `i` is covered iff its forward orbit
/// `σ(i), σ²(i), …, σⁿ(i)` meets `p`.
pub fn oracle_invariant_join(sys: &CepsSystem, p: &Component) -> Component {
    let sigma = sys.koopman().sigma();
    let n = sigma.len();
    Component::from_support(
        n,
        (0..n).filter(|&i| {
            let mut j = i;
            (0..n).any(|_| {
                j = sigma[j];
                p.contains(j)
            })
        }),
    )
}

/// Scalar sup norm of the difference, for convergence checks.
pub fn sup_distance(a: &RieszVector, b: &RieszVector) -> Rational {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).abs()).max().unwrap_or_else(Rational::zero)
}

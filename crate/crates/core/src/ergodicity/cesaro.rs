// SPDX-License-Identifier: Apache-2.0

//! Cesàro means `S_n f` and their exact limit `L_S f`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{same_len, Error, Result};
use crate::numeric::{int, inverse_count, Rational};
use crate::riesz::RieszVector;
use crate::system::CepsSystem;

/// `S_n f` at each requested `n`, alongside the exact limit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CesaroTrace {
    pub f: RieszVector,
    pub values: Vec<(u64, RieszVector)>,
    pub limit: RieszVector,
    /// `‖S_n f − L_S f‖_∞`, one per entry of `values`.
    pub sup_errors: Vec<Rational>,
}

/// Sums `Σ_{k<n} S^k f` in one pass, reporting `S_n f` for each `n` in the
/// ascending, duplicate-free `grid`.
///
/// The orbit `σ^k(i)` is tracked per atom and numerators are accumulated over
/// a common denominator, so no rational normalization happens inside the loop.
fn cesaro_means(sys: &CepsSystem, f: &RieszVector, grid: &[u64]) -> Vec<RieszVector> {
    let sigma = sys.koopman().sigma();
    let (den, nums) = f.over_common_denominator();
    let mut position: Vec<usize> = (0..f.len()).collect();
    let mut sums = vec![BigInt::zero(); f.len()];
    let mut out = Vec::with_capacity(grid.len());
    let mut done = 0u64;
    for &n in grid {
        while done < n {
            for (sum, pos) in sums.iter_mut().zip(position.iter_mut()) {
                *sum += &nums[*pos];
                *pos = sigma[*pos];
            }
            done += 1;
        }
        let scale = &den * BigInt::from(n);
        let entries = sums.iter().map(|s| Rational::new(s.clone(), scale.clone())).collect();
        out.push(RieszVector::new(entries).expect("n >= 1"));
    }
    out
}

/// `S_n f = (1/n) Σ_{k=0}^{n−1} S^k f`.
pub fn cesaro_mean(sys: &CepsSystem, f: &RieszVector, n: u64) -> Result<RieszVector> {
    same_len(sys.atoms(), f.len())?;
    if n == 0 {
        return Err(Error::InvalidArgument("Cesàro mean needs n >= 1".into()));
    }
    Ok(cesaro_means(sys, f, &[n]).pop().expect("one grid point"))
}

/// `L_S f`: on each σ-cycle, the average of `f` over that cycle.
pub fn birkhoff_limit(sys: &CepsSystem, f: &RieszVector) -> Result<RieszVector> {
    same_len(sys.atoms(), f.len())?;
    let mut entries = vec![Rational::zero(); f.len()];
    for cycle in sys.cycles() {
        let mean: Rational = cycle.iter().map(|&i| f.get(i)).sum::<Rational>() * inverse_count(cycle.len());
        for &i in cycle {
            entries[i] = mean.clone();
        }
    }
    RieszVector::new(entries)
}

/// `2·ℓ_max·‖f‖_∞ / n`, where `ℓ_max` is the longest cycle length.
pub fn cesaro_bound(sys: &CepsSystem, f: &RieszVector, n: u64) -> Rational {
    let lmax = i64::try_from(sys.longest_cycle()).expect("cycle length fits i64");
    int(2 * lmax) * f.sup_norm() / Rational::from_integer(BigInt::from(n))
}

pub fn cesaro_trace(sys: &CepsSystem, f: &RieszVector, grid: &[u64]) -> Result<CesaroTrace> {
    same_len(sys.atoms(), f.len())?;
    let mut grid = grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    if grid.first() == Some(&0) {
        return Err(Error::InvalidArgument("Cesàro grid points must be >= 1".into()));
    }
    let limit = birkhoff_limit(sys, f)?;
    let means = cesaro_means(sys, f, &grid);
    let sup_errors = means.iter().map(|m| (m - &limit).sup_norm()).collect();
    Ok(CesaroTrace { f: f.clone(), values: grid.into_iter().zip(means).collect(), limit, sup_errors })
}

/// `1, ratio, ratio², …` up to and including `max`, starting from `start`.
pub fn geometric_grid(start: u64, max: u64, ratio: u64) -> Vec<u64> {
    let mut grid = Vec::new();
    let mut n = start.max(1);
    while n <= max {
        grid.push(n);
        match n.checked_mul(ratio.max(2)) {
            Some(next) => n = next,
            None => break,
        }
    }
    grid
}

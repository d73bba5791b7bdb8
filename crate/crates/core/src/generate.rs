// SPDX-License-Identifier: Apache-2.0

//! Seeded random systems.
//!
//! Valid systems are built directly from the structural description: a
//! random partition, a permutation of each block, and weights constant on
//! every cycle. Half of the seeds make every block a single cycle, so the
//! ergodic case is well represented.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::expectation::CondExpectation;
use crate::numeric::Rational;
use crate::orbit;
use crate::riesz::RieszVector;
use crate::system::{CandidateSystem, CepsSystem, KoopmanMap};

const MAX_CYCLE_WEIGHT: u32 = 9;

/// Decorrelates per-item seeds derived from one campaign seed (splitmix64).
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A valid system on `n` atoms whose partition has exactly `blocks` blocks.
pub fn generate_random_ceps(n: usize, blocks: usize, seed: u64) -> Result<CepsSystem> {
    if n == 0 || blocks == 0 || blocks > n {
        return Err(Error::Infeasible(format!("need 1 <= blocks <= n, got n = {n}, blocks = {blocks}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut atoms: Vec<usize> = (0..n).collect();
    atoms.shuffle(&mut rng);
    let mut partition: Vec<Vec<usize>> = atoms[..blocks].iter().map(|&a| vec![a]).collect();
    for &a in &atoms[blocks..] {
        partition[rng.random_range(0..blocks)].push(a);
    }
    for block in &mut partition {
        block.sort_unstable();
    }
    partition.sort();

    let single_cycles = rng.random_bool(0.5);
    let mut sigma = vec![0; n];
    for block in &partition {
        let mut order = block.clone();
        order.shuffle(&mut rng);
        if single_cycles {
            for (k, &a) in order.iter().enumerate() {
                sigma[a] = order[(k + 1) % order.len()];
            }
        } else {
            for (&a, &b) in block.iter().zip(&order) {
                sigma[a] = b;
            }
        }
    }

    let cycles = orbit::cycles(&sigma).expect("blockwise permutation");
    let mut raw = vec![0u32; n];
    for cycle in &cycles {
        let w = rng.random_range(1..=MAX_CYCLE_WEIGHT);
        for &i in cycle {
            raw[i] = w;
        }
    }
    let total: u32 = raw.iter().sum();
    let weights = raw.iter().map(|&w| Rational::new(BigInt::from(w), BigInt::from(total))).collect();

    CepsSystem::new(CondExpectation::new(weights, partition)?, KoopmanMap::new(sigma)?)
}

/// Draws `n` in `1..=max_atoms` and a block count in `1..=min(max_blocks, n)`,
/// then generates the system.
pub fn sample_ceps(seed: u64, max_atoms: usize, max_blocks: usize) -> Result<CepsSystem> {
    if max_atoms == 0 || max_blocks == 0 {
        return Err(Error::Infeasible("max_atoms and max_blocks must be positive".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=max_atoms);
    let blocks = rng.random_range(1..=max_blocks.min(n));
    generate_random_ceps(n, blocks, rng.random())
}

/// A vector with entries `a/b`, `|a| <= 6`, `1 <= b <= 4`.
pub fn random_vector(n: usize, seed: u64) -> RieszVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..n)
        .map(|_| Rational::new(BigInt::from(rng.random_range(-6i64..=6)), BigInt::from(rng.random_range(1i64..=4))))
        .collect();
    RieszVector::new(entries).expect("n >= 1")
}

/// Breaks the system by letting two atoms from different blocks trade images.
/// `None` when there is only one block.
pub fn block_crossing_perturbation(sys: &CepsSystem) -> Option<CandidateSystem> {
    let t = sys.expectation();
    if t.blocks().len() < 2 {
        return None;
    }
    let a = t.blocks()[0][0];
    let b = t.blocks()[1][0];
    let mut sigma = sys.koopman().sigma().to_vec();
    sigma.swap(a, b);
    let koopman = KoopmanMap::new(sigma).expect("swap keeps entries in range");
    Some(CandidateSystem::new(t.clone(), koopman).expect("same atoms"))
}

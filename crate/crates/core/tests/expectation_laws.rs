// SPDX-License-Identifier: Apache-2.0

use ergolab::generate::sample_ceps;
use ergolab::numeric::rat;
use ergolab::{CondExpectation, RieszVector};
use num_traits::Signed;
use proptest::prelude::*;

fn expectation() -> impl Strategy<Value = CondExpectation> {
    any::<u64>().prop_map(|seed| sample_ceps(seed, 9, 4).unwrap().expectation().clone())
}

fn with_vectors(count: usize, nonneg: bool) -> impl Strategy<Value = (CondExpectation, Vec<RieszVector>)> {
    expectation().prop_flat_map(move |t| {
        let n = t.atoms();
        let low = if nonneg { 0 } else { -9 };
        let v = prop::collection::vec((low..=9i64, 1i64..=4), n)
            .prop_map(|p| RieszVector::new(p.into_iter().map(|(a, b)| rat(a, b)).collect()).unwrap());
        (Just(t), prop::collection::vec(v, count))
    })
}

proptest! {
    #[test]
    fn idempotent_and_unit_preserving(t in expectation()) {
        let n = t.atoms();
        for i in 0..n {
            let te = t.apply(&RieszVector::basis(n, i)).unwrap();
            prop_assert_eq!(t.apply(&te).unwrap(), te.clone());
            prop_assert!(t.range_contains(&te));
        }
        prop_assert_eq!(t.apply(&RieszVector::unit(n)).unwrap(), RieszVector::unit(n));
        prop_assert!(t.verify_axioms().all_passed());
    }

    #[test]
    fn strictly_positive((t, vs) in with_vectors(1, true)) {
        let f = &vs[0];
        let tf = t.apply(f).unwrap();
        prop_assert!(tf.is_nonnegative());
        prop_assert_eq!(tf.is_zero(), f.is_zero());
    }

    #[test]
    fn averaging_property((t, vs) in with_vectors(2, false)) {
        let f = &vs[0];
        for g in t.block_indicators() {
            let g = g.to_vector();
            prop_assert_eq!(t.apply(&g.e_multiply(f).unwrap()).unwrap(), g.e_multiply(&t.apply(f).unwrap()).unwrap());
        }
        // any block-constant multiplier
        let g = t.apply(&vs[1]).unwrap();
        prop_assert_eq!(t.apply(&g.e_multiply(f).unwrap()).unwrap(), g.e_multiply(&t.apply(f).unwrap()).unwrap());
    }

    #[test]
    fn monotone((t, vs) in with_vectors(2, false)) {
        let (f, g) = (&vs[0], vs[0].sup(&vs[1]).unwrap());
        prop_assert!(t.apply(f).unwrap().le(&t.apply(&g).unwrap()).unwrap());
    }

    #[test]
    fn norms((t, vs) in with_vectors(1, false)) {
        let x = &vs[0];
        prop_assert_eq!(t.norm_q_power(x, 1).unwrap(), t.apply(&x.abs()).unwrap());
        let sup = t.norm_inf(x).unwrap();
        prop_assert!(t.range_contains(&sup));
        prop_assert!(x.abs().le(&sup).unwrap());
        // lowering any block value below the block maximum breaks domination
        for block in t.blocks() {
            let max = block.iter().map(|&i| x.get(i).abs()).max().unwrap();
            prop_assert_eq!(sup.get(block[0]), &max);
            prop_assert!(block.iter().any(|&i| x.get(i).abs() == max));
        }
    }
}

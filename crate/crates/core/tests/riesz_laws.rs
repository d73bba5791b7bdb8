// SPDX-License-Identifier: Apache-2.0

use ergolab::numeric::{int, rat};
use ergolab::{band_projection_component, freudenthal_approx, is_component, Component, Rational, RieszVector};
use proptest::prelude::*;

fn vector(n: usize) -> impl Strategy<Value = RieszVector> {
    prop::collection::vec((-12i64..=12, 1i64..=5), n)
        .prop_map(|pairs| RieszVector::new(pairs.into_iter().map(|(a, b)| rat(a, b)).collect()).unwrap())
}

fn vectors(count: usize) -> impl Strategy<Value = Vec<RieszVector>> {
    (1usize..=7).prop_flat_map(move |n| prop::collection::vec(vector(n), count))
}

fn component(n: usize) -> impl Strategy<Value = Component> {
    prop::collection::vec(any::<bool>(), n).prop_map(|bits| Component::new(bits).unwrap())
}

proptest! {
    #[test]
    fn positive_and_negative_parts(vs in vectors(1)) {
        let f = &vs[0];
        prop_assert_eq!(&f.pos_part() - &f.neg_part(), f.clone());
        prop_assert_eq!(&f.pos_part() + &f.neg_part(), f.abs());
        prop_assert!(f.pos_part().inf(&f.neg_part()).unwrap().is_zero());
    }

    #[test]
    fn lattice_laws(vs in vectors(3)) {
        let (f, g, h) = (&vs[0], &vs[1], &vs[2]);
        prop_assert_eq!(f.sup(g).unwrap(), g.sup(f).unwrap());
        prop_assert_eq!(f.sup(&g.sup(h).unwrap()).unwrap(), f.sup(g).unwrap().sup(h).unwrap());
        // absorption
        prop_assert_eq!(f.sup(&f.inf(g).unwrap()).unwrap(), f.clone());
        // distributive lattice
        prop_assert_eq!(
            f.inf(&g.sup(h).unwrap()).unwrap(),
            f.inf(g).unwrap().sup(&f.inf(h).unwrap()).unwrap()
        );
        // f ∨ g + f ∧ g = f + g
        prop_assert_eq!(&f.sup(g).unwrap() + &f.inf(g).unwrap(), f + g);
        // translation invariance of the order
        prop_assert_eq!(&f.sup(g).unwrap() + h, (f + h).sup(&(g + h)).unwrap());
    }

    #[test]
    fn component_iff_disjoint_from_complement(entries in prop::collection::vec(prop::sample::select(vec![rat(0, 1), rat(1, 1), rat(1, 2), rat(-1, 1), rat(2, 1)]), 1..6)) {
        let p = RieszVector::new(entries).unwrap();
        let e = RieszVector::unit(p.len());
        let disjoint = p.inf(&(&e - &p)).unwrap().is_zero();
        prop_assert_eq!(is_component(&p), disjoint);
        prop_assert_eq!(Component::from_vector(&p).is_ok(), disjoint);
    }

    #[test]
    fn band_projection_is_strict_sublevel_set(vs in vectors(1), num in -30i64..30, den in 1i64..4) {
        let f = &vs[0];
        let alpha = rat(num, den);
        let p = band_projection_component(f, &alpha);
        for i in 0..f.len() {
            prop_assert_eq!(p.contains(i), f.get(i) < &alpha);
        }
    }

    #[test]
    fn band_projection_of_e_minus_f_is_sup_of_truncations(vs in vectors(1), num in -30i64..30) {
        let f = &vs[0];
        let alpha = int(num);
        let n = f.len();
        let e = RieszVector::unit(n);
        let gap = (&e.scale(&alpha) - f).pos_part();
        // the smallest positive gap entry is at least 1/5, so m = 5 saturates e ∧ m·gap
        let mut sup = RieszVector::zeros(n);
        for m in 1..=5 {
            sup = sup.sup(&e.inf(&gap.scale(&int(m))).unwrap()).unwrap();
        }
        prop_assert_eq!(band_projection_component(f, &alpha).to_vector(), sup);
    }

    #[test]
    fn freudenthal_error_bound_and_monotonicity(vs in vectors(1), k in 1u32..8) {
        let f = &vs[0];
        let s = freudenthal_approx(f, k).unwrap();
        let comps = s.components();
        for i in 0..comps.len() {
            for j in i + 1..comps.len() {
                prop_assert!(comps[i].is_disjoint(&comps[j]));
            }
        }
        let approx = s.evaluate();
        let err = f - &approx;
        prop_assert!(err.is_nonnegative());
        let range = f.max_entry() - f.min_entry();
        let width = range / Rational::from_integer((1u64 << k).into());
        prop_assert!(err.le(&RieszVector::unit(f.len()).scale(&width)).unwrap());

        let finer = freudenthal_approx(f, k + 1).unwrap().evaluate();
        prop_assert!(approx.le(&finer).unwrap());

        let nonneg = f.abs();
        let max = nonneg.max_entry().clone();
        let err = &nonneg - &freudenthal_approx(&nonneg, k).unwrap().evaluate();
        prop_assert!(err.le(&RieszVector::unit(f.len()).scale(&(max / Rational::from_integer((1u64 << k).into())))).unwrap());
    }

    #[test]
    fn e_multiply_laws(vs in vectors(3)) {
        let (f, g, h) = (&vs[0], &vs[1], &vs[2]);
        prop_assert_eq!(f.e_multiply(g).unwrap(), g.e_multiply(f).unwrap());
        prop_assert_eq!(
            f.e_multiply(&g.e_multiply(h).unwrap()).unwrap(),
            f.e_multiply(g).unwrap().e_multiply(h).unwrap()
        );
        prop_assert_eq!(f.e_multiply(&(g + h)).unwrap(), &f.e_multiply(g).unwrap() + &f.e_multiply(h).unwrap());
        prop_assert_eq!(f.e_multiply(&RieszVector::unit(f.len())).unwrap(), f.clone());
    }

    #[test]
    fn product_of_components_is_meet((p, q) in (1usize..8).prop_flat_map(|n| (component(n), component(n)))) {
        let product = p.to_vector().e_multiply(&q.to_vector()).unwrap();
        prop_assert!(is_component(&product));
        prop_assert_eq!(product.clone(), p.meet(&q).unwrap().to_vector());
        prop_assert_eq!(product, p.to_vector().inf(&q.to_vector()).unwrap());
    }
}

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use ealab_core::construct::direct_product;
use ealab_core::enumerate::{are_isomorphic, canonical_form, enumerate_all, Filter, DEFAULT_BOUND};
use ealab_core::{dedekind_macneille, EffectAlgebra, EffectAlgebraTable, ElementSet, LatticeTables, Poset};
use proptest::prelude::*;
use proptest::sample::Index;

fn corpus() -> &'static [EffectAlgebraTable] {
    static CORPUS: OnceLock<Vec<EffectAlgebraTable>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        (2..=7)
            .flat_map(|n| enumerate_all(n, Filter::All, DEFAULT_BOUND).unwrap())
            .collect()
    })
}

fn algebra() -> impl Strategy<Value = EffectAlgebra> {
    any::<Index>().prop_map(|i| EffectAlgebra::new(i.get(corpus()).clone()).unwrap())
}

/// Permutation of `0..n` fixing 0.
fn relabeling(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|rest| std::iter::once(0).chain(rest).collect())
}

fn algebra_and_relabeling() -> impl Strategy<Value = (EffectAlgebra, Vec<usize>)> {
    algebra().prop_flat_map(|e| {
        let n = e.size();
        (Just(e), relabeling(n))
    })
}

/// Random poset on up to 7 points: a random subset of the pairs `i < j`,
/// closed transitively.
fn poset() -> impl Strategy<Value = Poset> {
    (1usize..=7).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            let chosen = pairs.into_iter().zip(bits).filter(|(_, b)| *b).map(|(p, _)| p);
            Poset::from_relation(n, chosen).unwrap()
        })
    })
}

/// All subsets `A` with `A = lower(upper(A))`.
fn brute_force_cuts(p: &Poset) -> BTreeSet<Vec<usize>> {
    let n = p.len();
    (0u32..1 << n)
        .filter_map(|mask| {
            let a: Vec<usize> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
            let lu = p.lower_bounds(p.upper_bounds(a.iter().copied()).iter());
            (lu.to_vec() == a).then_some(a)
        })
        .collect()
}

fn brute_force_join(p: &Poset, x: usize, y: usize) -> Option<usize> {
    let ub: Vec<usize> = (0..p.len()).filter(|&z| p.leq(x, z) && p.leq(y, z)).collect();
    ub.iter().copied().find(|&z| ub.iter().all(|&w| p.leq(z, w)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn canonical_form_is_invariant((e, perm) in algebra_and_relabeling()) {
        let t = e.table();
        let relabeled = t.relabel(&perm);
        let c = canonical_form(t);
        prop_assert_eq!(&canonical_form(&relabeled), &c);
        prop_assert_eq!(&canonical_form(&c), &c);
        let f = EffectAlgebra::new(relabeled).unwrap();
        let m = are_isomorphic(&e, &f).expect("relabeling is an isomorphism");
        prop_assert!(m.is_isomorphism(&e, &f));
    }

    #[test]
    fn cancellation_and_complements(e in algebra()) {
        for x in e.elements() {
            for y in e.elements() {
                for z in e.elements() {
                    if let (Some(a), Some(b)) = (e.sum(x, y), e.sum(x, z)) {
                        prop_assert!(a != b || y == z);
                    }
                }
                if e.leq(x, y) {
                    prop_assert!(e.leq(e.complement(y), e.complement(x)));
                }
            }
            prop_assert_eq!(e.complement(e.complement(x)), x);
            prop_assert_eq!(e.sum(x, e.complement(x)), Some(e.one()));
        }
    }

    #[test]
    fn orthogonal_sums_ignore_order(e in algebra(), xs in proptest::collection::vec(any::<Index>(), 0..5), seed in any::<u64>()) {
        let xs: Vec<usize> = xs.iter().map(|i| i.index(e.size())).collect();
        let mut ys = xs.clone();
        ys.rotate_left((seed as usize) % xs.len().max(1));
        ys.reverse();
        prop_assert_eq!(e.orthogonal_sum(&xs), e.orthogonal_sum(&ys));
    }

    #[test]
    fn product_factors_commute(a in algebra(), b in algebra()) {
        prop_assume!(a.size() * b.size() <= 36);
        let ab = EffectAlgebra::new(direct_product(&[a.table().clone(), b.table().clone()]).unwrap()).unwrap();
        let ba = EffectAlgebra::new(direct_product(&[b.table().clone(), a.table().clone()]).unwrap()).unwrap();
        prop_assert!(are_isomorphic(&ab, &ba).is_some());
    }

    #[test]
    fn lattice_tables_match_brute_force(p in poset()) {
        let l = LatticeTables::from_poset(&p);
        let n = p.len();
        let joins_exist = (0..n).all(|x| (0..n).all(|y| brute_force_join(&p, x, y).is_some()));
        let dual = Poset::from_fn(n, |x, y| p.leq(y, x)).unwrap();
        let meets_exist = (0..n).all(|x| (0..n).all(|y| brute_force_join(&dual, x, y).is_some()));
        prop_assert_eq!(l.is_lattice(), joins_exist && meets_exist);
        if l.is_lattice() {
            for x in 0..n {
                for y in 0..n {
                    prop_assert_eq!(Some(l.join(x, y)), brute_force_join(&p, x, y));
                    prop_assert_eq!(Some(l.meet(x, y)), brute_force_join(&dual, x, y));
                }
            }
            if l.is_distributive().unwrap() {
                prop_assert!(l.is_modular(&p).unwrap());
            }
        }
    }

    #[test]
    fn completion_matches_cut_oracle(p in poset()) {
        let r = dedekind_macneille(&p);
        let ours: BTreeSet<Vec<usize>> = r.cuts.iter().map(ElementSet::to_vec).collect();
        prop_assert_eq!(&ours, &brute_force_cuts(&p));
        prop_assert_eq!(r.added_count, r.cuts.len() - p.len());
        prop_assert!(p.is_order_embedding(&r.completed, &r.embedding));
        prop_assert!(LatticeTables::from_poset(&r.completed).is_lattice());
        let again = dedekind_macneille(&r.completed);
        prop_assert_eq!(again.added_count, 0);
    }
}

mod common;

use common::permutations;
use ealab_core::enumerate::{are_isomorphic, canonical_form, enumerate_all, Filter, DEFAULT_BOUND};
use ealab_core::{validate_axioms, EffectAlgebra};

/// Partial table as `Option<usize>` cells, checked directly against the four
/// axioms with plain loops.
fn naive_is_ea(n: usize, one: usize, s: &[Option<usize>]) -> bool {
    let sum = |x: usize, y: usize| s[x * n + y];
    for x in 0..n {
        for y in 0..n {
            if sum(x, y) != sum(y, x) {
                return false;
            }
            for z in 0..n {
                let l = sum(x, y).and_then(|xy| sum(xy, z));
                let r = sum(y, z).and_then(|yz| sum(x, yz));
                if l != r {
                    return false;
                }
            }
        }
        if (0..n).filter(|&y| sum(x, y) == Some(one)).count() != 1 {
            return false;
        }
        if sum(one, x).is_some() && x != 0 {
            return false;
        }
    }
    true
}

fn naive_iso(n: usize, a: &(usize, Vec<Option<usize>>), b: &(usize, Vec<Option<usize>>)) -> bool {
    permutations(n - 1).into_iter().any(|p| {
        let phi: Vec<usize> = std::iter::once(0).chain(p.into_iter().map(|v| v + 1)).collect();
        phi[a.0] == b.0 && (0..n).all(|x| (0..n).all(|y| a.1[x * n + y].map(|z| phi[z]) == b.1[phi[x] * n + phi[y]]))
    })
}

/// Counts classes by brute force: zero row fixed, unit fixed at `n - 1`,
/// every other unordered cell ranges over "undefined" and all elements.
fn naive_count(n: usize) -> usize {
    let one = n - 1;
    let cells: Vec<(usize, usize)> = (1..one).flat_map(|x| (x..one).map(move |y| (x, y))).collect();
    let choices = n + 1;
    let total = choices.pow(cells.len() as u32);
    let mut classes: Vec<(usize, Vec<Option<usize>>)> = Vec::new();
    for code in 0..total {
        let mut s = vec![None; n * n];
        for x in 0..n {
            s[x] = Some(x);
            s[x * n] = Some(x);
        }
        let mut c = code;
        for &(x, y) in &cells {
            let v = c % choices;
            c /= choices;
            let v = (v < n).then_some(v);
            s[x * n + y] = v;
            s[y * n + x] = v;
        }
        if !naive_is_ea(n, one, &s) {
            continue;
        }
        let cand = (one, s);
        if !classes.iter().any(|k| naive_iso(n, k, &cand)) {
            classes.push(cand);
        }
    }
    classes.len()
}

#[test]
fn counts_match_naive_oracle() {
    for n in 2..=5 {
        let found = enumerate_all(n, Filter::All, DEFAULT_BOUND).unwrap();
        assert_eq!(found.len(), naive_count(n), "size {n}");
    }
}

#[test]
fn small_counts_are_known() {
    let counts: Vec<usize> = (2..=5)
        .map(|n| enumerate_all(n, Filter::All, DEFAULT_BOUND).unwrap().len())
        .collect();
    assert_eq!(counts, vec![1, 1, 3, 4]);
}

#[test]
fn corpus_members_are_valid_canonical_and_distinct() {
    for n in 2..=7 {
        let all = enumerate_all(n, Filter::All, DEFAULT_BOUND).unwrap();
        for (i, t) in all.iter().enumerate() {
            assert!(validate_axioms(t).passed());
            assert_eq!(&canonical_form(t), t);
            let e = EffectAlgebra::new(t.clone()).unwrap();
            for u in &all[i + 1..] {
                assert!(are_isomorphic(&e, &EffectAlgebra::new(u.clone()).unwrap()).is_none());
            }
        }
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(sorted, all);
    }
}

#[test]
fn filters_are_nested() {
    for n in 2..=8 {
        let count = |f| enumerate_all(n, f, DEFAULT_BOUND).unwrap().len();
        let (all, lat, mv, modular) = (
            count(Filter::All),
            count(Filter::Lattice),
            count(Filter::Mv),
            count(Filter::Modular),
        );
        assert!(all >= lat && lat >= mv && lat >= modular, "size {n}");
    }
}

#[test]
fn bound_is_configurable() {
    assert!(enumerate_all(9, Filter::All, DEFAULT_BOUND).is_err());
    assert!(enumerate_all(1, Filter::All, DEFAULT_BOUND).is_err());
}

#[test]
fn output_is_deterministic() {
    assert_eq!(
        enumerate_all(7, Filter::All, DEFAULT_BOUND).unwrap(),
        enumerate_all(7, Filter::All, DEFAULT_BOUND).unwrap()
    );
}

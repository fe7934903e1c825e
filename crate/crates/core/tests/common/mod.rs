#![allow(dead_code)]

use ealab_core::construct::{chain, direct_product, horizontal_sum};
use ealab_core::{EffectAlgebraTable, Poset};

pub fn c(k: usize) -> EffectAlgebraTable {
    chain(k).unwrap()
}

/// `C3 × (C3 ⊞ C3)`: 12 elements, two blocks.
pub fn example_43() -> EffectAlgebraTable {
    let h = horizontal_sum(&[c(3), c(3)]).unwrap();
    direct_product(&[c(3), h]).unwrap()
}

/// Boolean algebra on the subsets of `k` points, with its orthocomplement.
pub fn boolean(k: usize) -> (Poset, Vec<usize>) {
    let n = 1 << k;
    let p = Poset::from_fn(n, |a, b| a & !b == 0).unwrap();
    (p, (0..n).map(|a| (n - 1) ^ a).collect())
}

/// `0 < a, a', b, b' < 1`.
pub fn mo2() -> (Poset, Vec<usize>) {
    let p = Poset::from_relation(6, (1..5).flat_map(|x| [(0, x), (x, 5)])).unwrap();
    (p, vec![5, 2, 1, 4, 3, 0])
}

/// The hexagon `0 < a < b < 1`, `0 < b' < a' < 1`.
pub fn o6() -> (Poset, Vec<usize>) {
    let p = Poset::from_relation(6, [(0, 1), (1, 2), (2, 5), (0, 3), (3, 4), (4, 5)]).unwrap();
    (p, vec![5, 4, 3, 2, 1, 0])
}

/// Two incomparable elements with two minimal upper bounds, between a bottom
/// and a top.
pub fn bowtie() -> Poset {
    Poset::from_relation(6, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 5), (4, 5)]).unwrap()
}

/// Every permutation of `0..n`.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

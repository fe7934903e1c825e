//! Dedekind–MacNeille completion of a finite poset.
//!
//! A cut is a set `A` with `A = L(U(A))`. For finite posets the cuts are
//! exactly the intersections of families of principal down-sets, the empty
//! family giving the whole poset, so they are generated by closing
//! `{P}` under intersection with each `↓x`.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec::Vec;

use crate::bitset::ElementSet;
use crate::poset::Poset;
use crate::Element;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionResult {
    /// Cuts ordered by inclusion.
    pub completed: Poset,
    /// Lower part of each completed element, as a subset of the input.
    pub cuts: Vec<ElementSet>,
    /// `x ↦ ↓x`.
    pub embedding: Vec<Element>,
    pub added_count: usize,
}

pub fn dedekind_macneille(p: &Poset) -> CompletionResult {
    let n = p.len();
    let mut seen: BTreeSet<ElementSet> = BTreeSet::new();
    let mut queue = VecDeque::new();
    let whole = ElementSet::full(n);
    seen.insert(whole.clone());
    queue.push_back(whole);
    while let Some(a) = queue.pop_front() {
        for x in 0..n {
            let b = a.intersection(p.down_set(x));
            if seen.insert(b.clone()) {
                queue.push_back(b);
            }
        }
    }

    // Smaller cuts first, so the index order is a linear extension.
    let mut cuts: Vec<ElementSet> = seen.into_iter().collect();
    cuts.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let embedding: Vec<Element> = (0..n)
        .map(|x| {
            cuts.iter()
                .position(|c| c == p.down_set(x))
                .expect("principal down-sets are cuts")
        })
        .collect();
    let completed =
        Poset::from_fn(cuts.len(), |i, j| cuts[i].is_subset(&cuts[j])).expect("inclusion is a partial order");
    let added_count = cuts.len() - n;
    CompletionResult {
        completed,
        cuts,
        embedding,
        added_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn antichain_gains_bounds() {
        let p = Poset::from_relation(2, []).unwrap();
        let c = dedekind_macneille(&p);
        assert_eq!(c.added_count, 2);
        assert_eq!(c.completed.bottom(), Some(0));
        assert_eq!(c.completed.top(), Some(3));
        assert!(p.is_order_embedding(&c.completed, &c.embedding));
    }

    #[test]
    fn chain_is_fixed() {
        let p = Poset::from_fn(4, |x, y| x <= y).unwrap();
        let c = dedekind_macneille(&p);
        assert_eq!(c.added_count, 0);
        assert_eq!(c.embedding, vec![0, 1, 2, 3]);
    }
}

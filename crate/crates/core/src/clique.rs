//! Maximal cliques by Bron–Kerbosch with pivoting.

use alloc::vec::Vec;

use crate::bitset::ElementSet;

/// All maximal cliques of the graph with neighbourhoods `adj` (self loops are
/// ignored), sorted by their element lists.
pub(crate) fn maximal_cliques(adj: &[ElementSet]) -> Vec<ElementSet> {
    let n = adj.len();
    let nbrs: Vec<ElementSet> = adj
        .iter()
        .enumerate()
        .map(|(v, s)| {
            let mut s = s.clone();
            s.remove(v);
            s
        })
        .collect();
    let mut out = Vec::new();
    expand(
        &nbrs,
        ElementSet::new(n),
        ElementSet::full(n),
        ElementSet::new(n),
        &mut out,
    );
    out.sort_by_key(|c| c.to_vec());
    out
}

fn expand(nbrs: &[ElementSet], r: ElementSet, mut p: ElementSet, mut x: ElementSet, out: &mut Vec<ElementSet>) {
    if p.is_empty() {
        if x.is_empty() {
            out.push(r);
        }
        return;
    }
    // pivot: vertex of P ∪ X with the most neighbours in P
    let pivot = p
        .union(&x)
        .iter()
        .max_by_key(|&u| (nbrs[u].intersection(&p).len(), core::cmp::Reverse(u)))
        .expect("P is nonempty");
    for v in p.difference(&nbrs[pivot]).to_vec() {
        let mut next_r = r.clone();
        next_r.insert(v);
        expand(nbrs, next_r, p.intersection(&nbrs[v]), x.intersection(&nbrs[v]), out);
        p.remove(v);
        x.insert(v);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Vec<ElementSet> {
        let mut adj = vec![ElementSet::new(n); n];
        for &(a, b) in edges {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj
    }

    #[test]
    fn small_graph() {
        let g = graph(5, &[(0, 1), (0, 2), (1, 2), (2, 3)]);
        let cliques: Vec<_> = maximal_cliques(&g).iter().map(|c| c.to_vec()).collect();
        assert_eq!(cliques, vec![vec![0, 1, 2], vec![2, 3], vec![4]]);
    }

    #[test]
    fn matches_brute_force_on_all_graphs_of_five_vertices() {
        let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
        for mask in 0u32..(1 << pairs.len()) {
            let edges: Vec<_> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let g = graph(5, &edges);
            let is_clique = |s: u32| {
                (0..5).all(|a| (0..5).all(|b| a == b || s & (1 << a) == 0 || s & (1 << b) == 0 || g[a].contains(b)))
            };
            let mut brute: Vec<Vec<usize>> = (1u32..32)
                .filter(|&s| is_clique(s) && (0..5).all(|v| s & (1 << v) != 0 || !is_clique(s | (1 << v))))
                .map(|s| (0..5).filter(|v| s & (1 << v) != 0).collect())
                .collect();
            brute.sort();
            let fast: Vec<Vec<usize>> = maximal_cliques(&g).iter().map(|c| c.to_vec()).collect();
            assert_eq!(fast, brute, "mask {mask}");
        }
    }
}

//! Isomorphism testing, canonical forms and exhaustive generation of small
//! effect algebras.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::order::{EffectAlgebra, LatticeEffectAlgebra};
use crate::states::{find_state, StateMode};
use crate::table::EffectAlgebraTable;
use crate::{Element, ZERO};

/// Largest size `enumerate_all` accepts unless told otherwise.
pub const DEFAULT_BOUND: usize = 8;

/// A bijection between the elements of two algebras.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub mapping: Vec<Element>,
}

impl Morphism {
    /// Checks that the mapping is a bijection sending 1 to 1 with
    /// `a <= b'` iff `φ(a) <= φ(b)'`, and `φ(a + b) = φ(a) + φ(b)` then.
    pub fn is_isomorphism(&self, e: &EffectAlgebra, f: &EffectAlgebra) -> bool {
        let n = e.size();
        if f.size() != n || self.mapping.len() != n {
            return false;
        }
        let mut hit = vec![false; n];
        for &y in &self.mapping {
            if y >= n || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        let phi = &self.mapping;
        if phi[e.one()] != f.one() {
            return false;
        }
        e.elements().all(|a| {
            e.elements().all(|b| {
                let orth_e = e.leq(a, e.complement(b));
                let orth_f = f.leq(phi[a], f.complement(phi[b]));
                orth_e == orth_f && (!orth_e || e.sum(a, b).map(|s| phi[s]) == f.sum(phi[a], phi[b]))
            })
        })
    }
}

/// Stable colouring of the elements by iterated refinement of label-free
/// invariants. Colours are numbered by sorted signature, so two isomorphic
/// tables get matching colour sequences.
fn refine(t: &EffectAlgebraTable, mut colors: Vec<usize>) -> Vec<usize> {
    let n = t.size();
    let mut classes = distinct(&colors);
    loop {
        let sigs: Vec<(usize, Vec<(usize, usize)>)> = (0..n)
            .map(|x| {
                let mut row: Vec<(usize, usize)> = (0..n)
                    .map(|y| (colors[y], t.sum(x, y).map_or(usize::MAX, |z| colors[z])))
                    .collect();
                row.sort_unstable();
                (colors[x], row)
            })
            .collect();
        colors = renumber(&sigs);
        let now = distinct(&colors);
        if now == classes {
            return colors;
        }
        classes = now;
    }
}

fn distinct(colors: &[usize]) -> usize {
    colors.iter().collect::<BTreeSet<_>>().len()
}

fn renumber<T: Ord + Clone>(sigs: &[T]) -> Vec<usize> {
    let sorted: Vec<T> = sigs.iter().cloned().collect::<BTreeSet<T>>().into_iter().collect();
    sigs.iter()
        .map(|s| sorted.binary_search(s).expect("signature present"))
        .collect()
}

fn initial_colors(t: &EffectAlgebraTable) -> Vec<usize> {
    let sigs: Vec<(bool, bool, usize, usize)> = t
        .elements()
        .map(|x| {
            let ord = t.ord_of(x).unwrap_or(0);
            let degree = t.elements().filter(|&y| t.sum(x, y).is_some()).count();
            (x != ZERO, x == t.one(), ord, degree)
        })
        .collect();
    renumber(&sigs)
}

/// Canonical representative of the isomorphism class of `t`: the smallest
/// table (by unit, then row-major cells) over all relabelings reachable by
/// individualization and refinement of the invariant colouring. Zero stays 0.
pub fn canonical_form(t: &EffectAlgebraTable) -> EffectAlgebraTable {
    let colors = refine(t, initial_colors(t));
    let mut best: Option<EffectAlgebraTable> = None;
    search_canonical(t, colors, &mut best);
    best.expect("at least one leaf")
}

fn search_canonical(t: &EffectAlgebraTable, colors: Vec<usize>, best: &mut Option<EffectAlgebraTable>) {
    let n = t.size();
    let mut counts = vec![0usize; n];
    for &c in &colors {
        counts[c] += 1;
    }
    let Some(cell) = (0..n).find(|&c| counts[c] > 1) else {
        // discrete: colour is the new label
        let candidate = t.relabel(&colors);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            *best = Some(candidate);
        }
        return;
    };
    for v in (0..n).filter(|&x| colors[x] == cell) {
        let split: Vec<(usize, bool)> = colors.iter().enumerate().map(|(x, &c)| (c, x != v)).collect();
        search_canonical(t, refine(t, renumber(&split)), best);
    }
}

/// Looks for an isomorphism `e -> f` by backtracking over colour-compatible
/// assignments; the result is checked against the definition before it is
/// returned.
pub fn are_isomorphic(e: &EffectAlgebra, f: &EffectAlgebra) -> Option<Morphism> {
    let (te, tf) = (e.table(), f.table());
    let n = te.size();
    if tf.size() != n || e.atoms().len() != f.atoms().len() {
        return None;
    }
    let mut ords_e: Vec<usize> = (1..n).map(|x| te.ord_of(x).unwrap_or(0)).collect();
    let mut ords_f: Vec<usize> = (1..n).map(|x| tf.ord_of(x).unwrap_or(0)).collect();
    ords_e.sort_unstable();
    ords_f.sort_unstable();
    if ords_e != ords_f {
        return None;
    }
    let ce = refine(te, initial_colors(te));
    let cf = refine(tf, initial_colors(tf));
    let mut se = ce.clone();
    let mut sf = cf.clone();
    se.sort_unstable();
    sf.sort_unstable();
    if se != sf {
        return None;
    }
    let mut mapping = vec![usize::MAX; n];
    let mut used = vec![false; n];
    // assign rarer colours first
    let mut order: Vec<Element> = (0..n).collect();
    order.sort_by_key(|&x| (ce.iter().filter(|&&c| c == ce[x]).count(), x));
    if backtrack_iso(te, tf, &ce, &cf, &order, 0, &mut mapping, &mut used) {
        let m = Morphism { mapping };
        return m.is_isomorphism(e, f).then_some(m);
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn backtrack_iso(
    te: &EffectAlgebraTable,
    tf: &EffectAlgebraTable,
    ce: &[usize],
    cf: &[usize],
    order: &[Element],
    depth: usize,
    mapping: &mut Vec<Element>,
    used: &mut Vec<bool>,
) -> bool {
    let Some(&x) = order.get(depth) else {
        return true;
    };
    for y in 0..tf.size() {
        if used[y] || cf[y] != ce[x] {
            continue;
        }
        mapping[x] = y;
        used[y] = true;
        if consistent(te, tf, mapping, order, depth) && backtrack_iso(te, tf, ce, cf, order, depth + 1, mapping, used) {
            return true;
        }
        used[y] = false;
        mapping[x] = usize::MAX;
    }
    false
}

fn consistent(
    te: &EffectAlgebraTable,
    tf: &EffectAlgebraTable,
    mapping: &[Element],
    order: &[Element],
    depth: usize,
) -> bool {
    let x = order[depth];
    order[..=depth].iter().all(|&a| {
        let (s, t) = (te.sum(x, a), tf.sum(mapping[x], mapping[a]));
        match (s, t) {
            (None, None) => true,
            (Some(z), Some(w)) => mapping[z] == usize::MAX || mapping[z] == w,
            _ => false,
        }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Filter {
    All,
    Lattice,
    Mv,
    Modular,
}

impl Filter {
    pub fn name(self) -> &'static str {
        match self {
            Filter::All => "all",
            Filter::Lattice => "lattice",
            Filter::Mv => "mv",
            Filter::Modular => "modular",
        }
    }

    pub fn accepts(self, t: &EffectAlgebraTable) -> bool {
        if self == Filter::All {
            return true;
        }
        let Ok(lea) = LatticeEffectAlgebra::new(t.clone()) else {
            return false;
        };
        match self {
            Filter::All | Filter::Lattice => true,
            Filter::Mv => lea.is_mv(),
            Filter::Modular => lea.lattice().is_modular(lea.poset()).unwrap_or(false),
        }
    }
}

/// Every effect algebra with exactly `n` elements, one canonical table per
/// isomorphism class, sorted.
pub fn enumerate_all(n: usize, filter: Filter, bound: usize) -> Result<Vec<EffectAlgebraTable>> {
    if n > bound {
        return Err(Error::BoundExceeded { size: n, bound });
    }
    if n < 2 {
        return Err(Error::Malformed(format!(
            "an effect algebra has at least two elements, not {n}"
        )));
    }
    let mut classes = BTreeSet::new();
    generate(n, |t| {
        classes.insert(canonical_form(&t));
    });
    let mut out: Vec<EffectAlgebraTable> = classes.into_iter().filter(|t| filter.accepts(t)).collect();
    out.sort();
    Ok(out)
}

const UNKNOWN: u8 = 0;
const UNDEF: u8 = 1;
// any other value v encodes element v - 2

/// Calls `emit` on every valid labelled table of size `n` whose unit is
/// `n - 1` and whose complement map has the normal form: self-complementary
/// elements `1..=s` first, then pairs `(s + 1, s + 2), (s + 3, s + 4), ...`.
/// Every isomorphism class has at least one such labelling.
pub fn generate(n: usize, mut emit: impl FnMut(EffectAlgebraTable)) {
    if n == 2 {
        emit(crate::table::chain(2).expect("two-element chain"));
        return;
    }
    let m = n - 2;
    let one = n - 1;
    for s in (m % 2..=m).step_by(2) {
        let mut comp = vec![0; n];
        comp[0] = one;
        comp[one] = 0;
        for x in 1..=s {
            comp[x] = x;
        }
        for x in (s + 1..=m).step_by(2) {
            comp[x] = x + 1;
            comp[x + 1] = x;
        }
        let mut g = Generator::new(n, comp);
        g.search(0, &mut emit);
    }
}

struct Generator {
    n: usize,
    one: Element,
    cells: Vec<u8>,
    free: Vec<(Element, Element)>,
}

impl Generator {
    fn new(n: usize, comp: Vec<Element>) -> Self {
        let one = n - 1;
        let mut cells = vec![UNDEF; n * n];
        let set = |cells: &mut Vec<u8>, x: usize, y: usize, z: usize| {
            cells[x * n + y] = (z + 2) as u8;
            cells[y * n + x] = (z + 2) as u8;
        };
        for x in 0..n {
            set(&mut cells, ZERO, x, x);
        }
        for x in 1..one {
            set(&mut cells, x, comp[x], one);
        }
        let mut free = Vec::new();
        for x in 1..one {
            for y in x..one {
                if y != comp[x] {
                    cells[x * n + y] = UNKNOWN;
                    cells[y * n + x] = UNKNOWN;
                    free.push((x, y));
                }
            }
        }
        Self { n, one, cells, free }
    }

    #[inline]
    fn get(&self, x: usize, y: usize) -> u8 {
        self.cells[x * self.n + y]
    }

    fn search(&mut self, k: usize, emit: &mut impl FnMut(EffectAlgebraTable)) {
        let Some(&(x, y)) = self.free.get(k) else {
            let cells = self.cells.iter().map(|&c| (c >= 2).then(|| (c - 2) as usize)).collect();
            let t = EffectAlgebraTable::from_cells(self.n, self.one, cells).expect("well formed");
            if crate::validate_axioms(&t).passed() {
                emit(t);
            }
            return;
        };
        let n = self.n;
        let candidates =
            core::iter::once(UNDEF).chain((1..self.one).filter(|&z| z != x && z != y).map(|z| (z + 2) as u8));
        for v in candidates {
            // cancellation: a row holds each value at most once
            if v != UNDEF && (0..n).any(|w| (w != y && self.get(x, w) == v) || (w != x && self.get(y, w) == v)) {
                continue;
            }
            self.cells[x * n + y] = v;
            self.cells[y * n + x] = v;
            if self.associative_so_far() {
                self.search(k + 1, emit);
            }
        }
        self.cells[x * n + y] = UNKNOWN;
        self.cells[y * n + x] = UNKNOWN;
    }

    /// Triples of non-trivial elements whose lookups are all known must
    /// satisfy associativity; triples involving 0 or 1 always do.
    fn associative_so_far(&self) -> bool {
        let mids = 1..self.one;
        for a in mids.clone() {
            for b in mids.clone() {
                let ab = self.get(a, b);
                if ab == UNKNOWN {
                    continue;
                }
                for c in mids.clone() {
                    let lhs = match ab {
                        UNDEF => UNDEF,
                        v => self.get((v - 2) as usize, c),
                    };
                    if lhs == UNKNOWN {
                        continue;
                    }
                    let rhs = match self.get(b, c) {
                        UNKNOWN => continue,
                        UNDEF => UNDEF,
                        v => self.get(a, (v - 2) as usize),
                    };
                    if rhs != UNKNOWN && lhs != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Counts of isomorphism classes of one size.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusRow {
    pub size: usize,
    pub count_total: usize,
    pub count_lattice: usize,
    pub count_mv: usize,
    pub count_modular: usize,
    /// Lattice effect algebras with center `{0, 1}`.
    pub count_irreducible: usize,
    pub count_with_faithful_state: usize,
}

pub fn census_row(n: usize, algebras: &[EffectAlgebraTable]) -> Result<CensusRow> {
    let mut row = CensusRow {
        size: n,
        count_total: algebras.len(),
        ..CensusRow::default()
    };
    for t in algebras {
        let ea = EffectAlgebra::new(t.clone())?;
        if find_state(&ea, StateMode::Faithful)?.is_found() {
            row.count_with_faithful_state += 1;
        }
        let Ok(lea) = ea.into_lattice() else {
            continue;
        };
        row.count_lattice += 1;
        if lea.is_mv() {
            row.count_mv += 1;
        }
        if lea.lattice().is_modular(lea.poset())? {
            row.count_modular += 1;
        }
        if lea.elements().filter(|&z| lea.is_central(z)).count() == 2 {
            row.count_irreducible += 1;
        }
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{chain, direct_product};

    #[test]
    fn tiny_counts() {
        assert_eq!(enumerate_all(2, Filter::All, DEFAULT_BOUND).unwrap().len(), 1);
        assert_eq!(enumerate_all(3, Filter::All, DEFAULT_BOUND).unwrap().len(), 1);
        assert_eq!(
            enumerate_all(9, Filter::All, DEFAULT_BOUND),
            Err(Error::BoundExceeded { size: 9, bound: 8 })
        );
    }

    #[test]
    fn chain_versus_square() {
        let c4 = EffectAlgebra::new(chain(4).unwrap()).unwrap();
        let b = chain(2).unwrap();
        let sq = EffectAlgebra::new(direct_product(&[b.clone(), b]).unwrap()).unwrap();
        assert!(are_isomorphic(&c4, &sq).is_none());
        assert_eq!(are_isomorphic(&c4, &c4).unwrap().mapping, vec![0, 1, 2, 3]);
        assert_ne!(canonical_form(c4.table()), canonical_form(sq.table()));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        let b = chain(2).unwrap();
        let sq = direct_product(&[b.clone(), b]).unwrap();
        let c = canonical_form(&sq);
        assert_eq!(canonical_form(&c), c);
        assert_eq!(canonical_form(&sq.relabel(&[0, 2, 1, 3])), c);
    }
}

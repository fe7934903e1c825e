//! Finite partially ordered sets.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::Element;

/// A finite poset on `0..n`, stored as principal down-sets and up-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    down: Vec<ElementSet>,
    up: Vec<ElementSet>,
}

impl Poset {
    /// Builds a poset from a full `leq` predicate, checking reflexivity,
    /// antisymmetry and transitivity.
    pub fn from_fn(n: usize, leq: impl Fn(Element, Element) -> bool) -> Result<Self> {
        let mut down = vec![ElementSet::new(n); n];
        let mut up = vec![ElementSet::new(n); n];
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    down[y].insert(x);
                    up[x].insert(y);
                }
            }
        }
        let p = Self { down, up };
        p.check()?;
        Ok(p)
    }

    /// Reflexive-transitive closure of the given pairs `(a, b)` meaning `a <= b`.
    pub fn from_relation(n: usize, pairs: impl IntoIterator<Item = (Element, Element)>) -> Result<Self> {
        let mut up: Vec<ElementSet> = (0..n).map(|x| ElementSet::from_elements(n, [x])).collect();
        for (a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::NotAPartialOrder(format!("pair ({a}, {b}) out of range")));
            }
            up[a].insert(b);
        }
        // Warshall on bitsets.
        for k in 0..n {
            let upk = up[k].clone();
            for row in up.iter_mut() {
                if row.contains(k) {
                    *row = row.union(&upk);
                }
            }
        }
        Self::from_fn(n, |x, y| up[x].contains(y))
    }

    fn check(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            if !self.leq(x, x) {
                return Err(Error::NotAPartialOrder(format!("{x} <= {x} fails")));
            }
            for y in 0..n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(Error::NotAPartialOrder(format!("{x} and {y} are mutually below")));
                }
                if self.leq(x, y) && !self.up[y].is_subset(&self.up[x]) {
                    return Err(Error::NotAPartialOrder(format!("not transitive at {x} <= {y}")));
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.down.len()
    }

    pub fn is_empty(&self) -> bool {
        self.down.is_empty()
    }

    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.up[x].contains(y)
    }

    pub fn lt(&self, x: Element, y: Element) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn down_set(&self, x: Element) -> &ElementSet {
        &self.down[x]
    }

    pub fn up_set(&self, x: Element) -> &ElementSet {
        &self.up[x]
    }

    /// Common upper bounds of `xs` (all elements for an empty `xs`).
    pub fn upper_bounds(&self, xs: impl IntoIterator<Item = Element>) -> ElementSet {
        xs.into_iter()
            .fold(ElementSet::full(self.len()), |acc, x| acc.intersection(&self.up[x]))
    }

    pub fn lower_bounds(&self, xs: impl IntoIterator<Item = Element>) -> ElementSet {
        xs.into_iter()
            .fold(ElementSet::full(self.len()), |acc, x| acc.intersection(&self.down[x]))
    }

    /// The least element of `s`, if `s` has one.
    pub fn minimum(&self, s: &ElementSet) -> Option<Element> {
        s.iter().find(|&m| s.is_subset(&self.up[m]))
    }

    pub fn maximum(&self, s: &ElementSet) -> Option<Element> {
        s.iter().find(|&m| s.is_subset(&self.down[m]))
    }

    /// Minimal elements of `s`.
    pub fn minimal(&self, s: &ElementSet) -> Vec<Element> {
        s.iter().filter(|&m| s.iter().all(|o| !self.lt(o, m))).collect()
    }

    /// Covering pairs `(x, y)`: `x < y` with nothing strictly between.
    pub fn covers(&self) -> Vec<(Element, Element)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in self.up[x].iter() {
                if x != y && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn bottom(&self) -> Option<Element> {
        self.minimum(&ElementSet::full(self.len()))
    }

    pub fn top(&self) -> Option<Element> {
        self.maximum(&ElementSet::full(self.len()))
    }

    /// Whether `map` (from `self` into `other`) preserves and reflects order.
    pub fn is_order_embedding(&self, other: &Poset, map: &[Element]) -> bool {
        (0..self.len()).all(|x| (0..self.len()).all(|y| self.leq(x, y) == other.leq(map[x], map[y])))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_and_covers() {
        let p = Poset::from_relation(4, [(0, 1), (1, 2), (0, 3), (3, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (0, 3), (1, 2), (3, 2)]);
        assert_eq!(p.bottom(), Some(0));
        assert_eq!(p.top(), Some(2));
        assert_eq!(p.upper_bounds([1, 3]).to_vec(), vec![2]);
        assert_eq!(p.minimal(&p.upper_bounds([0])), vec![0]);
    }

    #[test]
    fn cycle_rejected() {
        assert!(Poset::from_relation(2, [(0, 1), (1, 0)]).is_err());
    }
}

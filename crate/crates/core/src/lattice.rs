//! Meet/join tables and the classical lattice laws, checked by brute force.

use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::Element;

/// Meet and join tables of a finite poset. When some pair lacks a meet or a
/// join, the tables are empty and `counterexample` names the smallest such pair.
/// A finite lattice is always complete.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeTables {
    size: usize,
    meet: Vec<u32>,
    join: Vec<u32>,
    pub counterexample: Option<(Element, Element)>,
}

impl LatticeTables {
    pub fn from_poset(p: &Poset) -> Self {
        let n = p.len();
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for x in 0..n {
            for y in x..n {
                let j = p.minimum(&p.upper_bounds([x, y]));
                let m = p.maximum(&p.lower_bounds([x, y]));
                match (j, m) {
                    (Some(j), Some(m)) => {
                        join[x * n + y] = j as u32;
                        join[y * n + x] = j as u32;
                        meet[x * n + y] = m as u32;
                        meet[y * n + x] = m as u32;
                    }
                    _ => {
                        return Self {
                            size: n,
                            meet: Vec::new(),
                            join: Vec::new(),
                            counterexample: Some((x, y)),
                        }
                    }
                }
            }
        }
        Self {
            size: n,
            meet,
            join,
            counterexample: None,
        }
    }

    pub fn is_lattice(&self) -> bool {
        self.counterexample.is_none()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Panics when the poset is not a lattice.
    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.meet[x * self.size + y] as Element
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join[x * self.size + y] as Element
    }

    fn require_lattice(&self) -> Result<()> {
        match self.counterexample {
            Some((x, y)) => Err(Error::NotALattice(x, y)),
            None => Ok(()),
        }
    }

    /// Smallest triple with `x <= z` and `x ∨ (y ∧ z) != (x ∨ y) ∧ z`.
    pub fn modularity_witness(&self, p: &Poset) -> Result<Option<[Element; 3]>> {
        self.require_lattice()?;
        let n = self.size;
        for x in 0..n {
            for z in p.up_set(x).iter() {
                for y in 0..n {
                    if self.join(x, self.meet(y, z)) != self.meet(self.join(x, y), z) {
                        return Ok(Some([x, y, z]));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_modular(&self, p: &Poset) -> Result<bool> {
        Ok(self.modularity_witness(p)?.is_none())
    }

    /// Smallest triple violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)` within `within`.
    pub fn distributivity_witness(&self, within: &ElementSet) -> Result<Option<[Element; 3]>> {
        self.require_lattice()?;
        for x in within.iter() {
            for y in within.iter() {
                for z in within.iter() {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Ok(Some([x, y, z]));
                    }
                }
            }
        }
        Ok(None)
    }

    pub fn is_distributive(&self) -> Result<bool> {
        Ok(self.distributivity_witness(&ElementSet::full(self.size))?.is_none())
    }

    /// Whether `subset`, which must be closed under meet, join and
    /// `complement`, is a Boolean algebra: distributive with `x ∧ x' = bottom`
    /// and `x ∨ x' = top`.
    pub fn is_boolean_subalgebra(&self, p: &Poset, complement: &[Element], subset: &ElementSet) -> Result<bool> {
        self.require_lattice()?;
        for x in subset.iter() {
            if !subset.contains(complement[x]) {
                return Err(Error::SubsetNotClosed(x));
            }
            for y in subset.iter() {
                if !subset.contains(self.meet(x, y)) || !subset.contains(self.join(x, y)) {
                    return Err(Error::SubsetNotClosed(x));
                }
            }
        }
        let (Some(bottom), Some(top)) = (p.bottom(), p.top()) else {
            return Ok(false);
        };
        let complemented = subset
            .iter()
            .all(|x| self.meet(x, complement[x]) == bottom && self.join(x, complement[x]) == top);
        Ok(complemented && self.distributivity_witness(subset)?.is_none())
    }
}

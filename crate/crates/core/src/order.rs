//! Order, complement and difference derived from the sum table.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::Deref;

use crate::axioms::validate_axioms;
use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::lattice::LatticeTables;
use crate::poset::Poset;
use crate::table::EffectAlgebraTable;
use crate::{Element, ZERO};

const UNDEFINED: u32 = u32::MAX;

/// `x <= y` iff `x + z = y` for some `z`, and then `y - x = z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderStructure {
    poset: Poset,
    complement: Vec<Element>,
    ominus: Vec<u32>,
}

impl OrderStructure {
    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.poset.leq(x, y)
    }

    pub fn complement(&self, x: Element) -> Element {
        self.complement[x]
    }

    /// `y - x`, defined exactly when `x <= y`.
    pub fn ominus(&self, y: Element, x: Element) -> Option<Element> {
        match self.ominus[y * self.complement.len() + x] {
            UNDEFINED => None,
            v => Some(v as Element),
        }
    }
}

/// Derives the order structure of a table that satisfies the axioms.
pub fn derive_order(t: &EffectAlgebraTable) -> Result<OrderStructure> {
    let report = validate_axioms(t);
    if !report.passed() {
        return Err(Error::NotAnEffectAlgebra(report.violations));
    }
    let n = t.size();
    let mut ominus = vec![UNDEFINED; n * n];
    for x in 0..n {
        for z in 0..n {
            if let Some(y) = t.sum(x, z) {
                let cell = &mut ominus[y * n + x];
                if *cell != UNDEFINED {
                    return Err(Error::NotWellDefined {
                        x,
                        z1: *cell as Element,
                        z2: z,
                    });
                }
                *cell = z as u32;
            }
        }
    }
    let poset = Poset::from_fn(n, |x, y| ominus[y * n + x] != UNDEFINED)
        .map_err(|e| Error::InternalInconsistency(format!("derived order: {e}")))?;
    let complement = (0..n)
        .map(|x| {
            (0..n)
                .find(|&y| t.sum(x, y) == Some(t.one()))
                .expect("complement exists after validation")
        })
        .collect();
    Ok(OrderStructure {
        poset,
        complement,
        ominus,
    })
}

/// A table that passed the axioms, together with its order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectAlgebra {
    table: EffectAlgebraTable,
    order: OrderStructure,
}

impl EffectAlgebra {
    pub fn new(table: EffectAlgebraTable) -> Result<Self> {
        let order = derive_order(&table)?;
        Ok(Self { table, order })
    }

    pub fn table(&self) -> &EffectAlgebraTable {
        &self.table
    }

    pub fn order(&self) -> &OrderStructure {
        &self.order
    }

    pub fn poset(&self) -> &Poset {
        self.order.poset()
    }

    pub fn size(&self) -> usize {
        self.table.size()
    }

    pub fn one(&self) -> Element {
        self.table.one()
    }

    pub fn elements(&self) -> core::ops::Range<Element> {
        self.table.elements()
    }

    pub fn sum(&self, x: Element, y: Element) -> Option<Element> {
        self.table.sum(x, y)
    }

    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.order.leq(x, y)
    }

    pub fn complement(&self, x: Element) -> Element {
        self.order.complement(x)
    }

    pub fn ominus(&self, y: Element, x: Element) -> Option<Element> {
        self.order.ominus(y, x)
    }

    pub fn ord_of(&self, x: Element) -> Result<usize> {
        self.table.ord_of(x)
    }

    pub fn orthogonal_sum(&self, xs: &[Element]) -> Option<Element> {
        self.table.orthogonal_sum(xs)
    }

    /// Minimal nonzero elements.
    pub fn atoms(&self) -> Vec<Element> {
        self.atom_set().to_vec()
    }

    pub fn atom_set(&self) -> ElementSet {
        ElementSet::from_elements(
            self.size(),
            (1..self.size()).filter(|&x| self.poset().down_set(x).len() == 2),
        )
    }

    /// Lattice tables of the induced order; `is_lattice` may be false.
    pub fn lattice_tables(&self) -> LatticeTables {
        LatticeTables::from_poset(self.poset())
    }

    pub fn into_lattice(self) -> Result<LatticeEffectAlgebra> {
        let lattice = self.lattice_tables();
        if let Some((x, y)) = lattice.counterexample {
            return Err(Error::NotALattice(x, y));
        }
        Ok(LatticeEffectAlgebra { ea: self, lattice })
    }
}

/// An effect algebra whose order is a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeEffectAlgebra {
    ea: EffectAlgebra,
    lattice: LatticeTables,
}

impl LatticeEffectAlgebra {
    pub fn new(table: EffectAlgebraTable) -> Result<Self> {
        EffectAlgebra::new(table)?.into_lattice()
    }

    pub fn algebra(&self) -> &EffectAlgebra {
        &self.ea
    }

    pub fn lattice(&self) -> &LatticeTables {
        &self.lattice
    }

    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.lattice.meet(x, y)
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.lattice.join(x, y)
    }

    /// `x ∨ y` over a whole set, zero for the empty set.
    pub fn join_all(&self, xs: impl IntoIterator<Item = Element>) -> Element {
        xs.into_iter().fold(ZERO, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, xs: impl IntoIterator<Item = Element>) -> Element {
        xs.into_iter().fold(self.one(), |acc, x| self.meet(acc, x))
    }
}

impl Deref for LatticeEffectAlgebra {
    type Target = EffectAlgebra;

    fn deref(&self) -> &EffectAlgebra {
        &self.ea
    }
}

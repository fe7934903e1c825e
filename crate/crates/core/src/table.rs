//! The partial sum table that defines an effect algebra.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::{Element, ZERO};

const UNDEFINED: u32 = u32::MAX;

/// Dense `n x n` table of a partial binary operation with a designated unit.
///
/// Element `0` is always the zero. The table itself only guarantees that it
/// is structurally well formed (indices in range, `0 != one`); whether it
/// satisfies the effect-algebra axioms is decided by
/// [`validate_axioms`](crate::validate_axioms).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EffectAlgebraTable {
    size: usize,
    one: Element,
    cells: Vec<u32>,
}

impl EffectAlgebraTable {
    /// Builds a table from raw row-major cells. No symmetrization is done, so
    /// an asymmetric table can be handed to the axiom checker.
    pub fn from_cells(size: usize, one: Element, cells: Vec<Option<Element>>) -> Result<Self> {
        if size < 2 {
            return Err(Error::Malformed(format!("need at least two elements, got {size}")));
        }
        if one >= size {
            return Err(Error::Malformed(format!("unit {one} out of range")));
        }
        if one == ZERO {
            return Err(Error::Malformed("zero and unit coincide".into()));
        }
        if cells.len() != size * size {
            return Err(Error::Malformed(format!(
                "expected {} cells, got {}",
                size * size,
                cells.len()
            )));
        }
        let mut raw = Vec::with_capacity(cells.len());
        for c in cells {
            match c {
                Some(v) if v >= size => return Err(Error::Malformed(format!("sum value {v} out of range"))),
                Some(v) => raw.push(v as u32),
                None => raw.push(UNDEFINED),
            }
        }
        Ok(Self { size, one, cells: raw })
    }

    /// Builds a table from a list of sums `a + b = c`. Sums are symmetrized
    /// and `0 + x = x` is inserted for every `x`.
    pub fn from_sums(
        size: usize,
        one: Element,
        sums: impl IntoIterator<Item = (Element, Element, Element)>,
    ) -> Result<Self> {
        let mut t = Self::from_cells(size, one, vec![None; size * size])?;
        for x in 0..size {
            t.define(ZERO, x, x)?;
        }
        for (a, b, c) in sums {
            if a >= size || b >= size || c >= size {
                return Err(Error::Malformed(format!("sum {a} + {b} = {c} out of range")));
            }
            t.define(a, b, c)?;
        }
        Ok(t)
    }

    fn define(&mut self, a: Element, b: Element, c: Element) -> Result<()> {
        for (x, y) in [(a, b), (b, a)] {
            match self.sum(x, y) {
                Some(prev) if prev != c => {
                    return Err(Error::ContradictorySum {
                        a: x,
                        b: y,
                        first: prev,
                        second: c,
                    })
                }
                _ => self.cells[x * self.size + y] = c as u32,
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> Element {
        ZERO
    }

    pub fn one(&self) -> Element {
        self.one
    }

    pub fn elements(&self) -> core::ops::Range<Element> {
        0..self.size
    }

    #[inline]
    pub fn sum(&self, x: Element, y: Element) -> Option<Element> {
        match self.cells[x * self.size + y] {
            UNDEFINED => None,
            v => Some(v as Element),
        }
    }

    /// `x + (y + z)` with `None` for any undefined step.
    pub fn sum3(&self, x: Element, y: Element, z: Element) -> Option<Element> {
        self.sum(y, z).and_then(|yz| self.sum(x, yz))
    }

    /// Every defined sum `(x, y, x + y)` with `x <= y` as indices.
    pub fn defined_sums(&self) -> impl Iterator<Item = (Element, Element, Element)> + '_ {
        (0..self.size).flat_map(move |x| (x..self.size).filter_map(move |y| self.sum(x, y).map(|z| (x, y, z))))
    }

    /// Left fold of the sum over `xs`; the empty sum is zero.
    pub fn orthogonal_sum(&self, xs: &[Element]) -> Option<Element> {
        xs.iter().try_fold(ZERO, |acc, &x| self.sum(acc, x))
    }

    /// The largest `k` such that `x + x + ... + x` (`k` times) is defined.
    ///
    /// Multiples of a nonzero element strictly increase in a valid table, so
    /// the loop stops after at most `n` steps. On an invalid table the bound
    /// still holds because the loop is capped.
    pub fn ord_of(&self, x: Element) -> Result<usize> {
        if x == ZERO {
            return Err(Error::ZeroHasNoOrder);
        }
        let mut k = 1;
        let mut acc = x;
        while let Some(next) = self.sum(acc, x) {
            acc = next;
            k += 1;
            if k > self.size {
                return Err(Error::InternalInconsistency(format!(
                    "multiples of {x} do not terminate"
                )));
            }
        }
        Ok(k)
    }

    /// Applies a relabeling `perm` (old index -> new index). `perm[0]` must be 0.
    pub fn relabel(&self, perm: &[Element]) -> Self {
        debug_assert_eq!(perm[ZERO], ZERO);
        let n = self.size;
        let mut cells = vec![UNDEFINED; n * n];
        for x in 0..n {
            for y in 0..n {
                if let Some(z) = self.sum(x, y) {
                    cells[perm[x] * n + perm[y]] = perm[z] as u32;
                }
            }
        }
        Self {
            size: n,
            one: perm[self.one],
            cells,
        }
    }

    /// Row-major cells with `None` for undefined entries.
    pub fn cells(&self) -> Vec<Option<Element>> {
        self.cells
            .iter()
            .map(|&v| (v != UNDEFINED).then_some(v as Element))
            .collect()
    }

    /// Sub-table on `elements` (which must contain zero first) with the
    /// given unit; sums leaving the subset become undefined.
    pub fn restrict(&self, elements: &[Element], one: Element) -> Result<Self> {
        let n = elements.len();
        let mut local = vec![usize::MAX; self.size];
        for (i, &e) in elements.iter().enumerate() {
            local[e] = i;
        }
        if elements.first() != Some(&ZERO) || local[one] == usize::MAX {
            return Err(Error::Malformed(
                "restriction must start at zero and contain the unit".into(),
            ));
        }
        let mut cells = vec![None; n * n];
        for (i, &x) in elements.iter().enumerate() {
            for (j, &y) in elements.iter().enumerate() {
                if let Some(z) = self.sum(x, y) {
                    if local[z] != usize::MAX {
                        cells[i * n + j] = Some(local[z]);
                    }
                }
            }
        }
        Self::from_cells(n, local[one], cells)
    }
}

/// The `k`-element chain `0, a, 2a, ..., (k-1)a = 1`.
pub fn chain(k: usize) -> Result<EffectAlgebraTable> {
    let sums = (1..k).flat_map(|i| (i..k).filter(move |j| i + j < k).map(move |j| (i, j, i + j)));
    EffectAlgebraTable::from_sums(k, k.saturating_sub(1), sums)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ord_of_chains() {
        assert_eq!(chain(3).unwrap().ord_of(1), Ok(2));
        assert_eq!(chain(2).unwrap().ord_of(1), Ok(1));
        assert_eq!(chain(4).unwrap().ord_of(1), Ok(3));
        assert_eq!(chain(4).unwrap().ord_of(2), Ok(1));
        assert_eq!(chain(3).unwrap().ord_of(0), Err(Error::ZeroHasNoOrder));
    }

    #[test]
    fn orthogonal_sums() {
        let c3 = chain(3).unwrap();
        assert_eq!(c3.orthogonal_sum(&[]), Some(0));
        assert_eq!(c3.orthogonal_sum(&[1, 1]), Some(2));
        assert_eq!(c3.orthogonal_sum(&[1, 1, 1]), None);
    }

    #[test]
    fn contradictory_sum_rejected() {
        let err = EffectAlgebraTable::from_sums(3, 2, [(1, 1, 2), (1, 1, 1)]).unwrap_err();
        assert!(matches!(err, Error::ContradictorySum { .. }));
    }

    #[test]
    fn structural_errors() {
        assert!(EffectAlgebraTable::from_cells(1, 0, vec![Some(0)]).is_err());
        assert!(EffectAlgebraTable::from_cells(2, 0, vec![None; 4]).is_err());
        assert!(EffectAlgebraTable::from_cells(2, 1, vec![Some(5), None, None, None]).is_err());
    }

    #[test]
    fn relabel_is_invertible() {
        let c4 = chain(4).unwrap();
        let perm = [0, 3, 1, 2];
        let mut inv = [0; 4];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        assert_eq!(c4.relabel(&perm).relabel(&inv), c4);
    }
}

//! Constructions of new effect algebras: chains, direct products, horizontal
//! sums and the effect algebra of an orthomodular lattice.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lattice::LatticeTables;
use crate::poset::Poset;
use crate::table::EffectAlgebraTable;
use crate::{Element, ZERO};

pub use crate::table::chain;

/// Row-major coordinates of product element `idx` (first factor most significant).
pub fn product_coords(sizes: &[usize], mut idx: Element) -> Vec<Element> {
    let mut coords = vec![0; sizes.len()];
    for (c, &s) in coords.iter_mut().zip(sizes).rev() {
        *c = idx % s;
        idx /= s;
    }
    coords
}

pub fn product_index(sizes: &[usize], coords: &[Element]) -> Element {
    coords.iter().zip(sizes).fold(0, |acc, (&c, &s)| acc * s + c)
}

/// Cartesian product with coordinatewise sum, zero and unit.
pub fn direct_product(factors: &[EffectAlgebraTable]) -> Result<EffectAlgebraTable> {
    if factors.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    if factors.len() == 1 {
        return Ok(factors[0].clone());
    }
    let sizes: Vec<usize> = factors.iter().map(EffectAlgebraTable::size).collect();
    let n: usize = sizes.iter().product();
    let coords: Vec<Vec<Element>> = (0..n).map(|i| product_coords(&sizes, i)).collect();
    let mut cells = vec![None; n * n];
    let mut buf = vec![0; sizes.len()];
    for x in 0..n {
        for y in 0..n {
            let defined = factors
                .iter()
                .enumerate()
                .all(|(k, f)| match f.sum(coords[x][k], coords[y][k]) {
                    Some(s) => {
                        buf[k] = s;
                        true
                    }
                    None => false,
                });
            if defined {
                cells[x * n + y] = Some(product_index(&sizes, &buf));
            }
        }
    }
    let ones: Vec<Element> = factors.iter().map(EffectAlgebraTable::one).collect();
    EffectAlgebraTable::from_cells(n, product_index(&sizes, &ones), cells)
}

/// Where each element of a horizontal sum comes from: `(summand, index)`.
/// The first summand keeps its own indices; the elements strictly between
/// zero and unit of later summands follow in order.
pub fn horizontal_sum_layout(summands: &[EffectAlgebraTable]) -> Vec<(usize, Element)> {
    let mut layout: Vec<(usize, Element)> = summands
        .first()
        .map(|t| t.elements().map(|e| (0, e)).collect())
        .unwrap_or_default();
    for (j, t) in summands.iter().enumerate().skip(1) {
        layout.extend(t.elements().filter(|&e| e != ZERO && e != t.one()).map(|e| (j, e)));
    }
    layout
}

/// Disjoint union with all zeros and all units identified. Sums across
/// different summands are defined only when one side is zero.
pub fn horizontal_sum(summands: &[EffectAlgebraTable]) -> Result<EffectAlgebraTable> {
    if summands.is_empty() {
        return Err(Error::EmptyFactorList);
    }
    if let Some(j) = summands.iter().position(|t| t.size() < 3) {
        return Err(Error::FactorTooSmall(j));
    }
    let layout = horizontal_sum_layout(summands);
    let one = summands[0].one();
    let global: Vec<Vec<Element>> = summands
        .iter()
        .enumerate()
        .map(|(j, t)| {
            t.elements()
                .map(|e| {
                    if e == ZERO {
                        ZERO
                    } else if e == t.one() {
                        one
                    } else {
                        layout
                            .iter()
                            .position(|&p| p == (j, e))
                            .expect("layout covers every element")
                    }
                })
                .collect()
        })
        .collect();
    let mut sums = Vec::new();
    for (j, t) in summands.iter().enumerate() {
        for (a, b, c) in t.defined_sums() {
            sums.push((global[j][a], global[j][b], global[j][c]));
        }
    }
    EffectAlgebraTable::from_sums(layout.len(), one, sums)
}

/// Turns an orthomodular lattice into an effect algebra with
/// `x + y = x ∨ y` whenever `x <= y⊥`. The bottom must be element 0.
pub fn oml_to_ea(poset: &Poset, orth: &[Element]) -> Result<EffectAlgebraTable> {
    let n = poset.len();
    if orth.len() != n {
        return Err(Error::NotOrthocomplemented(format!(
            "complement defined on {} of {n} elements",
            orth.len()
        )));
    }
    let lt = LatticeTables::from_poset(poset);
    if let Some((x, y)) = lt.counterexample {
        return Err(Error::NotALattice(x, y));
    }
    if poset.bottom() != Some(ZERO) {
        return Err(Error::NotOrthocomplemented("element 0 is not the bottom".into()));
    }
    let top = poset.top().expect("finite lattice has a top");
    for x in 0..n {
        let xp = orth[x];
        if xp >= n || orth[xp] != x {
            return Err(Error::NotOrthocomplemented(format!(
                "complement is not an involution at {x}"
            )));
        }
        if lt.meet(x, xp) != ZERO || lt.join(x, xp) != top {
            return Err(Error::NotOrthocomplemented(format!(
                "{x} and its complement are not complementary"
            )));
        }
        for y in poset.up_set(x).iter() {
            if !poset.leq(orth[y], xp) {
                return Err(Error::NotOrthocomplemented(format!(
                    "complement does not reverse {x} <= {y}"
                )));
            }
        }
    }
    for x in 0..n {
        for y in poset.up_set(x).iter() {
            if lt.join(x, lt.meet(y, orth[x])) != y {
                return Err(Error::NotOrthomodular(x, y));
            }
        }
    }
    let mut sums = Vec::new();
    for x in 0..n {
        for y in x..n {
            if poset.leq(x, orth[y]) {
                sums.push((x, y, lt.join(x, y)));
            }
        }
    }
    EffectAlgebraTable::from_sums(n, top, sums)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::axioms::validate_axioms;

    #[test]
    fn coords_round_trip() {
        let sizes = [3, 4, 2];
        for i in 0..24 {
            assert_eq!(product_index(&sizes, &product_coords(&sizes, i)), i);
        }
        assert_eq!(product_coords(&sizes, 0), vec![0, 0, 0]);
    }

    #[test]
    fn unary_constructions_are_identity() {
        let c4 = chain(4).unwrap();
        assert_eq!(direct_product(core::slice::from_ref(&c4)).unwrap(), c4);
        assert_eq!(horizontal_sum(core::slice::from_ref(&c4)).unwrap(), c4);
    }

    #[test]
    fn product_of_two_bits_is_boolean_square() {
        let b = chain(2).unwrap();
        let sq = direct_product(&[b.clone(), b]).unwrap();
        assert!(validate_axioms(&sq).passed());
        assert_eq!(sq, EffectAlgebraTable::from_sums(4, 3, [(1, 2, 3)]).unwrap());
    }

    #[test]
    fn horizontal_sum_of_three_chains() {
        let c3 = chain(3).unwrap();
        let e1 = horizontal_sum(&[c3.clone(), c3]).unwrap();
        assert_eq!(e1.size(), 4);
        assert_eq!(e1.one(), 2);
        assert_eq!(e1.sum(1, 1), Some(2));
        assert_eq!(e1.sum(3, 3), Some(2));
        assert_eq!(e1.sum(1, 3), None);
        assert!(validate_axioms(&e1).passed());
    }

    #[test]
    fn errors() {
        assert_eq!(direct_product(&[]), Err(Error::EmptyFactorList));
        let c2 = chain(2).unwrap();
        assert_eq!(horizontal_sum(&[chain(3).unwrap(), c2]), Err(Error::FactorTooSmall(1)));
    }
}

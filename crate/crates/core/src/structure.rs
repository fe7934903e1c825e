//! Sharp elements, compatibility, blocks, centers and the decomposition of a
//! finite lattice effect algebra into irreducible intervals `[0, p]` over the
//! atoms `p` of its center.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitset::ElementSet;
use crate::clique::maximal_cliques;
use crate::error::{Error, Result};
use crate::order::LatticeEffectAlgebra;
use crate::table::EffectAlgebraTable;
use crate::{Element, ZERO};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// `S(E)`.
    pub sharp: ElementSet,
    pub blocks: Vec<ElementSet>,
    /// `B(E)`, the intersection of all blocks.
    pub compat_center: ElementSet,
    /// `C(E)`.
    pub center: ElementSet,
    pub central_atoms: Vec<Element>,
    pub is_mv: bool,
    pub is_irreducible: bool,
    pub sharply_dominating: bool,
}

/// The three equivalent conditions on the central atoms.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralAtomConditions {
    /// `C(E)` is atomic and its atoms join to 1.
    pub center_atomic_with_unit_join: bool,
    /// Every atom of `E` lies below an atom of `C(E)`.
    pub atoms_below_central_atoms: bool,
    /// `x ↦ (x ∧ p)_p` embeds `E` as a subdirect product of the `[0, p]`.
    pub subdirect_embedding: bool,
}

impl CentralAtomConditions {
    pub fn agree(&self) -> bool {
        self.center_atomic_with_unit_join == self.atoms_below_central_atoms
            && self.atoms_below_central_atoms == self.subdirect_embedding
    }
}

/// The interval `[0, z]` as an algebra of its own, with its embedding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub table: EffectAlgebraTable,
    /// Local index -> element of the ambient algebra.
    pub elements: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub central_atoms: Vec<Element>,
    pub factors: Vec<Interval>,
    /// `iso[x][i]` is the local index of `x ∧ p_i` in factor `i`.
    pub iso: Vec<Vec<Element>>,
}

impl Decomposition {
    pub fn factor_sizes(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.table.size()).collect()
    }
}

fn inconsistent(msg: alloc::string::String) -> Error {
    Error::InternalInconsistency(msg)
}

impl LatticeEffectAlgebra {
    pub fn is_sharp(&self, w: Element) -> bool {
        self.meet(w, self.complement(w)) == ZERO
    }

    /// `x ↔ y` iff `x ∨ y = x + (y - (x ∧ y))`.
    pub fn compatible(&self, x: Element, y: Element) -> bool {
        let diff = self.ominus(y, self.meet(x, y)).expect("x ∧ y <= y");
        self.sum(x, diff) == Some(self.join(x, y))
    }

    pub fn compatibility(&self) -> Vec<ElementSet> {
        let n = self.size();
        let mut adj = vec![ElementSet::new(n); n];
        for x in 0..n {
            for y in x..n {
                if self.compatible(x, y) {
                    adj[x].insert(y);
                    adj[y].insert(x);
                }
            }
        }
        adj
    }

    /// Sub-effect algebra: contains 1, and whenever two of `x, y, x + y` are
    /// in the set so is the third.
    pub fn is_sub_effect_algebra(&self, q: &ElementSet) -> bool {
        if !q.contains(self.one()) {
            return false;
        }
        self.table().defined_sums().all(|(x, y, z)| {
            let inside = [x, y, z].iter().filter(|&&e| q.contains(e)).count();
            inside < 2 || inside == 3
        })
    }

    pub fn is_sublattice(&self, q: &ElementSet) -> bool {
        q.iter().all(|x| {
            q.iter()
                .all(|y| q.contains(self.meet(x, y)) && q.contains(self.join(x, y)))
        })
    }

    /// `S(E) = {w : w ∧ w' = 0}`, checked to be a sub-effect algebra and a
    /// sublattice.
    pub fn sharp_elements(&self) -> Result<ElementSet> {
        let s = ElementSet::from_elements(self.size(), self.elements().filter(|&w| self.is_sharp(w)));
        if !self.is_sub_effect_algebra(&s) || !self.is_sublattice(&s) {
            return Err(inconsistent(format!(
                "sharp elements {s:?} are not a sub-lattice effect algebra"
            )));
        }
        Ok(s)
    }

    /// Maximal sets of pairwise compatible elements, each checked to be a
    /// sub-lattice effect algebra and an MV-effect algebra in its own right.
    pub fn blocks(&self) -> Result<Vec<ElementSet>> {
        let blocks = maximal_cliques(&self.compatibility());
        let mut union = ElementSet::new(self.size());
        for b in &blocks {
            if !b.contains(ZERO) || !self.is_sub_effect_algebra(b) || !self.is_sublattice(b) {
                return Err(inconsistent(format!("block {b:?} is not a sub-lattice effect algebra")));
            }
            if b.iter().any(|x| !b.contains(self.complement(x))) {
                return Err(inconsistent(format!("block {b:?} is not closed under complement")));
            }
            let standalone = LatticeEffectAlgebra::new(self.table().restrict(&b.to_vec(), self.one())?)
                .map_err(|e| inconsistent(format!("block {b:?} as an algebra: {e}")))?;
            if !standalone.is_mv() {
                return Err(inconsistent(format!("block {b:?} is not an MV-effect algebra")));
            }
            union = union.union(b);
        }
        if union.len() != self.size() {
            return Err(inconsistent("blocks do not cover the algebra".into()));
        }
        Ok(blocks)
    }

    /// A single block, i.e. all pairs compatible.
    pub fn is_mv(&self) -> bool {
        self.elements().all(|x| (x..self.size()).all(|y| self.compatible(x, y)))
    }

    /// `B(E)`, computed as the intersection of the blocks and as the elements
    /// compatible with everything; the two must agree.
    pub fn compat_center(&self, blocks: &[ElementSet]) -> Result<ElementSet> {
        let n = self.size();
        let by_blocks = blocks.iter().fold(ElementSet::full(n), |acc, b| acc.intersection(b));
        let compat = self.compatibility();
        let direct = ElementSet::from_elements(n, (0..n).filter(|&x| compat[x].len() == n));
        if by_blocks != direct {
            return Err(inconsistent(format!(
                "B(E) from blocks {by_blocks:?} differs from {direct:?}"
            )));
        }
        Ok(direct)
    }

    /// `z` is central iff `x = (x ∧ z) ∨ (x ∧ z')` for every `x`.
    pub fn is_central(&self, z: Element) -> bool {
        let zc = self.complement(z);
        self.elements()
            .all(|x| self.join(self.meet(x, z), self.meet(x, zc)) == x)
    }

    /// `C(E)` by the defining identity, cross-checked against sharp elements
    /// compatible with everything and against `B(E) ∩ S(E)`.
    pub fn center(&self, sharp: &ElementSet, compat_center: &ElementSet) -> Result<ElementSet> {
        let n = self.size();
        let by_identity = ElementSet::from_elements(n, (0..n).filter(|&z| self.is_central(z)));
        let by_compat = ElementSet::from_elements(
            n,
            (0..n).filter(|&z| self.is_sharp(z) && (0..n).all(|x| self.compatible(z, x))),
        );
        if by_identity != by_compat {
            return Err(inconsistent(format!(
                "center by identity {by_identity:?} differs from {by_compat:?}"
            )));
        }
        if by_identity != compat_center.intersection(sharp) {
            return Err(inconsistent("C(E) differs from B(E) ∩ S(E)".into()));
        }
        Ok(by_identity)
    }

    /// Atoms of the center, as a poset in its own right.
    pub fn central_atoms(&self, center: &ElementSet) -> Vec<Element> {
        center
            .iter()
            .filter(|&p| p != ZERO && center.iter().all(|z| z == ZERO || z == p || !self.leq(z, p)))
            .collect()
    }

    /// Least sharp element above `x`, if there is one.
    pub fn sharp_cover(&self, x: Element, sharp: &ElementSet) -> Option<Element> {
        let above = sharp.intersection(self.poset().up_set(x));
        self.poset().minimum(&above)
    }

    pub fn sharply_dominating(&self, sharp: &ElementSet) -> bool {
        self.elements().all(|x| self.sharp_cover(x, sharp).is_some())
    }

    pub fn structure_report(&self) -> Result<StructureReport> {
        let sharp = self.sharp_elements()?;
        let blocks = self.blocks()?;
        let compat_center = self.compat_center(&blocks)?;
        let center = self.center(&sharp, &compat_center)?;
        let central_atoms = self.central_atoms(&center);
        let is_mv = blocks.len() == 1;
        if is_mv != self.is_mv() {
            return Err(inconsistent("block count disagrees with pairwise compatibility".into()));
        }
        let is_irreducible = center.len() == 2;
        let sharply_dominating = self.sharply_dominating(&sharp);
        Ok(StructureReport {
            sharp,
            blocks,
            compat_center,
            center,
            central_atoms,
            is_mv,
            is_irreducible,
            sharply_dominating,
        })
    }

    /// `[0, z]` with the inherited sum and unit `z`, for central `z`.
    pub fn interval_algebra(&self, z: Element) -> Result<Interval> {
        if !self.is_central(z) {
            return Err(Error::NotCentral(z));
        }
        if z == ZERO {
            return Err(Error::DegenerateInterval);
        }
        let elements = self.poset().down_set(z).to_vec();
        let table = self.table().restrict(&elements, z)?;
        Ok(Interval { table, elements })
    }

    /// Evaluates the three conditions on the central atoms independently.
    pub fn central_atom_conditions(&self, center: &ElementSet) -> Result<CentralAtomConditions> {
        let atoms_c = self.central_atoms(center);

        let atomic = center
            .iter()
            .filter(|&z| z != ZERO)
            .all(|z| atoms_c.iter().any(|&p| self.leq(p, z)));
        let center_atomic_with_unit_join = atomic && self.join_all(atoms_c.iter().copied()) == self.one();

        let atoms_below_central_atoms = self.atoms().iter().all(|&a| atoms_c.iter().any(|&p| self.leq(a, p)));

        let subdirect_embedding = !atoms_c.is_empty() && self.canonical_map_is_subdirect(&atoms_c)?;

        Ok(CentralAtomConditions {
            center_atomic_with_unit_join,
            atoms_below_central_atoms,
            subdirect_embedding,
        })
    }

    /// Checks that `x ↦ (x ∧ p)_p` is injective, is an embedding in the sense
    /// of effect-algebra isomorphisms (unit to unit, orthogonality preserved
    /// and reflected, sums preserved), has a sub-lattice effect algebra as its
    /// image, and has surjective coordinate projections.
    fn canonical_map_is_subdirect(&self, atoms_c: &[Element]) -> Result<bool> {
        let factors: Vec<(Interval, crate::order::LatticeEffectAlgebra)> = atoms_c
            .iter()
            .map(|&p| {
                let iv = self.interval_algebra(p)?;
                let lea = LatticeEffectAlgebra::new(iv.table.clone())
                    .map_err(|e| inconsistent(format!("interval [0, {p}]: {e}")))?;
                Ok((iv, lea))
            })
            .collect::<Result<_>>()?;
        let local = |k: usize, x: Element| factors[k].0.elements.iter().position(|&e| e == x);
        let phi: Vec<Vec<Element>> = self
            .elements()
            .map(|x| {
                atoms_c
                    .iter()
                    .enumerate()
                    .map(|(k, &p)| local(k, self.meet(x, p)).expect("x ∧ p <= p"))
                    .collect()
            })
            .collect();

        let mut image: BTreeMap<Vec<Element>, Element> = BTreeMap::new();
        for (x, c) in phi.iter().enumerate() {
            if image.insert(c.clone(), x).is_some() {
                return Ok(false);
            }
        }
        if phi[self.one()] != factors.iter().map(|f| f.1.one()).collect::<Vec<_>>() {
            return Ok(false);
        }
        for (k, f) in factors.iter().enumerate() {
            let hit = ElementSet::from_elements(f.1.size(), phi.iter().map(|c| c[k]));
            if hit.len() != f.1.size() {
                return Ok(false);
            }
        }

        let coord_sum = |u: &[Element], v: &[Element]| -> Option<Vec<Element>> {
            factors.iter().enumerate().map(|(k, f)| f.1.sum(u[k], v[k])).collect()
        };
        for a in self.elements() {
            for b in self.elements() {
                // a <= b' in E iff a + b is defined; likewise coordinatewise.
                let in_e = self.sum(a, b);
                let in_prod = coord_sum(&phi[a], &phi[b]);
                match (in_e, &in_prod) {
                    (Some(s), Some(c)) if &phi[s] == c => {}
                    (None, None) => {}
                    _ => return Ok(false),
                }
                let m: Vec<Element> = factors
                    .iter()
                    .enumerate()
                    .map(|(k, f)| f.1.meet(phi[a][k], phi[b][k]))
                    .collect();
                let j: Vec<Element> = factors
                    .iter()
                    .enumerate()
                    .map(|(k, f)| f.1.join(phi[a][k], phi[b][k]))
                    .collect();
                if !image.contains_key(&m) || !image.contains_key(&j) {
                    return Ok(false);
                }
                // differences inside the image stay inside the image
                let diff: Option<Vec<Element>> = factors
                    .iter()
                    .enumerate()
                    .map(|(k, f)| f.1.ominus(phi[b][k], phi[a][k]))
                    .collect();
                if let Some(d) = diff {
                    if !image.contains_key(&d) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Splits the algebra over the atoms of its center. Each factor is checked
    /// to be irreducible and the coordinate map to be a sum-preserving
    /// bijection onto the full direct product.
    pub fn decompose(&self) -> Result<Decomposition> {
        let report = self.structure_report()?;
        let central_atoms = report.central_atoms;
        let factors: Vec<Interval> = central_atoms
            .iter()
            .map(|&p| self.interval_algebra(p))
            .collect::<Result<_>>()?;
        let sizes: Vec<usize> = factors.iter().map(|f| f.table.size()).collect();
        if sizes.iter().product::<usize>() != self.size() {
            return Err(inconsistent(format!(
                "factor sizes {sizes:?} do not multiply to {}",
                self.size()
            )));
        }
        for (f, &p) in factors.iter().zip(&central_atoms) {
            let lea = LatticeEffectAlgebra::new(f.table.clone())
                .map_err(|e| inconsistent(format!("interval [0, {p}]: {e}")))?;
            let center = lea.elements().filter(|&z| lea.is_central(z)).count();
            if center != 2 {
                return Err(inconsistent(format!("interval [0, {p}] is not irreducible")));
            }
        }
        let iso: Vec<Vec<Element>> = self
            .elements()
            .map(|x| {
                central_atoms
                    .iter()
                    .zip(&factors)
                    .map(|(&p, f)| {
                        let m = self.meet(x, p);
                        f.elements.iter().position(|&e| e == m).expect("x ∧ p <= p")
                    })
                    .collect()
            })
            .collect();
        let mut hit = ElementSet::new(self.size());
        for c in &iso {
            hit.insert(crate::construct::product_index(&sizes, c));
        }
        if hit.len() != self.size() {
            return Err(inconsistent("coordinate map is not bijective".into()));
        }
        for x in self.elements() {
            for y in self.elements() {
                let coords: Option<Vec<Element>> = factors
                    .iter()
                    .enumerate()
                    .map(|(k, f)| f.table.sum(iso[x][k], iso[y][k]))
                    .collect();
                let ok = match (self.sum(x, y), coords) {
                    (Some(s), Some(c)) => iso[s] == c,
                    (None, None) => true,
                    _ => false,
                };
                if !ok {
                    return Err(inconsistent(format!("coordinate map does not preserve {x} + {y}")));
                }
            }
        }
        Ok(Decomposition {
            central_atoms,
            factors,
            iso,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{chain, direct_product, horizontal_sum};

    fn lea(t: EffectAlgebraTable) -> LatticeEffectAlgebra {
        LatticeEffectAlgebra::new(t).unwrap()
    }

    #[test]
    fn chain_structure() {
        let c = lea(chain(3).unwrap());
        let r = c.structure_report().unwrap();
        assert_eq!(r.sharp.to_vec(), vec![0, 2]);
        assert_eq!(r.center.to_vec(), vec![0, 2]);
        assert_eq!(r.compat_center.to_vec(), vec![0, 1, 2]);
        assert_eq!(r.blocks.len(), 1);
        assert!(r.is_mv && r.is_irreducible && r.sharply_dominating);
        assert_eq!(c.sharp_cover(1, &r.sharp), Some(2));
    }

    #[test]
    fn horizontal_sum_blocks() {
        let c3 = chain(3).unwrap();
        let e1 = lea(horizontal_sum(&[c3.clone(), c3]).unwrap());
        assert!(!e1.compatible(1, 3));
        assert!(e1.compatible(1, 1));
        let blocks: Vec<_> = e1.blocks().unwrap().iter().map(ElementSet::to_vec).collect();
        assert_eq!(blocks, vec![vec![0, 1, 2], vec![0, 2, 3]]);
    }

    #[test]
    fn interval_errors() {
        let sq = lea(direct_product(&[chain(2).unwrap(), chain(2).unwrap()]).unwrap());
        assert_eq!(sq.interval_algebra(0), Err(Error::DegenerateInterval));
        let iv = sq.interval_algebra(1).unwrap();
        assert_eq!(iv.table, chain(2).unwrap());
        assert_eq!(sq.interval_algebra(3).unwrap().table, *sq.table());
        let c3 = lea(chain(3).unwrap());
        assert_eq!(c3.interval_algebra(1), Err(Error::NotCentral(1)));
    }

    #[test]
    fn boolean_cube_decomposes_into_bits() {
        let b = chain(2).unwrap();
        let cube = lea(direct_product(&[b.clone(), b.clone(), b]).unwrap());
        let d = cube.decompose().unwrap();
        assert_eq!(d.factor_sizes(), vec![2, 2, 2]);
        let l = cube
            .central_atom_conditions(&cube.structure_report().unwrap().center)
            .unwrap();
        assert_eq!(
            l,
            CentralAtomConditions {
                center_atomic_with_unit_join: true,
                atoms_below_central_atoms: true,
                subdirect_embedding: true
            }
        );
    }
}

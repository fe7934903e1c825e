//! The four defining conditions of an effect algebra.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::table::EffectAlgebraTable;
use crate::{Element, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// `x + y = y + x`.
    Ei,
    /// `(x + y) + z = x + (y + z)`, one side defined iff the other is.
    Eii,
    /// Every `x` has exactly one `y` with `x + y = 1`.
    Eiii,
    /// `1 + x` defined implies `x = 0`.
    Eiv,
}

impl Axiom {
    pub fn tag(self) -> &'static str {
        match self {
            Axiom::Ei => "Ei",
            Axiom::Eii => "Eii",
            Axiom::Eiii => "Eiii",
            Axiom::Eiv => "Eiv",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: Axiom) -> Option<&Violation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

/// Checks every axiom and reports, per violated axiom, the lexicographically
/// smallest witness.
pub fn validate_axioms(t: &EffectAlgebraTable) -> AxiomReport {
    let n = t.size();
    let one = t.one();
    let mut violations = Vec::new();

    'ei: for x in 0..n {
        for y in x..n {
            if t.sum(x, y) != t.sum(y, x) {
                violations.push(Violation {
                    axiom: Axiom::Ei,
                    witness: vec![x, y],
                });
                break 'ei;
            }
        }
    }

    'eii: for x in 0..n {
        for y in 0..n {
            let xy = t.sum(x, y);
            for z in 0..n {
                let lhs = xy.and_then(|s| t.sum(s, z));
                let rhs = t.sum3(x, y, z);
                if lhs != rhs {
                    violations.push(Violation {
                        axiom: Axiom::Eii,
                        witness: vec![x, y, z],
                    });
                    break 'eii;
                }
            }
        }
    }

    for x in 0..n {
        let mut complements = (0..n).filter(|&y| t.sum(x, y) == Some(one));
        let first = complements.next();
        let second = complements.next();
        let witness = match (first, second) {
            (None, _) => Some(vec![x]),
            (Some(a), Some(b)) => Some(vec![x, a, b]),
            (Some(_), None) => None,
        };
        if let Some(witness) = witness {
            violations.push(Violation {
                axiom: Axiom::Eiii,
                witness,
            });
            break;
        }
    }

    if let Some(x) = (0..n).find(|&x| x != ZERO && t.sum(one, x).is_some()) {
        violations.push(Violation {
            axiom: Axiom::Eiv,
            witness: vec![x],
        });
    }

    AxiomReport { violations }
}

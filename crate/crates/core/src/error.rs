use alloc::string::String;
use alloc::vec::Vec;

use crate::axioms::Violation;
use crate::Element;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("table is malformed: {0}")]
    Malformed(String),
    #[error("contradictory sums: {a} + {b} is both {first} and {second}")]
    ContradictorySum {
        a: Element,
        b: Element,
        first: Element,
        second: Element,
    },
    #[error("not an effect algebra ({} axiom violations)", .0.len())]
    NotAnEffectAlgebra(Vec<Violation>),
    #[error("cancellation fails: {x} + {z1} = {x} + {z2} with {z1} != {z2}")]
    NotWellDefined { x: Element, z1: Element, z2: Element },
    #[error("zero has no order")]
    ZeroHasNoOrder,
    #[error("not a lattice: {0} and {1} lack a meet or a join")]
    NotALattice(Element, Element),
    #[error("subset is not closed under meet, join and complement (witness {0})")]
    SubsetNotClosed(Element),
    #[error("element {0} is not central")]
    NotCentral(Element),
    #[error("the interval [0, 0] has a single element")]
    DegenerateInterval,
    #[error("empty factor list")]
    EmptyFactorList,
    #[error("summand {0} has fewer than three elements")]
    FactorTooSmall(usize),
    #[error("not an ortholattice: {0}")]
    NotOrthocomplemented(String),
    #[error("orthomodular law fails for {0} <= {1}")]
    NotOrthomodular(Element, Element),
    #[error("relation is not a partial order: {0}")]
    NotAPartialOrder(String),
    #[error("size {size} exceeds the enumeration bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

//! Finite effect algebras.
//!
//! An effect algebra is stored as a dense partial sum table over the elements
//! `0..n`, with index `0` always the zero. Everything else (order, complements,
//! lattice operations, sharp elements, blocks, centers, decompositions and
//! states) is derived from that table.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, reports and the
//! command line live in the companion `ealab` crate.

#![no_std]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod axioms;
pub mod bitset;
pub mod completion;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod lp;
pub mod order;
pub mod poset;
pub mod states;
pub mod structure;
pub mod table;

mod clique;

pub use crate::axioms::{validate_axioms, Axiom, AxiomReport, Violation};
pub use crate::bitset::ElementSet;
pub use crate::completion::{dedekind_macneille, CompletionResult};
pub use crate::error::Error;
pub use crate::lattice::LatticeTables;
pub use crate::order::{derive_order, EffectAlgebra, LatticeEffectAlgebra, OrderStructure};
pub use crate::poset::Poset;
pub use crate::table::EffectAlgebraTable;

/// Index of an element inside one algebra.
pub type Element = usize;

/// The zero of every table.
pub const ZERO: Element = 0;

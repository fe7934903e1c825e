//! States on finite effect algebras, decided by exact linear feasibility.
//!
//! A state is `ω: E -> [0, 1]` with `ω(1) = 1` and `ω(x + y) = ω(x) + ω(y)`
//! whenever the sum is defined. It is faithful when `ω(x) > 0` for every
//! `x != 0`, and subadditive when `ω(x ∨ y) <= ω(x) + ω(y)`; on a lattice
//! effect algebra a state is subadditive exactly when it is a valuation:
//! `x ∧ y = 0` implies `ω(x ∨ y) = ω(x) + ω(y)`.
//!
//! Faithfulness is a strict inequality, which a linear program cannot
//! express directly. Instead we maximize `t` subject to `ω(a) >= t` for every
//! atom `a`. This is enough: every nonzero `x` of a finite algebra lies above
//! some atom `a`, and `ω(x) = ω(a) + ω(x - a) >= ω(a)`. So a faithful state
//! exists iff the optimum `t*` is positive.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::LatticeTables;
use crate::lp::{self, Certificate, Constraint, LinearSystem, Optimum, Rational, Relation};
use crate::order::EffectAlgebra;
use crate::{Element, ZERO};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateMode {
    Any,
    Faithful,
    Subadditive,
    FaithfulSubadditive,
}

impl StateMode {
    pub const ALL: [StateMode; 4] = [
        StateMode::Any,
        StateMode::Faithful,
        StateMode::Subadditive,
        StateMode::FaithfulSubadditive,
    ];

    pub fn is_faithful(self) -> bool {
        matches!(self, StateMode::Faithful | StateMode::FaithfulSubadditive)
    }

    pub fn is_subadditive(self) -> bool {
        matches!(self, StateMode::Subadditive | StateMode::FaithfulSubadditive)
    }

    pub fn name(self) -> &'static str {
        match self {
            StateMode::Any => "any",
            StateMode::Faithful => "faithful",
            StateMode::Subadditive => "subadditive",
            StateMode::FaithfulSubadditive => "faithful_subadditive",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s || m.name().replace('_', "-") == s)
    }
}

impl fmt::Display for StateMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One exact value per element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateVector {
    pub values: Vec<Rational>,
}

impl StateVector {
    pub fn get(&self, x: Element) -> &Rational {
        &self.values[x]
    }
}

/// Where a row of the state system comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RowOrigin {
    /// `ω(0) = 0`.
    Zero,
    /// `ω(1) = 1`.
    Unit,
    /// `ω(x) <= 1`.
    Bound(Element),
    /// `ω(x) + ω(y) = ω(x + y)`.
    Sum(Element, Element, Element),
    /// `ω(x) + ω(y) = ω(x ∨ y)` for `x ∧ y = 0`.
    Valuation(Element, Element, Element),
    /// `ω(a) - t >= 0`.
    FaithfulAtom(Element),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateSystem {
    pub mode: StateMode,
    pub system: LinearSystem,
    pub origins: Vec<RowOrigin>,
    /// The slack variable `t` of the faithful modes.
    pub t_var: Option<usize>,
}

impl StateSystem {
    pub fn objective(&self) -> Vec<(usize, Rational)> {
        self.t_var.map(|t| (t, Rational::one())).into_iter().collect()
    }
}

/// Builds the linear system whose solutions are the states of the given mode.
pub fn state_system(ea: &EffectAlgebra, mode: StateMode) -> Result<StateSystem> {
    let n = ea.size();
    let lattice = if mode.is_subadditive() {
        let lt = ea.lattice_tables();
        if let Some((x, y)) = lt.counterexample {
            return Err(Error::NotALattice(x, y));
        }
        Some(lt)
    } else {
        None
    };
    let t_var = mode.is_faithful().then_some(n);
    let mut sys = LinearSystem::new(n + usize::from(t_var.is_some()));
    let mut origins = Vec::new();
    let mut seen = BTreeSet::new();
    let mut push = |sys: &mut LinearSystem, c: Constraint, origin: RowOrigin| {
        if seen.insert(c.clone()) {
            sys.push(c);
            origins.push(origin);
        }
    };
    let one = Rational::one;
    push(
        &mut sys,
        Constraint::new([(ZERO, one())], Relation::Eq, Rational::zero()),
        RowOrigin::Zero,
    );
    push(
        &mut sys,
        Constraint::new([(ea.one(), one())], Relation::Eq, one()),
        RowOrigin::Unit,
    );
    for x in 0..n {
        push(
            &mut sys,
            Constraint::new([(x, one())], Relation::Le, one()),
            RowOrigin::Bound(x),
        );
    }
    for (x, y, z) in ea.table().defined_sums() {
        let c = additivity(x, y, z);
        if !c.coeffs.is_empty() {
            push(&mut sys, c, RowOrigin::Sum(x, y, z));
        }
    }
    if let Some(lt) = &lattice {
        for x in 0..n {
            for y in x..n {
                if lt.meet(x, y) == ZERO {
                    let c = additivity(x, y, lt.join(x, y));
                    if !c.coeffs.is_empty() {
                        push(&mut sys, c, RowOrigin::Valuation(x, y, lt.join(x, y)));
                    }
                }
            }
        }
    }
    if let Some(t) = t_var {
        for a in ea.atoms() {
            push(
                &mut sys,
                Constraint::new([(a, one()), (t, -one())], Relation::Ge, Rational::zero()),
                RowOrigin::FaithfulAtom(a),
            );
        }
    }
    Ok(StateSystem {
        mode,
        system: sys,
        origins,
        t_var,
    })
}

fn additivity(x: Element, y: Element, z: Element) -> Constraint {
    Constraint::new(
        [(x, Rational::one()), (y, Rational::one()), (z, -Rational::one())],
        Relation::Eq,
        Rational::zero(),
    )
}

/// Why no state of the requested mode exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// The certificate derives a contradiction from the system.
    NoState,
    /// The certificate proves `t <= 0`, so some atom gets zero in every state.
    NotFaithful,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateResult {
    Found {
        state: StateVector,
        /// The optimum `t*` of the faithful modes.
        t_star: Option<Rational>,
    },
    Infeasible {
        obstruction: Obstruction,
        certificate: Certificate,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateQuery {
    pub mode: StateMode,
    pub result: StateResult,
}

impl StateQuery {
    pub fn is_found(&self) -> bool {
        matches!(self.result, StateResult::Found { .. })
    }

    pub fn state(&self) -> Option<&StateVector> {
        match &self.result {
            StateResult::Found { state, .. } => Some(state),
            StateResult::Infeasible { .. } => None,
        }
    }
}

/// Searches for a state of the given mode. Found states are re-checked with
/// [`verify_state`] and certificates are replayed before returning.
pub fn find_state(ea: &EffectAlgebra, mode: StateMode) -> Result<StateQuery> {
    let ss = state_system(ea, mode)?;
    let objective = ss.objective();
    let result = match lp::maximize(&ss.system, &objective) {
        Optimum::Infeasible(certificate) => {
            if !certificate.proves_infeasible(&ss.system) {
                return Err(Error::InternalInconsistency(
                    "infeasibility certificate does not replay".into(),
                ));
            }
            StateResult::Infeasible {
                obstruction: Obstruction::NoState,
                certificate,
            }
        }
        Optimum::Unbounded { .. } => return Err(Error::InternalInconsistency("state system is unbounded".into())),
        Optimum::Optimal {
            point,
            value,
            certificate,
        } => {
            if ss.t_var.is_some() && !value.is_positive() {
                if certificate
                    .bound(&ss.system, &objective)
                    .is_none_or(|b| b.is_positive())
                {
                    return Err(Error::InternalInconsistency(
                        "t <= 0 certificate does not replay".into(),
                    ));
                }
                StateResult::Infeasible {
                    obstruction: Obstruction::NotFaithful,
                    certificate,
                }
            } else {
                let state = StateVector {
                    values: point[..ea.size()].to_vec(),
                };
                let check = verify_state(ea, &state, mode);
                if !check.ok() {
                    return Err(Error::InternalInconsistency(format!(
                        "solver state fails verification: {:?}",
                        check.violation
                    )));
                }
                StateResult::Found {
                    state,
                    t_star: ss.t_var.map(|_| value),
                }
            }
        }
    };
    Ok(StateQuery { mode, result })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateViolation {
    /// Value outside `[0, 1]`, or the vector has the wrong length.
    Range(Element),
    Zero,
    Unit,
    Additivity(Element, Element, Element),
    NotFaithful(Element),
    /// `ω(x ∨ y) > ω(x) + ω(y)`.
    Subadditivity(Element, Element),
    /// Exactly one of the subadditive and valuation forms holds.
    FormsDisagree,
    NotALattice(Element, Element),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateCheck {
    pub violation: Option<StateViolation>,
    /// For subadditive modes: (inequality form holds, valuation form holds).
    pub subadditive_forms: Option<(bool, bool)>,
}

impl StateCheck {
    pub fn ok(&self) -> bool {
        self.violation.is_none()
    }
}

/// Replays every defining condition of the requested mode against `ω`.
pub fn verify_state(ea: &EffectAlgebra, omega: &StateVector, mode: StateMode) -> StateCheck {
    let fail = |v| StateCheck {
        violation: Some(v),
        subadditive_forms: None,
    };
    let n = ea.size();
    if omega.values.len() != n {
        return fail(StateViolation::Range(omega.values.len().min(n)));
    }
    let w = |x: Element| &omega.values[x];
    if let Some(x) = (0..n).find(|&x| w(x).is_negative() || *w(x) > Rational::one()) {
        return fail(StateViolation::Range(x));
    }
    if !w(ZERO).is_zero() {
        return fail(StateViolation::Zero);
    }
    if !w(ea.one()).is_one() {
        return fail(StateViolation::Unit);
    }
    if let Some((x, y, z)) = ea.table().defined_sums().find(|&(x, y, z)| w(x) + w(y) != *w(z)) {
        return fail(StateViolation::Additivity(x, y, z));
    }
    if mode.is_faithful() {
        if let Some(x) = (1..n).find(|&x| !w(x).is_positive()) {
            return fail(StateViolation::NotFaithful(x));
        }
    }
    if !mode.is_subadditive() {
        return StateCheck {
            violation: None,
            subadditive_forms: None,
        };
    }
    let lt: LatticeTables = ea.lattice_tables();
    if let Some((x, y)) = lt.counterexample {
        return fail(StateViolation::NotALattice(x, y));
    }
    let sub = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| *w(lt.join(x, y)) > w(x) + w(y));
    let val = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .find(|&(x, y)| lt.meet(x, y) == ZERO && *w(lt.join(x, y)) != w(x) + w(y));
    let forms = (sub.is_none(), val.is_none());
    let violation = match (sub, val) {
        (None, None) => None,
        (Some((x, y)), Some(_)) => Some(StateViolation::Subadditivity(x, y)),
        _ => Some(StateViolation::FormsDisagree),
    };
    StateCheck {
        violation,
        subadditive_forms: Some(forms),
    }
}

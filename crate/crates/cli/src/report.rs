//! The machine-readable analysis report.
//!
//! All collections are emitted in element-index order, so the same input
//! always serializes to the same bytes. Rationals are written `p/q`.

use anyhow::{anyhow, Result};
use ealab_core::lp::{integer, Certificate, Rational};
use ealab_core::states::{
    find_state, state_system, verify_state, Obstruction, RowOrigin, StateMode, StateResult, StateVector,
};
use ealab_core::{validate_axioms, EffectAlgebra, ElementSet, LatticeEffectAlgebra};
use serde::{Deserialize, Serialize};

use crate::format::NamedTable;

pub const SCHEMA: &str = "ealab-analysis";
pub const VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub schema: String,
    pub version: u32,
    pub size: usize,
    pub names: Vec<String>,
    pub one: String,
    pub axioms: AxiomSection,
    pub order: Option<OrderSection>,
    pub lattice: Option<LatticeSection>,
    pub structure: Option<StructureSection>,
    pub central_atom_conditions: Option<CentralAtomConditions>,
    pub decomposition: Option<DecompositionSection>,
    pub states: Vec<StateSection>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomSection {
    pub passed: bool,
    pub violations: Vec<ViolationEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationEntry {
    pub axiom: String,
    pub witness: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderSection {
    /// `[x, x']` for every element.
    pub complement: Vec<[String; 2]>,
    /// `[x, ord(x)]` for every nonzero element.
    pub ord: Vec<(String, usize)>,
    pub atoms: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeSection {
    pub is_lattice: bool,
    /// A pair without a join or meet.
    pub counterexample: Option<[String; 2]>,
    pub modular: Option<bool>,
    pub distributive: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureSection {
    pub sharp: Vec<String>,
    pub blocks: Vec<Vec<String>>,
    pub compat_center: Vec<String>,
    pub compat_center_is_boolean: bool,
    pub compat_center_within_sharp: bool,
    pub center: Vec<String>,
    pub center_is_boolean: bool,
    pub central_atoms: Vec<String>,
    pub is_mv: bool,
    pub is_irreducible: bool,
    pub sharply_dominating: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CentralAtomConditions {
    pub center_atomic_with_unit_join: bool,
    pub atoms_below_central_atoms: bool,
    pub subdirect_embedding: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionSection {
    pub central_atoms: Vec<String>,
    pub factor_sizes: Vec<usize>,
    pub factors: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateSection {
    pub mode: String,
    pub found: bool,
    /// `[x, ω(x)]` for every element.
    pub state: Option<Vec<[String; 2]>>,
    pub t_star: Option<String>,
    pub obstruction: Option<String>,
    pub certificate: Option<Vec<CertificateRow>>,
}

/// A nonzero multiplier of the certificate, with the row it scales.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateRow {
    pub row: usize,
    pub origin: String,
    pub multiplier: String,
}

fn set_names(t: &NamedTable, s: &ElementSet) -> Vec<String> {
    t.names_of(s.iter())
}

pub fn origin_text(t: &NamedTable, o: RowOrigin) -> String {
    let n = |x| t.name(x);
    match o {
        RowOrigin::Zero => "zero".into(),
        RowOrigin::Unit => "unit".into(),
        RowOrigin::Bound(x) => format!("bound {}", n(x)),
        RowOrigin::Sum(x, y, z) => format!("sum {} {} {}", n(x), n(y), n(z)),
        RowOrigin::Valuation(x, y, z) => format!("valuation {} {} {}", n(x), n(y), n(z)),
        RowOrigin::FaithfulAtom(a) => format!("atom {}", n(a)),
    }
}

pub fn build_report(t: &NamedTable) -> Result<AnalysisReport> {
    let axioms = validate_axioms(&t.table);
    let mut report = AnalysisReport {
        schema: SCHEMA.into(),
        version: VERSION,
        size: t.table.size(),
        names: t.names.clone(),
        one: t.name(t.table.one()).into(),
        axioms: AxiomSection {
            passed: axioms.passed(),
            violations: axioms
                .violations
                .iter()
                .map(|v| ViolationEntry {
                    axiom: v.axiom.tag().into(),
                    witness: t.names_of(v.witness.iter().copied()),
                })
                .collect(),
        },
        order: None,
        lattice: None,
        structure: None,
        central_atom_conditions: None,
        decomposition: None,
        states: Vec::new(),
    };
    if !axioms.passed() {
        return Ok(report);
    }
    let ea = EffectAlgebra::new(t.table.clone())?;
    report.order = Some(OrderSection {
        complement: ea
            .elements()
            .map(|x| [t.name(x).into(), t.name(ea.complement(x)).into()])
            .collect(),
        ord: ea
            .elements()
            .skip(1)
            .map(|x| Ok((t.name(x).to_string(), ea.ord_of(x)?)))
            .collect::<Result<_>>()?,
        atoms: t.names_of(ea.atoms()),
    });
    for mode in [StateMode::Any, StateMode::Faithful] {
        report.states.push(state_section(t, &ea, mode)?);
    }
    let lt = ea.lattice_tables();
    let Some(lea) = lattice(&ea) else {
        let (x, y) = lt.counterexample.expect("not a lattice");
        report.lattice = Some(LatticeSection {
            is_lattice: false,
            counterexample: Some([t.name(x).into(), t.name(y).into()]),
            modular: None,
            distributive: None,
        });
        return Ok(report);
    };
    report.lattice = Some(LatticeSection {
        is_lattice: true,
        counterexample: None,
        modular: Some(lt.is_modular(ea.poset())?),
        distributive: Some(lt.is_distributive()?),
    });
    let s = lea.structure_report()?;
    let comp: Vec<_> = lea.elements().map(|x| lea.complement(x)).collect();
    let boolean = |set: &ElementSet| lea.lattice().is_boolean_subalgebra(lea.poset(), &comp, set);
    report.structure = Some(StructureSection {
        sharp: set_names(t, &s.sharp),
        blocks: s.blocks.iter().map(|b| set_names(t, b)).collect(),
        compat_center: set_names(t, &s.compat_center),
        compat_center_is_boolean: boolean(&s.compat_center)?,
        compat_center_within_sharp: s.compat_center.is_subset(&s.sharp),
        center: set_names(t, &s.center),
        center_is_boolean: boolean(&s.center)?,
        central_atoms: t.names_of(s.central_atoms.iter().copied()),
        is_mv: s.is_mv,
        is_irreducible: s.is_irreducible,
        sharply_dominating: s.sharply_dominating,
    });
    let l = lea.central_atom_conditions(&s.center)?;
    report.central_atom_conditions = Some(CentralAtomConditions {
        center_atomic_with_unit_join: l.center_atomic_with_unit_join,
        atoms_below_central_atoms: l.atoms_below_central_atoms,
        subdirect_embedding: l.subdirect_embedding,
    });
    let d = lea.decompose()?;
    report.decomposition = Some(DecompositionSection {
        central_atoms: t.names_of(d.central_atoms.iter().copied()),
        factor_sizes: d.factor_sizes(),
        factors: d
            .factors
            .iter()
            .map(|f| t.names_of(f.elements.iter().copied()))
            .collect(),
    });
    for mode in [StateMode::Subadditive, StateMode::FaithfulSubadditive] {
        report.states.push(state_section(t, &ea, mode)?);
    }
    Ok(report)
}

fn lattice(ea: &EffectAlgebra) -> Option<LatticeEffectAlgebra> {
    ea.clone().into_lattice().ok()
}

pub fn state_section(t: &NamedTable, ea: &EffectAlgebra, mode: StateMode) -> Result<StateSection> {
    let q = find_state(ea, mode)?;
    Ok(match q.result {
        StateResult::Found { state, t_star } => StateSection {
            mode: mode.name().into(),
            found: true,
            state: Some(
                ea.elements()
                    .map(|x| [t.name(x).into(), state.get(x).to_string()])
                    .collect(),
            ),
            t_star: t_star.map(|v| v.to_string()),
            obstruction: None,
            certificate: None,
        },
        StateResult::Infeasible {
            obstruction,
            certificate,
        } => {
            let ss = state_system(ea, mode)?;
            StateSection {
                mode: mode.name().into(),
                found: false,
                state: None,
                t_star: None,
                obstruction: Some(
                    match obstruction {
                        Obstruction::NoState => "no_state",
                        Obstruction::NotFaithful => "not_faithful",
                    }
                    .into(),
                ),
                certificate: Some(
                    certificate
                        .multipliers
                        .iter()
                        .enumerate()
                        .filter(|(_, m)| **m != integer(0))
                        .map(|(row, m)| CertificateRow {
                            row,
                            origin: origin_text(t, ss.origins[row]),
                            multiplier: m.to_string(),
                        })
                        .collect(),
                ),
            }
        }
    })
}

fn parse_rational(s: &str) -> Result<Rational> {
    s.parse().map_err(|_| anyhow!("bad rational `{s}`"))
}

/// Checks `report` against `t`: every predicate is recomputed, every state
/// is re-verified and every certificate is replayed against a freshly built
/// state system. Returns the list of discrepancies.
pub fn verify_report(report: &AnalysisReport, t: &NamedTable) -> Result<Vec<String>> {
    let mut problems = Vec::new();
    if report.schema != SCHEMA || report.version != VERSION {
        problems.push(format!("unsupported schema {} v{}", report.schema, report.version));
        return Ok(problems);
    }
    let fresh = build_report(t)?;
    macro_rules! same {
        ($($field:ident),*) => {$(
            if report.$field != fresh.$field {
                problems.push(format!("`{}` does not match a recomputation", stringify!($field)));
            }
        )*};
    }
    same!(
        size,
        names,
        one,
        axioms,
        order,
        lattice,
        structure,
        central_atom_conditions,
        decomposition
    );
    if !fresh.axioms.passed {
        return Ok(problems);
    }
    let ea = EffectAlgebra::new(t.table.clone())?;
    if report.states.len() != fresh.states.len() {
        problems.push("state queries do not match a recomputation".into());
    }
    for s in &report.states {
        if let Err(e) = replay_state(t, &ea, s) {
            problems.push(format!("state `{}`: {e}", s.mode));
        }
    }
    Ok(problems)
}

fn replay_state(t: &NamedTable, ea: &EffectAlgebra, s: &StateSection) -> Result<()> {
    let mode = StateMode::from_name(&s.mode).ok_or_else(|| anyhow!("unknown mode"))?;
    if s.found {
        let pairs = s.state.as_ref().ok_or_else(|| anyhow!("found without a state"))?;
        if pairs.len() != ea.size() || pairs.iter().zip(&t.names).any(|([n, _], m)| n != m) {
            return Err(anyhow!("state does not list the elements in order"));
        }
        let values = pairs
            .iter()
            .map(|[_, v]| parse_rational(v))
            .collect::<Result<Vec<_>>>()?;
        let state = StateVector { values };
        let check = verify_state(ea, &state, mode);
        if let Some(v) = check.violation {
            return Err(anyhow!("state fails verification: {v:?}"));
        }
        if mode.is_faithful() {
            let t_star = parse_rational(s.t_star.as_deref().ok_or_else(|| anyhow!("missing t*"))?)?;
            let min_atom = ea.atoms().into_iter().map(|a| state.get(a).clone()).min();
            if t_star <= integer(0) || min_atom != Some(t_star) {
                return Err(anyhow!("t* is not the least atom value"));
            }
        }
        return Ok(());
    }
    let ss = state_system(ea, mode)?;
    let mut multipliers = vec![integer(0); ss.system.constraints.len()];
    for r in s
        .certificate
        .as_ref()
        .ok_or_else(|| anyhow!("infeasible without a certificate"))?
    {
        if r.row >= multipliers.len() || origin_text(t, ss.origins[r.row]) != r.origin {
            return Err(anyhow!("certificate row {} does not match the system", r.row));
        }
        multipliers[r.row] = parse_rational(&r.multiplier)?;
    }
    let cert = Certificate { multipliers };
    let ok = match s.obstruction.as_deref() {
        Some("no_state") => cert.proves_infeasible(&ss.system),
        Some("not_faithful") => cert.bound(&ss.system, &ss.objective()).is_some_and(|b| b <= integer(0)),
        _ => false,
    };
    if ok {
        Ok(())
    } else {
        Err(anyhow!("certificate does not replay"))
    }
}

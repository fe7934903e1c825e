//! Graphviz output.

use std::fmt::Write as _;

use ealab_core::{EffectAlgebra, LatticeEffectAlgebra};

use crate::format::NamedTable;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn nodes(out: &mut String, t: &NamedTable) {
    for name in &t.names {
        writeln!(out, "  {};", quote(name)).unwrap();
    }
}

/// Covering relation of the induced order, drawn bottom to top.
pub fn hasse(t: &NamedTable, ea: &EffectAlgebra) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    nodes(&mut out, t);
    for (a, b) in ea.poset().covers() {
        writeln!(out, "  {} -> {};", quote(t.name(a)), quote(t.name(b))).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Compatibility graph on the elements other than 0 and 1, which are
/// compatible with everything.
pub fn compatibility(t: &NamedTable, lea: &LatticeEffectAlgebra) -> String {
    let mut out = String::from("graph compatibility {\n");
    nodes(&mut out, t);
    let one = lea.one();
    for x in 1..lea.size() {
        for y in x + 1..lea.size() {
            if x != one && y != one && lea.compatible(x, y) {
                writeln!(out, "  {} -- {};", quote(t.name(x)), quote(t.name(y))).unwrap();
            }
        }
    }
    out.push_str("}\n");
    out
}

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use ealab::dot;
use ealab::expr;
use ealab::format::{parse_ea, parse_poset, serialize_ea, serialize_poset, NamedPoset, NamedTable};
use ealab::report::{build_report, origin_text, verify_report, AnalysisReport};
use ealab_core::enumerate::{are_isomorphic, census_row, enumerate_all, Filter, DEFAULT_BOUND};
use ealab_core::states::{find_state, state_system, StateMode, StateResult};
use ealab_core::{dedekind_macneille, validate_axioms, EffectAlgebra, Error as CoreError, LatticeEffectAlgebra};

/// Workbench for finite effect algebras.
#[derive(Parser)]
#[command(name = "ealab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the effect algebra axioms.
    Check { file: Option<String> },
    /// Full analysis, as text or as a JSON report.
    Analyze {
        file: Option<String>,
        /// Write the JSON report here (`-` for stdout).
        #[arg(long)]
        json: Option<String>,
        /// Replay a previously written report against the file.
        #[arg(long, value_name = "REPORT")]
        verify_report: Option<String>,
    },
    /// List the blocks (maximal sets of pairwise compatible elements).
    Blocks { file: Option<String> },
    /// Split into irreducible intervals over the central atoms.
    Decompose { file: Option<String> },
    /// Search for a state.
    State {
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = ModeArg::Any)]
        mode: ModeArg,
    },
    /// Build an algebra: `chain k`, `product f1 f2 ...`, `hsum f1 ...`,
    /// `from-oml file`, or a file; arguments may be parenthesized
    /// expressions.
    Construct {
        #[arg(required = true, num_args = 1.., allow_hyphen_values = true, trailing_var_arg = true)]
        expr: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dedekind-MacNeille completion of a poset file.
    Complete { file: Option<String> },
    /// Decide whether two algebras are isomorphic.
    Iso { first: String, second: String },
    /// Write every algebra of one size, up to isomorphism.
    Enumerate {
        #[arg(long)]
        size: usize,
        #[arg(long, value_enum, default_value_t = FilterArg::All)]
        filter: FilterArg,
        #[arg(long)]
        out: PathBuf,
        /// Raise the size limit.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        max_size: usize,
    },
    /// Graphviz output of the Hasse diagram or the compatibility graph.
    ExportDot {
        file: Option<String>,
        #[arg(long, value_enum, default_value_t = GraphArg::Hasse)]
        graph: GraphArg,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Any,
    Faithful,
    Subadditive,
    FaithfulSubadditive,
}

impl From<ModeArg> for StateMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Any => StateMode::Any,
            ModeArg::Faithful => StateMode::Faithful,
            ModeArg::Subadditive => StateMode::Subadditive,
            ModeArg::FaithfulSubadditive => StateMode::FaithfulSubadditive,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FilterArg {
    All,
    Lattice,
    Mv,
    Modular,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::All => Filter::All,
            FilterArg::Lattice => Filter::Lattice,
            FilterArg::Mv => Filter::Mv,
            FilterArg::Modular => Filter::Modular,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphArg {
    Hasse,
    Compat,
}

/// Outcome of a command that ran to completion.
enum Verdict {
    Holds,
    Fails,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(Verdict::Holds) => ExitCode::SUCCESS,
        Ok(Verdict::Fails) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

/// Core errors saying the input lacks a property exit with 1; everything
/// else (bad files, bad arguments) with 2.
fn exit_code(e: &anyhow::Error) -> u8 {
    let property = e.chain().any(|c| {
        matches!(
            c.downcast_ref::<CoreError>(),
            Some(
                CoreError::NotAnEffectAlgebra(_)
                    | CoreError::NotALattice(..)
                    | CoreError::NotOrthomodular(..)
                    | CoreError::NotOrthocomplemented(_)
            )
        )
    });
    if property {
        1
    } else {
        2
    }
}

fn read_input(path: Option<&str>) -> Result<String> {
    match path {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s).context("reading stdin")?;
            Ok(s)
        }
        Some(p) => fs::read_to_string(p).with_context(|| format!("reading {p}")),
    }
}

fn load(path: Option<&str>) -> Result<NamedTable> {
    let text = read_input(path)?;
    parse_ea(&text).with_context(|| format!("parsing {}", path.unwrap_or("stdin")))
}

/// The algebra, or `None` after reporting the failed axioms.
fn algebra(t: &NamedTable) -> Result<Option<EffectAlgebra>> {
    let report = validate_axioms(&t.table);
    if !report.passed() {
        for v in &report.violations {
            println!(
                "violation {}: witness {}",
                v.axiom.tag(),
                t.names_of(v.witness.iter().copied()).join(" ")
            );
        }
        eprintln!("not an effect algebra");
        return Ok(None);
    }
    Ok(Some(EffectAlgebra::new(t.table.clone())?))
}

fn lattice_algebra(t: &NamedTable) -> Result<Option<LatticeEffectAlgebra>> {
    let Some(ea) = algebra(t)? else {
        return Ok(None);
    };
    match ea.into_lattice() {
        Ok(l) => Ok(Some(l)),
        Err(CoreError::NotALattice(x, y)) => {
            eprintln!("not a lattice: {} and {} have no join or meet", t.name(x), t.name(y));
            Ok(None)
        }
        Err(e) => Err(e.into()),
    }
}

fn braces(names: Vec<String>) -> String {
    format!("{{{}}}", names.join(", "))
}

fn write_output(path: &str, text: &str) -> Result<()> {
    if path == "-" {
        io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(path, text).with_context(|| format!("writing {path}"))
    }
}

fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Check { file } => {
            let t = load(file.as_deref())?;
            Ok(match algebra(&t)? {
                Some(_) => {
                    println!("ok: effect algebra with {} elements", t.table.size());
                    Verdict::Holds
                }
                None => Verdict::Fails,
            })
        }
        Command::Analyze {
            file,
            json,
            verify_report: verify,
        } => {
            let t = load(file.as_deref())?;
            if let Some(path) = verify {
                let text = fs::read_to_string(&path).with_context(|| format!("reading {path}"))?;
                let report: AnalysisReport = serde_json::from_str(&text).with_context(|| format!("parsing {path}"))?;
                let problems = verify_report(&report, &t)?;
                for p in &problems {
                    println!("mismatch: {p}");
                }
                if problems.is_empty() {
                    println!("report verified");
                    return Ok(Verdict::Holds);
                }
                return Ok(Verdict::Fails);
            }
            let report = build_report(&t)?;
            match json {
                Some(path) => write_output(&path, &(serde_json::to_string_pretty(&report)? + "\n"))?,
                None => print_summary(&report),
            }
            Ok(if report.axioms.passed {
                Verdict::Holds
            } else {
                Verdict::Fails
            })
        }
        Command::Blocks { file } => {
            let t = load(file.as_deref())?;
            let Some(lea) = lattice_algebra(&t)? else {
                return Ok(Verdict::Fails);
            };
            for b in lea.blocks()? {
                println!("{}", braces(t.names_of(b.iter())));
            }
            Ok(Verdict::Holds)
        }
        Command::Decompose { file } => {
            let t = load(file.as_deref())?;
            let Some(lea) = lattice_algebra(&t)? else {
                return Ok(Verdict::Fails);
            };
            let d = lea.decompose()?;
            println!("central atoms: {}", braces(t.names_of(d.central_atoms.iter().copied())));
            for (p, f) in d.central_atoms.iter().zip(&d.factors) {
                println!(
                    "[0, {}] ({} elements): {}",
                    t.name(*p),
                    f.table.size(),
                    braces(t.names_of(f.elements.iter().copied()))
                );
            }
            Ok(Verdict::Holds)
        }
        Command::State { file, mode } => {
            let t = load(file.as_deref())?;
            let Some(ea) = algebra(&t)? else {
                return Ok(Verdict::Fails);
            };
            let mode = StateMode::from(mode);
            let q = find_state(&ea, mode)?;
            match q.result {
                StateResult::Found { state, t_star } => {
                    println!("{mode} state:");
                    for x in ea.elements() {
                        println!("  {} = {}", t.name(x), state.get(x));
                    }
                    if let Some(v) = t_star {
                        println!("least atom value: {v}");
                    }
                    Ok(Verdict::Holds)
                }
                StateResult::Infeasible { certificate, .. } => {
                    let ss = state_system(&ea, mode)?;
                    println!("no {mode} state; certificate:");
                    for (row, m) in certificate.multipliers.iter().enumerate() {
                        if *m != ealab_core::lp::integer(0) {
                            println!("  {m} * [{}]", origin_text(&t, ss.origins[row]));
                        }
                    }
                    Ok(Verdict::Fails)
                }
            }
        }
        Command::Construct { expr: words, out } => {
            let e = expr::parse(&expr::tokenize(&words))?;
            let read = |p: &str| fs::read_to_string(p).with_context(|| format!("reading {p}"));
            let t = expr::build(&e, &read)?;
            let text = serialize_ea(&t);
            match out {
                Some(p) => fs::write(&p, text).with_context(|| format!("writing {}", p.display()))?,
                None => print!("{text}"),
            }
            Ok(Verdict::Holds)
        }
        Command::Complete { file } => {
            let text = read_input(file.as_deref())?;
            let p = parse_poset(&text)?;
            let r = dedekind_macneille(&p.poset);
            let mut names = vec![String::new(); r.cuts.len()];
            for (x, &c) in r.embedding.iter().enumerate() {
                names[c] = p.names[x].clone();
            }
            for (c, cut) in r.cuts.iter().enumerate() {
                if names[c].is_empty() {
                    let members: Vec<&str> = cut.iter().map(|x| p.names[x].as_str()).collect();
                    names[c] = format!("{{{}}}", members.join(","));
                }
            }
            println!("# {} elements added", r.added_count);
            print!(
                "{}",
                serialize_poset(&NamedPoset {
                    poset: r.completed,
                    names,
                    orth: None,
                })
            );
            Ok(Verdict::Holds)
        }
        Command::Iso { first, second } => {
            let (a, b) = (load(Some(&first))?, load(Some(&second))?);
            let (Some(ea), Some(eb)) = (algebra(&a)?, algebra(&b)?) else {
                return Ok(Verdict::Fails);
            };
            match are_isomorphic(&ea, &eb) {
                Some(m) => {
                    println!("isomorphic");
                    for (x, &y) in m.mapping.iter().enumerate() {
                        println!("  {} -> {}", a.name(x), b.name(y));
                    }
                    Ok(Verdict::Holds)
                }
                None => {
                    println!("not isomorphic");
                    Ok(Verdict::Fails)
                }
            }
        }
        Command::Enumerate {
            size,
            filter,
            out,
            max_size,
        } => {
            let filter = Filter::from(filter);
            let found = enumerate_all(size, filter, max_size)?;
            write_corpus(&out, size, filter, &found)?;
            println!(
                "{} algebras of size {size} ({}) written to {}",
                found.len(),
                filter.name(),
                out.display()
            );
            Ok(Verdict::Holds)
        }
        Command::ExportDot { file, graph } => {
            let t = load(file.as_deref())?;
            let text = match graph {
                GraphArg::Hasse => {
                    let Some(ea) = algebra(&t)? else {
                        return Ok(Verdict::Fails);
                    };
                    dot::hasse(&t, &ea)
                }
                GraphArg::Compat => {
                    let Some(lea) = lattice_algebra(&t)? else {
                        return Ok(Verdict::Fails);
                    };
                    dot::compatibility(&t, &lea)
                }
            };
            print!("{text}");
            Ok(Verdict::Holds)
        }
    }
}

const CENSUS_HEADER: &str =
    "size\tcount_total\tcount_lattice\tcount_mv\tcount_modular\tcount_irreducible\tcount_with_faithful_state";

fn write_corpus(dir: &Path, size: usize, filter: Filter, found: &[ealab_core::EffectAlgebraTable]) -> Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    for (i, t) in found.iter().enumerate() {
        let named = NamedTable::with_default_names(t.clone());
        let path = dir.join(format!("size{size}-{}-{:03}.ea", filter.name(), i + 1));
        fs::write(&path, serialize_ea(&named)).with_context(|| format!("writing {}", path.display()))?;
    }
    // the census always describes the whole size class
    let all = if filter == Filter::All {
        found.to_vec()
    } else {
        enumerate_all(size, Filter::All, size)?
    };
    let r = census_row(size, &all)?;
    let row = format!(
        "{}\t{}\t{}\t{}\t{}\t{}\t{}",
        r.size,
        r.count_total,
        r.count_lattice,
        r.count_mv,
        r.count_modular,
        r.count_irreducible,
        r.count_with_faithful_state
    );
    let path = dir.join("census.tsv");
    fs::write(&path, format!("{CENSUS_HEADER}\n{row}\n")).with_context(|| format!("writing {}", path.display()))?;
    println!("{CENSUS_HEADER}\n{row}");
    Ok(())
}

fn print_summary(r: &AnalysisReport) {
    println!("elements: {}", r.size);
    if !r.axioms.passed {
        for v in &r.axioms.violations {
            println!("violation {}: witness {}", v.axiom, v.witness.join(" "));
        }
        return;
    }
    if let Some(o) = &r.order {
        println!("atoms: {}", braces(o.atoms.clone()));
    }
    if let Some(l) = &r.lattice {
        match &l.counterexample {
            Some([x, y]) => println!("lattice: no ({x}, {y})"),
            None => println!(
                "lattice: yes, modular: {}, distributive: {}",
                yes(l.modular.unwrap_or(false)),
                yes(l.distributive.unwrap_or(false))
            ),
        }
    }
    if let Some(s) = &r.structure {
        println!("sharp: {}", braces(s.sharp.clone()));
        println!("blocks: {}", s.blocks.len());
        for b in &s.blocks {
            println!("  {}", braces(b.clone()));
        }
        println!(
            "compatibility center: {} (boolean: {}, all sharp: {})",
            braces(s.compat_center.clone()),
            yes(s.compat_center_is_boolean),
            yes(s.compat_center_within_sharp)
        );
        println!("center: {}", braces(s.center.clone()));
        println!("mv: {}, irreducible: {}", yes(s.is_mv), yes(s.is_irreducible));
    }
    if let Some(d) = &r.decomposition {
        let sizes: Vec<String> = d.factor_sizes.iter().map(usize::to_string).collect();
        println!("decomposition: {}", sizes.join(" x "));
    }
    for s in &r.states {
        println!("{} state: {}", s.mode, if s.found { "found" } else { "none" });
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

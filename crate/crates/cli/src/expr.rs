//! Construction expressions for `ealab construct`, e.g.
//! `product (chain 3) (hsum (chain 3) (chain 3))`.
//!
//! ```text
//! expr    := operand | "product" operand+ | "hsum" operand+
//! operand := "(" expr ")" | "chain" k | "from-oml" path | path
//! ```

use anyhow::{anyhow, bail, Context, Result};
use ealab_core::construct::{chain, direct_product, horizontal_sum, horizontal_sum_layout, oml_to_ea, product_coords};
use ealab_core::lp::rational;

use crate::format::{parse_poset, NamedTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Chain(usize),
    Product(Vec<Expr>),
    Hsum(Vec<Expr>),
    FromOml(String),
    File(String),
}

pub fn tokenize(args: &[String]) -> Vec<String> {
    let joined = args.join(" ").replace('(', " ( ").replace(')', " ) ");
    joined.split_whitespace().map(str::to_string).collect()
}

pub fn parse(tokens: &[String]) -> Result<Expr> {
    let mut pos = 0;
    let e = parse_expr(tokens, &mut pos)?;
    if pos != tokens.len() {
        bail!("unexpected `{}` in construction", tokens[pos]);
    }
    Ok(e)
}

fn parse_expr(t: &[String], pos: &mut usize) -> Result<Expr> {
    match t.get(*pos).map(String::as_str) {
        Some(op @ ("product" | "hsum")) => {
            *pos += 1;
            let mut args = Vec::new();
            while t.get(*pos).is_some_and(|s| s != ")") {
                args.push(parse_operand(t, pos)?);
            }
            if args.is_empty() {
                bail!("`{op}` needs at least one argument");
            }
            Ok(if op == "product" {
                Expr::Product(args)
            } else {
                Expr::Hsum(args)
            })
        }
        _ => parse_operand(t, pos),
    }
}

fn parse_operand(t: &[String], pos: &mut usize) -> Result<Expr> {
    let tok = t.get(*pos).ok_or_else(|| anyhow!("construction ended early"))?.as_str();
    *pos += 1;
    match tok {
        "(" => {
            let e = parse_expr(t, pos)?;
            if t.get(*pos).map(String::as_str) != Some(")") {
                bail!("missing `)`");
            }
            *pos += 1;
            Ok(e)
        }
        ")" => bail!("unexpected `)`"),
        "chain" => {
            let k = t.get(*pos).ok_or_else(|| anyhow!("`chain` needs a size"))?;
            *pos += 1;
            Ok(Expr::Chain(k.parse().with_context(|| format!("bad chain size `{k}`"))?))
        }
        "from-oml" => {
            let p = t.get(*pos).ok_or_else(|| anyhow!("`from-oml` needs a file"))?;
            *pos += 1;
            Ok(Expr::FromOml(p.clone()))
        }
        "product" | "hsum" => bail!("parenthesize nested `{tok}`"),
        path => Ok(Expr::File(path.to_string())),
    }
}

/// Builds the algebra. Files are read through `read`; element names record
/// where each element came from.
pub fn build(e: &Expr, read: &dyn Fn(&str) -> Result<String>) -> Result<NamedTable> {
    Ok(match e {
        Expr::Chain(k) => {
            let table = chain(*k)?;
            let names = (0..*k).map(|i| rational(i as i64, *k as i64 - 1).to_string()).collect();
            NamedTable { table, names }
        }
        Expr::Product(fs) => {
            let parts = fs.iter().map(|f| build(f, read)).collect::<Result<Vec<_>>>()?;
            let tables: Vec<_> = parts.iter().map(|p| p.table.clone()).collect();
            let sizes: Vec<usize> = tables.iter().map(|t| t.size()).collect();
            let table = direct_product(&tables)?;
            let names = if parts.len() == 1 {
                parts[0].names.clone()
            } else {
                table
                    .elements()
                    .map(|x| {
                        let coords = product_coords(&sizes, x);
                        let inner: Vec<&str> = coords.iter().zip(&parts).map(|(&c, p)| p.name(c)).collect();
                        format!("({})", inner.join(","))
                    })
                    .collect()
            };
            NamedTable { table, names }
        }
        Expr::Hsum(fs) => {
            let parts = fs.iter().map(|f| build(f, read)).collect::<Result<Vec<_>>>()?;
            let tables: Vec<_> = parts.iter().map(|p| p.table.clone()).collect();
            let table = horizontal_sum(&tables)?;
            let names = horizontal_sum_layout(&tables)
                .into_iter()
                .map(|(j, x)| {
                    let t = &tables[j];
                    let base = parts[j].name(x);
                    if x == 0 || x == t.one() || parts.len() == 1 {
                        base.to_string()
                    } else {
                        format!("{base}_{}", j + 1)
                    }
                })
                .collect();
            NamedTable { table, names }
        }
        Expr::FromOml(path) => {
            let p = parse_poset(&read(path)?).with_context(|| format!("reading {path}"))?;
            let orth = p.orth.as_ref().ok_or_else(|| anyhow!("{path}: no `orth:` lines"))?;
            NamedTable {
                table: oml_to_ea(&p.poset, orth)?,
                names: p.names,
            }
        }
        Expr::File(path) => crate::format::parse_ea(&read(path)?).with_context(|| format!("reading {path}"))?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &str) -> Vec<String> {
        s.split(' ').map(str::to_string).collect()
    }

    fn no_files(_: &str) -> Result<String> {
        bail!("no files here")
    }

    #[test]
    fn nested() {
        let e = parse(&tokenize(&words("product (chain 3) (hsum (chain 3) (chain 3))"))).unwrap();
        assert_eq!(
            e,
            Expr::Product(vec![Expr::Chain(3), Expr::Hsum(vec![Expr::Chain(3), Expr::Chain(3)])])
        );
        let t = build(&e, &no_files).unwrap();
        assert_eq!(t.table.size(), 12);
        assert_eq!(t.names[..4], ["(0,0)", "(0,1/2_1)", "(0,1)", "(0,1/2_2)"]);
    }

    #[test]
    fn bare_chains_as_operands() {
        let e = parse(&tokenize(&words("product chain 2 chain 2"))).unwrap();
        assert_eq!(e, Expr::Product(vec![Expr::Chain(2), Expr::Chain(2)]));
    }

    #[test]
    fn errors() {
        assert!(parse(&tokenize(&words("product"))).is_err());
        assert!(parse(&tokenize(&words("(chain 3"))).is_err());
        assert!(parse(&tokenize(&words("chain x"))).is_err());
        assert!(parse(&tokenize(&words("chain 3 chain 3"))).is_err());
        assert!(build(&Expr::Hsum(vec![Expr::Chain(2)]), &no_files).is_err());
    }
}

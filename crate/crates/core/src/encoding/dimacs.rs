//! DIMACS and QDIMACS text, with `c varmap` comment lines naming each
//! variable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};

use super::cnf::CnfFormula;
use super::formula::{QuantifiedFormula, Quantifier, VarId};

fn write_body(out: &mut String, cnf: &CnfFormula, prefix: &[(Quantifier, Vec<u32>)]) {
    for (n, v) in cnf.vars.iter() {
        let _ = writeln!(out, "c varmap {n} {v}");
    }
    let _ = writeln!(out, "p cnf {} {}", cnf.var_count(), cnf.clauses.len());
    for (q, vars) in prefix {
        out.push(q.letter());
        for v in vars {
            let _ = write!(out, " {v}");
        }
        out.push_str(" 0\n");
    }
    for clause in &cnf.clauses {
        for l in clause {
            let _ = write!(out, "{l} ");
        }
        out.push_str("0\n");
    }
}

pub fn emit_dimacs(cnf: &CnfFormula) -> String {
    let mut out = String::new();
    write_body(&mut out, cnf, &[]);
    out
}

/// Clausifies the matrix of `qf` with the prefix variables numbered first,
/// in prefix order.
pub fn clausify(qf: &QuantifiedFormula) -> CnfFormula {
    let mut cnf = CnfFormula::new();
    for block in &qf.prefix {
        cnf.declare(&block.vars);
    }
    cnf.assert_formula(&qf.matrix.simplify());
    cnf
}

/// QDIMACS for `qf`. Adjacent blocks with the same quantifier and variable
/// kind share a line, empty blocks are dropped, and Tseitin variables form
/// an innermost existential block.
pub fn emit_qdimacs(qf: &QuantifiedFormula) -> String {
    let cnf = clausify(qf);
    let mut lines: Vec<(Quantifier, &'static str, Vec<u32>)> = Vec::new();
    for block in &qf.prefix {
        for v in &block.vars {
            let n = cnf.vars.get(v).expect("prefix variables are declared");
            match lines.last_mut() {
                Some((q, kind, vars)) if *q == block.quantifier && *kind == v.kind() => {
                    vars.push(n)
                }
                _ => lines.push((block.quantifier, v.kind(), vec![n])),
            }
        }
    }
    let aux = cnf.aux_vars();
    if !aux.is_empty() {
        lines.push((Quantifier::Exists, "aux", aux));
    }
    let prefix: Vec<(Quantifier, Vec<u32>)> = lines.into_iter().map(|(q, _, v)| (q, v)).collect();
    let mut out = String::new();
    write_body(&mut out, &cnf, &prefix);
    out
}

/// A parsed DIMACS or QDIMACS file.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Dimacs {
    pub num_vars: u32,
    pub clauses: Vec<Vec<i32>>,
    /// Quantifier lines, outermost first; empty for plain DIMACS.
    pub prefix: Vec<(Quantifier, Vec<u32>)>,
    /// Names recovered from `c varmap` lines.
    pub varmap: BTreeMap<u32, VarId>,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

fn parse(text: &str, quantified: bool) -> Result<Dimacs> {
    let mut out = Dimacs::default();
    let mut header: Option<(u32, usize)> = None;
    let mut pending: Vec<i32> = Vec::new();
    let mut pending_at = (0, 0);
    let mut quantified_vars: BTreeSet<u32> = BTreeSet::new();
    let mut last = (1, 1);

    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let toks = tokens(raw);
        let Some(&(col, first)) = toks.first() else {
            continue;
        };
        last = (ln, raw.chars().count() + 1);
        if first == "c" {
            if toks.get(1).map(|t| t.1) == Some("varmap") {
                let (Some(&(nc, n)), Some(&(vc, name)), None) =
                    (toks.get(2), toks.get(3), toks.get(4))
                else {
                    return Err(syntax(ln, col, "expected `c varmap <int> <variable>`"));
                };
                let n: u32 = n
                    .parse()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or_else(|| syntax(ln, nc, format!("bad variable number `{n}`")))?;
                let v: VarId = name
                    .parse()
                    .map_err(|_| syntax(ln, vc, format!("bad variable name `{name}`")))?;
                if out.varmap.insert(n, v).is_some() {
                    return Err(syntax(ln, nc, format!("variable {n} mapped twice")));
                }
            }
            continue;
        }
        if first == "p" {
            if header.is_some() {
                return Err(syntax(ln, col, "duplicate problem line"));
            }
            let [_, (fc, fmt), (vc, v), (cc, c)] = toks[..] else {
                return Err(syntax(ln, col, "expected `p cnf <vars> <clauses>`"));
            };
            if fmt != "cnf" {
                return Err(syntax(ln, fc, format!("unsupported format `{fmt}`")));
            }
            let v: u32 = v
                .parse()
                .map_err(|_| syntax(ln, vc, format!("bad variable count `{v}`")))?;
            if v > i32::MAX as u32 {
                return Err(syntax(ln, vc, "variable count out of range"));
            }
            let c: usize = c
                .parse()
                .map_err(|_| syntax(ln, cc, format!("bad clause count `{c}`")))?;
            out.num_vars = v;
            header = Some((v, c));
            continue;
        }
        let Some((num_vars, _)) = header else {
            return Err(syntax(ln, col, "content before the problem line"));
        };
        if first == "e" || first == "a" {
            if !quantified {
                return Err(syntax(ln, col, "quantifier line in a plain DIMACS file"));
            }
            if !out.clauses.is_empty() || !pending.is_empty() {
                return Err(syntax(ln, col, "quantifier line after clauses"));
            }
            let q = if first == "e" {
                Quantifier::Exists
            } else {
                Quantifier::Forall
            };
            let mut vars = Vec::new();
            let mut closed = false;
            for &(tc, t) in &toks[1..] {
                if closed {
                    return Err(syntax(ln, tc, "text after terminating 0"));
                }
                let n: u32 = t
                    .parse()
                    .map_err(|_| syntax(ln, tc, format!("bad variable `{t}`")))?;
                if n == 0 {
                    closed = true;
                    continue;
                }
                if n > num_vars {
                    return Err(syntax(
                        ln,
                        tc,
                        format!("variable {n} exceeds declared {num_vars}"),
                    ));
                }
                if !quantified_vars.insert(n) {
                    return Err(syntax(ln, tc, format!("variable {n} quantified twice")));
                }
                vars.push(n);
            }
            if !closed {
                return Err(syntax(
                    ln,
                    raw.chars().count() + 1,
                    "quantifier line not terminated by 0",
                ));
            }
            out.prefix.push((q, vars));
            continue;
        }
        for &(tc, t) in &toks {
            let l: i32 = t
                .parse()
                .map_err(|_| syntax(ln, tc, format!("bad literal `{t}`")))?;
            if l.unsigned_abs() > num_vars {
                return Err(syntax(
                    ln,
                    tc,
                    format!("literal {l} exceeds declared {num_vars} variables"),
                ));
            }
            if pending.is_empty() {
                pending_at = (ln, tc);
            }
            if l == 0 {
                out.clauses.push(std::mem::take(&mut pending));
            } else {
                pending.push(l);
            }
        }
    }
    let Some((_, expected)) = header else {
        return Err(syntax(last.0, last.1, "missing problem line"));
    };
    if !pending.is_empty() {
        return Err(syntax(
            pending_at.0,
            pending_at.1,
            "clause not terminated by 0",
        ));
    }
    if out.clauses.len() != expected {
        return Err(syntax(
            last.0,
            last.1,
            format!(
                "problem line declares {expected} clauses, found {}",
                out.clauses.len()
            ),
        ));
    }
    if let Some((&n, _)) = out.varmap.range(out.num_vars + 1..).next() {
        return Err(Error::Domain(format!(
            "varmap names variable {n} beyond the declared count"
        )));
    }
    Ok(out)
}

pub fn parse_dimacs(text: &str) -> Result<Dimacs> {
    parse(text, false)
}

pub fn parse_qdimacs(text: &str) -> Result<Dimacs> {
    parse(text, true)
}

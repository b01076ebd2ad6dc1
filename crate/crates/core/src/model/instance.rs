//! Line-oriented instance format.
//!
//! ```text
//! % fixed part
//! arg(a1).
//! u_arg(a6).
//! c_arg(a7).
//! att(a2,a1).
//! sym(a6,a4).
//! u_att(a5,a1).
//! c_att(a7,a5).
//! target(a1).
//! ```
//!
//! `%` starts a comment that runs to the end of the line. Repeated
//! statements are harmless.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::fmt::Write as _;

use super::{ArgSet, ArgumentId, ArgumentationFramework, CafParts, ControlAf};
use crate::error::{Error, Result};

/// One fact of the instance format.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    Arg(ArgumentId),
    UArg(ArgumentId),
    CArg(ArgumentId),
    Att(ArgumentId, ArgumentId),
    Sym(ArgumentId, ArgumentId),
    UAtt(ArgumentId, ArgumentId),
    CAtt(ArgumentId, ArgumentId),
    Target(ArgumentId),
}

impl Statement {
    fn predicate(&self) -> &'static str {
        match self {
            Statement::Arg(_) => "arg",
            Statement::UArg(_) => "u_arg",
            Statement::CArg(_) => "c_arg",
            Statement::Att(..) => "att",
            Statement::Sym(..) => "sym",
            Statement::UAtt(..) => "u_att",
            Statement::CAtt(..) => "c_att",
            Statement::Target(_) => "target",
        }
    }

    /// Statements that only make sense in a control framework.
    pub fn is_control_only(&self) -> bool {
        !matches!(
            self,
            Statement::Arg(_) | Statement::Att(..) | Statement::Target(_)
        )
    }
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Arg(a) | Statement::UArg(a) | Statement::CArg(a) | Statement::Target(a) => {
                write!(f, "{}({}).", self.predicate(), a)
            }
            Statement::Att(a, b)
            | Statement::Sym(a, b)
            | Statement::UAtt(a, b)
            | Statement::CAtt(a, b) => write!(f, "{}({},{}).", self.predicate(), a, b),
        }
    }
}

/// A parsed instance: the framework plus any `target(..)` facts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Instance {
    pub caf: ControlAf,
    pub targets: ArgSet,
}

struct Cursor {
    line_no: usize,
    chars: Vec<char>,
    pos: usize,
}

impl Cursor {
    fn new(line_no: usize, src: &str) -> Self {
        Cursor {
            line_no,
            chars: src.chars().collect(),
            pos: 0,
        }
    }

    fn column(&self) -> usize {
        self.pos + 1
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            line: self.line_no,
            column: self.column(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.pos += 1;
                Ok(())
            }
            Some(c) => Err(self.error(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.error(format!("expected `{want}`, found end of line"))),
        }
    }

    fn token(&mut self, what: &str) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == '_') {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.peek() {
                Some(c) => self.error(format!("expected {what}, found `{c}`")),
                None => self.error(format!("expected {what}, found end of line")),
            });
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }
}

fn parse_line(line_no: usize, line: &str) -> Result<Option<Statement>> {
    let body = match line.find('%') {
        Some(i) => &line[..i],
        None => line,
    };
    if body.trim().is_empty() {
        return Ok(None);
    }
    let mut cur = Cursor::new(line_no, body);
    cur.skip_ws();
    let pred_col = cur.column();
    let pred = cur.token("a predicate")?;
    let arity = match pred.as_str() {
        "arg" | "u_arg" | "c_arg" | "target" => 1,
        "att" | "sym" | "u_att" | "c_att" => 2,
        other => {
            return Err(Error::Syntax {
                line: line_no,
                column: pred_col,
                message: format!("unknown predicate `{other}`"),
            })
        }
    };
    cur.expect('(')?;
    let first = ArgumentId(cur.token("an argument name")?);
    let second = if arity == 2 {
        cur.expect(',')?;
        Some(ArgumentId(cur.token("an argument name")?))
    } else {
        None
    };
    cur.expect(')')?;
    cur.expect('.')?;
    cur.skip_ws();
    if let Some(c) = cur.peek() {
        return Err(cur.error(format!("unexpected `{c}` after statement")));
    }
    let stmt = match (pred.as_str(), second) {
        ("arg", None) => Statement::Arg(first),
        ("u_arg", None) => Statement::UArg(first),
        ("c_arg", None) => Statement::CArg(first),
        ("target", None) => Statement::Target(first),
        ("att", Some(b)) => Statement::Att(first, b),
        ("sym", Some(b)) => Statement::Sym(first, b),
        ("u_att", Some(b)) => Statement::UAtt(first, b),
        ("c_att", Some(b)) => Statement::CAtt(first, b),
        _ => unreachable!("arity checked above"),
    };
    Ok(Some(stmt))
}

/// Parses the statements of `text`, each tagged with its 1-based line.
pub fn parse_statements(text: &str) -> Result<Vec<(usize, Statement)>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if let Some(stmt) = parse_line(i + 1, line)? {
            out.push((i + 1, stmt));
        }
    }
    Ok(out)
}

/// Parses and validates a control framework instance.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let statements = parse_statements(text)?;
    let mut first_line: HashMap<String, usize> = HashMap::new();
    let mut parts = CafParts::default();
    let mut targets = BTreeSet::new();
    for (line, stmt) in statements {
        if let Statement::Sym(a, b) = &stmt {
            // the framework reports conflicts in normalised orientation
            let flipped = Statement::Sym(b.clone(), a.clone());
            first_line.entry(flipped.to_string()).or_insert(line);
        }
        first_line.entry(stmt.to_string()).or_insert(line);
        match stmt {
            Statement::Arg(a) => {
                parts.fixed_args.insert(a);
            }
            Statement::UArg(a) => {
                parts.uncertain_args.insert(a);
            }
            Statement::CArg(a) => {
                parts.control_args.insert(a);
            }
            Statement::Att(a, b) => {
                parts.fixed_attacks.insert((a, b));
            }
            Statement::Sym(a, b) => {
                parts.symmetric_conflicts.insert((a, b));
            }
            Statement::UAtt(a, b) => {
                parts.uncertain_attacks.insert((a, b));
            }
            Statement::CAtt(a, b) => {
                parts.control_attacks.insert((a, b));
            }
            Statement::Target(a) => {
                targets.insert(a);
            }
        }
    }
    let caf = ControlAf::new(parts).map_err(|e| match e {
        Error::Invariant {
            statement, reason, ..
        } => Error::Invariant {
            line: first_line.get(&statement).copied(),
            statement,
            reason,
        },
        other => other,
    })?;
    Ok(Instance { caf, targets })
}

/// Parses a plain framework; any control-only statement is an error.
///
/// `target(..)` facts are accepted and ignored.
pub fn parse_af(text: &str) -> Result<ArgumentationFramework> {
    let mut args = BTreeSet::new();
    let mut attacks = Vec::new();
    for (line, stmt) in parse_statements(text)? {
        if stmt.is_control_only() {
            return Err(Error::Invariant {
                statement: stmt.to_string(),
                line: Some(line),
                reason: "not a plain AF".into(),
            });
        }
        match stmt {
            Statement::Arg(a) => {
                args.insert(a);
            }
            Statement::Att(a, b) => attacks.push((line, a, b)),
            _ => {}
        }
    }
    for (line, a, b) in &attacks {
        if let Some(x) = [a, b].into_iter().find(|x| !args.contains(*x)) {
            return Err(Error::Invariant {
                statement: Statement::Att(a.clone(), b.clone()).to_string(),
                line: Some(*line),
                reason: format!("argument `{x}` is not declared"),
            });
        }
    }
    Ok(ArgumentationFramework::from_parts_unchecked(
        args,
        attacks.into_iter().map(|(_, a, b)| (a, b)).collect(),
    ))
}

/// Renders a control framework (and optional targets) in canonical order.
pub fn serialize_instance(caf: &ControlAf, targets: &ArgSet) -> String {
    let p = caf.parts();
    let mut out = String::new();
    let mut emit = |s: Statement| {
        let _ = writeln!(out, "{s}");
    };
    p.fixed_args
        .iter()
        .cloned()
        .map(Statement::Arg)
        .for_each(&mut emit);
    p.uncertain_args
        .iter()
        .cloned()
        .map(Statement::UArg)
        .for_each(&mut emit);
    p.control_args
        .iter()
        .cloned()
        .map(Statement::CArg)
        .for_each(&mut emit);
    for (a, b) in &p.fixed_attacks {
        emit(Statement::Att(a.clone(), b.clone()));
    }
    for (a, b) in &p.symmetric_conflicts {
        emit(Statement::Sym(a.clone(), b.clone()));
    }
    for (a, b) in &p.uncertain_attacks {
        emit(Statement::UAtt(a.clone(), b.clone()));
    }
    for (a, b) in &p.control_attacks {
        emit(Statement::CAtt(a.clone(), b.clone()));
    }
    targets
        .iter()
        .cloned()
        .map(Statement::Target)
        .for_each(&mut emit);
    out
}

/// Renders a plain framework with `arg`/`att` statements only.
pub fn serialize_af(af: &ArgumentationFramework) -> String {
    let mut out = String::new();
    for a in af.arguments() {
        let _ = writeln!(out, "{}", Statement::Arg(a.clone()));
    }
    for (a, b) in af.attacks() {
        let _ = writeln!(out, "{}", Statement::Att(a.clone(), b.clone()));
    }
    out
}

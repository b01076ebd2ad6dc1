use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::model::ArgumentId;

/// Propositional variable of the encodings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    /// The argument is accepted.
    Acc(ArgumentId),
    /// The first argument attacks the second.
    Att(ArgumentId, ArgumentId),
    /// The control or uncertain argument is present.
    On(ArgumentId),
    /// Clausification auxiliary.
    Aux(u32),
}

impl VarId {
    pub fn acc(a: &ArgumentId) -> Self {
        VarId::Acc(a.clone())
    }

    pub fn att(a: &ArgumentId, b: &ArgumentId) -> Self {
        VarId::Att(a.clone(), b.clone())
    }

    pub fn on(a: &ArgumentId) -> Self {
        VarId::On(a.clone())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            VarId::Acc(_) => "acc",
            VarId::Att(..) => "att",
            VarId::On(_) => "on",
            VarId::Aux(_) => "aux",
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Acc(a) => write!(f, "acc({a})"),
            VarId::Att(a, b) => write!(f, "att({a},{b})"),
            VarId::On(a) => write!(f, "on({a})"),
            VarId::Aux(n) => write!(f, "aux({n})"),
        }
    }
}

impl FromStr for VarId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Domain(format!("malformed variable name {s:?}"));
        let (kind, rest) = s.split_once('(').ok_or_else(bad)?;
        let inner = rest.strip_suffix(')').ok_or_else(bad)?;
        let arg = |x: &str| ArgumentId::new(x).map_err(|_| bad());
        match kind {
            "acc" => Ok(VarId::Acc(arg(inner)?)),
            "on" => Ok(VarId::On(arg(inner)?)),
            "att" => {
                let (a, b) = inner.split_once(',').ok_or_else(bad)?;
                Ok(VarId::Att(arg(a)?, arg(b)?))
            }
            "aux" => inner.parse().map(VarId::Aux).map_err(|_| bad()),
            _ => Err(bad()),
        }
    }
}

/// Propositional formula over [`VarId`]s.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Var(VarId),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(v: VarId) -> Self {
        Formula::Var(v)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(fs: impl IntoIterator<Item = Formula>) -> Self {
        Formula::And(fs.into_iter().collect())
    }

    pub fn or(fs: impl IntoIterator<Item = Formula>) -> Self {
        Formula::Or(fs.into_iter().collect())
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    /// Evaluates under a total assignment; unassigned variables are an error.
    pub fn eval(&self, value: &impl Fn(&VarId) -> Option<bool>) -> Result<bool> {
        Ok(match self {
            Formula::Const(b) => *b,
            Formula::Var(v) => {
                value(v).ok_or_else(|| Error::Domain(format!("variable {v} is unassigned")))?
            }
            Formula::Not(f) => !f.eval(value)?,
            Formula::And(fs) => {
                for f in fs {
                    if !f.eval(value)? {
                        return Ok(false);
                    }
                }
                true
            }
            Formula::Or(fs) => {
                for f in fs {
                    if f.eval(value)? {
                        return Ok(true);
                    }
                }
                false
            }
            Formula::Implies(a, b) => !a.eval(value)? || b.eval(value)?,
            Formula::Iff(a, b) => a.eval(value)? == b.eval(value)?,
        })
    }

    /// Variables occurring in the formula.
    pub fn vars(&self) -> BTreeSet<VarId> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<VarId>) {
        match self {
            Formula::Const(_) => {}
            Formula::Var(v) => {
                out.insert(v.clone());
            }
            Formula::Not(f) => f.collect_vars(out),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Replaces the variables fixed by `value` and propagates constants.
    pub fn substitute(&self, value: &impl Fn(&VarId) -> Option<bool>) -> Formula {
        match self {
            Formula::Const(b) => Formula::Const(*b),
            Formula::Var(v) => match value(v) {
                Some(b) => Formula::Const(b),
                None => Formula::Var(v.clone()),
            },
            Formula::Not(f) => negate(f.substitute(value)),
            Formula::And(fs) => {
                let mut out = Vec::with_capacity(fs.len());
                for f in fs {
                    match f.substitute(value) {
                        Formula::Const(true) => {}
                        Formula::Const(false) => return Formula::Const(false),
                        Formula::And(inner) => out.extend(inner),
                        g => out.push(g),
                    }
                }
                match out.len() {
                    0 => Formula::Const(true),
                    1 => out.pop().unwrap(),
                    _ => Formula::And(out),
                }
            }
            Formula::Or(fs) => {
                let mut out = Vec::with_capacity(fs.len());
                for f in fs {
                    match f.substitute(value) {
                        Formula::Const(false) => {}
                        Formula::Const(true) => return Formula::Const(true),
                        Formula::Or(inner) => out.extend(inner),
                        g => out.push(g),
                    }
                }
                match out.len() {
                    0 => Formula::Const(false),
                    1 => out.pop().unwrap(),
                    _ => Formula::Or(out),
                }
            }
            Formula::Implies(a, b) => match (a.substitute(value), b.substitute(value)) {
                (Formula::Const(false), _) | (_, Formula::Const(true)) => Formula::Const(true),
                (Formula::Const(true), g) => g,
                (g, Formula::Const(false)) => negate(g),
                (g, h) => Formula::implies(g, h),
            },
            Formula::Iff(a, b) => match (a.substitute(value), b.substitute(value)) {
                (Formula::Const(x), Formula::Const(y)) => Formula::Const(x == y),
                (Formula::Const(true), g) | (g, Formula::Const(true)) => g,
                (Formula::Const(false), g) | (g, Formula::Const(false)) => negate(g),
                (g, h) => Formula::iff(g, h),
            },
        }
    }

    /// Constant propagation without fixing any variable.
    pub fn simplify(&self) -> Formula {
        self.substitute(&|_| None)
    }
}

fn negate(f: Formula) -> Formula {
    match f {
        Formula::Const(b) => Formula::Const(!b),
        Formula::Not(g) => *g,
        g => Formula::not(g),
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, fs: &[Formula], op: &str, empty: &str| {
            if fs.is_empty() {
                return f.write_str(empty);
            }
            f.write_str("(")?;
            for (i, g) in fs.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{g}")?;
            }
            f.write_str(")")
        };
        match self {
            Formula::Const(true) => f.write_str("T"),
            Formula::Const(false) => f.write_str("F"),
            Formula::Var(v) => write!(f, "{v}"),
            Formula::Not(g) => write!(f, "~{g}"),
            Formula::And(fs) => join(f, fs, "&", "T"),
            Formula::Or(fs) => join(f, fs, "|", "F"),
            Formula::Implies(a, b) => write!(f, "({a} -> {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <-> {b})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantifier {
    Exists,
    Forall,
}

impl Quantifier {
    pub fn letter(self) -> char {
        match self {
            Quantifier::Exists => 'e',
            Quantifier::Forall => 'a',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantifierBlock {
    pub quantifier: Quantifier,
    pub vars: Vec<VarId>,
}

/// Prenex formula. Matrix variables missing from the prefix count as
/// existential at the innermost level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantifiedFormula {
    pub prefix: Vec<QuantifierBlock>,
    pub matrix: Formula,
}

impl QuantifiedFormula {
    /// Decides the formula by expanding every quantifier. Exponential in the
    /// number of prefix variables; meant for small instances and tests.
    pub fn eval_by_expansion(&self) -> Result<bool> {
        let mut order: Vec<(Quantifier, VarId)> = Vec::new();
        for block in &self.prefix {
            for v in &block.vars {
                order.push((block.quantifier, v.clone()));
            }
        }
        let bound: BTreeSet<&VarId> = order.iter().map(|(_, v)| v).collect();
        let free: Vec<VarId> = self
            .matrix
            .vars()
            .into_iter()
            .filter(|v| !bound.contains(v))
            .collect();
        for v in free {
            order.push((Quantifier::Exists, v));
        }
        Ok(expand(&self.matrix, &order))
    }
}

fn expand(f: &Formula, order: &[(Quantifier, VarId)]) -> bool {
    if let Formula::Const(b) = f {
        return *b;
    }
    let Some(((q, v), rest)) = order.split_first() else {
        unreachable!("formula still has variables after full expansion")
    };
    let branch = |b: bool| {
        let g = f.substitute(&|x: &VarId| (x == v).then_some(b));
        expand(&g, rest)
    };
    match q {
        Quantifier::Exists => branch(false) || branch(true),
        Quantifier::Forall => branch(false) && branch(true),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Formula {
        Formula::var(VarId::On(name.parse().unwrap()))
    }

    #[test]
    fn var_names_round_trip() {
        for s in ["acc(a1)", "att(a5,a1)", "on(a7)", "aux(12)"] {
            assert_eq!(s.parse::<VarId>().unwrap().to_string(), s);
        }
        for s in ["acc", "acc()", "att(a)", "foo(a)", "aux(x)", "acc(a b)"] {
            assert!(s.parse::<VarId>().is_err(), "{s}");
        }
    }

    #[test]
    fn constant_propagation() {
        let f = Formula::and([
            Formula::Const(true),
            Formula::implies(Formula::Const(true), v("x")),
        ]);
        assert_eq!(f.simplify(), v("x"));
        let g = Formula::iff(v("x"), Formula::Const(false));
        assert_eq!(g.simplify(), Formula::not(v("x")));
        assert_eq!(Formula::and([]).simplify(), Formula::Const(true));
        assert_eq!(Formula::or([]).simplify(), Formula::Const(false));
    }

    #[test]
    fn expansion_decides_small_qbf() {
        // forall y exists x . x <-> y
        let x = VarId::On("x".parse().unwrap());
        let y = VarId::On("y".parse().unwrap());
        let matrix = Formula::iff(Formula::var(x.clone()), Formula::var(y.clone()));
        let qf = QuantifiedFormula {
            prefix: vec![
                QuantifierBlock {
                    quantifier: Quantifier::Forall,
                    vars: vec![y.clone()],
                },
                QuantifierBlock {
                    quantifier: Quantifier::Exists,
                    vars: vec![x.clone()],
                },
            ],
            matrix: matrix.clone(),
        };
        assert!(qf.eval_by_expansion().unwrap());
        let swapped = QuantifiedFormula {
            prefix: vec![
                QuantifierBlock {
                    quantifier: Quantifier::Exists,
                    vars: vec![x],
                },
                QuantifierBlock {
                    quantifier: Quantifier::Forall,
                    vars: vec![y],
                },
            ],
            matrix,
        };
        assert!(!swapped.eval_by_expansion().unwrap());
    }
}

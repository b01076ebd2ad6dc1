//! Argumentation data model: plain frameworks, control frameworks,
//! incomplete frameworks, configurations and queries.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub mod instance;

pub use instance::{
    parse_af, parse_instance, serialize_af, serialize_instance, Instance, Statement,
};

/// Name of an argument: a non-empty token of ASCII letters, digits and `_`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgumentId(String);

impl ArgumentId {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if is_token(&name) {
            Ok(ArgumentId(name))
        } else {
            Err(Error::Domain(format!("invalid argument name {name:?}")))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

pub(crate) fn is_token(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for ArgumentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ArgumentId::new(s)
    }
}

impl AsRef<str> for ArgumentId {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

/// An ordered attack `(attacker, attacked)`.
pub type Attack = (ArgumentId, ArgumentId);

/// Set of argument names, rendered as `{a,b,c}`.
pub type ArgSet = BTreeSet<ArgumentId>;

/// Formats a set of arguments as `{a1,a2}`.
pub fn fmt_set<'a>(set: impl IntoIterator<Item = &'a ArgumentId>) -> String {
    let names: Vec<&str> = set.into_iter().map(ArgumentId::as_str).collect();
    format!("{{{}}}", names.join(","))
}

/// A plain Dung framework.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ArgumentationFramework {
    arguments: ArgSet,
    attacks: BTreeSet<Attack>,
}

impl ArgumentationFramework {
    /// Builds a framework, rejecting attacks whose endpoints are not arguments.
    pub fn new(
        arguments: impl IntoIterator<Item = ArgumentId>,
        attacks: impl IntoIterator<Item = Attack>,
    ) -> Result<Self> {
        let arguments: ArgSet = arguments.into_iter().collect();
        let attacks: BTreeSet<Attack> = attacks.into_iter().collect();
        for (a, b) in &attacks {
            for x in [a, b] {
                if !arguments.contains(x) {
                    return Err(Error::Invariant {
                        statement: Statement::Att(a.clone(), b.clone()).to_string(),
                        line: None,
                        reason: format!("argument `{x}` is not declared"),
                    });
                }
            }
        }
        Ok(ArgumentationFramework { arguments, attacks })
    }

    pub(crate) fn from_parts_unchecked(arguments: ArgSet, attacks: BTreeSet<Attack>) -> Self {
        debug_assert!(attacks
            .iter()
            .all(|(a, b)| arguments.contains(a) && arguments.contains(b)));
        ArgumentationFramework { arguments, attacks }
    }

    pub fn arguments(&self) -> &ArgSet {
        &self.arguments
    }

    pub fn attacks(&self) -> &BTreeSet<Attack> {
        &self.attacks
    }

    pub fn contains(&self, a: &ArgumentId) -> bool {
        self.arguments.contains(a)
    }

    pub fn attacks_pair(&self, a: &ArgumentId, b: &ArgumentId) -> bool {
        // BTreeSet<(K, K)> has no borrowed-tuple lookup.
        self.attacks.contains(&(a.clone(), b.clone()))
    }

    pub fn len(&self) -> usize {
        self.arguments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arguments.is_empty()
    }
}

/// Which block of a control framework an argument belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArgumentKind {
    Fixed,
    Uncertain,
    Control,
}

/// The raw sets making up a control framework, before validation.
///
/// Symmetric conflicts may be given in either orientation; they are
/// normalised to `(min, max)` by [`ControlAf::new`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CafParts {
    pub fixed_args: ArgSet,
    pub uncertain_args: ArgSet,
    pub control_args: ArgSet,
    pub fixed_attacks: BTreeSet<Attack>,
    pub symmetric_conflicts: BTreeSet<Attack>,
    pub uncertain_attacks: BTreeSet<Attack>,
    pub control_attacks: BTreeSet<Attack>,
}

/// A control argumentation framework: fixed, uncertain and control parts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ControlAf {
    parts: CafParts,
}

fn violation(statement: Statement, reason: impl Into<String>) -> Error {
    Error::Invariant {
        statement: statement.to_string(),
        line: None,
        reason: reason.into(),
    }
}

impl ControlAf {
    /// Validates `parts` and builds the framework.
    pub fn new(mut parts: CafParts) -> Result<Self> {
        parts.symmetric_conflicts = parts
            .symmetric_conflicts
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        let p = &parts;

        for u in &p.uncertain_args {
            if p.fixed_args.contains(u) {
                return Err(violation(
                    Statement::UArg(u.clone()),
                    "argument is already declared as fixed",
                ));
            }
        }
        for c in &p.control_args {
            if p.fixed_args.contains(c) || p.uncertain_args.contains(c) {
                return Err(violation(
                    Statement::CArg(c.clone()),
                    "argument is already declared as fixed or uncertain",
                ));
            }
        }

        let in_fu = |x: &ArgumentId| p.fixed_args.contains(x) || p.uncertain_args.contains(x);
        let endpoint_check = |stmt: Statement, a: &ArgumentId, b: &ArgumentId| -> Result<()> {
            for x in [a, b] {
                if p.control_args.contains(x) {
                    return Err(violation(
                        stmt,
                        format!("control argument `{x}` may only occur in control attacks"),
                    ));
                }
                if !in_fu(x) {
                    return Err(violation(stmt, format!("argument `{x}` is not declared")));
                }
            }
            Ok(())
        };

        for (a, b) in &p.fixed_attacks {
            endpoint_check(Statement::Att(a.clone(), b.clone()), a, b)?;
        }
        for (a, b) in &p.uncertain_attacks {
            let stmt = Statement::UAtt(a.clone(), b.clone());
            endpoint_check(stmt.clone(), a, b)?;
            if p.fixed_attacks.contains(&(a.clone(), b.clone())) {
                return Err(violation(stmt, "attack is already a fixed attack"));
            }
        }
        for (a, b) in &p.symmetric_conflicts {
            let stmt = Statement::Sym(a.clone(), b.clone());
            endpoint_check(stmt.clone(), a, b)?;
            if a == b {
                return Err(violation(stmt, "a conflict needs two distinct arguments"));
            }
            let fwd = (a.clone(), b.clone());
            let bwd = (b.clone(), a.clone());
            if p.fixed_attacks.contains(&fwd) || p.fixed_attacks.contains(&bwd) {
                return Err(violation(stmt, "conflict overlaps a fixed attack"));
            }
            if p.uncertain_attacks.contains(&fwd) || p.uncertain_attacks.contains(&bwd) {
                return Err(violation(stmt, "conflict overlaps an uncertain attack"));
            }
        }
        for (a, b) in &p.control_attacks {
            let stmt = Statement::CAtt(a.clone(), b.clone());
            if !p.control_args.contains(a) {
                return Err(violation(
                    stmt,
                    format!("source `{a}` of a control attack must be a control argument"),
                ));
            }
            if !in_fu(b) && !p.control_args.contains(b) {
                return Err(violation(stmt, format!("argument `{b}` is not declared")));
            }
        }
        Ok(ControlAf { parts })
    }

    pub fn parts(&self) -> &CafParts {
        &self.parts
    }

    pub fn into_parts(self) -> CafParts {
        self.parts
    }

    pub fn fixed_args(&self) -> &ArgSet {
        &self.parts.fixed_args
    }

    pub fn uncertain_args(&self) -> &ArgSet {
        &self.parts.uncertain_args
    }

    pub fn control_args(&self) -> &ArgSet {
        &self.parts.control_args
    }

    pub fn fixed_attacks(&self) -> &BTreeSet<Attack> {
        &self.parts.fixed_attacks
    }

    /// Symmetric conflicts, each stored once as `(min, max)`.
    pub fn symmetric_conflicts(&self) -> &BTreeSet<Attack> {
        &self.parts.symmetric_conflicts
    }

    pub fn uncertain_attacks(&self) -> &BTreeSet<Attack> {
        &self.parts.uncertain_attacks
    }

    pub fn control_attacks(&self) -> &BTreeSet<Attack> {
        &self.parts.control_attacks
    }

    pub fn kind_of(&self, a: &ArgumentId) -> Option<ArgumentKind> {
        if self.parts.fixed_args.contains(a) {
            Some(ArgumentKind::Fixed)
        } else if self.parts.uncertain_args.contains(a) {
            Some(ArgumentKind::Uncertain)
        } else if self.parts.control_args.contains(a) {
            Some(ArgumentKind::Control)
        } else {
            None
        }
    }

    /// All arguments of the framework, in name order.
    pub fn all_args(&self) -> ArgSet {
        let p = &self.parts;
        p.fixed_args
            .iter()
            .chain(&p.uncertain_args)
            .chain(&p.control_args)
            .cloned()
            .collect()
    }

    /// True when the framework carries no uncertainty at all.
    pub fn is_simplified(&self) -> bool {
        let p = &self.parts;
        p.uncertain_args.is_empty()
            && p.symmetric_conflicts.is_empty()
            && p.uncertain_attacks.is_empty()
    }
}

/// A subset of the control arguments that the agent switches on.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Configuration {
    chosen: ArgSet,
}

impl Configuration {
    pub fn new(chosen: impl IntoIterator<Item = ArgumentId>) -> Self {
        Configuration {
            chosen: chosen.into_iter().collect(),
        }
    }

    pub fn chosen(&self) -> &ArgSet {
        &self.chosen
    }

    pub fn len(&self) -> usize {
        self.chosen.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chosen.is_empty()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_set(&self.chosen))
    }
}

/// Restricts `caf` to the control arguments in `conf`.
///
/// Control attacks survive only when both endpoints are still present.
pub fn configure(caf: &ControlAf, conf: &Configuration) -> Result<ControlAf> {
    if let Some(stray) = conf
        .chosen
        .iter()
        .find(|a| !caf.control_args().contains(*a))
    {
        return Err(Error::Domain(format!(
            "configuration names `{stray}`, which is not a control argument"
        )));
    }
    let mut parts = caf.parts.clone();
    parts.control_args = conf.chosen.clone();
    parts.control_attacks.retain(|(a, b)| {
        conf.chosen.contains(a) && (conf.chosen.contains(b) || !caf.control_args().contains(b))
    });
    Ok(ControlAf { parts })
}

/// Checks every clause of the completion definition.
///
/// Fixed attacks and symmetric conflicts only constrain the completion when
/// both endpoints are present.
pub fn is_completion_of(af: &ArgumentationFramework, caf: &ControlAf) -> bool {
    let p = &caf.parts;
    let args = af.arguments();

    if !p.fixed_args.is_subset(args) || !p.control_args.is_subset(args) {
        return false;
    }
    if !args.iter().all(|a| {
        p.fixed_args.contains(a) || p.control_args.contains(a) || p.uncertain_args.contains(a)
    }) {
        return false;
    }

    let allowed = |(a, b): &Attack| {
        let pair = (a.clone(), b.clone());
        p.fixed_attacks.contains(&pair)
            || p.uncertain_attacks.contains(&pair)
            || p.control_attacks.contains(&pair)
            || p.symmetric_conflicts.contains(&pair)
            || p.symmetric_conflicts.contains(&(b.clone(), a.clone()))
    };
    if !af.attacks().iter().all(allowed) {
        return false;
    }

    let present = |a: &ArgumentId, b: &ArgumentId| args.contains(a) && args.contains(b);
    let mandatory_ok = p
        .fixed_attacks
        .iter()
        .chain(&p.control_attacks)
        .filter(|(a, b)| present(a, b))
        .all(|(a, b)| af.attacks_pair(a, b));
    if !mandatory_ok {
        return false;
    }
    p.symmetric_conflicts
        .iter()
        .filter(|(a, b)| present(a, b))
        .all(|(a, b)| af.attacks_pair(a, b) || af.attacks_pair(b, a))
}

/// An incomplete framework `<A, A?, R, R?>`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IncompleteAf {
    certain_args: ArgSet,
    uncertain_args: ArgSet,
    certain_attacks: BTreeSet<Attack>,
    uncertain_attacks: BTreeSet<Attack>,
}

impl IncompleteAf {
    pub fn new(
        certain_args: impl IntoIterator<Item = ArgumentId>,
        uncertain_args: impl IntoIterator<Item = ArgumentId>,
        certain_attacks: impl IntoIterator<Item = Attack>,
        uncertain_attacks: impl IntoIterator<Item = Attack>,
    ) -> Result<Self> {
        let iaf = IncompleteAf {
            certain_args: certain_args.into_iter().collect(),
            uncertain_args: uncertain_args.into_iter().collect(),
            certain_attacks: certain_attacks.into_iter().collect(),
            uncertain_attacks: uncertain_attacks.into_iter().collect(),
        };
        if let Some(a) = iaf.certain_args.intersection(&iaf.uncertain_args).next() {
            return Err(Error::Domain(format!(
                "`{a}` is both certain and uncertain"
            )));
        }
        if let Some((a, b)) = iaf
            .certain_attacks
            .intersection(&iaf.uncertain_attacks)
            .next()
        {
            return Err(Error::Domain(format!(
                "({a},{b}) is both certain and uncertain"
            )));
        }
        for (a, b) in iaf.certain_attacks.iter().chain(&iaf.uncertain_attacks) {
            for x in [a, b] {
                if !iaf.certain_args.contains(x) && !iaf.uncertain_args.contains(x) {
                    return Err(Error::Domain(format!(
                        "attack ({a},{b}) uses unknown `{x}`"
                    )));
                }
            }
        }
        Ok(iaf)
    }

    pub fn certain_args(&self) -> &ArgSet {
        &self.certain_args
    }

    pub fn uncertain_args(&self) -> &ArgSet {
        &self.uncertain_args
    }

    pub fn certain_attacks(&self) -> &BTreeSet<Attack> {
        &self.certain_attacks
    }

    pub fn uncertain_attacks(&self) -> &BTreeSet<Attack> {
        &self.uncertain_attacks
    }
}

/// Maps an incomplete framework onto a control framework with an empty
/// control part and no symmetric conflicts.
pub fn reduce_iaf(iaf: &IncompleteAf) -> ControlAf {
    let parts = CafParts {
        fixed_args: iaf.certain_args.clone(),
        uncertain_args: iaf.uncertain_args.clone(),
        fixed_attacks: iaf.certain_attacks.clone(),
        uncertain_attacks: iaf.uncertain_attacks.clone(),
        ..CafParts::default()
    };
    ControlAf::new(parts).expect("a valid incomplete framework always reduces to a valid one")
}

macro_rules! keyword_enum {
    ($(#[$meta:meta])* $name:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum $name {
            $($variant),+
        }

        impl $name {
            pub const ALL: &'static [$name] = &[$($name::$variant),+];

            pub fn as_str(self) -> &'static str {
                match self {
                    $($name::$variant => $text),+
                }
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.as_str())
            }
        }

        impl FromStr for $name {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($text => Ok($name::$variant),)+
                    other => Err(Error::Domain(format!(
                        concat!("unknown ", stringify!($name), " `{}`"),
                        other
                    ))),
                }
            }
        }
    };
}

keyword_enum!(
    /// Extension semantics.
    Semantics {
        Grounded => "grounded",
        Complete => "complete",
        Stable => "stable",
        Preferred => "preferred",
    }
);

keyword_enum!(
    /// Whether the target must be reached in some or in every completion.
    Mode {
        Possible => "possible",
        Necessary => "necessary",
    }
);

keyword_enum!(
    /// Whether the target must be in every or in some extension.
    Acceptance {
        Skeptical => "skeptical",
        Credulous => "credulous",
    }
);

/// A controllability question about a particular framework.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Query {
    pub semantics: Semantics,
    pub mode: Mode,
    pub acceptance: Acceptance,
    pub target: ArgSet,
}

impl Query {
    /// Builds a query, checking that the target only names fixed arguments.
    pub fn new(
        caf: &ControlAf,
        semantics: Semantics,
        mode: Mode,
        acceptance: Acceptance,
        target: impl IntoIterator<Item = ArgumentId>,
    ) -> Result<Self> {
        let query = Query {
            semantics,
            mode,
            acceptance,
            target: target.into_iter().collect(),
        };
        query.validate(caf)?;
        Ok(query)
    }

    pub fn validate(&self, caf: &ControlAf) -> Result<()> {
        validate_target(caf, &self.target)
    }
}

pub(crate) fn validate_target(caf: &ControlAf, target: &ArgSet) -> Result<()> {
    match target.iter().find(|a| !caf.fixed_args().contains(*a)) {
        Some(a) => Err(Error::Domain(format!(
            "target `{a}` is not a fixed argument"
        ))),
        None => Ok(()),
    }
}

/// Evidence for a positive controllability verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub configuration: Configuration,
    pub completion: ArgumentationFramework,
    /// An extension of `completion` containing the target (credulous queries).
    pub extension: Option<ArgSet>,
}

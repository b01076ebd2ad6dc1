//! Propositional encodings of stable semantics and of possible
//! controllability under it.
//!
//! Variables: `acc(x)` for acceptance, `att(x,y)` for attacks, `on(x)` for
//! the presence of control and uncertain arguments.

use crate::error::Result;
use crate::model::{
    validate_target, Acceptance, ArgSet, ArgumentId, ArgumentationFramework, Attack, ControlAf,
};

use super::formula::{Formula, QuantifiedFormula, Quantifier, QuantifierBlock, VarId};

fn acc(x: &ArgumentId) -> Formula {
    Formula::var(VarId::acc(x))
}

fn att(x: &ArgumentId, y: &ArgumentId) -> Formula {
    Formula::var(VarId::att(x, y))
}

/// `acc(x) <-> /\ (att(y,x) -> ~acc(y))` over the given attacker candidates.
fn acceptance_condition<'a>(
    x: &ArgumentId,
    guard: Option<Formula>,
    attackers: impl Iterator<Item = &'a ArgumentId>,
) -> Formula {
    let defended = attackers.map(|y| Formula::implies(att(y, x), Formula::not(acc(y))));
    let body = match guard {
        Some(g) => Formula::and(std::iter::once(g).chain(defended)),
        None => Formula::and(defended),
    };
    Formula::iff(acc(x), body)
}

/// The generic stable-semantics formula over every pair of `af`'s
/// arguments; the attack relation itself is left open.
pub fn build_phi_st(af: &ArgumentationFramework) -> Formula {
    Formula::and(
        af.arguments()
            .iter()
            .map(|x| acceptance_condition(x, None, af.arguments().iter())),
    )
}

/// [`build_phi_st`] with every attack variable pinned to `af`'s relation.
pub fn build_phi_st_r(af: &ArgumentationFramework) -> Formula {
    let mut parts = vec![build_phi_st(af)];
    for x in af.arguments() {
        for y in af.arguments() {
            let lit = att(x, y);
            parts.push(if af.attacks_pair(x, y) {
                lit
            } else {
                Formula::not(lit)
            });
        }
    }
    Formula::and(parts)
}

/// Every pair that may be an attack in some completion, with symmetric
/// conflicts in both orientations.
fn possible_attacks(caf: &ControlAf) -> Vec<Attack> {
    let mut pairs: Vec<Attack> = caf
        .fixed_attacks()
        .iter()
        .chain(caf.uncertain_attacks())
        .chain(caf.control_attacks())
        .cloned()
        .collect();
    for (a, b) in caf.symmetric_conflicts() {
        pairs.push((a.clone(), b.clone()));
        pairs.push((b.clone(), a.clone()));
    }
    pairs.sort();
    pairs
}

/// Acceptance equivalences for all arguments, guarded by `on` for control
/// and uncertain ones. Pairs outside the possible attacks carry no
/// variable: they are constant false and their implication vanishes.
fn acceptance_part(caf: &ControlAf) -> Formula {
    let pairs = possible_attacks(caf);
    let attackers_of = |x: &ArgumentId| -> Vec<&ArgumentId> {
        pairs
            .iter()
            .filter(|(_, t)| t == x)
            .map(|(s, _)| s)
            .collect()
    };
    let mut parts = Vec::new();
    for x in caf.fixed_args() {
        parts.push(acceptance_condition(x, None, attackers_of(x).into_iter()));
    }
    for x in caf.control_args().iter().chain(caf.uncertain_args()) {
        let on = Formula::var(VarId::on(x));
        parts.push(acceptance_condition(
            x,
            Some(on),
            attackers_of(x).into_iter(),
        ));
    }
    Formula::and(parts)
}

fn mandatory_attacks(caf: &ControlAf) -> impl Iterator<Item = &Attack> {
    caf.fixed_attacks().iter().chain(caf.control_attacks())
}

/// One `att(a,b) | att(b,a)` per symmetric conflict.
fn conflict_part(caf: &ControlAf) -> Vec<Formula> {
    caf.symmetric_conflicts()
        .iter()
        .map(|(a, b)| Formula::or([att(a, b), att(b, a)]))
        .collect()
}

/// The stable-semantics formula of a control framework: acceptance
/// equivalences, mandatory fixed and control attacks, at least one
/// direction per symmetric conflict. Uncertain attacks are unconstrained.
pub fn build_phi_st_caf(caf: &ControlAf) -> Formula {
    let mut parts = vec![acceptance_part(caf)];
    parts.extend(mandatory_attacks(caf).map(|(a, b)| att(a, b)));
    parts.extend(conflict_part(caf));
    Formula::and(parts)
}

/// Acceptance part with the mandatory attacks fixed to true: the core used
/// by the query formulas, over `on`, uncertain `att` and `acc` only.
pub(crate) fn reduced_core(caf: &ControlAf) -> Formula {
    let mandatory: std::collections::BTreeSet<VarId> = mandatory_attacks(caf)
        .map(|(a, b)| VarId::att(a, b))
        .collect();
    acceptance_part(caf).substitute(&|v| mandatory.contains(v).then_some(true))
}

/// Quantifier blocks of the query formula, outermost first.
pub(crate) fn query_prefix(caf: &ControlAf, acceptance: Acceptance) -> Vec<QuantifierBlock> {
    let on = |set: &ArgSet| set.iter().map(VarId::on).collect::<Vec<_>>();
    let mut atts: Vec<VarId> = caf
        .uncertain_attacks()
        .iter()
        .map(|(a, b)| VarId::att(a, b))
        .collect();
    for (a, b) in caf.symmetric_conflicts() {
        atts.push(VarId::att(a, b));
        atts.push(VarId::att(b, a));
    }
    let accs: Vec<VarId> = caf.all_args().iter().map(VarId::acc).collect();
    let inner = match acceptance {
        Acceptance::Skeptical => Quantifier::Forall,
        Acceptance::Credulous => Quantifier::Exists,
    };
    vec![
        QuantifierBlock {
            quantifier: Quantifier::Exists,
            vars: on(caf.control_args()),
        },
        QuantifierBlock {
            quantifier: Quantifier::Exists,
            vars: on(caf.uncertain_args()),
        },
        QuantifierBlock {
            quantifier: Quantifier::Exists,
            vars: atts,
        },
        QuantifierBlock {
            quantifier: inner,
            vars: accs,
        },
    ]
}

/// The prenex formula that is valid iff `caf` is possibly `acceptance`-ly
/// controllable w.r.t. `target` under stable semantics.
///
/// The symmetric-conflict constraint is conjoined outside the implication
/// rather than offered as an escape disjunct: with the disjunct, choosing
/// both directions false would satisfy the matrix outright. Mandatory
/// attacks are substituted as true so that no attack variable is left
/// free under the universal block.
pub fn build_query_formula(
    caf: &ControlAf,
    target: &ArgSet,
    acceptance: Acceptance,
) -> Result<QuantifiedFormula> {
    validate_target(caf, target)?;
    let core = reduced_core(caf);
    let goal = Formula::and(target.iter().map(acc));
    let mut parts = match acceptance {
        Acceptance::Skeptical => vec![Formula::implies(core, goal)],
        Acceptance::Credulous => vec![core, goal],
    };
    parts.extend(conflict_part(caf));
    Ok(QuantifiedFormula {
        prefix: query_prefix(caf, acceptance),
        matrix: Formula::and(parts),
    })
}

//! Deciding possible controllability under stable semantics through the
//! encodings: one satisfiability call for credulous queries, a
//! counterexample-guided loop for skeptical ones.

use std::collections::{BTreeMap, BTreeSet};

use crate::completion::{CompletionChoice, Orientation};
use crate::controllability::{SearchStats, Verdict};
use crate::error::{Error, Result};
use crate::model::{
    configure, validate_target, Acceptance, ArgSet, Configuration, ControlAf, Witness,
};

use super::cnf::CnfFormula;
use super::formula::{Formula, VarId};
use super::sat::{SolveResult, Solver};
use super::stable::{build_query_formula, query_prefix, reduced_core};

/// Default cap on the existential candidates of the skeptical loop.
pub const DEFAULT_MAX_CANDIDATES: u64 = 100_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Conflicts allowed per satisfiability call; `None` is unlimited.
    pub conflict_limit: Option<u64>,
    pub max_candidates: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            conflict_limit: None,
            max_candidates: DEFAULT_MAX_CANDIDATES,
        }
    }
}

/// An assignment to the existential `on`/`att` variables.
pub type Candidate = BTreeMap<VarId, bool>;

fn sat_budget_error() -> Error {
    Error::BudgetExceeded("satisfiability search hit its conflict limit".into())
}

/// Loads `cnf` into a fresh solver. Returns `None` if trivially unsat.
fn load(cnf: &CnfFormula, opts: &SolveOptions) -> Option<Solver> {
    let mut s = Solver::new();
    s.set_conflict_limit(opts.conflict_limit);
    s.ensure_vars(cnf.var_count());
    cnf.clauses.iter().all(|c| s.add_clause(c)).then_some(s)
}

/// Rebuilds configuration and completion from `on`/`att` values.
fn decode(caf: &ControlAf, value: &impl Fn(&VarId) -> bool) -> Result<Witness> {
    let on = |x| value(&VarId::on(x));
    let configuration = Configuration::new(caf.control_args().iter().filter(|c| on(c)).cloned());
    let configured = configure(caf, &configuration)?;
    let present_uncertain: ArgSet = caf
        .uncertain_args()
        .iter()
        .filter(|u| on(u))
        .cloned()
        .collect();
    let here = |x| !caf.uncertain_args().contains(x) || present_uncertain.contains(x);

    let mut choice = CompletionChoice {
        present_uncertain: present_uncertain.clone(),
        ..Default::default()
    };
    for (a, b) in caf
        .symmetric_conflicts()
        .iter()
        .filter(|(a, b)| here(a) && here(b))
    {
        let o = match (value(&VarId::att(a, b)), value(&VarId::att(b, a))) {
            (true, true) => Orientation::Both,
            (true, false) => Orientation::Forward,
            (false, true) => Orientation::Backward,
            (false, false) => {
                return Err(Error::Domain(format!(
                    "assignment leaves conflict ({a},{b}) without a direction"
                )))
            }
        };
        choice.sym_orientation.insert((a.clone(), b.clone()), o);
    }
    for (a, b) in caf
        .uncertain_attacks()
        .iter()
        .filter(|(a, b)| here(a) && here(b))
    {
        choice
            .uncertain_attack_on
            .insert((a.clone(), b.clone()), value(&VarId::att(a, b)));
    }
    Ok(Witness {
        configuration,
        completion: choice.materialize(&configured),
        extension: None,
    })
}

/// Possible credulous controllability under stable semantics, by a single
/// satisfiability call on the all-existential formula.
pub fn solve_credulous(caf: &ControlAf, target: &ArgSet) -> Result<Verdict> {
    solve_credulous_with(caf, target, &SolveOptions::default())
}

pub fn solve_credulous_with(
    caf: &ControlAf,
    target: &ArgSet,
    opts: &SolveOptions,
) -> Result<Verdict> {
    let qf = build_query_formula(caf, target, Acceptance::Credulous)?;
    let mut cnf = CnfFormula::new();
    for block in &qf.prefix {
        cnf.declare(&block.vars);
    }
    cnf.assert_formula(&qf.matrix.simplify());
    let stats = SearchStats {
        configurations_tried: 1,
        completions_examined: 1,
    };
    let Some(mut solver) = load(&cnf, opts) else {
        return Ok(Verdict {
            answer: false,
            witness: None,
            stats,
        });
    };
    match solver.solve() {
        SolveResult::Unknown => Err(sat_budget_error()),
        SolveResult::Unsat => Ok(Verdict {
            answer: false,
            witness: None,
            stats,
        }),
        SolveResult::Sat => {
            let value = |v: &VarId| cnf.vars.get(v).is_some_and(|n| solver.model_value(n));
            let mut witness = decode(caf, &value)?;
            witness.extension = Some(
                caf.all_args()
                    .into_iter()
                    .filter(|x| value(&VarId::acc(x)))
                    .collect(),
            );
            Ok(Verdict {
                answer: true,
                witness: Some(witness),
                stats,
            })
        }
    }
}

/// Possible skeptical controllability under stable semantics.
///
/// Candidates for the existential `on`/`att` block come from an abstraction
/// solver that already enforces one direction per symmetric conflict. Each
/// candidate is checked by asking for a stable extension of its completion
/// that misses part of the target; such a counterexample `σ` is excluded
/// from all later candidates by adding `¬core[acc := σ]`.
pub fn solve_skeptical(caf: &ControlAf, target: &ArgSet) -> Result<Verdict> {
    solve_skeptical_with(caf, target, &SolveOptions::default(), |_| {})
}

/// [`solve_skeptical`] reporting every candidate examined.
pub fn solve_skeptical_with(
    caf: &ControlAf,
    target: &ArgSet,
    opts: &SolveOptions,
    mut on_candidate: impl FnMut(&Candidate),
) -> Result<Verdict> {
    validate_target(caf, target)?;
    let prefix = query_prefix(caf, Acceptance::Skeptical);
    let outer: Vec<VarId> = prefix[..3]
        .iter()
        .flat_map(|b| b.vars.iter().cloned())
        .collect();
    let accs = &prefix[3].vars;
    let core = reduced_core(caf);

    let mut abstraction = CnfFormula::new();
    abstraction.declare(&outer);
    for (a, b) in caf.symmetric_conflicts() {
        abstraction.assert_formula(&Formula::or([
            Formula::var(VarId::att(a, b)),
            Formula::var(VarId::att(b, a)),
        ]));
    }
    let mut verifier = CnfFormula::new();
    verifier.declare(&outer);
    verifier.declare(accs);
    verifier.assert_formula(&core);
    verifier.assert_formula(&Formula::or(
        target
            .iter()
            .map(|x| Formula::not(Formula::var(VarId::acc(x)))),
    ));

    let mut stats = SearchStats::default();
    let not_controllable = |stats| {
        Ok(Verdict {
            answer: false,
            witness: None,
            stats,
        })
    };
    let Some(mut abs_solver) = load(&abstraction, opts) else {
        return not_controllable(stats);
    };
    let mut ver_solver = load(&verifier, opts);
    let mut loaded = abstraction.clauses.len();

    loop {
        match abs_solver.solve() {
            SolveResult::Unknown => return Err(sat_budget_error()),
            SolveResult::Unsat => return not_controllable(stats),
            SolveResult::Sat => {}
        }
        if stats.configurations_tried >= opts.max_candidates {
            return Err(Error::BudgetExceeded(format!(
                "more than {} existential candidates",
                opts.max_candidates
            )));
        }
        stats.configurations_tried += 1;
        let candidate: Candidate = outer
            .iter()
            .map(|v| {
                (
                    v.clone(),
                    abs_solver.model_value(abstraction.vars.get(v).unwrap()),
                )
            })
            .collect();
        on_candidate(&candidate);

        // same numbering in both solvers for the outer block
        let assumptions: Vec<i32> = outer
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if candidate[v] {
                    i as i32 + 1
                } else {
                    -(i as i32 + 1)
                }
            })
            .collect();
        stats.completions_examined += 1;
        let counterexample = match ver_solver.as_mut() {
            None => None,
            Some(s) => match s.solve_with(&assumptions) {
                SolveResult::Unknown => return Err(sat_budget_error()),
                SolveResult::Unsat => None,
                SolveResult::Sat => {
                    let sigma: BTreeSet<VarId> = accs
                        .iter()
                        .filter(|v| s.model_value(verifier.vars.get(v).unwrap()))
                        .cloned()
                        .collect();
                    Some(sigma)
                }
            },
        };
        let Some(sigma) = counterexample else {
            let witness = decode(caf, &|v| candidate.get(v).copied().unwrap_or(false))?;
            return Ok(Verdict {
                answer: true,
                witness: Some(witness),
                stats,
            });
        };

        let refined = core.substitute(&|v| match v {
            VarId::Acc(_) => Some(sigma.contains(v)),
            _ => None,
        });
        abstraction.assert_formula(&Formula::not(refined).simplify());
        abs_solver.ensure_vars(abstraction.var_count());
        for c in &abstraction.clauses[loaded..] {
            abs_solver.add_clause(c);
        }
        loaded = abstraction.clauses.len();
    }
}

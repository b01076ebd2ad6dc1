//! Exhaustive decision procedure for possible and necessary controllability.
//!
//! Configurations are tried smallest first (then in name order); within a
//! configuration completions are streamed in enumeration order. Possible
//! mode stops at the first accepting completion, necessary mode drops a
//! configuration at its first rejecting completion.

use std::sync::atomic::{AtomicU64, Ordering};

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::completion::{count_completions, enumerate_completions};
use crate::error::{Error, Result};
use crate::model::{
    configure, reduce_iaf, validate_target, Acceptance, ArgSet, ArgumentId, ArgumentationFramework,
    Configuration, ControlAf, IncompleteAf, Mode, Query, Semantics, Witness,
};
use crate::semantics::IndexedAf;

/// Default cap on configuration × completion leaf checks.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SearchStats {
    pub configurations_tried: u64,
    pub completions_examined: u64,
}

/// Answer to a controllability query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub answer: bool,
    /// Present whenever `answer` is true.
    pub witness: Option<Witness>,
    pub stats: SearchStats,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecideOptions {
    /// Maximum number of configuration × completion checks.
    pub budget: u128,
    /// Worker threads for the configuration loop; witnesses are only
    /// reproducible with one.
    pub jobs: usize,
}

impl Default for DecideOptions {
    fn default() -> Self {
        DecideOptions {
            budget: DEFAULT_BUDGET,
            jobs: 1,
        }
    }
}

/// Result of checking a single configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigurationOutcome {
    pub success: bool,
    /// Set on success.
    pub witness: Option<Witness>,
    /// A completion that does not accept the target. Only recorded in
    /// necessary mode, where it is the reason for failure.
    pub counterexample: Option<ArgumentationFramework>,
    pub completions_examined: u64,
}

/// All configurations of `caf`, by increasing size then name order.
pub fn configurations(caf: &ControlAf) -> Vec<Configuration> {
    let control: Vec<&ArgumentId> = caf.control_args().iter().collect();
    let n = control.len();
    let mut out = Vec::new();
    for size in 0..=n {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            out.push(Configuration::new(pick.iter().map(|&i| control[i].clone())));
            // next combination in lexicographic order
            let Some(i) = (0..size).rev().find(|&i| pick[i] != i + n - size) else {
                break;
            };
            pick[i] += 1;
            for j in i + 1..size {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    out
}

fn witness_extension(
    idx: &IndexedAf,
    semantics: Semantics,
    target: &FixedBitSet,
) -> Option<ArgSet> {
    let mut found = None;
    let _ = idx.for_each_extension(semantics, Some(target), |s| {
        found = Some(idx.names_of(s));
        std::ops::ControlFlow::Break(())
    });
    found
}

/// Checks one configuration against `q`.
pub fn check_configuration(
    caf: &ControlAf,
    conf: &Configuration,
    q: &Query,
) -> Result<ConfigurationOutcome> {
    q.validate(caf)?;
    let configured = configure(caf, conf)?;
    let mut examined = 0u64;
    let mut first_accepting: Option<(ArgumentationFramework, IndexedAf)> = None;

    for completion in enumerate_completions(&configured) {
        examined += 1;
        let idx = IndexedAf::new(&completion);
        let target = idx.mask(&q.target)?;
        let ok = idx.accepts(q.semantics, q.acceptance, &target);
        match (q.mode, ok) {
            (Mode::Possible, true) => {
                first_accepting = Some((completion, idx));
                break;
            }
            (Mode::Possible, false) => {}
            (Mode::Necessary, true) => {
                if first_accepting.is_none() {
                    first_accepting = Some((completion, idx));
                }
            }
            (Mode::Necessary, false) => {
                return Ok(ConfigurationOutcome {
                    success: false,
                    witness: None,
                    counterexample: Some(completion),
                    completions_examined: examined,
                })
            }
        }
    }

    let witness = first_accepting.map(|(completion, idx)| {
        let extension = match q.acceptance {
            Acceptance::Credulous => {
                let target = idx.mask(&q.target).expect("target checked above");
                witness_extension(&idx, q.semantics, &target)
            }
            Acceptance::Skeptical => None,
        };
        Witness {
            configuration: conf.clone(),
            completion,
            extension,
        }
    });
    Ok(ConfigurationOutcome {
        success: witness.is_some(),
        witness,
        counterexample: None,
        completions_examined: examined,
    })
}

/// Decides `q` with default options.
pub fn decide(caf: &ControlAf, q: &Query) -> Result<Verdict> {
    decide_with(caf, q, &DecideOptions::default())
}

pub fn decide_with(caf: &ControlAf, q: &Query, opts: &DecideOptions) -> Result<Verdict> {
    q.validate(caf)?;
    let leaves = count_completions(caf)
        .ok()
        .and_then(|c| {
            let n = caf.control_args().len() as u32;
            2u128.checked_pow(n).and_then(|k| k.checked_mul(c))
        })
        .filter(|&l| l <= opts.budget);
    if leaves.is_none() {
        return Err(Error::BudgetExceeded(format!(
            "more than {} configuration/completion checks needed",
            opts.budget
        )));
    }

    let confs = configurations(caf);
    if opts.jobs <= 1 {
        let mut stats = SearchStats::default();
        for conf in &confs {
            let out = check_configuration(caf, conf, q)?;
            stats.configurations_tried += 1;
            stats.completions_examined += out.completions_examined;
            if out.success {
                return Ok(Verdict {
                    answer: true,
                    witness: out.witness,
                    stats,
                });
            }
        }
        return Ok(Verdict {
            answer: false,
            witness: None,
            stats,
        });
    }

    let tried = AtomicU64::new(0);
    let examined = AtomicU64::new(0);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| Error::Domain(format!("cannot start worker pool: {e}")))?;
    let found = pool.install(|| {
        confs.par_iter().find_map_any(|conf| {
            // the target was validated up front, so per-configuration errors cannot occur
            let out = check_configuration(caf, conf, q).ok()?;
            tried.fetch_add(1, Ordering::Relaxed);
            examined.fetch_add(out.completions_examined, Ordering::Relaxed);
            out.witness
        })
    });
    Ok(Verdict {
        answer: found.is_some(),
        witness: found,
        stats: SearchStats {
            configurations_tried: tried.into_inner(),
            completions_examined: examined.into_inner(),
        },
    })
}

/// Possible credulous / skeptical acceptance of a certain argument of an
/// incomplete framework, decided through its control-framework reduction.
pub fn decide_possible_acceptance_iaf(
    iaf: &IncompleteAf,
    a: &ArgumentId,
    semantics: Semantics,
    acceptance: Acceptance,
) -> Result<bool> {
    if !iaf.certain_args().contains(a) {
        return Err(Error::Domain(format!(
            "`{a}` is not a certain argument of the incomplete framework"
        )));
    }
    let caf = reduce_iaf(iaf);
    let target: ArgSet = [a.clone()].into_iter().collect();
    validate_target(&caf, &target)?;
    let q = Query {
        semantics,
        mode: Mode::Possible,
        acceptance,
        target,
    };
    Ok(decide(&caf, &q)?.answer)
}

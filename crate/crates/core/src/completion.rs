//! Enumeration and counting of the completions of a control framework.
//!
//! A completion picks a subset of the uncertain arguments, one of three
//! orientations for every symmetric conflict whose endpoints are both
//! present, and presence or absence for every uncertain attack whose
//! endpoints are both present. Order is deterministic: uncertain subsets in
//! binary-counter order, then conflict and attack choices lexicographically
//! with the last choice varying fastest.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::model::{ArgSet, ArgumentId, ArgumentationFramework, Attack, ControlAf};

/// Orientation of a symmetric conflict `(a, b)` in a completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    /// `a` attacks `b`.
    Forward,
    /// `b` attacks `a`.
    Backward,
    Both,
}

impl Orientation {
    const ALL: [Orientation; 3] = [
        Orientation::Forward,
        Orientation::Backward,
        Orientation::Both,
    ];
}

/// The choices that determine one completion.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompletionChoice {
    pub present_uncertain: ArgSet,
    pub sym_orientation: BTreeMap<Attack, Orientation>,
    pub uncertain_attack_on: BTreeMap<Attack, bool>,
}

impl CompletionChoice {
    /// Builds the framework selected by this choice.
    pub fn materialize(&self, caf: &ControlAf) -> ArgumentationFramework {
        let present = |x: &ArgumentId| {
            caf.fixed_args().contains(x)
                || caf.control_args().contains(x)
                || self.present_uncertain.contains(x)
        };
        let arguments: ArgSet = caf
            .fixed_args()
            .iter()
            .chain(caf.control_args())
            .chain(&self.present_uncertain)
            .cloned()
            .collect();
        let mut attacks: BTreeSet<Attack> = caf
            .fixed_attacks()
            .iter()
            .chain(caf.control_attacks())
            .filter(|(a, b)| present(a) && present(b))
            .cloned()
            .collect();
        for ((a, b), o) in &self.sym_orientation {
            if matches!(o, Orientation::Forward | Orientation::Both) {
                attacks.insert((a.clone(), b.clone()));
            }
            if matches!(o, Orientation::Backward | Orientation::Both) {
                attacks.insert((b.clone(), a.clone()));
            }
        }
        for (pair, on) in &self.uncertain_attack_on {
            if *on {
                attacks.insert(pair.clone());
            }
        }
        ArgumentationFramework::from_parts_unchecked(arguments, attacks)
    }
}

/// Lazy stream over the completions of a framework.
pub struct Completions<'a> {
    caf: &'a ControlAf,
    uncertain: Vec<ArgumentId>,
    subset: Vec<bool>,
    block: Option<Block>,
    done: bool,
}

/// Choices for the current uncertain subset.
struct Block {
    present: ArgSet,
    syms: Vec<Attack>,
    uatts: Vec<Attack>,
    // one digit per sym (base 3) followed by one per uncertain attack (base 2)
    digits: Vec<u8>,
}

impl Block {
    fn new(caf: &ControlAf, present: ArgSet) -> Self {
        let active = |(a, b): &&Attack| {
            let here = |x: &ArgumentId| !caf.uncertain_args().contains(x) || present.contains(x);
            here(a) && here(b)
        };
        let syms: Vec<Attack> = caf
            .symmetric_conflicts()
            .iter()
            .filter(active)
            .cloned()
            .collect();
        let uatts: Vec<Attack> = caf
            .uncertain_attacks()
            .iter()
            .filter(active)
            .cloned()
            .collect();
        let digits = vec![0; syms.len() + uatts.len()];
        Block {
            present,
            syms,
            uatts,
            digits,
        }
    }

    fn choice(&self) -> CompletionChoice {
        let (sym_digits, u_digits) = self.digits.split_at(self.syms.len());
        CompletionChoice {
            present_uncertain: self.present.clone(),
            sym_orientation: self
                .syms
                .iter()
                .cloned()
                .zip(sym_digits.iter().map(|&d| Orientation::ALL[d as usize]))
                .collect(),
            uncertain_attack_on: self
                .uatts
                .iter()
                .cloned()
                .zip(u_digits.iter().map(|&d| d == 1))
                .collect(),
        }
    }

    /// Advances the mixed-radix counter; false once it wraps around.
    fn advance(&mut self) -> bool {
        let n_sym = self.syms.len();
        for i in (0..self.digits.len()).rev() {
            let base = if i < n_sym { 3 } else { 2 };
            self.digits[i] += 1;
            if self.digits[i] < base {
                return true;
            }
            self.digits[i] = 0;
        }
        false
    }
}

impl<'a> Completions<'a> {
    fn new(caf: &'a ControlAf) -> Self {
        let uncertain: Vec<ArgumentId> = caf.uncertain_args().iter().cloned().collect();
        let subset = vec![false; uncertain.len()];
        Completions {
            caf,
            uncertain,
            subset,
            block: None,
            done: false,
        }
    }

    fn present(&self) -> ArgSet {
        self.uncertain
            .iter()
            .zip(&self.subset)
            .filter(|(_, on)| **on)
            .map(|(a, _)| a.clone())
            .collect()
    }

    /// Binary increment with the first uncertain argument as lowest bit.
    fn next_subset(&mut self) -> bool {
        for bit in self.subset.iter_mut() {
            if *bit {
                *bit = false;
            } else {
                *bit = true;
                return true;
            }
        }
        false
    }

    /// Next choice without materializing it.
    pub fn next_choice(&mut self) -> Option<CompletionChoice> {
        if self.done {
            return None;
        }
        match &mut self.block {
            None => {
                self.block = Some(Block::new(self.caf, self.present()));
            }
            Some(block) => {
                if !block.advance() {
                    if !self.next_subset() {
                        self.done = true;
                        return None;
                    }
                    self.block = Some(Block::new(self.caf, self.present()));
                }
            }
        }
        self.block.as_ref().map(Block::choice)
    }
}

impl Iterator for Completions<'_> {
    type Item = ArgumentationFramework;

    fn next(&mut self) -> Option<Self::Item> {
        let choice = self.next_choice()?;
        Some(choice.materialize(self.caf))
    }
}

/// Streams every completion of `caf` exactly once.
pub fn enumerate_completions(caf: &ControlAf) -> Completions<'_> {
    Completions::new(caf)
}

/// Number of completions of `caf`.
///
/// Uncertain arguments that no conflict or uncertain attack touches double
/// the count; the remaining ones are summed over explicitly.
pub fn count_completions(caf: &ControlAf) -> Result<u128> {
    let is_u = |x: &ArgumentId| caf.uncertain_args().contains(x);
    let mut touched: BTreeSet<&ArgumentId> = BTreeSet::new();
    for (a, b) in caf
        .symmetric_conflicts()
        .iter()
        .chain(caf.uncertain_attacks())
    {
        touched.extend([a, b].into_iter().filter(|x| is_u(x)));
    }
    let touched: Vec<&ArgumentId> = touched.into_iter().collect();
    if touched.len() > 40 {
        return Err(Error::Overflow(format!(
            "{} interacting uncertain arguments exceed the exact counting range",
            touched.len()
        )));
    }
    let isolated = (caf.uncertain_args().len() - touched.len()) as u32;
    let overflow = || Error::Overflow("completion count exceeds 128 bits".into());

    let mut total: u128 = 0;
    for mask in 0u64..(1u64 << touched.len()) {
        let here = |x: &ArgumentId| match touched.iter().position(|t| *t == x) {
            Some(i) => mask & (1 << i) != 0,
            None => true,
        };
        let active = |(a, b): &Attack| here(a) && here(b);
        let syms = caf
            .symmetric_conflicts()
            .iter()
            .filter(|p| active(p))
            .count() as u32;
        let uatts = caf.uncertain_attacks().iter().filter(|p| active(p)).count() as u32;
        let term = 3u128
            .checked_pow(syms)
            .and_then(|t| t.checked_mul(2u128.checked_pow(uatts)?))
            .ok_or_else(overflow)?;
        total = total.checked_add(term).ok_or_else(overflow)?;
    }
    total
        .checked_mul(2u128.checked_pow(isolated).ok_or_else(overflow)?)
        .ok_or_else(overflow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{is_completion_of, parse_instance};

    #[test]
    fn no_uncertainty_means_one_completion() {
        let caf = parse_instance("arg(a).\narg(b).\natt(a,b).\nc_arg(c).\nc_att(c,a).\n")
            .unwrap()
            .caf;
        let all: Vec<_> = enumerate_completions(&caf).collect();
        assert_eq!(all.len(), 1);
        assert_eq!(count_completions(&caf).unwrap(), 1);
        assert!(is_completion_of(&all[0], &caf));
        assert_eq!(all[0].attacks().len(), 2);
    }

    #[test]
    fn isolated_uncertain_argument_doubles() {
        let caf = parse_instance("arg(a).\nu_arg(u).\n").unwrap().caf;
        assert_eq!(count_completions(&caf).unwrap(), 2);
        let all: Vec<_> = enumerate_completions(&caf).collect();
        assert_eq!(all.len(), 2);
        assert_eq!(all[0].len(), 1);
        assert_eq!(all[1].len(), 2);
    }

    #[test]
    fn empty_framework_has_the_empty_completion() {
        let caf = ControlAf::default();
        assert_eq!(enumerate_completions(&caf).count(), 1);
        assert_eq!(count_completions(&caf).unwrap(), 1);
    }

    #[test]
    fn conflict_has_three_orientations() {
        let caf = parse_instance("arg(a).\narg(b).\nsym(a,b).\n").unwrap().caf;
        let all: Vec<_> = enumerate_completions(&caf).collect();
        let sizes: Vec<usize> = all.iter().map(|af| af.attacks().len()).collect();
        assert_eq!(sizes, vec![1, 1, 2]);
        assert_ne!(all[0], all[1]);
    }

    #[test]
    fn fixed_attack_on_absent_uncertain_argument_is_dropped() {
        let caf = parse_instance("arg(a).\nu_arg(u).\natt(u,a).\n")
            .unwrap()
            .caf;
        let all: Vec<_> = enumerate_completions(&caf).collect();
        assert_eq!(all.len(), 2);
        assert!(all[0].attacks().is_empty());
        assert_eq!(all[1].attacks().len(), 1);
        assert!(all.iter().all(|af| is_completion_of(af, &caf)));
    }

    #[test]
    fn many_isolated_arguments_overflow_cleanly() {
        let text: String = (0..130).map(|i| format!("u_arg(u{i}).\n")).collect();
        let caf = parse_instance(&text).unwrap().caf;
        assert!(matches!(count_completions(&caf), Err(Error::Overflow(_))));
    }
}

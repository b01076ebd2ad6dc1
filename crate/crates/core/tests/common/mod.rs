//! Independent reference implementations and random instance generators.
//!
//! Everything here is deliberately naive: powerset filtering for the
//! semantics, subset enumeration for completions, nested loops for
//! controllability. None of it calls into the library's search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

use caf_core::model::{
    Acceptance, ArgSet, ArgumentId, ArgumentationFramework, CafParts, ControlAf, IncompleteAf,
    Mode, Semantics,
};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn id(name: &str) -> ArgumentId {
    name.parse().unwrap()
}

pub fn set(names: &[&str]) -> ArgSet {
    names.iter().map(|n| id(n)).collect()
}

pub const RUNNING: &str = include_str!("../data/running.caf");

// ---------------------------------------------------------------- semantics

/// A framework over `0..n` with attacks as index pairs.
pub struct NaiveAf {
    pub names: Vec<ArgumentId>,
    pub attacks: Vec<(usize, usize)>,
}

impl NaiveAf {
    pub fn from_af(af: &ArgumentationFramework) -> Self {
        let names: Vec<ArgumentId> = af.arguments().iter().cloned().collect();
        let pos = |x: &ArgumentId| names.iter().position(|n| n == x).unwrap();
        let attacks = af.attacks().iter().map(|(a, b)| (pos(a), pos(b))).collect();
        NaiveAf { names, attacks }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn conflict_free(&self, s: u32) -> bool {
        self.attacks
            .iter()
            .all(|&(a, b)| !(s >> a & 1 == 1 && s >> b & 1 == 1))
    }

    fn attacked_by(&self, s: u32, x: usize) -> bool {
        self.attacks.iter().any(|&(a, b)| b == x && s >> a & 1 == 1)
    }

    fn defends(&self, s: u32, x: usize) -> bool {
        self.attacks
            .iter()
            .filter(|&&(_, b)| b == x)
            .all(|&(a, _)| self.attacked_by(s, a))
    }

    fn admissible(&self, s: u32) -> bool {
        self.conflict_free(s)
            && (0..self.n())
                .filter(|&x| s >> x & 1 == 1)
                .all(|x| self.defends(s, x))
    }

    fn complete(&self, s: u32) -> bool {
        self.admissible(s) && (0..self.n()).all(|x| !self.defends(s, x) || s >> x & 1 == 1)
    }

    fn stable(&self, s: u32) -> bool {
        self.conflict_free(s) && (0..self.n()).all(|x| s >> x & 1 == 1 || self.attacked_by(s, x))
    }

    /// Extensions as bitmasks, ascending.
    pub fn masks(&self, sem: Semantics) -> Vec<u32> {
        let all: Vec<u32> = (0..1u32 << self.n()).collect();
        match sem {
            Semantics::Stable => all.into_iter().filter(|&s| self.stable(s)).collect(),
            Semantics::Complete => all.into_iter().filter(|&s| self.complete(s)).collect(),
            Semantics::Grounded => {
                let complete: Vec<u32> = all.into_iter().filter(|&s| self.complete(s)).collect();
                // the least complete extension
                complete
                    .iter()
                    .copied()
                    .filter(|&g| complete.iter().all(|&c| g & c == g))
                    .collect()
            }
            Semantics::Preferred => {
                let adm: Vec<u32> = all.into_iter().filter(|&s| self.admissible(s)).collect();
                adm.iter()
                    .copied()
                    .filter(|&s| !adm.iter().any(|&t| t != s && s & t == s))
                    .collect()
            }
        }
    }

    pub fn to_set(&self, s: u32) -> ArgSet {
        (0..self.n())
            .filter(|&x| s >> x & 1 == 1)
            .map(|x| self.names[x].clone())
            .collect()
    }

    pub fn extensions(&self, sem: Semantics) -> BTreeSet<ArgSet> {
        self.masks(sem)
            .into_iter()
            .map(|s| self.to_set(s))
            .collect()
    }

    pub fn accepts(&self, sem: Semantics, acc: Acceptance, target: &ArgSet) -> bool {
        let exts = self.extensions(sem);
        match acc {
            Acceptance::Skeptical => exts.iter().all(|e| target.is_subset(e)),
            Acceptance::Credulous => exts.iter().any(|e| target.is_subset(e)),
        }
    }
}

pub fn naive_extensions(af: &ArgumentationFramework, sem: Semantics) -> BTreeSet<ArgSet> {
    NaiveAf::from_af(af).extensions(sem)
}

pub fn naive_accepts(
    af: &ArgumentationFramework,
    sem: Semantics,
    acc: Acceptance,
    t: &ArgSet,
) -> bool {
    NaiveAf::from_af(af).accepts(sem, acc, t)
}

// -------------------------------------------------------------- completions

type Pair = (ArgumentId, ArgumentId);

/// All completions of `caf` under the control arguments `chosen`, by
/// subset enumeration over uncertain arguments and optional attacks.
pub fn naive_completions(caf: &ControlAf, chosen: &ArgSet) -> BTreeSet<ArgumentationFramework> {
    let p = caf.parts();
    let uncertain: Vec<&ArgumentId> = p.uncertain_args.iter().collect();
    let mut out = BTreeSet::new();
    for mask in 0u32..1 << uncertain.len() {
        let mut args: ArgSet = p.fixed_args.union(chosen).cloned().collect();
        for (i, u) in uncertain.iter().enumerate() {
            if mask >> i & 1 == 1 {
                args.insert((*u).clone());
            }
        }
        let here = |(a, b): &Pair| args.contains(a) && args.contains(b);
        let mandatory: BTreeSet<Pair> = p
            .fixed_attacks
            .iter()
            .chain(&p.control_attacks)
            .filter(|e| here(e))
            .cloned()
            .collect();
        let mut optional: Vec<Pair> = p
            .uncertain_attacks
            .iter()
            .filter(|e| here(e))
            .cloned()
            .collect();
        let syms: Vec<&Pair> = p.symmetric_conflicts.iter().filter(|e| here(e)).collect();
        for (a, b) in &syms {
            optional.push((a.clone(), b.clone()));
            optional.push((b.clone(), a.clone()));
        }
        for pick in 0u32..1 << optional.len() {
            let mut attacks = mandatory.clone();
            for (i, e) in optional.iter().enumerate() {
                if pick >> i & 1 == 1 {
                    attacks.insert(e.clone());
                }
            }
            let directed = syms.iter().all(|(a, b)| {
                attacks.contains(&(a.clone(), b.clone()))
                    || attacks.contains(&(b.clone(), a.clone()))
            });
            if directed {
                out.insert(ArgumentationFramework::new(args.clone(), attacks).unwrap());
            }
        }
    }
    out
}

/// Controllability by nested enumeration over configurations and
/// completions, with the powerset semantics.
pub fn naive_decide(
    caf: &ControlAf,
    sem: Semantics,
    mode: Mode,
    acc: Acceptance,
    target: &ArgSet,
) -> bool {
    let control: Vec<&ArgumentId> = caf.control_args().iter().collect();
    (0u32..1 << control.len()).any(|mask| {
        let chosen: ArgSet = control
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, c)| (*c).clone())
            .collect();
        let mut verdicts = naive_completions(caf, &chosen)
            .into_iter()
            .map(|af| naive_accepts(&af, sem, acc, target));
        match mode {
            Mode::Possible => verdicts.any(|v| v),
            Mode::Necessary => verdicts.all(|v| v),
        }
    })
}

/// Possible acceptance of `a` in an incomplete framework, over its
/// completions enumerated directly.
pub fn naive_iaf_possible(
    iaf: &IncompleteAf,
    a: &ArgumentId,
    sem: Semantics,
    acc: Acceptance,
) -> bool {
    let uncertain: Vec<&ArgumentId> = iaf.uncertain_args().iter().collect();
    let ua: Vec<&Pair> = iaf.uncertain_attacks().iter().collect();
    let target: ArgSet = [a.clone()].into();
    for mask in 0u32..1 << uncertain.len() {
        let mut args = iaf.certain_args().clone();
        for (i, u) in uncertain.iter().enumerate() {
            if mask >> i & 1 == 1 {
                args.insert((*u).clone());
            }
        }
        let here = |(x, y): &Pair| args.contains(x) && args.contains(y);
        for pick in 0u32..1 << ua.len() {
            let mut attacks: BTreeSet<Pair> = iaf
                .certain_attacks()
                .iter()
                .filter(|e| here(e))
                .cloned()
                .collect();
            for (i, e) in ua.iter().enumerate() {
                if pick >> i & 1 == 1 && here(e) {
                    attacks.insert((*e).clone());
                }
            }
            let af = ArgumentationFramework::new(args.clone(), attacks).unwrap();
            if naive_accepts(&af, sem, acc, &target) {
                return true;
            }
        }
    }
    false
}

// --------------------------------------------------------------- generators

#[derive(Debug, Clone, Copy)]
pub struct CafBounds {
    pub fixed: usize,
    pub uncertain: usize,
    pub control: usize,
    pub sym: usize,
    pub uatt: usize,
    /// Expected attacks per ordered pair of fixed/uncertain arguments.
    pub density: f64,
}

pub const SUITE_BOUNDS: CafBounds = CafBounds {
    fixed: 5,
    uncertain: 2,
    control: 3,
    sym: 2,
    uatt: 2,
    density: 0.2,
};

fn names(prefix: &str, n: usize) -> Vec<ArgumentId> {
    (1..=n).map(|i| id(&format!("{prefix}{i}"))).collect()
}

pub fn random_af(rng: &mut impl Rng, max_args: usize) -> ArgumentationFramework {
    let n = rng.gen_range(0..=max_args);
    let args = names("a", n);
    let density = rng.gen_range(0.05..0.45);
    let mut attacks = Vec::new();
    for a in &args {
        for b in &args {
            let p = if a == b { density / 4.0 } else { density };
            if rng.gen_bool(p) {
                attacks.push((a.clone(), b.clone()));
            }
        }
    }
    ArgumentationFramework::new(args, attacks).unwrap()
}

/// A random valid control framework within `bounds` (at least one fixed
/// argument) and a random non-empty target.
pub fn random_caf(rng: &mut impl Rng, bounds: &CafBounds) -> (ControlAf, ArgSet) {
    let fixed = names("f", rng.gen_range(1..=bounds.fixed));
    let uncertain = names("u", rng.gen_range(0..=bounds.uncertain));
    let control = names("c", rng.gen_range(0..=bounds.control));
    let base: Vec<ArgumentId> = fixed.iter().chain(&uncertain).cloned().collect();
    let everything: Vec<ArgumentId> = base.iter().chain(&control).cloned().collect();

    let mut p = CafParts {
        fixed_args: fixed.iter().cloned().collect(),
        uncertain_args: uncertain.iter().cloned().collect(),
        control_args: control.iter().cloned().collect(),
        ..Default::default()
    };
    for a in &base {
        for b in &base {
            let q = if a == b {
                bounds.density / 5.0
            } else {
                bounds.density
            };
            if rng.gen_bool(q) {
                p.fixed_attacks.insert((a.clone(), b.clone()));
            }
        }
    }
    let taken = |p: &CafParts, a: &ArgumentId, b: &ArgumentId| {
        let (x, y) = ((a.clone(), b.clone()), (b.clone(), a.clone()));
        p.fixed_attacks.contains(&x)
            || p.uncertain_attacks.contains(&x)
            || p.symmetric_conflicts.contains(&x)
            || p.symmetric_conflicts.contains(&y)
    };
    if base.len() >= 2 {
        for _ in 0..rng.gen_range(0..=bounds.sym) {
            let pair: Vec<&ArgumentId> = base.choose_multiple(rng, 2).collect();
            let (a, b) = (pair[0], pair[1]);
            if !taken(&p, a, b)
                && !p.fixed_attacks.contains(&(b.clone(), a.clone()))
                && !p.uncertain_attacks.contains(&(b.clone(), a.clone()))
            {
                p.symmetric_conflicts.insert((a.clone(), b.clone()));
            }
        }
    }
    for _ in 0..rng.gen_range(0..=bounds.uatt) {
        let a = base.choose(rng).unwrap();
        let b = base.choose(rng).unwrap();
        let sym_clash = p.symmetric_conflicts.contains(&(b.clone(), a.clone()));
        if !taken(&p, a, b) && !sym_clash {
            p.uncertain_attacks.insert((a.clone(), b.clone()));
        }
    }
    for c in &control {
        for t in &everything {
            if rng.gen_bool(0.3) {
                p.control_attacks.insert((c.clone(), t.clone()));
            }
        }
    }
    let caf = ControlAf::new(p).expect("generator produces valid frameworks");
    let k = rng.gen_range(1..=fixed.len().min(2));
    let target = fixed.choose_multiple(rng, k).cloned().collect();
    (caf, target)
}

/// A random control framework without uncertainty.
pub fn random_simplified_caf(rng: &mut impl Rng) -> (ControlAf, ArgSet) {
    let bounds = CafBounds {
        fixed: 5,
        uncertain: 0,
        control: 3,
        sym: 0,
        uatt: 0,
        density: 0.25,
    };
    random_caf(rng, &bounds)
}

pub fn random_iaf(rng: &mut impl Rng) -> (IncompleteAf, ArgumentId) {
    let certain = names("a", rng.gen_range(1..=6));
    let uncertain = names("q", rng.gen_range(0..=2));
    let all: Vec<ArgumentId> = certain.iter().chain(&uncertain).cloned().collect();
    let mut certain_attacks = BTreeSet::new();
    for a in &all {
        for b in &all {
            if rng.gen_bool(if a == b { 0.04 } else { 0.2 }) {
                certain_attacks.insert((a.clone(), b.clone()));
            }
        }
    }
    let mut uncertain_attacks = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=2) {
        let e = (
            all.choose(rng).unwrap().clone(),
            all.choose(rng).unwrap().clone(),
        );
        if !certain_attacks.contains(&e) {
            uncertain_attacks.insert(e);
        }
    }
    let a = certain.choose(rng).unwrap().clone();
    let iaf = IncompleteAf::new(certain, uncertain, certain_attacks, uncertain_attacks).unwrap();
    (iaf, a)
}

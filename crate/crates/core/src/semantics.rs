//! Grounded, complete, stable and preferred extensions of a plain framework.
//!
//! Arguments are indexed densely and sets are kept as bitsets. Complete and
//! stable extensions are found by a branching search seeded with the grounded
//! extension; preferred extensions are the maximal complete ones.

use std::ops::ControlFlow;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::model::{fmt_set, Acceptance, ArgSet, ArgumentId, ArgumentationFramework, Semantics};

/// A set of arguments selected by a semantics.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Extension(ArgSet);

impl Extension {
    pub fn new(members: impl IntoIterator<Item = ArgumentId>) -> Self {
        Extension(members.into_iter().collect())
    }

    pub fn members(&self) -> &ArgSet {
        &self.0
    }

    pub fn into_members(self) -> ArgSet {
        self.0
    }

    pub fn contains(&self, a: &ArgumentId) -> bool {
        self.0.contains(a)
    }
}

impl std::fmt::Display for Extension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&fmt_set(&self.0))
    }
}

/// Dense view of a framework.
#[derive(Debug, Clone)]
pub(crate) struct IndexedAf {
    names: Vec<ArgumentId>,
    attackers: Vec<FixedBitSet>,
    targets: Vec<FixedBitSet>,
}

impl IndexedAf {
    pub(crate) fn new(af: &ArgumentationFramework) -> Self {
        let names: Vec<ArgumentId> = af.arguments().iter().cloned().collect();
        let n = names.len();
        let mut attackers = vec![FixedBitSet::with_capacity(n); n];
        let mut targets = vec![FixedBitSet::with_capacity(n); n];
        for (a, b) in af.attacks() {
            let i = names
                .binary_search(a)
                .expect("attack endpoint is an argument");
            let j = names
                .binary_search(b)
                .expect("attack endpoint is an argument");
            attackers[j].insert(i);
            targets[i].insert(j);
        }
        IndexedAf {
            names,
            attackers,
            targets,
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.names.len()
    }

    fn empty_set(&self) -> FixedBitSet {
        FixedBitSet::with_capacity(self.len())
    }

    pub(crate) fn mask(&self, set: &ArgSet) -> Result<FixedBitSet> {
        let mut m = self.empty_set();
        for a in set {
            match self.names.binary_search(a) {
                Ok(i) => m.insert(i),
                Err(_) => {
                    return Err(Error::Domain(format!(
                        "`{a}` is not an argument of the framework"
                    )))
                }
            }
        }
        Ok(m)
    }

    pub(crate) fn names_of(&self, m: &FixedBitSet) -> ArgSet {
        m.ones().map(|i| self.names[i].clone()).collect()
    }

    fn attacked_by(&self, s: &FixedBitSet) -> FixedBitSet {
        let mut out = self.empty_set();
        for i in s.ones() {
            out.union_with(&self.targets[i]);
        }
        out
    }

    fn conflict_free(&self, s: &FixedBitSet) -> bool {
        s.ones().all(|i| self.attackers[i].is_disjoint(s))
    }

    /// Arguments all of whose attackers are attacked by `s`.
    fn defended_by(&self, s: &FixedBitSet) -> FixedBitSet {
        let hit = self.attacked_by(s);
        let mut out = self.empty_set();
        for i in 0..self.len() {
            if self.attackers[i].is_subset(&hit) {
                out.insert(i);
            }
        }
        out
    }

    fn admissible(&self, s: &FixedBitSet) -> bool {
        self.conflict_free(s) && s.is_subset(&self.defended_by(s))
    }

    fn complete(&self, s: &FixedBitSet) -> bool {
        self.conflict_free(s) && self.defended_by(s) == *s
    }

    fn stable(&self, s: &FixedBitSet) -> bool {
        if !self.conflict_free(s) {
            return false;
        }
        let mut covered = self.attacked_by(s);
        covered.union_with(s);
        covered.count_ones(..) == self.len()
    }

    pub(crate) fn grounded(&self) -> FixedBitSet {
        let mut s = self.empty_set();
        loop {
            let next = self.defended_by(&s);
            if next == s {
                return s;
            }
            s = next;
        }
    }

    /// Branching search over the arguments not settled by the grounded
    /// extension. `required` arguments are never excluded.
    fn search<F>(&self, stable: bool, required: &FixedBitSet, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&FixedBitSet) -> ControlFlow<()>,
    {
        let grounded = self.grounded();
        let out = self.attacked_by(&grounded);
        if !required.is_disjoint(&out) {
            return ControlFlow::Continue(());
        }
        let open: Vec<usize> = (0..self.len())
            .filter(|&i| !grounded.contains(i) && !out.contains(i))
            .collect();
        let mut state = SearchState {
            af: self,
            stable,
            required,
            open: &open,
            in_set: grounded,
            excluded: self.empty_set(),
        };
        state.descend(0, visit)
    }

    pub(crate) fn for_each_extension<F>(
        &self,
        semantics: Semantics,
        required: Option<&FixedBitSet>,
        mut visit: F,
    ) -> ControlFlow<()>
    where
        F: FnMut(&FixedBitSet) -> ControlFlow<()>,
    {
        let none = self.empty_set();
        let required = required.unwrap_or(&none);
        match semantics {
            Semantics::Grounded => {
                let g = self.grounded();
                if required.is_subset(&g) {
                    visit(&g)?;
                }
                ControlFlow::Continue(())
            }
            Semantics::Complete => self.search(false, required, &mut visit),
            Semantics::Stable => self.search(true, required, &mut visit),
            Semantics::Preferred => {
                let mut complete = Vec::new();
                let _ = self.search(false, &none, &mut |s: &FixedBitSet| {
                    complete.push(s.clone());
                    ControlFlow::Continue(())
                });
                for (i, s) in complete.iter().enumerate() {
                    let maximal = complete
                        .iter()
                        .enumerate()
                        .all(|(j, t)| i == j || !s.is_subset(t) || s == t);
                    if maximal && required.is_subset(s) {
                        visit(s)?;
                    }
                }
                ControlFlow::Continue(())
            }
        }
    }

    pub(crate) fn accepts(
        &self,
        semantics: Semantics,
        acceptance: Acceptance,
        target: &FixedBitSet,
    ) -> bool {
        match (semantics, acceptance) {
            (Semantics::Grounded, _) | (Semantics::Complete, Acceptance::Skeptical) => {
                target.is_subset(&self.grounded())
            }
            (_, Acceptance::Credulous) => {
                // a preferred extension contains the target iff some complete one does
                let semantics = match semantics {
                    Semantics::Preferred => Semantics::Complete,
                    s => s,
                };
                self.for_each_extension(semantics, Some(target), |_| ControlFlow::Break(()))
                    .is_break()
            }
            (_, Acceptance::Skeptical) => self
                .for_each_extension(semantics, None, |s| {
                    if target.is_subset(s) {
                        ControlFlow::Continue(())
                    } else {
                        ControlFlow::Break(())
                    }
                })
                .is_continue(),
        }
    }
}

struct SearchState<'a> {
    af: &'a IndexedAf,
    stable: bool,
    required: &'a FixedBitSet,
    open: &'a [usize],
    in_set: FixedBitSet,
    excluded: FixedBitSet,
}

impl SearchState<'_> {
    fn descend<F>(&mut self, depth: usize, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&FixedBitSet) -> ControlFlow<()>,
    {
        let Some(&a) = self.open.get(depth) else {
            let ok = if self.stable {
                self.af.stable(&self.in_set)
            } else {
                self.af.complete(&self.in_set)
            };
            return if ok {
                visit(&self.in_set)
            } else {
                ControlFlow::Continue(())
            };
        };
        let af = self.af;

        let compatible = !af.attackers[a].contains(a)
            && af.attackers[a].is_disjoint(&self.in_set)
            && af.targets[a].is_disjoint(&self.in_set);
        if compatible {
            self.in_set.insert(a);
            let r = self.descend(depth + 1, visit);
            self.in_set.set(a, false);
            r?;
        }

        if !self.required.contains(a) {
            // a stable extension must attack every excluded argument; once
            // all attackers of some excluded argument are excluded too, give up
            self.excluded.insert(a);
            let dead = self.stable && self.stranded(a);
            if !dead {
                let r = self.descend(depth + 1, visit);
                self.excluded.set(a, false);
                r?;
            } else {
                self.excluded.set(a, false);
            }
        }
        ControlFlow::Continue(())
    }

    fn stranded(&self, a: usize) -> bool {
        let af = self.af;
        let hopeless = |x: usize| {
            self.excluded.contains(x)
                && af.attackers[x].is_disjoint(&self.in_set)
                && af.attackers[x].is_subset(&self.excluded)
        };
        hopeless(a) || af.targets[a].ones().any(hopeless)
    }
}

fn checked_mask(af: &IndexedAf, s: &ArgSet) -> Result<FixedBitSet> {
    af.mask(s)
}

pub fn is_conflict_free(af: &ArgumentationFramework, s: &ArgSet) -> Result<bool> {
    let idx = IndexedAf::new(af);
    Ok(idx.conflict_free(&checked_mask(&idx, s)?))
}

/// Conflict-free and defends each of its members.
pub fn is_admissible(af: &ArgumentationFramework, s: &ArgSet) -> Result<bool> {
    let idx = IndexedAf::new(af);
    Ok(idx.admissible(&checked_mask(&idx, s)?))
}

/// Least fixed point of the defence function.
pub fn grounded_extension(af: &ArgumentationFramework) -> Extension {
    let idx = IndexedAf::new(af);
    Extension(idx.names_of(&idx.grounded()))
}

/// All extensions of `af` under `semantics`, in sorted order.
pub fn extensions(af: &ArgumentationFramework, semantics: Semantics) -> Vec<Extension> {
    let idx = IndexedAf::new(af);
    let mut out = Vec::new();
    let _ = idx.for_each_extension(semantics, None, |s| {
        out.push(Extension(idx.names_of(s)));
        ControlFlow::Continue(())
    });
    out.sort();
    out.dedup();
    out
}

/// Skeptical: `target` lies in every extension (vacuously true when there
/// are none). Credulous: `target` lies in some extension.
pub fn accepted(
    af: &ArgumentationFramework,
    semantics: Semantics,
    acceptance: Acceptance,
    target: &ArgSet,
) -> Result<bool> {
    let idx = IndexedAf::new(af);
    let mask = checked_mask(&idx, target)?;
    Ok(idx.accepts(semantics, acceptance, &mask))
}

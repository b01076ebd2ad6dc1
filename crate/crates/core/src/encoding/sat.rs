//! Incremental CDCL satisfiability search.
//!
//! Two watched literals, first-UIP learning with non-chronological
//! backjumping, activity-based branching with phase saving, Luby restarts
//! and MiniSat-style assumptions. Learnt clauses are kept forever; the
//! instances produced by the encodings are small.
//!
//! The public interface speaks DIMACS literals: variable `v >= 1`, literal
//! `v` or `-v`.

/// Outcome of a call to [`Solver::solve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolveResult {
    Sat,
    Unsat,
    /// The conflict limit was hit.
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Lit(u32);

impl Lit {
    fn from_dimacs(l: i32) -> Lit {
        debug_assert!(l != 0);
        let v = l.unsigned_abs() - 1;
        Lit(2 * v + (l < 0) as u32)
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn negative(self) -> bool {
        self.0 & 1 == 1
    }

    fn idx(self) -> usize {
        self.0 as usize
    }
}

impl std::ops::Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

const UNDEF: u8 = 2;

struct Clause {
    lits: Vec<Lit>,
}

/// Max-heap of variables keyed by activity.
#[derive(Default)]
struct VarHeap {
    heap: Vec<usize>,
    pos: Vec<Option<usize>>,
}

impl VarHeap {
    fn grow(&mut self, n: usize) {
        self.pos.resize(n, None);
    }

    fn contains(&self, v: usize) -> bool {
        self.pos[v].is_some()
    }

    fn insert(&mut self, v: usize, act: &[f64]) {
        if self.contains(v) {
            return;
        }
        self.pos[v] = Some(self.heap.len());
        self.heap.push(v);
        self.up(self.heap.len() - 1, act);
    }

    fn pop(&mut self, act: &[f64]) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top] = None;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last] = Some(0);
            self.down(0, act);
        }
        Some(top)
    }

    fn bumped(&mut self, v: usize, act: &[f64]) {
        if let Some(i) = self.pos[v] {
            self.up(i, act);
        }
    }

    fn up(&mut self, mut i: usize, act: &[f64]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if act[self.heap[parent]] >= act[self.heap[i]] {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn down(&mut self, mut i: usize, act: &[f64]) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && act[self.heap[l]] > act[self.heap[best]] {
                best = l;
            }
            if r < self.heap.len() && act[self.heap[r]] > act[self.heap[best]] {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i]] = Some(i);
        self.pos[self.heap[j]] = Some(j);
    }
}

/// An incremental CDCL solver.
pub struct Solver {
    clauses: Vec<Clause>,
    watches: Vec<Vec<usize>>,
    assigns: Vec<u8>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    phase: Vec<bool>,
    order: VarHeap,
    seen: Vec<bool>,
    model: Vec<bool>,
    ok: bool,
    conflict_limit: Option<u64>,
    conflicts: u64,
}

impl Default for Solver {
    fn default() -> Self {
        Self::new()
    }
}

impl Solver {
    pub fn new() -> Self {
        Solver {
            clauses: Vec::new(),
            watches: Vec::new(),
            assigns: Vec::new(),
            level: Vec::new(),
            reason: Vec::new(),
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: Vec::new(),
            var_inc: 1.0,
            phase: Vec::new(),
            order: VarHeap::default(),
            seen: Vec::new(),
            model: Vec::new(),
            ok: true,
            conflict_limit: None,
            conflicts: 0,
        }
    }

    pub fn num_vars(&self) -> usize {
        self.assigns.len()
    }

    /// Total conflicts over the solver's lifetime.
    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    /// Caps the conflicts of each subsequent `solve` call.
    pub fn set_conflict_limit(&mut self, limit: Option<u64>) {
        self.conflict_limit = limit;
    }

    /// Makes variables `1..=n` available.
    pub fn ensure_vars(&mut self, n: usize) {
        while self.assigns.len() < n {
            let v = self.assigns.len();
            self.assigns.push(UNDEF);
            self.level.push(0);
            self.reason.push(None);
            self.activity.push(0.0);
            self.phase.push(false);
            self.seen.push(false);
            self.watches.push(Vec::new());
            self.watches.push(Vec::new());
            self.order.grow(v + 1);
            self.order.insert(v, &self.activity);
        }
    }

    fn value(&self, l: Lit) -> u8 {
        match self.assigns[l.var()] {
            UNDEF => UNDEF,
            a => a ^ l.negative() as u8,
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = l.var();
        self.assigns[v] = !l.negative() as u8;
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    /// Adds a clause of DIMACS literals. Returns false once the clause set
    /// is known to be unsatisfiable.
    pub fn add_clause(&mut self, clause: &[i32]) -> bool {
        if !self.ok {
            return false;
        }
        debug_assert_eq!(self.decision_level(), 0);
        let max_var = clause
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        self.ensure_vars(max_var);

        let mut lits: Vec<Lit> = clause.iter().map(|&l| Lit::from_dimacs(l)).collect();
        lits.sort();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] == !w[1]) {
            return true;
        }
        if lits.iter().any(|&l| self.value(l) == 1) {
            return true;
        }
        lits.retain(|&l| self.value(l) == UNDEF);
        match lits.len() {
            0 => {
                self.ok = false;
            }
            1 => {
                self.enqueue(lits[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.attach(lits);
            }
        }
        self.ok
    }

    fn attach(&mut self, lits: Vec<Lit>) -> usize {
        let ci = self.clauses.len();
        self.watches[lits[0].idx()].push(ci);
        self.watches[lits[1].idx()].push(ci);
        self.clauses.push(Clause { lits });
        ci
    }

    /// Unit propagation; returns a conflicting clause if any.
    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = !p;
            let mut ws = std::mem::take(&mut self.watches[false_lit.idx()]);
            let mut i = 0;
            let mut j = 0;
            let mut conflict = None;
            while i < ws.len() {
                let ci = ws[i];
                i += 1;
                let lits = &mut self.clauses[ci].lits;
                if lits[0] == false_lit {
                    lits.swap(0, 1);
                }
                let first = lits[0];
                if self.assigns[first.var()] != UNDEF
                    && (self.assigns[first.var()] ^ first.negative() as u8) == 1
                {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..lits.len() {
                    let l = lits[k];
                    let a = self.assigns[l.var()];
                    if a == UNDEF || (a ^ l.negative() as u8) == 1 {
                        lits.swap(1, k);
                        self.watches[lits[1].idx()].push(ci);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = ci;
                j += 1;
                if self.value(first) == 0 {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, Some(ci));
                }
            }
            ws.truncate(j);
            self.watches[false_lit.idx()] = ws;
            if conflict.is_some() {
                self.qhead = self.trail.len();
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in &mut self.activity {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
        self.order.bumped(v, &self.activity);
    }

    /// First-UIP conflict analysis: the learnt clause (asserting literal
    /// first) and the level to jump back to.
    fn analyze(&mut self, mut confl: usize) -> (Vec<Lit>, usize) {
        let mut learnt = vec![Lit(0)];
        let mut path = 0usize;
        let mut p: Option<Lit> = None;
        let mut idx = self.trail.len();
        let current = self.decision_level();

        loop {
            let lits = self.clauses[confl].lits.clone();
            for q in lits {
                if Some(q) == p {
                    continue;
                }
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v);
                    if self.level[v] >= current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                idx -= 1;
                if self.seen[self.trail[idx].var()] {
                    break;
                }
            }
            let lit = self.trail[idx];
            self.seen[lit.var()] = false;
            path -= 1;
            p = Some(lit);
            if path == 0 {
                break;
            }
            confl = self.reason[lit.var()].expect("implied literal has a reason");
        }
        learnt[0] = !p.unwrap();

        let mut back = 0;
        if learnt.len() > 1 {
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var()] > self.level[learnt[max_i].var()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            back = self.level[learnt[1].var()];
        }
        for l in &learnt[1..] {
            self.seen[l.var()] = false;
        }
        self.var_inc *= 1.0 / 0.95;
        (learnt, back)
    }

    fn cancel_until(&mut self, level: usize) {
        if self.decision_level() <= level {
            return;
        }
        let start = self.trail_lim[level];
        for i in (start..self.trail.len()).rev() {
            let l = self.trail[i];
            let v = l.var();
            self.phase[v] = !l.negative();
            self.assigns[v] = UNDEF;
            self.reason[v] = None;
            self.order.insert(v, &self.activity);
        }
        self.trail.truncate(start);
        self.trail_lim.truncate(level);
        self.qhead = start;
    }

    fn pick_branch(&mut self) -> Option<Lit> {
        while let Some(v) = self.order.pop(&self.activity) {
            if self.assigns[v] == UNDEF {
                return Some(Lit(2 * v as u32 + (!self.phase[v]) as u32));
            }
        }
        None
    }

    pub fn solve(&mut self) -> SolveResult {
        self.solve_with(&[])
    }

    /// Solves under temporary unit assumptions (DIMACS literals).
    pub fn solve_with(&mut self, assumptions: &[i32]) -> SolveResult {
        if !self.ok {
            return SolveResult::Unsat;
        }
        let max_var = assumptions
            .iter()
            .map(|l| l.unsigned_abs() as usize)
            .max()
            .unwrap_or(0);
        self.ensure_vars(max_var);
        let assumptions: Vec<Lit> = assumptions.iter().map(|&l| Lit::from_dimacs(l)).collect();

        let start_conflicts = self.conflicts;
        let mut restart = 0u32;
        let result = loop {
            let budget = 100 * luby(restart);
            restart += 1;
            match self.search(budget, &assumptions) {
                Some(r) => break r,
                None => {
                    if let Some(limit) = self.conflict_limit {
                        if self.conflicts - start_conflicts >= limit {
                            break SolveResult::Unknown;
                        }
                    }
                }
            }
        };
        if result == SolveResult::Sat {
            self.model = self.assigns.iter().map(|&a| a == 1).collect();
        }
        self.cancel_until(0);
        result
    }

    /// Runs until a verdict or `budget` conflicts (then `None`, restart).
    fn search(&mut self, budget: u64, assumptions: &[Lit]) -> Option<SolveResult> {
        let mut local = 0u64;
        loop {
            if let Some(confl) = self.propagate() {
                self.conflicts += 1;
                local += 1;
                if self.decision_level() == 0 {
                    self.ok = false;
                    return Some(SolveResult::Unsat);
                }
                let (learnt, back) = self.analyze(confl);
                self.cancel_until(back);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let asserting = learnt[0];
                    let ci = self.attach(learnt);
                    self.enqueue(asserting, Some(ci));
                }
                continue;
            }
            if local >= budget {
                self.cancel_until(0);
                return None;
            }
            let next = loop {
                let dl = self.decision_level();
                if dl < assumptions.len() {
                    let a = assumptions[dl];
                    match self.value(a) {
                        1 => self.trail_lim.push(self.trail.len()),
                        0 => return Some(SolveResult::Unsat),
                        _ => break Some(a),
                    }
                } else {
                    break self.pick_branch();
                }
            };
            match next {
                None => return Some(SolveResult::Sat),
                Some(l) => {
                    self.trail_lim.push(self.trail.len());
                    self.enqueue(l, None);
                }
            }
        }
    }

    /// Value of variable `v` (1-based) in the last model.
    pub fn model_value(&self, v: u32) -> bool {
        self.model.get(v as usize - 1).copied().unwrap_or(false)
    }

    /// The last model as DIMACS literals over all variables.
    pub fn model(&self) -> Vec<i32> {
        self.model
            .iter()
            .enumerate()
            .map(|(i, &b)| if b { i as i32 + 1 } else { -(i as i32 + 1) })
            .collect()
    }
}

/// Every distinct assignment to `project` (1-based variables) that extends
/// to a model of `clauses`, in discovery order. Blocks each projection
/// after finding it, so the cost grows with the number of answers.
pub fn project_models(num_vars: usize, clauses: &[Vec<i32>], project: &[u32]) -> Vec<Vec<bool>> {
    let mut s = Solver::new();
    s.ensure_vars(num_vars);
    if !clauses.iter().all(|c| s.add_clause(c)) {
        return Vec::new();
    }
    let mut out = Vec::new();
    while s.solve() == SolveResult::Sat {
        let values: Vec<bool> = project.iter().map(|&v| s.model_value(v)).collect();
        let block: Vec<i32> = project
            .iter()
            .zip(&values)
            .map(|(&v, &b)| if b { -(v as i32) } else { v as i32 })
            .collect();
        out.push(values);
        if !s.add_clause(&block) {
            break;
        }
    }
    out
}

/// The Luby restart sequence 1, 1, 2, 1, 1, 2, 4, ...
fn luby(x: u32) -> u64 {
    let mut size = 1u64;
    let mut seq = 0u32;
    while size < x as u64 + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    let mut x = x as u64;
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}

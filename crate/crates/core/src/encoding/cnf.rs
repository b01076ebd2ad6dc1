//! Clausal form: variable numbering and the Tseitin transformation.

use indexmap::IndexSet;

use super::formula::{Formula, VarId};

/// Injective numbering of variables, starting at 1 in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VarMap {
    vars: IndexSet<VarId>,
}

impl VarMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of `v`, registering it if new.
    pub fn index(&mut self, v: VarId) -> u32 {
        let (i, _) = self.vars.insert_full(v);
        i as u32 + 1
    }

    pub fn get(&self, v: &VarId) -> Option<u32> {
        self.vars.get_index_of(v).map(|i| i as u32 + 1)
    }

    pub fn var(&self, n: u32) -> Option<&VarId> {
        self.vars.get_index((n as usize).checked_sub(1)?)
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &VarId)> {
        self.vars.iter().enumerate().map(|(i, v)| (i as u32 + 1, v))
    }
}

/// A clause set over numbered variables.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    /// DIMACS-style clauses: `n` is variable `n` true, `-n` false.
    pub clauses: Vec<Vec<i32>>,
    pub vars: VarMap,
    next_aux: u32,
}

impl CnfFormula {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers variables up front so they get the lowest numbers.
    pub fn declare<'a>(&mut self, vars: impl IntoIterator<Item = &'a VarId>) {
        for v in vars {
            self.vars.index(v.clone());
        }
    }

    pub fn var_count(&self) -> usize {
        self.vars.len()
    }

    /// Numbers of the auxiliary variables, ascending.
    pub fn aux_vars(&self) -> Vec<u32> {
        self.vars
            .iter()
            .filter(|(_, v)| matches!(v, VarId::Aux(_)))
            .map(|(n, _)| n)
            .collect()
    }

    fn fresh(&mut self) -> i32 {
        self.next_aux += 1;
        self.vars.index(VarId::Aux(self.next_aux)) as i32
    }

    /// Adds clauses equisatisfiable with `f`.
    pub fn assert_formula(&mut self, f: &Formula) {
        match f {
            Formula::Const(true) => {}
            Formula::Const(false) => self.clauses.push(Vec::new()),
            Formula::And(fs) => {
                for g in fs {
                    self.assert_formula(g);
                }
            }
            Formula::Or(fs) => {
                let clause = fs.iter().map(|g| self.lit(g)).collect();
                self.clauses.push(clause);
            }
            Formula::Implies(a, b) => {
                let clause = vec![-self.lit(a), self.lit(b)];
                self.clauses.push(clause);
            }
            g => {
                let l = self.lit(g);
                self.clauses.push(vec![l]);
            }
        }
    }

    /// A literal equivalent to `f`, defining auxiliaries as needed.
    pub fn lit(&mut self, f: &Formula) -> i32 {
        match f {
            Formula::Var(v) => self.vars.index(v.clone()) as i32,
            Formula::Not(g) => -self.lit(g),
            Formula::Const(b) => {
                let t = self.fresh();
                self.clauses.push(vec![t]);
                if *b {
                    t
                } else {
                    -t
                }
            }
            Formula::And(fs) => {
                let ls: Vec<i32> = fs.iter().map(|g| self.lit(g)).collect();
                let t = self.fresh();
                for &l in &ls {
                    self.clauses.push(vec![-t, l]);
                }
                let mut long: Vec<i32> = ls.iter().map(|l| -l).collect();
                long.push(t);
                self.clauses.push(long);
                t
            }
            Formula::Or(fs) => {
                let ls: Vec<i32> = fs.iter().map(|g| self.lit(g)).collect();
                let t = self.fresh();
                for &l in &ls {
                    self.clauses.push(vec![t, -l]);
                }
                let mut long = ls;
                long.push(-t);
                self.clauses.push(long);
                t
            }
            Formula::Implies(a, b) => {
                let (a, b) = (self.lit(a), self.lit(b));
                let t = self.fresh();
                self.clauses.push(vec![-t, -a, b]);
                self.clauses.push(vec![t, a]);
                self.clauses.push(vec![t, -b]);
                t
            }
            Formula::Iff(a, b) => {
                let (a, b) = (self.lit(a), self.lit(b));
                let t = self.fresh();
                self.clauses.push(vec![-t, -a, b]);
                self.clauses.push(vec![-t, a, -b]);
                self.clauses.push(vec![t, a, b]);
                self.clauses.push(vec![t, -a, -b]);
                t
            }
        }
    }
}

/// Tseitin transformation of `f`. Original variables are numbered first,
/// in sorted order.
pub fn to_cnf(f: &Formula) -> CnfFormula {
    let mut cnf = CnfFormula::new();
    cnf.declare(&f.vars());
    cnf.assert_formula(f);
    cnf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::sat::{SolveResult, Solver};

    fn v(name: &str) -> Formula {
        Formula::var(VarId::acc(&name.parse().unwrap()))
    }

    fn satisfiable(cnf: &CnfFormula) -> bool {
        let mut s = Solver::new();
        s.ensure_vars(cnf.var_count());
        cnf.clauses.iter().all(|c| s.add_clause(c)) && s.solve() == SolveResult::Sat
    }

    #[test]
    fn constants() {
        assert!(to_cnf(&Formula::Const(true)).clauses.is_empty());
        assert_eq!(
            to_cnf(&Formula::Const(false)).clauses,
            vec![Vec::<i32>::new()]
        );
    }

    #[test]
    fn tautology_is_one_clause() {
        let cnf = to_cnf(&Formula::or([v("x"), Formula::not(v("x"))]));
        assert_eq!(cnf.clauses, vec![vec![1, -1]]);
        assert_eq!(cnf.var_count(), 1);
    }

    #[test]
    fn self_negating_equivalence_is_unsat() {
        let cnf = to_cnf(&Formula::iff(v("x"), Formula::not(v("x"))));
        assert!(!satisfiable(&cnf));
        assert_eq!(cnf.aux_vars(), vec![2]);
    }

    #[test]
    fn varmap_is_injective_and_stable() {
        let mut m = VarMap::new();
        let a = VarId::acc(&"a".parse().unwrap());
        let b = VarId::on(&"b".parse().unwrap());
        assert_eq!(m.index(a.clone()), 1);
        assert_eq!(m.index(b.clone()), 2);
        assert_eq!(m.index(a.clone()), 1);
        assert_eq!(m.var(2), Some(&b));
        assert_eq!(m.var(0), None);
        assert_eq!(m.get(&a), Some(1));
    }
}

//! Propositional and QBF encodings of stable semantics and possible
//! controllability, with clausal conversion, an internal SAT solver and
//! standard file formats.

pub mod cnf;
pub mod dimacs;
pub mod formula;
pub mod sat;
pub mod solve;
pub mod stable;

pub use cnf::{to_cnf, CnfFormula, VarMap};
pub use dimacs::{clausify, emit_dimacs, emit_qdimacs, parse_dimacs, parse_qdimacs, Dimacs};
pub use formula::{Formula, QuantifiedFormula, Quantifier, QuantifierBlock, VarId};
pub use sat::{project_models, SolveResult, Solver};
pub use solve::{
    solve_credulous, solve_credulous_with, solve_skeptical, solve_skeptical_with, Candidate,
    SolveOptions, DEFAULT_MAX_CANDIDATES,
};
pub use stable::{build_phi_st, build_phi_st_caf, build_phi_st_r, build_query_formula};

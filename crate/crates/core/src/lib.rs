//! Possible and necessary controllability of control argumentation
//! frameworks.
//!
//! The crate offers two independent decision routes:
//!
//! * [`controllability::decide`] searches configurations and completions
//!   exhaustively and works for grounded, complete, stable and preferred
//!   semantics;
//! * [`encoding`] builds propositional and quantified encodings for the
//!   stable semantics, decides the credulous case with a SAT search and the
//!   skeptical case with a counterexample-guided loop, and writes DIMACS /
//!   QDIMACS files.

pub mod completion;
pub mod controllability;
pub mod encoding;
pub mod error;
pub mod model;
pub mod semantics;

pub use error::{Error, Result};

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The instance text is not well formed.
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    /// A structural constraint on the framework is violated.
    ///
    /// `statement` is the offending fact rendered in instance syntax.
    #[error("invalid statement `{statement}`{}: {reason}", line.map(|l| format!(" (line {l})")).unwrap_or_default())]
    Invariant {
        statement: String,
        line: Option<usize>,
        reason: String,
    },

    /// An argument to an operation lies outside its domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// A search gave up before reaching a verdict.
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    /// A count does not fit into the exact integer type.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

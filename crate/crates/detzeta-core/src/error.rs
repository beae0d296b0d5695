//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error enumeration.
///
/// The CLI maps these onto its exit-code contract: argument and parse
/// problems are usage errors (exit 2), level/budget guards are resource
/// errors (exit 3), and failed verdicts are reported separately (exit 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition on the arguments does not hold.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `lclass_eval` was asked to evaluate at a root of the denominator.
    #[error("denominator vanishes at q = {q}")]
    DenominatorVanishes { q: u64 },

    /// The zero class has no (L-1)-adic order.
    #[error("the zero class has no (L-1)-adic order")]
    ZeroClass,

    /// Euler specialization of a class with a pole at L = 1.
    #[error("pole at L = 1: the (L-1)-adic order is {order}, which is negative")]
    PoleAtOne { order: i64 },

    /// An index is outside the domain of a classification map.
    #[error("not in domain: {0}")]
    NotInDomain(String),

    /// A jet level below the admissibility threshold was requested.
    #[error("jet level {given} too small: need l >= {needed}")]
    LevelTooSmall { given: u32, needed: u32 },

    /// A class recomputed at the next jet level disagreed with the first
    /// computation; the "l large enough" certificate failed.
    #[error("level instability: values computed at levels {l0} and {l1} disagree")]
    LevelInstability { l0: u32, l1: u32 },

    /// An exhaustive enumeration would exceed the configured budget.
    #[error("budget exceeded: the run needs {needed} jets, budget is {budget}")]
    BudgetExceeded { needed: u128, budget: u128 },

    /// A string did not parse against one of the fixed grammars.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal cross-check (two independent routes to the same value)
    /// failed; this always indicates a bug, never bad user input.
    #[error("internal consistency check failed: {0}")]
    Consistency(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

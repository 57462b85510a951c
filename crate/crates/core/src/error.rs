use alloc::string::String;

/// Failures reported by the library.
///
/// Precondition violations on the kind of automaton (finite versus infinite
/// words, required acceptance condition) are programming errors and panic;
/// everything a caller can reasonably trip over at run time is an `Error`.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("symbol name {0:?} is empty or contains whitespace")]
    InvalidSymbol(String),
    #[error("symbol {0:?} occurs twice in the alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("alphabets of the two automata differ")]
    AlphabetMismatch,
    #[error("the period of an ultimately periodic word must be non-empty")]
    EmptyPeriod,
    #[error("bound k={k} outside [1, {max}]")]
    InvalidBound { k: usize, max: usize },
    #[error("{what}: {needed} exceeds the budget of {budget}")]
    Budget {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error(
        "{prunings} prunings over {choice_points} choice points exceed the budget of {budget}"
    )]
    PruningBudget {
        choice_points: usize,
        prunings: u128,
        budget: u128,
    },
    #[error("strategy has no move for a reachable position")]
    InconsistentStrategy,
    #[error("{0}")]
    Invalid(String),
}

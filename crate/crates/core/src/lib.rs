//! Width of nondeterministic automata on finite and infinite words.
//!
//! The crate is `no_std` (it only needs `alloc`) and contains every
//! algorithm: the automaton model, classic determinisations, two-player game
//! solvers, the bounded ("k-") subset, breakpoint and Safra constructions,
//! width computation, good-for-games (GFG) and determinisable-by-pruning (DBP)
//! checks, multipebble simulation games, and generators for the two hardness
//! reductions. Text formats and the command-line interface live in the
//! `autwidth-cli` crate.
//!
//! ```
//! use autwidth::{Acceptance, Alphabet, Automaton, StateSet};
//! use autwidth::width::width_nfa;
//!
//! // 0 --a--> {0, 1}, accepting {1}: the language a+ needs two pebbles.
//! let sigma = Alphabet::new(["a"]).unwrap();
//! let mut e1 = Automaton::new(sigma, 2, 0, Acceptance::FiniteReach(StateSet::from_iter([1])));
//! e1.add_transition(0, 0, 0);
//! e1.add_transition(0, 0, 1);
//! assert_eq!(width_nfa(&e1).width, 2);
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod ambiguity;
mod automaton;
mod classic;
mod error;
mod lasso;
mod sets;

pub mod constructions;
pub mod games;
pub mod gfg;
pub mod hardness;
pub mod safra;
pub mod sim;
pub mod width;

pub use ambiguity::{count_accepting_runs, max_ambiguity_profile, AMBIGUITY_ENUMERATION_LIMIT};
pub use automaton::{
    Acceptance, Alphabet, Automaton, RabinPair, StateId, SymbolId, UpWord, WordMode,
};
pub use classic::{
    breakpoint_determinize, equivalent_finite, included_finite, minimize_dfa, product,
    subset_construction, trivial_universal, Construction,
};
pub use error::Error;
pub use lasso::{emptiness, Witness};
pub use sets::{subsets_of_size, subsets_up_to, StateSet};

//! Generators for the two hardness reductions: the valuation game `G_c` and
//! its encoding as a width problem, and the Hamiltonian-cycle encoding of
//! the DBP problem for coBüchi automata.

mod gc;
mod ham;
mod reduction;

pub use gc::{solve_gc, GcInstance, GcSolution, Literal, Valuation, GC_VARIABLE_LIMIT};
pub use ham::{build_ham_nca, DiGraph};
pub use reduction::{build_b, build_c, build_reduction, CState, Reduction};

//! Bounded subset and breakpoint constructions. On overflow the automaton
//! guesses which `k` states to keep, so the result is nondeterministic.
//!
//! As in the unbounded constructions, empty sets are not materialised; a
//! missing transition stands for them.

use alloc::vec;
use alloc::vec::Vec;

use crate::classic::{assemble, cobuchi_set, explore};
use crate::{subsets_of_size, Acceptance, Automaton, Construction, Error, StateSet, WordMode};

pub use crate::safra::{k_safra, safra, SafraNode, SafraTree};

pub(crate) fn check_bound(a: &Automaton, k: usize) -> Result<(), Error> {
    let n = a.state_count();
    if k == 0 || k > n {
        return Err(Error::InvalidBound { k, max: n });
    }
    Ok(())
}

/// The sets an overflowing set may be cut down to: itself when it has at
/// most `k` elements, otherwise each of its `k`-subsets.
pub(crate) fn capped(set: StateSet, k: usize) -> Vec<StateSet> {
    if set.len() <= k {
        vec![set]
    } else {
        subsets_of_size(&set, k)
    }
}

/// The `k`-subset construction `A_k`.
pub fn k_subset(a: &Automaton, k: usize) -> Result<Construction<StateSet>, Error> {
    k_subset_bounded(a, k, usize::MAX)
}

/// [`k_subset`] refusing to build more than `limit` states.
pub fn k_subset_bounded(
    a: &Automaton,
    k: usize,
    limit: usize,
) -> Result<Construction<StateSet>, Error> {
    assert_eq!(
        a.mode(),
        WordMode::Finite,
        "k_subset needs a finite-word automaton"
    );
    check_bound(a, k)?;
    let f = a.accepting_set().unwrap();
    let (states, edges) = explore(
        a.alphabet().len(),
        StateSet::singleton(a.initial()),
        limit,
        "k-subset states",
        |x, sym| {
            let next = a.post(x, sym);
            if next.is_empty() {
                vec![]
            } else {
                capped(next, k)
            }
        },
    )?;
    Ok(assemble(a.alphabet(), states, edges, |s| {
        Acceptance::FiniteReach(StateSet::from_sorted(
            (0..s.len()).filter(|&i| s[i].intersects(f)).collect(),
        ))
    }))
}

/// The `k`-breakpoint construction over pairs `(X, Y)`, accepting where
/// `Y ≠ ∅`.
pub fn k_breakpoint(a: &Automaton, k: usize) -> Result<Construction<(StateSet, StateSet)>, Error> {
    k_breakpoint_bounded(a, k, usize::MAX)
}

/// [`k_breakpoint`] refusing to build more than `limit` states.
pub fn k_breakpoint_bounded(
    a: &Automaton,
    k: usize,
    limit: usize,
) -> Result<Construction<(StateSet, StateSet)>, Error> {
    let f = cobuchi_set(a, "k_breakpoint");
    check_bound(a, k)?;
    let q0 = StateSet::singleton(a.initial());
    let (states, edges) = explore(
        a.alphabet().len(),
        (q0.clone(), q0),
        limit,
        "k-breakpoint states",
        |(x, y), sym| {
            let next = a.post(x, sym);
            if next.is_empty() {
                return vec![];
            }
            let tracked = if y.is_empty() {
                None
            } else {
                Some(a.post(y, sym).intersection(&f))
            };
            capped(next, k)
                .into_iter()
                .map(|x2| {
                    let y2 = match &tracked {
                        None => x2.clone(),
                        Some(t) => x2.intersection(t),
                    };
                    (x2, y2)
                })
                .collect()
        },
    )?;
    Ok(assemble(a.alphabet(), states, edges, |s| {
        Acceptance::CoBuchi(StateSet::from_sorted(
            (0..s.len()).filter(|&i| !s[i].1.is_empty()).collect(),
        ))
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{subset_construction, Alphabet};

    /// s --Σ--> p_i and p_i --x_i--> t.
    fn fig2(n: usize) -> Automaton {
        let names: Vec<alloc::string::String> = (1..=n).map(|i| alloc::format!("x{i}")).collect();
        let sigma = Alphabet::new(names).unwrap();
        let (s, t) = (0, n + 1);
        let mut a = Automaton::new(
            sigma,
            n + 2,
            s,
            Acceptance::FiniteReach(StateSet::singleton(t)),
        );
        for i in 0..n {
            for j in 0..n {
                a.add_transition(s, i, 1 + j);
            }
            a.add_transition(1 + i, i, t);
        }
        a
    }

    #[test]
    fn bound_is_checked() {
        let a = fig2(3);
        assert_eq!(
            k_subset(&a, 0).unwrap_err(),
            Error::InvalidBound { k: 0, max: 5 }
        );
        assert!(k_subset(&a, 6).is_err());
    }

    #[test]
    fn k_subset_sizes() {
        for n in 3..=5 {
            let a = fig2(n);
            assert_eq!(subset_construction(&a).automaton.state_count(), 3);
            assert_eq!(
                k_subset(&a, 2).unwrap().automaton.state_count(),
                n * (n - 1) / 2 + 2
            );
            let one = k_subset(&a, 1).unwrap();
            assert_eq!(one.automaton.state_count(), a.state_count());
            assert_eq!(one.automaton.transition_count(), a.transition_count());
        }
    }
}

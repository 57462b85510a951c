use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::{Automaton, Error, SymbolId, WordMode};

/// Largest number of words `max_ambiguity_profile` is willing to enumerate.
pub const AMBIGUITY_ENUMERATION_LIMIT: u128 = 10_000_000;

fn path_counts(a: &Automaton, word: &[SymbolId]) -> Vec<BigUint> {
    let mut counts = vec![BigUint::default(); a.state_count()];
    counts[a.initial()] = BigUint::from(1u8);
    for &sym in word {
        let mut next = vec![BigUint::default(); a.state_count()];
        for (p, c) in counts.iter().enumerate() {
            if *c == BigUint::default() {
                continue;
            }
            for &q in a.successors(p, sym) {
                next[q] += c;
            }
        }
        counts = next;
    }
    counts
}

/// Number of distinct accepting runs on `word`.
pub fn count_accepting_runs(a: &Automaton, word: &[SymbolId]) -> BigUint {
    assert_eq!(
        a.mode(),
        WordMode::Finite,
        "count_accepting_runs needs a finite-word automaton"
    );
    let f = a.accepting_set().unwrap();
    path_counts(a, word)
        .into_iter()
        .enumerate()
        .filter(|&(q, _)| f.contains(q))
        .map(|(_, c)| c)
        .sum()
}

/// `(ℓ, max_{|w| = ℓ} runs(w))` for `ℓ = 0..=max_len`, by exhaustive
/// enumeration of all words.
pub fn max_ambiguity_profile(
    a: &Automaton,
    max_len: usize,
) -> Result<Vec<(usize, BigUint)>, Error> {
    assert_eq!(
        a.mode(),
        WordMode::Finite,
        "max_ambiguity_profile needs a finite-word automaton"
    );
    let sigma = a.alphabet().len() as u128;
    let needed = (0..max_len)
        .try_fold(1u128, |acc, _| acc.checked_mul(sigma))
        .unwrap_or(u128::MAX);
    if needed > AMBIGUITY_ENUMERATION_LIMIT {
        return Err(Error::Budget {
            what: "words to enumerate",
            needed,
            budget: AMBIGUITY_ENUMERATION_LIMIT,
        });
    }
    let f = a.accepting_set().unwrap();
    let accepted = |counts: &[BigUint]| -> BigUint {
        counts
            .iter()
            .enumerate()
            .filter(|&(q, _)| f.contains(q))
            .map(|(_, c)| c)
            .sum()
    };
    // depth-first over words, carrying the per-state path counts
    let mut best = vec![BigUint::default(); max_len + 1];
    let mut stack = vec![(0usize, path_counts(a, &[]))];
    while let Some((len, counts)) = stack.pop() {
        let here = accepted(&counts);
        if here > best[len] {
            best[len] = here;
        }
        if len == max_len {
            continue;
        }
        for sym in 0..a.alphabet().len() {
            let mut next = vec![BigUint::default(); a.state_count()];
            for (p, c) in counts.iter().enumerate() {
                if *c == BigUint::default() {
                    continue;
                }
                for &q in a.successors(p, sym) {
                    next[q] += c;
                }
            }
            stack.push((len + 1, next));
        }
    }
    Ok(best.into_iter().enumerate().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Acceptance, Alphabet, StateSet};

    #[test]
    fn doubling_runs() {
        // two states both looping on every letter and swapping: 2^n runs
        let sigma = Alphabet::new(["a", "b"]).unwrap();
        let mut a = Automaton::new(
            sigma,
            2,
            0,
            Acceptance::FiniteReach(StateSet::from_iter([0, 1])),
        );
        for p in 0..2 {
            for s in 0..2 {
                a.add_transition(p, s, 0);
                a.add_transition(p, s, 1);
            }
        }
        assert_eq!(count_accepting_runs(&a, &[0, 1, 1]), BigUint::from(8u8));
        let profile = max_ambiguity_profile(&a, 4).unwrap();
        assert_eq!(profile[4], (4, BigUint::from(16u8)));
        assert!(max_ambiguity_profile(&a, 30).is_err());
    }
}

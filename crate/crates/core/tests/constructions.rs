use autwidth::constructions::{k_breakpoint, k_safra, k_subset, safra};
use autwidth::{subset_construction, Acceptance, StateSet};
use autwidth_testkit::{
    member_finite_oracle, member_up_oracle, random_nba, random_nca, random_nfa, rng, upwords, words,
};
use proptest::prelude::*;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn k_subset_size_bound(seed in any::<u64>()) {
        let a = random_nfa(&mut rng(seed), 8, 2);
        let n = a.state_count();
        for k in 1..=n {
            let size = k_subset(&a, k).unwrap().automaton.state_count() as f64;
            prop_assert!(size < (n as f64).powi(k as i32) / factorial(k - 1) + 1.0, "k = {}", k);
        }
    }

    #[test]
    fn k_subset_refines_subset_construction(seed in any::<u64>()) {
        let a = random_nfa(&mut rng(seed), 6, 2);
        let full = subset_construction(&a);
        for k in 1..=a.state_count() {
            let ak = k_subset(&a, k).unwrap();
            for w in words(a.alphabet().len(), 6) {
                let mut runs = vec![ak.automaton.initial()];
                let mut reference = Some(full.automaton.initial());
                for &x in &w {
                    runs = runs.iter().flat_map(|&q| ak.automaton.successors(q, x).to_vec()).collect();
                    runs.sort_unstable();
                    runs.dedup();
                    reference = reference.and_then(|d| full.automaton.successors(d, x).first().copied());
                }
                let cover = reference.map_or(StateSet::default(), |d| full.states[d].clone());
                for q in runs {
                    prop_assert!(ak.states[q].is_subset(&cover));
                }
                prop_assert_eq!(ak.automaton.member_finite(&w), member_finite_oracle(&a, &w));
            }
        }
    }

    #[test]
    fn k_breakpoint_preserves_language(seed in any::<u64>()) {
        let a = random_nca(&mut rng(seed), 4, 2);
        for k in 1..=a.state_count() {
            let ak = k_breakpoint(&a, k).unwrap().automaton;
            for w in upwords(a.alphabet().len(), 2, 3) {
                prop_assert_eq!(ak.member_up(&w), member_up_oracle(&a, &w));
            }
        }
    }

    #[test]
    fn safra_is_a_deterministic_rabin_automaton(seed in any::<u64>()) {
        let a = random_nba(&mut rng(seed), 3, 2);
        let d = safra(&a).automaton;
        prop_assert!(d.is_deterministic());
        let Acceptance::Rabin(pairs) = d.acceptance() else { panic!("Rabin expected") };
        prop_assert_eq!(pairs.len(), 2 * a.state_count());
        for k in 1..=a.state_count() {
            let c = k_safra(&a, k).unwrap();
            for tree in &c.states {
                prop_assert!(tree.check(a.state_count(), k).is_ok());
            }
            for w in upwords(a.alphabet().len(), 2, 3) {
                prop_assert_eq!(c.automaton.member_up(&w), member_up_oracle(&a, &w));
            }
        }
    }
}

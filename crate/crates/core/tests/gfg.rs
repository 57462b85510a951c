use std::collections::{BTreeSet, VecDeque};

use autwidth::gfg::{
    dbp_check_nca, dbp_check_nfa, gfg_check_nca, gfg_check_nfa, prune_to_dfa,
    DEFAULT_PRUNING_BUDGET,
};
use autwidth::{equivalent_finite, subset_construction, Automaton};
use autwidth_testkit::{
    member_finite_oracle, member_up_oracle, random_nca, random_nfa, rng, upwords, words,
};
use proptest::prelude::*;

/// Every pair of (pruned state, referee state) reachable on a common word
/// has equal residual languages.
fn residuals_match(d: &Automaton, referee: &Automaton) -> bool {
    let start = (d.initial(), referee.initial());
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some((q, r)) = queue.pop_front() {
        if equivalent_finite(&d.with_initial(q), &referee.with_initial(r))
            .unwrap()
            .is_some()
        {
            return false;
        }
        for x in 0..d.alphabet().len() {
            if let (&[q2], &[r2]) = (d.successors(q, x), referee.successors(r, x)) {
                if seen.insert((q2, r2)) {
                    queue.push_back((q2, r2));
                }
            }
        }
    }
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn nfa_gfg_is_dbp(seed in any::<u64>()) {
        let a = random_nfa(&mut rng(seed), 5, 2);
        let gfg = gfg_check_nfa(&a);
        let dbp = dbp_check_nfa(&a);
        prop_assert_eq!(gfg.gfg, dbp.is_some());
        if let Some(strategy) = &gfg.strategy {
            let d = prune_to_dfa(&a, &gfg.game, strategy).unwrap();
            prop_assert!(d.is_deterministic());
            prop_assert!(d.transitions().all(|(p, x, q)| a.successors(p, x).contains(&q)));
            prop_assert!(residuals_match(&d, &subset_construction(&a).automaton));
        }
        if let Some(p) = dbp {
            let d = p.apply(&a);
            prop_assert!(d.is_deterministic());
            for w in words(a.alphabet().len(), 7) {
                prop_assert_eq!(d.member_finite(&w), member_finite_oracle(&a, &w));
            }
        }
    }

    #[test]
    fn nca_dbp_implies_gfg(seed in any::<u64>()) {
        let a = random_nca(&mut rng(seed), 4, 2);
        if let Some(p) = dbp_check_nca(&a, DEFAULT_PRUNING_BUDGET).unwrap() {
            prop_assert!(gfg_check_nca(&a).gfg);
            let d = p.apply(&a);
            prop_assert!(d.is_deterministic());
            for w in upwords(a.alphabet().len(), 2, 4) {
                prop_assert_eq!(d.member_up(&w), member_up_oracle(&a, &w));
            }
        }
    }
}

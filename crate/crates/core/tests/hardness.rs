use autwidth::games::Player;
use autwidth::gfg::{dbp_check_nca, DEFAULT_PRUNING_BUDGET};
use autwidth::hardness::{build_b, build_c, build_ham_nca, build_reduction, solve_gc, DiGraph};
use autwidth::width::{width_round, MoveRule, WidthOptions};
use autwidth::{subset_construction, UpWord};
use autwidth_testkit::{
    gc_winner_oracle, hamiltonian_cycle, random_gc, random_strongly_connected, rng, upwords,
};
use proptest::prelude::*;

/// Membership in the union over `i` of `(Σ' #)* (a_i #)^ω`, where the
/// letters are `a_1 … a_n` followed by `#`.
fn ham_language(n: usize, w: &UpWord) -> bool {
    let hash = n;
    let (u, v) = (w.prefix().len(), w.period().len());
    let at = |i: usize| {
        if i < u {
            w.prefix()[i]
        } else {
            w.period()[(i - u) % v]
        }
    };
    let horizon = u + 2 * v;
    let alternates = (0..horizon).all(|i| (at(i) == hash) == (i % 2 == 1));
    let tail: Vec<usize> = (u..horizon).filter(|i| i % 2 == 0).map(at).collect();
    alternates && tail.iter().all(|&x| x == tail[0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn gc_solver_matches_oracle(seed in any::<u64>()) {
        let gc = random_gc(&mut rng(seed), 5, 3);
        prop_assert_eq!(solve_gc(&gc).unwrap().winner, gc_winner_oracle(&gc));
    }

    #[test]
    fn reduction_shape(seed in any::<u64>()) {
        let gc = random_gc(&mut rng(seed), 4, 3);
        let k = gc.var_count();
        let b = build_b(&gc);
        prop_assert_eq!(b.state_count(), 2 + 2 * k);
        prop_assert!(b.alphabet().len() <= gc.clauses.len() + 7 * k + 2);
        prop_assert!(build_c(&gc).is_deterministic());
        let red = build_reduction(&gc);
        prop_assert_eq!(red.k, k);
        prop_assert!((0..red.automaton.state_count()).all(|q| red.automaton.is_accepting(q)));
        let det = subset_construction(&red.automaton).automaton;
        prop_assert!(det.is_complete_deterministic());
        prop_assert!((0..det.state_count()).all(|q| det.is_accepting(q)));
    }

    #[test]
    fn ham_automaton_language(seed in any::<u64>(), n in 2..5usize) {
        let g = random_strongly_connected(&mut rng(seed), n);
        let a = build_ham_nca(&g);
        for w in upwords(n + 1, 2, 4) {
            prop_assert_eq!(a.member_up(&w), ham_language(n, &w), "{:?}", w);
        }
    }

    #[test]
    fn dbp_iff_hamiltonian(seed in any::<u64>(), n in 2..6usize) {
        let g = random_strongly_connected(&mut rng(seed), n);
        let dbp = dbp_check_nca(&build_ham_nca(&g), DEFAULT_PRUNING_BUDGET).unwrap();
        prop_assert_eq!(dbp.is_some(), hamiltonian_cycle(&g).is_some());
    }
}

#[test]
fn winner_zero_iff_small_width() {
    let mut r = rng(54);
    let nodup = WidthOptions {
        rule: MoveRule::NoDuplication,
        ..WidthOptions::default()
    };
    for _ in 0..15 {
        let gc = random_gc(&mut r, 3, 3);
        let red = build_reduction(&gc);
        let wins = width_round(&red.automaton, red.k, &nodup).unwrap().0.wins;
        assert_eq!(wins, solve_gc(&gc).unwrap().winner == Player::Zero);
    }
}

#[test]
fn example_graph_is_hamiltonian() {
    let g = DiGraph::example();
    assert_eq!(hamiltonian_cycle(&g), Some(vec![0, 1, 3, 2]));
    assert!(dbp_check_nca(&build_ham_nca(&g), DEFAULT_PRUNING_BUDGET)
        .unwrap()
        .is_some());
}

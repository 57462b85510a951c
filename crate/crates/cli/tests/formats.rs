use autwidth::constructions::safra;
use autwidth_cli::formats::{
    parse_automaton, parse_gc, parse_graph, write_automaton, write_gc, write_graph,
};
use autwidth_testkit::{
    random_gc, random_nba, random_nca, random_nfa, random_strongly_connected, rng,
};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn automata_round_trip(seed in any::<u64>(), kind in 0..4usize) {
        let mut r = rng(seed);
        let a = match kind {
            0 => random_nfa(&mut r, 6, 3),
            1 => random_nca(&mut r, 6, 3),
            2 => random_nba(&mut r, 6, 3),
            _ => safra(&random_nba(&mut r, 3, 2)).automaton,
        };
        let text = write_automaton(&a);
        let back = parse_automaton(&text).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(write_automaton(&back), text);
    }

    #[test]
    fn gc_round_trip(seed in any::<u64>()) {
        let gc = random_gc(&mut rng(seed), 6, 4);
        let text = write_gc(&gc);
        prop_assert_eq!(parse_gc(&text).unwrap(), gc);
    }

    #[test]
    fn graph_round_trip(seed in any::<u64>(), n in 1..8usize) {
        let g = random_strongly_connected(&mut rng(seed), n);
        prop_assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored(seed in any::<u64>()) {
        let a = random_nfa(&mut rng(seed), 4, 2);
        let text: String = write_automaton(&a)
            .lines()
            .flat_map(|l| [format!("  # {l}"), String::new(), l.to_string()])
            .map(|l| l + "\n")
            .collect();
        prop_assert_eq!(parse_automaton(&text).unwrap(), a);
    }
}

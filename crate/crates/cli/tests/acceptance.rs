//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line
//! with its runtime; the process fails if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use autwidth::constructions::{k_breakpoint, k_safra, k_subset, safra};
use autwidth::games::{solve_parity, solve_safety, Condition, Player};
use autwidth::gfg::{dbp_check_nca, gfg_check_nfa, DEFAULT_PRUNING_BUDGET};
use autwidth::hardness::{build_ham_nca, build_reduction, solve_gc, DiGraph, GcInstance};
use autwidth::sim::width_via_sim;
use autwidth::width::{
    incremental_determinize_nfa, width_nfa, width_round, MoveRule, WidthOptions,
};
use autwidth::{
    equivalent_finite, max_ambiguity_profile, minimize_dfa, subset_construction, trivial_universal,
    Acceptance, Automaton, Error, StateId,
};
use autwidth_testkit::families::{full_pair, letter_fan, nth_from_last, two_chains, zero_cycle};
use autwidth_testkit::{
    brute_force_winners, gc_winner_oracle, hamiltonian_cycle, isomorphic, member_up_oracle,
    random_arena, random_gc, random_nba, random_nca, random_nfa, random_strongly_connected, rng,
    strategy_wins, upwords,
};
use num_bigint::BigUint;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Minimal complete DFA for the language of a finite-word automaton.
fn min_dfa_states(a: &Automaton) -> usize {
    minimize_dfa(&subset_construction(a).automaton).state_count()
}

fn universal(a: &Automaton) -> bool {
    equivalent_finite(a, &trivial_universal(a.alphabet()))
        .unwrap()
        .is_none()
}

fn fig1() -> Check {
    let a = two_chains(3);
    let w = width_nfa(&a).width;
    ensure!(w == 2, "width {w}, expected 2");
    let (report, dfa) = incremental_determinize_nfa(&a);
    ensure!(
        report.width == 2,
        "incremental loop stopped at k = {}",
        report.width
    );
    ensure!(
        dfa.state_count() == 5,
        "minimised DFA has {} states, expected 5",
        dfa.state_count()
    );
    ensure!(
        equivalent_finite(&a, &dfa).unwrap().is_none(),
        "DFA language differs"
    );
    let a2 = k_subset(&a, 2).unwrap().automaton.state_count();
    let n = a.state_count();
    ensure!(a2 < 1 << n, "A_2 has {a2} states, not below 2^{n}");
    ensure!(a2 <= n * n, "A_2 has {a2} states, above n^2 = {}", n * n);
    Ok(())
}

fn triptych() -> Check {
    let mut failures = Vec::new();
    let a = full_pair();
    let w = width_nfa(&a).width;
    if w != 1 {
        failures.push(format!("full pair: width {w}"));
    }
    for (len, max) in max_ambiguity_profile(&a, 8).unwrap() {
        if max != BigUint::from(1u8) << len {
            failures.push(format!("full pair: ambiguity {max} at length {len}"));
        }
    }
    for n in [3, 4] {
        let a = nth_from_last(n);
        let w = width_nfa(&a).width;
        if w != n {
            failures.push(format!("A_{n}: width {w}, expected {n}"));
        }
        for (len, max) in max_ambiguity_profile(&a, 10).unwrap() {
            if max > BigUint::from(1u8) {
                failures.push(format!("A_{n}: ambiguity {max} at length {len}"));
            }
        }
        let m = min_dfa_states(&a);
        if m != 1 << n {
            failures.push(format!("A_{n}: minimal DFA has {m} states"));
        }
    }
    let a = zero_cycle(3);
    let w = width_nfa(&a).width;
    if w != 3 {
        failures.push(format!("L_3: width {w}"));
    }
    let m = min_dfa_states(&a);
    if m != 7 {
        failures.push(format!("L_3: minimal DFA has {m} states"));
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures.join("; "))
    }
}

fn fig2() -> Check {
    for n in [3, 4, 5] {
        let a = letter_fan(n);
        let s = subset_construction(&a).automaton.state_count();
        ensure!(s == 3, "n = {n}: subset construction has {s} states");
        let k = k_subset(&a, 2).unwrap().automaton.state_count();
        ensure!(
            k == binom(n, 2) + 2,
            "n = {n}: 2-subset construction has {k} states"
        );
    }
    Ok(())
}

fn coherence() -> Check {
    let mut r = rng(4);
    let mut universal_seen = 0;
    for i in 0..200 {
        let a = random_nfa(&mut r, 5, 2);
        let univ = universal(&a);
        universal_seen += univ as usize;
        for k in 1..=a.state_count() {
            let opts = WidthOptions::default();
            let game = width_round(&a, k, &opts).unwrap().0.wins;
            let gfg = gfg_check_nfa(&k_subset(&a, k).unwrap().automaton).gfg;
            let sim = width_via_sim(&a, k).unwrap();
            ensure!(
                game == gfg && gfg == sim,
                "automaton {i}, k = {k}: game {game}, A_k GFG {gfg}, simulation {sim}"
            );
            if univ {
                let triv = WidthOptions {
                    referee: Some(trivial_universal(a.alphabet())),
                    ..WidthOptions::default()
                };
                let t = width_round(&a, k, &triv).unwrap().0.wins;
                ensure!(
                    t == game,
                    "automaton {i}, k = {k}: trivial referee {t}, game {game}"
                );
            }
        }
    }
    ensure!(universal_seen > 0, "no universal automaton in the sample");
    Ok(())
}

/// Whether Player 0 wins the width game on the reduction at `k = |V|`,
/// with the full rule when it fits the budget and without duplication
/// otherwise.
fn reduction_width_at_most(gc: &GcInstance) -> Result<bool, String> {
    let red = build_reduction(gc);
    ensure!(universal(&red.automaton), "reduction is not universal");
    let full = WidthOptions {
        position_budget: 2_000_000,
        ..WidthOptions::default()
    };
    let nodup = WidthOptions {
        rule: MoveRule::NoDuplication,
        ..WidthOptions::default()
    };
    match width_round(&red.automaton, red.k, &full) {
        Ok((round, ..)) => {
            let nd = width_round(&red.automaton, red.k, &nodup)
                .map_err(|e| e.to_string())?
                .0
                .wins;
            ensure!(
                round.wins == nd,
                "full rule says {}, no-duplication rule says {nd}",
                round.wins
            );
            Ok(round.wins)
        }
        Err(Error::Budget { .. }) => Ok(width_round(&red.automaton, red.k, &nodup)
            .map_err(|e| e.to_string())?
            .0
            .wins),
        Err(e) => Err(e.to_string()),
    }
}

fn reduction() -> Check {
    let gc = GcInstance::running_example();
    let s = solve_gc(&gc).unwrap();
    ensure!(
        s.winner == Player::Zero,
        "running example won by {:?}",
        s.winner
    );
    ensure!(
        gc.var_count() == 4,
        "running example has {} variables",
        gc.var_count()
    );
    ensure!(
        reduction_width_at_most(&gc)?,
        "running example: width above 4"
    );
    // Random instances are mostly won by Player 0; draw until each winner
    // has 15 instances so both directions of the equivalence are exercised.
    let mut r = rng(5);
    let mut wins = [0; 2];
    let mut draws = 0;
    while wins[0] + wins[1] < 30 {
        draws += 1;
        ensure!(draws <= 100_000, "could not balance the sample: {wins:?}");
        let gc = random_gc(&mut r, 4, 3);
        let winner = solve_gc(&gc).unwrap().winner;
        ensure!(
            winner == gc_winner_oracle(&gc),
            "draw {draws}: solver and oracle disagree"
        );
        let slot = (winner == Player::One) as usize;
        if wins[slot] == 15 {
            continue;
        }
        let small = reduction_width_at_most(&gc).map_err(|e| format!("draw {draws}: {e}"))?;
        ensure!(
            (winner == Player::Zero) == small,
            "draw {draws}: winner {winner:?}, width <= |V| is {small}"
        );
        wins[slot] += 1;
    }
    Ok(())
}

fn breakpoint_suite() -> Check {
    let mut r = rng(6);
    for i in 0..100 {
        let a = random_nca(&mut r, 4, 2);
        let n = a.state_count();
        let words = upwords(a.alphabet().len(), 2, 4);
        let expected: Vec<bool> = words.iter().map(|w| member_up_oracle(&a, w)).collect();
        for k in 1..=n {
            let ak = k_breakpoint(&a, k).unwrap().automaton;
            let bound: usize = (0..=k).map(|j| binom(n, j) << j).sum();
            ensure!(
                ak.state_count() <= bound,
                "automaton {i}, k = {k}: {} states above {bound}",
                ak.state_count()
            );
            for (w, &e) in words.iter().zip(&expected) {
                ensure!(
                    ak.member_up(w) == e,
                    "automaton {i}, k = {k}: disagrees on {w:?}"
                );
            }
        }
    }
    Ok(())
}

/// The vertex order forced by a deterministic pruning, read off the `#`
/// successors of the `r_i` states.
fn pruned_cycle(g: &DiGraph, d: &Automaton) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    let hash = n;
    let next: Vec<usize> = (0..n)
        .map(|i| match d.successors(3 * i + 2, hash) {
            [p] => Some(p / 3),
            _ => None,
        })
        .collect::<Option<_>>()?;
    let mut cycle = vec![0];
    while cycle.len() < n {
        cycle.push(next[*cycle.last().unwrap()]);
    }
    let mut sorted = cycle.clone();
    sorted.sort_unstable();
    sorted.dedup();
    (sorted.len() == n && next[cycle[n - 1]] == 0).then_some(cycle)
}

fn is_hamiltonian_cycle(g: &DiGraph, cycle: &[usize]) -> bool {
    let n = g.vertex_count();
    cycle.len() == n && (0..n).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % n]))
}

fn hamiltonian() -> Check {
    let g = DiGraph::example();
    let a = build_ham_nca(&g);
    let Some(p) = dbp_check_nca(&a, DEFAULT_PRUNING_BUDGET).unwrap() else {
        return Err("example graph: not DBP".into());
    };
    let cycle = pruned_cycle(&g, &p.apply(&a)).ok_or("pruning does not trace a cycle")?;
    ensure!(
        is_hamiltonian_cycle(&g, &cycle),
        "pruning traces {cycle:?}, not a Hamiltonian cycle"
    );
    ensure!(
        hamiltonian_cycle(&g).is_some(),
        "oracle finds no Hamiltonian cycle"
    );
    // dropping 4→3 (vertices 3 and 2 here) leaves no Hamiltonian cycle
    let cut = DiGraph::new(4, g.edges().filter(|&e| e != (3, 2))).unwrap();
    ensure!(
        hamiltonian_cycle(&cut).is_none(),
        "edge-deleted graph is still Hamiltonian"
    );
    ensure!(
        dbp_check_nca(&build_ham_nca(&cut), DEFAULT_PRUNING_BUDGET)
            .unwrap()
            .is_none(),
        "edge-deleted graph: DBP"
    );
    let mut r = rng(7);
    let mut seen = [0; 2];
    for i in 0..20 {
        let n = 2 + i % 5;
        let g = random_strongly_connected(&mut r, n);
        let ham = hamiltonian_cycle(&g).is_some();
        let dbp =
            dbp_check_nca(&build_ham_nca(&g), DEFAULT_PRUNING_BUDGET).map_err(|e| e.to_string())?;
        ensure!(
            dbp.is_some() == ham,
            "graph {i}: DBP {}, Hamiltonian {ham}",
            dbp.is_some()
        );
        seen[ham as usize] += 1;
    }
    ensure!(
        seen[0] > 0 && seen[1] > 0,
        "sample lacks Hamiltonian or non-Hamiltonian graphs: {seen:?}"
    );
    Ok(())
}

fn rabin_key(a: &Automaton, q: StateId) -> Vec<(bool, bool)> {
    match a.acceptance() {
        Acceptance::Rabin(pairs) => pairs
            .iter()
            .map(|p| (p.good.contains(q), p.bad.contains(q)))
            .collect(),
        _ => vec![],
    }
}

fn safra_suite() -> Check {
    let mut r = rng(8);
    for i in 0..50 {
        let a = random_nba(&mut r, 3, 2);
        let n = a.state_count();
        let words = upwords(a.alphabet().len(), 2, 4);
        let expected: Vec<bool> = words.iter().map(|w| member_up_oracle(&a, w)).collect();
        let d = safra(&a).automaton;
        ensure!(
            d.is_deterministic(),
            "automaton {i}: Safra output not deterministic"
        );
        let Acceptance::Rabin(pairs) = d.acceptance() else {
            return Err(format!("automaton {i}: Safra output is not Rabin"));
        };
        ensure!(
            pairs.len() == 2 * n,
            "automaton {i}: {} Rabin pairs for {n} states",
            pairs.len()
        );
        for (w, &e) in words.iter().zip(&expected) {
            ensure!(
                d.member_up(w) == e,
                "automaton {i}: Safra disagrees on {w:?}"
            );
        }
        for k in 1..=n {
            let dk = k_safra(&a, k).unwrap().automaton;
            for (w, &e) in words.iter().zip(&expected) {
                ensure!(
                    dk.member_up(w) == e,
                    "automaton {i}, k = {k}: disagrees on {w:?}"
                );
            }
            if k == n {
                ensure!(
                    isomorphic(&dk, &d, rabin_key),
                    "automaton {i}: k-Safra at k = n differs from Safra"
                );
            }
        }
    }
    Ok(())
}

fn games() -> Check {
    let mut r = rng(9);
    for i in 0..500 {
        let safety = i % 2 == 0;
        let g = random_arena(&mut r, 8, 3, safety);
        let sol = if safety {
            solve_safety(&g)
        } else {
            solve_parity(&g)
        };
        ensure!(
            matches!(g.condition(), Condition::Safety { .. }) == safety,
            "arena {i}: wrong condition kind"
        );
        let oracle = brute_force_winners(&g);
        for v in 0..g.len() {
            ensure!(
                sol.winner(v) == oracle[v],
                "arena {i}, position {v}: solver {:?}, oracle {:?}",
                sol.winner(v),
                oracle[v]
            );
            let p = sol.winner(v);
            let strategy: Vec<Option<usize>> = (0..g.len())
                .map(|w| (g.owner(w) == p).then(|| sol.strategy().get(w)).flatten())
                .collect();
            ensure!(
                strategy_wins(&g, p, &strategy, v),
                "arena {i}, position {v}: returned strategy loses"
            );
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 9] = [
        (
            "1 two-chain family: width 2, 5-state DFA, small A_2",
            fig1,
            Duration::from_secs(1),
        ),
        (
            "2 width versus ambiguity and DFA size",
            triptych,
            Duration::from_secs(5),
        ),
        (
            "3 letter fan: subset and 2-subset sizes",
            fig2,
            Duration::from_secs(1),
        ),
        (
            "4 three width characterisations agree",
            coherence,
            Duration::from_secs(120),
        ),
        (
            "5 G_c reduction: winner 0 iff width <= |V|",
            reduction,
            Duration::from_secs(600),
        ),
        (
            "6 k-breakpoint equivalence and size bound",
            breakpoint_suite,
            Duration::from_secs(120),
        ),
        (
            "7 Hamiltonian cycles versus DBP",
            hamiltonian,
            Duration::from_secs(120),
        ),
        (
            "8 Safra and k-Safra equivalence",
            safra_suite,
            Duration::from_secs(300),
        ),
        (
            "9 game solvers versus brute force",
            games,
            Duration::from_secs(60),
        ),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (name, check, limit) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            if elapsed <= limit {
                Ok(())
            } else {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
        });
        match result {
            Ok(()) => println!("PASS criterion {name} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({elapsed:.2?}): {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}

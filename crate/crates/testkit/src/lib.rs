//! Seeded generators and brute-force oracles shared by the test suites.
//!
//! The oracles deliberately avoid the library's own algorithms: they work
//! on explicit words, explicit strategy profiles and explicit permutations.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use autwidth::games::{Condition, GameArena, Player};
use autwidth::hardness::{DiGraph, GcInstance, Literal};
use autwidth::{Acceptance, Alphabet, Automaton, RabinPair, StateId, StateSet, SymbolId, UpWord};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn alphabet(size: usize) -> Alphabet {
    Alphabet::new((0..size).map(|i| ((b'a' + i as u8) as char).to_string())).unwrap()
}

fn random_set(rng: &mut ChaCha8Rng, n: usize, p: f64) -> StateSet {
    StateSet::from_sorted((0..n).filter(|_| rng.gen_bool(p)).collect())
}

/// Random transitions over `n` states: each triple is present with
/// probability `density`.
pub fn random_transitions(rng: &mut ChaCha8Rng, a: &mut Automaton, density: f64) {
    let n = a.state_count();
    for p in 0..n {
        for sym in 0..a.alphabet().len() {
            for q in 0..n {
                if rng.gen_bool(density) {
                    a.add_transition(p, sym, q);
                }
            }
        }
    }
}

/// A random NFA with at most `max_n` states over at most `max_sigma` letters.
pub fn random_nfa(rng: &mut ChaCha8Rng, max_n: usize, max_sigma: usize) -> Automaton {
    let n = rng.gen_range(1..=max_n);
    let sigma = alphabet(rng.gen_range(1..=max_sigma));
    let density = rng.gen_range(0.15..0.5);
    let f = random_set(rng, n, 0.4);
    let mut a = Automaton::new(sigma, n, 0, Acceptance::FiniteReach(f));
    random_transitions(rng, &mut a, density);
    a
}

fn random_omega(rng: &mut ChaCha8Rng, max_n: usize, max_sigma: usize, buchi: bool) -> Automaton {
    let n = rng.gen_range(1..=max_n);
    let sigma = alphabet(rng.gen_range(1..=max_sigma));
    let density = rng.gen_range(0.2..0.55);
    let f = random_set(rng, n, 0.5);
    let acc = if buchi {
        Acceptance::Buchi(f)
    } else {
        Acceptance::CoBuchi(f)
    };
    let mut a = Automaton::new(sigma, n, 0, acc);
    random_transitions(rng, &mut a, density);
    a
}

pub fn random_nca(rng: &mut ChaCha8Rng, max_n: usize, max_sigma: usize) -> Automaton {
    random_omega(rng, max_n, max_sigma, false)
}

pub fn random_nba(rng: &mut ChaCha8Rng, max_n: usize, max_sigma: usize) -> Automaton {
    random_omega(rng, max_n, max_sigma, true)
}

/// A random arena with at most `max_positions` positions. Safety arenas
/// mark random bad positions; parity arenas use priorities `0..priorities`.
/// Dead ends are allowed.
pub fn random_arena(
    rng: &mut ChaCha8Rng,
    max_positions: usize,
    priorities: u32,
    safety: bool,
) -> GameArena {
    let n = rng.gen_range(1..=max_positions);
    let owner = (0..n)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Player::Zero
            } else {
                Player::One
            }
        })
        .collect();
    let succ = (0..n)
        .map(|_| {
            let d = rng.gen_range(0..=3usize.min(n));
            let mut s: Vec<usize> = (0..n).collect();
            s.shuffle(rng);
            s.truncate(d);
            s
        })
        .collect();
    let condition = if safety {
        Condition::Safety {
            bad: (0..n).map(|_| rng.gen_bool(0.25)).collect(),
        }
    } else {
        Condition::Parity {
            priority: (0..n).map(|_| rng.gen_range(0..priorities)).collect(),
        }
    };
    GameArena::new(owner, succ, 0, condition).unwrap()
}

/// Outcome of the play from `v` under a fixed choice for every position.
fn play_winner(g: &GameArena, choice: &[Option<usize>], v: usize) -> Player {
    let mut seen: Vec<Option<usize>> = vec![None; g.len()];
    let mut path = Vec::new();
    let mut cur = v;
    loop {
        if let Some(start) = seen[cur] {
            let cycle = &path[start..];
            return match g.condition() {
                Condition::Safety { bad } => {
                    if path.iter().any(|&w| bad[w]) {
                        Player::One
                    } else {
                        Player::Zero
                    }
                }
                Condition::Parity { priority } => {
                    let top = cycle.iter().map(|&w| priority[w]).max().unwrap();
                    if top % 2 == 0 {
                        Player::Zero
                    } else {
                        Player::One
                    }
                }
            };
        }
        if let Condition::Safety { bad } = g.condition() {
            if bad[cur] {
                return Player::One;
            }
        }
        seen[cur] = Some(path.len());
        path.push(cur);
        match choice[cur] {
            Some(w) => cur = w,
            None => return g.owner(cur).opponent(),
        }
    }
}

fn profiles(g: &GameArena, p: Player) -> Vec<Vec<Option<usize>>> {
    let mut out = vec![vec![None; g.len()]];
    for v in 0..g.len() {
        if g.owner(v) != p || g.successors(v).is_empty() {
            continue;
        }
        out = out
            .into_iter()
            .flat_map(|prof| {
                g.successors(v).iter().map(move |&w| {
                    let mut q = prof.clone();
                    q[v] = Some(w);
                    q
                })
            })
            .collect();
    }
    out
}

/// Winner of every position by enumerating positional strategy pairs:
/// Player 0 wins `v` iff some positional strategy beats every positional
/// counter-strategy.
pub fn brute_force_winners(g: &GameArena) -> Vec<Player> {
    let s0 = profiles(g, Player::Zero);
    let s1 = profiles(g, Player::One);
    (0..g.len())
        .map(|v| {
            let wins = s0.iter().any(|a| {
                s1.iter().all(|b| {
                    let choice: Vec<Option<usize>> = (0..g.len())
                        .map(|w| {
                            if g.owner(w) == Player::Zero {
                                a[w]
                            } else {
                                b[w]
                            }
                        })
                        .collect();
                    play_winner(g, &choice, v) == Player::Zero
                })
            });
            if wins {
                Player::Zero
            } else {
                Player::One
            }
        })
        .collect()
}

/// Whether Player `p` wins every play from `v` when playing `strategy`,
/// checked against all positional choices of the opponent.
pub fn strategy_wins(g: &GameArena, p: Player, strategy: &[Option<usize>], v: usize) -> bool {
    profiles(g, p.opponent()).iter().all(|b| {
        let choice: Vec<Option<usize>> = (0..g.len())
            .map(|w| if g.owner(w) == p { strategy[w] } else { b[w] })
            .collect();
        play_winner(g, &choice, v) == p
    })
}

/// All words of length at most `max_len`.
pub fn words(sigma: usize, max_len: usize) -> Vec<Vec<SymbolId>> {
    let mut out = vec![vec![]];
    let mut layer = vec![vec![]];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w: &Vec<SymbolId>| {
                (0..sigma).map(move |a| {
                    let mut w2 = w.clone();
                    w2.push(a);
                    w2
                })
            })
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// All ultimately periodic words `u v^ω` with `|u| ≤ max_u` and
/// `1 ≤ |v| ≤ max_v`.
pub fn upwords(sigma: usize, max_u: usize, max_v: usize) -> Vec<UpWord> {
    let us = words(sigma, max_u);
    let vs: Vec<Vec<SymbolId>> = words(sigma, max_v)
        .into_iter()
        .filter(|v| !v.is_empty())
        .collect();
    us.iter()
        .flat_map(|u| {
            vs.iter()
                .map(move |v| UpWord::new(u.clone(), v.clone()).unwrap())
        })
        .collect()
}

/// Finite-word membership by tracking the set of reachable states.
pub fn member_finite_oracle(a: &Automaton, w: &[SymbolId]) -> bool {
    let mut cur: BTreeSet<StateId> = [a.initial()].into();
    for &x in w {
        cur = cur
            .iter()
            .flat_map(|&p| a.successors(p, x).iter().copied())
            .collect();
    }
    cur.iter().any(|&q| a.is_accepting(q))
}

/// Per pair of states `(p, q)`: the flags of the runs reading one copy of
/// the period from `p` to `q`, as (visits `good` somewhere, avoids `bad`
/// everywhere) combinations.
fn period_relation(
    a: &Automaton,
    v: &[SymbolId],
    good: &StateSet,
    bad: &StateSet,
) -> BTreeSet<(StateId, StateId, bool, bool)> {
    let mut out = BTreeSet::new();
    for p in 0..a.state_count() {
        // run states after each letter with flags
        let mut cur: BTreeSet<(StateId, bool, bool)> =
            [(p, good.contains(p), !bad.contains(p))].into();
        for &x in v {
            cur = cur
                .iter()
                .flat_map(|&(s, g, ok)| {
                    a.successors(s, x)
                        .iter()
                        .map(move |&t| (t, g || good.contains(t), ok && !bad.contains(t)))
                        .collect::<Vec<_>>()
                })
                .collect();
        }
        for (q, g, ok) in cur {
            out.insert((p, q, g, ok));
        }
    }
    out
}

/// Whether some run on `u v^ω` visits `good` infinitely often and `bad`
/// finitely often, found as a cycle in the period relation.
fn rabin_pair_accepts(a: &Automaton, w: &UpWord, good: &StateSet, bad: &StateSet) -> bool {
    let start: BTreeSet<StateId> =
        w.prefix()
            .iter()
            .fold([a.initial()].into(), |cur: BTreeSet<StateId>, &x| {
                cur.iter()
                    .flat_map(|&p| a.successors(p, x).iter().copied())
                    .collect()
            });
    let rel = period_relation(a, w.period(), good, bad);
    // states reachable from `start` by whole periods, including zero
    let mut reach: BTreeSet<StateId> = start.clone();
    let mut queue: VecDeque<StateId> = start.into_iter().collect();
    while let Some(p) = queue.pop_front() {
        for &(_, q, _, _) in rel.iter().filter(|e| e.0 == p) {
            if reach.insert(q) {
                queue.push_back(q);
            }
        }
    }
    // a cycle of bad-free edges, one of them visiting good
    let clean: Vec<(StateId, StateId, bool)> = rel
        .iter()
        .filter(|e| e.3)
        .map(|&(p, q, g, _)| (p, q, g))
        .collect();
    let closure = |from: StateId| {
        let mut seen: BTreeSet<StateId> = BTreeSet::new();
        let mut queue = VecDeque::from([from]);
        while let Some(p) = queue.pop_front() {
            for &(_, q, _) in clean.iter().filter(|e| e.0 == p) {
                if seen.insert(q) {
                    queue.push_back(q);
                }
            }
        }
        seen
    };
    clean
        .iter()
        .any(|&(p, q, g)| g && reach.contains(&p) && closure(q).contains(&p))
}

/// `ω`-word membership for Büchi, coBüchi and Rabin automata.
pub fn member_up_oracle(a: &Automaton, w: &UpWord) -> bool {
    let all = StateSet::from_sorted((0..a.state_count()).collect());
    match a.acceptance() {
        Acceptance::Buchi(f) => rabin_pair_accepts(a, w, f, &StateSet::new()),
        Acceptance::CoBuchi(f) => rabin_pair_accepts(a, w, &all, &all.difference(f)),
        Acceptance::Rabin(pairs) => pairs
            .iter()
            .any(|RabinPair { good, bad }| rabin_pair_accepts(a, w, good, bad)),
        Acceptance::FiniteReach(_) => panic!("finite-word automaton"),
    }
}

/// `L(a) ⊆ L(b)` on finite words, by search over pairs of a state of `a`
/// and the set of states of `b` reached on the same word.
pub fn inclusion_oracle(a: &Automaton, b: &Automaton) -> bool {
    let start = (a.initial(), BTreeSet::from([b.initial()]));
    let mut seen = BTreeSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some((p, set)) = queue.pop_front() {
        if a.is_accepting(p) && !set.iter().any(|&q| b.is_accepting(q)) {
            return false;
        }
        for x in 0..a.alphabet().len() {
            let next: BTreeSet<StateId> = set
                .iter()
                .flat_map(|&q| b.successors(q, x).iter().copied())
                .collect();
            for &p2 in a.successors(p, x) {
                let key = (p2, next.clone());
                if seen.insert(key.clone()) {
                    queue.push_back(key);
                }
            }
        }
    }
    true
}

/// Whether two deterministic automata are equal up to renaming states,
/// comparing acceptance through `accept_key`.
pub fn isomorphic<K: Ord>(
    a: &Automaton,
    b: &Automaton,
    accept_key: impl Fn(&Automaton, StateId) -> K,
) -> bool {
    if a.state_count() != b.state_count() || a.alphabet() != b.alphabet() {
        return false;
    }
    let mut map: BTreeMap<StateId, StateId> = BTreeMap::from([(a.initial(), b.initial())]);
    let mut queue = VecDeque::from([a.initial()]);
    while let Some(p) = queue.pop_front() {
        let q = map[&p];
        if accept_key(a, p) != accept_key(b, q) {
            return false;
        }
        for x in 0..a.alphabet().len() {
            match (a.successors(p, x), b.successors(q, x)) {
                ([], []) => {}
                ([p2], [q2]) => match map.get(p2) {
                    Some(m) if m != q2 => return false,
                    Some(_) => {}
                    None => {
                        map.insert(*p2, *q2);
                        queue.push_back(*p2);
                    }
                },
                _ => return false,
            }
        }
    }
    let mut images: Vec<StateId> = map.values().copied().collect();
    images.sort_unstable();
    images.dedup();
    images.len() == map.len()
}

/// A Hamiltonian cycle starting at vertex 0, by trying every permutation.
pub fn hamiltonian_cycle(g: &DiGraph) -> Option<Vec<usize>> {
    let n = g.vertex_count();
    if n == 0 {
        return None;
    }
    fn extend(g: &DiGraph, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let n = used.len();
        let last = *path.last().unwrap();
        if path.len() == n {
            return g.has_edge(last, path[0]);
        }
        for v in 0..n {
            if !used[v] && g.has_edge(last, v) {
                used[v] = true;
                path.push(v);
                if extend(g, path, used) {
                    return true;
                }
                path.pop();
                used[v] = false;
            }
        }
        false
    }
    let mut path = vec![0];
    let mut used = vec![false; n];
    used[0] = true;
    extend(g, &mut path, &mut used).then_some(path)
}

/// A random strongly connected digraph: a random Hamiltonian-free base of
/// back edges plus a spanning in-tree and out-tree around vertex 0 and
/// extra random edges.
pub fn random_strongly_connected(rng: &mut ChaCha8Rng, n: usize) -> DiGraph {
    loop {
        let mut edges = BTreeSet::new();
        for v in 1..n {
            edges.insert((rng.gen_range(0..v), v));
            edges.insert((v, rng.gen_range(0..v)));
        }
        let extra = rng.gen_range(0..=n);
        for _ in 0..extra {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if i != j {
                edges.insert((i, j));
            }
        }
        let g = DiGraph::new(n, edges).unwrap();
        if g.is_strongly_connected() {
            return g;
        }
    }
}

/// A random `G_c` instance with `|X0| + |X1| ≤ max_vars` and at most
/// `max_clauses` clauses.
pub fn random_gc(rng: &mut ChaCha8Rng, max_vars: usize, max_clauses: usize) -> GcInstance {
    let total = rng.gen_range(0..=max_vars);
    let n0 = rng.gen_range(0..=total);
    let vars0 = (0..n0).map(|i| format!("x{i}")).collect();
    let vars1 = (n0..total).map(|i| format!("z{i}")).collect();
    let vars = total + 1;
    let clauses = (0..rng.gen_range(1..=max_clauses))
        .map(|_| {
            [(); 4].map(|_| Literal {
                var: rng.gen_range(0..vars),
                positive: rng.gen_bool(0.5),
            })
        })
        .collect();
    let init = rng.gen_range(0..1u32 << vars);
    GcInstance::new(vars0, vars1, clauses, init).unwrap()
}

/// Winner of a `G_c` instance by the alternating fixpoint over explicit
/// valuations: the set of positions from which Player 1 can force Player
/// 0 into falsifying the formula.
pub fn gc_winner_oracle(gc: &GcInstance) -> Player {
    let n = gc.var_count();
    let t = gc.t();
    let vals: Vec<u32> = (0..1u32 << n).collect();
    let mine = |p: Player| -> Vec<usize> { (0..t).filter(|&v| gc.owner(v) == Some(p)).collect() };
    let moves = |p: Player, val: u32| -> Vec<u32> {
        let vars = mine(p);
        (0..1u32 << vars.len())
            .map(|bits| {
                let mut next = val;
                for (i, &v) in vars.iter().enumerate() {
                    next = (next & !(1 << v)) | ((bits >> i & 1) << v);
                }
                if p == Player::One {
                    next | 1 << t
                } else {
                    next & !(1 << t)
                }
            })
            .collect()
    };
    // lose[p][val]: Player 1 forces a win from (p, val)
    let mut lose: BTreeMap<(Player, u32), bool> = BTreeMap::new();
    for &v in &vals {
        lose.insert((Player::Zero, v), false);
        lose.insert((Player::One, v), false);
    }
    loop {
        let mut changed = false;
        for &v in &vals {
            for p in [Player::Zero, Player::One] {
                if lose[&(p, v)] {
                    continue;
                }
                let outcomes: Vec<bool> = moves(p, v)
                    .into_iter()
                    .map(|next| {
                        if !gc.satisfies(next) {
                            p == Player::Zero
                        } else {
                            lose[&(p.opponent(), next)]
                        }
                    })
                    .collect();
                let now = if p == Player::Zero {
                    outcomes.iter().all(|&b| b)
                } else {
                    outcomes.iter().any(|&b| b)
                };
                if now {
                    lose.insert((p, v), true);
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    if lose[&(Player::One, gc.init)] {
        Player::One
    } else {
        Player::Zero
    }
}

/// Small automaton families with known width, ambiguity and DFA sizes.
pub mod families {
    use autwidth::{Acceptance, Alphabet, Automaton, StateSet};

    fn binary() -> Alphabet {
        Alphabet::new(["0", "1"]).unwrap()
    }

    /// `0 --a--> {0, 1}` with `1` accepting: the language `a+`, width 2.
    pub fn e1() -> Automaton {
        let mut a = Automaton::new(
            Alphabet::new(["a"]).unwrap(),
            2,
            0,
            Acceptance::FiniteReach(StateSet::singleton(1)),
        );
        a.add_transition(0, 0, 0);
        a.add_transition(0, 0, 1);
        a
    }

    /// `Σ* a Σ^{≥m}` over `{a, b}` through two chains `p_i`, `q_i` that
    /// guess the letter at distance `m` from the `a`. States: `s = 0`,
    /// `p_i = i`, `q_i = m + i`, `t = 2m + 1`.
    pub fn two_chains(m: usize) -> Automaton {
        let sigma = Alphabet::new(["a", "b"]).unwrap();
        let (s, t) = (0, 2 * m + 1);
        let (p, q) = (|i: usize| i, |i: usize| m + i);
        let mut a = Automaton::new(
            sigma,
            2 * m + 2,
            s,
            Acceptance::FiniteReach(StateSet::singleton(t)),
        );
        for x in 0..2 {
            a.add_transition(s, x, s);
            a.add_transition(t, x, t);
            for i in 1..m {
                a.add_transition(p(i), x, p(i + 1));
                a.add_transition(q(i), x, q(i + 1));
            }
        }
        a.add_transition(s, 0, p(1));
        a.add_transition(s, 0, q(1));
        a.add_transition(p(m), 0, p(m));
        a.add_transition(p(m), 1, t);
        a.add_transition(q(m), 0, t);
        a.add_transition(q(m), 1, q(m));
        a
    }

    /// `s --Σ--> p_i` for every `i` and `p_i --x_i--> t`: the subset
    /// construction has 3 states, the 2-subset construction `C(n,2) + 2`.
    pub fn letter_fan(n: usize) -> Automaton {
        let sigma = Alphabet::new((1..=n).map(|i| format!("x{i}"))).unwrap();
        let (s, t) = (0, n + 1);
        let mut a = Automaton::new(
            sigma,
            n + 2,
            s,
            Acceptance::FiniteReach(StateSet::singleton(t)),
        );
        for i in 0..n {
            for x in 0..n {
                a.add_transition(s, x, 1 + i);
            }
            a.add_transition(1 + i, i, t);
        }
        a
    }

    /// Two accepting states, every pair connected on every letter: width 1
    /// with `2^ℓ` runs on each word of length `ℓ`.
    pub fn full_pair() -> Automaton {
        let mut a = Automaton::new(
            binary(),
            2,
            0,
            Acceptance::FiniteReach(StateSet::from_sorted(vec![0, 1])),
        );
        for x in 0..2 {
            for p in 0..2 {
                for q in 0..2 {
                    a.add_transition(p, x, q);
                }
            }
        }
        a
    }

    /// `Σ* 0 Σ^{n-1}` with `n + 1` states: unambiguous, width `n`.
    pub fn nth_from_last(n: usize) -> Automaton {
        let mut a = Automaton::new(
            binary(),
            n + 1,
            0,
            Acceptance::FiniteReach(StateSet::singleton(n)),
        );
        for x in 0..2 {
            a.add_transition(0, x, 0);
            for i in 1..n {
                a.add_transition(i, x, i + 1);
            }
        }
        a.add_transition(0, 0, 1);
        a
    }

    /// `(0 + (01*)^{n-1} 0)*`: a cycle of `0`-edges through `n` states with a
    /// `0`-loop on the first and `1`-loops on the others; width `n`.
    pub fn zero_cycle(n: usize) -> Automaton {
        let mut a = Automaton::new(
            binary(),
            n,
            0,
            Acceptance::FiniteReach(StateSet::singleton(0)),
        );
        a.add_transition(0, 0, 0);
        for i in 0..n {
            a.add_transition(i, 0, (i + 1) % n);
            if i > 0 {
                a.add_transition(i, 1, i);
            }
        }
        a
    }
}

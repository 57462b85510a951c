//! Good-for-games checks through letter games, and determinisability by
//! pruning through an exhaustive search over prunings.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::classic::explore;
use crate::games::{solve_parity, solve_safety, Condition, GameArena, Player, Strategy};
use crate::lasso::LabeledGraph;
use crate::{
    breakpoint_determinize, equivalent_finite, included_finite, subset_construction, Acceptance,
    Automaton, Error, StateId, StateSet, SymbolId, WordMode,
};

/// Default cap on the number of prunings a DBP search may enumerate.
pub const DEFAULT_PRUNING_BUDGET: u128 = 1_000_000;

/// A position of the letter game. The token is the automaton state chosen
/// by Player 0, `None` once the run has died.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LetterPosition {
    Letter {
        token: Option<StateId>,
        referee: StateId,
    },
    Answer {
        token: Option<StateId>,
        referee: StateId,
        letter: SymbolId,
    },
}

/// Player 1 plays letters, Player 0 moves a token through the automaton,
/// and a deterministic referee tracks membership of the word in the
/// language.
#[derive(Clone, Debug)]
pub struct LetterGame {
    arena: GameArena,
    positions: Vec<LetterPosition>,
}

impl LetterGame {
    fn build(
        a: &Automaton,
        referee: &Automaton,
        condition: impl Fn(&LetterPosition) -> (bool, u32),
        parity: bool,
    ) -> LetterGame {
        let start = LetterPosition::Letter {
            token: Some(a.initial()),
            referee: referee.initial(),
        };
        let mut index = BTreeMap::from([(start, 0usize)]);
        let mut positions = vec![start];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new()];
        let mut i = 0;
        while i < positions.len() {
            let next: Vec<LetterPosition> = match positions[i] {
                // letters leaving the referee's language are never worth
                // playing for Player 1
                LetterPosition::Letter { token, referee: d } => (0..a.alphabet().len())
                    .filter(|&sym| !referee.successors(d, sym).is_empty())
                    .map(|sym| LetterPosition::Answer {
                        token,
                        referee: d,
                        letter: sym,
                    })
                    .collect(),
                LetterPosition::Answer {
                    token,
                    referee: d,
                    letter,
                } => {
                    let d2 = referee.successors(d, letter)[0];
                    let targets: &[StateId] = match token {
                        Some(q) => a.successors(q, letter),
                        None => &[],
                    };
                    if targets.is_empty() {
                        vec![LetterPosition::Letter {
                            token: None,
                            referee: d2,
                        }]
                    } else {
                        targets
                            .iter()
                            .map(|&q2| LetterPosition::Letter {
                                token: Some(q2),
                                referee: d2,
                            })
                            .collect()
                    }
                }
            };
            for pos in next {
                let j = *index.entry(pos).or_insert_with(|| {
                    positions.push(pos);
                    succ.push(Vec::new());
                    positions.len() - 1
                });
                succ[i].push(j);
            }
            i += 1;
        }
        let owner = positions
            .iter()
            .map(|p| match p {
                LetterPosition::Letter { .. } => Player::One,
                LetterPosition::Answer { .. } => Player::Zero,
            })
            .collect();
        let labels: Vec<(bool, u32)> = positions.iter().map(&condition).collect();
        let cond = if parity {
            Condition::Parity {
                priority: labels.iter().map(|l| l.1).collect(),
            }
        } else {
            Condition::Safety {
                bad: labels.iter().map(|l| l.0).collect(),
            }
        };
        LetterGame {
            arena: GameArena::new(owner, succ, 0, cond).expect("well-formed arena"),
            positions,
        }
    }

    pub fn arena(&self) -> &GameArena {
        &self.arena
    }

    pub fn position(&self, v: usize) -> LetterPosition {
        self.positions[v]
    }

    pub fn positions(&self) -> &[LetterPosition] {
        &self.positions
    }
}

#[derive(Clone, Debug)]
pub struct GfgResult {
    pub gfg: bool,
    pub game: LetterGame,
    /// Player 0's winning strategy when the automaton is GFG.
    pub strategy: Option<Strategy>,
}

fn check_referee(a: &Automaton, referee: &Automaton) -> Result<(), Error> {
    if a.alphabet() != referee.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    assert!(
        referee.is_deterministic(),
        "the referee must be deterministic"
    );
    Ok(())
}

/// GFG check for an NFA with the subset construction as referee.
pub fn gfg_check_nfa(a: &Automaton) -> GfgResult {
    let referee = subset_construction(a).automaton;
    gfg_check_nfa_with_referee(a, &referee).expect("same alphabet")
}

/// GFG check for an NFA against any DFA for its language. A position
/// `(q, d)` reached after Player 0's answer is bad when `d` accepts and `q`
/// does not.
pub fn gfg_check_nfa_with_referee(a: &Automaton, referee: &Automaton) -> Result<GfgResult, Error> {
    assert_eq!(
        a.mode(),
        WordMode::Finite,
        "gfg_check_nfa needs a finite-word automaton"
    );
    check_referee(a, referee)?;
    let f = a.accepting_set().unwrap();
    let game = LetterGame::build(
        a,
        referee,
        |p| match *p {
            LetterPosition::Letter { token, referee: d } => (
                referee.is_accepting(d) && !token.is_some_and(|q| f.contains(q)),
                0,
            ),
            LetterPosition::Answer { .. } => (false, 0),
        },
        false,
    );
    let solution = solve_safety(game.arena());
    let gfg = solution.initial_winner() == Player::Zero;
    Ok(GfgResult {
        gfg,
        strategy: gfg.then(|| solution.strategy().clone()),
        game,
    })
}

/// GFG check for a coBüchi automaton with the breakpoint construction as
/// referee.
pub fn gfg_check_nca(a: &Automaton) -> GfgResult {
    let referee = breakpoint_determinize(a).automaton;
    gfg_check_nca_with_referee(a, &referee).expect("same alphabet")
}

/// GFG check for a coBüchi automaton against any deterministic coBüchi
/// automaton for its language, as a parity game with priorities 2 (referee
/// rejecting), 1 (token outside `F`) and 0.
pub fn gfg_check_nca_with_referee(a: &Automaton, referee: &Automaton) -> Result<GfgResult, Error> {
    let f = match a.acceptance() {
        Acceptance::CoBuchi(f) => f.clone(),
        _ => panic!("gfg_check_nca needs a coBuchi automaton"),
    };
    let fr = match referee.acceptance() {
        Acceptance::CoBuchi(f) => f.clone(),
        _ => panic!("the referee must be a coBuchi automaton"),
    };
    check_referee(a, referee)?;
    let game = LetterGame::build(
        a,
        referee,
        |p| match *p {
            LetterPosition::Letter { token, referee: d } => {
                let prio = if !fr.contains(d) {
                    2
                } else if !token.is_some_and(|q| f.contains(q)) {
                    1
                } else {
                    0
                };
                (false, prio)
            }
            LetterPosition::Answer { .. } => (false, 0),
        },
        true,
    );
    let solution = solve_parity(game.arena());
    let gfg = solution.initial_winner() == Player::Zero;
    Ok(GfgResult {
        gfg,
        strategy: gfg.then(|| solution.strategy().clone()),
        game,
    })
}

/// One retained successor per nondeterministic choice point `(q, a)`,
/// ordered by choice point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pruning {
    choices: Vec<((StateId, SymbolId), StateId)>,
}

impl Pruning {
    pub fn choices(&self) -> &[((StateId, SymbolId), StateId)] {
        &self.choices
    }

    pub fn choice(&self, q: StateId, sym: SymbolId) -> Option<StateId> {
        self.choices
            .binary_search_by_key(&(q, sym), |c| c.0)
            .ok()
            .map(|i| self.choices[i].1)
    }

    /// The deterministic automaton keeping only the chosen transitions.
    pub fn apply(&self, a: &Automaton) -> Automaton {
        let mut d = a.clone();
        for &((q, sym), keep) in &self.choices {
            d.restrict_transition(q, sym, keep);
        }
        d
    }
}

fn choice_points(a: &Automaton) -> Vec<(StateId, SymbolId)> {
    let mut out = Vec::new();
    for q in 0..a.state_count() {
        for sym in 0..a.alphabet().len() {
            if a.successors(q, sym).len() > 1 {
                out.push((q, sym));
            }
        }
    }
    out
}

/// The DFA obtained by pruning a GFG NFA along a winning letter-game
/// strategy (see [`dbp_check_nfa`] for how the pruning is found).
pub fn prune_to_dfa(
    a: &Automaton,
    game: &LetterGame,
    strategy: &Strategy,
) -> Result<Automaton, Error> {
    Ok(nfa_pruning(a, game, strategy)?.apply(a))
}

fn keeps_language(a: &Automaton, p: &Pruning) -> bool {
    equivalent_finite(&p.apply(a), a)
        .expect("same alphabet")
        .is_none()
}

/// A language-preserving pruning of a GFG NFA. Candidates, each verified:
/// the choices the strategy makes from the first position holding each
/// state; then, at every choice point, a successor whose language contains
/// the languages of the others; then every pruning in order.
fn nfa_pruning(a: &Automaton, game: &LetterGame, strategy: &Strategy) -> Result<Pruning, Error> {
    let first = strategy_pruning(a, game, strategy)?;
    if keeps_language(a, &first) {
        return Ok(first);
    }
    let residual = Pruning {
        choices: choice_points(a)
            .into_iter()
            .map(|(q, sym)| {
                let succ = a.successors(q, sym);
                let keep = succ
                    .iter()
                    .copied()
                    .find(|&big| {
                        succ.iter().all(|&small| {
                            included_finite(&a.with_initial(small), &a.with_initial(big))
                                .expect("same alphabet")
                                .is_none()
                        })
                    })
                    .unwrap_or(succ[0]);
                ((q, sym), keep)
            })
            .collect(),
    };
    if keeps_language(a, &residual) {
        return Ok(residual);
    }
    let points = choice_points(a);
    let mut digits = vec![0usize; points.len()];
    loop {
        let p = Pruning {
            choices: points
                .iter()
                .zip(&digits)
                .map(|(&(q, s), &i)| ((q, s), a.successors(q, s)[i]))
                .collect(),
        };
        if keeps_language(a, &p) {
            return Ok(p);
        }
        let Some(pos) = (0..digits.len())
            .rposition(|i| digits[i] + 1 < a.successors(points[i].0, points[i].1).len())
        else {
            return Err(Error::InconsistentStrategy);
        };
        digits[pos] += 1;
        for d in &mut digits[pos + 1..] {
            *d = 0;
        }
    }
}

fn strategy_pruning(
    a: &Automaton,
    game: &LetterGame,
    strategy: &Strategy,
) -> Result<Pruning, Error> {
    let arena = game.arena();
    let mut first = vec![None; a.state_count()];
    let mut seen = vec![false; arena.len()];
    let mut queue = alloc::collections::VecDeque::from([arena.initial()]);
    seen[arena.initial()] = true;
    let mut chosen: BTreeMap<(StateId, SymbolId), StateId> = BTreeMap::new();
    while let Some(v) = queue.pop_front() {
        let next: Vec<usize> = match game.position(v) {
            LetterPosition::Letter { token, .. } => {
                if let Some(q) = token {
                    if first[q].is_none() {
                        first[q] = Some(v);
                    }
                }
                arena.successors(v).to_vec()
            }
            LetterPosition::Answer { token, letter, .. } => {
                if arena.successors(v).is_empty() {
                    continue;
                }
                let w = strategy.get(v).ok_or(Error::InconsistentStrategy)?;
                if !arena.successors(v).contains(&w) {
                    return Err(Error::InconsistentStrategy);
                }
                if let (
                    Some(q),
                    LetterPosition::Letter {
                        token: Some(q2), ..
                    },
                ) = (token, game.position(w))
                {
                    // only answers from the first position holding q count
                    let from_first = arena
                        .successors(first[q].expect("letter positions precede answers"))
                        .contains(&v);
                    if from_first {
                        chosen.entry((q, letter)).or_insert(q2);
                    }
                }
                vec![w]
            }
        };
        for w in next {
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    let choices = choice_points(a)
        .into_iter()
        .map(|(q, sym)| {
            let keep = chosen
                .get(&(q, sym))
                .copied()
                .unwrap_or(a.successors(q, sym)[0]);
            ((q, sym), keep)
        })
        .collect();
    Ok(Pruning { choices })
}

/// DBP check for an NFA, which coincides with the GFG check.
pub fn dbp_check_nfa(a: &Automaton) -> Option<Pruning> {
    let r = gfg_check_nfa(a);
    r.strategy
        .map(|s| nfa_pruning(a, &r.game, &s).expect("GFG automata on finite words are DBP"))
}

/// The acceptance condition as a list of Rabin pairs over `n` states.
fn as_rabin(acc: &Acceptance, n: usize) -> Vec<(StateSet, StateSet)> {
    let all: StateSet = (0..n).collect();
    match acc {
        Acceptance::FiniteReach(_) => panic!("finite-word acceptance has no Rabin form"),
        Acceptance::Buchi(f) => vec![(f.clone(), StateSet::new())],
        Acceptance::CoBuchi(f) => vec![(all.clone(), all.difference(f))],
        Acceptance::Rabin(pairs) => pairs
            .iter()
            .map(|p| (p.good.clone(), p.bad.clone()))
            .collect(),
    }
}

/// Whether `L(a) ⊆ L(d)` for an ω-automaton `a` and a deterministic
/// ω-automaton `d`, by searching an accepting lasso of `a × dual(d)`.
pub fn included_in_deterministic(a: &Automaton, d: &Automaton) -> Result<bool, Error> {
    if a.alphabet() != d.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    assert!(
        d.is_deterministic(),
        "the right-hand automaton must be deterministic"
    );
    assert_eq!(
        a.mode(),
        WordMode::Infinite,
        "inclusion needs infinite-word automata"
    );
    let sink = d.state_count();
    let (states, edges) = explore(
        a.alphabet().len(),
        (a.initial(), d.initial()),
        usize::MAX,
        "",
        |&(p, q), sym| {
            let q2 = if q == sink {
                sink
            } else {
                d.successors(q, sym).first().copied().unwrap_or(sink)
            };
            a.successors(p, sym).iter().map(|&p2| (p2, q2)).collect()
        },
    )
    .expect("unbounded");
    let mut graph = LabeledGraph {
        succ: vec![Vec::new(); states.len()],
    };
    for (u, sym, v) in edges {
        graph.succ[u].push((sym, v));
    }
    // the dual of a deterministic Rabin automaton is Streett: for each pair
    // (G, B), visiting G infinitely often forces visiting B infinitely often
    let constraints: Vec<(Vec<bool>, Vec<bool>)> = as_rabin(d.acceptance(), d.state_count())
        .iter()
        .map(|(g, b)| {
            let e = states
                .iter()
                .map(|&(_, q)| q == sink || b.contains(q))
                .collect();
            let f = states
                .iter()
                .map(|&(_, q)| q != sink && g.contains(q))
                .collect();
            (e, f)
        })
        .collect();
    let nonempty = as_rabin(a.acceptance(), a.state_count())
        .iter()
        .any(|(g, b)| {
            let allowed: Vec<bool> = states.iter().map(|&(p, _)| !b.contains(p)).collect();
            let must: Vec<bool> = states.iter().map(|&(p, _)| g.contains(p)).collect();
            graph.has_fair_cycle(0, &allowed, &must, &constraints)
        });
    Ok(!nonempty)
}

/// Whether `L(a) ⊆ L(d)` for a coBüchi automaton `a` and a deterministic
/// coBüchi automaton `d`.
pub fn inclusion_nca_in_dca(a: &Automaton, d: &Automaton) -> Result<bool, Error> {
    for x in [a, d] {
        assert!(
            matches!(x.acceptance(), Acceptance::CoBuchi(_)),
            "inclusion_nca_in_dca needs coBuchi automata"
        );
    }
    included_in_deterministic(a, d)
}

/// Exhaustive search for a pruning of an ω-automaton that keeps its
/// language; the first pruning in lexicographic order is returned.
fn search_pruning(a: &Automaton, budget: u128) -> Result<Option<Pruning>, Error> {
    let points = choice_points(a);
    let degrees: Vec<usize> = points
        .iter()
        .map(|&(q, s)| a.successors(q, s).len())
        .collect();
    let total = degrees
        .iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
        .unwrap_or(u128::MAX);
    if total > budget {
        return Err(Error::PruningBudget {
            choice_points: points.len(),
            prunings: total,
            budget,
        });
    }
    let mut digits = vec![0usize; points.len()];
    let mut memo: BTreeMap<Vec<Option<usize>>, bool> = BTreeMap::new();
    loop {
        let pruning = Pruning {
            choices: points
                .iter()
                .zip(&digits)
                .map(|(&(q, s), &i)| ((q, s), a.successors(q, s)[i]))
                .collect(),
        };
        let d = pruning.apply(a);
        let mut reachable = vec![false; a.state_count()];
        for q in d.reachable_states() {
            reachable[q] = true;
        }
        let key: Vec<Option<usize>> = points
            .iter()
            .zip(&digits)
            .map(|(&(q, _), &i)| reachable[q].then_some(i))
            .collect();
        let ok = match memo.get(&key) {
            Some(&v) => v,
            None => {
                let v = included_in_deterministic(a, &d)?;
                memo.insert(key, v);
                v
            }
        };
        if ok {
            return Ok(Some(pruning));
        }
        // odometer: last choice point varies fastest
        let mut pos = digits.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < degrees[pos] {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// DBP check for a coBüchi automaton.
pub fn dbp_check_nca(a: &Automaton, budget: u128) -> Result<Option<Pruning>, Error> {
    assert!(
        matches!(a.acceptance(), Acceptance::CoBuchi(_)),
        "dbp_check_nca needs a coBuchi automaton"
    );
    search_pruning(a, budget)
}

/// DBP check for a Rabin automaton (Büchi and coBüchi inputs are accepted
/// too).
pub fn dbp_check_rabin(a: &Automaton, budget: u128) -> Result<Option<Pruning>, Error> {
    assert_eq!(
        a.mode(),
        WordMode::Infinite,
        "dbp_check_rabin needs an infinite-word automaton"
    );
    search_pruning(a, budget)
}

//! Width games and the incremental determinisation procedures built on them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::constructions::{k_breakpoint_bounded, k_subset_bounded};
use crate::games::{solve_safety, Condition, GameArena, Player, Solution, Strategy};
use crate::gfg::{self, LetterGame, DEFAULT_PRUNING_BUDGET};
use crate::safra::k_safra_bounded;
use crate::{
    minimize_dfa, subsets_up_to, Acceptance, Automaton, Error, StateId, StateSet, SymbolId,
    WordMode,
};

/// How Player 0 may update the pebble configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MoveRule {
    /// Any subset of the successors with at most `k` elements, the empty
    /// set included.
    #[default]
    AllSubsets,
    /// `k` pebbles start on the initial state and each one follows a single
    /// transition; a pebble without a transition is lost. Pebbles may share
    /// a state but are never created.
    NoDuplication,
}

/// A position of the width game. `pebbles` is sorted; under
/// [`MoveRule::AllSubsets`] it has no repetitions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WidthPosition {
    /// Player 1 picks the next letter.
    Letter {
        pebbles: Vec<StateId>,
        referee: usize,
    },
    /// Player 0 answers `letter`.
    Answer {
        pebbles: Vec<StateId>,
        referee: usize,
        letter: SymbolId,
    },
}

/// A deterministic automaton tracking membership of the word played so far.
/// Either the subset construction, built on demand, or a supplied DFA.
pub(crate) enum Referee<'a> {
    Lazy {
        a: &'a Automaton,
        sets: Vec<StateSet>,
        index: BTreeMap<StateSet, usize>,
    },
    Dfa(&'a Automaton),
}

impl<'a> Referee<'a> {
    pub(crate) fn new(a: &'a Automaton, dfa: Option<&'a Automaton>) -> Self {
        match dfa {
            Some(d) => {
                assert!(d.is_deterministic(), "referee must be deterministic");
                Referee::Dfa(d)
            }
            None => {
                let init = StateSet::singleton(a.initial());
                Referee::Lazy {
                    a,
                    sets: vec![init.clone()],
                    index: BTreeMap::from([(init, 0)]),
                }
            }
        }
    }

    pub(crate) fn initial(&self) -> usize {
        match self {
            Referee::Lazy { .. } => 0,
            Referee::Dfa(d) => d.initial(),
        }
    }

    pub(crate) fn step(&mut self, d: usize, sym: SymbolId) -> Option<usize> {
        match self {
            Referee::Dfa(dfa) => dfa.successors(d, sym).first().copied(),
            Referee::Lazy { a, sets, index } => {
                let next = a.post(&sets[d], sym);
                if next.is_empty() {
                    return None;
                }
                if let Some(&i) = index.get(&next) {
                    return Some(i);
                }
                sets.push(next.clone());
                index.insert(next, sets.len() - 1);
                Some(sets.len() - 1)
            }
        }
    }

    pub(crate) fn accepting(&self, d: usize) -> bool {
        match self {
            Referee::Dfa(dfa) => dfa.is_accepting(d),
            Referee::Lazy { a, sets, .. } => sets[d].intersects(a.accepting_set().unwrap()),
        }
    }
}

/// The width game `Gw(A, k)` on finite words: a safety game in which Player
/// 0 loses when the word so far is accepted by `A` but no pebble sits on an
/// accepting state.
#[derive(Clone, Debug)]
pub struct WidthGame {
    pub k: usize,
    pub rule: MoveRule,
    arena: GameArena,
    positions: Vec<WidthPosition>,
}

/// Successor multisets of a sorted pebble multiset under the no-duplication
/// rule.
pub(crate) fn pebble_moves(a: &Automaton, pebbles: &[StateId], sym: SymbolId) -> Vec<Vec<StateId>> {
    let mut out: Vec<Vec<StateId>> = vec![Vec::new()];
    let mut i = 0;
    while i < pebbles.len() {
        let q = pebbles[i];
        let mut mult = 0;
        while i < pebbles.len() && pebbles[i] == q {
            mult += 1;
            i += 1;
        }
        let succ = a.successors(q, sym);
        if succ.is_empty() {
            continue;
        }
        // multisets of size `mult` over `succ`
        let mut groups: Vec<Vec<StateId>> = Vec::new();
        let mut idx = vec![0usize; mult];
        loop {
            groups.push(idx.iter().map(|&j| succ[j]).collect());
            let Some(pos) = (0..mult).rev().find(|&p| idx[p] + 1 < succ.len()) else {
                break;
            };
            idx[pos] += 1;
            for j in pos + 1..mult {
                idx[j] = idx[pos];
            }
        }
        out = out
            .into_iter()
            .flat_map(|prefix| {
                groups.iter().map(move |g| {
                    let mut v = prefix.clone();
                    v.extend_from_slice(g);
                    v
                })
            })
            .collect();
    }
    for v in &mut out {
        v.sort_unstable();
    }
    out.sort();
    out.dedup();
    out
}

impl WidthGame {
    /// Builds the reachable part of `Gw(a, k)`. `referee` may supply a DFA
    /// for `L(a)`; otherwise the subset construction is explored on demand.
    /// `limit` caps the number of positions.
    pub fn build(
        a: &Automaton,
        k: usize,
        rule: MoveRule,
        referee: Option<&Automaton>,
        limit: usize,
    ) -> Result<WidthGame, Error> {
        assert_eq!(
            a.mode(),
            WordMode::Finite,
            "the width game needs a finite-word automaton"
        );
        if k == 0 {
            return Err(Error::InvalidBound {
                k,
                max: a.state_count(),
            });
        }
        if rule == MoveRule::AllSubsets && k > a.state_count() {
            return Err(Error::InvalidBound {
                k,
                max: a.state_count(),
            });
        }
        if let Some(d) = referee {
            if d.alphabet() != a.alphabet() {
                return Err(Error::AlphabetMismatch);
            }
        }
        let f = a.accepting_set().unwrap();
        let mut referee = Referee::new(a, referee);
        let start = match rule {
            MoveRule::AllSubsets => vec![a.initial()],
            MoveRule::NoDuplication => vec![a.initial(); k],
        };
        let mut positions = vec![WidthPosition::Letter {
            pebbles: start,
            referee: referee.initial(),
        }];
        let mut index: BTreeMap<WidthPosition, usize> = BTreeMap::new();
        index.insert(positions[0].clone(), 0);
        let mut succ: Vec<Vec<usize>> = vec![Vec::new()];
        let mut intern = |pos: WidthPosition,
                          positions: &mut Vec<WidthPosition>,
                          succ: &mut Vec<Vec<usize>>|
         -> Result<usize, Error> {
            if let Some(&i) = index.get(&pos) {
                return Ok(i);
            }
            if positions.len() >= limit {
                return Err(Error::Budget {
                    what: "width game positions",
                    needed: positions.len() as u128 + 1,
                    budget: limit as u128,
                });
            }
            index.insert(pos.clone(), positions.len());
            positions.push(pos);
            succ.push(Vec::new());
            Ok(positions.len() - 1)
        };
        let mut i = 0;
        while i < positions.len() {
            match positions[i].clone() {
                WidthPosition::Letter {
                    pebbles,
                    referee: d,
                } => {
                    for sym in 0..a.alphabet().len() {
                        // a dead referee means no obligation ever again
                        if let Some(_d2) = referee.step(d, sym) {
                            let j = intern(
                                WidthPosition::Answer {
                                    pebbles: pebbles.clone(),
                                    referee: d,
                                    letter: sym,
                                },
                                &mut positions,
                                &mut succ,
                            )?;
                            succ[i].push(j);
                        }
                    }
                }
                WidthPosition::Answer {
                    pebbles,
                    referee: d,
                    letter,
                } => {
                    let d2 = referee
                        .step(d, letter)
                        .expect("answer positions have a live referee");
                    let options: Vec<Vec<StateId>> = match rule {
                        MoveRule::AllSubsets => {
                            let reach = a.post(&StateSet::from_sorted(pebbles.clone()), letter);
                            subsets_up_to(&reach, k)
                                .into_iter()
                                .map(|s| s.as_slice().to_vec())
                                .collect()
                        }
                        MoveRule::NoDuplication => pebble_moves(a, &pebbles, letter),
                    };
                    for x in options {
                        let j = intern(
                            WidthPosition::Letter {
                                pebbles: x,
                                referee: d2,
                            },
                            &mut positions,
                            &mut succ,
                        )?;
                        succ[i].push(j);
                    }
                }
            }
            i += 1;
        }
        let owner = positions
            .iter()
            .map(|p| match p {
                WidthPosition::Letter { .. } => Player::One,
                WidthPosition::Answer { .. } => Player::Zero,
            })
            .collect();
        let bad = positions
            .iter()
            .map(|p| match p {
                WidthPosition::Letter {
                    pebbles,
                    referee: d,
                } => referee.accepting(*d) && !pebbles.iter().any(|&q| f.contains(q)),
                WidthPosition::Answer { .. } => false,
            })
            .collect();
        let arena = GameArena::new(owner, succ, 0, Condition::Safety { bad })?;
        Ok(WidthGame {
            k,
            rule,
            arena,
            positions,
        })
    }

    pub fn arena(&self) -> &GameArena {
        &self.arena
    }

    pub fn position(&self, v: usize) -> &WidthPosition {
        &self.positions[v]
    }

    pub fn positions(&self) -> &[WidthPosition] {
        &self.positions
    }

    /// Number of distinct pebble configurations occurring in the game.
    pub fn configurations(&self) -> usize {
        let mut seen: Vec<&Vec<StateId>> = self
            .positions
            .iter()
            .filter_map(|p| match p {
                WidthPosition::Letter { pebbles, .. } => Some(pebbles),
                WidthPosition::Answer { .. } => None,
            })
            .collect();
        seen.sort();
        seen.dedup();
        seen.len()
    }

    pub fn solve(&self) -> Solution {
        solve_safety(&self.arena)
    }
}

/// Outcome of one bound tried by an incremental procedure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WidthRound {
    pub k: usize,
    /// Player 0 wins at this bound (equivalently the `k`-construction is
    /// GFG, or DBP for det-width).
    pub wins: bool,
    /// Reachable size of the `k`-construction.
    pub states: usize,
}

/// The strategy certifying the reported width.
#[derive(Clone, Debug)]
pub enum WidthWitness {
    /// Player 0's strategy in the width game.
    Game { game: WidthGame, strategy: Strategy },
    /// A GFG strategy for the `k`-construction.
    Letter {
        game: LetterGame,
        strategy: Strategy,
    },
}

#[derive(Clone, Debug)]
pub struct WidthReport {
    pub width: usize,
    /// Every bound tried, in increasing order; only the last one wins.
    pub rounds: Vec<WidthRound>,
    pub witness: WidthWitness,
}

#[derive(Clone, Debug)]
pub struct WidthOptions {
    pub rule: MoveRule,
    /// First bound to try.
    pub from_k: usize,
    /// Give up after this bound (defaults to the state count).
    pub max_k: Option<usize>,
    /// Cap on the positions of a single game.
    pub position_budget: usize,
    /// A DFA for the language, used as referee instead of the lazily built
    /// subset construction.
    pub referee: Option<Automaton>,
}

impl Default for WidthOptions {
    fn default() -> Self {
        WidthOptions {
            rule: MoveRule::AllSubsets,
            from_k: 1,
            max_k: None,
            position_budget: 5_000_000,
            referee: None,
        }
    }
}

/// Width of an NFA: the least `k` for which Player 0 wins `Gw(a, k)`.
pub fn width_nfa(a: &Automaton) -> WidthReport {
    width_nfa_with(a, &WidthOptions::default())
        .expect("the full subset game is always won at k = n")
}

/// Solves one width game and records its round; `states` is the size of
/// the `k`-subset construction (all-subsets rule) or the number of pebble
/// configurations (no-duplication rule).
pub fn width_round(
    a: &Automaton,
    k: usize,
    opts: &WidthOptions,
) -> Result<(WidthRound, WidthGame, Solution), Error> {
    let game = WidthGame::build(a, k, opts.rule, opts.referee.as_ref(), opts.position_budget)?;
    let solution = game.solve();
    let states = match opts.rule {
        MoveRule::AllSubsets => k_subset_bounded(a, k, usize::MAX)?.automaton.state_count(),
        MoveRule::NoDuplication => game.configurations(),
    };
    let round = WidthRound {
        k,
        wins: solution.initial_winner() == Player::Zero,
        states,
    };
    Ok((round, game, solution))
}

/// [`width_nfa`] with explicit options. Fails when no bound up to `max_k`
/// is winning or a game exceeds the position budget.
pub fn width_nfa_with(a: &Automaton, opts: &WidthOptions) -> Result<WidthReport, Error> {
    let max_k = opts.max_k.unwrap_or(a.state_count());
    let mut rounds = Vec::new();
    for k in opts.from_k.max(1)..=max_k {
        let (round, game, solution) = width_round(a, k, opts)?;
        let wins = round.wins;
        rounds.push(round);
        if wins {
            return Ok(WidthReport {
                width: k,
                rounds,
                witness: WidthWitness::Game {
                    game,
                    strategy: solution.strategy().clone(),
                },
            });
        }
    }
    Err(Error::Budget {
        what: "width bound",
        needed: max_k as u128 + 1,
        budget: max_k as u128,
    })
}

/// Width of a coBüchi automaton: the least `k` whose `k`-breakpoint
/// construction is GFG.
pub fn width_nca(a: &Automaton) -> WidthReport {
    incremental_gfg_nca(a).0
}

/// The incremental determinisation loop on finite words: find the least `k`
/// with `A_k` GFG, prune `A_k` along the GFG strategy and minimise.
pub fn incremental_determinize_nfa(a: &Automaton) -> (WidthReport, Automaton) {
    assert_eq!(
        a.mode(),
        WordMode::Finite,
        "incremental_determinize_nfa needs a finite-word automaton"
    );
    let referee = minimize_dfa(&crate::subset_construction(a).automaton);
    let mut rounds = Vec::new();
    for k in 1..=a.state_count() {
        let ak = k_subset_bounded(a, k, usize::MAX)
            .expect("k within bounds")
            .automaton;
        let check = gfg::gfg_check_nfa_with_referee(&ak, &referee).expect("same alphabet");
        rounds.push(WidthRound {
            k,
            wins: check.gfg,
            states: ak.state_count(),
        });
        if let Some(strategy) = check.strategy {
            let dfa = gfg::prune_to_dfa(&ak, &check.game, &strategy).expect("winning strategy");
            let report = WidthReport {
                width: k,
                rounds,
                witness: WidthWitness::Letter {
                    game: check.game,
                    strategy,
                },
            };
            return (report, minimize_dfa(&dfa));
        }
    }
    unreachable!("A_n is deterministic and therefore GFG")
}

/// The incremental loop on coBüchi automata: the least `k` whose
/// `k`-breakpoint construction is GFG, together with that construction.
pub fn incremental_gfg_nca(a: &Automaton) -> (WidthReport, Automaton) {
    let referee = crate::breakpoint_determinize(a).automaton;
    let mut rounds = Vec::new();
    for k in 1..=a.state_count() {
        let ak = k_breakpoint_bounded(a, k, usize::MAX)
            .expect("k within bounds")
            .automaton;
        let check = gfg::gfg_check_nca_with_referee(&ak, &referee).expect("same alphabet");
        rounds.push(WidthRound {
            k,
            wins: check.gfg,
            states: ak.state_count(),
        });
        if let Some(strategy) = check.strategy {
            let report = WidthReport {
                width: k,
                rounds,
                witness: WidthWitness::Letter {
                    game: check.game,
                    strategy,
                },
            };
            return (report, ak);
        }
    }
    unreachable!("A_n is deterministic and therefore GFG")
}

#[derive(Clone, Debug)]
pub struct DetWidthOptions {
    /// Cap on the reachable size of each `k`-construction.
    pub state_budget: usize,
    /// Cap on the number of prunings searched per bound.
    pub pruning_budget: u128,
}

impl Default for DetWidthOptions {
    fn default() -> Self {
        DetWidthOptions {
            state_budget: 50_000,
            pruning_budget: DEFAULT_PRUNING_BUDGET,
        }
    }
}

/// A det-width computation stopped by a budget, with the bounds already
/// decided.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refusal {
    pub rounds: Vec<WidthRound>,
    pub error: Error,
}

/// Least `k` at which the `k`-subset, `k`-breakpoint or `k`-Safra
/// construction (depending on the acceptance condition) is DBP.
pub fn det_width(
    a: &Automaton,
    opts: &DetWidthOptions,
) -> Result<(usize, Vec<WidthRound>), Refusal> {
    let mut rounds = Vec::new();
    for k in 1..=a.state_count() {
        let refuse = |rounds: &Vec<WidthRound>, error| Refusal {
            rounds: rounds.clone(),
            error,
        };
        let (states, dbp) = match a.acceptance() {
            Acceptance::FiniteReach(_) => {
                let ak = k_subset_bounded(a, k, opts.state_budget)
                    .map_err(|e| refuse(&rounds, e))?
                    .automaton;
                (ak.state_count(), gfg::dbp_check_nfa(&ak).is_some())
            }
            Acceptance::CoBuchi(_) => {
                let ak = k_breakpoint_bounded(a, k, opts.state_budget)
                    .map_err(|e| refuse(&rounds, e))?
                    .automaton;
                let r =
                    gfg::dbp_check_nca(&ak, opts.pruning_budget).map_err(|e| refuse(&rounds, e))?;
                (ak.state_count(), r.is_some())
            }
            Acceptance::Buchi(_) => {
                let ak = k_safra_bounded(a, k, opts.state_budget)
                    .map_err(|e| refuse(&rounds, e))?
                    .automaton;
                let r = gfg::dbp_check_rabin(&ak, opts.pruning_budget)
                    .map_err(|e| refuse(&rounds, e))?;
                (ak.state_count(), r.is_some())
            }
            Acceptance::Rabin(_) => {
                panic!("det_width needs a finite-word, Buchi or coBuchi automaton")
            }
        };
        rounds.push(WidthRound {
            k,
            wins: dbp,
            states,
        });
        if dbp {
            return Ok((k, rounds));
        }
    }
    unreachable!("the full construction is deterministic")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Alphabet;

    #[test]
    fn pebble_moves_enumerate_multisets() {
        let sigma = Alphabet::new(["a"]).unwrap();
        let mut a = Automaton::new(sigma, 3, 0, Acceptance::FiniteReach(StateSet::new()));
        a.add_transition(0, 0, 1);
        a.add_transition(0, 0, 2);
        let moves = pebble_moves(&a, &[0, 0], 0);
        assert_eq!(moves, vec![vec![1, 1], vec![1, 2], vec![2, 2]]);
        assert_eq!(pebble_moves(&a, &[0, 1], 0), vec![vec![1], vec![2]]);
        assert_eq!(pebble_moves(&a, &[1], 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn e1_width_is_two() {
        let sigma = Alphabet::new(["a"]).unwrap();
        let mut e1 = Automaton::new(sigma, 2, 0, Acceptance::FiniteReach(StateSet::singleton(1)));
        e1.add_transition(0, 0, 0);
        e1.add_transition(0, 0, 1);
        let r = width_nfa(&e1);
        assert_eq!(r.width, 2);
        assert_eq!(r.rounds.len(), 2);
        assert!(!r.rounds[0].wins);
        // without duplication the pebble reaching state 1 dies on the next
        // letter and is never replaced
        let opts = WidthOptions {
            rule: MoveRule::NoDuplication,
            max_k: Some(5),
            ..WidthOptions::default()
        };
        assert!(width_nfa_with(&e1, &opts).is_err());
    }
}

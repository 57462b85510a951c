//! Multipebble simulation games.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::games::{solve_safety, Condition, GameArena, Player};
use crate::width::{pebble_moves, width_nfa, MoveRule};
use crate::{
    subset_construction, subsets_up_to, trivial_universal, Automaton, Error, StateId, StateSet,
    SymbolId, WordMode,
};

/// Default cap on the positions of a simulation game.
pub const DEFAULT_POSITION_BUDGET: usize = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SimPosition {
    /// Spoiler to move from `spoiler`.
    Spoiler {
        spoiler: StateId,
        pebbles: Vec<StateId>,
    },
    /// Spoiler has moved to `spoiler` reading `letter`; Duplicator answers.
    Duplicator {
        spoiler: StateId,
        pebbles: Vec<StateId>,
        letter: SymbolId,
    },
}

/// The `k`-simulation game of `a` by `b`. Duplicator is Player 0 and loses
/// at a Spoiler position where Spoiler is accepting and no pebble is.
#[derive(Clone, Debug)]
pub struct SimGame {
    arena: GameArena,
    positions: Vec<SimPosition>,
}

impl SimGame {
    pub fn build(
        a: &Automaton,
        b: &Automaton,
        k: usize,
        rule: MoveRule,
        limit: usize,
    ) -> Result<SimGame, Error> {
        assert_eq!(
            a.mode(),
            WordMode::Finite,
            "simulation needs finite-word automata"
        );
        assert_eq!(
            b.mode(),
            WordMode::Finite,
            "simulation needs finite-word automata"
        );
        if a.alphabet() != b.alphabet() {
            return Err(Error::AlphabetMismatch);
        }
        if k == 0 {
            return Err(Error::InvalidBound {
                k,
                max: b.state_count(),
            });
        }
        let (fa, fb) = (a.accepting_set().unwrap(), b.accepting_set().unwrap());
        let start = SimPosition::Spoiler {
            spoiler: a.initial(),
            pebbles: match rule {
                MoveRule::AllSubsets => vec![b.initial()],
                MoveRule::NoDuplication => vec![b.initial(); k],
            },
        };
        let mut index = BTreeMap::from([(start.clone(), 0usize)]);
        let mut positions = vec![start];
        let mut succ: Vec<Vec<usize>> = vec![Vec::new()];
        let mut i = 0;
        while i < positions.len() {
            let next: Vec<SimPosition> = match &positions[i] {
                SimPosition::Spoiler { spoiler, pebbles } => {
                    let mut out = Vec::new();
                    for sym in 0..a.alphabet().len() {
                        for &p2 in a.successors(*spoiler, sym) {
                            out.push(SimPosition::Duplicator {
                                spoiler: p2,
                                pebbles: pebbles.clone(),
                                letter: sym,
                            });
                        }
                    }
                    out
                }
                SimPosition::Duplicator {
                    spoiler,
                    pebbles,
                    letter,
                } => {
                    let options: Vec<Vec<StateId>> = match rule {
                        MoveRule::AllSubsets => {
                            let reach = b.post(&StateSet::from_sorted(pebbles.clone()), *letter);
                            subsets_up_to(&reach, k)
                                .into_iter()
                                .map(|s| s.as_slice().to_vec())
                                .collect()
                        }
                        MoveRule::NoDuplication => pebble_moves(b, pebbles, *letter),
                    };
                    options
                        .into_iter()
                        .map(|x| SimPosition::Spoiler {
                            spoiler: *spoiler,
                            pebbles: x,
                        })
                        .collect()
                }
            };
            for pos in next {
                let j = match index.get(&pos) {
                    Some(&j) => j,
                    None => {
                        if positions.len() >= limit {
                            return Err(Error::Budget {
                                what: "simulation game positions",
                                needed: positions.len() as u128 + 1,
                                budget: limit as u128,
                            });
                        }
                        index.insert(pos.clone(), positions.len());
                        positions.push(pos);
                        succ.push(Vec::new());
                        positions.len() - 1
                    }
                };
                succ[i].push(j);
            }
            i += 1;
        }
        let owner = positions
            .iter()
            .map(|p| match p {
                SimPosition::Spoiler { .. } => Player::One,
                SimPosition::Duplicator { .. } => Player::Zero,
            })
            .collect();
        let bad = positions
            .iter()
            .map(|p| match p {
                SimPosition::Spoiler { spoiler, pebbles } => {
                    fa.contains(*spoiler) && !pebbles.iter().any(|&q| fb.contains(q))
                }
                SimPosition::Duplicator { .. } => false,
            })
            .collect();
        Ok(SimGame {
            arena: GameArena::new(owner, succ, 0, Condition::Safety { bad })?,
            positions,
        })
    }

    pub fn arena(&self) -> &GameArena {
        &self.arena
    }

    pub fn positions(&self) -> &[SimPosition] {
        &self.positions
    }

    pub fn duplicator_wins(&self) -> bool {
        solve_safety(&self.arena).initial_winner() == Player::Zero
    }
}

/// Whether `a ⊑_k b`, i.e. Duplicator wins the `k`-simulation game.
pub fn decide_sim(
    a: &Automaton,
    b: &Automaton,
    k: usize,
    no_duplication: bool,
) -> Result<bool, Error> {
    let rule = if no_duplication {
        MoveRule::NoDuplication
    } else {
        MoveRule::AllSubsets
    };
    Ok(SimGame::build(a, b, k, rule, DEFAULT_POSITION_BUDGET)?.duplicator_wins())
}

/// Language inclusion `L(a) ⊆ L(b)` decided by `width(b)`-simulation.
pub fn inclusion_via_width(a: &Automaton, b: &Automaton) -> Result<bool, Error> {
    let k = width_nfa(b).width;
    decide_sim(a, b, k, false)
}

/// Whether `width(a) ≤ k`, decided by simulating the subset construction
/// of `a` with `k` pebbles. For universal automata the one-state universal
/// automaton is simulated as well and both answers must agree.
pub fn width_via_sim(a: &Automaton, k: usize) -> Result<bool, Error> {
    let det = subset_construction(a).automaton;
    let verdict = decide_sim(&det, a, k, false)?;
    let universal =
        det.is_complete_deterministic() && (0..det.state_count()).all(|q| det.is_accepting(q));
    if universal {
        let triv = decide_sim(&trivial_universal(a.alphabet()), a, k, false)?;
        assert_eq!(
            verdict, triv,
            "simulations of the two universal automata disagree"
        );
    }
    Ok(verdict)
}

//! Two-player games on finite arenas with safety and max-even parity
//! conditions.
//!
//! A position without outgoing edges is lost by its owner. Strategies are
//! positional; where several moves are winning the lowest successor index is
//! chosen.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    Zero,
    One,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Zero => Player::One,
            Player::One => Player::Zero,
        }
    }

    /// The player favoured by a parity priority under the max-even rule.
    pub fn of_priority(p: u32) -> Player {
        if p % 2 == 0 {
            Player::Zero
        } else {
            Player::One
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Condition {
    /// Player 0 must avoid the marked positions forever.
    Safety { bad: Vec<bool> },
    /// Player 0 wins iff the largest priority seen infinitely often is even.
    Parity { priority: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameArena {
    owner: Vec<Player>,
    succ: Vec<Vec<usize>>,
    initial: usize,
    condition: Condition,
}

impl GameArena {
    /// Successor lists are sorted and deduplicated.
    pub fn new(
        owner: Vec<Player>,
        mut succ: Vec<Vec<usize>>,
        initial: usize,
        condition: Condition,
    ) -> Result<Self, Error> {
        let n = owner.len();
        if succ.len() != n {
            return Err(Error::Invalid(format!(
                "{} positions but {} successor lists",
                n,
                succ.len()
            )));
        }
        if initial >= n {
            return Err(Error::Invalid(format!(
                "initial position {initial} out of range"
            )));
        }
        let labels = match &condition {
            Condition::Safety { bad } => bad.len(),
            Condition::Parity { priority } => priority.len(),
        };
        if labels != n {
            return Err(Error::Invalid(format!(
                "condition covers {labels} of {n} positions"
            )));
        }
        for (v, list) in succ.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if let Some(&w) = list.iter().find(|&&w| w >= n) {
                return Err(Error::Invalid(format!("edge {v} -> {w} leaves the arena")));
            }
        }
        Ok(GameArena {
            owner,
            succ,
            initial,
            condition,
        })
    }

    pub fn len(&self) -> usize {
        self.owner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owner.is_empty()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn condition(&self) -> &Condition {
        &self.condition
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut pred = vec![Vec::new(); self.len()];
        for (v, list) in self.succ.iter().enumerate() {
            for &w in list {
                pred[w].push(v);
            }
        }
        pred
    }
}

/// A positional strategy: the chosen move at some positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Strategy {
    moves: Vec<Option<usize>>,
}

impl Strategy {
    pub fn empty(positions: usize) -> Self {
        Strategy {
            moves: vec![None; positions],
        }
    }

    pub fn get(&self, v: usize) -> Option<usize> {
        self.moves[v]
    }

    pub fn set(&mut self, v: usize, w: usize) {
        self.moves[v] = Some(w);
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.iter().all(Option::is_none)
    }
}

/// Winning regions of both players plus, at every position owned by its
/// winner and having a move, the winner's positional choice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    region: Vec<Player>,
    strategy: Strategy,
    initial: usize,
}

impl Solution {
    pub fn winner(&self, v: usize) -> Player {
        self.region[v]
    }

    pub fn initial_winner(&self) -> Player {
        self.region[self.initial]
    }

    pub fn region(&self, p: Player) -> Vec<usize> {
        (0..self.region.len())
            .filter(|&v| self.region[v] == p)
            .collect()
    }

    pub fn strategy(&self) -> &Strategy {
        &self.strategy
    }
}

/// Attractor of `target` for `p` inside the subgame `inside`. Returns the
/// membership mask and, for `p`'s attracted positions, a move that
/// strictly decreases the attractor rank.
fn attractor(
    g: &GameArena,
    pred: &[Vec<usize>],
    inside: &[bool],
    target: &[bool],
    p: Player,
) -> (Vec<bool>, Vec<Option<usize>>) {
    const UNRANKED: usize = usize::MAX;
    let n = g.len();
    let mut rank = vec![UNRANKED; n];
    let mut remaining: Vec<usize> = (0..n)
        .map(|v| {
            if inside[v] {
                g.succ[v].iter().filter(|&&w| inside[w]).count()
            } else {
                0
            }
        })
        .collect();
    let mut queue = VecDeque::new();
    for v in 0..n {
        if inside[v] && target[v] {
            rank[v] = 0;
            queue.push_back(v);
        }
    }
    // positions of the opponent that are stuck inside the subgame
    for v in 0..n {
        if inside[v] && rank[v] == UNRANKED && g.owner[v] != p && remaining[v] == 0 {
            rank[v] = 0;
            queue.push_back(v);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &v in &pred[w] {
            if !inside[v] || rank[v] != UNRANKED {
                continue;
            }
            if g.owner[v] == p {
                rank[v] = rank[w] + 1;
                queue.push_back(v);
            } else {
                remaining[v] -= 1;
                if remaining[v] == 0 {
                    rank[v] = rank[w] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    let mask: Vec<bool> = rank.iter().map(|&r| r != UNRANKED).collect();
    let moves = (0..n)
        .map(|v| {
            if !mask[v] || g.owner[v] != p {
                return None;
            }
            if rank[v] == 0 {
                // target positions: any move that stays in the subgame
                return g.succ[v].iter().copied().find(|&w| inside[w]);
            }
            g.succ[v]
                .iter()
                .copied()
                .find(|&w| inside[w] && rank[w] < rank[v])
        })
        .collect();
    (mask, moves)
}

/// Solves a safety game by computing Player 1's attractor to the bad
/// positions (and to Player 0's dead ends).
///
/// Panics if the arena carries a parity condition.
pub fn solve_safety(g: &GameArena) -> Solution {
    let bad = match &g.condition {
        Condition::Safety { bad } => bad,
        Condition::Parity { .. } => panic!("solve_safety needs a safety condition"),
    };
    let pred = g.predecessors();
    let all = vec![true; g.len()];
    let (lost, moves1) = attractor(g, &pred, &all, bad, Player::One);
    let mut strategy = Strategy::empty(g.len());
    let mut region = vec![Player::Zero; g.len()];
    for v in 0..g.len() {
        if lost[v] {
            region[v] = Player::One;
            if let Some(w) = moves1[v] {
                strategy.set(v, w);
            }
        } else if g.owner[v] == Player::Zero {
            // not attracted, so some successor is safe
            let w = g.succ[v]
                .iter()
                .copied()
                .find(|&w| !lost[w])
                .expect("safe position has a safe move");
            strategy.set(v, w);
        }
    }
    Solution {
        region,
        strategy,
        initial: g.initial,
    }
}

/// Solves a max-even parity game with Zielonka's recursive algorithm.
///
/// Panics if the arena carries a safety condition.
pub fn solve_parity(g: &GameArena) -> Solution {
    let priority = match &g.condition {
        Condition::Parity { priority } => priority,
        Condition::Safety { .. } => panic!("solve_parity needs a parity condition"),
    };
    // dead ends move to a sink won by the opponent of their owner
    let n = g.len();
    let (sink0, sink1) = (n, n + 1);
    let mut owner = g.owner.clone();
    owner.extend([Player::Zero, Player::Zero]);
    let mut succ = g.succ.clone();
    for v in 0..n {
        if succ[v].is_empty() {
            succ[v].push(if g.owner[v] == Player::Zero {
                sink1
            } else {
                sink0
            });
        }
    }
    succ.push(vec![sink0]);
    succ.push(vec![sink1]);
    let mut prio = priority.clone();
    prio.extend([0, 1]);
    let ext = GameArena {
        owner,
        succ,
        initial: g.initial,
        condition: Condition::Parity {
            priority: prio.clone(),
        },
    };
    let pred = ext.predecessors();
    let mut strategy = vec![None; n + 2];
    let mut won0 = vec![false; n + 2];
    let mask = vec![true; n + 2];
    zielonka(&ext, &pred, &prio, &mask, &mut won0, &mut strategy);

    let mut out = Strategy::empty(n);
    let region: Vec<Player> = (0..n)
        .map(|v| if won0[v] { Player::Zero } else { Player::One })
        .collect();
    for v in 0..n {
        if g.owner[v] == region[v] && !g.succ[v].is_empty() {
            if let Some(w) = strategy[v] {
                out.set(v, w);
            }
        }
    }
    Solution {
        region,
        strategy: out,
        initial: g.initial,
    }
}

/// Fills `won0` and `strategy` on the positions of `mask`, a trap in which
/// every position has a move.
fn zielonka(
    g: &GameArena,
    pred: &[Vec<usize>],
    prio: &[u32],
    mask: &[bool],
    won0: &mut [bool],
    strategy: &mut [Option<usize>],
) {
    let n = g.len();
    let Some(d) = (0..n).filter(|&v| mask[v]).map(|v| prio[v]).max() else {
        return;
    };
    let p = Player::of_priority(d);
    let top: Vec<bool> = (0..n).map(|v| mask[v] && prio[v] == d).collect();
    let (attr_p, moves_p) = attractor(g, pred, mask, &top, p);
    let rest: Vec<bool> = (0..n).map(|v| mask[v] && !attr_p[v]).collect();
    zielonka(g, pred, prio, &rest, won0, strategy);
    let wins = |won0: &[bool], v: usize, who: Player| (who == Player::Zero) == won0[v];
    let opponent_region: Vec<bool> = (0..n)
        .map(|v| rest[v] && wins(won0, v, p.opponent()))
        .collect();
    if !opponent_region.iter().any(|&b| b) {
        for v in 0..n {
            if attr_p[v] {
                won0[v] = p == Player::Zero;
                if g.owner[v] == p {
                    strategy[v] = moves_p[v];
                }
            }
        }
        return;
    }
    let (attr_o, moves_o) = attractor(g, pred, mask, &opponent_region, p.opponent());
    let remainder: Vec<bool> = (0..n).map(|v| mask[v] && !attr_o[v]).collect();
    for v in 0..n {
        if attr_o[v] {
            won0[v] = p.opponent() == Player::Zero;
            // inside the old opponent region its strategy is kept
            if g.owner[v] == p.opponent() && !opponent_region[v] {
                strategy[v] = moves_o[v];
            }
        }
    }
    zielonka(g, pred, prio, &remainder, won0, strategy);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one(owner: Player, cond: Condition) -> GameArena {
        GameArena::new(vec![owner], vec![vec![0]], 0, cond).unwrap()
    }

    #[test]
    fn trivial_safety() {
        let g = one(Player::Zero, Condition::Safety { bad: vec![false] });
        assert_eq!(solve_safety(&g).initial_winner(), Player::Zero);
        let g = one(Player::Zero, Condition::Safety { bad: vec![true] });
        assert_eq!(solve_safety(&g).initial_winner(), Player::One);
    }

    #[test]
    fn trivial_parity() {
        let g = one(Player::Zero, Condition::Parity { priority: vec![0] });
        assert_eq!(solve_parity(&g).initial_winner(), Player::Zero);
        let g = one(Player::Zero, Condition::Parity { priority: vec![1] });
        assert_eq!(solve_parity(&g).initial_winner(), Player::One);
    }

    #[test]
    fn dead_positions_lose_for_their_owner() {
        let g = GameArena::new(
            vec![Player::Zero],
            vec![vec![]],
            0,
            Condition::Safety { bad: vec![false] },
        )
        .unwrap();
        assert_eq!(solve_safety(&g).initial_winner(), Player::One);
        let g = GameArena::new(
            vec![Player::One],
            vec![vec![]],
            0,
            Condition::Parity { priority: vec![1] },
        )
        .unwrap();
        assert_eq!(solve_parity(&g).initial_winner(), Player::Zero);
    }

    #[test]
    fn strategies_pick_lowest_winning_move() {
        // 0 (P0) -> 1 bad, 2 safe loop, 3 safe loop
        let g = GameArena::new(
            vec![Player::Zero, Player::Zero, Player::Zero, Player::Zero],
            vec![vec![3, 1, 2], vec![1], vec![2], vec![3]],
            0,
            Condition::Safety {
                bad: vec![false, true, false, false],
            },
        )
        .unwrap();
        let s = solve_safety(&g);
        assert_eq!(s.strategy().get(0), Some(2));
        assert_eq!(s.region(Player::One), vec![1]);
    }

    #[test]
    fn parity_needs_recursion() {
        // P1 at 0 chooses between 1 (priority 2 loop) and 2 (priority 1 loop
        // through 3 with priority 0)
        let g = GameArena::new(
            vec![Player::One, Player::Zero, Player::Zero, Player::Zero],
            vec![vec![1, 2], vec![1], vec![3], vec![2]],
            0,
            Condition::Parity {
                priority: vec![0, 2, 1, 0],
            },
        )
        .unwrap();
        let s = solve_parity(&g);
        assert_eq!(s.initial_winner(), Player::One);
        assert_eq!(s.strategy().get(0), Some(2));
        assert_eq!(s.winner(1), Player::Zero);
    }
}

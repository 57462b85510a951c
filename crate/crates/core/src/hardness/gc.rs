use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::games::{solve_safety, Condition, GameArena, Player};
use crate::Error;

/// Largest number of variables (including `t`) accepted by [`solve_gc`].
pub const GC_VARIABLE_LIMIT: usize = 20;

/// A literal over the variable list of a [`GcInstance`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub var: usize,
    pub positive: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Literal {
            var,
            positive: true,
        }
    }

    pub fn neg(var: usize) -> Self {
        Literal {
            var,
            positive: false,
        }
    }

    pub fn negated(self) -> Self {
        Literal {
            var: self.var,
            positive: !self.positive,
        }
    }

    pub fn holds(self, v: Valuation) -> bool {
        (v >> self.var & 1 == 1) == self.positive
    }
}

/// Bit `i` holds the value of variable `i`.
pub type Valuation = u32;

/// An instance of the game `G_c`. Variables are numbered `X0`, then `X1`,
/// then `t` last.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcInstance {
    pub vars0: Vec<String>,
    pub vars1: Vec<String>,
    pub clauses: Vec<[Literal; 4]>,
    pub init: Valuation,
}

impl GcInstance {
    pub fn new(
        vars0: Vec<String>,
        vars1: Vec<String>,
        clauses: Vec<[Literal; 4]>,
        init: Valuation,
    ) -> Result<Self, Error> {
        let gc = GcInstance {
            vars0,
            vars1,
            clauses,
            init,
        };
        gc.validate()?;
        Ok(gc)
    }

    pub fn validate(&self) -> Result<(), Error> {
        let names: Vec<&str> = self
            .vars0
            .iter()
            .chain(&self.vars1)
            .map(String::as_str)
            .collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() || !n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(Error::Invalid(format!(
                    "variable name {n:?} is not an identifier"
                )));
            }
            if *n == "t" {
                return Err(Error::Invalid("t is reserved".into()));
            }
            if names[..i].contains(n) {
                return Err(Error::Invalid(format!("variable {n} declared twice")));
            }
        }
        let n = self.var_count();
        if n > 32 {
            return Err(Error::Invalid(format!(
                "{n} variables do not fit a valuation"
            )));
        }
        for c in &self.clauses {
            if let Some(l) = c.iter().find(|l| l.var >= n) {
                return Err(Error::Invalid(format!(
                    "literal over unknown variable {}",
                    l.var
                )));
            }
        }
        if n < 32 && self.init >> n != 0 {
            return Err(Error::Invalid(
                "initial valuation sets unknown variables".into(),
            ));
        }
        Ok(())
    }

    /// `|V|`, counting `t`.
    pub fn var_count(&self) -> usize {
        self.vars0.len() + self.vars1.len() + 1
    }

    pub fn t(&self) -> usize {
        self.var_count() - 1
    }

    pub fn name(&self, v: usize) -> &str {
        let (n0, n1) = (self.vars0.len(), self.vars1.len());
        if v < n0 {
            &self.vars0[v]
        } else if v < n0 + n1 {
            &self.vars1[v - n0]
        } else {
            "t"
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        (0..self.var_count()).find(|&v| self.name(v) == name)
    }

    /// The player setting `v`, or `None` for `t`.
    pub fn owner(&self, v: usize) -> Option<Player> {
        if v < self.vars0.len() {
            Some(Player::Zero)
        } else if v < self.t() {
            Some(Player::One)
        } else {
            None
        }
    }

    fn mask(&self, p: Player) -> Valuation {
        (0..self.t())
            .filter(|&v| self.owner(v) == Some(p))
            .fold(0, |m, v| m | 1 << v)
    }

    pub fn satisfies(&self, v: Valuation) -> bool {
        self.clauses.iter().all(|c| c.iter().any(|l| l.holds(v)))
    }

    /// The instance used as running example: `(x ∨ y ∨ z ∨ t) ∧ (¬x ∨ y ∨
    /// ¬z ∨ ¬t)` with `X0 = {x, y}`, `X1 = {z}` and everything true.
    pub fn running_example() -> Self {
        let (x, y, z, t) = (0, 1, 2, 3);
        GcInstance::new(
            vec!["x".into(), "y".into()],
            vec!["z".into()],
            vec![
                [
                    Literal::pos(x),
                    Literal::pos(y),
                    Literal::pos(z),
                    Literal::pos(t),
                ],
                [
                    Literal::neg(x),
                    Literal::pos(y),
                    Literal::neg(z),
                    Literal::neg(t),
                ],
            ],
            0b1111,
        )
        .unwrap()
    }
}

/// Outcome of [`solve_gc`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcSolution {
    pub winner: Player,
    /// For the winner, at each reachable position `(player, valuation)` it
    /// owns and wins, the valuation it moves to.
    pub strategy: BTreeMap<(Player, Valuation), Valuation>,
}

/// Solves `G_c` from `(Player 1, init)`. The owner of a position rewrites
/// its own variables and sets `t` to its index; if the new valuation
/// falsifies the formula it loses on the spot.
pub fn solve_gc(gc: &GcInstance) -> Result<GcSolution, Error> {
    gc.validate()?;
    let n = gc.var_count();
    if n > GC_VARIABLE_LIMIT {
        return Err(Error::Budget {
            what: "G_c variables",
            needed: n as u128,
            budget: GC_VARIABLE_LIMIT as u128,
        });
    }
    let t_bit: Valuation = 1 << gc.t();
    // 0 and 1 are the sinks where Player 0, respectively Player 1, has lost
    let mut positions: Vec<(Player, Valuation)> = Vec::new();
    let mut index: BTreeMap<(Player, Valuation), usize> = BTreeMap::new();
    let mut succ: Vec<Vec<usize>> = vec![vec![0], vec![1]];
    let start = (Player::One, gc.init);
    index.insert(start, 2);
    positions.push(start);
    succ.push(Vec::new());
    let mut i = 0;
    while i < positions.len() {
        let (p, val) = positions[i];
        let mine = gc.mask(p);
        let keep = val & !mine & !t_bit;
        let t_val = if p == Player::One { t_bit } else { 0 };
        // enumerate submasks of `mine`
        let mut sub = mine;
        loop {
            let next = keep | sub | t_val;
            let j = if !gc.satisfies(next) {
                if p == Player::Zero {
                    0
                } else {
                    1
                }
            } else {
                let key = (p.opponent(), next);
                *index.entry(key).or_insert_with(|| {
                    positions.push(key);
                    succ.push(Vec::new());
                    positions.len() + 1
                })
            };
            succ[i + 2].push(j);
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mine;
        }
        i += 1;
    }
    let owner: Vec<Player> = [Player::Zero, Player::Zero]
        .into_iter()
        .chain(positions.iter().map(|&(p, _)| p))
        .collect();
    let mut bad = vec![false; owner.len()];
    bad[0] = true;
    let arena = GameArena::new(owner, succ, 2, Condition::Safety { bad })?;
    let solution = solve_safety(&arena);
    let winner = solution.initial_winner();
    let mut strategy = BTreeMap::new();
    for (i, &(p, val)) in positions.iter().enumerate() {
        let v = i + 2;
        if p != winner || solution.winner(v) != winner {
            continue;
        }
        // winning moves never enter a sink: that would be a loss for the mover
        if let Some(w) = solution.strategy().get(v).filter(|&w| w >= 2) {
            strategy.insert((p, val), positions[w - 2].1);
        }
    }
    Ok(GcSolution { winner, strategy })
}

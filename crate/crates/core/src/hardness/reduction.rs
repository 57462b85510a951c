use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::gc::{GcInstance, Literal};
use crate::classic::explore;
use crate::{subset_construction, Acceptance, Alphabet, Automaton, StateId, StateSet, SymbolId};

/// Letters of the reduction alphabet, grouped as they are numbered.
struct Letters {
    vars: usize,
    /// First index of each group: a_l, f_l (l over X1 literals), d_l, c_i, e_v.
    gamma_lit: usize,
    gamma_1: usize,
    sigma_d: usize,
    sigma_c: usize,
    sigma_v: usize,
    first_x1: usize,
    x1: usize,
    alphabet: Alphabet,
}

const A: SymbolId = 0;
const F_T: SymbolId = 1;

fn lit_index(l: Literal) -> usize {
    2 * l.var + usize::from(!l.positive)
}

fn lit_name(gc: &GcInstance, l: Literal) -> String {
    if l.positive {
        gc.name(l.var).into()
    } else {
        format!("~{}", gc.name(l.var))
    }
}

fn literals(vars: usize) -> impl Iterator<Item = Literal> {
    (0..vars).flat_map(|v| [Literal::pos(v), Literal::neg(v)])
}

impl Letters {
    fn new(gc: &GcInstance) -> Self {
        let vars = gc.var_count();
        let first_x1 = gc.vars0.len();
        let x1 = gc.vars1.len();
        let mut names: Vec<String> = ["a".into(), "f_t".into()].into();
        let gamma_lit = names.len();
        names.extend(literals(vars).map(|l| format!("a_{}", lit_name(gc, l))));
        let gamma_1 = names.len();
        names.extend(
            literals(vars)
                .filter(|l| (first_x1..first_x1 + x1).contains(&l.var))
                .map(|l| format!("f_{}", lit_name(gc, l))),
        );
        let sigma_d = names.len();
        names.extend(literals(vars).map(|l| format!("d_{}", lit_name(gc, l))));
        let sigma_c = names.len();
        names.extend((1..=gc.clauses.len()).map(|i| format!("c_{i}")));
        let sigma_v = names.len();
        names.extend((0..vars).map(|v| format!("e_{}", gc.name(v))));
        Letters {
            vars,
            gamma_lit,
            gamma_1,
            sigma_d,
            sigma_c,
            sigma_v,
            first_x1,
            x1,
            alphabet: Alphabet::new(names).expect("validated variable names give distinct letters"),
        }
    }

    fn a_lit(&self, l: Literal) -> SymbolId {
        self.gamma_lit + lit_index(l)
    }

    fn d(&self, l: Literal) -> SymbolId {
        self.sigma_d + lit_index(l)
    }

    fn c(&self, i: usize) -> SymbolId {
        self.sigma_c + i
    }

    fn e(&self, v: usize) -> SymbolId {
        self.sigma_v + v
    }

    /// The letters `f_l` for `l` over `X1 ∪ {t}`, with `l` itself.
    fn setters(&self) -> Vec<(SymbolId, Literal)> {
        let mut out: Vec<(SymbolId, Literal)> = (0..2 * self.x1)
            .map(|i| {
                (
                    self.gamma_1 + i,
                    literals(self.vars).nth(2 * self.first_x1 + i).unwrap(),
                )
            })
            .collect();
        out.push((F_T, Literal::pos(self.vars - 1)));
        out
    }

    fn gamma_1(&self) -> core::ops::Range<SymbolId> {
        self.gamma_1..self.gamma_1 + 2 * self.x1
    }
}

const Q0: StateId = 0;
const Q_TOP: StateId = 1;

fn q(l: Literal) -> StateId {
    2 + lit_index(l)
}

/// The valuation gadget `B`: a safety NFA with states `q0`, `q_⊤` and one
/// state per literal. Besides the listed rows, `q_l` keeps its place on
/// `a_l'` when `l'` is over another variable, so that validating a clause
/// leaves the other pebbles alone.
pub fn build_b(gc: &GcInstance) -> Automaton {
    let letters = Letters::new(gc);
    let vars = letters.vars;
    let t = gc.t();
    let n = 2 + 2 * vars;
    let mut b = Automaton::new(
        letters.alphabet.clone(),
        n,
        Q0,
        Acceptance::FiniteReach(StateSet::from_sorted((0..n).collect())),
    );
    let owner0 = |v: usize| v < gc.vars0.len();
    let owner1 = |v: usize| (letters.first_x1..letters.first_x1 + letters.x1).contains(&v);
    for l in literals(vars) {
        let v = l.var;
        b.add_transition(Q0, A, q(l));
        // initial valuation
        let init_lit = if gc.init >> v & 1 == 1 {
            Literal::pos(v)
        } else {
            Literal::neg(v)
        };
        for l2 in literals(vars).filter(|&l2| l2 != l) {
            b.add_transition(q(l), letters.d(l2), q(init_lit));
        }
        // Player 1 setting X1 ∪ {t}
        for (sym, l2) in letters.setters() {
            b.add_transition(q(l), sym, if l2.var == v { q(l2) } else { q(l) });
        }
        // Player 0 choosing X0; t drops to false
        if owner0(v) {
            b.add_transition(q(l), A, q(Literal::pos(v)));
            b.add_transition(q(l), A, q(Literal::neg(v)));
        } else if owner1(v) {
            b.add_transition(q(l), A, q(l));
        }
        if v == t {
            b.add_transition(q(l), A, q(Literal::neg(t)));
        }
        // validation letters
        b.add_transition(q(l), letters.a_lit(l), q(l));
        for l2 in literals(vars).filter(|l2| l2.var != v) {
            b.add_transition(q(l), letters.a_lit(l2), q(l));
        }
        // exits to the accepting sink
        b.add_transition(q(l), letters.d(l), Q_TOP);
        b.add_transition(q(l), letters.e(v), Q_TOP);
        for (i, clause) in gc.clauses.iter().enumerate() {
            if clause.contains(&l) {
                b.add_transition(q(l), letters.c(i), Q_TOP);
            }
        }
        b.add_transition(q(l), letters.a_lit(l.negated()), Q_TOP);
    }
    for sym in 0..letters.alphabet.len() {
        b.add_transition(Q_TOP, sym, Q_TOP);
    }
    b
}

/// States of the controller DFA `C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CState {
    Initial,
    /// After the first `a`.
    Opened,
    /// After the initial `d_l`; a missing variable may be reported.
    Started,
    /// `j` letters of `Γ_1` read in the current round.
    Setting(usize),
    /// After `f_t` and `i` validation letters.
    Validating(usize),
    /// After Player 0's `a`; variables and clauses may be challenged.
    Answered,
    /// After a variable challenge; a clause may still be challenged.
    Challenged,
    /// Everything outside the prefixes of the controller language.
    Sink,
}

fn c_states(gc: &GcInstance) -> Vec<CState> {
    let mut s = [CState::Initial, CState::Opened, CState::Started].to_vec();
    s.extend((0..=gc.vars1.len()).map(CState::Setting));
    s.extend((0..=gc.clauses.len()).map(CState::Validating));
    s.extend([CState::Answered, CState::Challenged, CState::Sink]);
    s
}

fn c_step(gc: &GcInstance, letters: &Letters, s: CState, x: SymbolId) -> CState {
    use CState::*;
    let m = gc.vars1.len();
    let is_v = (letters.sigma_v..letters.sigma_v + letters.vars).contains(&x);
    let is_c = (letters.sigma_c..letters.sigma_v).contains(&x);
    let is_d = (letters.sigma_d..letters.sigma_c).contains(&x);
    // the states where a round may begin
    let round = |x: SymbolId| {
        if m == 0 && x == F_T {
            Some(Validating(0))
        } else if m > 0 && letters.gamma_1().contains(&x) {
            Some(Setting(1))
        } else {
            None
        }
    };
    let next = match s {
        Initial => (x == A).then_some(Opened),
        Opened => is_d.then_some(Started),
        Started => round(x).or(is_v.then_some(Setting(0))),
        Setting(0) => round(x),
        Setting(j) if j < m => letters.gamma_1().contains(&x).then_some(Setting(j + 1)),
        Setting(_) => (x == F_T).then_some(Validating(0)),
        Validating(i) if i < gc.clauses.len() => gc.clauses[i]
            .iter()
            .any(|&l| letters.a_lit(l) == x)
            .then_some(Validating(i + 1)),
        Validating(_) => (x == A).then_some(Answered),
        Answered => round(x)
            .or(is_v.then_some(Challenged))
            .or(is_c.then_some(Setting(0))),
        Challenged => round(x).or(is_c.then_some(Setting(0))),
        Sink => None,
    };
    next.unwrap_or(Sink)
}

/// The controller `C`: a complete DFA, all of whose states accept, for the
/// prefixes of the round structure Player 1 has to follow; every other word
/// falls into the sink.
pub fn build_c(gc: &GcInstance) -> Automaton {
    let letters = Letters::new(gc);
    let states = c_states(gc);
    let id = |s: CState| states.iter().position(|&t| t == s).unwrap();
    let n = states.len();
    let mut c = Automaton::new(
        letters.alphabet.clone(),
        n,
        0,
        Acceptance::FiniteReach(StateSet::from_sorted((0..n).collect())),
    );
    for &s in &states {
        for x in 0..letters.alphabet.len() {
            c.add_transition(id(s), x, id(c_step(gc, &letters, s, x)));
        }
    }
    c
}

/// A width instance equivalent to a [`GcInstance`].
#[derive(Clone, Debug)]
pub struct Reduction {
    pub automaton: Automaton,
    /// `|V|`: Player 0 wins the instance iff the width is at most `k`.
    pub k: usize,
    /// The `(B, C)` state pair behind each state; `None` for the merged
    /// accepting sink.
    pub states: Vec<Option<(StateId, StateId)>>,
}

/// The product of [`build_b`] and [`build_c`] with every pair involving
/// `q_⊤` or `C`'s sink merged into one accepting sink, which is also
/// entered whenever `C` rejects the letter. Panics if the result is not
/// universal.
pub fn build_reduction(gc: &GcInstance) -> Reduction {
    let b = build_b(gc);
    let c = build_c(gc);
    let c_sink = c.state_count() - 1;
    let symbols = b.alphabet().len();
    let (states, edges) = explore(
        symbols,
        Some((Q0, 0)),
        usize::MAX,
        "reduction states",
        |s, x| match *s {
            None => [None].to_vec(),
            Some((p, r)) => {
                let r2 = c.successors(r, x)[0];
                if r2 == c_sink {
                    return [None].to_vec();
                }
                b.successors(p, x)
                    .iter()
                    .map(|&p2| (p2 != Q_TOP).then_some((p2, r2)))
                    .collect()
            }
        },
    )
    .expect("no state limit");
    let n = states.len();
    let mut a = Automaton::new(
        b.alphabet().clone(),
        n,
        0,
        Acceptance::FiniteReach(StateSet::from_sorted((0..n).collect())),
    );
    for (p, x, q) in edges {
        a.add_transition(p, x, q);
    }
    let det = subset_construction(&a).automaton;
    assert!(
        det.is_complete_deterministic(),
        "the reduction automaton must be universal"
    );
    Reduction {
        automaton: a,
        k: gc.var_count(),
        states,
    }
}

//! Subset and breakpoint constructions, products, DFA minimisation and
//! finite-word language comparison.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use crate::{Acceptance, Alphabet, Automaton, Error, StateId, StateSet, SymbolId, WordMode};

/// An automaton together with the meaning of each of its states.
#[derive(Clone, Debug)]
pub struct Construction<S> {
    pub automaton: Automaton,
    /// `states[i]` is the object represented by state `i`.
    pub states: Vec<S>,
}

/// Breadth-first exploration of an implicitly given automaton. States are
/// numbered in discovery order; `limit` caps the number of states.
pub(crate) fn explore<S, F>(
    symbols: usize,
    initial: S,
    limit: usize,
    what: &'static str,
    mut succ: F,
) -> Result<(Vec<S>, Vec<(StateId, SymbolId, StateId)>), Error>
where
    S: Ord + Clone,
    F: FnMut(&S, SymbolId) -> Vec<S>,
{
    let mut index = BTreeMap::new();
    index.insert(initial.clone(), 0usize);
    let mut states = vec![initial];
    let mut edges = Vec::new();
    let mut i = 0;
    while i < states.len() {
        for sym in 0..symbols {
            for t in succ(&states[i], sym) {
                let j = match index.get(&t) {
                    Some(&j) => j,
                    None => {
                        if states.len() >= limit {
                            return Err(Error::Budget {
                                what,
                                needed: states.len() as u128 + 1,
                                budget: limit as u128,
                            });
                        }
                        index.insert(t.clone(), states.len());
                        states.push(t);
                        states.len() - 1
                    }
                };
                edges.push((i, sym, j));
            }
        }
        i += 1;
    }
    Ok((states, edges))
}

pub(crate) fn assemble<S>(
    alphabet: &Alphabet,
    states: Vec<S>,
    edges: Vec<(StateId, SymbolId, StateId)>,
    acceptance: impl FnOnce(&[S]) -> Acceptance,
) -> Construction<S> {
    let acc = acceptance(&states);
    let mut automaton = Automaton::new(alphabet.clone(), states.len(), 0, acc);
    for (p, a, q) in edges {
        automaton.add_transition(p, a, q);
    }
    Construction { automaton, states }
}

fn accepting_where<S>(states: &[S], pred: impl Fn(&S) -> bool) -> StateSet {
    StateSet::from_sorted((0..states.len()).filter(|&i| pred(&states[i])).collect())
}

fn assert_finite(a: &Automaton, op: &str) {
    assert_eq!(
        a.mode(),
        WordMode::Finite,
        "{op} needs a finite-word automaton"
    );
}

/// Reachable powerset automaton. The empty set is not a state: a missing
/// transition stands for it.
pub fn subset_construction(a: &Automaton) -> Construction<StateSet> {
    assert_finite(a, "subset_construction");
    let f = a.accepting_set().unwrap();
    let (states, edges) = explore(
        a.alphabet().len(),
        StateSet::singleton(a.initial()),
        usize::MAX,
        "",
        |x, sym| {
            let next = a.post(x, sym);
            if next.is_empty() {
                vec![]
            } else {
                vec![next]
            }
        },
    )
    .expect("unbounded");
    assemble(a.alphabet(), states, edges, |s| {
        Acceptance::FiniteReach(accepting_where(s, |x| x.intersects(f)))
    })
}

pub(crate) fn cobuchi_set(a: &Automaton, op: &str) -> StateSet {
    match a.acceptance() {
        Acceptance::CoBuchi(f) => f.clone(),
        _ => panic!("{op} needs a coBuchi automaton"),
    }
}

/// One breakpoint step on `(X, Y)`; `None` when the run dies.
pub(crate) fn breakpoint_step(
    a: &Automaton,
    f: &StateSet,
    x: &StateSet,
    y: &StateSet,
    sym: SymbolId,
) -> Option<(StateSet, StateSet)> {
    let x2 = a.post(x, sym);
    if x2.is_empty() {
        return None;
    }
    let y2 = if y.is_empty() {
        x2.clone()
    } else {
        a.post(y, sym).intersection(f)
    };
    Some((x2, y2))
}

/// Reachable breakpoint construction over pairs `(X, Y)` with `Y ⊆ X`
/// starting from `({q0}, {q0})`; states with `Y ≠ ∅` are accepting.
///
/// `Y` follows the runs that have stayed in `F` since the last breakpoint
/// (`Y = ∅`); after a breakpoint it restarts from all of `X`.
pub fn breakpoint_determinize(a: &Automaton) -> Construction<(StateSet, StateSet)> {
    let f = cobuchi_set(a, "breakpoint_determinize");
    let q0 = StateSet::singleton(a.initial());
    let init = (q0.clone(), q0);
    let (states, edges) = explore(a.alphabet().len(), init, usize::MAX, "", |(x, y), sym| {
        breakpoint_step(a, &f, x, y, sym).into_iter().collect()
    })
    .expect("unbounded");
    assemble(a.alphabet(), states, edges, |s| {
        Acceptance::CoBuchi(accepting_where(s, |(_, y)| !y.is_empty()))
    })
}

/// Synchronous product restricted to reachable pairs. `acceptance` receives
/// the component states of every product state, in numbering order.
pub fn product<F>(
    a: &Automaton,
    b: &Automaton,
    acceptance: F,
) -> Result<Construction<(StateId, StateId)>, Error>
where
    F: FnOnce(&[(StateId, StateId)]) -> Acceptance,
{
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let (states, edges) = explore(
        a.alphabet().len(),
        (a.initial(), b.initial()),
        usize::MAX,
        "",
        |&(p, q), sym| {
            let mut out = Vec::new();
            for &p2 in a.successors(p, sym) {
                for &q2 in b.successors(q, sym) {
                    out.push((p2, q2));
                }
            }
            out
        },
    )?;
    Ok(assemble(a.alphabet(), states, edges, acceptance))
}

/// The one-state automaton accepting every finite word.
pub fn trivial_universal(alphabet: &Alphabet) -> Automaton {
    let mut a = Automaton::new(
        alphabet.clone(),
        1,
        0,
        Acceptance::FiniteReach(StateSet::singleton(0)),
    );
    for sym in 0..alphabet.len() {
        a.add_transition(0, sym, 0);
    }
    a
}

/// The minimal DFA for the language of a (possibly partial) DFA.
///
/// The result is trim: states from which no word is accepted are dropped, so
/// it is partial in general; the empty language yields one rejecting state.
/// States are numbered breadth-first from the initial state, visiting
/// successors in symbol order, which makes the output canonical.
pub fn minimize_dfa(a: &Automaton) -> Automaton {
    assert_finite(a, "minimize_dfa");
    assert!(
        a.is_deterministic(),
        "minimize_dfa needs a deterministic automaton"
    );
    let f = a.accepting_set().unwrap();
    let sigma = a.alphabet().len();
    let reach = a.reachable_states();
    // dense renumbering of the reachable part plus a sink at index m
    let mut local = vec![usize::MAX; a.state_count()];
    for (i, &q) in reach.iter().enumerate() {
        local[q] = i;
    }
    let m = reach.len();
    let sink = m;
    let next: Vec<Vec<usize>> = reach
        .iter()
        .map(|&q| {
            (0..sigma)
                .map(|s| a.successors(q, s).first().map_or(sink, |&r| local[r]))
                .collect()
        })
        .chain(core::iter::once(vec![sink; sigma]))
        .collect();
    let accepting: Vec<bool> = reach
        .iter()
        .map(|&q| f.contains(q))
        .chain(core::iter::once(false))
        .collect();

    // Moore refinement
    let mut class: Vec<usize> = accepting.iter().map(|&acc| acc as usize).collect();
    loop {
        let mut ids = BTreeMap::new();
        let refined: Vec<usize> = (0..=m)
            .map(|v| {
                let sig = (
                    class[v],
                    next[v].iter().map(|&w| class[w]).collect::<Vec<_>>(),
                );
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        let stable = ids.len()
            == class
                .iter()
                .collect::<alloc::collections::BTreeSet<_>>()
                .len();
        class = refined;
        if stable {
            break;
        }
    }

    // classes that can reach acceptance
    let classes = class.iter().max().unwrap() + 1;
    let mut live = vec![false; classes];
    let mut changed = true;
    for v in 0..=m {
        if accepting[v] {
            live[class[v]] = true;
        }
    }
    while changed {
        changed = false;
        for v in 0..=m {
            if !live[class[v]] && next[v].iter().any(|&w| live[class[w]]) {
                live[class[v]] = true;
                changed = true;
            }
        }
    }

    let rep: Vec<usize> = {
        let mut rep = vec![usize::MAX; classes];
        for v in (0..=m).rev() {
            rep[class[v]] = v;
        }
        rep
    };
    let start = class[0];
    if !live[start] {
        return Automaton::new(
            a.alphabet().clone(),
            1,
            0,
            Acceptance::FiniteReach(StateSet::new()),
        );
    }
    let mut number = vec![usize::MAX; classes];
    number[start] = 0;
    let mut order = vec![start];
    let mut i = 0;
    while i < order.len() {
        let c = order[i];
        for s in 0..sigma {
            let d = class[next[rep[c]][s]];
            if live[d] && number[d] == usize::MAX {
                number[d] = order.len();
                order.push(d);
            }
        }
        i += 1;
    }
    let acc = StateSet::from_sorted(
        (0..order.len())
            .filter(|&i| accepting[rep[order[i]]])
            .collect(),
    );
    let mut out = Automaton::new(
        a.alphabet().clone(),
        order.len(),
        0,
        Acceptance::FiniteReach(acc),
    );
    for (i, &c) in order.iter().enumerate() {
        for s in 0..sigma {
            let d = class[next[rep[c]][s]];
            if live[d] {
                out.add_transition(i, s, number[d]);
            }
        }
    }
    out
}

/// Shortest word `w` (length-lexicographically least) such that
/// `bad(w ∈ L(a), w ∈ L(b))` holds, by search over pairs of subsets.
fn shortest_distinguishing(
    a: &Automaton,
    b: &Automaton,
    bad: impl Fn(bool, bool) -> bool,
) -> Result<Option<Vec<SymbolId>>, Error> {
    assert_finite(a, "finite-word comparison");
    assert_finite(b, "finite-word comparison");
    if a.alphabet() != b.alphabet() {
        return Err(Error::AlphabetMismatch);
    }
    let (fa, fb) = (a.accepting_set().unwrap(), b.accepting_set().unwrap());
    let verdict = |x: &StateSet, y: &StateSet| bad(x.intersects(fa), y.intersects(fb));
    let init = (
        StateSet::singleton(a.initial()),
        StateSet::singleton(b.initial()),
    );
    if verdict(&init.0, &init.1) {
        return Ok(Some(Vec::new()));
    }
    let mut parent: BTreeMap<(StateSet, StateSet), Option<((StateSet, StateSet), SymbolId)>> =
        BTreeMap::new();
    parent.insert(init.clone(), None);
    let mut queue = VecDeque::from([init]);
    while let Some(cur) = queue.pop_front() {
        for sym in 0..a.alphabet().len() {
            let nxt = (a.post(&cur.0, sym), b.post(&cur.1, sym));
            if nxt.0.is_empty() && nxt.1.is_empty() || parent.contains_key(&nxt) {
                continue;
            }
            parent.insert(nxt.clone(), Some((cur.clone(), sym)));
            if verdict(&nxt.0, &nxt.1) {
                let mut word = Vec::new();
                let mut at = nxt;
                while let Some(Some((prev, s))) = parent.get(&at) {
                    word.push(*s);
                    at = prev.clone();
                }
                word.reverse();
                return Ok(Some(word));
            }
            queue.push_back(nxt);
        }
    }
    Ok(None)
}

/// A shortest word accepted by `a` but not by `b`, if any.
pub fn included_finite(a: &Automaton, b: &Automaton) -> Result<Option<Vec<SymbolId>>, Error> {
    shortest_distinguishing(a, b, |in_a, in_b| in_a && !in_b)
}

/// A shortest word on which `a` and `b` disagree, if any.
pub fn equivalent_finite(a: &Automaton, b: &Automaton) -> Result<Option<Vec<SymbolId>>, Error> {
    shortest_distinguishing(a, b, |in_a, in_b| in_a != in_b)
}

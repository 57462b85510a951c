//! Cycle detection on labelled graphs: strongly connected components,
//! accepting lassos, and the emptiness and ultimately-periodic membership
//! tests built from them.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Acceptance, Automaton, StateId, SymbolId, UpWord, WordMode};

/// Adjacency lists whose edges carry the symbol they read.
#[derive(Clone, Debug, Default)]
pub(crate) struct LabeledGraph {
    pub succ: Vec<Vec<(SymbolId, usize)>>,
}

impl LabeledGraph {
    pub fn from_automaton(a: &Automaton) -> Self {
        let mut succ = vec![Vec::new(); a.state_count()];
        for (p, sym, q) in a.transitions() {
            succ[p].push((sym, q));
        }
        LabeledGraph { succ }
    }

    pub fn len(&self) -> usize {
        self.succ.len()
    }

    pub fn reachable_from(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(v) = stack.pop() {
            for &(_, w) in &self.succ[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    }

    /// Strongly connected components of the subgraph induced by `keep`
    /// (iterative Tarjan). Only components containing a cycle are returned.
    pub fn cyclic_components(&self, keep: &[bool]) -> Vec<Vec<usize>> {
        const UNSEEN: usize = usize::MAX;
        let n = self.len();
        let mut index = vec![UNSEEN; n];
        let mut low = vec![0; n];
        let mut on_stack = vec![false; n];
        let mut stack = Vec::new();
        let mut out = Vec::new();
        let mut counter = 0;
        for root in 0..n {
            if !keep[root] || index[root] != UNSEEN {
                continue;
            }
            // (vertex, next edge to explore)
            let mut frames = vec![(root, 0usize)];
            index[root] = counter;
            low[root] = counter;
            counter += 1;
            stack.push(root);
            on_stack[root] = true;
            while let Some(&mut (v, ref mut edge)) = frames.last_mut() {
                if let Some(&(_, w)) = self.succ[v].get(*edge) {
                    *edge += 1;
                    if !keep[w] {
                        continue;
                    }
                    if index[w] == UNSEEN {
                        index[w] = counter;
                        low[w] = counter;
                        counter += 1;
                        stack.push(w);
                        on_stack[w] = true;
                        frames.push((w, 0));
                    } else if on_stack[w] {
                        low[v] = low[v].min(index[w]);
                    }
                } else {
                    frames.pop();
                    if let Some(&(parent, _)) = frames.last() {
                        low[parent] = low[parent].min(low[v]);
                    }
                    if low[v] == index[v] {
                        let mut comp = Vec::new();
                        loop {
                            let w = stack.pop().unwrap();
                            on_stack[w] = false;
                            comp.push(w);
                            if w == v {
                                break;
                            }
                        }
                        let cyclic = comp.len() > 1 || self.succ[v].iter().any(|&(_, w)| w == v);
                        if cyclic {
                            comp.sort_unstable();
                            out.push(comp);
                        }
                    }
                }
            }
        }
        out
    }

    /// Shortest path (as symbols) from `from` to `to` using only vertices in
    /// `keep`, taking at least one step.
    fn path(&self, from: usize, to: usize, keep: &[bool]) -> Option<Vec<SymbolId>> {
        let mut parent: Vec<Option<(usize, SymbolId)>> = vec![None; self.len()];
        let mut queue = VecDeque::new();
        for &(sym, w) in &self.succ[from] {
            if keep[w] && parent[w].is_none() {
                parent[w] = Some((from, sym));
                queue.push_back(w);
            }
        }
        while let Some(v) = queue.pop_front() {
            if v == to {
                let mut word = Vec::new();
                let mut cur = to;
                // successors of `from` are seeded first, so the first vertex
                // whose parent is `from` ends the walk
                loop {
                    let (prev, sym) = parent[cur].unwrap();
                    word.push(sym);
                    if prev == from {
                        break;
                    }
                    cur = prev;
                }
                word.reverse();
                return Some(word);
            }
            for &(sym, w) in &self.succ[v] {
                if keep[w] && parent[w].is_none() {
                    parent[w] = Some((v, sym));
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// Shortest path from `from` to `to` in the whole graph (possibly empty).
    fn prefix_path(&self, from: usize, to: usize) -> Vec<SymbolId> {
        if from == to {
            return Vec::new();
        }
        let all = vec![true; self.len()];
        self.path(from, to, &all).expect("target reachable")
    }

    /// A lasso from `start` whose loop stays inside `allowed` and visits a
    /// vertex of `must`.
    pub fn find_lasso(
        &self,
        start: usize,
        allowed: &[bool],
        must: &[bool],
    ) -> Option<(Vec<SymbolId>, Vec<SymbolId>)> {
        let reach = self.reachable_from(start);
        let keep: Vec<bool> = (0..self.len()).map(|v| reach[v] && allowed[v]).collect();
        for comp in self.cyclic_components(&keep) {
            if let Some(&s) = comp.iter().find(|&&v| must[v]) {
                let mut in_comp = vec![false; self.len()];
                for &v in &comp {
                    in_comp[v] = true;
                }
                let prefix = self.prefix_path(start, s);
                let cycle = self.path(s, s, &in_comp).expect("component is cyclic");
                return Some((prefix, cycle));
            }
        }
        None
    }

    /// Whether some reachable cycle inside `allowed` meets `must` and, for
    /// every constraint `(e, f)`, visits `e` or avoids `f` entirely.
    pub fn has_fair_cycle(
        &self,
        start: usize,
        allowed: &[bool],
        must: &[bool],
        constraints: &[(Vec<bool>, Vec<bool>)],
    ) -> bool {
        let reach = self.reachable_from(start);
        let keep: Vec<bool> = (0..self.len()).map(|v| reach[v] && allowed[v]).collect();
        let mut work = self.cyclic_components(&keep);
        while let Some(comp) = work.pop() {
            if !comp.iter().any(|&v| must[v]) {
                continue;
            }
            let violated = constraints
                .iter()
                .find(|(e, f)| !comp.iter().any(|&v| e[v]) && comp.iter().any(|&v| f[v]));
            match violated {
                None => return true,
                Some((_, f)) => {
                    let mut sub = vec![false; self.len()];
                    for &v in &comp {
                        sub[v] = !f[v];
                    }
                    work.extend(self.cyclic_components(&sub));
                }
            }
        }
        false
    }
}

/// Evidence that an automaton's language is non-empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Word(Vec<SymbolId>),
    Lasso(UpWord),
}

/// `(allowed, must)` vertex masks per disjunct of the acceptance condition,
/// given a projection from graph vertices to automaton states.
fn acceptance_masks(acc: &Acceptance, states: &[StateId]) -> Vec<(Vec<bool>, Vec<bool>)> {
    let mask = |f: &crate::StateSet| states.iter().map(|&q| f.contains(q)).collect::<Vec<bool>>();
    let all = vec![true; states.len()];
    match acc {
        Acceptance::FiniteReach(_) => panic!("finite-word acceptance has no lasso semantics"),
        Acceptance::Buchi(f) => vec![(all, mask(f))],
        Acceptance::CoBuchi(f) => vec![(mask(f), all)],
        Acceptance::Rabin(pairs) => pairs
            .iter()
            .map(|pair| {
                let allowed = states.iter().map(|&q| !pair.bad.contains(q)).collect();
                (allowed, mask(&pair.good))
            })
            .collect(),
    }
}

pub(crate) fn accepts_up_word(a: &Automaton, word: &UpWord) -> bool {
    let positions = word.positions();
    // product of the automaton with the lasso-shaped word, reachable part only
    let mut id = vec![usize::MAX; a.state_count() * positions];
    let mut states = vec![a.initial()];
    let mut graph = LabeledGraph::default();
    graph.succ.push(Vec::new());
    let mut pos_of = vec![0usize];
    id[a.initial() * positions] = 0;
    let mut i = 0;
    while i < states.len() {
        let (q, pos) = (states[i], pos_of[i]);
        let (sym, next) = word.step(pos);
        for &r in a.successors(q, sym) {
            let key = r * positions + next;
            if id[key] == usize::MAX {
                id[key] = states.len();
                states.push(r);
                pos_of.push(next);
                graph.succ.push(Vec::new());
            }
            graph.succ[i].push((sym, id[key]));
        }
        i += 1;
    }
    acceptance_masks(a.acceptance(), &states)
        .iter()
        .any(|(allowed, must)| graph.find_lasso(0, allowed, must).is_some())
}

/// A witness of non-emptiness: a shortest accepted word for finite-word
/// automata, an accepted lasso `u · v^ω` otherwise.
pub fn emptiness(a: &Automaton) -> Option<Witness> {
    let graph = LabeledGraph::from_automaton(a);
    match a.mode() {
        WordMode::Finite => {
            let f = a.accepting_set()?;
            if f.contains(a.initial()) {
                return Some(Witness::Word(Vec::new()));
            }
            let mut parent: Vec<Option<(usize, SymbolId)>> = vec![None; a.state_count()];
            let mut seen = vec![false; a.state_count()];
            seen[a.initial()] = true;
            let mut queue = VecDeque::from([a.initial()]);
            while let Some(v) = queue.pop_front() {
                for &(sym, w) in &graph.succ[v] {
                    if seen[w] {
                        continue;
                    }
                    seen[w] = true;
                    parent[w] = Some((v, sym));
                    if f.contains(w) {
                        let mut word = Vec::new();
                        let mut cur = w;
                        while let Some((prev, s)) = parent[cur] {
                            word.push(s);
                            cur = prev;
                        }
                        word.reverse();
                        return Some(Witness::Word(word));
                    }
                    queue.push_back(w);
                }
            }
            None
        }
        WordMode::Infinite => {
            let states: Vec<StateId> = (0..a.state_count()).collect();
            acceptance_masks(a.acceptance(), &states)
                .iter()
                .find_map(|(allowed, must)| {
                    graph.find_lasso(a.initial(), allowed, must).map(|(u, v)| {
                        Witness::Lasso(UpWord::new(u, v).expect("cycles are non-empty"))
                    })
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Alphabet, StateSet};

    fn graph(edges: &[(usize, usize)], n: usize) -> LabeledGraph {
        let mut g = LabeledGraph {
            succ: vec![Vec::new(); n],
        };
        for &(u, v) in edges {
            g.succ[u].push((0, v));
        }
        g
    }

    #[test]
    fn components_ignore_acyclic_vertices() {
        let g = graph(&[(0, 1), (1, 2), (2, 1), (3, 3)], 4);
        let comps = g.cyclic_components(&[true; 4]);
        assert_eq!(comps.len(), 2);
        assert!(comps.contains(&vec![1, 2]));
        assert!(comps.contains(&vec![3]));
    }

    #[test]
    fn lasso_paths_are_consistent() {
        let g = graph(&[(0, 1), (1, 2), (2, 3), (3, 1)], 4);
        let (u, v) = g
            .find_lasso(0, &[true; 4], &[false, false, false, true])
            .unwrap();
        assert_eq!(u.len(), 3);
        assert_eq!(v.len(), 3);
        let self_loop = graph(&[(0, 0)], 1);
        let (u, v) = self_loop.find_lasso(0, &[true], &[true]).unwrap();
        assert!(u.is_empty());
        assert_eq!(v.len(), 1);
    }

    #[test]
    fn fair_cycle_refines_components() {
        // 0 <-> 1 and 0 <-> 2; constraint: visit 2 or avoid 1
        let g = graph(&[(0, 1), (1, 0), (0, 2), (2, 0)], 3);
        let e = vec![false, false, false];
        let f = vec![false, true, false];
        let all = vec![true; 3];
        assert!(g.has_fair_cycle(0, &all, &all, &[(e.clone(), f.clone())]));
        // now the only cycle must go through 1
        let must1 = vec![false, true, false];
        assert!(!g.has_fair_cycle(0, &all, &must1, &[(e, f)]));
    }

    #[test]
    fn buchi_self_loop_accepts_everything() {
        let sigma = Alphabet::new(["a", "b"]).unwrap();
        let mut a = Automaton::new(sigma, 1, 0, Acceptance::Buchi(StateSet::singleton(0)));
        a.add_transition(0, 0, 0);
        a.add_transition(0, 1, 0);
        for period in [vec![0], vec![1, 0], vec![1, 1, 1]] {
            assert!(a.member_up(&UpWord::new(vec![1], period).unwrap()));
        }
        assert!(matches!(emptiness(&a), Some(Witness::Lasso(_))));
    }
}

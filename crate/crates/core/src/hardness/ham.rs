use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::{Acceptance, Alphabet, Automaton, Error, StateSet};

/// A directed graph on vertices `0..n`. Text formats number vertices from
/// 1; the conversion happens at the boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl DiGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, Error> {
        let edges: BTreeSet<(usize, usize)> = edges.into_iter().collect();
        if let Some(&(i, j)) = edges.iter().find(|&&(i, j)| i >= n || j >= n) {
            return Err(Error::Invalid(format!(
                "edge ({i}, {j}) outside a graph of {n} vertices"
            )));
        }
        Ok(DiGraph { n, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn successors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((i, 0)..(i + 1, 0)).map(|&(_, j)| j)
    }

    /// Every vertex reaches every other one.
    pub fn is_strongly_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let reach = |forward: bool| {
            let mut seen = vec![false; self.n];
            let mut stack = vec![0];
            seen[0] = true;
            while let Some(v) = stack.pop() {
                for &(i, j) in &self.edges {
                    let (from, to) = if forward { (i, j) } else { (j, i) };
                    if from == v && !seen[to] {
                        seen[to] = true;
                        stack.push(to);
                    }
                }
            }
            seen.iter().all(|&s| s)
        };
        reach(true) && reach(false)
    }

    /// Four vertices with edges 1→2, 1→3, 2→3, 2→4, 3→1 and 4→3 (1-based);
    /// its only Hamiltonian cycle is 1 2 4 3.
    pub fn example() -> Self {
        DiGraph::new(4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 0), (3, 2)]).unwrap()
    }
}

/// The coBüchi automaton that is DBP iff the (strongly connected) graph has
/// a Hamiltonian cycle. Vertex `i` contributes states `p_i = 3i`,
/// `q_i = 3i + 1` and `r_i = 3i + 2`; letters are `a_1 … a_n` and `#`.
pub fn build_ham_nca(g: &DiGraph) -> Automaton {
    let n = g.vertex_count();
    let mut names: Vec<String> = (1..=n).map(|i| format!("a_{i}")).collect();
    names.push("#".into());
    let sigma = Alphabet::new(names).expect("distinct letters");
    let hash = n;
    let (p, q, r) = (|i: usize| 3 * i, |i: usize| 3 * i + 1, |i: usize| 3 * i + 2);
    let accepting = StateSet::from_sorted((0..n).flat_map(|i| [p(i), q(i)]).collect());
    let mut a = Automaton::new(sigma, 3 * n, p(0), Acceptance::CoBuchi(accepting));
    for i in 0..n {
        a.add_transition(p(i), i, q(i));
        for j in (0..n).filter(|&j| j != i) {
            a.add_transition(p(i), j, r(i));
        }
        a.add_transition(q(i), hash, p(i));
        for k in g.successors(i) {
            a.add_transition(r(i), hash, p(k));
        }
    }
    a
}

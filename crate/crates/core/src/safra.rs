//! Safra trees and the (bounded) Safra construction from Büchi to Rabin
//! automata.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::classic::{assemble, explore};
use crate::constructions::{capped, check_bound};
use crate::{Acceptance, Automaton, Construction, Error, RabinPair, StateSet, SymbolId};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SafraNode {
    /// Name in `1..=2n`.
    pub label: usize,
    /// Index of the parent in the node list; `None` for the root.
    pub parent: Option<usize>,
    pub states: StateSet,
    pub green: bool,
}

/// A Safra tree stored as its nodes in depth-first, left-to-right order, so
/// that structurally equal trees have equal representations.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SafraTree {
    nodes: Vec<SafraNode>,
}

impl SafraTree {
    fn initial(q0: usize) -> Self {
        SafraTree {
            nodes: vec![SafraNode {
                label: 1,
                parent: None,
                states: StateSet::singleton(q0),
                green: false,
            }],
        }
    }

    pub fn nodes(&self) -> &[SafraNode] {
        &self.nodes
    }

    pub fn root(&self) -> &SafraNode {
        &self.nodes[0]
    }

    pub fn has_label(&self, label: usize) -> bool {
        self.nodes.iter().any(|v| v.label == label)
    }

    pub fn is_green(&self, label: usize) -> bool {
        self.nodes.iter().any(|v| v.label == label && v.green)
    }

    fn is_ancestor(&self, u: usize, mut v: usize) -> bool {
        while let Some(p) = self.nodes[v].parent {
            if p == u {
                return true;
            }
            v = p;
        }
        false
    }

    /// Checks the structural conditions of a Safra tree over `n` automaton
    /// states with every label of size at most `k`.
    pub fn check(&self, n: usize, k: usize) -> Result<(), String> {
        let nodes = &self.nodes;
        if nodes.is_empty() || nodes[0].parent.is_some() {
            return Err("the first node must be the root".into());
        }
        if nodes.len() > n {
            return Err(format!("{} nodes exceed the state count {n}", nodes.len()));
        }
        for (i, v) in nodes.iter().enumerate() {
            if v.label == 0 || v.label > 2 * n {
                return Err(format!("label {} outside 1..={}", v.label, 2 * n));
            }
            if nodes[..i].iter().any(|u| u.label == v.label) {
                return Err(format!("label {} used twice", v.label));
            }
            if i > 0 && v.states.is_empty() {
                return Err(format!("non-root node {i} has an empty set"));
            }
            if v.states.len() > k {
                return Err(format!("node {i} tracks {} > {k} states", v.states.len()));
            }
            if let Some(p) = v.parent {
                if p >= i {
                    return Err(format!("node {i} precedes its parent"));
                }
            }
            let children: Vec<&SafraNode> = nodes.iter().filter(|c| c.parent == Some(i)).collect();
            if !children.is_empty() {
                let union = children
                    .iter()
                    .fold(StateSet::new(), |acc, c| acc.union(&c.states));
                if !union.is_subset(&v.states) || union == v.states {
                    return Err(format!("children of node {i} do not form a strict subset"));
                }
            }
        }
        for i in 0..nodes.len() {
            for j in i + 1..nodes.len() {
                if !self.is_ancestor(i, j) && nodes[i].states.intersects(&nodes[j].states) {
                    return Err(format!("incomparable nodes {i} and {j} share states"));
                }
            }
        }
        Ok(())
    }
}

/// Working tree with explicit child lists.
struct Work {
    label: Vec<usize>,
    states: Vec<StateSet>,
    children: Vec<Vec<usize>>,
}

impl Work {
    fn preorder(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children[v].iter().rev());
        }
        out
    }
}

/// All successors of `tree` on `sym`: one per choice of root set when the
/// root overflows `k`. A tree whose root becomes empty has no successor.
fn successors(
    a: &Automaton,
    f: &StateSet,
    k: usize,
    tree: &SafraTree,
    sym: SymbolId,
) -> Vec<SafraTree> {
    let n = a.state_count();
    let m = tree.nodes.len();
    let mut work = Work {
        label: tree.nodes.iter().map(|v| v.label).collect(),
        states: tree.nodes.iter().map(|v| v.states.clone()).collect(),
        children: vec![Vec::new(); m],
    };
    for (i, v) in tree.nodes.iter().enumerate() {
        if let Some(p) = v.parent {
            work.children[p].push(i);
        }
    }
    // (i)-(ii): spawn accepting children with fresh labels
    let mut used: Vec<bool> = vec![false; 2 * n + 1];
    for v in &tree.nodes {
        used[v.label] = true;
    }
    for v in 0..m {
        let marked = tree.nodes[v].states.intersection(f);
        if marked.is_empty() {
            continue;
        }
        let label = (1..=2 * n).find(|&l| !used[l]).expect("2n labels suffice");
        used[label] = true;
        let id = work.label.len();
        work.label.push(label);
        work.states.push(marked);
        work.children.push(Vec::new());
        work.children[v].push(id);
    }
    // (iii): local subset step, the root possibly cut down to k states
    let moved: Vec<StateSet> = work.states.iter().map(|s| a.post(s, sym)).collect();
    if moved[0].is_empty() {
        return Vec::new();
    }
    let order = work.preorder();
    let mut parent = vec![None; work.label.len()];
    for (v, cs) in work.children.iter().enumerate() {
        for &c in cs {
            parent[c] = Some(v);
        }
    }
    let is_ancestor = |u: usize, mut v: usize| {
        while let Some(p) = parent[v] {
            if p == u {
                return true;
            }
            v = p;
        }
        false
    };
    capped(moved[0].clone(), k)
        .into_iter()
        .map(|root_set| {
            let mut sets: Vec<StateSet> = moved
                .iter()
                .enumerate()
                .map(|(v, s)| {
                    if v == 0 {
                        root_set.clone()
                    } else {
                        s.intersection(&root_set)
                    }
                })
                .collect();
            // (iv): a state stays only in the leftmost branch holding it
            let snapshot = sets.clone();
            for (pos, &v) in order.iter().enumerate() {
                for &u in &order[..pos] {
                    if !is_ancestor(u, v) {
                        sets[v] = sets[v].difference(&snapshot[u]);
                    }
                }
            }
            // (v)-(vi) and flattening, top-down in preorder
            let mut nodes = Vec::new();
            let mut index = vec![usize::MAX; work.label.len()];
            let mut stack = vec![(0usize, None::<usize>)];
            while let Some((v, p)) = stack.pop() {
                if v != 0 && sets[v].is_empty() {
                    continue;
                }
                let kids: Vec<usize> = work.children[v]
                    .iter()
                    .copied()
                    .filter(|&c| !sets[c].is_empty())
                    .collect();
                let union = kids
                    .iter()
                    .fold(StateSet::new(), |acc, &c| acc.union(&sets[c]));
                let green = !kids.is_empty() && union == sets[v];
                index[v] = nodes.len();
                nodes.push(SafraNode {
                    label: work.label[v],
                    parent: p,
                    states: sets[v].clone(),
                    green,
                });
                if !green {
                    for &c in kids.iter().rev() {
                        stack.push((c, Some(index[v])));
                    }
                }
            }
            SafraTree { nodes }
        })
        .collect()
}

fn buchi_set(a: &Automaton, op: &str) -> StateSet {
    match a.acceptance() {
        Acceptance::Buchi(f) => f.clone(),
        _ => panic!("{op} needs a Buchi automaton"),
    }
}

fn rabin_pairs(n: usize, trees: &[SafraTree]) -> Acceptance {
    let pairs = (1..=2 * n)
        .map(|l| RabinPair {
            good: StateSet::from_sorted(
                (0..trees.len()).filter(|&i| trees[i].is_green(l)).collect(),
            ),
            bad: StateSet::from_sorted(
                (0..trees.len())
                    .filter(|&i| !trees[i].has_label(l))
                    .collect(),
            ),
        })
        .collect();
    Acceptance::Rabin(pairs)
}

/// Safra's determinisation: a deterministic Rabin automaton with one pair
/// per label.
pub fn safra(a: &Automaton) -> Construction<SafraTree> {
    buchi_set(a, "safra");
    k_safra(a, a.state_count().max(1)).expect("k = n is always valid")
}

/// The `k`-Safra construction: Safra trees whose root tracks at most `k`
/// states, chosen nondeterministically on overflow.
pub fn k_safra(a: &Automaton, k: usize) -> Result<Construction<SafraTree>, Error> {
    k_safra_bounded(a, k, usize::MAX)
}

/// [`k_safra`] refusing to build more than `limit` states.
pub fn k_safra_bounded(
    a: &Automaton,
    k: usize,
    limit: usize,
) -> Result<Construction<SafraTree>, Error> {
    let f = buchi_set(a, "k_safra");
    check_bound(a, k)?;
    let n = a.state_count();
    let (trees, edges) = explore(
        a.alphabet().len(),
        SafraTree::initial(a.initial()),
        limit,
        "Safra trees",
        |t, sym| {
            let next = successors(a, &f, k, t, sym);
            for t2 in &next {
                debug_assert_eq!(t2.check(n, k), Ok(()));
            }
            next
        },
    )?;
    Ok(assemble(a.alphabet(), trees, edges, |t| rabin_pairs(n, t)))
}

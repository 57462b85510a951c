use alloc::vec::Vec;
use core::fmt;

use crate::StateId;

/// A finite set of states kept as a sorted, duplicate-free vector, so that set
/// equality is representation equality and sets can be used as map keys.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet(Vec<StateId>);

impl StateSet {
    pub const fn new() -> Self {
        StateSet(Vec::new())
    }

    pub fn singleton(q: StateId) -> Self {
        StateSet(alloc::vec![q])
    }

    /// Wraps a vector that is already sorted and duplicate-free.
    pub fn from_sorted(states: Vec<StateId>) -> Self {
        debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
        StateSet(states)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, q: StateId) -> bool {
        self.0.binary_search(&q).is_ok()
    }

    pub fn insert(&mut self, q: StateId) -> bool {
        match self.0.binary_search(&q) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, q);
                true
            }
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = StateId> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[StateId] {
        &self.0
    }

    pub fn last(&self) -> Option<StateId> {
        self.0.last().copied()
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn intersection(&self, other: &StateSet) -> StateSet {
        StateSet(
            self.0
                .iter()
                .copied()
                .filter(|&q| other.contains(q))
                .collect(),
        )
    }

    pub fn difference(&self, other: &StateSet) -> StateSet {
        StateSet(
            self.0
                .iter()
                .copied()
                .filter(|&q| !other.contains(q))
                .collect(),
        )
    }

    pub fn union(&self, other: &StateSet) -> StateSet {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(&other.0);
        out.sort_unstable();
        out.dedup();
        StateSet(out)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.0.iter().all(|&q| other.contains(q))
    }
}

impl FromIterator<StateId> for StateSet {
    fn from_iter<I: IntoIterator<Item = StateId>>(iter: I) -> Self {
        let mut v: Vec<StateId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        StateSet(v)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

/// All subsets of `set` with exactly `k` elements, in lexicographic order of
/// their sorted element lists.
pub fn subsets_of_size(set: &StateSet, k: usize) -> Vec<StateSet> {
    let items = set.as_slice();
    let mut out = Vec::new();
    if k > items.len() {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(StateSet(idx.iter().map(|&i| items[i]).collect()));
        // advance the combination odometer
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] < items.len() - k + pos {
                break;
            }
        }
        idx[pos] += 1;
        for j in pos + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// All subsets of `set` with at most `k` elements (the empty set included),
/// by increasing size and lexicographically within a size.
pub fn subsets_up_to(set: &StateSet, k: usize) -> Vec<StateSet> {
    let mut out = Vec::new();
    for size in 0..=k.min(set.len()) {
        out.extend(subsets_of_size(set, size));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        let s = StateSet::from_iter([4, 1, 7]);
        let pairs: Vec<Vec<usize>> = subsets_of_size(&s, 2)
            .iter()
            .map(|x| x.as_slice().to_vec())
            .collect();
        assert_eq!(pairs, vec![vec![1, 4], vec![1, 7], vec![4, 7]]);
        assert_eq!(subsets_of_size(&s, 0), vec![StateSet::new()]);
        assert!(subsets_of_size(&s, 4).is_empty());
        assert_eq!(subsets_up_to(&s, 3).len(), 8);
    }

    #[test]
    fn set_algebra() {
        let a = StateSet::from_iter([1, 2, 3]);
        let b = StateSet::from_iter([3, 4]);
        assert!(a.intersects(&b));
        assert_eq!(a.intersection(&b), StateSet::singleton(3));
        assert_eq!(a.union(&b).as_slice(), &[1, 2, 3, 4]);
        assert_eq!(a.difference(&b).as_slice(), &[1, 2]);
        assert!(StateSet::singleton(2).is_subset(&a));
    }
}

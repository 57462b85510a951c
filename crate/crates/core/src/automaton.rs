use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::lasso;
use crate::{Error, StateSet};

pub type StateId = usize;
pub type SymbolId = usize;

/// An ordered list of distinct symbol names. Symbols are referred to by their
/// position in the list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<String>,
}

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, Error>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut out: Vec<String> = Vec::new();
        for s in symbols {
            let s = s.into();
            if s.is_empty() || s.chars().any(char::is_whitespace) {
                return Err(Error::InvalidSymbol(s));
            }
            if out.contains(&s) {
                return Err(Error::DuplicateSymbol(s));
            }
            out.push(s);
        }
        Ok(Alphabet { symbols: out })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn name(&self, a: SymbolId) -> &str {
        &self.symbols[a]
    }

    pub fn index_of(&self, name: &str) -> Option<SymbolId> {
        self.symbols.iter().position(|s| s == name)
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.symbols.iter().map(String::as_str)
    }

    /// Parses a whitespace-separated list of symbol names.
    pub fn parse_word(&self, text: &str) -> Result<Vec<SymbolId>, Error> {
        text.split_whitespace()
            .map(|tok| {
                self.index_of(tok)
                    .ok_or_else(|| Error::UnknownSymbol(tok.to_string()))
            })
            .collect()
    }

    pub fn format_word(&self, word: &[SymbolId]) -> String {
        let names: Vec<&str> = word.iter().map(|&a| self.name(a)).collect();
        names.join(" ")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WordMode {
    Finite,
    Infinite,
}

/// `good` must be visited infinitely often and `bad` finitely often.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RabinPair {
    pub good: StateSet,
    pub bad: StateSet,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acceptance {
    /// Finite words: accept when the last state is in the set.
    FiniteReach(StateSet),
    /// Infinitely many visits to the set.
    Buchi(StateSet),
    /// Only finitely many visits outside the set.
    CoBuchi(StateSet),
    /// Some pair is satisfied; an empty list rejects everything.
    Rabin(Vec<RabinPair>),
}

impl Acceptance {
    pub fn natural_mode(&self) -> WordMode {
        match self {
            Acceptance::FiniteReach(_) => WordMode::Finite,
            _ => WordMode::Infinite,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            Acceptance::FiniteReach(_) => "finite-reach",
            Acceptance::Buchi(_) => "Buchi",
            Acceptance::CoBuchi(_) => "coBuchi",
            Acceptance::Rabin(_) => "Rabin",
        }
    }
}

/// An ultimately periodic word `prefix · period^ω`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UpWord {
    prefix: Vec<SymbolId>,
    period: Vec<SymbolId>,
}

impl UpWord {
    pub fn new(prefix: Vec<SymbolId>, period: Vec<SymbolId>) -> Result<Self, Error> {
        if period.is_empty() {
            return Err(Error::EmptyPeriod);
        }
        Ok(UpWord { prefix, period })
    }

    pub fn prefix(&self) -> &[SymbolId] {
        &self.prefix
    }

    pub fn period(&self) -> &[SymbolId] {
        &self.period
    }

    /// Number of positions of the lasso-shaped word graph.
    pub fn positions(&self) -> usize {
        self.prefix.len() + self.period.len()
    }

    /// Letter read at lasso position `i` and the position after it.
    pub fn step(&self, i: usize) -> (SymbolId, usize) {
        let u = self.prefix.len();
        if i < u {
            (self.prefix[i], i + 1)
        } else {
            let j = i - u;
            (self.period[j], u + (j + 1) % self.period.len())
        }
    }
}

/// A nondeterministic automaton with a partial transition relation and
/// state-based acceptance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automaton {
    alphabet: Alphabet,
    mode: WordMode,
    initial: StateId,
    acceptance: Acceptance,
    /// `delta[p][a]` is the sorted successor list of `p` on `a`.
    delta: Vec<Vec<Vec<StateId>>>,
}

impl Automaton {
    /// An automaton without transitions; the word mode follows the
    /// acceptance condition.
    pub fn new(
        alphabet: Alphabet,
        state_count: usize,
        initial: StateId,
        acceptance: Acceptance,
    ) -> Self {
        let mode = acceptance.natural_mode();
        Self::from_parts(alphabet, state_count, initial, acceptance, mode)
    }

    /// Like [`Automaton::new`] but with an explicit word mode, which
    /// [`Automaton::validate`] checks against the acceptance condition.
    pub fn from_parts(
        alphabet: Alphabet,
        state_count: usize,
        initial: StateId,
        acceptance: Acceptance,
        mode: WordMode,
    ) -> Self {
        let delta = (0..state_count)
            .map(|_| alloc::vec![Vec::new(); alphabet.len()])
            .collect();
        Automaton {
            alphabet,
            mode,
            initial,
            acceptance,
            delta,
        }
    }

    /// Adds `p --a--> q`. Adding an existing transition is a no-op.
    ///
    /// Panics if `p` or `a` is out of range; `q` is only checked by
    /// [`Automaton::validate`].
    pub fn add_transition(&mut self, p: StateId, a: SymbolId, q: StateId) {
        let succ = &mut self.delta[p][a];
        if let Err(pos) = succ.binary_search(&q) {
            succ.insert(pos, q);
        }
    }

    /// Removes every `a`-successor of `p` except `keep`.
    pub fn restrict_transition(&mut self, p: StateId, a: SymbolId, keep: StateId) {
        let succ = &mut self.delta[p][a];
        debug_assert!(succ.contains(&keep));
        succ.clear();
        succ.push(keep);
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn state_count(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    /// The same automaton started from `q`.
    pub fn with_initial(&self, q: StateId) -> Automaton {
        Automaton {
            initial: q,
            ..self.clone()
        }
    }

    pub fn acceptance(&self) -> &Acceptance {
        &self.acceptance
    }

    pub fn set_acceptance(&mut self, acceptance: Acceptance) {
        self.mode = acceptance.natural_mode();
        self.acceptance = acceptance;
    }

    pub fn mode(&self) -> WordMode {
        self.mode
    }

    pub fn successors(&self, p: StateId, a: SymbolId) -> &[StateId] {
        &self.delta[p][a]
    }

    /// `Δ(X, a)`.
    pub fn post(&self, set: &StateSet, a: SymbolId) -> StateSet {
        set.iter()
            .flat_map(|p| self.delta[p][a].iter().copied())
            .collect()
    }

    /// All transitions `(p, a, q)` ordered by source, symbol, target.
    pub fn transitions(&self) -> impl Iterator<Item = (StateId, SymbolId, StateId)> + '_ {
        self.delta.iter().enumerate().flat_map(|(p, row)| {
            row.iter()
                .enumerate()
                .flat_map(move |(a, succ)| succ.iter().map(move |&q| (p, a, q)))
        })
    }

    pub fn transition_count(&self) -> usize {
        self.delta.iter().flatten().map(Vec::len).sum()
    }

    /// The accepting set of a finite-reach, Büchi or coBüchi automaton.
    pub fn accepting_set(&self) -> Option<&StateSet> {
        match &self.acceptance {
            Acceptance::FiniteReach(f) | Acceptance::Buchi(f) | Acceptance::CoBuchi(f) => Some(f),
            Acceptance::Rabin(_) => None,
        }
    }

    /// Membership in the accepting set; panics for Rabin automata.
    pub fn is_accepting(&self, q: StateId) -> bool {
        self.accepting_set()
            .expect("is_accepting needs a single accepting set")
            .contains(q)
    }

    pub fn is_deterministic(&self) -> bool {
        self.delta.iter().flatten().all(|succ| succ.len() <= 1)
    }

    /// Every state has exactly one successor on every symbol.
    pub fn is_complete_deterministic(&self) -> bool {
        self.delta.iter().flatten().all(|succ| succ.len() == 1)
    }

    /// States reachable from the initial state, in breadth-first order.
    pub fn reachable_states(&self) -> Vec<StateId> {
        let mut seen = alloc::vec![false; self.state_count()];
        let mut order = alloc::vec![self.initial];
        seen[self.initial] = true;
        let mut i = 0;
        while i < order.len() {
            let p = order[i];
            i += 1;
            for succ in &self.delta[p] {
                for &q in succ {
                    if !seen[q] {
                        seen[q] = true;
                        order.push(q);
                    }
                }
            }
        }
        order
    }

    /// One human-readable diagnostic per violated invariant.
    pub fn validate(&self) -> Vec<String> {
        let n = self.state_count();
        let mut out = Vec::new();
        if self.initial >= n {
            out.push(format!(
                "initial state {} out of range (state count {n})",
                self.initial
            ));
        }
        for (p, a, q) in self.transitions() {
            if q >= n {
                out.push(format!(
                    "transition target out of range: {p} --{}--> {q} (state count {n})",
                    self.alphabet.name(a)
                ));
            }
        }
        let check_set = |out: &mut Vec<String>, what: &str, set: &StateSet| {
            if let Some(q) = set.iter().find(|&q| q >= n) {
                out.push(format!("{what} state {q} out of range (state count {n})"));
            }
        };
        match &self.acceptance {
            Acceptance::FiniteReach(f) | Acceptance::Buchi(f) | Acceptance::CoBuchi(f) => {
                check_set(&mut out, "accepting", f)
            }
            Acceptance::Rabin(pairs) => {
                for pair in pairs {
                    check_set(&mut out, "Rabin good", &pair.good);
                    check_set(&mut out, "Rabin bad", &pair.bad);
                }
            }
        }
        if self.acceptance.natural_mode() != self.mode {
            out.push(format!(
                "{} acceptance is incompatible with {} words",
                self.acceptance.kind(),
                match self.mode {
                    WordMode::Finite => "finite",
                    WordMode::Infinite => "infinite",
                }
            ));
        }
        out
    }

    /// Whether some run on `word` ends in an accepting state.
    pub fn member_finite(&self, word: &[SymbolId]) -> bool {
        assert_eq!(
            self.mode,
            WordMode::Finite,
            "member_finite needs a finite-word automaton"
        );
        let mut current = StateSet::singleton(self.initial);
        for &a in word {
            current = self.post(&current, a);
            if current.is_empty() {
                return false;
            }
        }
        current.intersects(self.accepting_set().unwrap())
    }

    /// Whether the automaton accepts `u · v^ω`.
    pub fn member_up(&self, word: &UpWord) -> bool {
        assert_eq!(
            self.mode,
            WordMode::Infinite,
            "member_up needs an infinite-word automaton"
        );
        lasso::accepts_up_word(self, word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e1() -> Automaton {
        let sigma = Alphabet::new(["a"]).unwrap();
        let mut a = Automaton::new(sigma, 2, 0, Acceptance::FiniteReach(StateSet::singleton(1)));
        a.add_transition(0, 0, 0);
        a.add_transition(0, 0, 1);
        a
    }

    #[test]
    fn alphabet_rejects_bad_names() {
        assert_eq!(
            Alphabet::new(["a", "a"]),
            Err(Error::DuplicateSymbol("a".into()))
        );
        assert!(matches!(
            Alphabet::new(["a b"]),
            Err(Error::InvalidSymbol(_))
        ));
        assert!(matches!(Alphabet::new([""]), Err(Error::InvalidSymbol(_))));
        let s = Alphabet::new(["x", "#"]).unwrap();
        assert_eq!(s.parse_word("x # x").unwrap(), vec![0, 1, 0]);
        assert_eq!(s.parse_word("y"), Err(Error::UnknownSymbol("y".into())));
    }

    #[test]
    fn validate_reports_each_violation() {
        assert!(e1().validate().is_empty());

        let mut bad = e1();
        bad.add_transition(1, 0, 2);
        let diags = bad.validate();
        assert_eq!(diags.len(), 1);
        assert!(diags[0].starts_with("transition target out of range"));

        let sigma = Alphabet::new(["a"]).unwrap();
        let wrong_mode = Automaton::from_parts(
            sigma,
            1,
            0,
            Acceptance::Buchi(StateSet::singleton(0)),
            WordMode::Finite,
        );
        assert_eq!(wrong_mode.validate().len(), 1);
    }

    #[test]
    fn determinism() {
        assert!(!e1().is_deterministic());
        let sigma = Alphabet::new(["a", "b"]).unwrap();
        let empty = Automaton::new(sigma, 3, 0, Acceptance::FiniteReach(StateSet::new()));
        assert!(empty.is_deterministic());
        assert!(!empty.is_complete_deterministic());
    }

    #[test]
    fn finite_membership() {
        let a = e1();
        assert!(a.member_finite(&[0]));
        assert!(a.member_finite(&[0, 0, 0]));
        assert!(!a.member_finite(&[]));
    }

    #[test]
    fn up_word_steps() {
        let w = UpWord::new(vec![5], vec![1, 2]).unwrap();
        assert_eq!(w.step(0), (5, 1));
        assert_eq!(w.step(1), (1, 2));
        assert_eq!(w.step(2), (2, 1));
        assert_eq!(UpWord::new(vec![], vec![]), Err(Error::EmptyPeriod));
    }
}

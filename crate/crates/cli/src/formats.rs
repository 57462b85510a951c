//! Line-oriented text formats for automata, `G_c` instances and graphs.
//!
//! Every format uses `@directive` lines; blank lines and lines whose first
//! non-blank character is `#` are ignored. Comments are whole lines only,
//! since `#` may be a letter.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use autwidth::hardness::{DiGraph, GcInstance, Literal};
use autwidth::{Acceptance, Alphabet, Automaton, RabinPair, StateSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    /// 1-based; 0 for problems with the file as a whole.
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// The directive lines of a file with their line numbers.
fn directives(text: &str) -> Result<Vec<(usize, &str, Vec<&str>)>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        let head = words.next().unwrap();
        let Some(name) = head.strip_prefix('@') else {
            return err(i + 1, format!("expected a directive, found {head:?}"));
        };
        out.push((i + 1, name, words.collect()));
    }
    Ok(out)
}

fn number(line: usize, word: &str, what: &str) -> Result<usize, ParseError> {
    word.parse().or_else(|_| {
        err(
            line,
            format!("{what} must be a non-negative integer, found {word:?}"),
        )
    })
}

fn single<'a>(line: usize, name: &str, args: &[&'a str]) -> Result<&'a str, ParseError> {
    match args {
        [x] => Ok(x),
        _ => err(line, format!("@{name} takes exactly one argument")),
    }
}

/// Automaton kinds of the format.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Nfa,
    Nca,
    Nba,
    Dra,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Nfa => "nfa",
            Kind::Nca => "nca",
            Kind::Nba => "nba",
            Kind::Dra => "dra",
        }
    }

    pub fn of(a: &Automaton) -> Kind {
        match a.acceptance() {
            Acceptance::FiniteReach(_) => Kind::Nfa,
            Acceptance::CoBuchi(_) => Kind::Nca,
            Acceptance::Buchi(_) => Kind::Nba,
            Acceptance::Rabin(_) => Kind::Dra,
        }
    }
}

pub fn parse_automaton(text: &str) -> Result<Automaton, ParseError> {
    let mut kind = None;
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    let mut initial: Option<(usize, usize)> = None;
    let mut accepting: Option<(usize, Vec<usize>)> = None;
    let mut rabin: Vec<(usize, Vec<usize>, Vec<usize>)> = Vec::new();
    let mut trans: Vec<(usize, usize, &str, usize)> = Vec::new();
    for (line, name, args) in directives(text)? {
        if name != "trans" && !trans.is_empty() {
            return err(line, format!("@{name} after the first @trans"));
        }
        match name {
            "type" => {
                if kind.is_some() {
                    return err(line, "duplicate @type");
                }
                kind = Some(match single(line, name, &args)? {
                    "nfa" => Kind::Nfa,
                    "nca" => Kind::Nca,
                    "nba" => Kind::Nba,
                    "dra" => Kind::Dra,
                    other => {
                        return err(
                            line,
                            format!("unknown type {other:?}, expected nfa, nca, nba or dra"),
                        )
                    }
                });
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return err(line, "duplicate @alphabet");
                }
                alphabet = Some(
                    Alphabet::new(args.iter().copied()).or_else(|e| err(line, e.to_string()))?,
                );
            }
            "states" => {
                if states.is_some() {
                    return err(line, "duplicate @states");
                }
                states = Some(number(line, single(line, name, &args)?, "the state count")?);
            }
            "initial" => {
                if initial.is_some() {
                    return err(line, "duplicate @initial");
                }
                initial = Some((
                    line,
                    number(line, single(line, name, &args)?, "the initial state")?,
                ));
            }
            "accepting" => {
                if accepting.is_some() {
                    return err(line, "duplicate @accepting");
                }
                let qs = args
                    .iter()
                    .map(|w| number(line, w, "a state"))
                    .collect::<Result<_, _>>()?;
                accepting = Some((line, qs));
            }
            "rabin" => {
                let joined = args.join(" ");
                let Some(rest) = joined.strip_prefix("G:") else {
                    return err(line, "expected @rabin G: <states> | B: <states>");
                };
                let Some((g, b)) = rest.split_once('|') else {
                    return err(line, "expected @rabin G: <states> | B: <states>");
                };
                let Some(b) = b.trim_start().strip_prefix("B:") else {
                    return err(line, "expected @rabin G: <states> | B: <states>");
                };
                let parse = |s: &str| -> Result<Vec<usize>, ParseError> {
                    s.split_whitespace()
                        .map(|w| number(line, w, "a state"))
                        .collect()
                };
                rabin.push((line, parse(g)?, parse(b)?));
            }
            "trans" => {
                let [p, sym, q] = args[..] else {
                    return err(line, "@trans takes <p> <symbol> <q>");
                };
                trans.push((
                    line,
                    number(line, p, "a state")?,
                    sym,
                    number(line, q, "a state")?,
                ));
            }
            other => return err(line, format!("unknown directive @{other}")),
        }
    }
    let kind = kind.ok_or(ParseError {
        line: 0,
        message: "missing @type".into(),
    })?;
    let alphabet = alphabet.ok_or(ParseError {
        line: 0,
        message: "missing @alphabet".into(),
    })?;
    let n = states.ok_or(ParseError {
        line: 0,
        message: "missing @states".into(),
    })?;
    if n == 0 {
        return err(0, "an automaton needs at least one state");
    }
    let in_range = |line: usize, q: usize| {
        if q < n {
            Ok(q)
        } else {
            err(line, format!("state {q} out of range 0..{n}"))
        }
    };
    let q0 = match initial {
        Some((line, q)) => in_range(line, q)?,
        None => return err(0, "missing @initial"),
    };
    let set = |line: usize, qs: &[usize]| -> Result<StateSet, ParseError> {
        qs.iter().map(|&q| in_range(line, q)).collect()
    };
    let acceptance = match kind {
        Kind::Dra => {
            if let Some((line, _)) = accepting {
                return err(line, "@accepting is not allowed for dra; use @rabin");
            }
            let pairs = rabin
                .iter()
                .map(|(line, g, b)| {
                    Ok(RabinPair {
                        good: set(*line, g)?,
                        bad: set(*line, b)?,
                    })
                })
                .collect::<Result<_, ParseError>>()?;
            Acceptance::Rabin(pairs)
        }
        _ => {
            if let Some((line, _, _)) = rabin.first() {
                return err(
                    *line,
                    format!("@rabin is only allowed for dra, not {}", kind.name()),
                );
            }
            let Some((line, qs)) = accepting else {
                return err(0, "missing @accepting");
            };
            let f = set(line, &qs)?;
            match kind {
                Kind::Nfa => Acceptance::FiniteReach(f),
                Kind::Nca => Acceptance::CoBuchi(f),
                _ => Acceptance::Buchi(f),
            }
        }
    };
    let mut a = Automaton::new(alphabet, n, q0, acceptance);
    for (line, p, sym, q) in trans {
        let p = in_range(line, p)?;
        let q = in_range(line, q)?;
        let Some(s) = a.alphabet().index_of(sym) else {
            return err(line, format!("unknown symbol {sym:?}"));
        };
        a.add_transition(p, s, q);
    }
    if Kind::of(&a) == Kind::Dra && !a.is_deterministic() {
        return err(0, "a dra must be deterministic");
    }
    Ok(a)
}

fn join(qs: impl Iterator<Item = usize>) -> String {
    qs.map(|q| q.to_string()).collect::<Vec<_>>().join(" ")
}

/// Writes `a` in normal form: header directives in a fixed order, then
/// transitions sorted by source, symbol index and target.
pub fn write_automaton(a: &Automaton) -> String {
    let mut s = String::new();
    writeln!(s, "@type {}", Kind::of(a).name()).unwrap();
    writeln!(
        s,
        "@alphabet {}",
        a.alphabet().names().collect::<Vec<_>>().join(" ")
    )
    .unwrap();
    writeln!(s, "@states {}", a.state_count()).unwrap();
    writeln!(s, "@initial {}", a.initial()).unwrap();
    let line = |prefix: &str, body: String| {
        if body.is_empty() {
            prefix.to_string()
        } else {
            format!("{prefix} {body}")
        }
    };
    match a.acceptance() {
        Acceptance::Rabin(pairs) => {
            for p in pairs {
                let g = line("G:", join(p.good.iter()));
                let b = line("B:", join(p.bad.iter()));
                writeln!(s, "@rabin {g} | {b}").unwrap();
            }
        }
        Acceptance::FiniteReach(f) | Acceptance::CoBuchi(f) | Acceptance::Buchi(f) => {
            writeln!(s, "{}", line("@accepting", join(f.iter()))).unwrap();
        }
    }
    for (p, sym, q) in a.transitions() {
        writeln!(s, "@trans {p} {} {q}", a.alphabet().name(sym)).unwrap();
    }
    s
}

fn literal(
    gc_vars: &BTreeMap<&str, usize>,
    line: usize,
    word: &str,
) -> Result<Literal, ParseError> {
    let (positive, name) = match word.strip_prefix('-') {
        Some(rest) => (false, rest),
        None => (true, word),
    };
    match gc_vars.get(name) {
        Some(&var) => Ok(Literal { var, positive }),
        None => err(line, format!("unknown variable {name:?}")),
    }
}

pub fn parse_gc(text: &str) -> Result<GcInstance, ParseError> {
    let mut vars0: Option<Vec<String>> = None;
    let mut vars1: Option<Vec<String>> = None;
    let mut clauses: Vec<(usize, Vec<&str>)> = Vec::new();
    let mut init: Option<(usize, Vec<&str>)> = None;
    for (line, name, args) in directives(text)? {
        match name {
            "vars0" | "vars1" => {
                let slot = if name == "vars0" {
                    &mut vars0
                } else {
                    &mut vars1
                };
                if slot.is_some() {
                    return err(line, format!("duplicate @{name}"));
                }
                *slot = Some(args.iter().map(|s| s.to_string()).collect());
            }
            "clause" => {
                if args.len() != 4 {
                    return err(
                        line,
                        format!("a clause has exactly 4 literals, found {}", args.len()),
                    );
                }
                clauses.push((line, args));
            }
            "init" => {
                if init.is_some() {
                    return err(line, "duplicate @init");
                }
                init = Some((line, args));
            }
            other => return err(line, format!("unknown directive @{other}")),
        }
    }
    let (vars0, vars1) = (vars0.unwrap_or_default(), vars1.unwrap_or_default());
    let mut index: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, v) in vars0.iter().chain(&vars1).enumerate() {
        if v == "t" {
            return err(0, "t is reserved and cannot be declared");
        }
        if index.insert(v, i).is_some() {
            return err(0, format!("variable {v} declared twice"));
        }
    }
    index.insert("t", vars0.len() + vars1.len());
    let clauses = clauses
        .iter()
        .map(|(line, args)| {
            let lits: Vec<Literal> = args
                .iter()
                .map(|w| literal(&index, *line, w))
                .collect::<Result<_, _>>()?;
            Ok([lits[0], lits[1], lits[2], lits[3]])
        })
        .collect::<Result<Vec<_>, ParseError>>()?;
    let Some((line, args)) = init else {
        return err(0, "missing @init");
    };
    let mut valuation = 0u32;
    let mut set = vec![false; index.len()];
    for w in args {
        let Some((name, value)) = w.split_once('=') else {
            return err(line, format!("expected name=0|1, found {w:?}"));
        };
        let Some(&v) = index.get(name) else {
            return err(line, format!("unknown variable {name:?}"));
        };
        if set[v] {
            return err(line, format!("{name} initialised twice"));
        }
        set[v] = true;
        match value {
            "0" => {}
            "1" => valuation |= 1 << v,
            _ => return err(line, format!("value of {name} must be 0 or 1")),
        }
    }
    if let Some(v) = (0..set.len()).find(|&v| !set[v]) {
        let name = index.iter().find(|(_, &i)| i == v).unwrap().0;
        return err(line, format!("no initial value for {name}"));
    }
    GcInstance::new(vars0, vars1, clauses, valuation).or_else(|e| err(0, e.to_string()))
}

pub fn write_gc(gc: &GcInstance) -> String {
    let mut s = String::new();
    let lit = |l: Literal| {
        if l.positive {
            gc.name(l.var).to_string()
        } else {
            format!("-{}", gc.name(l.var))
        }
    };
    let names = |vs: &[String]| vs.iter().map(|v| format!(" {v}")).collect::<String>();
    writeln!(s, "@vars0{}", names(&gc.vars0)).unwrap();
    writeln!(s, "@vars1{}", names(&gc.vars1)).unwrap();
    for c in &gc.clauses {
        writeln!(
            s,
            "@clause {}",
            c.iter().map(|&l| lit(l)).collect::<Vec<_>>().join(" ")
        )
        .unwrap();
    }
    let init: Vec<String> = (0..gc.var_count())
        .map(|v| format!("{}={}", gc.name(v), gc.init >> v & 1))
        .collect();
    writeln!(s, "@init {}", init.join(" ")).unwrap();
    s
}

/// Vertices are numbered from 1 in the file and from 0 in [`DiGraph`].
pub fn parse_graph(text: &str) -> Result<DiGraph, ParseError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (line, name, args) in directives(text)? {
        match name {
            "vertices" => {
                if n.is_some() {
                    return err(line, "duplicate @vertices");
                }
                n = Some(number(
                    line,
                    single(line, name, &args)?,
                    "the vertex count",
                )?);
            }
            "edge" => {
                let Some(n) = n else {
                    return err(line, "@edge before @vertices");
                };
                let [i, j] = args[..] else {
                    return err(line, "@edge takes <i> <j>");
                };
                let (i, j) = (number(line, i, "a vertex")?, number(line, j, "a vertex")?);
                for v in [i, j] {
                    if v == 0 || v > n {
                        return err(line, format!("vertex {v} out of range 1..={n}"));
                    }
                }
                edges.push((i - 1, j - 1));
            }
            other => return err(line, format!("unknown directive @{other}")),
        }
    }
    let Some(n) = n else {
        return err(0, "missing @vertices");
    };
    DiGraph::new(n, edges).or_else(|e| err(0, e.to_string()))
}

pub fn write_graph(g: &DiGraph) -> String {
    let mut s = format!("@vertices {}\n", g.vertex_count());
    for (i, j) in g.edges() {
        writeln!(s, "@edge {} {}", i + 1, j + 1).unwrap();
    }
    s
}

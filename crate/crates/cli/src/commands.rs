//! Subcommand dispatch. Results go to stdout as `key=value` lines; exit
//! code 0 means a verdict was computed, 1 a usage or input error and 2 a
//! refusal by a budget or size guard.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use autwidth::constructions::{k_breakpoint, k_safra, k_subset, safra};
use autwidth::games::Player;
use autwidth::gfg::{
    dbp_check_nca, dbp_check_nfa, dbp_check_rabin, gfg_check_nca, gfg_check_nfa, prune_to_dfa,
    DEFAULT_PRUNING_BUDGET,
};
use autwidth::hardness::{build_ham_nca, build_reduction, solve_gc};
use autwidth::sim::decide_sim;
use autwidth::width::{
    det_width, width_nca, width_nfa_with, DetWidthOptions, MoveRule, WidthOptions, WidthRound,
};
use autwidth::{
    breakpoint_determinize, equivalent_finite, max_ambiguity_profile, subset_construction,
    Automaton, Error, SymbolId, UpWord, WordMode,
};
use clap::{Parser, Subcommand};

use crate::formats::{parse_automaton, parse_gc, parse_graph, write_automaton, Kind};

#[derive(Parser, Debug)]
#[command(
    name = "autwidth",
    version,
    about = "Width, determinisation and GFG/DBP checks for automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Width of an NFA (width game) or NCA (k-breakpoint GFG check).
    Width {
        file: PathBuf,
        #[arg(long)]
        max_k: Option<usize>,
        /// Pebbles follow transitions and cannot be duplicated.
        #[arg(long)]
        no_duplication: bool,
        #[arg(long, default_value_t = 5_000_000)]
        position_budget: usize,
    },
    /// Whether the automaton is good-for-games.
    Gfg {
        file: PathBuf,
        /// Write the pruned DFA (NFA inputs only).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Whether the automaton is determinisable by pruning.
    Dbp {
        file: PathBuf,
        /// Write the pruned deterministic automaton.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_PRUNING_BUDGET)]
        pruning_budget: u128,
    },
    /// Least k whose k-construction is determinisable by pruning.
    Detwidth {
        file: PathBuf,
        #[arg(long, default_value_t = 50_000)]
        state_budget: usize,
        #[arg(long, default_value_t = DEFAULT_PRUNING_BUDGET)]
        pruning_budget: u128,
    },
    /// Run a (bounded) determinisation construction.
    Determinize {
        file: PathBuf,
        /// subset, k-subset:K, breakpoint, k-breakpoint:K, safra or k-safra:K
        #[arg(long)]
        method: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Decide the k-pebble simulation of A by B.
    Sim {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        no_duplication: bool,
    },
    /// Membership of a finite or ultimately periodic word.
    Member {
        file: PathBuf,
        /// Space-separated letters.
        #[arg(long, conflicts_with = "upword", required_unless_present = "upword")]
        word: Option<String>,
        /// "u : v" for u v^ω.
        #[arg(long)]
        upword: Option<String>,
    },
    /// Maximal number of accepting runs per word length.
    Ambiguity {
        file: PathBuf,
        #[arg(long)]
        max_len: usize,
    },
    /// Winner of a G_c instance.
    SolveGc { file: PathBuf },
    /// The universal safety NFA whose width encodes a G_c instance.
    ReduceGc {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// The coBüchi automaton whose DBP-ness encodes Hamiltonicity.
    ReduceHam {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Language equivalence: exact on finite words, sampled on ω-words.
    Equiv {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 2)]
        up_prefix: usize,
        #[arg(long, default_value_t = 4)]
        up_period: usize,
    },
}

enum Failure {
    Usage(String),
    Refused(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Budget { .. } | Error::PruningBudget { .. } => Failure::Refused(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Automaton, Failure> {
    parse_automaton(&read(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn save(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn expect_kind(a: &Automaton, kinds: &[Kind], what: &str) -> Outcome {
    let k = Kind::of(a);
    if kinds.contains(&k) {
        Ok(())
    } else {
        let names: Vec<&str> = kinds.iter().map(|k| k.name()).collect();
        Err(Failure::Usage(format!(
            "{what} needs {}, got {}",
            names.join(" or "),
            k.name()
        )))
    }
}

fn rounds(out: &mut dyn Write, rounds: &[WidthRound], key: &str) -> std::io::Result<()> {
    for r in rounds {
        writeln!(out, "k={} {key}={} states={}", r.k, r.wins, r.states)?;
    }
    Ok(())
}

fn io(e: std::io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

/// Every ultimately periodic word with bounded prefix and period lengths,
/// shortest first.
fn sample_upwords(sigma: usize, max_u: usize, max_v: usize) -> Vec<UpWord> {
    let mut words: Vec<Vec<SymbolId>> = vec![vec![]];
    let mut layer: Vec<Vec<SymbolId>> = vec![vec![]];
    for _ in 0..max_u.max(max_v) {
        layer = layer
            .iter()
            .flat_map(|w| (0..sigma).map(move |x| [w.as_slice(), &[x]].concat()))
            .collect();
        words.extend(layer.iter().cloned());
    }
    let mut out = Vec::new();
    for u in words.iter().filter(|u| u.len() <= max_u) {
        for v in words.iter().filter(|v| !v.is_empty() && v.len() <= max_v) {
            out.push(UpWord::new(u.clone(), v.clone()).unwrap());
        }
    }
    out.sort_by_key(|w| (w.prefix().len() + w.period().len(), w.clone()));
    out
}

fn format_upword(a: &Automaton, w: &UpWord) -> String {
    format!(
        "{} : {}",
        a.alphabet().format_word(w.prefix()),
        a.alphabet().format_word(w.period())
    )
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Width {
            file,
            max_k,
            no_duplication,
            position_budget,
        } => {
            let a = load(&file)?;
            expect_kind(&a, &[Kind::Nfa, Kind::Nca], "width")?;
            let report = if Kind::of(&a) == Kind::Nfa {
                let opts = WidthOptions {
                    rule: if no_duplication {
                        MoveRule::NoDuplication
                    } else {
                        MoveRule::AllSubsets
                    },
                    max_k,
                    position_budget,
                    ..WidthOptions::default()
                };
                width_nfa_with(&a, &opts)?
            } else {
                if no_duplication || max_k.is_some() {
                    return Err(Failure::Usage(
                        "--no-duplication and --max-k apply to nfa inputs only".into(),
                    ));
                }
                width_nca(&a)
            };
            writeln!(out, "width={}", report.width).map_err(io)?;
            rounds(out, &report.rounds, "gfg").map_err(io)?;
        }
        Command::Gfg { file, out: target } => {
            let a = load(&file)?;
            expect_kind(&a, &[Kind::Nfa, Kind::Nca], "gfg")?;
            if Kind::of(&a) == Kind::Nfa {
                let r = gfg_check_nfa(&a);
                writeln!(out, "verdict={}", r.gfg).map_err(io)?;
                if let (Some(path), Some(strategy)) = (target, &r.strategy) {
                    let d = prune_to_dfa(&a, &r.game, strategy)?;
                    save(&path, &write_automaton(&d))?;
                    writeln!(out, "pruning={}", path.display()).map_err(io)?;
                }
            } else {
                if target.is_some() {
                    return Err(Failure::Usage(
                        "--out for gfg needs an nfa; GFG coBuchi automata need not be DBP".into(),
                    ));
                }
                writeln!(out, "verdict={}", gfg_check_nca(&a).gfg).map_err(io)?;
            }
        }
        Command::Dbp {
            file,
            out: target,
            pruning_budget,
        } => {
            let a = load(&file)?;
            let pruning = match Kind::of(&a) {
                Kind::Nfa => dbp_check_nfa(&a),
                Kind::Nca => dbp_check_nca(&a, pruning_budget)?,
                Kind::Nba | Kind::Dra => dbp_check_rabin(&a, pruning_budget)?,
            };
            writeln!(out, "verdict={}", pruning.is_some()).map_err(io)?;
            if let (Some(path), Some(p)) = (target, pruning) {
                save(&path, &write_automaton(&p.apply(&a)))?;
                writeln!(out, "pruning={}", path.display()).map_err(io)?;
            }
        }
        Command::Detwidth {
            file,
            state_budget,
            pruning_budget,
        } => {
            let a = load(&file)?;
            expect_kind(&a, &[Kind::Nfa, Kind::Nca, Kind::Nba], "detwidth")?;
            let opts = DetWidthOptions {
                state_budget,
                pruning_budget,
            };
            match det_width(&a, &opts) {
                Ok((k, rs)) => {
                    writeln!(out, "detwidth={k}").map_err(io)?;
                    rounds(out, &rs, "dbp").map_err(io)?;
                }
                Err(refusal) => {
                    rounds(out, &refusal.rounds, "dbp").map_err(io)?;
                    return Err(refusal.error.into());
                }
            }
        }
        Command::Determinize {
            file,
            method,
            out: target,
        } => {
            let a = load(&file)?;
            let (name, k) = match method.split_once(':') {
                Some((m, k)) => {
                    let k: usize = k
                        .parse()
                        .map_err(|_| Failure::Usage(format!("bad bound in method {method:?}")))?;
                    (m, Some(k))
                }
                None => (method.as_str(), None),
            };
            let d = match (name, k) {
                ("subset", None) => {
                    expect_kind(&a, &[Kind::Nfa], "subset")?;
                    subset_construction(&a).automaton
                }
                ("k-subset", Some(k)) => {
                    expect_kind(&a, &[Kind::Nfa], "k-subset")?;
                    k_subset(&a, k)?.automaton
                }
                ("breakpoint", None) => {
                    expect_kind(&a, &[Kind::Nca], "breakpoint")?;
                    breakpoint_determinize(&a).automaton
                }
                ("k-breakpoint", Some(k)) => {
                    expect_kind(&a, &[Kind::Nca], "k-breakpoint")?;
                    k_breakpoint(&a, k)?.automaton
                }
                ("safra", None) => {
                    expect_kind(&a, &[Kind::Nba], "safra")?;
                    safra(&a).automaton
                }
                ("k-safra", Some(k)) => {
                    expect_kind(&a, &[Kind::Nba], "k-safra")?;
                    k_safra(&a, k)?.automaton
                }
                _ => {
                    return Err(Failure::Usage(format!(
                        "unknown method {method:?}; expected subset, k-subset:K, breakpoint, k-breakpoint:K, safra or k-safra:K"
                    )))
                }
            };
            save(&target, &write_automaton(&d))?;
            writeln!(out, "states={}", d.state_count()).map_err(io)?;
            writeln!(out, "deterministic={}", d.is_deterministic()).map_err(io)?;
        }
        Command::Sim {
            a,
            b,
            k,
            no_duplication,
        } => {
            let (a, b) = (load(&a)?, load(&b)?);
            expect_kind(&a, &[Kind::Nfa], "sim")?;
            expect_kind(&b, &[Kind::Nfa], "sim")?;
            writeln!(out, "sim={}", decide_sim(&a, &b, k, no_duplication)?).map_err(io)?;
        }
        Command::Member { file, word, upword } => {
            let a = load(&file)?;
            let verdict = match (word, upword) {
                (Some(w), None) => {
                    if a.mode() != WordMode::Finite {
                        return Err(Failure::Usage("--word needs an nfa; use --upword".into()));
                    }
                    a.member_finite(&a.alphabet().parse_word(&w)?)
                }
                (None, Some(w)) => {
                    if a.mode() != WordMode::Infinite {
                        return Err(Failure::Usage(
                            "--upword needs an ω-automaton; use --word".into(),
                        ));
                    }
                    let Some((u, v)) = w.split_once(':') else {
                        return Err(Failure::Usage("--upword takes \"u : v\"".into()));
                    };
                    let up = UpWord::new(a.alphabet().parse_word(u)?, a.alphabet().parse_word(v)?)?;
                    a.member_up(&up)
                }
                _ => {
                    return Err(Failure::Usage(
                        "give exactly one of --word and --upword".into(),
                    ))
                }
            };
            writeln!(out, "member={verdict}").map_err(io)?;
        }
        Command::Ambiguity { file, max_len } => {
            let a = load(&file)?;
            expect_kind(&a, &[Kind::Nfa], "ambiguity")?;
            for (len, max) in max_ambiguity_profile(&a, max_len)? {
                writeln!(out, "len={len} max={max}").map_err(io)?;
            }
        }
        Command::SolveGc { file } => {
            let gc = parse_gc(&read(&file)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let s = solve_gc(&gc)?;
            writeln!(
                out,
                "winner={}",
                if s.winner == Player::Zero { 0 } else { 1 }
            )
            .map_err(io)?;
        }
        Command::ReduceGc { file, out: target } => {
            let gc = parse_gc(&read(&file)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let r = build_reduction(&gc);
            save(&target, &write_automaton(&r.automaton))?;
            writeln!(out, "k={}", r.k).map_err(io)?;
            writeln!(out, "states={}", r.automaton.state_count()).map_err(io)?;
        }
        Command::ReduceHam { file, out: target } => {
            let g = parse_graph(&read(&file)?)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            if !g.is_strongly_connected() {
                writeln!(err, "warning: the graph is not strongly connected, so the DBP verdict need not match Hamiltonicity")
                    .map_err(io)?;
            }
            let a = build_ham_nca(&g);
            save(&target, &write_automaton(&a))?;
            writeln!(out, "states={}", a.state_count()).map_err(io)?;
        }
        Command::Equiv {
            a,
            b,
            up_prefix,
            up_period,
        } => {
            let (a, b) = (load(&a)?, load(&b)?);
            if a.alphabet() != b.alphabet() {
                return Err(Error::AlphabetMismatch.into());
            }
            if a.mode() != b.mode() {
                return Err(Failure::Usage(
                    "cannot compare finite-word and ω-automata".into(),
                ));
            }
            if a.mode() == WordMode::Finite {
                match equivalent_finite(&a, &b)? {
                    None => writeln!(out, "equiv=true").map_err(io)?,
                    Some(w) => {
                        writeln!(out, "equiv=false").map_err(io)?;
                        writeln!(out, "counterexample={}", a.alphabet().format_word(&w))
                            .map_err(io)?;
                    }
                }
            } else {
                let sample = sample_upwords(a.alphabet().len(), up_prefix, up_period);
                let bad = sample.iter().find(|w| a.member_up(w) != b.member_up(w));
                writeln!(out, "equiv={}", bad.is_none()).map_err(io)?;
                writeln!(out, "sampled={}", sample.len()).map_err(io)?;
                if let Some(w) = bad {
                    writeln!(out, "counterexample={}", format_upword(&a, w)).map_err(io)?;
                }
            }
        }
    }
    Ok(())
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
        Err(Failure::Refused(msg)) => {
            let _ = writeln!(out, "refused={msg}");
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

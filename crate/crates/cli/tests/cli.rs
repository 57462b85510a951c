use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("autwidth-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

/// Runs the binary and returns (exit code, stdout, stderr).
fn run(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_autwidth"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = run(args);
    assert_eq!(code, 0, "{args:?} failed: {err}");
    out
}

#[test]
fn width_of_two_chains() {
    let out = ok(&["width", &fixture("two_chains_m3.nfa")]);
    assert_eq!(
        out,
        "width=2\nk=1 gfg=false states=8\nk=2 gfg=true states=32\n"
    );
}

#[test]
fn width_of_cobuchi_automaton() {
    let out = ok(&["width", &fixture("eventually_a.nca")]);
    assert!(out.starts_with("width=2\n"), "{out}");
}

#[test]
fn width_budget_refusal() {
    let (code, out, _) = run(&[
        "width",
        &fixture("e1.nfa"),
        "--no-duplication",
        "--max-k",
        "3",
    ]);
    assert_eq!(code, 2);
    assert!(out.starts_with("refused="), "{out}");
}

#[test]
fn gfg_and_pruning_output() {
    assert_eq!(ok(&["gfg", &fixture("e1.nfa")]), "verdict=false\n");
    let target = scratch("pair.nfa");
    let out = ok(&[
        "gfg",
        &fixture("full_pair.nfa"),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.starts_with("verdict=true\npruning="), "{out}");
    let out = ok(&["equiv", &fixture("full_pair.nfa"), target.to_str().unwrap()]);
    assert_eq!(out, "equiv=true\n");
}

#[test]
fn dbp_verdicts() {
    assert_eq!(
        ok(&["dbp", &fixture("two_chains_m3.nfa")]),
        "verdict=false\n"
    );
    assert_eq!(
        ok(&["dbp", &fixture("eventually_a.nca")]),
        "verdict=false\n"
    );
    let target = scratch("inf.dra");
    let out = ok(&[
        "dbp",
        &fixture("infinitely_a.nba"),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.starts_with("verdict=true\n"), "{out}");
}

#[test]
fn detwidth_rounds() {
    let out = ok(&["detwidth", &fixture("two_chains_m3.nfa")]);
    assert_eq!(
        out,
        "detwidth=2\nk=1 dbp=false states=8\nk=2 dbp=true states=32\n"
    );
}

#[test]
fn determinize_methods() {
    let target = scratch("fan.nfa");
    let t = target.to_str().unwrap();
    let sizes = ok(&[
        "determinize",
        &fixture("letter_fan_n4.nfa"),
        "--method",
        "k-subset:2",
        "--out",
        t,
    ]);
    assert_eq!(sizes, "states=8\ndeterministic=false\n");
    let sizes = ok(&[
        "determinize",
        &fixture("letter_fan_n4.nfa"),
        "--method",
        "subset",
        "--out",
        t,
    ]);
    assert_eq!(sizes, "states=3\ndeterministic=true\n");
    let dra = scratch("safra.dra");
    ok(&[
        "determinize",
        &fixture("infinitely_a.nba"),
        "--method",
        "safra",
        "--out",
        dra.to_str().unwrap(),
    ]);
    let out = ok(&["equiv", &fixture("infinitely_a.nba"), dra.to_str().unwrap()]);
    assert!(out.starts_with("equiv=true\n"), "{out}");
    let (code, _, err) = run(&[
        "determinize",
        &fixture("e1.nfa"),
        "--method",
        "safra",
        "--out",
        t,
    ]);
    assert_eq!(code, 1, "{err}");
    let (code, _, _) = run(&[
        "determinize",
        &fixture("e1.nfa"),
        "--method",
        "k-subset:0",
        "--out",
        t,
    ]);
    assert_eq!(code, 1);
}

#[test]
fn simulation_and_membership() {
    assert_eq!(
        ok(&["sim", &fixture("e1.nfa"), &fixture("e1.nfa"), "--k", "1"]),
        "sim=true\n"
    );
    assert_eq!(
        ok(&["member", &fixture("e1.nfa"), "--word", "a a"]),
        "member=true\n"
    );
    assert_eq!(
        ok(&["member", &fixture("e1.nfa"), "--word", ""]),
        "member=false\n"
    );
    assert_eq!(
        ok(&[
            "member",
            &fixture("infinitely_a.nba"),
            "--upword",
            "b : a b"
        ]),
        "member=true\n"
    );
    assert_eq!(
        ok(&["member", &fixture("infinitely_a.nba"), "--upword", "a : b"]),
        "member=false\n"
    );
    let (code, _, _) = run(&["member", &fixture("e1.nfa"), "--upword", "a : a"]);
    assert_eq!(code, 1);
}

#[test]
fn ambiguity_profile() {
    let out = ok(&["ambiguity", &fixture("full_pair.nfa"), "--max-len", "3"]);
    assert_eq!(out, "len=0 max=1\nlen=1 max=2\nlen=2 max=4\nlen=3 max=8\n");
}

#[test]
fn gc_commands() {
    assert_eq!(ok(&["solve-gc", &fixture("running.gc")]), "winner=0\n");
    let target = scratch("running.nfa");
    let out = ok(&[
        "reduce-gc",
        &fixture("running.gc"),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert!(out.starts_with("k=4\n"), "{out}");
    let out = ok(&[
        "width",
        target.to_str().unwrap(),
        "--no-duplication",
        "--max-k",
        "4",
    ]);
    let width: usize = out
        .lines()
        .next()
        .unwrap()
        .strip_prefix("width=")
        .unwrap()
        .parse()
        .unwrap();
    assert!(width <= 4);
}

#[test]
fn hamiltonian_reduction() {
    let target = scratch("ham.nca");
    let (code, out, err) = run(&[
        "reduce-ham",
        &fixture("example.graph"),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!((code, out.as_str(), err.as_str()), (0, "states=12\n", ""));
    assert!(ok(&["dbp", target.to_str().unwrap()]).starts_with("verdict=true\n"));
    let (code, _, err) = run(&[
        "reduce-ham",
        &fixture("not_strongly_connected.graph"),
        "--out",
        target.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    assert!(err.starts_with("warning:"), "{err}");
}

#[test]
fn equivalence_counterexample() {
    let out = ok(&[
        "equiv",
        &fixture("nth_from_last3.nfa"),
        &fixture("zero_cycle3.nfa"),
    ]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("equiv=false"));
    assert!(lines.next().unwrap().starts_with("counterexample="));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["bogus"]).0, 1);
    assert_eq!(run(&["--help"]).0, 0);
    assert_eq!(run(&["width", "/nonexistent.nfa"]).0, 1);
    assert_eq!(run(&["width", &fixture("infinitely_a.nba")]).0, 1);
    assert_eq!(
        run(&["equiv", &fixture("e1.nfa"), &fixture("full_pair.nfa")]).0,
        1
    );
    let broken = scratch("broken.nfa");
    std::fs::write(
        &broken,
        "@type nfa\n@alphabet a\n@states 1\n@initial 0\n@accepting 0\n@trans 0 b 0\n",
    )
    .unwrap();
    let (code, _, err) = run(&["width", broken.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("line 6"), "{err}");
}

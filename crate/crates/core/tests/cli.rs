use std::process::{Command, Output};

fn pitwo(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pitwo")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn step_prints_successors() {
    let o = pitwo(&["step", "x?(y) => y!() | x!(u)"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "u!()");
}

#[test]
fn exit_codes_follow_verdicts() {
    assert_eq!(pitwo(&["bisim", "0", "x?(y) => 0"]).status.code(), Some(0));
    assert_eq!(pitwo(&["bisim", "a!()", "b!()"]).status.code(), Some(1));
    assert_eq!(pitwo(&["equiv", "a!() | b!()", "b!() | a!()"]).status.code(), Some(0));
    assert_eq!(pitwo(&["equiv", "a!()", "b!()"]).status.code(), Some(1));
    assert_eq!(pitwo(&["parse", "x?(y"]).status.code(), Some(2));
    assert_eq!(pitwo(&["verify", "--lemma", "nonsense"]).status.code(), Some(2));
}

#[test]
fn json_output_is_valid() {
    for args in [
        &["--json", "parse", "x!(a)"][..],
        &["--json", "barbs", "a!() | b?() => 0"],
        &["--json", "translate", "x?(y) => y!()"],
        &["--json", "redexes", "x?(y) => y!() | x!(u)"],
        &["--json", "concurrent", "a?() => 0 | a!() | b?() => 0 | b!()", "--comm-tokens", "2"],
        &["--json", "run", "a!() | a?() => b!()"],
    ] {
        let o = pitwo(args);
        assert!(o.status.success(), "{args:?}");
        serde_json::from_str::<serde_json::Value>(&stdout(&o)).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn dot_is_stable_under_congruence() {
    let a = pitwo(&["translate", "--dot", "a!() | b?(x) => x!()"]);
    let b = pitwo(&["translate", "--dot", "b?(y) => y!() | a!() | 0"]);
    assert!(stdout(&a).starts_with("digraph"));
    assert_eq!(stdout(&a), stdout(&b));
}

#[test]
fn crewrite_reports_the_matching_successor() {
    let o = pitwo(&["--json", "crewrite", "x?(y) => y!() | x!(u)", "--instantiate"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["successor"], "u!()");
}

#[test]
fn verify_runs_a_small_corpus() {
    let o = pitwo(&["verify", "--lemma", "reduction", "--max-prefixes", "2", "--width", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn terms_can_come_from_files() {
    let path = std::env::temp_dir().join("pitwo-cli-term.pi");
    std::fs::write(&path, "a!(b) | a?(x) => x!()").unwrap();
    let o = pitwo(&["step", &format!("@{}", path.display())]);
    assert_eq!(stdout(&o).trim(), "b!()");
}

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use lltn::game::{enumerate_moves, position_from_json, Rules};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn lltn(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lltn")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn duplicator_fixture_checks() {
    let o = lltn(&["check", "--system", "llt", fixture("dup_1.proof").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid: true"));
    assert!(stdout(&o).contains("cuts: 0"));
}

#[test]
fn bot_tensor_bot_has_no_proof() {
    let o = lltn(&["search", "--system", "lltn", "--seq", "B * B"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("exhausted (complete)"));
}

#[test]
fn search_prints_a_proof() {
    let o = lltn(&["search", "--seq", "B, 1"]);
    assert_eq!(o.status.code(), Some(0));
    let p = lltn::calculus::proof_from_json(&stdout(&o)).unwrap();
    assert_eq!(p.conclusion().to_string(), "|- B, 1");
}

#[test]
fn one_edge_is_won() {
    let o = lltn(&["solve", "--variant", "lltn", fixture("one_edge.pos").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "proponent wins");
}

#[test]
fn exit_codes() {
    assert_eq!(lltn(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(lltn(&["check", "no/such/file.proof"]).status.code(), Some(2));
    assert_eq!(lltn(&["search", "--seq", "1 *"]).status.code(), Some(2));
    let tensor = fixture("tensor.pos");
    assert_eq!(lltn(&["solve", "--budget", "1", tensor.to_str().unwrap()]).status.code(), Some(3));
    assert_eq!(lltn(&["sn-report", "--count", "20", "--budget", "5"]).status.code(), Some(3));
}

#[test]
fn transformed_proofs_recheck() {
    let dir = std::env::temp_dir().join(format!("lltn-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("dup.lltn.proof");
    let o = lltn(&[
        "transform",
        "to-lltn",
        fixture("dup_1.proof").to_str().unwrap(),
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let o = lltn(&["check", "--system", "lltn", "--n-check", "5", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn validity_sweeps() {
    let o = lltn(&["validity", "--seq", "B * B", "--bound", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = lltn(&["validity", "--seq", "B", "--bound", "2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("counterexample"));
    let o = lltn(&["validity", "--proof", fixture("axiom_plus.proof").to_str().unwrap(), "--bound", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn sn_report_is_deterministic() {
    let a = lltn(&["sn-report", "--count", "40", "--seed", "9"]);
    let b = lltn(&["sn-report", "--count", "40", "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(stdout(&a), stdout(&b));
    assert!(stdout(&a).starts_with("40 positions, 0 unfinished"));
}

#[test]
fn dot_export() {
    let o = lltn(&["export-dot", fixture("tensor.pos").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(dot.starts_with("digraph"));
    assert!(dot.contains("v0 -> v1 [label=\"1 ⊗ 1\"]"));
}

#[test]
fn repl_lists_exactly_the_legal_moves() {
    let path = fixture("tensor.pos");
    let start = position_from_json(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let mut child = Command::new(env!("CARGO_BIN_EXE_lltn"))
        .args(["play", path.to_str().unwrap()])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"0\nu\n9\nq\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let screens: Vec<&str> = text.split("> ").collect();

    let listed = |screen: &str| -> Vec<String> {
        screen
            .lines()
            .filter_map(|l| l.strip_prefix("  "))
            .filter_map(|l| l.split_once(": ").map(|(_, m)| m.to_string()))
            .collect()
    };
    let expected: Vec<String> = enumerate_moves(&start, &Rules::default()).iter().map(|m| m.to_string()).collect();
    assert_eq!(listed(screens[0]), expected);
    let (next, _) = lltn::game::apply_move(&start, &enumerate_moves(&start, &Rules::default())[0]).unwrap();
    let expected: Vec<String> = enumerate_moves(&next, &Rules::default()).iter().map(|m| m.to_string()).collect();
    assert_eq!(listed(screens[1]), expected);
    // undo returns to the start
    assert_eq!(listed(screens[2]), listed(screens[0]));
    assert!(screens[3].starts_with("commands:"));
}

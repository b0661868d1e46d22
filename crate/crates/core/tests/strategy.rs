use std::collections::BTreeMap;
use std::sync::Arc;

use lltn::calculus::*;
use lltn::formula::{parse, Formula};
use lltn::game::*;
use lltn::strategy::*;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn sweep(bound: usize) -> Sweep {
    Sweep::new(bound, Rules::lltn(2))
}

#[test]
fn one_against_small_opponents() {
    let p = Builder::new(System::Lltn).one();
    let w = soundness_pipeline(&p).unwrap();
    let r = validity_check(&w.base, Judge::Witness(&w), &sweep(3)).unwrap();
    assert!(r.passed(), "{r} {:?}", r.counterexample.as_ref().map(|p| p.to_string()));
    let r = validity_check(&w.base, Judge::Solve, &sweep(3)).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn bot_alone_is_refuted() {
    let r = validity_check(&Base::single(&[Formula::Bot]), Judge::Solve, &sweep(2)).unwrap();
    assert!(r.refuted(), "{r}");
}

#[test]
fn axioms_win() {
    for s in ["1", "0", "1 + B", "1 * B", "(1 + B) * 1"] {
        let p = axiom_proof(&f(s)).unwrap();
        let w = soundness_pipeline(&p).unwrap();
        let r = validity_check(&w.base, Judge::Witness(&w), &sweep(3)).unwrap();
        assert!(r.passed(), "{s}: {r} {:?}", r.counterexample.as_ref().map(|p| p.to_string()));
    }
}

#[test]
fn exponential_axiom_is_never_refuted() {
    let p = axiom_proof(&f("!1")).unwrap();
    let w = soundness_pipeline(&p).unwrap();
    let r = validity_check(&w.base, Judge::Witness(&w), &sweep(2)).unwrap();
    assert_eq!(r.opponent_wins, 0, "{r}");
}

#[test]
fn decorations_must_match() {
    let p = Position::single(Team::Proponent);
    let d = BTreeMap::from([(0, Arc::new(Builder::new(System::Lltn).one()))]);
    assert!(matches!(ProofStrategy::new(&p, d), Err(StrategyError::Mismatch { .. })));
}

#[test]
fn bot_tensor_bot_is_won_without_a_proof() {
    let r = validity_check(&Base::single(&[f("B * B")]), Judge::Solve, &sweep(3)).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn composed_witness_plays_the_intersection() {
    let b = Builder::new(System::Lltn);
    let w1 = soundness_pipeline(&b.one()).unwrap();
    let w2 = soundness_pipeline(&axiom_proof(&f("1")).unwrap()).unwrap();
    let c = cut_compose_witness(&w1, &w2, &Formula::One).unwrap();
    assert_eq!(c.base.sequent().0, vec![Formula::One]);
    assert_eq!(c.parts.len(), 2);
    let r = validity_check(&c.base, Judge::Witness(&c), &sweep(3)).unwrap();
    assert!(r.passed(), "{r}");
}

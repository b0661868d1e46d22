use lltn::calculus::random::{random_cut_pair, random_ll_proof, random_ll_proof_with_contraction};
use lltn::calculus::witnesses::{cut_needed_proof, cut_needed_sequent, laurent_proof, laurent_sequent};
use lltn::calculus::*;
use lltn::formula::{duplicator, parse, Formula};

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

fn valid(system: System, p: &Proof, n: usize) -> CheckReport {
    let r = check_proof(system, p, n);
    assert!(r.valid, "{r}\n{}", proof_to_json(p));
    r
}

#[test]
fn bot_over_one() {
    let b = Builder::new(System::Lltn);
    let p = b.bot(b.one());
    let r = valid(System::Lltn, &p, 5);
    assert_eq!(r.cut_count, 0);
    assert_eq!(p.conclusion().to_string(), "|- 1, B");
}

#[test]
fn axioms_check_in_every_system() {
    for s in ["1", "B", "0", "T", "1 + B", "B & 1", "1 * B", "!1", "?B", "!(1 + B)", "?(1 * !B) @ 0"] {
        let a = f(s);
        for sys in [System::Ll, System::Llt, System::Lltn] {
            let p = axiom_proof_in(sys, &a).unwrap();
            assert_eq!(p.conclusion().0, vec![a.dual(), a.clone()]);
            valid(sys, &p, 4);
        }
        let p = axiom_proof(&a).unwrap();
        assert!(p.is_cut_free());
    }
    assert!(axiom_proof(&Formula::atom("X")).is_err());
}

#[test]
fn axiom_of_bang_one_is_bot_over_one_at_zero() {
    let p = axiom_proof(&f("1")).unwrap();
    assert_eq!(p.rule(), &Rule::Bot);
    assert_eq!(p.children()[0].rule(), &Rule::One);
}

#[test]
fn duplicators_are_cut_and_contraction_free() {
    for s in ["1", "B", "1 + B", "!1"] {
        let a = f(s);
        let p = dup_proof(&a).unwrap();
        assert_eq!(p.conclusion().0, vec![duplicator(&a)]);
        let r = valid(System::Llt, &p, 0);
        assert_eq!((r.cut_count, r.contraction_count), (0, 0));
    }
}

#[test]
fn apply_dup_on_weakened_premise() {
    let b = Builder::new(System::Llt);
    let base = b.bot(b.one());
    let base = base.arranged(&[Formula::Bot, Formula::One]).unwrap();
    let p = b.weakening(b.weakening(b.weakening(base, &f("1")), &f("1")), &Formula::Bot);
    let p = p.with_last(&[f("?1"), f("?1")]).unwrap();
    let q = apply_dup(&p).unwrap();
    let last = q.conclusion().0.last().unwrap().clone();
    assert_eq!(last, f("?(!B * (?1 @ ?1))"));
    assert_eq!(last, duplicator(&f("B")).dual());
    let r = valid(System::Llt, &q, 0);
    assert_eq!((r.cut_count, r.contraction_count), (0, 0));
}

#[test]
fn translations_round_trip() {
    for seed in 0..100 {
        let p = random_ll_proof(seed);
        valid(System::Ll, &p, 0);
        let t = translate_ll_to_llt(&p).unwrap();
        assert_eq!(t.conclusion(), p.conclusion());
        valid(System::Llt, &t, 0);
        let back = translate_llt_to_ll(&t).unwrap();
        assert_eq!(back.conclusion(), p.conclusion());
        valid(System::Ll, &back, 0);
    }
}

#[test]
fn shared_tensor_becomes_one_contraction() {
    let b = Builder::new(System::Llt);
    let ax = axiom_proof_in(System::Llt, &f("!1")).unwrap();
    let t = b.tensor(&ax, &ax, &f("!1"), &f("!1"), &[f("?B")]).unwrap();
    let ll = translate_llt_to_ll(&t).unwrap();
    let r = valid(System::Ll, &ll, 0);
    assert_eq!(r.contraction_count, 1);
}

#[test]
fn contraction_elimination_and_bounding() {
    for seed in 0..60 {
        let p = random_ll_proof_with_contraction(seed);
        let k = stats(&p).contractions;
        let (q, ds) = eliminate_contractions(&p).unwrap();
        assert_eq!(ds.len(), k);
        let r = valid(System::Llt, &q, 0);
        assert_eq!((r.cut_count, r.contraction_count), (0, 0));
        let bp = bound_proof(&p).unwrap();
        assert!(is_bounded(&bp));
        assert_eq!(bp.conclusion(), p.conclusion());
        let r = valid(System::Llt, &bp, 0);
        assert_eq!(r.cut_count, 1);
        let n = llt_to_lltn(&bp).unwrap();
        assert!(is_bounded(&n));
        valid(System::Lltn, &n, 5);
    }
}

#[test]
fn promotion_splits_tensor_powers() {
    let b = Builder::new(System::Llt);
    let ax = b.weakening(b.one(), &f("1"));
    let p = b.classic_promotion(&ax, &f("1")).unwrap();
    let n = llt_to_lltn(&p).unwrap();
    valid(System::Lltn, &n, 5);
    let family = n.family().unwrap();
    let two = family.premise(&[f("?1")], &f("1"), 2).unwrap();
    assert_eq!(two.conclusion().0, vec![f("?1"), f("1 * 1")]);
    assert!(matches!(two.rule(), Rule::NewTensor { left: 0, right: 0 }));
}

#[test]
fn laurent_witness() {
    let x = f("B * B");
    let p = laurent_proof(&x, 5).unwrap();
    assert_eq!(p.conclusion(), &laurent_sequent(&x));
    valid(System::Lltn, &p, 5);
    let b2 = anodyne(Anodyne::Bang(2), &p, 1).unwrap();
    assert_eq!(b2.conclusion().0[1], f("(B * B) * (B * B)"));
    valid(System::Lltn, &b2, 5);
}

#[test]
fn cut_needed_witness_checks() {
    let (x, y) = (f("B * T"), f("1 @ 0"));
    let p = cut_needed_proof(&x, &y).unwrap();
    assert_eq!(p.conclusion(), &cut_needed_sequent(&x, &y));
    let r = valid(System::Llt, &p, 0);
    assert_eq!(r.contraction_count, 1);
    let n = llt_to_lltn(&bound_proof(&p).unwrap()).unwrap();
    valid(System::Lltn, &n, 5);
}

#[test]
fn search_basics() {
    let cfg = SearchConfig {
        depth_limit: 10,
        arity_cap: 2,
        ..Default::default()
    };
    let out = search_cutfree(System::Lltn, &Sequent::parse("B * B").unwrap(), &cfg);
    assert!(matches!(out, SearchOutcome::Exhausted { complete: true }), "{out:?}");
    let out = search_cutfree(System::Lltn, &Sequent::parse("B, 1").unwrap(), &cfg);
    let p = out.proof().unwrap();
    valid(System::Lltn, p, 2);
    for s in ["1 + B, B & 1", "!1, ?B", "?B * ?B, !1 @ !1", "1 * 1, B, B"] {
        for sys in [System::Ll, System::Llt, System::Lltn] {
            let out = search_cutfree(sys, &Sequent::parse(s).unwrap(), &cfg);
            let p = out.proof().unwrap_or_else(|| panic!("{s} in {sys}: {out:?}"));
            valid(sys, p, 2);
        }
    }
}

#[test]
fn compose_cuts_pairs() {
    for seed in 0..40 {
        let (p1, p2, a) = random_cut_pair(seed).unwrap();
        let c = compose_cuts(&p1, &p2, &a).unwrap();
        assert!(is_bounded(&c));
        valid(System::Lltn, &c, 3);
    }
}

#[test]
fn serial_round_trip() {
    let p = llt_to_lltn(&bound_proof(&random_ll_proof_with_contraction(3)).unwrap()).unwrap();
    let back = proof_from_json(&proof_to_json(&p)).unwrap();
    assert_eq!(back, p);
    let l = laurent_proof(&f("B * B"), 2).unwrap();
    assert_eq!(proof_from_json(&proof_to_json(&l)).unwrap(), l);
    let ax = axiom_proof(&f("!1")).unwrap();
    assert_eq!(proof_from_json(&proof_to_json(&ax)).unwrap(), ax);
}

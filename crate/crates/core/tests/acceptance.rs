//! Acceptance criteria, one line each. Run with `cargo test --test acceptance`.

use std::collections::{BTreeMap, BTreeSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use lltn::calculus::random::{random_cut_pair, random_ll_proof, random_ll_proof_with_contraction};
use lltn::calculus::witnesses::{cut_needed_proof, cut_needed_sequent, laurent_proof, laurent_sequent};
use lltn::calculus::*;
use lltn::formula::{duplicator, parse, power, Formula, PowerMode};
use lltn::game::*;
use lltn::strategy::*;

/// Criteria whose failure is understood and recorded; they still print FAIL.
const KNOWN_FAILURES: &[usize] = &[6];

type Verdict = Result<String, String>;

fn f(s: &str) -> Formula {
    parse(s).unwrap()
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn checks(system: System, p: &Proof, n: usize) -> Result<CheckReport, String> {
    let r = check_proof(system, p, n);
    ensure!(r.valid, "{r}");
    Ok(r)
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    ensure!(start.elapsed() < limit, "took {:.1?}, limit {limit:?}", start.elapsed());
    Ok(())
}

fn c1_duplicators() -> Verdict {
    let start = Instant::now();
    let b = Builder::new(System::Llt);
    for s in ["1", "B", "1 + B", "!1"] {
        let a = f(s);
        let d = dup_proof(&a).map_err(|e| e.to_string())?;
        ensure!(d.conclusion().0 == vec![duplicator(&a)], "dup({s}) concludes {}", d.conclusion());
        let r = checks(System::Llt, &d, 0)?;
        ensure!((r.cut_count, r.contraction_count) == (0, 0), "dup({s}): {r}");

        let base = b.bot(b.one()).arranged(&[Formula::Bot, Formula::One]).map_err(|e| e.to_string())?;
        let premise = b
            .weakening(b.weakening(base, &a), &a)
            .with_last(&[Formula::why_not(a.clone()), Formula::why_not(a.clone())])
            .map_err(|e| e.to_string())?;
        let q = apply_dup(&premise).map_err(|e| e.to_string())?;
        let r = checks(System::Llt, &q, 0)?;
        ensure!((r.cut_count, r.contraction_count) == (0, 0), "apply_dup on ?{s}, ?{s}: {r}");
        let want = duplicator(&a.dual()).dual();
        ensure!(q.conclusion().0.last() == Some(&want), "apply_dup on ?{s} concludes {}", q.conclusion());
    }
    within(Duration::from_secs(1), start)?;
    Ok("4 duplicators and 4 applications, no cuts or contractions".into())
}

fn ll_corpus() -> Vec<Proof> {
    (0..200).map(random_ll_proof_with_contraction).collect()
}

fn c2_contraction_elimination(corpus: &[Proof]) -> Verdict {
    let start = Instant::now();
    let mut total = 0;
    for (i, p) in corpus.iter().enumerate() {
        ensure!(p.is_cut_free() && p.size() <= 15, "corpus proof {i} is not a small cut-free proof");
        checks(System::Ll, p, 0)?;
        let k = stats(p).contractions;
        let (q, ds) = eliminate_contractions(p).map_err(|e| format!("proof {i}: {e}"))?;
        let r = checks(System::Llt, &q, 0)?;
        ensure!((r.cut_count, r.contraction_count) == (0, 0), "proof {i}: {r}");
        ensure!(ds.len() == k, "proof {i}: {} duplicators for {k} contractions", ds.len());
        let mut want = p.conclusion().0.clone();
        want.extend(ds.iter().map(Formula::dual));
        ensure!(q.conclusion().0 == want, "proof {i} concludes {}", q.conclusion());
        total += k;
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("{} proofs, {total} contractions eliminated", corpus.len()))
}

fn c3_bounding(corpus: &[Proof]) -> Result<(String, Vec<Proof>), String> {
    let mut out = Vec::new();
    for (i, p) in corpus.iter().enumerate() {
        let b = bound_proof(p).map_err(|e| format!("proof {i}: {e}"))?;
        ensure!(is_bounded(&b), "proof {i}: result is not bounded");
        let r = checks(System::Llt, &b, 0)?;
        ensure!(r.cut_count <= 1, "proof {i}: {} cuts", r.cut_count);
        ensure!(b.conclusion() == p.conclusion(), "proof {i} concludes {}", b.conclusion());
        out.push(b);
    }
    Ok((format!("{} bounded proofs, at most one cut each", out.len()), out))
}

fn c4_to_lltn(bounded: &[Proof]) -> Verdict {
    for (i, b) in bounded.iter().enumerate() {
        let n = llt_to_lltn(b).map_err(|e| format!("proof {i}: {e}"))?;
        checks(System::Lltn, &n, 5)?;
        ensure!(n.conclusion() == b.conclusion(), "proof {i} concludes {}", n.conclusion());
    }
    Ok(format!("{} translations re-check with promotion premises 0..=5", bounded.len()))
}

fn c5_laurent() -> Verdict {
    let start = Instant::now();
    let x = f("B * B");
    let p = laurent_proof(&x, 5).map_err(|e| e.to_string())?;
    ensure!(p.conclusion() == &laurent_sequent(&x), "concludes {}", p.conclusion());
    ensure!(is_bounded(&p), "the LLTN proof is not bounded");
    checks(System::Lltn, &p, 5)?;
    let cfg = SearchConfig {
        depth_limit: 12,
        arity_cap: 3,
        ..Default::default()
    };
    let out = search_cutfree(System::Ll, &laurent_sequent(&x), &cfg);
    ensure!(out.is_exhausted(), "LL search: {out:?}");
    within(Duration::from_secs(120), start)?;
    Ok(format!("bounded LLTN proof checks; LL search {out:?}"))
}

fn c6_cut_needed() -> Verdict {
    let start = Instant::now();
    let (x, y) = (f("B * T"), f("1 @ 0"));
    let p = cut_needed_proof(&x, &y).map_err(|e| e.to_string())?;
    checks(System::Llt, &p, 0)?;
    let cfg = SearchConfig {
        depth_limit: 14,
        arity_cap: 3,
        ..Default::default()
    };
    let out = search_cutfree(System::Lltn, &cut_needed_sequent(&x, &y), &cfg);
    let atoms = search_cutfree(
        System::Lltn,
        &cut_needed_sequent(&Formula::atom("X"), &Formula::atom("Y")),
        &cfg,
    );
    within(Duration::from_secs(300), start)?;
    match out {
        SearchOutcome::Proof(q) => {
            let r = check_proof(System::Lltn, &q, 3);
            Err(format!(
                "LLT proof checks, but LLTN search finds a cut-free proof ({} nodes, check valid: {}); \
                 with atoms X, Y the search gives {atoms:?}",
                q.size(),
                r.valid
            ))
        }
        other => {
            ensure!(other.is_exhausted(), "LLTN search: {other:?}");
            Ok(format!("LLT proof checks; LLTN search {other:?}"))
        }
    }
}

fn c7_compose_cuts() -> Verdict {
    for seed in 0..100 {
        let (p1, p2, a) = random_cut_pair(seed).map_err(|e| format!("pair {seed}: {e}"))?;
        let c = compose_cuts(&p1, &p2, &a).map_err(|e| format!("pair {seed}: {e}"))?;
        ensure!(is_bounded(&c), "pair {seed}: not bounded");
        checks(System::Lltn, &c, 3)?;
        let mut want = p1.conclusion().0.clone();
        let i = want.iter().position(|g| *g == a).ok_or("cut formula missing")?;
        want.remove(i);
        let mut delta = p2.conclusion().0.clone();
        let j = delta.iter().position(|g| *g == a.dual()).ok_or("dual cut formula missing")?;
        delta.remove(j);
        want.extend(delta);
        ensure!(
            Sequent(want.clone()).same_multiset(c.conclusion()),
            "pair {seed}: {} instead of {}",
            c.conclusion(),
            Sequent(want)
        );
    }
    Ok("100 compositions are bounded, check, and conclude Γ, Δ".into())
}

fn c8_finiteness() -> Verdict {
    let labels = Labels::Random { max_depth: 3, leaf: 0.7 };
    let corpus = gen_positions(6, labels, 500, 1);
    ensure!(
        corpus.iter().all(|p| p.len() <= 6 && p.edges().iter().all(|e| e.label.depth() <= 3)),
        "corpus out of bounds"
    );
    let exotic = Rules::lltn(2).with_exotic();
    let (mut longest, mut naive_longest, mut largest) = (0, 0, 0);
    for p in &corpus {
        let s = all_plays(p, &exotic, 10_000_000).map_err(|e| format!("{p}: {e}"))?;
        let n = all_plays(p, &Rules::naive(), 10_000_000).map_err(|e| format!("naive {p}: {e}"))?;
        ensure!(n.max_length <= s.max_length, "{p}: naive play of {} moves", n.max_length);
        longest = longest.max(s.max_length);
        naive_longest = naive_longest.max(n.max_length);
        largest = largest.max(s.positions);
    }
    Ok(format!(
        "500 positions terminate; longest play {longest} with exotic moves, {naive_longest} naive; \
         largest game {largest} positions"
    ))
}

fn report_line(r: &ValidityReport) -> String {
    let cex = r.counterexample.as_ref().map(|p| format!(" e.g. {p}")).unwrap_or_default();
    format!("{r}{cex}")
}

/// `⊢ 1 ⊗ 1` through a contraction of `?⊥` cut against `!1`, with both halves
/// bounded in LLTN before the cut is composed.
fn root_cut_fixture() -> Proof {
    let b = Builder::new(System::Ll);
    let why_bot = Formula::why_not(Formula::Bot);
    let d = b.classic_dereliction(&b.bot(b.one()), &Formula::Bot).unwrap();
    let t = b.tensor(&d, &d, &Formula::One, &Formula::One, &[]).unwrap();
    let c = b.contraction(&t, &why_bot).unwrap();
    let bang = b.classic_promotion(&b.one(), &Formula::One).unwrap();
    let lift = |p: &Proof| llt_to_lltn(&bound_proof(p).unwrap()).unwrap();
    compose_cuts(&lift(&c), &lift(&bang), &why_bot).unwrap()
}

fn c9_soundness() -> Verdict {
    let sweep = Sweep::new(3, Rules::lltn(2));
    let mut fixtures: Vec<(String, Proof)> = ["1", "0", "1 + B", "1 * B", "(1 + B) * 1"]
        .iter()
        .map(|s| (format!("axiom {s}"), axiom_proof(&f(s)).unwrap()))
        .collect();
    let cut = root_cut_fixture();
    ensure!(matches!(cut.rule(), Rule::Cut { .. }), "fixture has no root cut");
    fixtures.push((format!("root cut {}", cut.conclusion()), cut));
    let mut checked = 0;
    for (name, p) in &fixtures {
        let w = soundness_pipeline(p).map_err(|e| format!("{name}: {e}"))?;
        let r = validity_check(&w.base, Judge::Witness(&w), &sweep).map_err(|e| format!("{name}: {e}"))?;
        ensure!(r.passed(), "{name}: {}", report_line(&r));
        checked += r.checked;
    }
    Ok(format!("{} fixtures win all {checked} completions", fixtures.len()))
}

fn c10_consistency() -> Verdict {
    let sweep = Sweep::new(3, Rules::lltn(2));
    let solver_sweep = |base: &Base| validity_check(base, Judge::Solve, &sweep).map_err(|e| e.to_string());
    let bases = enumerate_rooted(2, &default_pool(), &[Team::Proponent]);
    let corpus = ["1", "B", "1 * 1", "B @ B", "1 + B", "B & 1", "B * B", "1 @ 1", "!1", "?B"];
    let mut certified = 0;
    for s in corpus {
        let a = f(s);
        for u in &bases {
            let with = |g: &Formula| Base {
                position: u.position.clone(),
                ports: vec![(u.root, g.clone())],
            };
            let pos = solver_sweep(&with(&a))?.passed();
            let neg = solver_sweep(&with(&a.dual()))?.passed();
            ensure!(!(pos && neg), "{s} and its dual both win on base {}", u.position);
            certified += usize::from(pos) + usize::from(neg);
        }
    }
    Ok(format!(
        "{} formulas × {} bases: {certified} certified sides, never both",
        corpus.len(),
        bases.len()
    ))
}

fn c11_incompleteness() -> Verdict {
    let sweep = Sweep::new(3, Rules::lltn(2));
    let r = validity_check(&Base::single(&[f("B * B")]), Judge::Solve, &sweep).map_err(|e| e.to_string())?;
    ensure!(r.passed(), "{}", report_line(&r));
    let out = search_cutfree(
        System::Lltn,
        &Sequent::parse("B * B").unwrap(),
        &SearchConfig {
            depth_limit: 10,
            arity_cap: 2,
            ..Default::default()
        },
    );
    ensure!(matches!(out, SearchOutcome::Exhausted { complete: true }), "search: {out:?}");
    Ok(format!("⊥ ⊗ ⊥ wins {} completions; search exhausted completely", r.checked))
}

fn c12_naive_defect() -> Verdict {
    let naive = Sweep::new(3, Rules::naive());
    let lltn = Sweep::new(3, Rules::lltn(2));
    let lolli = |a: &str| Formula::lolli(f(a), Formula::of_course(f(a)));
    for a in ["1", "B + B"] {
        let r = validity_check(&Base::single(&[lolli(a)]), Judge::Solve, &naive).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "naive, A = {a}: {}", report_line(&r));
    }
    let r = validity_check(&Base::single(&[lolli("B + B")]), Judge::Solve, &lltn).map_err(|e| e.to_string())?;
    ensure!(!r.passed(), "LLTN, A = ⊥ ⊕ ⊥ passes: {r}");
    Ok(format!("naive game accepts A ⊸ !A; LLTN game for A = ⊥ ⊕ ⊥: {}", report_line(&r)))
}

fn c13_model_cut() -> Verdict {
    let b = Builder::new(System::Lltn);
    let plus = f("1 + B");
    let pairs = [
        (b.one(), axiom_proof(&Formula::One).unwrap(), Formula::One),
        (axiom_proof(&plus).unwrap(), b.plus_left(&b.one(), &Formula::One, &Formula::Bot).unwrap(), plus.dual()),
    ];
    let sweep = Sweep::new(3, Rules::lltn(2));
    let mut compared = 0;
    for (p1, p2, a) in &pairs {
        let w1 = soundness_pipeline(p1).map_err(|e| e.to_string())?;
        let w2 = soundness_pipeline(p2).map_err(|e| e.to_string())?;
        let c = cut_compose_witness(&w1, &w2, a).map_err(|e| e.to_string())?;
        let r = validity_check(&c.base, Judge::Witness(&c), &sweep).map_err(|e| e.to_string())?;
        ensure!(r.passed(), "cut on {a}: {}", report_line(&r));
        let room = 5 - c.base.position.len();
        for v in sweep.corpus.iter().filter(|v| v.position.len() <= room) {
            let whole = lltn::strategy::attach(&c.base, &[v]).map_err(|e| e.to_string())?;
            for t in whole.vertices().collect::<Vec<_>>() {
                let p = whole.with_token(t).map_err(|e| e.to_string())?;
                let both = c.strategy(&p).map_err(|e| e.to_string())?;
                let joint = play_set(&both, &p, &sweep.rules, 1_000_000).map_err(|e| e.to_string())?;
                let mut meet: Option<BTreeSet<Vec<Move>>> = None;
                for part in &c.parts {
                    let s = ProofStrategy::new(&p, part.clone()).map_err(|e| e.to_string())?;
                    let plays = play_set(&s, &p, &sweep.rules, 1_000_000).map_err(|e| e.to_string())?;
                    meet = Some(match meet {
                        None => plays,
                        Some(m) => m.intersection(&plays).cloned().collect(),
                    });
                }
                ensure!(Some(&joint) == meet.as_ref(), "play sets differ on {p}");
                compared += 1;
            }
        }
    }
    Ok(format!("2 composites pass; play sets agree on {compared} positions"))
}

fn c14_anodyne() -> Verdict {
    let mut proofs = 0;
    let mut uses: BTreeMap<&str, usize> = BTreeMap::new();
    for seed in 0.. {
        if proofs == 200 {
            break;
        }
        let (q, _) = eliminate_contractions(&random_ll_proof(seed)).map_err(|e| e.to_string())?;
        let p = llt_to_lltn(&q).map_err(|e| e.to_string())?;
        let concl = p.conclusion().0.clone();
        let mut applicable = false;
        for (i, g) in concl.iter().enumerate() {
            let kinds: Vec<Anodyne> = match g {
                Formula::Bot => vec![Anodyne::Bot],
                Formula::Par(..) => vec![Anodyne::Par],
                Formula::With(..) => vec![Anodyne::WithLeft, Anodyne::WithRight],
                Formula::OfCourse(_) => (0..=2).map(Anodyne::Bang).collect(),
                _ => vec![],
            };
            for kind in kinds {
                applicable = true;
                let r = anodyne(kind, &p, i).map_err(|e| format!("seed {seed}, {kind:?} at {i}: {e}"))?;
                ensure!(r.is_cut_free(), "seed {seed}, {kind:?}: cut introduced");
                let repl = match (kind, g) {
                    (Anodyne::Bot, _) => vec![],
                    (Anodyne::Par, Formula::Par(a, b)) => vec![(**a).clone(), (**b).clone()],
                    (Anodyne::WithLeft, Formula::With(a, _)) => vec![(**a).clone()],
                    (Anodyne::WithRight, Formula::With(_, b)) => vec![(**b).clone()],
                    (Anodyne::Bang(n), Formula::OfCourse(a)) => vec![power(a, n, PowerMode::Tensor)],
                    _ => unreachable!(),
                };
                let mut want = concl[..i].to_vec();
                want.extend(repl);
                want.extend_from_slice(&concl[i + 1..]);
                ensure!(r.conclusion().0 == want, "seed {seed}, {kind:?}: concludes {}", r.conclusion());
                checks(System::Lltn, &r, 3).map_err(|e| format!("seed {seed}, {kind:?}: {e}"))?;
                let name = match kind {
                    Anodyne::Bot => "⊥",
                    Anodyne::Par => "⅋",
                    Anodyne::WithLeft => "&left",
                    Anodyne::WithRight => "&right",
                    Anodyne::Bang(_) => "!",
                };
                *uses.entry(name).or_default() += 1;
            }
        }
        proofs += usize::from(applicable);
    }
    ensure!(uses.len() == 5, "not every modification was exercised: {uses:?}");
    Ok(format!("200 proofs, applications {uses:?}"))
}

fn main() -> ExitCode {
    let corpus = ll_corpus();
    let mut bounded = Vec::new();
    let mut failed = Vec::new();
    let mut ran = Vec::new();
    // `cargo test --test acceptance -- 9 13` runs only the listed criteria
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let wanted = |n: usize| only.is_empty() || only.contains(&n) || (n == 3 && only.contains(&4));
    let mut run = |n: usize, name: &str, c: &mut dyn FnMut() -> Verdict| {
        if !wanted(n) {
            return;
        }
        ran.push(n);
        let start = Instant::now();
        let verdict = catch_unwind(AssertUnwindSafe(c)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("criterion {n:>2} {name}: PASS ({secs:.1}s) {detail}"),
            Err(detail) => {
                println!("criterion {n:>2} {name}: FAIL ({secs:.1}s) {detail}");
                failed.push(n);
            }
        }
    };
    run(1, "duplicators", &mut c1_duplicators);
    run(2, "contraction elimination", &mut || c2_contraction_elimination(&corpus));
    run(3, "bounding", &mut || {
        let (detail, b) = c3_bounding(&corpus)?;
        bounded = b;
        Ok(detail)
    });
    run(4, "LLT to LLTN", &mut || c4_to_lltn(&bounded));
    run(5, "Laurent sequent", &mut c5_laurent);
    run(6, "cut-elimination failure", &mut c6_cut_needed);
    run(7, "cut admissibility", &mut c7_compose_cuts);
    run(8, "finiteness", &mut c8_finiteness);
    run(9, "soundness", &mut c9_soundness);
    run(10, "consistency", &mut c10_consistency);
    run(11, "incompleteness witness", &mut c11_incompleteness);
    run(12, "naive-game defect", &mut c12_naive_defect);
    run(13, "model-level cut", &mut c13_model_cut);
    run(14, "anodyne preservation", &mut c14_anodyne);

    let unexpected: Vec<usize> = failed.iter().copied().filter(|n| !KNOWN_FAILURES.contains(n)).collect();
    let recovered: Vec<usize> =
        KNOWN_FAILURES.iter().copied().filter(|n| ran.contains(n) && !failed.contains(n)).collect();
    println!("{} of {} criteria pass", ran.len() - failed.len(), ran.len());
    if !recovered.is_empty() {
        println!("criteria {recovered:?} were expected to fail and now pass; update KNOWN_FAILURES");
    }
    if unexpected.is_empty() && recovered.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use lltn::calculus::{axiom_proof, check_proof, System};
use lltn::formula::{parse, Formula, Polarity};
use lltn::game::{apply_move, enumerate_moves, gen_positions, Labels, Position, PositionRepr, Rules};

fn formula(atoms: bool) -> impl Strategy<Value = Formula> {
    let mut leaves = vec![Just(Formula::One), Just(Formula::Zero), Just(Formula::Top), Just(Formula::Bot)];
    if atoms {
        leaves.push(Just(Formula::atom("X")));
        leaves.push(Just(Formula::atom("X").dual()));
    }
    proptest::strategy::Union::new(leaves).prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::par(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::plus(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::with(a, b)),
            inner.clone().prop_map(Formula::of_course),
            inner.prop_map(Formula::why_not),
        ]
    })
}

fn positions(seed: u64) -> Vec<Position> {
    gen_positions(5, Labels::Random { max_depth: 2, leaf: 0.6 }, 4, seed)
}

fn renamed(p: &Position, seed: u64) -> Position {
    let mut ids: Vec<u32> = p.vertices().collect();
    ids.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    let old: Vec<u32> = p.vertices().collect();
    let map = |v: u32| 10 + ids[old.iter().position(|&w| w == v).unwrap()];
    let mut r = PositionRepr::from(p);
    r.vertices.iter_mut().for_each(|v| v.id = map(v.id));
    r.edges.iter_mut().for_each(|e| {
        e.src = map(e.src);
        e.dst = map(e.dst);
    });
    r.token = map(r.token);
    Position::try_from(r).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn dual_is_an_involution(a in formula(true)) {
        prop_assert_eq!(a.dual().dual(), a.clone());
        prop_assert_eq!(a.dual().size(), a.size());
    }

    #[test]
    fn dual_flips_polarity(a in formula(true)) {
        let flipped = match a.polarity() {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        };
        prop_assert_eq!(a.dual().polarity(), flipped);
    }

    #[test]
    fn printing_round_trips(a in formula(true)) {
        prop_assert_eq!(parse(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn axioms_check(a in formula(false)) {
        let p = axiom_proof(&a).unwrap();
        prop_assert_eq!(p.conclusion().0.clone(), vec![a.dual(), a]);
        let r = check_proof(System::Lltn, &p, 2);
        prop_assert!(r.valid, "{}", r);
        prop_assert_eq!(r.cut_count, 0);
    }

    #[test]
    fn moves_keep_positions_valid(seed in any::<u64>()) {
        let rules = Rules::lltn(2).with_exotic();
        for p in positions(seed) {
            for m in enumerate_moves(&p, &rules) {
                let (q, _) = apply_move(&p, &m).unwrap();
                prop_assert!(q.validate().is_ok(), "{} after {} from {}", q, m, p);
            }
        }
    }

    #[test]
    fn canonical_keys_ignore_vertex_names(seed in any::<u64>()) {
        for p in positions(seed) {
            let q = renamed(&p, seed);
            prop_assert!(p.iso(&q));
            prop_assert_eq!(p.canonical_key(), q.canonical_key());
            prop_assert_eq!(p.canonical_form(), q.canonical_form());
        }
    }
}

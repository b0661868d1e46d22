//! Seeded generators of small cut-free LL proofs, for property tests.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::build::{axiom_proof_in, Builder};
use super::proof::Proof;
use super::transform::{bound_proof, llt_to_lltn};
use super::{CalculusError, System};
use crate::formula::Formula;

/// Largest number of rule applications in a generated proof.
pub const MAX_NODES: usize = 15;

fn small_formula(rng: &mut ChaCha8Rng) -> Formula {
    let pool = [
        Formula::One,
        Formula::Bot,
        Formula::Zero,
        Formula::plus(Formula::One, Formula::Bot),
        Formula::tensor(Formula::One, Formula::One),
        Formula::why_not(Formula::One),
    ];
    pool.choose(rng).expect("pool is non-empty").clone()
}

fn leaf(rng: &mut ChaCha8Rng) -> Proof {
    let b = Builder::new(System::Ll);
    if rng.gen_bool(0.6) {
        b.one()
    } else {
        let n = rng.gen_range(0..=2);
        let ctx: Vec<Formula> = (0..n).map(|_| small_formula(rng)).collect();
        b.top(&ctx)
    }
}

fn duplicate_why_not(p: &Proof) -> Option<Formula> {
    let c = &p.conclusion().0;
    c.iter()
        .enumerate()
        .find(|(i, f)| f.is_why_not() && c[i + 1..].contains(f))
        .map(|(_, f)| f.clone())
}

fn grow(rng: &mut ChaCha8Rng, budget: usize) -> Proof {
    let b = Builder::new(System::Ll);
    let mut p = leaf(rng);
    let mut attempts = 0;
    while p.size() < budget && attempts < 40 {
        attempts += 1;
        let c = p.conclusion().0.clone();
        let room = budget - p.size();
        if let Some(q) = duplicate_why_not(&p) {
            if rng.gen_bool(0.7) {
                p = b.contraction(&p, &q).expect("two copies present");
                continue;
            }
        }
        let pick = |rng: &mut ChaCha8Rng| c.choose(rng).cloned();
        let next = match rng.gen_range(0..9) {
            0 => Some(b.bot(p.clone())),
            1 if c.len() >= 2 => {
                let mut two: Vec<Formula> = c.choose_multiple(rng, 2).cloned().collect();
                let y = two.pop().expect("two");
                let x = two.pop().expect("two");
                b.par(&p, &x, &y).ok()
            }
            2 => pick(rng).and_then(|x| {
                let other = small_formula(rng);
                if rng.gen_bool(0.5) {
                    b.plus_left(&p, &x, &other).ok()
                } else {
                    b.plus_right(&p, &other, &x).ok()
                }
            }),
            3 => pick(rng).and_then(|x| b.classic_dereliction(&p, &x).ok()),
            4 | 5 => {
                let existing: Vec<Formula> = c.iter().filter(|f| f.is_why_not()).cloned().collect();
                let q = match existing.choose(rng) {
                    Some(Formula::WhyNot(a)) if rng.gen_bool(0.7) => (**a).clone(),
                    _ => small_formula(rng),
                };
                Some(b.weakening(p.clone(), &q))
            }
            6 => {
                let principal: Vec<Formula> = c.iter().filter(|f| !f.is_why_not()).cloned().collect();
                match principal.as_slice() {
                    [x] => b.classic_promotion(&p, x).ok(),
                    [] => pick(rng).and_then(|x| b.classic_promotion(&p, &x).ok()),
                    _ => None,
                }
            }
            7 if room >= 2 => {
                let q = grow(rng, (room / 2).max(1));
                let (x, y) = (pick(rng), q.conclusion().0.choose(rng).cloned());
                match (x, y) {
                    (Some(x), Some(y)) if q.size() < room => b.tensor(&p, &q, &x, &y, &[]).ok(),
                    _ => None,
                }
            }
            8 => pick(rng).and_then(|x| {
                let rest = super::proof::remove_all(&c, std::slice::from_ref(&x))?;
                b.with(&p, &b.top(&rest), &x, &Formula::Top).ok()
            }),
            _ => None,
        };
        if let Some(q) = next {
            if q.size() <= budget {
                p = q;
            }
        }
    }
    p
}

/// A cut-free LL proof with at most [`MAX_NODES`] nodes, reproducible from `seed`.
pub fn random_ll_proof(seed: u64) -> Proof {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    grow(&mut rng, MAX_NODES)
}

/// Same as [`random_ll_proof`] but retried until the proof has a contraction.
pub fn random_ll_proof_with_contraction(seed: u64) -> Proof {
    (0..)
        .map(|i| random_ll_proof(seed.wrapping_mul(1_000_003).wrapping_add(i)))
        .find(|p| super::stats(p).contractions > 0)
        .expect("generator eventually contracts")
}

/// Bounded LLTN proofs of `Γ, a` and `a^, Δ`, both images of random LL
/// proofs under bounding and translation.
pub fn random_cut_pair(seed: u64) -> Result<(Proof, Proof, Formula), CalculusError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let r1 = grow(&mut rng, MAX_NODES);
    let a = r1.conclusion().0.choose(&mut rng).cloned().expect("non-empty conclusion");
    let p1 = llt_to_lltn(&bound_proof(&r1)?)?;
    let r2 = grow(&mut rng, MAX_NODES);
    let y = r2.conclusion().0.choose(&mut rng).cloned().expect("non-empty conclusion");
    let ll = Builder::new(System::Ll);
    let ax = axiom_proof_in(System::Ll, &a)?;
    let joined = ll.tensor(&ax, &r2, &a, &y, &[])?;
    let p2 = llt_to_lltn(&bound_proof(&joined)?)?;
    Ok((p1, p2, a))
}

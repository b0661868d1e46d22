//! Hand-built proofs of the sequents separating the systems.

use std::sync::Arc;

use super::build::{bang_axiom_premise, Builder};
use super::proof::{PremiseFamily, Proof};
use super::{CalculusError, Sequent, System};
use crate::formula::{power, Formula, PowerMode};

/// `⊥ ⊕ (X^ ⅋ ?X^), !X`.
pub fn laurent_sequent(x: &Formula) -> Sequent {
    Sequent(vec![laurent_left(x), Formula::of_course(x.clone())])
}

fn laurent_left(x: &Formula) -> Formula {
    Formula::plus(Formula::Bot, Formula::par(x.dual(), Formula::why_not(x.dual())))
}

/// Cut-free LLTN proof of [`laurent_sequent`] with premises `0..=k` of the
/// promotion. `x` must be atom-free.
pub fn laurent_proof(x: &Formula, k: usize) -> Result<Proof, CalculusError> {
    let b = Builder::new(System::Lltn);
    let s = laurent_left(x);
    let xd = x.dual();
    let qxd = Formula::why_not(xd.clone());
    let inner = Formula::par(xd.clone(), qxd.clone());
    let mut premises = Vec::with_capacity(k + 1);
    for n in 0..=k {
        let target = [s.clone(), power(x, n, PowerMode::Tensor)];
        let p = match n {
            0 => b.plus_left(&b.bot(b.one()), &Formula::Bot, &inner)?,
            1 => {
                let w = b.weaken(b.axiom(x)?, &xd)?;
                b.plus_right(&b.par(&w, &xd, &qxd)?, &Formula::Bot, &inner)?
            }
            _ => {
                let left = bang_axiom_premise(x, n - 1)?;
                let t = b.tensor(&left, &b.axiom(x)?, &power(x, n - 1, PowerMode::Tensor), x, &[])?;
                b.plus_right(&b.par(&t, &xd, &qxd)?, &Formula::Bot, &inner)?
            }
        };
        premises.push(Arc::new(p.arranged(&target)?));
    }
    Ok(b.promotion(&[s], x, PremiseFamily::Explicit(premises)))
}

/// `X^ ⊕ ((X & Y)^ ⊗ Y^), ?(X & Y)`, the one-sided form of
/// `X & ((X & Y) ⅋ Y) ⊢ ?(X & Y)`.
pub fn cut_needed_sequent(x: &Formula, y: &Formula) -> Sequent {
    let z = Formula::with(x.clone(), y.clone());
    Sequent(vec![
        Formula::plus(x.dual(), Formula::tensor(z.dual(), y.dual())),
        Formula::why_not(z),
    ])
}

/// LLT proof of [`cut_needed_sequent`] using one contraction.
pub fn cut_needed_proof(x: &Formula, y: &Formula) -> Result<Proof, CalculusError> {
    let b = Builder::new(System::Llt);
    let z = Formula::with(x.clone(), y.clone());
    let target = cut_needed_sequent(x, y).0;
    let (xd, rhs) = (x.dual(), Formula::tensor(z.dual(), y.dual()));
    let left = b.plus_left(&b.weaken(b.axiom(x)?, &z)?, &xd, &rhs)?;
    let dz = b.classic_dereliction(&b.axiom(&z)?, &z)?;
    let t = b.tensor(&dz, &b.axiom(y)?, &z.dual(), &y.dual(), &[])?;
    let right = b.plus_right(&t, &xd, &rhs)?;
    let w = b.with(&left, &right, x, y)?;
    let d = b.classic_dereliction(&w, &z)?;
    b.contraction(&d, &Formula::why_not(z))?.arranged(&target)
}

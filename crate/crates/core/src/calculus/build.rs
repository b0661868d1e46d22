//! Rule constructors that locate principal formulas by value.
//!
//! Each constructor takes premises in whatever order they come, moves the
//! active formulas into place with permutation witnesses, and returns a node
//! whose conclusion is in the rule's shape order (context first, principal
//! formula last).

use super::proof::{remove_all, PremiseFamily, Proof, Rule};
use super::{CalculusError, System};
use crate::formula::{power, Formula, PowerMode};

/// Builds nodes for one system, choosing the system's own tensor and
/// exponential rules where there is a choice.
#[derive(Clone, Copy, Debug)]
pub struct Builder {
    pub system: System,
}

fn split_last(p: &Proof, last: &[Formula]) -> Result<(Proof, Vec<Formula>), CalculusError> {
    let q = p.with_last(last)?;
    let ctx = q.conclusion().0[..q.conclusion().len() - last.len()].to_vec();
    Ok((q, ctx))
}

fn shape(ctx: &[Formula], principal: Formula) -> Vec<Formula> {
    let mut v = ctx.to_vec();
    v.push(principal);
    v
}

impl Builder {
    pub fn new(system: System) -> Self {
        Builder { system }
    }

    pub fn one(&self) -> Proof {
        Proof::new(Rule::One, vec![Formula::One], vec![])
    }

    pub fn top(&self, ctx: &[Formula]) -> Proof {
        Proof::new(Rule::Top, shape(ctx, Formula::Top), vec![])
    }

    pub fn identity(&self, atom: &Formula) -> Result<Proof, CalculusError> {
        match atom {
            Formula::Atom { .. } => Ok(Proof::new(Rule::Identity, vec![atom.dual(), atom.clone()], vec![])),
            other => Err(CalculusError::Shape(format!("identity needs an atom, got {other}"))),
        }
    }

    pub fn bot(&self, p: Proof) -> Proof {
        let ctx = p.conclusion().0.clone();
        Proof::new(Rule::Bot, shape(&ctx, Formula::Bot), vec![p])
    }

    pub fn par(&self, p: &Proof, a: &Formula, b: &Formula) -> Result<Proof, CalculusError> {
        let (q, ctx) = split_last(p, &[a.clone(), b.clone()])?;
        Ok(Proof::new(Rule::Par, shape(&ctx, Formula::par(a.clone(), b.clone())), vec![q]))
    }

    pub fn with(&self, p1: &Proof, p2: &Proof, a: &Formula, b: &Formula) -> Result<Proof, CalculusError> {
        let (q1, ctx) = split_last(p1, std::slice::from_ref(a))?;
        let q2 = p2.arranged(&shape(&ctx, b.clone()))?;
        Ok(Proof::new(Rule::With, shape(&ctx, Formula::with(a.clone(), b.clone())), vec![q1, q2]))
    }

    pub fn plus_left(&self, p: &Proof, a: &Formula, b: &Formula) -> Result<Proof, CalculusError> {
        let (q, ctx) = split_last(p, std::slice::from_ref(a))?;
        Ok(Proof::new(Rule::PlusLeft, shape(&ctx, Formula::plus(a.clone(), b.clone())), vec![q]))
    }

    pub fn plus_right(&self, p: &Proof, a: &Formula, b: &Formula) -> Result<Proof, CalculusError> {
        let (q, ctx) = split_last(p, std::slice::from_ref(b))?;
        Ok(Proof::new(Rule::PlusRight, shape(&ctx, Formula::plus(a.clone(), b.clone())), vec![q]))
    }

    /// Tensor of `p1 ⊢ Γ, ?Θ, a` and `p2 ⊢ Δ, ?Θ, b`. In LL `theta` must be empty.
    pub fn tensor(
        &self,
        p1: &Proof,
        p2: &Proof,
        a: &Formula,
        b: &Formula,
        theta: &[Formula],
    ) -> Result<Proof, CalculusError> {
        let mut last1 = theta.to_vec();
        last1.push(a.clone());
        let mut last2 = theta.to_vec();
        last2.push(b.clone());
        let (q1, gamma1) = split_last(p1, &last1)?;
        let (q2, delta1) = split_last(p2, &last2)?;
        let mut ctx = gamma1.clone();
        ctx.extend(delta1.iter().cloned());
        ctx.extend(theta.iter().cloned());
        let rule = match self.system {
            System::Ll if theta.is_empty() => Rule::Tensor { left: gamma1.len() },
            System::Ll => {
                return Err(CalculusError::Shape("LL has no shared-context tensor".into()));
            }
            _ => {
                if !theta.iter().all(Formula::is_why_not) {
                    return Err(CalculusError::Shape("shared tensor context must be ?-formulas".into()));
                }
                Rule::NewTensor {
                    left: gamma1.len(),
                    right: delta1.len(),
                }
            }
        };
        Ok(Proof::new(rule, shape(&ctx, Formula::tensor(a.clone(), b.clone())), vec![q1, q2]))
    }

    /// `n`-ary dereliction (LLTN): `Γ, ⅋ⁿa` gives `Γ, ?a`.
    pub fn dereliction(&self, p: &Proof, a: &Formula, n: usize) -> Result<Proof, CalculusError> {
        let (q, ctx) = split_last(p, &[power(a, n, PowerMode::Par)])?;
        Ok(Proof::new(Rule::Dereliction { arity: n }, shape(&ctx, Formula::why_not(a.clone())), vec![q]))
    }

    pub fn classic_dereliction(&self, p: &Proof, a: &Formula) -> Result<Proof, CalculusError> {
        let (q, ctx) = split_last(p, std::slice::from_ref(a))?;
        Ok(Proof::new(Rule::ClassicDereliction, shape(&ctx, Formula::why_not(a.clone())), vec![q]))
    }

    /// Single dereliction in the system's own form.
    pub fn derelict(&self, p: &Proof, a: &Formula) -> Result<Proof, CalculusError> {
        match self.system {
            System::Lltn => self.dereliction(p, a, 1),
            _ => self.classic_dereliction(p, a),
        }
    }

    /// Adds `?a` to the conclusion: weakening, or 0-ary dereliction over ⊥ in LLTN.
    pub fn weaken(&self, p: Proof, a: &Formula) -> Result<Proof, CalculusError> {
        match self.system {
            System::Lltn => self.dereliction(&self.bot(p), a, 0),
            _ => Ok(self.weakening(p, a)),
        }
    }

    pub fn weakening(&self, p: Proof, a: &Formula) -> Proof {
        let ctx = p.conclusion().0.clone();
        Proof::new(Rule::Weakening, shape(&ctx, Formula::why_not(a.clone())), vec![p])
    }

    /// Weakens with each `?`-formula of `extra`, which are appended in order.
    pub fn weaken_all(&self, mut p: Proof, extra: &[Formula]) -> Result<Proof, CalculusError> {
        for q in extra {
            match q {
                Formula::WhyNot(a) => p = self.weaken(p, a)?,
                other => return Err(CalculusError::Shape(format!("cannot weaken with {other}"))),
            }
        }
        Ok(p)
    }

    pub fn contraction(&self, p: &Proof, q: &Formula) -> Result<Proof, CalculusError> {
        if !q.is_why_not() {
            return Err(CalculusError::Shape(format!("cannot contract {q}")));
        }
        let (r, ctx) = split_last(p, &[q.clone(), q.clone()])?;
        Ok(Proof::new(Rule::Contraction, shape(&ctx, q.clone()), vec![r]))
    }

    pub fn classic_promotion(&self, p: &Proof, a: &Formula) -> Result<Proof, CalculusError> {
        let (q, ctx) = split_last(p, std::slice::from_ref(a))?;
        if !ctx.iter().all(Formula::is_why_not) {
            return Err(CalculusError::Shape("promotion context must be ?-formulas".into()));
        }
        Ok(Proof::new(Rule::ClassicPromotion, shape(&ctx, Formula::of_course(a.clone())), vec![q]))
    }

    pub fn promotion(&self, ctx: &[Formula], a: &Formula, family: PremiseFamily) -> Proof {
        Proof::promotion(shape(ctx, Formula::of_course(a.clone())), family)
    }

    /// Cut of `p1 ⊢ Γ, c` against `p2 ⊢ c^, Δ`, concluding `Γ, Δ`.
    pub fn cut(&self, p1: &Proof, p2: &Proof, c: &Formula) -> Result<Proof, CalculusError> {
        let (q1, gamma) = split_last(p1, std::slice::from_ref(c))?;
        let delta = remove_all(&p2.conclusion().0, &[c.dual()]).ok_or_else(|| CalculusError::FormulaNotFound {
            formula: c.dual(),
            sequent: p2.conclusion().clone(),
        })?;
        let mut want2 = vec![c.dual()];
        want2.extend(delta.iter().cloned());
        let q2 = p2.arranged(&want2)?;
        let mut concl = gamma.clone();
        concl.extend(delta);
        Ok(Proof::new(
            Rule::Cut {
                formula: c.clone(),
                left: gamma.len(),
            },
            concl,
            vec![q1, q2],
        ))
    }

    /// Rebuilds `node`'s rule over new premises, which may carry extra context
    /// formulas. The result is in shape order; exchanges collapse to their
    /// premise and leaves are returned unchanged.
    pub fn rebuild(&self, node: &Proof, kids: Vec<Proof>) -> Result<Proof, CalculusError> {
        let shape_now = node.shape()?;
        let principal = shape_now.last().cloned();
        let mut kids = kids.into_iter();
        let mut kid = || {
            kids.next()
                .ok_or_else(|| CalculusError::Shape(format!("{} is missing a premise", node.rule().name())))
        };
        let bad = || CalculusError::Shape(format!("{} does not fit its conclusion", node.rule().name()));
        match (node.rule(), principal.as_ref()) {
            (Rule::One | Rule::Top | Rule::Identity, _) => Ok(node.clone()),
            (Rule::Bot, _) => Ok(self.bot(kid()?)),
            (Rule::Par, Some(Formula::Par(a, b))) => self.par(&kid()?, a, b),
            (Rule::With, Some(Formula::With(a, b))) => {
                let (l, r) = (kid()?, kid()?);
                self.with(&l, &r, a, b)
            }
            (Rule::PlusLeft, Some(Formula::Plus(a, b))) => self.plus_left(&kid()?, a, b),
            (Rule::PlusRight, Some(Formula::Plus(a, b))) => self.plus_right(&kid()?, a, b),
            (Rule::Tensor { .. }, Some(Formula::Tensor(a, b))) => {
                let (l, r) = (kid()?, kid()?);
                self.tensor(&l, &r, a, b, &[])
            }
            (Rule::NewTensor { left, right }, Some(Formula::Tensor(a, b))) => {
                let theta = shape_now[left + right..shape_now.len() - 1].to_vec();
                let (l, r) = (kid()?, kid()?);
                self.tensor(&l, &r, a, b, &theta)
            }
            (Rule::Dereliction { arity }, Some(Formula::WhyNot(a))) => self.dereliction(&kid()?, a, *arity),
            (Rule::ClassicDereliction, Some(Formula::WhyNot(a))) => self.classic_dereliction(&kid()?, a),
            (Rule::Weakening, Some(Formula::WhyNot(a))) => Ok(self.weakening(kid()?, a)),
            (Rule::Contraction, Some(q)) => self.contraction(&kid()?, q),
            (Rule::ClassicPromotion, Some(Formula::OfCourse(a))) => self.classic_promotion(&kid()?, a),
            (Rule::Exchange { .. }, _) => kid(),
            (Rule::Cut { formula, .. }, _) => {
                let (l, r) = (kid()?, kid()?);
                self.cut(&l, &r, formula)
            }
            (Rule::Promotion, _) => Err(CalculusError::Shape("promotion cannot be rebuilt from finite premises".into())),
            _ => Err(bad()),
        }
    }

    /// Identity proof of `a^, a` by expansion down to units (and atoms).
    pub fn axiom(&self, a: &Formula) -> Result<Proof, CalculusError> {
        if !a.is_positive() {
            return self.axiom(&a.dual())?.arranged(&[a.dual(), a.clone()]);
        }
        let target = [a.dual(), a.clone()];
        let p = match a {
            Formula::One => self.bot(self.one()),
            Formula::Zero => self.top(&[Formula::Zero]),
            Formula::Atom { .. } => self.identity(a)?,
            Formula::Tensor(x, y) => {
                let t = self.tensor(&self.axiom(x)?, &self.axiom(y)?, x, y, &[])?;
                self.par(&t, &x.dual(), &y.dual())?
            }
            Formula::Plus(x, y) => {
                let l = self.plus_left(&self.axiom(x)?, x, y)?;
                let r = self.plus_right(&self.axiom(y)?, x, y)?;
                self.with(&l, &r, &x.dual(), &y.dual())?
            }
            Formula::WhyNot(x) => {
                // ?x against !x^.
                let b = x.dual();
                match self.system {
                    System::Lltn => self.promotion(std::slice::from_ref(a), &b, PremiseFamily::Axiom { body: b.clone() }),
                    _ => {
                        let d = self.classic_dereliction(&self.axiom(&b)?, x)?;
                        self.classic_promotion(&d, &b)?
                    }
                }
            }
            _ => unreachable!("negative formulas handled above"),
        };
        p.arranged(&target)
    }

    /// `⅋ⁿb^, ⊗ⁿb` by expansion.
    fn power_axiom(&self, b: &Formula, n: usize) -> Result<Proof, CalculusError> {
        let target = [power(&b.dual(), n, PowerMode::Par), power(b, n, PowerMode::Tensor)];
        match n {
            0 => self.bot(self.one()).arranged(&target),
            1 => self.axiom(b),
            _ => {
                let prev = self.power_axiom(b, n - 1)?;
                let left = power(b, n - 1, PowerMode::Tensor);
                let t = self.tensor(&prev, &self.axiom(b)?, &left, b, &[])?;
                self.par(&t, &power(&b.dual(), n - 1, PowerMode::Par), &b.dual())?
                    .arranged(&target)
            }
        }
    }

    /// `?A, 1` from `1` by ⊥-introduction and 0-ary dereliction for each `?A`.
    pub(crate) fn why_not_one(&self, ctx: &[Formula]) -> Result<Proof, CalculusError> {
        let mut p = self.one();
        for q in ctx {
            p = self.weaken_one(p, q)?;
        }
        let mut target = ctx.to_vec();
        target.push(Formula::One);
        p.arranged(&target)
    }

    fn weaken_one(&self, p: Proof, q: &Formula) -> Result<Proof, CalculusError> {
        match q {
            Formula::WhyNot(a) => self.weaken(p, a),
            other => Err(CalculusError::Shape(format!("{other} is not a ?-formula"))),
        }
    }
}

/// Premise `n` of the identity promotion: `?b^, ⊗ⁿb`.
pub(crate) fn bang_axiom_premise(b: &Formula, n: usize) -> Result<Proof, CalculusError> {
    let lltn = Builder::new(System::Lltn);
    let expansion = lltn.power_axiom(b, n)?;
    let d = lltn.dereliction(&expansion, &b.dual(), n)?;
    d.arranged(&[Formula::why_not(b.dual()), power(b, n, PowerMode::Tensor)])
}

/// Cut-free LLTN proof of `a^, a` for an atom-free `a`.
pub fn axiom_proof(a: &Formula) -> Result<Proof, CalculusError> {
    if !a.is_atom_free() {
        return Err(CalculusError::AtomsPresent(a.clone()));
    }
    Builder::new(System::Lltn).axiom(a)
}

/// Identity proof of `a^, a` in any system; atoms use the identity rule.
pub fn axiom_proof_in(system: System, a: &Formula) -> Result<Proof, CalculusError> {
    Builder::new(system).axiom(a)
}

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::proof::{PremiseFamily, Premises, Proof, Rule};
use super::System;
use crate::formula::{power, Formula, PowerMode};

/// One step from a node to one of its premises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Step {
    Premise(usize),
    /// The `n`-th premise of a promotion family.
    Family(usize),
}

/// Where a check failed: path from the root, rule name and reason.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Locus {
    pub path: Vec<Step>,
    pub rule: String,
    pub message: String,
}

impl fmt::Display for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("root")?;
        for s in &self.path {
            match s {
                Step::Premise(i) => write!(f, "/{i}")?,
                Step::Family(n) => write!(f, "/n={n}")?,
            }
        }
        write!(f, " [{}]: {}", self.rule, self.message)
    }
}

/// Outcome of [`check_proof`].
///
/// Promotion families are infinite; only premises `0..=checked_promotion_bound`
/// are examined, so a valid report is exact for finite nodes and bound-limited
/// for promotions. Counts include generated premises up to that bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub system: super::System,
    pub valid: bool,
    pub cut_count: usize,
    pub contraction_count: usize,
    pub checked_promotion_bound: usize,
    pub failure: Option<Locus>,
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "system: {}", self.system)?;
        writeln!(f, "valid: {}", self.valid)?;
        writeln!(f, "cuts: {}", self.cut_count)?;
        writeln!(f, "contractions: {}", self.contraction_count)?;
        write!(f, "promotion premises checked: 0..={}", self.checked_promotion_bound)?;
        if let Some(locus) = &self.failure {
            write!(f, "\nfailure: {locus}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Default)]
struct Counts {
    cuts: usize,
    contractions: usize,
}

struct Checker {
    system: System,
    n_check: usize,
    // Keyed by allocation address; the Arc keeps the address from being reused.
    memo: HashMap<usize, (Arc<Proof>, Counts)>,
    path: Vec<Step>,
}

type Fail = (Vec<Step>, String, String);

impl Checker {
    fn check(&mut self, proof: &Arc<Proof>) -> Result<Counts, Fail> {
        let key = Arc::as_ptr(proof) as usize;
        if let Some((_, c)) = self.memo.get(&key) {
            return Ok(*c);
        }
        let c = self.check_node(proof)?;
        self.memo.insert(key, (proof.clone(), c));
        Ok(c)
    }

    fn fail<T>(&self, proof: &Proof, message: impl Into<String>) -> Result<T, Fail> {
        Err((self.path.clone(), proof.rule().name().to_string(), message.into()))
    }

    fn expect_premises(&mut self, proof: &Proof, expected: Vec<Vec<Formula>>) -> Result<Counts, Fail> {
        let children = match proof.premises() {
            Premises::Finite(v) => v,
            Premises::Family(_) => return self.fail(proof, "unexpected premise family"),
        };
        if children.len() != expected.len() {
            return self.fail(
                proof,
                format!("expected {} premises, found {}", expected.len(), children.len()),
            );
        }
        let mut total = Counts::default();
        for (i, (child, want)) in children.iter().zip(expected).enumerate() {
            if child.conclusion().0 != want {
                return self.fail(
                    proof,
                    format!(
                        "premise {i} concludes {} but the rule needs {}",
                        child.conclusion(),
                        super::Sequent(want)
                    ),
                );
            }
            self.path.push(Step::Premise(i));
            let c = self.check(child)?;
            self.path.pop();
            total.cuts += c.cuts;
            total.contractions += c.contractions;
        }
        Ok(total)
    }

    fn legal(&self, rule: &Rule) -> bool {
        use Rule::*;
        match self.system {
            System::Ll => !matches!(rule, NewTensor { .. } | Dereliction { .. } | Promotion),
            System::Llt => !matches!(rule, Tensor { .. } | Dereliction { .. } | Promotion),
            System::Lltn => !matches!(
                rule,
                Tensor { .. } | Weakening | Contraction | ClassicDereliction | ClassicPromotion
            ),
        }
    }

    fn check_node(&mut self, proof: &Proof) -> Result<Counts, Fail> {
        let rule = proof.rule().clone();
        if !self.legal(&rule) {
            return self.fail(proof, format!("rule not available in {}", self.system));
        }
        let shape = match proof.shape() {
            Ok(s) => s,
            Err(e) => return self.fail(proof, e.to_string()),
        };
        let mut ctx = shape.clone();
        let principal = ctx.pop();
        let with_ctx = |extra: &[Formula]| -> Vec<Formula> {
            let mut v = ctx.clone();
            v.extend_from_slice(extra);
            v
        };
        let counts = match (&rule, principal.as_ref()) {
            (Rule::One, Some(Formula::One)) if ctx.is_empty() => self.expect_premises(proof, vec![])?,
            (Rule::Bot, Some(Formula::Bot)) => self.expect_premises(proof, vec![ctx.clone()])?,
            (Rule::Top, Some(Formula::Top)) => self.expect_premises(proof, vec![])?,
            (Rule::Par, Some(Formula::Par(a, b))) => {
                self.expect_premises(proof, vec![with_ctx(&[(**a).clone(), (**b).clone()])])?
            }
            (Rule::With, Some(Formula::With(a, b))) => self.expect_premises(
                proof,
                vec![with_ctx(&[(**a).clone()]), with_ctx(&[(**b).clone()])],
            )?,
            (Rule::PlusLeft, Some(Formula::Plus(a, _))) => {
                self.expect_premises(proof, vec![with_ctx(&[(**a).clone()])])?
            }
            (Rule::PlusRight, Some(Formula::Plus(_, b))) => {
                self.expect_premises(proof, vec![with_ctx(&[(**b).clone()])])?
            }
            (Rule::Tensor { left }, Some(Formula::Tensor(a, b))) if *left <= ctx.len() => {
                let mut p1 = ctx[..*left].to_vec();
                p1.push((**a).clone());
                let mut p2 = ctx[*left..].to_vec();
                p2.push((**b).clone());
                self.expect_premises(proof, vec![p1, p2])?
            }
            (Rule::NewTensor { left, right }, Some(Formula::Tensor(a, b))) if left + right <= ctx.len() => {
                let theta = &ctx[left + right..];
                if !theta.iter().all(Formula::is_why_not) {
                    return self.fail(proof, "shared tensor context contains a non-? formula");
                }
                let mut p1 = ctx[..*left].to_vec();
                p1.extend_from_slice(theta);
                p1.push((**a).clone());
                let mut p2 = ctx[*left..left + right].to_vec();
                p2.extend_from_slice(theta);
                p2.push((**b).clone());
                self.expect_premises(proof, vec![p1, p2])?
            }
            (Rule::Dereliction { arity }, Some(Formula::WhyNot(a))) => {
                self.expect_premises(proof, vec![with_ctx(&[power(a, *arity, PowerMode::Par)])])?
            }
            (Rule::Promotion, Some(Formula::OfCourse(a))) => self.check_family(proof, &ctx, a)?,
            (Rule::Weakening, Some(Formula::WhyNot(_))) => self.expect_premises(proof, vec![ctx.clone()])?,
            (Rule::Contraction, Some(q @ Formula::WhyNot(_))) => {
                let mut c = self.expect_premises(proof, vec![with_ctx(&[q.clone(), q.clone()])])?;
                c.contractions += 1;
                c
            }
            (Rule::ClassicDereliction, Some(Formula::WhyNot(a))) => {
                self.expect_premises(proof, vec![with_ctx(&[(**a).clone()])])?
            }
            (Rule::ClassicPromotion, Some(Formula::OfCourse(a))) => {
                if !ctx.iter().all(Formula::is_why_not) {
                    return self.fail(proof, "promotion context contains a non-? formula");
                }
                self.expect_premises(proof, vec![with_ctx(&[(**a).clone()])])?
            }
            (Rule::Exchange { index }, _) if index + 1 < shape.len() => {
                let mut p = shape.clone();
                p.swap(*index, index + 1);
                self.expect_premises(proof, vec![p])?
            }
            (Rule::Cut { formula, left }, _) if *left <= shape.len() => {
                let mut p1 = shape[..*left].to_vec();
                p1.push(formula.clone());
                let mut p2 = vec![formula.dual()];
                p2.extend_from_slice(&shape[*left..]);
                let mut c = self.expect_premises(proof, vec![p1, p2])?;
                c.cuts += 1;
                c
            }
            (Rule::Identity, Some(x @ Formula::Atom { .. })) if shape.len() == 2 && shape[0] == x.dual() => {
                self.expect_premises(proof, vec![])?
            }
            _ => {
                return self.fail(
                    proof,
                    format!("conclusion {} does not fit the rule", super::Sequent(shape.clone())),
                )
            }
        };
        Ok(counts)
    }

    fn check_family(&mut self, proof: &Proof, ctx: &[Formula], body: &Formula) -> Result<Counts, Fail> {
        let Premises::Family(family) = proof.premises() else {
            return self.fail(proof, "promotion needs a premise family");
        };
        match family {
            PremiseFamily::Explicit(v) if v.len() <= self.n_check => {
                return self.fail(
                    proof,
                    format!("explicit family covers n <= {} but n_check = {}", v.len() as isize - 1, self.n_check),
                );
            }
            PremiseFamily::TensorSplit { base_one, base_body } => {
                if !ctx.iter().all(Formula::is_why_not) {
                    return self.fail(proof, "tensor-split family needs a ?-context");
                }
                let mut want_one = ctx.to_vec();
                want_one.push(Formula::One);
                let mut want_body = ctx.to_vec();
                want_body.push(body.clone());
                if base_one.conclusion().0 != want_one || base_body.conclusion().0 != want_body {
                    return self.fail(proof, "tensor-split bases do not match the promotion context");
                }
            }
            _ => {}
        }
        let mut total = Counts::default();
        for n in 0..=self.n_check {
            let premise = match family.premise(ctx, body, n) {
                Ok(p) => p,
                Err(e) => return self.fail(proof, e.to_string()),
            };
            let mut want = ctx.to_vec();
            want.push(power(body, n, PowerMode::Tensor));
            if premise.conclusion().0 != want {
                return self.fail(
                    proof,
                    format!("premise n={n} concludes {} instead of {}", premise.conclusion(), super::Sequent(want)),
                );
            }
            self.path.push(Step::Family(n));
            let c = self.check(&premise)?;
            self.path.pop();
            total.cuts += c.cuts;
            total.contractions += c.contractions;
        }
        Ok(total)
    }
}

/// Validates every node of `proof` in `system`, expanding promotion families
/// up to `n_check`.
pub fn check_proof(system: System, proof: &Proof, n_check: usize) -> CheckReport {
    let mut checker = Checker {
        system,
        n_check,
        memo: HashMap::new(),
        path: Vec::new(),
    };
    let root = Arc::new(proof.clone());
    match checker.check(&root) {
        Ok(c) => CheckReport {
            system,
            valid: true,
            cut_count: c.cuts,
            contraction_count: c.contractions,
            checked_promotion_bound: n_check,
            failure: None,
        },
        Err((path, rule, message)) => CheckReport {
            system,
            valid: false,
            cut_count: 0,
            contraction_count: 0,
            checked_promotion_bound: n_check,
            failure: Some(Locus { path, rule, message }),
        },
    }
}

/// Structural counts over the stored tree (families contribute their bases once).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub cuts: usize,
    pub contractions: usize,
    pub nodes: usize,
}

pub fn stats(proof: &Proof) -> Stats {
    let mut s = Stats {
        cuts: usize::from(matches!(proof.rule(), Rule::Cut { .. })),
        contractions: usize::from(matches!(proof.rule(), Rule::Contraction)),
        nodes: 1,
    };
    let mut add = |p: &Proof| {
        let t = stats(p);
        s.cuts += t.cuts;
        s.contractions += t.contractions;
        s.nodes += t.nodes;
    };
    match proof.premises() {
        Premises::Finite(v) | Premises::Family(PremiseFamily::Explicit(v)) => v.iter().for_each(|p| add(p)),
        Premises::Family(PremiseFamily::TensorSplit { base_one, base_body }) => {
            add(base_one);
            add(base_body);
        }
        Premises::Family(PremiseFamily::Axiom { .. }) => {}
    }
    s
}

/// Cut-free, or a single cut at the root between cut-free proofs.
pub fn is_bounded(proof: &Proof) -> bool {
    if stats(proof).cuts == 0 {
        return true;
    }
    matches!(proof.rule(), Rule::Cut { .. }) && proof.children().iter().all(|p| stats(p).cuts == 0)
}

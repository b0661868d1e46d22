//! Inversions that keep proofs cut-free: `Γ, ⊥ → Γ`, `Γ, A ⅋ B → Γ, A, B`,
//! `Γ, A & B → Γ, A` (or `Γ, B`) and `Γ, !A → Γ, ⊗ⁿA`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::build::Builder;
use super::proof::{PremiseFamily, Proof, Rule};
use super::{CalculusError, System};
use crate::formula::{power, Formula, PowerMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Anodyne {
    Bot,
    Par,
    WithLeft,
    WithRight,
    Bang(usize),
}

impl Anodyne {
    /// Formulas replacing `target`, or `None` if the head connective is wrong.
    pub fn replacement(&self, target: &Formula) -> Option<Vec<Formula>> {
        match (self, target) {
            (Anodyne::Bot, Formula::Bot) => Some(vec![]),
            (Anodyne::Par, Formula::Par(a, b)) => Some(vec![(**a).clone(), (**b).clone()]),
            (Anodyne::WithLeft, Formula::With(a, _)) => Some(vec![(**a).clone()]),
            (Anodyne::WithRight, Formula::With(_, b)) => Some(vec![(**b).clone()]),
            (Anodyne::Bang(n), Formula::OfCourse(a)) => Some(vec![power(a, *n, PowerMode::Tensor)]),
            _ => None,
        }
    }
}

/// Applies `kind` to the formula at conclusion position `index` of a cut-free
/// LLTN proof. The replacement formulas take the place of the target, so the
/// result concludes `Γ₁, replacement, Γ₂`.
pub fn anodyne(kind: Anodyne, proof: &Proof, index: usize) -> Result<Proof, CalculusError> {
    let concl = &proof.conclusion().0;
    let target = concl.get(index).ok_or_else(|| CalculusError::Shape(format!("no formula at position {index}")))?;
    let repl = kind
        .replacement(target)
        .ok_or_else(|| CalculusError::Shape(format!("{target} does not fit the {kind:?} modification")))?;
    let mut want = concl[..index].to_vec();
    want.extend(repl);
    want.extend_from_slice(&concl[index + 1..]);
    go(kind, proof, index)?.arranged(&want)
}

fn go(kind: Anodyne, p: &Proof, index: usize) -> Result<Proof, CalculusError> {
    let b = Builder::new(System::Lltn);
    let shape = p.shape()?;
    let k = (0..shape.len())
        .find(|&k| p.perm_index(k) == index)
        .ok_or_else(|| CalculusError::Shape("permutation witness does not cover the target".into()))?;
    let last = shape.len() - 1;
    let principal_here = k == last && !matches!(p.rule(), Rule::Exchange { .. } | Rule::Cut { .. } | Rule::Identity);
    if principal_here {
        return match (kind, p.rule()) {
            (Anodyne::Bot, Rule::Bot) | (Anodyne::Par, Rule::Par) | (Anodyne::WithLeft, Rule::With) => {
                Ok((*p.children()[0]).clone())
            }
            (Anodyne::WithRight, Rule::With) => Ok((*p.children()[1]).clone()),
            (Anodyne::Bang(n), Rule::Promotion) => {
                let Some(Formula::OfCourse(a)) = shape.last() else { unreachable!() };
                let family = p.family().expect("promotion has a family");
                Ok((*family.premise(&shape[..last], a, n)?).clone())
            }
            (_, Rule::Top) => Err(CalculusError::Shape("target is the principal formula of a ⊤ rule".into())),
            (kind, rule) => Err(CalculusError::Invalid(format!(
                "{kind:?} needs a cut-free LLTN proof, found {} on the target",
                rule.name()
            ))),
        };
    }
    let kids = p.children();
    // Position of shape slot k in each premise that carries it.
    let into: Vec<(usize, usize)> = match p.rule() {
        Rule::Top => {
            let mut ctx = shape[..last].to_vec();
            let t = ctx.remove(k);
            ctx.splice(k..k, kind.replacement(&t).expect("checked by caller"));
            return Ok(b.top(&ctx));
        }
        Rule::Exchange { index } => {
            let j = if k == *index {
                index + 1
            } else if k == index + 1 {
                *index
            } else {
                k
            };
            return go(kind, &kids[0], j);
        }
        Rule::Tensor { left } => {
            if k < *left {
                vec![(0, k)]
            } else {
                vec![(1, k - left)]
            }
        }
        Rule::NewTensor { left, right } => {
            if k < *left {
                vec![(0, k)]
            } else if k < left + right {
                vec![(1, k - left)]
            } else {
                let t = k - left - right;
                vec![(0, left + t), (1, right + t)]
            }
        }
        Rule::Cut { left, .. } => {
            if k < *left {
                vec![(0, k)]
            } else {
                vec![(1, 1 + k - left)]
            }
        }
        Rule::Promotion => {
            let Some(Formula::OfCourse(a)) = shape.last() else { unreachable!() };
            let family = p.family().expect("promotion has a family");
            let PremiseFamily::Explicit(v) = family else {
                return Err(CalculusError::Shape(
                    "schematic promotion contexts hold only ?-formulas".into(),
                ));
            };
            let mut ctx = shape[..last].to_vec();
            let t = ctx.remove(k);
            ctx.splice(k..k, kind.replacement(&t).expect("checked by caller"));
            let mut out = Vec::with_capacity(v.len());
            for (n, prem) in v.iter().enumerate() {
                let mut want = ctx.clone();
                want.push(power(a, n, PowerMode::Tensor));
                out.push(Arc::new(go(kind, prem, k)?.arranged(&want)?));
            }
            return Ok(b.promotion(&ctx, a, PremiseFamily::Explicit(out)));
        }
        Rule::One | Rule::Identity => {
            return Err(CalculusError::Shape("target is not in this rule's context".into()));
        }
        _ => kids.iter().enumerate().map(|(i, _)| (i, k)).collect(),
    };
    let mut new_kids: Vec<Proof> = kids.iter().map(|c| (**c).clone()).collect();
    for (i, pos) in into {
        new_kids[i] = go(kind, &kids[i], pos)?;
    }
    b.rebuild(p, new_kids)
}

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{CalculusError, Sequent};
use crate::formula::{power, Formula, PowerMode};

/// Inference rules of all three systems.
///
/// Each rule has a canonical *shape*: an ordering of its conclusion with the
/// context first and the principal formula last. Parameters that split the
/// context (tensor, cut) count formulas from the left of the shape.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum Rule {
    /// `⊢ 1`
    One,
    /// `Γ ⊢ Γ, ⊥`
    Bot,
    /// `⊢ Γ, ⊤`
    Top,
    /// `Γ, A, B ⊢ Γ, A ⅋ B`
    Par,
    /// `Γ, A` and `Γ, B` give `Γ, A & B`
    With,
    PlusLeft,
    PlusRight,
    /// LL tensor: `Γ, A` and `Δ, B` give `Γ, Δ, A ⊗ B`; `left = |Γ|`.
    Tensor { left: usize },
    /// `Γ, ?Θ, A` and `Δ, ?Θ, B` give `Γ, Δ, ?Θ, A ⊗ B`; `left = |Γ|`,
    /// `right = |Δ|`, the rest of the context is `?Θ`.
    NewTensor { left: usize, right: usize },
    /// `Γ, ⅋ⁿA ⊢ Γ, ?A`
    Dereliction { arity: usize },
    /// `Γ, ⊗ⁿA` for every `n` gives `Γ, !A`.
    Promotion,
    Weakening,
    Contraction,
    ClassicDereliction,
    /// `?Γ, A ⊢ ?Γ, !A`
    ClassicPromotion,
    /// Swaps shape positions `index` and `index + 1`.
    Exchange { index: usize },
    /// `Γ, A` and `A^, Δ` give `Γ, Δ`; `left = |Γ|`.
    Cut { formula: Formula, left: usize },
    /// `⊢ X^, X` for an atom `X`.
    Identity,
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::One => "one",
            Rule::Bot => "bot",
            Rule::Top => "top",
            Rule::Par => "par",
            Rule::With => "with",
            Rule::PlusLeft => "plus_left",
            Rule::PlusRight => "plus_right",
            Rule::Tensor { .. } => "tensor",
            Rule::NewTensor { .. } => "new_tensor",
            Rule::Dereliction { .. } => "dereliction",
            Rule::Promotion => "promotion",
            Rule::Weakening => "weakening",
            Rule::Contraction => "contraction",
            Rule::ClassicDereliction => "classic_dereliction",
            Rule::ClassicPromotion => "classic_promotion",
            Rule::Exchange { .. } => "exchange",
            Rule::Cut { .. } => "cut",
            Rule::Identity => "identity",
        }
    }

    /// Rules whose principal formula is negative (invertible rules).
    pub fn is_negative(&self) -> bool {
        matches!(self, Rule::Bot | Rule::Top | Rule::Par | Rule::With | Rule::Promotion)
    }
}

/// Premises of a promotion node: one proof of `Γ, ⊗ⁿA` for each `n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PremiseFamily {
    /// Hand-built premises for `n = 0..len`; premises past the end are missing.
    Explicit(Vec<Arc<Proof>>),
    /// Splits `⊗ⁿA` with shared-context tensors down to `Γ, 1` and `Γ, A`.
    /// Every formula of `Γ` must be a why-not.
    TensorSplit { base_one: Arc<Proof>, base_body: Arc<Proof> },
    /// `?A^, ⊗ⁿA` by `n`-ary dereliction over the expansion of `⅋ⁿA^, ⊗ⁿA`.
    /// This is the family used by identity proofs of `!A`.
    Axiom { body: Formula },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Premises {
    Finite(Vec<Arc<Proof>>),
    Family(PremiseFamily),
}

/// A proof tree node.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proof {
    conclusion: Sequent,
    rule: Rule,
    /// `shape[k] = conclusion[perm[k]]`; empty means identity.
    perm: Vec<usize>,
    premises: Premises,
}

impl Proof {
    /// Node whose conclusion is given in shape order.
    pub fn new(rule: Rule, shape: Vec<Formula>, premises: Vec<Proof>) -> Proof {
        Proof {
            conclusion: Sequent(shape),
            rule,
            perm: Vec::new(),
            premises: Premises::Finite(premises.into_iter().map(Arc::new).collect()),
        }
    }

    pub fn from_parts(conclusion: Sequent, rule: Rule, perm: Vec<usize>, premises: Premises) -> Proof {
        Proof {
            conclusion,
            rule,
            perm,
            premises,
        }
    }

    pub fn promotion(shape: Vec<Formula>, family: PremiseFamily) -> Proof {
        Proof {
            conclusion: Sequent(shape),
            rule: Rule::Promotion,
            perm: Vec::new(),
            premises: Premises::Family(family),
        }
    }

    pub fn conclusion(&self) -> &Sequent {
        &self.conclusion
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn premises(&self) -> &Premises {
        &self.premises
    }

    /// Finite premises; empty for promotion nodes.
    pub fn children(&self) -> &[Arc<Proof>] {
        match &self.premises {
            Premises::Finite(v) => v,
            Premises::Family(_) => &[],
        }
    }

    pub fn family(&self) -> Option<&PremiseFamily> {
        match &self.premises {
            Premises::Family(f) => Some(f),
            Premises::Finite(_) => None,
        }
    }

    /// Shape position `k` holds conclusion position `perm_index(k)`.
    pub fn perm_index(&self, k: usize) -> usize {
        if self.perm.is_empty() {
            k
        } else {
            self.perm[k]
        }
    }

    /// The conclusion rearranged into the rule's canonical shape.
    pub fn shape(&self) -> Result<Vec<Formula>, CalculusError> {
        let n = self.conclusion.len();
        if self.perm.is_empty() {
            return Ok(self.conclusion.0.clone());
        }
        if self.perm.len() != n {
            return Err(CalculusError::Shape(format!(
                "permutation witness has length {} for a conclusion of length {n}",
                self.perm.len()
            )));
        }
        let mut seen = vec![false; n];
        for &i in &self.perm {
            if i >= n || seen[i] {
                return Err(CalculusError::Shape("permutation witness is not a permutation".into()));
            }
            seen[i] = true;
        }
        Ok(self.perm.iter().map(|&i| self.conclusion.0[i].clone()).collect())
    }

    /// Same derivation with the conclusion reordered: position `j` of the new
    /// conclusion is position `sigma[j]` of the old one.
    pub fn permuted(&self, sigma: &[usize]) -> Proof {
        let n = self.conclusion.len();
        debug_assert_eq!(sigma.len(), n);
        let mut inverse = vec![0; n];
        for (j, &i) in sigma.iter().enumerate() {
            inverse[i] = j;
        }
        let perm: Vec<usize> = (0..n).map(|k| inverse[self.perm_index(k)]).collect();
        let identity = perm.iter().enumerate().all(|(k, &i)| k == i);
        Proof {
            conclusion: Sequent(sigma.iter().map(|&i| self.conclusion.0[i].clone()).collect()),
            rule: self.rule.clone(),
            perm: if identity { Vec::new() } else { perm },
            premises: self.premises.clone(),
        }
    }

    /// Reorders the conclusion to equal `target`, which must be the same multiset.
    pub fn arranged(&self, target: &[Formula]) -> Result<Proof, CalculusError> {
        let sigma = match_multiset(&self.conclusion.0, target).ok_or_else(|| {
            CalculusError::Shape(format!(
                "cannot arrange {} as {}",
                self.conclusion,
                Sequent(target.to_vec())
            ))
        })?;
        Ok(self.permuted(&sigma))
    }

    /// Moves the formulas in `last` (matched by value) to the end, in that order.
    pub fn with_last(&self, last: &[Formula]) -> Result<Proof, CalculusError> {
        let rest = remove_all(&self.conclusion.0, last).ok_or_else(|| CalculusError::FormulaNotFound {
            formula: last.first().cloned().unwrap_or(Formula::One),
            sequent: self.conclusion.clone(),
        })?;
        let target: Vec<Formula> = rest.into_iter().chain(last.iter().cloned()).collect();
        self.arranged(&target)
    }

    /// Number of nodes in the stored tree (families count their stored bases).
    pub fn size(&self) -> usize {
        1 + match &self.premises {
            Premises::Finite(v) => v.iter().map(|p| p.size()).sum(),
            Premises::Family(PremiseFamily::Explicit(v)) => v.iter().map(|p| p.size()).sum(),
            Premises::Family(PremiseFamily::TensorSplit { base_one, base_body }) => {
                base_one.size() + base_body.size()
            }
            Premises::Family(PremiseFamily::Axiom { .. }) => 0,
        }
    }

    pub fn is_cut_free(&self) -> bool {
        super::stats(self).cuts == 0
    }
}

impl PremiseFamily {
    /// The `n`-th premise, a proof of `context, ⊗ⁿbody` in this order.
    pub fn premise(&self, context: &[Formula], body: &Formula, n: usize) -> Result<Arc<Proof>, CalculusError> {
        match self {
            PremiseFamily::Explicit(v) => v.get(n).cloned().ok_or(CalculusError::FamilyBound {
                n,
                bound: v.len().saturating_sub(1),
            }),
            PremiseFamily::TensorSplit { base_one, base_body } => {
                Ok(Arc::new(tensor_split(context, body, base_one, base_body, n)))
            }
            PremiseFamily::Axiom { body: b } => {
                if b != body || context.len() != 1 || context[0] != Formula::why_not(b.dual()) {
                    return Err(CalculusError::Shape(
                        "axiom family does not match its promotion conclusion".into(),
                    ));
                }
                super::build::bang_axiom_premise(b, n).map(Arc::new)
            }
        }
    }

    /// Largest `n` for which a premise exists, `None` when unbounded.
    pub fn bound(&self) -> Option<usize> {
        match self {
            PremiseFamily::Explicit(v) => Some(v.len().saturating_sub(1)),
            _ => None,
        }
    }
}

fn tensor_split(context: &[Formula], body: &Formula, one: &Arc<Proof>, base: &Arc<Proof>, n: usize) -> Proof {
    match n {
        0 => (**one).clone(),
        1 => (**base).clone(),
        _ => {
            let left = Arc::new(tensor_split(context, body, one, base, n - 1));
            let mut shape = context.to_vec();
            shape.push(power(body, n, PowerMode::Tensor));
            Proof {
                conclusion: Sequent(shape),
                rule: Rule::NewTensor { left: 0, right: 0 },
                perm: Vec::new(),
                premises: Premises::Finite(vec![left, base.clone()]),
            }
        }
    }
}

/// `sigma` with `target[j] = source[sigma[j]]`, if the two are equal as multisets.
pub(crate) fn match_multiset(source: &[Formula], target: &[Formula]) -> Option<Vec<usize>> {
    if source.len() != target.len() {
        return None;
    }
    let mut used = vec![false; source.len()];
    let mut sigma = Vec::with_capacity(target.len());
    for t in target {
        let i = (0..source.len()).find(|&i| !used[i] && &source[i] == t)?;
        used[i] = true;
        sigma.push(i);
    }
    Some(sigma)
}

/// `source` minus one occurrence of each formula in `remove`, order kept.
pub(crate) fn remove_all(source: &[Formula], remove: &[Formula]) -> Option<Vec<Formula>> {
    let mut used = vec![false; source.len()];
    for r in remove {
        let i = (0..source.len()).rev().find(|&i| !used[i] && &source[i] == r)?;
        used[i] = true;
    }
    Some(
        source
            .iter()
            .zip(used)
            .filter(|(_, u)| !u)
            .map(|(f, _)| f.clone())
            .collect(),
    )
}

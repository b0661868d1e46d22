//! Translations between the systems, duplicators, contraction elimination,
//! bounding and cut composition.

use std::sync::Arc;

use super::build::{axiom_proof_in, Builder};
use super::proof::{PremiseFamily, Premises, Proof, Rule};
use super::{is_bounded, CalculusError, System};
use crate::formula::{duplicator, Formula};

fn arranged_like(p: Proof, original: &Proof) -> Result<Proof, CalculusError> {
    p.arranged(&original.conclusion().0)
}

fn finite_kids(p: &Proof) -> Result<Vec<Arc<Proof>>, CalculusError> {
    match p.premises() {
        Premises::Finite(v) => Ok(v.clone()),
        Premises::Family(_) => Err(CalculusError::Invalid(
            "LL and LLT proofs have no infinitary promotion".into(),
        )),
    }
}

/// Retags every plain tensor as a shared-context tensor with empty `?Θ`.
pub fn translate_ll_to_llt(p: &Proof) -> Result<Proof, CalculusError> {
    let b = Builder::new(System::Llt);
    let kids = finite_kids(p)?
        .iter()
        .map(|k| translate_ll_to_llt(k))
        .collect::<Result<Vec<_>, _>>()?;
    arranged_like(b.rebuild(p, kids)?, p)
}

/// Replaces each shared-context tensor by a plain tensor followed by one
/// contraction per formula of `?Θ`.
pub fn translate_llt_to_ll(p: &Proof) -> Result<Proof, CalculusError> {
    let b = Builder::new(System::Ll);
    let kids = finite_kids(p)?
        .iter()
        .map(|k| translate_llt_to_ll(k))
        .collect::<Result<Vec<_>, _>>()?;
    let node = match p.rule() {
        Rule::NewTensor { left, right } => {
            let shape = p.shape()?;
            let theta = &shape[left + right..shape.len() - 1];
            let Some(Formula::Tensor(a, c)) = shape.last() else {
                return Err(CalculusError::Shape("shared tensor without a tensor".into()));
            };
            let mut t = b.tensor(&kids[0], &kids[1], a, c, &[])?;
            for q in theta {
                t = b.contraction(&t, q)?;
            }
            t
        }
        _ => b.rebuild(p, kids)?,
    };
    arranged_like(node, p)
}

/// Cut- and contraction-free LLT proof of `dup(a)`.
pub fn dup_proof(a: &Formula) -> Result<Proof, CalculusError> {
    let b = Builder::new(System::Llt);
    let bang = Formula::of_course(a.clone());
    let q = Formula::why_not(a.dual());
    let ax = axiom_proof_in(System::Llt, &bang)?;
    let t = b.tensor(&ax, &ax, &bang, &bang, std::slice::from_ref(&q))?;
    let p = b.par(&t, &q, &Formula::tensor(bang.clone(), bang))?;
    let d = b.classic_promotion(&p, &p.conclusion().0[0].clone())?;
    debug_assert_eq!(d.conclusion().0, vec![duplicator(a)]);
    Ok(d)
}

/// From `Γ, ?A, ?A` (the last two formulas) derives `Γ, ?A, ?(!A^ ⊗ (?A ⅋ ?A))`,
/// the dual of `dup(A^)`, without cut or contraction.
pub fn apply_dup(p: &Proof) -> Result<Proof, CalculusError> {
    let c = &p.conclusion().0;
    let n = c.len();
    if n < 2 || c[n - 1] != c[n - 2] || !c[n - 1].is_why_not() {
        return Err(CalculusError::Shape(format!(
            "apply_dup needs a conclusion ending in two equal ?-formulas, got {}",
            p.conclusion()
        )));
    }
    let q = c[n - 1].clone();
    let (result, _) = dup_step(p, &q)?;
    Ok(result)
}

/// Replaces two copies of `q = ?A` by `q, ?(!A^ ⊗ (q ⅋ q))`; returns the new
/// proof (conclusion `Γ, q, ¬D`) and `D = dup(A^)`.
fn dup_step(p: &Proof, q: &Formula) -> Result<(Proof, Formula), CalculusError> {
    let Formula::WhyNot(a) = q else {
        return Err(CalculusError::Shape(format!("{q} is not a ?-formula")));
    };
    let b = Builder::new(System::Llt);
    let gamma = super::proof::remove_all(&p.conclusion().0, &[q.clone(), q.clone()]).ok_or_else(|| {
        CalculusError::FormulaNotFound {
            formula: q.clone(),
            sequent: p.conclusion().clone(),
        }
    })?;
    let pq = b.par(p, q, q)?;
    let bang_dual = Formula::of_course(a.dual());
    let ax = axiom_proof_in(System::Llt, &bang_dual)?;
    let qq = Formula::par(q.clone(), q.clone());
    let t = b.tensor(&ax, &pq, &bang_dual, &qq, &[])?;
    let body = Formula::tensor(bang_dual, qq);
    let d = b.classic_dereliction(&t, &body)?;
    let dup = duplicator(&a.dual());
    let mut target = gamma;
    target.push(q.clone());
    target.push(dup.dual());
    Ok((d.arranged(&target)?, dup))
}

/// Cut-free LL or LLT proof of `Γ` to a cut- and contraction-free LLT proof
/// of `Γ, ¬D₁, …, ¬Dₖ`, one duplicator per contraction.
pub fn eliminate_contractions(p: &Proof) -> Result<(Proof, Vec<Formula>), CalculusError> {
    let (q, ds) = cc_free(p)?;
    let negs: Vec<Formula> = ds.iter().map(Formula::dual).collect();
    let mut target = p.conclusion().0.clone();
    target.extend(negs);
    Ok((q.arranged(&target)?, ds))
}

fn cc_free(p: &Proof) -> Result<(Proof, Vec<Formula>), CalculusError> {
    let b = Builder::new(System::Llt);
    let negs = |ds: &[Formula]| ds.iter().map(Formula::dual).collect::<Vec<_>>();
    let kids = finite_kids(p)?;
    let mut sub = Vec::with_capacity(kids.len());
    for k in &kids {
        sub.push(cc_free(k)?);
    }
    let shape = p.shape()?;
    let principal = shape.last().cloned();
    let (node, ds) = match (p.rule(), principal.as_ref()) {
        (Rule::Cut { .. }, _) => return Err(CalculusError::UnexpectedCut),
        (Rule::Dereliction { .. } | Rule::Promotion, _) => {
            return Err(CalculusError::Invalid("expected an LL or LLT proof".into()))
        }
        (Rule::Contraction, Some(q)) => {
            let (k, mut ds) = sub.pop().expect("contraction has one premise");
            let (node, d) = dup_step(&k, q)?;
            ds.push(d);
            (node, ds)
        }
        (Rule::With, Some(Formula::With(a, c))) => {
            let (k2, d2) = sub.pop().expect("with has two premises");
            let (k1, d1) = sub.pop().expect("with has two premises");
            let k1 = b.weaken_all(k1, &negs(&d2))?;
            let k2 = b.weaken_all(k2, &negs(&d1))?;
            let node = b.with(&k1, &k2, a, c)?;
            (node, [d1, d2].concat())
        }
        (Rule::Tensor { .. } | Rule::NewTensor { .. }, Some(Formula::Tensor(a, c))) => {
            let mut theta = match p.rule() {
                Rule::NewTensor { left, right } => shape[left + right..shape.len() - 1].to_vec(),
                _ => Vec::new(),
            };
            let (k2, d2) = sub.pop().expect("tensor has two premises");
            let (k1, d1) = sub.pop().expect("tensor has two premises");
            let k1 = b.weaken_all(k1, &negs(&d2))?;
            let k2 = b.weaken_all(k2, &negs(&d1))?;
            theta.extend(negs(&d1));
            theta.extend(negs(&d2));
            let node = b.tensor(&k1, &k2, a, c, &theta)?;
            (node, [d1, d2].concat())
        }
        _ => {
            let mut ds = Vec::new();
            let mut ks = Vec::new();
            for (k, d) in sub {
                ds.extend(d);
                ks.push(k);
            }
            (b.rebuild(p, ks)?, ds)
        }
    };
    let mut target = p.conclusion().0.clone();
    target.extend(negs(&ds));
    Ok((node.arranged(&target)?, ds))
}

/// Bounded LLT proof of the same sequent: a single root cut between the
/// tensor of duplicator proofs and the packed contraction-free proof.
pub fn bound_proof(p: &Proof) -> Result<Proof, CalculusError> {
    let (q, ds) = eliminate_contractions(p)?;
    if ds.is_empty() {
        return Ok(q);
    }
    let b = Builder::new(System::Llt);
    let mut packed = q;
    let mut acc = ds[0].dual();
    for d in &ds[1..] {
        packed = b.par(&packed, &acc, &d.dual())?;
        acc = Formula::par(acc, d.dual());
    }
    let mut dups = dup_proof(&dup_body(&ds[0])?)?;
    let mut k = ds[0].clone();
    for d in &ds[1..] {
        let next = dup_proof(&dup_body(d)?)?;
        dups = b.tensor(&dups, &next, &k, d, &[])?;
        k = Formula::tensor(k, d.clone());
    }
    b.cut(&dups, &packed, &k)?.arranged(&p.conclusion().0)
}

fn dup_body(d: &Formula) -> Result<Formula, CalculusError> {
    if let Formula::OfCourse(inner) = d {
        if let Formula::Par(_, r) = &**inner {
            if let Formula::Tensor(l, _) = &**r {
                if let Formula::OfCourse(a) = &**l {
                    return Ok((**a).clone());
                }
            }
        }
    }
    Err(CalculusError::Shape(format!("{d} is not a duplicator")))
}

/// Bounded LLT proof to a bounded LLTN proof of the same sequent.
pub fn llt_to_lltn(p: &Proof) -> Result<Proof, CalculusError> {
    let b = Builder::new(System::Lltn);
    let kids = finite_kids(p)?
        .iter()
        .map(|k| llt_to_lltn(k))
        .collect::<Result<Vec<_>, _>>()?;
    let shape = p.shape()?;
    let principal = shape.last().cloned();
    let node = match (p.rule(), principal.as_ref()) {
        (Rule::Contraction, _) => return Err(CalculusError::UnexpectedContraction),
        (Rule::Dereliction { .. } | Rule::Promotion, _) => {
            return Err(CalculusError::Invalid("expected an LLT proof".into()))
        }
        (Rule::ClassicDereliction, Some(Formula::WhyNot(a))) => b.dereliction(&kids[0], a, 1)?,
        (Rule::Weakening, Some(Formula::WhyNot(a))) => b.weaken(kids[0].clone(), a)?,
        (Rule::ClassicPromotion, Some(Formula::OfCourse(a))) => {
            let ctx = &shape[..shape.len() - 1];
            let mut body_shape = ctx.to_vec();
            body_shape.push((**a).clone());
            let base_body = kids[0].arranged(&body_shape)?;
            let base_one = b.why_not_one(ctx)?;
            b.promotion(
                ctx,
                a,
                PremiseFamily::TensorSplit {
                    base_one: Arc::new(base_one),
                    base_body: Arc::new(base_body),
                },
            )
        }
        _ => b.rebuild(p, kids)?,
    };
    arranged_like(node, p)
}

/// A cut-free proof, or the premise holding the cut-side formula of a
/// root cut split into the part carrying `a` and the other part.
struct CutParts {
    main: Proof,
    extra: Option<(Formula, Proof)>,
}

fn cut_parts(p: &Proof, a: &Formula) -> Result<CutParts, CalculusError> {
    if p.is_cut_free() {
        return Ok(CutParts { main: p.clone(), extra: None });
    }
    let Rule::Cut { formula, .. } = p.rule() else {
        return Err(CalculusError::NotBounded);
    };
    let kids = p.children();
    let left_has = super::proof::remove_all(&kids[0].conclusion().0, std::slice::from_ref(formula))
        .map(|rest| rest.contains(a))
        .unwrap_or(false);
    let (main, side, x) = if left_has {
        (&kids[0], &kids[1], formula.clone())
    } else {
        (&kids[1], &kids[0], formula.dual())
    };
    Ok(CutParts {
        main: (**main).clone(),
        extra: Some((x, (**side).clone())),
    })
}

/// Bounded LLTN proof of `Γ, Δ` from bounded proofs of `Γ, a` and `a^, Δ`.
pub fn compose_cuts(p1: &Proof, p2: &Proof, a: &Formula) -> Result<Proof, CalculusError> {
    if !is_bounded(p1) || !is_bounded(p2) {
        return Err(CalculusError::NotBounded);
    }
    let b = Builder::new(System::Lltn);
    let na = a.dual();
    for (p, f) in [(p1, a), (p2, &na)] {
        if !p.conclusion().0.contains(f) {
            return Err(CalculusError::FormulaNotFound {
                formula: f.clone(),
                sequent: p.conclusion().clone(),
            });
        }
    }
    let mut gamma = super::proof::remove_all(&p1.conclusion().0, std::slice::from_ref(a)).unwrap_or_default();
    gamma.extend(super::proof::remove_all(&p2.conclusion().0, std::slice::from_ref(&na)).unwrap_or_default());
    let c1 = cut_parts(p1, a)?;
    let c2 = cut_parts(p2, &na)?;
    if c1.extra.is_none() && c2.extra.is_none() {
        return b.cut(p1, p2, a)?.arranged(&gamma);
    }
    let mut left = b.tensor(&c1.main, &c2.main, a, &na, &[])?;
    let mut k = Formula::tensor(a.clone(), na.clone());
    let ax = axiom_proof_in(System::Lltn, a)?;
    let mut right = b.par(&ax, &na, a)?;
    let mut kd = Formula::par(na.clone(), a.clone());
    for (x, side) in [c1.extra, c2.extra].into_iter().flatten() {
        left = b.par(&left, &k, &x)?;
        k = Formula::par(k, x.clone());
        right = b.tensor(&right, &side, &kd, &x.dual(), &[])?;
        kd = Formula::tensor(kd, x.dual());
    }
    debug_assert_eq!(kd, k.dual());
    b.cut(&left, &right, &k)?.arranged(&gamma)
}

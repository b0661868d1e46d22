//! Exhaustive backward search for cut-free proofs.
//!
//! Invertible rules (`⊤`, `⊥`, `⅋`, `&`, and promotion in LLTN) are applied
//! eagerly and cost nothing; every other rule application costs one unit of
//! depth. Dereliction arities, promotion premises and LL contraction copies
//! are capped by `arity_cap`. A failure is *complete* when no depth or arity
//! cutoff was met anywhere below it, which makes it a genuine refutation.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::build::Builder;
use super::proof::{PremiseFamily, Proof};
use super::{Sequent, System};
use crate::formula::{power, Formula, PowerMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub depth_limit: usize,
    pub arity_cap: usize,
    /// Maximum number of explored search nodes.
    pub node_budget: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            depth_limit: 12,
            arity_cap: 2,
            node_budget: 5_000_000,
        }
    }
}

#[derive(Clone, Debug)]
pub enum SearchOutcome {
    /// A cut-free proof whose conclusion is the query, in order. Promotion
    /// nodes carry explicit premises for `n = 0..=arity_cap`.
    Proof(Proof),
    /// No proof within the caps; `complete` means no cap was reached, so the
    /// sequent has no cut-free proof at all.
    Exhausted { complete: bool },
    ResourceLimit { explored: usize },
}

impl SearchOutcome {
    pub fn proof(&self) -> Option<&Proof> {
        match self {
            SearchOutcome::Proof(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_exhausted(&self) -> bool {
        matches!(self, SearchOutcome::Exhausted { .. })
    }
}

enum Found {
    Yes(Proof),
    No { complete: bool },
}

struct Budget;

struct Searcher {
    system: System,
    config: SearchConfig,
    builder: Builder,
    explored: usize,
    proved: HashMap<Vec<Formula>, Proof>,
    // Deepest depth at which the sequent failed, and whether that failure was complete.
    failed: HashMap<Vec<Formula>, (usize, bool)>,
}

fn sorted(mut v: Vec<Formula>) -> Vec<Formula> {
    v.sort();
    v
}

fn without(seq: &[Formula], i: usize) -> Vec<Formula> {
    let mut v = seq.to_vec();
    v.remove(i);
    v
}

fn plus(mut v: Vec<Formula>, extra: &[Formula]) -> Vec<Formula> {
    v.extend_from_slice(extra);
    v
}

impl Searcher {
    fn prove(&mut self, seq: Vec<Formula>, depth: usize) -> Result<Found, Budget> {
        let seq = sorted(seq);
        if let Some(p) = self.proved.get(&seq) {
            return Ok(Found::Yes(p.clone()));
        }
        if let Some(&(d, complete)) = self.failed.get(&seq) {
            if complete || d >= depth {
                return Ok(Found::No { complete });
            }
        }
        self.explored += 1;
        if self.explored > self.config.node_budget {
            return Err(Budget);
        }
        let result = self.expand(&seq, depth)?;
        match &result {
            Found::Yes(p) => {
                self.proved.insert(seq, p.clone());
            }
            Found::No { complete } => {
                let entry = self.failed.entry(seq).or_insert((depth, *complete));
                if depth >= entry.0 {
                    *entry = (depth, *complete || entry.1);
                }
            }
        }
        Ok(result)
    }

    fn expand(&mut self, seq: &[Formula], depth: usize) -> Result<Found, Budget> {
        let b = self.builder;
        if let Some(i) = seq.iter().position(|f| *f == Formula::Top) {
            return Ok(Found::Yes(b.top(&without(seq, i))));
        }
        let invertible = seq.iter().position(|f| match f {
            Formula::Bot | Formula::Par(..) | Formula::With(..) => true,
            Formula::OfCourse(_) => self.system == System::Lltn,
            _ => false,
        });
        if let Some(i) = invertible {
            let rest = without(seq, i);
            return Ok(match &seq[i] {
                Formula::Bot => match self.prove(rest, depth)? {
                    Found::Yes(p) => Found::Yes(b.bot(p)),
                    no => no,
                },
                Formula::Par(x, y) => match self.prove(plus(rest, &[(**x).clone(), (**y).clone()]), depth)? {
                    Found::Yes(p) => Found::Yes(b.par(&p, x, y).expect("searched shape")),
                    no => no,
                },
                Formula::With(x, y) => {
                    let l = match self.prove(plus(rest.clone(), &[(**x).clone()]), depth)? {
                        Found::Yes(p) => p,
                        no => return Ok(no),
                    };
                    match self.prove(plus(rest, &[(**y).clone()]), depth)? {
                        Found::Yes(r) => Found::Yes(b.with(&l, &r, x, y).expect("searched shape")),
                        no => no,
                    }
                }
                Formula::OfCourse(x) => {
                    let mut premises = Vec::new();
                    for n in 0..=self.config.arity_cap {
                        let want = plus(rest.clone(), &[power(x, n, PowerMode::Tensor)]);
                        match self.prove(want.clone(), depth)? {
                            Found::Yes(p) => premises.push(Arc::new(p.arranged(&want).expect("searched shape"))),
                            no => return Ok(no),
                        }
                    }
                    Found::Yes(b.promotion(&rest, x, PremiseFamily::Explicit(premises)))
                }
                _ => unreachable!(),
            });
        }
        self.positive(seq, depth)
    }

    fn positive(&mut self, seq: &[Formula], depth: usize) -> Result<Found, Budget> {
        let b = self.builder;
        if seq == [Formula::One] {
            return Ok(Found::Yes(b.one()));
        }
        if let [x, y] = seq {
            if matches!(x, Formula::Atom { .. }) && x.dual() == *y {
                return Ok(Found::Yes(b.identity(if y.is_positive() { y } else { x }).expect("atom")));
            }
        }
        let mut complete = true;
        let cap = self.config.arity_cap;
        let mut tried = BTreeSet::new();
        for i in 0..seq.len() {
            if !tried.insert(seq[i].clone()) {
                continue;
            }
            let rest = without(seq, i);
            let f = seq[i].clone();
            let mut options: Vec<(Vec<Vec<Formula>>, Vec<Formula>)> = Vec::new();
            match &f {
                Formula::Plus(x, y) => {
                    options.push((vec![plus(rest.clone(), &[(**x).clone()])], vec![]));
                    options.push((vec![plus(rest.clone(), &[(**y).clone()])], vec![]));
                }
                Formula::Tensor(x, y) => {
                    for (l, r, th) in splits(&rest, self.system != System::Ll) {
                        let mut p1 = l;
                        p1.extend(th.iter().cloned());
                        p1.push((**x).clone());
                        let mut p2 = r;
                        p2.extend(th.iter().cloned());
                        p2.push((**y).clone());
                        options.push((vec![p1, p2], th));
                    }
                }
                Formula::WhyNot(x) => match self.system {
                    System::Lltn => {
                        for n in 0..=cap {
                            options.push((vec![plus(rest.clone(), &[power(x, n, PowerMode::Par)])], vec![]));
                        }
                        complete = false;
                    }
                    _ => {
                        options.push((vec![plus(rest.clone(), &[(**x).clone()])], vec![]));
                        options.push((vec![rest.clone()], vec![]));
                        if seq.iter().filter(|g| **g == f).count() < cap.max(1) + 1 {
                            options.push((vec![plus(seq.to_vec(), std::slice::from_ref(&f))], vec![]));
                        } else {
                            complete = false;
                        }
                    }
                },
                Formula::OfCourse(x) if rest.iter().all(Formula::is_why_not) => {
                    options.push((vec![plus(rest.clone(), &[(**x).clone()])], vec![]));
                }
                _ => {}
            }
            for (choice, (premises, theta)) in options.into_iter().enumerate() {
                if depth == 0 {
                    complete = false;
                    break;
                }
                let mut proofs = Vec::new();
                let mut ok = true;
                for prem in &premises {
                    match self.prove(prem.clone(), depth - 1)? {
                        Found::Yes(p) => proofs.push(p),
                        Found::No { complete: c } => {
                            complete &= c;
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let built = self.assemble(&f, seq, choice, &theta, proofs);
                return Ok(Found::Yes(built));
            }
        }
        Ok(Found::No { complete })
    }

    fn assemble(
        &self,
        f: &Formula,
        seq: &[Formula],
        choice: usize,
        theta: &[Formula],
        mut proofs: Vec<Proof>,
    ) -> Proof {
        let b = self.builder;
        let p = match f {
            Formula::Plus(x, y) if choice == 0 => b.plus_left(&proofs[0], x, y),
            Formula::Plus(x, y) => b.plus_right(&proofs[0], x, y),
            Formula::Tensor(x, y) => {
                let r = proofs.pop().expect("two premises");
                let l = proofs.pop().expect("two premises");
                b.tensor(&l, &r, x, y, theta)
            }
            Formula::WhyNot(x) => match self.system {
                System::Lltn => b.dereliction(&proofs[0], x, choice),
                _ => match choice {
                    0 => b.classic_dereliction(&proofs[0], x),
                    1 => Ok(b.weakening(proofs[0].clone(), x)),
                    _ => b.contraction(&proofs[0], f),
                },
            },
            Formula::OfCourse(x) => b.classic_promotion(&proofs[0], x),
            _ => unreachable!(),
        };
        p.and_then(|p| p.arranged(seq)).expect("searched shape")
    }
}

/// All ways to split `ctx` into left, right and (when `shared`) a shared
/// part of `?`-formulas, up to reordering of equal formulas.
fn splits(ctx: &[Formula], shared: bool) -> Vec<(Vec<Formula>, Vec<Formula>, Vec<Formula>)> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let ways = |f: &Formula| if shared && f.is_why_not() { 3 } else { 2 };
    let total: usize = ctx.iter().map(ways).product();
    for code in 0..total {
        let mut c = code;
        let (mut l, mut r, mut t) = (Vec::new(), Vec::new(), Vec::new());
        for f in ctx {
            let w = ways(f);
            match c % w {
                0 => l.push(f.clone()),
                1 => r.push(f.clone()),
                _ => t.push(f.clone()),
            }
            c /= w;
        }
        let key = (sorted(l.clone()), sorted(r.clone()), sorted(t.clone()));
        if seen.insert(key) {
            out.push((l, r, t));
        }
    }
    out
}

/// Backward search for a cut-free proof of `sequent` in `system`.
pub fn search_cutfree(system: System, sequent: &Sequent, config: &SearchConfig) -> SearchOutcome {
    let mut s = Searcher {
        system,
        config: *config,
        builder: Builder::new(system),
        explored: 0,
        proved: HashMap::new(),
        failed: HashMap::new(),
    };
    match s.prove(sequent.0.clone(), config.depth_limit) {
        Ok(Found::Yes(p)) => SearchOutcome::Proof(p.arranged(&sequent.0).expect("same multiset")),
        Ok(Found::No { complete }) => SearchOutcome::Exhausted { complete },
        Err(Budget) => SearchOutcome::ResourceLimit { explored: s.explored },
    }
}

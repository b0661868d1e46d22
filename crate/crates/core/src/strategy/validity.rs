//! Validity sweeps: a proponent base with dangling edges, completed by every
//! opponent tree of a corpus and every token placement.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::solve::{check_winning_with, Memo, Solver, Winner};
use super::{Intersection, ProofStrategy, StrategyError};
use crate::calculus::{is_bounded, CalculusError, Proof, Rule, Sequent};
use crate::formula::Formula;
use crate::game::{enumerate_rooted, Edge, GameError, Position, Rooted, Rules, Team, VertexId};

/// Labels of the default opponent corpus: `1`, `0`, `⊥ ⊗ 1`, `1 ⊕ ⊥`.
pub fn default_pool() -> Vec<Formula> {
    vec![
        Formula::One,
        Formula::Zero,
        Formula::tensor(Formula::Bot, Formula::One),
        Formula::plus(Formula::One, Formula::Bot),
    ]
}

/// Opponent trees with at most `bound` vertices over [`default_pool`].
pub fn default_v_corpus(bound: usize) -> Vec<Rooted> {
    enumerate_rooted(bound, &default_pool(), &[Team::Opponent])
}

/// A proponent tree with dangling edges: port `(v, A)` is an edge labelled
/// `A` leaving `v` towards whatever gets attached.
#[derive(Clone, Debug)]
pub struct Base {
    pub position: Position,
    pub ports: Vec<(VertexId, Formula)>,
}

impl Base {
    /// One proponent vertex with a port for each formula.
    pub fn single(formulas: &[Formula]) -> Base {
        Base {
            position: Position::single(Team::Proponent),
            ports: formulas.iter().map(|f| (0, f.clone())).collect(),
        }
    }

    pub fn sequent(&self) -> Sequent {
        Sequent(self.ports.iter().map(|(_, f)| f.clone()).collect())
    }
}

/// A base whose proponent vertices carry proofs; each part is played as a
/// separate strategy.
#[derive(Clone, Debug)]
pub struct Witness {
    pub base: Base,
    pub parts: Vec<BTreeMap<VertexId, Arc<Proof>>>,
}

impl Witness {
    pub fn strategy(&self, p: &Position) -> Result<Intersection<ProofStrategy>, StrategyError> {
        let parts = self
            .parts
            .iter()
            .map(|d| ProofStrategy::new(p, d.clone()))
            .collect::<Result<_, _>>()?;
        Ok(Intersection::new(parts))
    }
}

/// Hangs the `i`-th tree on the `i`-th port. The token sits on vertex 0.
pub fn attach(base: &Base, trees: &[&Rooted]) -> Result<Position, GameError> {
    if trees.len() != base.ports.len() {
        return Err(GameError::IllegalMove(format!(
            "{} ports but {} trees",
            base.ports.len(),
            trees.len()
        )));
    }
    let mut p = base.position.clone();
    for ((v, f), t) in base.ports.iter().zip(trees) {
        p = p.join(*v, &t.position, t.root, f.clone())?.0;
    }
    p.with_token(0)
}

pub enum Judge<'a> {
    /// Best play by the proponent team.
    Solve,
    /// The proof strategies of a witness.
    Witness(&'a Witness),
}

pub struct Sweep {
    pub corpus: Vec<Rooted>,
    pub rules: Rules,
    /// Positions per strategy check, or in total for solving.
    pub budget: usize,
}

impl Sweep {
    pub fn new(bound: usize, rules: Rules) -> Sweep {
        Sweep {
            corpus: default_v_corpus(bound),
            rules,
            budget: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ValidityReport {
    pub checked: usize,
    pub proponent_wins: usize,
    pub opponent_wins: usize,
    pub unknown: usize,
    /// Some position the proponent did not win, if any.
    #[serde(skip)]
    pub counterexample: Option<Position>,
}

impl ValidityReport {
    /// Every completion won outright.
    pub fn passed(&self) -> bool {
        self.opponent_wins == 0 && self.unknown == 0
    }

    pub fn refuted(&self) -> bool {
        self.opponent_wins > 0
    }

    fn add(&mut self, w: Winner, p: &Position) {
        self.checked += 1;
        match w {
            Winner::ProponentWins => self.proponent_wins += 1,
            Winner::OpponentWins => {
                self.opponent_wins += 1;
                self.counterexample = Some(p.clone());
            }
            Winner::Unknown => {
                self.unknown += 1;
                if self.counterexample.is_none() {
                    self.counterexample = Some(p.clone());
                }
            }
        }
    }
}

impl std::fmt::Display for ValidityReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} checked: {} proponent, {} opponent, {} unknown",
            self.checked, self.proponent_wins, self.opponent_wins, self.unknown
        )
    }
}

fn tuples(width: usize, arity: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..width).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    out
}

/// Completes `base` with every tuple of corpus trees and every token
/// placement, and judges each resulting position.
pub fn validity_check(base: &Base, judge: Judge<'_>, sweep: &Sweep) -> Result<ValidityReport, StrategyError> {
    let solver = Solver::new(sweep.rules, sweep.budget);
    let memo = Memo::default();
    let results: Vec<Vec<(Winner, Position)>> = tuples(sweep.corpus.len(), base.ports.len())
        .into_par_iter()
        .map(|t| {
            let trees: Vec<&Rooted> = t.iter().map(|i| &sweep.corpus[*i]).collect();
            let whole = attach(base, &trees)?;
            let strategy = match &judge {
                Judge::Witness(w) => Some(w.strategy(&whole)?),
                Judge::Solve => None,
            };
            let vs: Vec<VertexId> = whole.vertices().collect();
            vs.into_iter()
                .map(|v| {
                    let p = whole.with_token(v)?;
                    let w = match &strategy {
                        Some(s) => check_winning_with(s, &p, &sweep.rules, sweep.budget, &memo)?,
                        None => solver.solve(&p)?,
                    };
                    Ok((w, p))
                })
                .collect()
        })
        .collect::<Result<_, StrategyError>>()?;
    let mut report = ValidityReport::default();
    for (w, p) in results.iter().flatten() {
        report.add(*w, p);
    }
    Ok(report)
}

fn strip(p: &Proof) -> &Proof {
    let mut p = p;
    while matches!(p.rule(), Rule::Exchange { .. }) {
        p = &p.children()[0];
    }
    p
}

/// The decorated base read off a bounded LLTN proof: one vertex for a
/// cut-free proof, two vertices joined by the cut formula otherwise.
pub fn soundness_pipeline(proof: &Proof) -> Result<Witness, StrategyError> {
    if !is_bounded(proof) {
        return Err(CalculusError::NotBounded.into());
    }
    let p = strip(proof);
    if let Rule::Cut { formula, .. } = p.rule() {
        let (k0, k1) = (p.children()[0].clone(), p.children()[1].clone());
        let c0 = &k0.conclusion().0;
        let c1 = &k1.conclusion().0;
        let teams = BTreeMap::from([(0, Team::Proponent), (1, Team::Proponent)]);
        let position = Position::new(
            teams,
            vec![Edge {
                src: 0,
                dst: 1,
                label: formula.clone(),
            }],
            0,
        )?;
        let ports = c0[..c0.len() - 1]
            .iter()
            .map(|f| (0, f.clone()))
            .chain(c1[1..].iter().map(|f| (1, f.clone())))
            .collect();
        return Ok(Witness {
            base: Base { position, ports },
            parts: vec![BTreeMap::from([(0, k0), (1, k1)])],
        });
    }
    Ok(Witness {
        base: Base::single(&p.conclusion().0),
        parts: vec![BTreeMap::from([(0, Arc::new(p.clone()))])],
    })
}

/// Joins a witness for `Γ, a` and one for `a^, Δ` along `a`. The parts of
/// both stay separate, so the composite plays their intersection.
pub fn cut_compose_witness(w1: &Witness, w2: &Witness, a: &Formula) -> Result<Witness, StrategyError> {
    let find = |w: &Witness, f: &Formula| {
        w.base.ports.iter().position(|(_, g)| g == f).ok_or_else(|| CalculusError::FormulaNotFound {
            formula: f.clone(),
            sequent: w.base.sequent(),
        })
    };
    let i1 = find(w1, a)?;
    let i2 = find(w2, &a.dual())?;
    let (position, off) = w1
        .base
        .position
        .join(w1.base.ports[i1].0, &w2.base.position, w2.base.ports[i2].0, a.clone())?;
    let ports = w1
        .base
        .ports
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != i1)
        .map(|(_, p)| p.clone())
        .chain(
            w2.base
                .ports
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != i2)
                .map(|(_, (v, f))| (v + off, f.clone())),
        )
        .collect();
    let parts = w1
        .parts
        .iter()
        .cloned()
        .chain(
            w2.parts
                .iter()
                .map(|d| d.iter().map(|(v, p)| (v + off, p.clone())).collect()),
        )
        .collect();
    Ok(Witness {
        base: Base { position, ports },
        parts,
    })
}

//! Strategies for the proponent team: proofs decorating proponent vertices,
//! their intersections, and exhaustive checking against every opponent.

mod solve;
mod validity;

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

use crate::calculus::{anodyne, Anodyne, CalculusError, Proof, Rule};
use crate::formula::Formula;
use crate::game::{Effect, GameError, Move, Position, Side, VertexId};

pub use solve::{check_winning, check_winning_with, play_set, solve, Memo, Solver, Winner};
pub use validity::{
    attach, cut_compose_witness, default_pool, default_v_corpus, soundness_pipeline, validity_check, Base, Judge,
    Sweep, ValidityReport, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error("decoration of vertex {vertex} concludes {proof} but the vertex sees {sequent}")]
    Mismatch {
        vertex: VertexId,
        proof: String,
        sequent: String,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// A way of playing for the vertices it controls. Every move of the game,
/// whoever makes it, is reported through [`Strategy::observe`].
pub trait Strategy: Clone + Send + Sync {
    fn controls(&self, v: VertexId) -> bool;
    /// The move at a position whose token holder is controlled.
    fn choose(&self, p: &Position) -> Result<Move, StrategyError>;
    fn observe(&mut self, before: &Position, m: &Move, after: &Position, effect: &Effect) -> Result<(), StrategyError>;
    /// Summary of the state kept for a controlled vertex. Positions with
    /// isomorphic trees and equal fingerprints are played identically.
    fn fingerprint(&self, v: VertexId) -> Option<u64>;
}

/// Plays a cut-free LLTN proof at each decorated vertex.
#[derive(Clone, Debug)]
pub struct ProofStrategy {
    decorations: BTreeMap<VertexId, (Arc<Proof>, u64)>,
}

fn strip(mut p: Arc<Proof>) -> (Arc<Proof>, u64) {
    while matches!(p.rule(), Rule::Exchange { .. }) {
        p = p.children()[0].clone();
    }
    let mut h = DefaultHasher::new();
    p.hash(&mut h);
    (p, h.finish())
}

fn sorted(v: &[Formula]) -> Vec<Formula> {
    let mut v = v.to_vec();
    v.sort();
    v
}

impl ProofStrategy {
    pub fn new(p: &Position, decorations: BTreeMap<VertexId, Arc<Proof>>) -> Result<ProofStrategy, StrategyError> {
        let s = ProofStrategy {
            decorations: decorations.into_iter().map(|(v, d)| (v, strip(d))).collect(),
        };
        for v in s.decorations.keys() {
            s.check_vertex(p, *v)?;
        }
        Ok(s)
    }

    pub fn decoration(&self, v: VertexId) -> Option<&Arc<Proof>> {
        self.decorations.get(&v).map(|d| &d.0)
    }

    pub fn decorated(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.decorations.keys().copied()
    }

    fn check_vertex(&self, p: &Position, v: VertexId) -> Result<(), StrategyError> {
        let Some(d) = self.decoration(v) else { return Ok(()) };
        let seq = p.sequent_of(v);
        if p.team(v).is_none() || sorted(&d.conclusion().0) != sorted(&seq.0) {
            return Err(StrategyError::Mismatch {
                vertex: v,
                proof: d.conclusion().to_string(),
                sequent: seq.to_string(),
            });
        }
        Ok(())
    }

    /// Neighbour across the edge carrying `f` as seen from `v`, preferring the
    /// smallest subtree code.
    fn edge_for(p: &Position, v: VertexId, f: &Formula) -> Result<VertexId, StrategyError> {
        p.adjacent(v)
            .filter(|e| &e.seen_from(v) == f)
            .map(|e| e.other(v))
            .min_by_key(|w| p.branch_code(v, *w))
            .ok_or_else(|| StrategyError::Unsupported(format!("vertex {v} has no edge for {f}")))
    }

    fn set(&mut self, v: VertexId, proof: &Arc<Proof>) {
        self.decorations.insert(v, strip(proof.clone()));
    }
}

fn anodyne_for(m: &Move) -> Result<Option<Anodyne>, StrategyError> {
    Ok(match m {
        Move::NegativePass { .. } => None,
        Move::OneDelete { .. } => Some(Anodyne::Bot),
        Move::TensorSplit { .. } => Some(Anodyne::Par),
        Move::PlusLeft { .. } => Some(Anodyne::WithLeft),
        Move::PlusRight { .. } => Some(Anodyne::WithRight),
        Move::ExpoChoice { n, .. } => Some(Anodyne::Bang(*n)),
        other => {
            return Err(StrategyError::Unsupported(format!(
                "proof strategies cannot follow `{other}`"
            )))
        }
    })
}

impl Strategy for ProofStrategy {
    fn controls(&self, v: VertexId) -> bool {
        self.decorations.contains_key(&v)
    }

    fn choose(&self, p: &Position) -> Result<Move, StrategyError> {
        let v = p.token();
        let d = self
            .decoration(v)
            .ok_or_else(|| StrategyError::Unsupported(format!("vertex {v} is not decorated")))?;
        let shape = d.shape()?;
        let principal = shape
            .last()
            .ok_or_else(|| StrategyError::Unsupported("empty conclusion".into()))?;
        let w = Self::edge_for(p, v, principal)?;
        Ok(match d.rule() {
            Rule::One => Move::OneDelete { to: w },
            Rule::Top | Rule::Bot | Rule::Par | Rule::With | Rule::Promotion => Move::NegativePass { from: w },
            Rule::PlusLeft => Move::PlusLeft { to: w },
            Rule::PlusRight => Move::PlusRight { to: w },
            Rule::Dereliction { arity } => Move::ExpoChoice { to: w, n: *arity },
            Rule::NewTensor { .. } | Rule::Tensor { .. } => {
                let (left, right) = match d.rule() {
                    Rule::NewTensor { left, right } => (*left, *right),
                    Rule::Tensor { left } => (*left, shape.len() - 1 - left),
                    _ => unreachable!(),
                };
                let mut gamma = shape[..left].to_vec();
                let mut delta = shape[left..left + right].to_vec();
                let mut others: Vec<(String, VertexId, Formula)> = p
                    .adjacent(v)
                    .filter(|e| e.other(v) != w)
                    .map(|e| (p.branch_code(v, e.other(v)), e.other(v), e.seen_from(v)))
                    .collect();
                others.sort();
                let take = |pool: &mut Vec<Formula>, f: &Formula| {
                    pool.iter().position(|g| g == f).map(|i| pool.remove(i)).is_some()
                };
                let mut split: Vec<(VertexId, Side)> = others
                    .into_iter()
                    .map(|(_, u, f)| {
                        let side = if take(&mut gamma, &f) {
                            Side::Left
                        } else if take(&mut delta, &f) {
                            Side::Right
                        } else {
                            Side::Shared
                        };
                        (u, side)
                    })
                    .collect();
                split.sort();
                Move::TensorSplit { to: w, split }
            }
            other => {
                return Err(StrategyError::Unsupported(format!(
                    "rule {} has no move in a cut-free LLTN proof",
                    other.name()
                )))
            }
        })
    }

    fn observe(&mut self, before: &Position, m: &Move, after: &Position, eff: &Effect) -> Result<(), StrategyError> {
        let a = eff.active;
        let own = self.decoration(a).cloned();
        for (orig, copy) in &eff.copies {
            if let Some(d) = self.decorations.get(orig).cloned() {
                self.decorations.insert(*copy, d);
            }
        }
        if let Some(d) = &own {
            match m {
                Move::NegativePass { .. } | Move::OneDelete { .. } => {}
                Move::PlusLeft { .. } | Move::PlusRight { .. } | Move::ExpoChoice { .. } => {
                    let kid = d
                        .children()
                        .first()
                        .ok_or_else(|| StrategyError::Unsupported(format!("`{m}` does not follow {}", d.rule().name())))?;
                    self.set(a, &kid.clone());
                }
                Move::TensorSplit { .. } => {
                    let (kept, new) = eff.split.expect("split reports its halves");
                    let kids = d.children();
                    if kids.len() != 2 {
                        return Err(StrategyError::Unsupported(format!("`{m}` does not follow {}", d.rule().name())));
                    }
                    let (k0, k1) = (kids[0].clone(), kids[1].clone());
                    self.set(kept, &k0);
                    self.set(new, &k1);
                }
                other => {
                    return Err(StrategyError::Unsupported(format!(
                        "proof strategies never play `{other}`"
                    )))
                }
            }
        }
        if let Some(t) = eff.passive.filter(|t| *t != a) {
            if let (Some(d), Some(kind)) = (self.decoration(t).cloned(), anodyne_for(m)?) {
                let old = before
                    .edge_between(a, t)
                    .expect("move acts on an edge")
                    .seen_from(t);
                let i = d
                    .conclusion()
                    .0
                    .iter()
                    .position(|f| *f == old)
                    .ok_or_else(|| StrategyError::Mismatch {
                        vertex: t,
                        proof: d.conclusion().to_string(),
                        sequent: before.sequent_of(t).to_string(),
                    })?;
                let next = anodyne(kind, &d, i)?;
                self.set(t, &Arc::new(next));
            }
        }
        for v in &eff.removed {
            self.decorations.remove(v);
        }
        let touched = [Some(a), eff.passive, eff.split.map(|s| s.1)];
        for v in touched.into_iter().flatten().chain(eff.copies.iter().map(|c| c.1)) {
            if after.team(v).is_some() {
                self.check_vertex(after, v)?;
            }
        }
        Ok(())
    }

    fn fingerprint(&self, v: VertexId) -> Option<u64> {
        self.decorations.get(&v).map(|d| d.1)
    }
}

/// Several strategies over disjoint vertex sets, played together.
#[derive(Clone, Debug)]
pub struct Intersection<S> {
    pub parts: Vec<S>,
}

impl<S: Strategy> Intersection<S> {
    pub fn new(parts: Vec<S>) -> Self {
        Intersection { parts }
    }
}

impl<S: Strategy> Strategy for Intersection<S> {
    fn controls(&self, v: VertexId) -> bool {
        self.parts.iter().any(|s| s.controls(v))
    }

    fn choose(&self, p: &Position) -> Result<Move, StrategyError> {
        self.parts
            .iter()
            .find(|s| s.controls(p.token()))
            .ok_or_else(|| StrategyError::Unsupported(format!("vertex {} is not controlled", p.token())))?
            .choose(p)
    }

    fn observe(&mut self, before: &Position, m: &Move, after: &Position, effect: &Effect) -> Result<(), StrategyError> {
        for s in &mut self.parts {
            s.observe(before, m, after, effect)?;
        }
        Ok(())
    }

    fn fingerprint(&self, v: VertexId) -> Option<u64> {
        self.parts
            .iter()
            .enumerate()
            .find_map(|(i, s)| s.fingerprint(v).map(|h| h.rotate_left(i as u32 * 7) ^ i as u64))
    }
}

//! Positions of the graphical game and the moves between them.
//!
//! A position is a tree whose vertices belong to the proponent or opponent
//! team, whose directed edges carry positive formulas, and one of whose
//! vertices holds the token. The sequent of a vertex lists the labels of its
//! output edges and the duals of the labels of its input edges.

mod canon;
mod corpus;
mod io;
mod moves;
mod plays;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::Sequent;
use crate::formula::Formula;

pub use canon::{CanonicalForm, CanonicalKey, KeyBuildHasher, KeyHasher};
pub use corpus::{enumerate_positions, enumerate_rooted, gen_positions, random_formula, Labels, Rooted};
pub use io::{position_from_json, position_to_json, to_dot, PositionRepr};
pub use moves::{apply_move, enumerate_moves, expo_truncated, Effect, Move, Rules, Side, Variant};
pub use plays::{all_plays, PlayStats};

pub type VertexId = u32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Team {
    Proponent,
    Opponent,
}

impl Team {
    pub fn letter(self) -> char {
        match self {
            Team::Proponent => 'P',
            Team::Opponent => 'O',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub src: VertexId,
    pub dst: VertexId,
    pub label: Formula,
}

impl Edge {
    pub fn touches(&self, v: VertexId) -> bool {
        self.src == v || self.dst == v
    }

    pub fn other(&self, v: VertexId) -> VertexId {
        if self.src == v {
            self.dst
        } else {
            self.src
        }
    }

    /// The formula this edge contributes to the sequent of `v`.
    pub fn seen_from(&self, v: VertexId) -> Formula {
        if self.src == v {
            self.label.clone()
        } else {
            self.label.dual()
        }
    }

    /// Edge carrying `label` from `src` to `dst`, reversed if the label is negative.
    pub fn normal(src: VertexId, dst: VertexId, label: Formula) -> Edge {
        if label.is_positive() {
            Edge { src, dst, label }
        } else {
            Edge {
                src: dst,
                dst: src,
                label: label.dual(),
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("the underlying graph is not a tree: {0}")]
    NotATree(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("edge label {0} contains atoms")]
    Atoms(Formula),
    #[error("edge label {0} is not positive")]
    NotNormal(Formula),
    #[error("illegal move: {0}")]
    IllegalMove(String),
    #[error("position {0} repeats within a play")]
    Cycle(String),
    #[error("play budget of {0} positions exhausted")]
    Budget(usize),
    #[error("{0}")]
    Serial(String),
}

/// A punctured, directed, signed, normally labelled tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Position {
    teams: BTreeMap<VertexId, Team>,
    edges: Vec<Edge>,
    token: VertexId,
}

impl Position {
    /// Builds a position, normalizing negative labels and checking that the
    /// result is a tree.
    pub fn new(teams: BTreeMap<VertexId, Team>, edges: Vec<Edge>, token: VertexId) -> Result<Position, GameError> {
        let edges = edges.into_iter().map(|e| Edge::normal(e.src, e.dst, e.label)).collect();
        let p = Position { teams, edges, token };
        p.validate()?;
        Ok(p)
    }

    /// A single vertex holding the token.
    pub fn single(team: Team) -> Position {
        Position {
            teams: BTreeMap::from([(0, team)]),
            edges: Vec::new(),
            token: 0,
        }
    }

    pub(crate) fn from_parts_unchecked(teams: BTreeMap<VertexId, Team>, edges: Vec<Edge>, token: VertexId) -> Position {
        Position { teams, edges, token }
    }

    pub fn validate(&self) -> Result<(), GameError> {
        if !self.teams.contains_key(&self.token) {
            return Err(GameError::UnknownVertex(self.token));
        }
        for e in &self.edges {
            for v in [e.src, e.dst] {
                if !self.teams.contains_key(&v) {
                    return Err(GameError::UnknownVertex(v));
                }
            }
            if !e.label.is_atom_free() {
                return Err(GameError::Atoms(e.label.clone()));
            }
            if !e.label.is_positive() {
                return Err(GameError::NotNormal(e.label.clone()));
            }
            if e.src == e.dst {
                return Err(GameError::NotATree(format!("loop at {}", e.src)));
            }
        }
        if self.edges.len() + 1 != self.teams.len() {
            return Err(GameError::NotATree(format!(
                "{} vertices but {} edges",
                self.teams.len(),
                self.edges.len()
            )));
        }
        let reached = self.component(self.token, None);
        if reached.len() != self.teams.len() {
            return Err(GameError::NotATree("disconnected".into()));
        }
        Ok(())
    }

    pub fn token(&self) -> VertexId {
        self.token
    }

    pub fn with_token(&self, v: VertexId) -> Result<Position, GameError> {
        if !self.teams.contains_key(&v) {
            return Err(GameError::UnknownVertex(v));
        }
        let mut p = self.clone();
        p.token = v;
        Ok(p)
    }

    pub fn teams(&self) -> &BTreeMap<VertexId, Team> {
        &self.teams
    }

    pub fn team(&self, v: VertexId) -> Option<Team> {
        self.teams.get(&v).copied()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.teams.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.teams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.teams.is_empty()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn token_team(&self) -> Team {
        self.teams[&self.token]
    }

    /// Edges at `v`, in storage order.
    pub fn adjacent(&self, v: VertexId) -> impl Iterator<Item = &Edge> + '_ {
        self.edges.iter().filter(move |e| e.touches(v))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacent(v).count()
    }

    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<&Edge> {
        self.edges
            .iter()
            .find(|e| (e.src == a && e.dst == b) || (e.src == b && e.dst == a))
    }

    /// The sequent of `v`: output labels and duals of input labels, in
    /// storage order of the edges.
    pub fn sequent_of(&self, v: VertexId) -> Sequent {
        Sequent(self.adjacent(v).map(|e| e.seen_from(v)).collect())
    }

    /// Vertices reachable from `start` without crossing into `avoid`.
    pub fn component(&self, start: VertexId, avoid: Option<VertexId>) -> BTreeSet<VertexId> {
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for e in self.adjacent(v) {
                let w = e.other(v);
                if Some(w) != avoid && seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen
    }

    pub fn fresh_id(&self) -> VertexId {
        self.teams.keys().next_back().map_or(0, |m| m + 1)
    }

    pub fn canonical_form(&self) -> CanonicalForm {
        canon::canonical_form(self)
    }

    /// Hash of the canonical form; equal for isomorphic positions.
    pub fn canonical_key(&self) -> CanonicalKey {
        canon::canonical_key_with(self, &|v| self.teams[&v] as u64)
    }

    /// [`Position::canonical_key`] with each vertex described by `tag`.
    pub fn canonical_key_with(&self, tag: &dyn Fn(VertexId) -> u64) -> CanonicalKey {
        canon::canonical_key_with(self, tag)
    }

    /// Canonical form with each vertex described by `tag` instead of its team.
    pub fn canonical_form_with(&self, tag: &dyn Fn(VertexId) -> String) -> CanonicalForm {
        canon::canonical_form_with(self, tag)
    }

    pub fn iso(&self, other: &Position) -> bool {
        self.canonical_form() == other.canonical_form()
    }

    /// Canonical code of the subtree hanging off `v` across the edge to `w`.
    pub fn branch_code(&self, v: VertexId, w: VertexId) -> String {
        canon::branch_code(self, v, w)
    }

    /// Disjoint union with `other` plus an edge labelled `label` from `a` (in
    /// `self`) to `b` (in `other`). Returns the result and the offset added to
    /// the ids of `other`. The token stays in `self`.
    pub fn join(&self, a: VertexId, other: &Position, b: VertexId, label: Formula) -> Result<(Position, VertexId), GameError> {
        let offset = self.fresh_id();
        let mut teams = self.teams.clone();
        teams.extend(other.teams.iter().map(|(v, t)| (v + offset, *t)));
        let mut edges = self.edges.clone();
        edges.extend(other.edges.iter().map(|e| Edge {
            src: e.src + offset,
            dst: e.dst + offset,
            label: e.label.clone(),
        }));
        edges.push(Edge::normal(a, b + offset, label));
        Ok((Position::new(teams, edges, self.token)?, offset))
    }

    /// Same position with every vertex assigned to `team`.
    pub fn with_all_teams(&self, team: Team) -> Position {
        let mut p = self.clone();
        for t in p.teams.values_mut() {
            *t = team;
        }
        p
    }

    pub fn with_team(&self, v: VertexId, team: Team) -> Position {
        let mut p = self.clone();
        p.teams.insert(v, team);
        p
    }
}

/// Rebuilds a tree from raw, possibly negative labels.
pub fn normalize(
    teams: BTreeMap<VertexId, Team>,
    edges: Vec<(VertexId, VertexId, Formula)>,
    token: VertexId,
) -> Result<Position, GameError> {
    Position::new(
        teams,
        edges
            .into_iter()
            .map(|(src, dst, label)| Edge { src, dst, label })
            .collect(),
        token,
    )
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vs: Vec<String> = self
            .teams
            .iter()
            .map(|(v, t)| {
                if *v == self.token {
                    format!("[{}{v}]", t.letter())
                } else {
                    format!("{}{v}", t.letter())
                }
            })
            .collect();
        write!(f, "{}", vs.join(" "))?;
        for e in &self.edges {
            write!(f, "; {}->{}: {}", e.src, e.dst, e.label)?;
        }
        Ok(())
    }
}

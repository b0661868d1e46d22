//! Legal moves and their effect on a position.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{Edge, GameError, Position, VertexId};
use crate::formula::{power, Formula, PowerMode};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Exponential edges are derelicted or weakened one at a time.
    Naive,
    /// A `?`-edge is traded for a tensor power in a single move.
    #[default]
    Lltn,
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "naive" => Ok(Variant::Naive),
            "lltn" => Ok(Variant::Lltn),
            other => Err(format!("unknown variant `{other}`")),
        }
    }
}

/// Which moves are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rules {
    pub variant: Variant,
    /// Enables the exotic `1`-edge reversal.
    pub exotic: bool,
    /// Largest tensor power offered by an exponential choice.
    pub expo_cap: usize,
}

impl Default for Rules {
    fn default() -> Self {
        Rules {
            variant: Variant::Lltn,
            exotic: false,
            expo_cap: 2,
        }
    }
}

impl Rules {
    pub fn naive() -> Rules {
        Rules {
            variant: Variant::Naive,
            ..Rules::default()
        }
    }

    pub fn lltn(expo_cap: usize) -> Rules {
        Rules {
            expo_cap,
            ..Rules::default()
        }
    }

    pub fn with_exotic(self) -> Rules {
        Rules { exotic: true, ..self }
    }
}

/// Where a neighbour goes when the active vertex splits on a tensor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
    /// Copied to both halves; only for output `?`-edges.
    Shared,
}

/// A move of the vertex holding the token. `to`/`from` name the neighbour
/// across the edge the move acts on.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum Move {
    NegativePass { from: VertexId },
    OneDelete { to: VertexId },
    TensorSplit { to: VertexId, split: Vec<(VertexId, Side)> },
    PlusLeft { to: VertexId },
    PlusRight { to: VertexId },
    NaiveDereliction { to: VertexId },
    NaiveWeakening { to: VertexId },
    ExpoChoice { to: VertexId, n: usize },
    Exotic { to: VertexId },
}

impl Move {
    /// The neighbour across the edge acted upon.
    pub fn target(&self) -> VertexId {
        match self {
            Move::NegativePass { from } => *from,
            Move::OneDelete { to }
            | Move::TensorSplit { to, .. }
            | Move::PlusLeft { to }
            | Move::PlusRight { to }
            | Move::NaiveDereliction { to }
            | Move::NaiveWeakening { to }
            | Move::ExpoChoice { to, .. }
            | Move::Exotic { to } => *to,
        }
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Move::NegativePass { from } => write!(f, "pass from {from}"),
            Move::OneDelete { to } => write!(f, "one-delete to {to}"),
            Move::TensorSplit { to, split } => {
                write!(f, "split to {to}")?;
                for (w, s) in split {
                    let c = match s {
                        Side::Left => 'L',
                        Side::Right => 'R',
                        Side::Shared => 'S',
                    };
                    write!(f, " {w}:{c}")?;
                }
                Ok(())
            }
            Move::PlusLeft { to } => write!(f, "left to {to}"),
            Move::PlusRight { to } => write!(f, "right to {to}"),
            Move::NaiveDereliction { to } => write!(f, "derelict to {to}"),
            Move::NaiveWeakening { to } => write!(f, "weaken {to}"),
            Move::ExpoChoice { to, n } => write!(f, "choose {n} to {to}"),
            Move::Exotic { to } => write!(f, "exotic to {to}"),
        }
    }
}

/// What a move did to the vertices, for anyone tracking per-vertex data.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Effect {
    pub active: VertexId,
    /// The neighbour whose sequent changed, if any.
    pub passive: Option<VertexId>,
    pub removed: Vec<VertexId>,
    /// Pairs `(original, copy)` created by sharing `?`-subtrees.
    pub copies: Vec<(VertexId, VertexId)>,
    /// `(kept, new)` halves of a tensor split.
    pub split: Option<(VertexId, VertexId)>,
}

fn split_choices(p: &Position, v: VertexId, to: VertexId) -> Vec<Vec<(VertexId, Side)>> {
    let mut options: Vec<(VertexId, Vec<Side>)> = p
        .adjacent(v)
        .filter(|e| e.other(v) != to)
        .map(|e| {
            let w = e.other(v);
            let sides = if e.src == v && e.label.is_why_not() {
                vec![Side::Left, Side::Right, Side::Shared]
            } else {
                vec![Side::Left, Side::Right]
            };
            (w, sides)
        })
        .collect();
    options.sort_by_key(|(w, _)| *w);
    let mut out = vec![Vec::new()];
    for (w, sides) in options {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                sides.iter().map(move |s| {
                    let mut next = prefix.clone();
                    next.push((w, *s));
                    next
                })
            })
            .collect();
    }
    out
}

/// Every legal move of the token holder, in a deterministic order.
pub fn enumerate_moves(p: &Position, rules: &Rules) -> Vec<Move> {
    let v = p.token();
    let mut out = Vec::new();
    let degree = p.degree(v);
    for e in p.adjacent(v) {
        if e.dst == v {
            out.push(Move::NegativePass { from: e.src });
            continue;
        }
        let to = e.dst;
        match &e.label {
            Formula::One => {
                if degree == 1 {
                    out.push(Move::OneDelete { to });
                }
                if rules.exotic {
                    out.push(Move::Exotic { to });
                }
            }
            Formula::Tensor(..) => {
                out.extend(split_choices(p, v, to).into_iter().map(|split| Move::TensorSplit { to, split }));
            }
            Formula::Plus(..) => {
                out.push(Move::PlusLeft { to });
                out.push(Move::PlusRight { to });
            }
            Formula::WhyNot(_) => match rules.variant {
                Variant::Naive => {
                    out.push(Move::NaiveDereliction { to });
                    out.push(Move::NaiveWeakening { to });
                }
                Variant::Lltn => out.extend((0..=rules.expo_cap).map(|n| Move::ExpoChoice { to, n })),
            },
            _ => {}
        }
    }
    out
}

/// True when the token holder has an output `?`-edge, so that the cap on
/// exponential choices hides moves.
pub fn expo_truncated(p: &Position, rules: &Rules) -> bool {
    rules.variant == Variant::Lltn
        && p
            .adjacent(p.token())
            .any(|e| e.src == p.token() && e.label.is_why_not())
}

fn illegal(m: &Move, why: &str) -> GameError {
    GameError::IllegalMove(format!("{m}: {why}"))
}

/// Plays `m` from `p`. The exponential cap is not enforced here.
pub fn apply_move(p: &Position, m: &Move) -> Result<(Position, Effect), GameError> {
    let v = p.token();
    let target = m.target();
    let idx = p
        .edges
        .iter()
        .position(|e| (e.src == v && e.dst == target) || (e.src == target && e.dst == v))
        .ok_or_else(|| illegal(m, "no such edge"))?;
    let edge = p.edges[idx].clone();
    let mut teams = p.teams.clone();
    let mut edges = p.edges.clone();
    let mut effect = Effect {
        active: v,
        passive: Some(target),
        ..Effect::default()
    };
    if let Move::NegativePass { .. } = m {
        if edge.dst != v {
            return Err(illegal(m, "edge is not an input"));
        }
        effect.passive = None;
        return Ok((Position::from_parts_unchecked(teams, edges, target), effect));
    }
    if edge.src != v {
        return Err(illegal(m, "edge is not an output"));
    }
    let token = match (m, &edge.label) {
        (Move::OneDelete { .. }, Formula::One) => {
            if p.degree(v) != 1 {
                return Err(illegal(m, "vertex has other edges"));
            }
            edges.remove(idx);
            teams.remove(&v);
            effect.removed.push(v);
            target
        }
        (Move::Exotic { .. }, Formula::One) => {
            edges[idx] = Edge {
                src: target,
                dst: v,
                label: Formula::Zero,
            };
            target
        }
        (Move::PlusLeft { .. }, Formula::Plus(a, _)) | (Move::PlusRight { .. }, Formula::Plus(_, a)) => {
            edges[idx] = Edge::normal(v, target, (**a).clone());
            target
        }
        (Move::NaiveDereliction { .. }, Formula::WhyNot(a)) => {
            edges[idx] = Edge::normal(v, target, (**a).clone());
            target
        }
        (Move::NaiveWeakening { .. }, Formula::WhyNot(_)) => {
            edges.remove(idx);
            let gone = p.component(target, Some(v));
            edges.retain(|e| !gone.contains(&e.src));
            for w in &gone {
                teams.remove(w);
            }
            effect.removed.extend(gone);
            effect.passive = None;
            v
        }
        (Move::ExpoChoice { n, .. }, Formula::WhyNot(a)) => {
            edges[idx] = Edge::normal(target, v, power(&a.dual(), *n, PowerMode::Tensor));
            target
        }
        (Move::TensorSplit { split, .. }, Formula::Tensor(a, b)) => {
            let mut others: Vec<VertexId> = p.adjacent(v).map(|e| e.other(v)).filter(|w| *w != target).collect();
            others.sort_unstable();
            let assigned: BTreeMap<VertexId, Side> = split.iter().copied().collect();
            if assigned.len() != split.len() || !assigned.keys().copied().eq(others.iter().copied()) {
                return Err(illegal(m, "split must assign every other neighbour once"));
            }
            let v2 = p.fresh_id();
            let mut next = v2 + 1;
            teams.insert(v2, p.teams[&v]);
            effect.split = Some((v, v2));
            edges[idx] = Edge::normal(v, target, (**a).clone());
            for (w, side) in &assigned {
                let j = edges
                    .iter()
                    .position(|e| e.touches(v) && e.other(v) == *w)
                    .expect("neighbour edge present");
                match side {
                    Side::Left => {}
                    Side::Right => {
                        let e = &mut edges[j];
                        if e.src == v {
                            e.src = v2;
                        } else {
                            e.dst = v2;
                        }
                    }
                    Side::Shared => {
                        let e = edges[j].clone();
                        if e.src != v || !e.label.is_why_not() {
                            return Err(illegal(m, "only output ?-edges can be shared"));
                        }
                        let sub = p.component(*w, Some(v));
                        let mut map = BTreeMap::new();
                        for u in &sub {
                            map.insert(*u, next);
                            teams.insert(next, p.teams[u]);
                            effect.copies.push((*u, next));
                            next += 1;
                        }
                        let inner: Vec<Edge> = p
                            .edges
                            .iter()
                            .filter(|e| sub.contains(&e.src) && sub.contains(&e.dst))
                            .map(|e| Edge {
                                src: map[&e.src],
                                dst: map[&e.dst],
                                label: e.label.clone(),
                            })
                            .collect();
                        edges.extend(inner);
                        edges.push(Edge {
                            src: v2,
                            dst: map[w],
                            label: e.label,
                        });
                    }
                }
            }
            edges.push(Edge::normal(v2, target, (**b).clone()));
            target
        }
        _ => return Err(illegal(m, "label does not match")),
    };
    let next = Position::from_parts_unchecked(teams, edges, token);
    debug_assert!(next.validate().is_ok(), "{m} from {p} broke the position: {next}");
    Ok((next, effect))
}

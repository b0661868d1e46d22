//! JSON and Graphviz renderings of positions.

use std::fmt::Write;

use serde::{Deserialize, Serialize};

use super::{Edge, GameError, Position, Team, VertexId};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRepr {
    pub id: VertexId,
    pub team: Team,
}

/// Serialized shape of a [`Position`]. Labels may be negative; they are
/// normalized on load.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PositionRepr {
    pub vertices: Vec<VertexRepr>,
    pub edges: Vec<Edge>,
    pub token: VertexId,
}

impl From<&Position> for PositionRepr {
    fn from(p: &Position) -> Self {
        PositionRepr {
            vertices: p.teams().iter().map(|(id, team)| VertexRepr { id: *id, team: *team }).collect(),
            edges: p.edges().to_vec(),
            token: p.token(),
        }
    }
}

impl TryFrom<PositionRepr> for Position {
    type Error = GameError;

    fn try_from(r: PositionRepr) -> Result<Self, Self::Error> {
        let teams = r.vertices.into_iter().map(|v| (v.id, v.team)).collect();
        Position::new(teams, r.edges, r.token)
    }
}

pub fn position_to_json(p: &Position) -> String {
    serde_json::to_string_pretty(&PositionRepr::from(p)).expect("positions serialize")
}

pub fn position_from_json(s: &str) -> Result<Position, GameError> {
    let r: PositionRepr = serde_json::from_str(s).map_err(|e| GameError::Serial(e.to_string()))?;
    Position::try_from(r)
}

/// Graphviz rendering: proponents as boxes, opponents as ellipses, the
/// token holder with a double border.
pub fn to_dot(p: &Position) -> String {
    let mut s = String::from("digraph position {\n");
    for (v, t) in p.teams() {
        let shape = match t {
            Team::Proponent => "box",
            Team::Opponent => "ellipse",
        };
        let fill = if *v == p.token() { ", peripheries=2" } else { "" };
        let _ = writeln!(s, "  v{v} [label=\"{}{v}\", shape={shape}{fill}];", t.letter());
    }
    for e in p.edges() {
        let label = e.label.unicode().replace('"', "\\\"");
        let _ = writeln!(s, "  v{} -> v{} [label=\"{label}\"];", e.src, e.dst);
    }
    s.push_str("}\n");
    s
}

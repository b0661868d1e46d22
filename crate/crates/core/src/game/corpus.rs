//! Exhaustive and random families of small positions.

use std::collections::{BTreeMap, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canon::rooted_code;
use super::{Edge, Position, Team, VertexId};
use crate::formula::Formula;

/// A tree with a distinguished vertex where it gets attached to something
/// else. The token sits on the root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rooted {
    pub position: Position,
    pub root: VertexId,
}

/// Every rooted tree with at most `max_vertices` vertices, teams drawn from
/// `teams` and edges labelled from `pool` in either direction, one per
/// isomorphism class.
pub fn enumerate_rooted(max_vertices: usize, pool: &[Formula], teams: &[Team]) -> Vec<Rooted> {
    let mut all = Vec::new();
    let mut layer: Vec<Position> = teams.iter().map(|t| Position::single(*t)).collect();
    for size in 1..=max_vertices {
        all.extend(layer.iter().map(|p| Rooted {
            position: p.clone(),
            root: 0,
        }));
        if size == max_vertices {
            break;
        }
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for p in &layer {
            let fresh = p.fresh_id();
            for v in p.vertices() {
                for t in teams {
                    for label in pool {
                        for outward in [true, false] {
                            let mut ts = p.teams().clone();
                            ts.insert(fresh, *t);
                            let mut es = p.edges().to_vec();
                            es.push(if outward {
                                Edge::normal(v, fresh, label.clone())
                            } else {
                                Edge::normal(fresh, v, label.clone())
                            });
                            let q = Position::from_parts_unchecked(ts, es, 0);
                            if seen.insert(rooted_code(&q, 0)) {
                                next.push(q);
                            }
                        }
                    }
                }
            }
        }
        layer = next;
    }
    all
}

/// Every position with at most `max_vertices` vertices of either team, edges
/// labelled from `pool` and any token placement, one per isomorphism class.
pub fn enumerate_positions(max_vertices: usize, pool: &[Formula]) -> Vec<Position> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for r in enumerate_rooted(max_vertices, pool, &[Team::Proponent, Team::Opponent]) {
        let vs: Vec<VertexId> = r.position.vertices().collect();
        for v in vs {
            let p = r.position.with_token(v).expect("vertex of the tree");
            if seen.insert(p.canonical_form()) {
                out.push(p);
            }
        }
    }
    out
}

/// A random atom-free formula of depth at most `depth`. Each node is a unit
/// with probability `leaf`, otherwise one of the six connectives.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, leaf: f64) -> Formula {
    let units = [Formula::One, Formula::Bot, Formula::Zero, Formula::Top];
    if depth == 0 || rng.gen_bool(leaf) {
        return units.choose(rng).expect("non-empty").clone();
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, leaf);
    match rng.gen_range(0..6) {
        0 => Formula::tensor(sub(rng), sub(rng)),
        1 => Formula::par(sub(rng), sub(rng)),
        2 => Formula::plus(sub(rng), sub(rng)),
        3 => Formula::with(sub(rng), sub(rng)),
        4 => Formula::of_course(sub(rng)),
        _ => Formula::why_not(sub(rng)),
    }
}

/// Where [`gen_positions`] takes its edge labels from.
#[derive(Clone, Copy, Debug)]
pub enum Labels<'a> {
    /// Uniformly from a list of positive formulas.
    Pool(&'a [Formula]),
    /// From [`random_formula`].
    Random { max_depth: usize, leaf: f64 },
}

/// `count` random positions with at most `max_vertices` vertices,
/// reproducible from `seed`.
pub fn gen_positions(max_vertices: usize, labels: Labels<'_>, count: usize, seed: u64) -> Vec<Position> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let n = rng.gen_range(1..=max_vertices.max(1));
            let mut teams = BTreeMap::new();
            for v in 0..n as VertexId {
                let t = if rng.gen_bool(0.5) { Team::Proponent } else { Team::Opponent };
                teams.insert(v, t);
            }
            let edges = (1..n as VertexId)
                .map(|v| {
                    let parent = rng.gen_range(0..v);
                    let label = match labels {
                        Labels::Pool(pool) => pool.choose(&mut rng).expect("non-empty pool").clone(),
                        Labels::Random { max_depth, leaf } => random_formula(&mut rng, max_depth, leaf),
                    };
                    if rng.gen_bool(0.5) {
                        Edge::normal(parent, v, label)
                    } else {
                        Edge::normal(v, parent, label)
                    }
                })
                .collect();
            let token = rng.gen_range(0..n as VertexId);
            Position::new(teams, edges, token).expect("random tree is well formed")
        })
        .collect()
}

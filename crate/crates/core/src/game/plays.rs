//! Exhaustive exploration of every play from a position.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::moves::{apply_move, enumerate_moves, Rules};
use super::{CanonicalKey, GameError, KeyBuildHasher, Position};

/// Summary of the tree of all plays from a position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlayStats {
    /// Distinct positions reached, counted up to isomorphism.
    pub positions: usize,
    /// Number of maximal plays, saturating.
    pub plays: u128,
    /// Length of the longest play.
    pub max_length: usize,
}

struct Explorer<'a> {
    rules: &'a Rules,
    budget: usize,
    memo: HashMap<CanonicalKey, (u128, usize), KeyBuildHasher>,
    stack: HashSet<CanonicalKey, KeyBuildHasher>,
}

impl Explorer<'_> {
    fn visit(&mut self, p: &Position) -> Result<(u128, usize), GameError> {
        let key = p.canonical_key();
        if let Some(r) = self.memo.get(&key) {
            return Ok(*r);
        }
        if !self.stack.insert(key) {
            return Err(GameError::Cycle(p.to_string()));
        }
        if self.memo.len() >= self.budget {
            return Err(GameError::Budget(self.budget));
        }
        let moves = enumerate_moves(p, self.rules);
        let mut count = 0u128;
        let mut longest = 0usize;
        if moves.is_empty() {
            count = 1;
        }
        for m in &moves {
            let (q, _) = apply_move(p, m)?;
            let (c, l) = self.visit(&q)?;
            count = count.saturating_add(c);
            longest = longest.max(l + 1);
        }
        self.stack.remove(&key);
        self.memo.insert(key, (count, longest));
        Ok((count, longest))
    }
}

/// Explores every play from `p`, visiting at most `budget` distinct
/// positions. A repeated position on the current play is reported as
/// [`GameError::Cycle`].
pub fn all_plays(p: &Position, rules: &Rules, budget: usize) -> Result<PlayStats, GameError> {
    let mut ex = Explorer {
        rules,
        budget,
        memo: HashMap::default(),
        stack: HashSet::default(),
    };
    let (plays, max_length) = ex.visit(p)?;
    Ok(PlayStats {
        positions: ex.memo.len(),
        plays,
        max_length,
    })
}

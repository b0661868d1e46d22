//! Exhaustive evaluation of plays: fixed strategies against every opponent,
//! and the game itself as an AND/OR tree.

use std::collections::BTreeSet;
use std::sync::atomic::{AtomicUsize, Ordering};

use dashmap::DashMap;
use serde::Serialize;

use super::{Strategy, StrategyError};
use crate::game::{apply_move, enumerate_moves, expo_truncated, CanonicalKey, GameError, KeyBuildHasher, Move, Position, Rules, Team};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Winner {
    ProponentWins,
    OpponentWins,
    /// No refutation was found, but exponential choices above the cap were
    /// not explored.
    Unknown,
}

impl std::fmt::Display for Winner {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Winner::ProponentWins => "proponent wins",
            Winner::OpponentWins => "opponent wins",
            Winner::Unknown => "unknown",
        })
    }
}

struct Walk<'a> {
    rules: &'a Rules,
    budget: usize,
    visited: usize,
    memo: Option<&'a Memo>,
}

/// Results of strategy checks keyed by position and strategy state.
pub type Memo = DashMap<CanonicalKey, Winner, KeyBuildHasher>;

fn state_key<S: Strategy>(s: &S, p: &Position) -> CanonicalKey {
    p.canonical_key_with(&|v| match s.fingerprint(v) {
        Some(h) => h | 1 << 63,
        None => p.team(v).expect("vertex of p") as u64,
    })
}

impl Walk<'_> {
    fn tick(&mut self) -> Result<(), StrategyError> {
        self.visited += 1;
        if self.visited > self.budget {
            return Err(GameError::Budget(self.budget).into());
        }
        Ok(())
    }

    fn winning<S: Strategy>(&mut self, s: &S, p: &Position) -> Result<Winner, StrategyError> {
        let Some(memo) = self.memo else { return self.winning_fresh(s, p) };
        let key = state_key(s, p);
        if let Some(w) = memo.get(&key) {
            return Ok(*w);
        }
        let w = self.winning_fresh(s, p)?;
        memo.insert(key, w);
        Ok(w)
    }

    fn winning_fresh<S: Strategy>(&mut self, s: &S, p: &Position) -> Result<Winner, StrategyError> {
        self.tick()?;
        if s.controls(p.token()) {
            let m = s.choose(p)?;
            let (q, eff) = apply_move(p, &m)?;
            let mut next = s.clone();
            next.observe(p, &m, &q, &eff)?;
            return self.winning(&next, &q);
        }
        let mut unknown = expo_truncated(p, self.rules);
        for m in enumerate_moves(p, self.rules) {
            let (q, eff) = apply_move(p, &m)?;
            let mut next = s.clone();
            next.observe(p, &m, &q, &eff)?;
            match self.winning(&next, &q)? {
                Winner::OpponentWins => return Ok(Winner::OpponentWins),
                Winner::Unknown => unknown = true,
                Winner::ProponentWins => {}
            }
        }
        Ok(if unknown { Winner::Unknown } else { Winner::ProponentWins })
    }

    fn plays<S: Strategy>(
        &mut self,
        s: &S,
        p: &Position,
        prefix: &mut Vec<Move>,
        out: &mut BTreeSet<Vec<Move>>,
    ) -> Result<(), StrategyError> {
        self.tick()?;
        out.insert(prefix.clone());
        let moves = if s.controls(p.token()) {
            vec![s.choose(p)?]
        } else {
            enumerate_moves(p, self.rules)
        };
        for m in moves {
            let (q, eff) = apply_move(p, &m)?;
            let mut next = s.clone();
            next.observe(p, &m, &q, &eff)?;
            prefix.push(m);
            self.plays(&next, &q, prefix, out)?;
            prefix.pop();
        }
        Ok(())
    }
}

/// Plays `s` for the vertices it controls against every move of the others.
/// A play is lost by whoever holds the token when no move is left.
pub fn check_winning<S: Strategy>(s: &S, p: &Position, rules: &Rules, budget: usize) -> Result<Winner, StrategyError> {
    check_winning_with(s, p, rules, budget, &Memo::default())
}

/// [`check_winning`] reusing results stored in `memo`, which must only ever
/// be used with the same `rules`.
pub fn check_winning_with<S: Strategy>(
    s: &S,
    p: &Position,
    rules: &Rules,
    budget: usize,
    memo: &Memo,
) -> Result<Winner, StrategyError> {
    Walk {
        rules,
        budget,
        visited: 0,
        memo: Some(memo),
    }
    .winning(s, p)
}

/// Every play prefix consistent with `s`, the empty play included.
pub fn play_set<S: Strategy>(
    s: &S,
    p: &Position,
    rules: &Rules,
    budget: usize,
) -> Result<BTreeSet<Vec<Move>>, StrategyError> {
    let mut out = BTreeSet::new();
    Walk {
        rules,
        budget,
        visited: 0,
        memo: None,
    }
    .plays(s, p, &mut Vec::new(), &mut out)?;
    Ok(out)
}

/// Solves positions for the proponent team, sharing results between calls
/// and threads. Positions are identified up to isomorphism.
pub struct Solver {
    rules: Rules,
    budget: usize,
    memo: Memo,
    visited: AtomicUsize,
}

impl Solver {
    pub fn new(rules: Rules, budget: usize) -> Solver {
        Solver {
            rules,
            budget,
            memo: Memo::default(),
            visited: AtomicUsize::new(0),
        }
    }

    pub fn rules(&self) -> &Rules {
        &self.rules
    }

    pub fn solved(&self) -> usize {
        self.memo.len()
    }

    pub fn solve(&self, p: &Position) -> Result<Winner, GameError> {
        let key = p.canonical_key();
        if let Some(w) = self.memo.get(&key) {
            return Ok(*w);
        }
        if self.visited.fetch_add(1, Ordering::Relaxed) >= self.budget {
            return Err(GameError::Budget(self.budget));
        }
        let proponent = p.token_team() == Team::Proponent;
        let (good, bad) = if proponent {
            (Winner::ProponentWins, Winner::OpponentWins)
        } else {
            (Winner::OpponentWins, Winner::ProponentWins)
        };
        let mut unknown = expo_truncated(p, &self.rules);
        let mut result = None;
        for m in enumerate_moves(p, &self.rules) {
            let (q, _) = apply_move(p, &m)?;
            match self.solve(&q)? {
                w if w == good => {
                    result = Some(good);
                    break;
                }
                Winner::Unknown => unknown = true,
                _ => {}
            }
        }
        let w = result.unwrap_or(if unknown { Winner::Unknown } else { bad });
        self.memo.insert(key, w);
        Ok(w)
    }
}

/// Who wins `p` when both teams play their best, with exponential choices
/// capped by `rules`.
pub fn solve(p: &Position, rules: &Rules, budget: usize) -> Result<Winner, GameError> {
    Solver::new(*rules, budget).solve(p)
}

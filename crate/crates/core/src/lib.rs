//! Linear logic with shared-context tensors, bounded proofs in LLTN and a
//! finitary graphical game whose winning strategies model them.
//!
//! - [`formula`]: formulas, duality, polarity, parsing.
//! - [`calculus`]: the systems LL, LLT and LLTN, proof checking and the
//!   transformations between them.
//! - [`game`]: positions, moves and exhaustive exploration of plays.
//! - [`strategy`]: strategies, solving, and validity sweeps.

pub mod calculus;
pub mod formula;
pub mod game;
pub mod strategy;

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/introduction.md")]
mod book_introduction {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/formulas.md")]
mod book_formulas {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/proofs.md")]
mod book_proofs {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/transformations.md")]
mod book_transformations {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/game.md")]
mod book_game {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/strategies.md")]
mod book_strategies {}

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}

#[cfg(doctest)]
#[doc = include_str!("../../../README.md")]
mod readme {}

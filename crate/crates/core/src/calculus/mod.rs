//! Sequent calculi LL, LLT and LLTN: proofs, checking and transformations.
//!
//! Proofs are immutable trees. Every node stores its conclusion together with
//! a permutation witness relating that conclusion to the canonical shape of
//! its rule, so constructors never need explicit exchange steps; the
//! [`Rule::Exchange`] rule is still accepted by the checker.

mod anodyne;
mod build;
mod check;
mod proof;
pub mod random;
mod search;
mod serial;
mod transform;
pub mod witnesses;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::Formula;

pub use anodyne::{anodyne, Anodyne};
pub use build::{axiom_proof, axiom_proof_in, Builder};
pub use check::{check_proof, is_bounded, stats, CheckReport, Locus, Stats, Step};
pub use proof::{PremiseFamily, Premises, Proof, Rule};
pub use search::{search_cutfree, SearchConfig, SearchOutcome};
pub use serial::{proof_from_json, proof_to_json, ProofRepr};
pub use transform::{
    apply_dup, bound_proof, compose_cuts, dup_proof, eliminate_contractions, llt_to_lltn,
    translate_ll_to_llt, translate_llt_to_ll,
};

/// The three rule systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum System {
    /// Classical linear logic: plain tensor, classical exponential rules.
    Ll,
    /// LL with the tensor rule replaced by the shared-context `NewTens`.
    Llt,
    /// LLT with n-ary dereliction and infinitary promotion.
    Lltn,
}

impl std::str::FromStr for System {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ll" => Ok(System::Ll),
            "llt" => Ok(System::Llt),
            "lltn" => Ok(System::Lltn),
            other => Err(format!("unknown system `{other}` (expected ll, llt or lltn)")),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Ll => "LL",
            System::Llt => "LLT",
            System::Lltn => "LLTN",
        })
    }
}

/// An ordered list of formulas.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Sequent(pub Vec<Formula>);

impl Sequent {
    pub fn new(formulas: Vec<Formula>) -> Self {
        Sequent(formulas)
    }

    pub fn parse(text: &str) -> Result<Self, crate::formula::ParseError> {
        let text = text.trim().trim_start_matches("|-").trim();
        if text.is_empty() {
            return Ok(Sequent::default());
        }
        split_top_level(text)
            .into_iter()
            .map(|(offset, part)| {
                crate::formula::parse(part).map_err(|mut e| {
                    e.offset += offset;
                    e
                })
            })
            .collect::<Result<Vec<_>, _>>()
            .map(Sequent)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.0
    }

    /// Sorted copy, the canonical representative of the underlying multiset.
    pub fn sorted(&self) -> Sequent {
        let mut v = self.0.clone();
        v.sort();
        Sequent(v)
    }

    pub fn same_multiset(&self, other: &Sequent) -> bool {
        self.len() == other.len() && self.sorted() == other.sorted()
    }

    pub fn is_atom_free(&self) -> bool {
        self.0.iter().all(Formula::is_atom_free)
    }
}

fn split_top_level(text: &str) -> Vec<(usize, &str)> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push((start, &text[start..i]));
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push((start, &text[start..]));
    parts
}

impl From<Vec<Formula>> for Sequent {
    fn from(v: Vec<Formula>) -> Self {
        Sequent(v)
    }
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("|-")?;
        for (i, a) in self.0.iter().enumerate() {
            f.write_str(if i == 0 { " " } else { ", " })?;
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error("formula {formula} not found in {sequent}")]
    FormulaNotFound { formula: Formula, sequent: Sequent },
    #[error("rule shape mismatch: {0}")]
    Shape(String),
    #[error("proof contains a cut; the input must be cut-free")]
    UnexpectedCut,
    #[error("proof contains a contraction; the input must be contraction-free")]
    UnexpectedContraction,
    #[error("proof is not bounded")]
    NotBounded,
    #[error("atoms are not supported here: {0}")]
    AtomsPresent(Formula),
    #[error("invalid input proof: {0}")]
    Invalid(String),
    #[error("premise {n} requested but the explicit family stops at {bound}")]
    FamilyBound { n: usize, bound: usize },
    #[error("{0}")]
    Serial(String),
}

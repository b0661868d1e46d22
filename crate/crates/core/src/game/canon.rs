//! Canonical codes for rooted labelled trees.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use super::{Position, VertexId};

/// Order-independent encoding of a position; equal codes mean isomorphic
/// positions (the isomorphism respects teams, edge directions, labels and
/// the token).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalForm(pub String);

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

fn code(p: &Position, v: VertexId, parent: Option<VertexId>) -> String {
    code_with(p, v, parent, &|v| p.teams[&v].letter().to_string())
}

fn code_with(p: &Position, v: VertexId, parent: Option<VertexId>, tag: &dyn Fn(VertexId) -> String) -> String {
    let mut children: Vec<String> = p
        .adjacent(v)
        .filter(|e| Some(e.other(v)) != parent)
        .map(|e| {
            let w = e.other(v);
            let dir = if e.src == v { '>' } else { '<' };
            format!("{dir}{}{}", e.label, code_with(p, w, Some(v), tag))
        })
        .collect();
    children.sort();
    let mut s = tag(v);
    s.push('(');
    s.push_str(&children.join(","));
    s.push(')');
    s
}

pub(super) fn canonical_form(p: &Position) -> CanonicalForm {
    CanonicalForm(code(p, p.token(), None))
}

pub(super) fn canonical_form_with(p: &Position, tag: &dyn Fn(VertexId) -> String) -> CanonicalForm {
    CanonicalForm(code_with(p, p.token(), None, tag))
}

pub(super) fn branch_code(p: &Position, v: VertexId, w: VertexId) -> String {
    let e = p.edge_between(v, w).expect("adjacent vertices");
    let dir = if e.src == v { '>' } else { '<' };
    format!("{dir}{}{}", e.label, code(p, w, Some(v)))
}

/// Code of the tree rooted at `root`, ignoring the token.
pub(crate) fn rooted_code(p: &Position, root: VertexId) -> String {
    code(p, root, None)
}

/// 128-bit hash of the canonical form, for memo tables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey(pub u128);

/// Two independent splitmix64 chains; fast, and wide enough that key
/// collisions are negligible for tables of any feasible size.
struct Mixer([u64; 2]);

impl Mixer {
    fn new(salt: u64) -> Mixer {
        Mixer([salt ^ 0x243f_6a88_85a3_08d3, salt ^ 0x1319_8a2e_0370_7344])
    }

    fn wide(&self) -> u128 {
        (u128::from(self.0[0]) << 64) | u128::from(self.0[1])
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl Hasher for Mixer {
    fn write_u64(&mut self, x: u64) {
        self.0[0] = splitmix(self.0[0] ^ x);
        self.0[1] = splitmix(self.0[1].rotate_left(17) ^ x);
    }

    fn write(&mut self, bytes: &[u8]) {
        for chunk in bytes.chunks(8) {
            let mut word = [0u8; 8];
            word[..chunk.len()].copy_from_slice(chunk);
            self.write_u64(u64::from_le_bytes(word));
        }
    }

    fn write_u8(&mut self, x: u8) {
        self.write_u64(x.into());
    }

    fn write_u32(&mut self, x: u32) {
        self.write_u64(x.into());
    }

    fn write_usize(&mut self, x: usize) {
        self.write_u64(x as u64);
    }

    fn finish(&self) -> u64 {
        self.0[0]
    }
}

/// Hasher for tables keyed by [`CanonicalKey`], which is already uniformly
/// distributed.
#[derive(Default)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn write_u128(&mut self, x: u128) {
        self.0 ^= x as u64;
    }

    fn write(&mut self, bytes: &[u8]) {
        for b in bytes {
            self.0 = self.0.rotate_left(8) ^ u64::from(*b);
        }
    }

    fn finish(&self) -> u64 {
        self.0
    }
}

pub type KeyBuildHasher = std::hash::BuildHasherDefault<KeyHasher>;

fn mix(salt: u64, parts: &[u128]) -> u128 {
    let mut h = Mixer::new(salt);
    for part in parts {
        h.write_u64(*part as u64);
        h.write_u64((*part >> 64) as u64);
    }
    h.write_usize(parts.len());
    h.wide()
}

fn label_hash(f: &crate::formula::Formula) -> u128 {
    let mut h = Mixer::new(0);
    f.hash(&mut h);
    h.wide()
}

fn key_with(p: &Position, v: VertexId, parent: Option<VertexId>, tag: &dyn Fn(VertexId) -> u64) -> u128 {
    let mut children: Vec<u128> = p
        .adjacent(v)
        .filter(|e| Some(e.other(v)) != parent)
        .map(|e| {
            let w = e.other(v);
            let dir = u64::from(e.src == v);
            mix(dir, &[label_hash(&e.label), key_with(p, w, Some(v), tag)])
        })
        .collect();
    children.sort_unstable();
    mix(tag(v), &children)
}

pub(super) fn canonical_key_with(p: &Position, tag: &dyn Fn(VertexId) -> u64) -> CanonicalKey {
    CanonicalKey(key_with(p, p.token(), None, tag))
}

//! Propositional linear logic formulas.
//!
//! Formulas are immutable trees with shared children, so cloning is cheap
//! and values can be sent across threads freely. There is no negation
//! constructor: linear negation is the syntactic involution [`Formula::dual`],
//! and atoms carry their own sign.

mod parse;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use parse::{parse, ParseError};

/// A propositional linear logic formula.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Zero,
    One,
    Top,
    Bot,
    Tensor(Arc<Formula>, Arc<Formula>),
    Par(Arc<Formula>, Arc<Formula>),
    Plus(Arc<Formula>, Arc<Formula>),
    With(Arc<Formula>, Arc<Formula>),
    OfCourse(Arc<Formula>),
    WhyNot(Arc<Formula>),
    /// A propositional variable. `positive == false` is its dual `X^`.
    Atom { name: Arc<str>, positive: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

/// Which connective [`power`] iterates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PowerMode {
    Tensor,
    Par,
}

impl Formula {
    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Arc::new(a), Arc::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Arc::new(a), Arc::new(b))
    }

    pub fn plus(a: Formula, b: Formula) -> Formula {
        Formula::Plus(Arc::new(a), Arc::new(b))
    }

    pub fn with(a: Formula, b: Formula) -> Formula {
        Formula::With(Arc::new(a), Arc::new(b))
    }

    pub fn of_course(a: Formula) -> Formula {
        Formula::OfCourse(Arc::new(a))
    }

    pub fn why_not(a: Formula) -> Formula {
        Formula::WhyNot(Arc::new(a))
    }

    pub fn atom(name: &str) -> Formula {
        Formula::Atom {
            name: Arc::from(name),
            positive: true,
        }
    }

    /// `A ⊸ B`, i.e. `A^ ⅋ B`. Linear implication is only ever sugar.
    pub fn lolli(a: Formula, b: Formula) -> Formula {
        Formula::par(a.dual(), b)
    }

    /// De Morgan duality: swaps each connective with its vertical opposite.
    pub fn dual(&self) -> Formula {
        match self {
            Formula::Zero => Formula::Top,
            Formula::Top => Formula::Zero,
            Formula::One => Formula::Bot,
            Formula::Bot => Formula::One,
            Formula::Tensor(a, b) => Formula::par(a.dual(), b.dual()),
            Formula::Par(a, b) => Formula::tensor(a.dual(), b.dual()),
            Formula::Plus(a, b) => Formula::with(a.dual(), b.dual()),
            Formula::With(a, b) => Formula::plus(a.dual(), b.dual()),
            Formula::OfCourse(a) => Formula::why_not(a.dual()),
            Formula::WhyNot(a) => Formula::of_course(a.dual()),
            Formula::Atom { name, positive } => Formula::Atom {
                name: name.clone(),
                positive: !positive,
            },
        }
    }

    /// Zero, one, tensor, plus, why-not and positive atoms are positive.
    pub fn polarity(&self) -> Polarity {
        match self {
            Formula::Zero
            | Formula::One
            | Formula::Tensor(..)
            | Formula::Plus(..)
            | Formula::WhyNot(_)
            | Formula::Atom { positive: true, .. } => Polarity::Positive,
            _ => Polarity::Negative,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.polarity() == Polarity::Positive
    }

    pub fn is_why_not(&self) -> bool {
        matches!(self, Formula::WhyNot(_))
    }

    pub fn is_atom_free(&self) -> bool {
        match self {
            Formula::Atom { .. } => false,
            Formula::Zero | Formula::One | Formula::Top | Formula::Bot => true,
            Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::Plus(a, b) | Formula::With(a, b) => {
                a.is_atom_free() && b.is_atom_free()
            }
            Formula::OfCourse(a) | Formula::WhyNot(a) => a.is_atom_free(),
        }
    }

    /// Number of connective and leaf nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::Plus(a, b) | Formula::With(a, b) => {
                1 + a.size() + b.size()
            }
            Formula::OfCourse(a) | Formula::WhyNot(a) => 1 + a.size(),
            _ => 1,
        }
    }

    /// Height of the formula tree; units and atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::Plus(a, b) | Formula::With(a, b) => {
                1 + a.depth().max(b.depth())
            }
            Formula::OfCourse(a) | Formula::WhyNot(a) => 1 + a.depth(),
            _ => 0,
        }
    }

    /// Leaves (units and atoms) in left-to-right order.
    pub fn leaves(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Formula>) {
        match self {
            Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::Plus(a, b) | Formula::With(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
            Formula::OfCourse(a) | Formula::WhyNot(a) => a.collect_leaves(out),
            leaf => out.push(leaf.clone()),
        }
    }

    /// Replaces `name` by `b` and its dual `name^` by `b^`, in one pass.
    pub fn substitute(&self, name: &str, b: &Formula) -> Formula {
        match self {
            Formula::Atom { name: n, positive } if &**n == name => {
                if *positive {
                    b.clone()
                } else {
                    b.dual()
                }
            }
            Formula::Tensor(l, r) => Formula::tensor(l.substitute(name, b), r.substitute(name, b)),
            Formula::Par(l, r) => Formula::par(l.substitute(name, b), r.substitute(name, b)),
            Formula::Plus(l, r) => Formula::plus(l.substitute(name, b), r.substitute(name, b)),
            Formula::With(l, r) => Formula::with(l.substitute(name, b), r.substitute(name, b)),
            Formula::OfCourse(a) => Formula::of_course(a.substitute(name, b)),
            Formula::WhyNot(a) => Formula::why_not(a.substitute(name, b)),
            other => other.clone(),
        }
    }

    /// Pretty form using the usual Unicode connectives.
    pub fn unicode(&self) -> String {
        let mut out = String::new();
        write_formula(self, &mut out, Notation::Unicode);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Par(..) => 1,
            Formula::Plus(..) => 2,
            Formula::With(..) => 3,
            Formula::Tensor(..) => 4,
            Formula::OfCourse(_) | Formula::WhyNot(_) => 5,
            _ => 6,
        }
    }
}

/// `n`-fold tensor or par of `a`, nested to the left.
///
/// The empty power is the unit (`1` or `⊥`) and the one-fold power is `a`
/// itself, so that `n`-ary dereliction with `n = 1` is plain dereliction.
pub fn power(a: &Formula, n: usize, mode: PowerMode) -> Formula {
    if n == 0 {
        return match mode {
            PowerMode::Tensor => Formula::One,
            PowerMode::Par => Formula::Bot,
        };
    }
    let mut acc = a.clone();
    for _ in 1..n {
        acc = match mode {
            PowerMode::Tensor => Formula::tensor(acc, a.clone()),
            PowerMode::Par => Formula::par(acc, a.clone()),
        };
    }
    acc
}

/// `dup(A) = !(!A ⊸ !A ⊗ !A)`.
pub fn duplicator(a: &Formula) -> Formula {
    let bang = Formula::of_course(a.clone());
    Formula::of_course(Formula::lolli(bang.clone(), Formula::tensor(bang.clone(), bang)))
}

#[derive(Clone, Copy)]
enum Notation {
    Ascii,
    Unicode,
}

fn write_formula(f: &Formula, out: &mut String, notation: Notation) {
    let ascii = matches!(notation, Notation::Ascii);
    match f {
        Formula::Zero => out.push('0'),
        Formula::One => out.push('1'),
        Formula::Top => out.push_str(if ascii { "T" } else { "⊤" }),
        Formula::Bot => out.push_str(if ascii { "B" } else { "⊥" }),
        Formula::Atom { name, positive } => {
            out.push_str(name);
            if !positive {
                out.push_str(if ascii { "^" } else { "⊥" });
            }
        }
        Formula::OfCourse(a) | Formula::WhyNot(a) => {
            out.push(if matches!(f, Formula::OfCourse(_)) { '!' } else { '?' });
            write_child(a, 5, false, out, notation);
        }
        Formula::Tensor(a, b) | Formula::Par(a, b) | Formula::Plus(a, b) | Formula::With(a, b) => {
            let (sym, usym) = match f {
                Formula::Tensor(..) => ("*", "⊗"),
                Formula::Par(..) => ("@", "⅋"),
                Formula::Plus(..) => ("+", "⊕"),
                _ => ("&", "&"),
            };
            let prec = f.precedence();
            write_child(a, prec, false, out, notation);
            out.push(' ');
            out.push_str(if ascii { sym } else { usym });
            out.push(' ');
            write_child(b, prec, true, out, notation);
        }
    }
}

fn write_child(f: &Formula, parent: u8, right: bool, out: &mut String, notation: Notation) {
    let p = f.precedence();
    let parens = if right { p <= parent } else { p < parent };
    if parens {
        out.push('(');
        write_formula(f, out, notation);
        out.push(')');
    } else {
        write_formula(f, out, notation);
    }
}

/// ASCII concrete syntax, which [`parse`] reads back.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        write_formula(self, &mut out, Notation::Ascii);
        f.write_str(&out)
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    #[test]
    fn unit_duality() {
        assert_eq!(Formula::One.dual(), Formula::Bot);
        assert_eq!(f("B + B").dual(), f("1 & 1"));
    }

    #[test]
    fn dual_of_duplicator_body() {
        // !(?A^ @ (!A * !A)) with A = 1, dualised connective by connective.
        let a = f("!(?B @ (!1 * !1))");
        assert_eq!(a.dual(), f("?(!1 * (?B @ ?B))"));
    }

    #[test]
    fn polarity_follows_head() {
        assert_eq!(f("?1").polarity(), Polarity::Positive);
        assert_eq!(f("!1").polarity(), Polarity::Negative);
        assert_eq!(f("1 * B").polarity(), Polarity::Positive);
        assert_eq!(f("X").polarity(), Polarity::Positive);
        assert_eq!(f("X^").polarity(), Polarity::Negative);
    }

    #[test]
    fn powers() {
        let a = f("1 + B");
        assert_eq!(power(&a, 0, PowerMode::Tensor), Formula::One);
        assert_eq!(power(&a, 0, PowerMode::Par), Formula::Bot);
        assert_eq!(power(&a, 1, PowerMode::Par), a);
        assert_eq!(power(&a, 3, PowerMode::Tensor), f("((1 + B) * (1 + B)) * (1 + B)"));
    }

    #[test]
    fn duplicators() {
        assert_eq!(duplicator(&Formula::One), f("!(?B @ (!1 * !1))"));
        assert_eq!(duplicator(&f("B + 1")).polarity(), Polarity::Negative);
        assert_eq!(duplicator(&Formula::Bot).dual(), f("?(!B * (?1 @ ?1))"));
    }

    #[test]
    fn substitution() {
        let a = f("X^ @ ?X^");
        assert_eq!(a.substitute("X", &f("B * B")), f("(1 @ 1) @ ?(1 @ 1)"));
        assert_eq!(Formula::One.substitute("X", &f("B")), Formula::One);
        assert_eq!(f("X").substitute("X", &f("X")), f("X"));
        assert!(a.substitute("X", &f("B * B")).is_atom_free());
    }

    #[test]
    fn unicode_rendering() {
        assert_eq!(f("!(X^ @ B) + T").unicode(), "!(X⊥ ⅋ ⊥) ⊕ ⊤");
    }
}

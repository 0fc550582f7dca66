//! Single-sign mutations of the chain operators, used to show the identity
//! suites can fail.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MutableOp {
    Boundary,
    Connes,
    Cap,
    Lie,
    Correction,
}

impl MutableOp {
    pub const ALL: [MutableOp; 5] = [
        MutableOp::Boundary,
        MutableOp::Connes,
        MutableOp::Cap,
        MutableOp::Lie,
        MutableOp::Correction,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            MutableOp::Boundary => "b",
            MutableOp::Connes => "B",
            MutableOp::Cap => "iota",
            MutableOp::Lie => "L",
            MutableOp::Correction => "S",
        }
    }
}

/// Flips the sign of summand `term` of `op`, wherever that summand exists.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Mutation {
    pub op: MutableOp,
    pub term: usize,
}

impl Mutation {
    /// Sign multiplier for summand `term` of `op`: `true` means flipped.
    pub fn flips(mutation: Option<Mutation>, op: MutableOp, term: usize) -> bool {
        matches!(mutation, Some(m) if m.op == op && m.term == term)
    }
}

impl fmt::Display for Mutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "flip-sign:{}:{}", self.op.symbol(), self.term)
    }
}

/// Parses `flip-sign:<op>[:<term>]`, with `<op>` one of `b`, `B`, `iota`,
/// `L`, `S`.
impl FromStr for Mutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::Input(format!("unrecognized mutation {s:?}; expected flip-sign:<b|B|iota|L|S>[:term]"));
        let mut parts = s.split(':');
        if parts.next() != Some("flip-sign") {
            return Err(bad());
        }
        let op = match parts.next() {
            Some("b") => MutableOp::Boundary,
            Some("B") => MutableOp::Connes,
            Some("iota") | Some("cap") => MutableOp::Cap,
            Some("L") | Some("lie") => MutableOp::Lie,
            Some("S") => MutableOp::Correction,
            _ => return Err(bad()),
        };
        let term = match parts.next() {
            None => 0,
            Some(t) => t.parse().map_err(|_| bad())?,
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(Mutation { op, term })
    }
}

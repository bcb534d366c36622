//! Strand alphabet.
//!
//! Every symbol stands for one 10-mer oligonucleotide. Sequences are written
//! in a compact text form, e.g. `#A[1]1B[1]A[2]0B[2]#XX`, which [`SymbolSeq`]
//! both prints and parses.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Length of one symbol in nucleotides.
pub const MERS_PER_SYMBOL: usize = 10;

/// A vertex label: which of the client / open / rest sets a vertex is in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Label {
    Client,
    Open,
    Rest,
}

impl Label {
    pub const ALL: [Label; 3] = [Label::Client, Label::Open, Label::Rest];

    pub fn digit(self) -> u8 {
        match self {
            Label::Client => 0,
            Label::Open => 1,
            Label::Rest => 2,
        }
    }

    pub fn from_digit(d: u8) -> Option<Label> {
        match d {
            0 => Some(Label::Client),
            1 => Some(Label::Open),
            2 => Some(Label::Rest),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Symbol {
    /// Start / end marker.
    Hash,
    Label(Label),
    /// Unit of the counting and distance tags.
    X,
    /// Left half of a vertex codeword.
    A(u16),
    /// Right half of a vertex codeword.
    B(u16),
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Hash => f.write_str("#"),
            Symbol::Label(l) => write!(f, "{}", l.digit()),
            Symbol::X => f.write_str("X"),
            Symbol::A(i) => write!(f, "A[{i}]"),
            Symbol::B(i) => write!(f, "B[{i}]"),
        }
    }
}

/// A nonempty-by-convention run of symbols. Ordering is lexicographic over
/// symbols, which fixes the iteration order of every tube.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SymbolSeq(pub Vec<Symbol>);

impl SymbolSeq {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        SymbolSeq(symbols)
    }

    /// `[A_i, label, B_i]`, the codeword of vertex `i` carrying `label`.
    pub fn vertex(i: u16, label: Label) -> Self {
        SymbolSeq(vec![Symbol::A(i), Symbol::Label(label), Symbol::B(i)])
    }

    pub fn xs(count: usize) -> Self {
        SymbolSeq(vec![Symbol::X; count])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn length_mers(&self) -> usize {
        MERS_PER_SYMBOL * self.0.len()
    }

    /// True iff `pattern` occurs as a contiguous run.
    pub fn contains(&self, pattern: &[Symbol]) -> bool {
        if pattern.is_empty() {
            return true;
        }
        self.0.windows(pattern.len()).any(|w| w == pattern)
    }

    /// Number of `X` symbols at the tail.
    pub fn trailing_xs(&self) -> usize {
        self.0.iter().rev().take_while(|s| **s == Symbol::X).count()
    }

    pub fn concat(&self, tail: &[Symbol]) -> SymbolSeq {
        let mut v = Vec::with_capacity(self.0.len() + tail.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(tail);
        SymbolSeq(v)
    }
}

impl From<Vec<Symbol>> for SymbolSeq {
    fn from(v: Vec<Symbol>) -> Self {
        SymbolSeq(v)
    }
}

impl fmt::Display for SymbolSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad symbol sequence at byte {pos}: {reason}")]
pub struct ParseSeqError {
    pub pos: usize,
    pub reason: &'static str,
}

impl FromStr for SymbolSeq {
    type Err = ParseSeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes = s.as_bytes();
        let mut out = Vec::new();
        let mut pos = 0;
        while pos < bytes.len() {
            let c = bytes[pos];
            match c {
                b'#' => out.push(Symbol::Hash),
                b'X' => out.push(Symbol::X),
                b'0'..=b'2' => out.push(Symbol::Label(Label::from_digit(c - b'0').unwrap())),
                b'A' | b'B' => {
                    let open = pos + 1;
                    if bytes.get(open) != Some(&b'[') {
                        return Err(ParseSeqError {
                            pos: open,
                            reason: "expected '['",
                        });
                    }
                    let close = s[open..]
                        .find(']')
                        .map(|off| open + off)
                        .ok_or(ParseSeqError {
                            pos: open,
                            reason: "unclosed index",
                        })?;
                    let index: u16 = s[open + 1..close].parse().map_err(|_| ParseSeqError {
                        pos: open + 1,
                        reason: "bad vertex index",
                    })?;
                    out.push(if c == b'A' {
                        Symbol::A(index)
                    } else {
                        Symbol::B(index)
                    });
                    pos = close;
                }
                b' ' | b'\t' | b'\n' => {}
                _ => {
                    return Err(ParseSeqError {
                        pos,
                        reason: "unknown symbol",
                    })
                }
            }
            pos += 1;
        }
        Ok(SymbolSeq(out))
    }
}

//! Strands, duplexes and tubes.
//!
//! A [`Tube`] is a multiset: each distinct molecule is stored once with a
//! positive copy count. Tubes are plain values; the operations that change
//! them live on [`crate::machine::Lab`] so every change is counted.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::symbol::SymbolSeq;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Polarity {
    Sense,
    /// Complement of the stored symbol run. Only splints are antisense.
    Antisense,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Strand {
    pub symbols: SymbolSeq,
    pub polarity: Polarity,
}

impl Strand {
    pub fn sense(symbols: impl Into<SymbolSeq>) -> Self {
        Strand {
            symbols: symbols.into(),
            polarity: Polarity::Sense,
        }
    }

    pub fn antisense(symbols: impl Into<SymbolSeq>) -> Self {
        Strand {
            symbols: symbols.into(),
            polarity: Polarity::Antisense,
        }
    }

    pub fn length_mers(&self) -> usize {
        self.symbols.length_mers()
    }

    pub fn is_sense(&self) -> bool {
        self.polarity == Polarity::Sense
    }
}

impl fmt::Display for Strand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.polarity {
            Polarity::Sense => write!(f, "{}", self.symbols),
            Polarity::Antisense => write!(f, "~{}", self.symbols),
        }
    }
}

/// A ligated sense product held together by the splints covering its
/// junctions.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Duplex {
    pub product: SymbolSeq,
    pub splints_used: Vec<SymbolSeq>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Molecule {
    Single(Strand),
    Double(Duplex),
}

impl Molecule {
    pub fn as_strand(&self) -> Option<&Strand> {
        match self {
            Molecule::Single(s) => Some(s),
            Molecule::Double(_) => None,
        }
    }
}

impl From<Strand> for Molecule {
    fn from(s: Strand) -> Self {
        Molecule::Single(s)
    }
}

impl From<Duplex> for Molecule {
    fn from(d: Duplex) -> Self {
        Molecule::Double(d)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tube {
    name: String,
    contents: BTreeMap<Molecule, u64>,
}

impl Tube {
    pub fn empty(name: impl Into<String>) -> Self {
        Tube {
            name: name.into(),
            contents: BTreeMap::new(),
        }
    }

    pub fn from_strands<I>(name: impl Into<String>, strands: I) -> Self
    where
        I: IntoIterator<Item = Strand>,
    {
        Self::from_molecules(name, strands.into_iter().map(|s| (Molecule::Single(s), 1)))
    }

    /// Builds a tube, summing counts of repeated molecules and dropping zero
    /// counts.
    pub fn from_molecules<I>(name: impl Into<String>, items: I) -> Self
    where
        I: IntoIterator<Item = (Molecule, u64)>,
    {
        let mut contents = BTreeMap::new();
        for (m, c) in items {
            if c > 0 {
                *contents.entry(m).or_insert(0) += c;
            }
        }
        Tube {
            name: name.into(),
            contents,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Total number of molecules, counting copies.
    pub fn size(&self) -> u64 {
        self.contents.values().sum()
    }

    pub fn distinct(&self) -> usize {
        self.contents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.contents.is_empty()
    }

    pub fn count(&self, m: &Molecule) -> u64 {
        self.contents.get(m).copied().unwrap_or(0)
    }

    pub fn contains_strand(&self, s: &Strand) -> bool {
        self.contents.contains_key(&Molecule::Single(s.clone()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Molecule, u64)> {
        self.contents.iter().map(|(m, c)| (m, *c))
    }

    /// Single strands with their counts, in canonical order.
    pub fn strands(&self) -> impl Iterator<Item = (&Strand, u64)> {
        self.iter()
            .filter_map(|(m, c)| m.as_strand().map(|s| (s, c)))
    }

    pub fn sense_strands(&self) -> impl Iterator<Item = &Strand> {
        self.strands().filter(|(s, _)| s.is_sense()).map(|(s, _)| s)
    }

    pub fn has_duplexes(&self) -> bool {
        self.contents
            .keys()
            .any(|m| matches!(m, Molecule::Double(_)))
    }

    pub(crate) fn into_parts(self) -> (String, BTreeMap<Molecule, u64>) {
        (self.name, self.contents)
    }

    pub(crate) fn from_parts(name: String, contents: BTreeMap<Molecule, u64>) -> Self {
        debug_assert!(contents.values().all(|c| *c > 0));
        Tube { name, contents }
    }
}

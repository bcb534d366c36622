use std::collections::BTreeMap;

use super::instance::{Instance, Vertex};
use super::paths::ShortestPaths;
use crate::symbol::{Label, Symbol, SymbolSeq};
use crate::tube::{Strand, Tube};

/// The synthesized oligo pools: sense fragments that tile a candidate
/// strand, antisense splints that join them, and the distance tags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Library {
    pub sense_fragments: Vec<SymbolSeq>,
    pub splints: Vec<SymbolSeq>,
    /// `(i, j)` → `X` repeated `sp(i, j)` times, for every `i != j`.
    pub tag_fragments: BTreeMap<(Vertex, Vertex), SymbolSeq>,
}

pub fn build_library(inst: &Instance, sp: &ShortestPaths) -> Library {
    let n = inst.n() as Vertex;
    let (sense_fragments, splints) = assembly_pools(n);
    let mut tag_fragments = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            if i != j {
                tag_fragments.insert((i, j), SymbolSeq::xs(sp.get(i, j) as usize));
            }
        }
    }
    Library {
        sense_fragments,
        splints,
        tag_fragments,
    }
}

/// Sense fragments and splints whose assembly yields one strand per labeling
/// of vertices `1..=n`.
pub fn assembly_pools(n: Vertex) -> (Vec<SymbolSeq>, Vec<SymbolSeq>) {
    let mut sense_fragments = vec![SymbolSeq(vec![Symbol::Hash, Symbol::A(1)])];
    sense_fragments.extend((1..n).map(|d| SymbolSeq(vec![Symbol::B(d), Symbol::A(d + 1)])));
    sense_fragments.push(SymbolSeq(vec![Symbol::B(n), Symbol::Hash]));
    sense_fragments.extend(Label::ALL.map(|l| SymbolSeq(vec![Symbol::Label(l)])));

    // The lone `#` splint never spans a junction; it is kept for completeness.
    let mut splints = vec![SymbolSeq(vec![Symbol::Hash])];
    for d in 1..=n {
        splints.extend(Label::ALL.map(|l| SymbolSeq::vertex(d, l)));
    }
    (sense_fragments, splints)
}

impl Library {
    /// Splints that join a vertex codeword.
    pub fn label_splints(&self) -> impl Iterator<Item = &SymbolSeq> {
        self.splints.iter().filter(|s| s.len() == 3)
    }

    pub fn tag(&self, i: Vertex, j: Vertex) -> &SymbolSeq {
        &self.tag_fragments[&(i, j)]
    }

    pub fn sense_tube(&self, name: &str) -> Tube {
        Tube::from_strands(
            name,
            self.sense_fragments.iter().cloned().map(Strand::sense),
        )
    }

    pub fn splint_tube(&self, name: &str) -> Tube {
        Tube::from_strands(name, self.splints.iter().cloned().map(Strand::antisense))
    }
}

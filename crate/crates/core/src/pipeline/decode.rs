use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::model::Vertex;
use crate::symbol::{Label, Symbol, SymbolSeq};
use crate::tube::{Strand, Tube};

/// The vertex partition carried by one candidate strand.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SolutionAssignment {
    pub clients: BTreeSet<Vertex>,
    pub open: BTreeSet<Vertex>,
    pub rest: BTreeSet<Vertex>,
    /// Trailing `X` count minus the `k` counting symbols.
    pub tag_units: usize,
}

impl SolutionAssignment {
    pub fn label_of(&self, v: Vertex) -> Option<Label> {
        if self.clients.contains(&v) {
            Some(Label::Client)
        } else if self.open.contains(&v) {
            Some(Label::Open)
        } else if self.rest.contains(&v) {
            Some(Label::Rest)
        } else {
            None
        }
    }

    /// Builds `# (A_i l_i B_i)_{i=1..n} # X^(k + tag_units)`.
    pub fn encode(&self, n: usize, k: usize) -> Strand {
        let mut symbols = Vec::with_capacity(3 * n + 2 + k + self.tag_units);
        symbols.push(Symbol::Hash);
        for v in 1..=n as Vertex {
            let label = self
                .label_of(v)
                .expect("assignment does not cover every vertex");
            symbols.extend_from_slice(SymbolSeq::vertex(v, label).symbols());
        }
        symbols.push(Symbol::Hash);
        symbols.extend(std::iter::repeat_n(Symbol::X, k + self.tag_units));
        Strand::sense(symbols)
    }
}

pub fn decode_strand(s: &Strand, n: usize, k: usize) -> Result<SolutionAssignment, PipelineError> {
    let malformed = |why: &str| PipelineError::MalformedStrand(format!("{s}: {why}"));
    if !s.is_sense() {
        return Err(malformed("antisense strand"));
    }
    let sym = s.symbols.symbols();
    if sym.len() < 3 * n + 2 {
        return Err(malformed("too short"));
    }
    if sym[0] != Symbol::Hash || sym[3 * n + 1] != Symbol::Hash {
        return Err(malformed("missing start or end marker"));
    }
    let mut out = SolutionAssignment {
        clients: BTreeSet::new(),
        open: BTreeSet::new(),
        rest: BTreeSet::new(),
        tag_units: 0,
    };
    for (i, word) in sym[1..=3 * n].chunks(3).enumerate() {
        let v = (i + 1) as Vertex;
        match *word {
            [Symbol::A(a), Symbol::Label(l), Symbol::B(b)] if a == v && b == v => {
                let set = match l {
                    Label::Client => &mut out.clients,
                    Label::Open => &mut out.open,
                    Label::Rest => &mut out.rest,
                };
                set.insert(v);
            }
            _ => return Err(malformed("bad vertex codeword")),
        }
    }
    let tail = &sym[3 * n + 2..];
    if tail.iter().any(|x| *x != Symbol::X) {
        return Err(malformed("tail is not a run of X"));
    }
    out.tag_units = tail
        .len()
        .checked_sub(k)
        .ok_or_else(|| malformed("fewer than k counting symbols"))?;
    Ok(out)
}

/// Decodes every sense strand of a tube.
pub fn decode_tube(t: &Tube, n: usize, k: usize) -> Result<Vec<SolutionAssignment>, PipelineError> {
    t.sense_strands().map(|s| decode_strand(s, n, k)).collect()
}

/// Open sets of the decoded strands, deduplicated and sorted.
pub fn open_sets(solutions: &[SolutionAssignment]) -> Vec<Vec<Vertex>> {
    let set: BTreeSet<Vec<Vertex>> = solutions
        .iter()
        .map(|s| s.open.iter().copied().collect())
        .collect();
    set.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn strand(text: &str) -> Strand {
        Strand::sense(text.parse::<SymbolSeq>().unwrap())
    }

    #[test]
    fn ten_vertex_example() {
        let s = strand("#A[1]1B[1]A[2]0B[2]A[3]1B[3]A[4]2B[4]A[5]0B[5]A[6]1B[6]A[7]2B[7]A[8]2B[8]A[9]2B[9]A[10]2B[10]#");
        let a = decode_strand(&s, 10, 0).unwrap();
        assert_eq!(a.clients.iter().copied().collect::<Vec<_>>(), [2, 5]);
        assert_eq!(a.open.iter().copied().collect::<Vec<_>>(), [1, 3, 6]);
        assert_eq!(a.rest.iter().copied().collect::<Vec<_>>(), [4, 7, 8, 9, 10]);
        assert_eq!(a.tag_units, 0);
    }

    #[test]
    fn one_vertex() {
        let a = decode_strand(&strand("#A[1]1B[1]#"), 1, 0).unwrap();
        assert_eq!(a.open.iter().copied().collect::<Vec<_>>(), [1]);
        assert_eq!(a.tag_units, 0);
    }

    #[test]
    fn counting_symbols_are_subtracted() {
        let a = decode_strand(&strand("#A[1]1B[1]A[2]0B[2]#XXXX"), 2, 1).unwrap();
        assert_eq!(a.tag_units, 3);
    }

    #[test]
    fn malformed_strands() {
        for (text, n, k) in [
            ("#A[1]1B[1]", 1, 0),
            ("#A[2]1B[2]#", 1, 0),
            ("#A[1]1B[1]#X#", 1, 0),
            ("#A[1]1B[1]#", 1, 1),
            ("A[1]1B[1]##", 1, 0),
            ("#A[1]XB[1]#", 1, 0),
        ] {
            assert!(
                matches!(
                    decode_strand(&strand(text), n, k),
                    Err(PipelineError::MalformedStrand(_))
                ),
                "{text} should not decode"
            );
        }
        let anti = Strand::antisense("#A[1]1B[1]#".parse::<SymbolSeq>().unwrap());
        assert!(decode_strand(&anti, 1, 0).is_err());
    }

    proptest! {
        #[test]
        fn decode_inverts_encode(labels in proptest::collection::vec(0u8..3, 1..12), k in 0usize..4, tag in 0usize..20) {
            let n = labels.len();
            let mut a = SolutionAssignment {
                clients: BTreeSet::new(),
                open: BTreeSet::new(),
                rest: BTreeSet::new(),
                tag_units: tag,
            };
            for (i, d) in labels.iter().enumerate() {
                let v = (i + 1) as Vertex;
                match d {
                    0 => a.clients.insert(v),
                    1 => a.open.insert(v),
                    _ => a.rest.insert(v),
                };
            }
            let s = a.encode(n, k);
            prop_assert_eq!(s.length_mers(), 10 * (3 * n + 2 + k + tag));
            prop_assert_eq!(decode_strand(&s, n, k).unwrap(), a);
        }
    }
}

//! Phase 5: find the shortest distance tag among the tagged strands.
//!
//! Strands leaving phase 4 look like `# (A_i l_i B_i)^n # X^(k+t)`, so their
//! length is `10(3n+2+k) + 10t` mers. Both searches scan `t = 1..=bound`
//! and stop at the first non-empty class.

use super::PipelineError;
use crate::machine::Lab;
use crate::symbol::{SymbolSeq, MERS_PER_SYMBOL};
use crate::tube::Tube;

/// Loop bound `Y * n^2`.
pub fn search_bound(max_weight: u32, n: usize) -> u64 {
    max_weight as u64 * (n as u64) * (n as u64)
}

/// Length in mers of a tagged strand with `tag` distance units.
pub fn tagged_length_mers(n: usize, k: usize, tag: u64) -> usize {
    MERS_PER_SYMBOL * (3 * n + 2 + k) + MERS_PER_SYMBOL * tag as usize
}

/// Selection by length: returns the smallest tag value and its strands.
pub fn phase5_extract_selection(
    lab: &mut Lab,
    mut p: Tube,
    n: usize,
    k: usize,
    bound: u64,
) -> Result<(u64, Tube), PipelineError> {
    for i in 1..=bound {
        let (t, rest) = lab.selection(p, tagged_length_mers(n, k, i), "T")?;
        if lab.detect(&t) {
            lab.discard(rest);
            return Ok((i, t));
        }
        p = rest;
    }
    lab.discard(p);
    Err(PipelineError::NoSolution { bound })
}

/// Search by `X` runs: a strand has tag exactly `i` iff it contains
/// `X^(k+i)` but not `X^(k+i+1)`.
pub fn phase5_extract_xsearch(
    lab: &mut Lab,
    mut p: Tube,
    k: usize,
    bound: u64,
) -> Result<(u64, Tube), PipelineError> {
    for i in 1..=bound {
        let run = k + i as usize;
        let (kept, probe) = lab.amplify(p, "T1");
        p = kept;
        let (at_least, shorter) = lab.separation(probe, SymbolSeq::xs(run).symbols(), "T1")?;
        lab.discard(shorter);
        let (longer, exact) = lab.separation(at_least, SymbolSeq::xs(run + 1).symbols(), "T2")?;
        lab.discard(longer);
        if lab.detect(&exact) {
            lab.discard(p);
            return Ok((i, exact.rename("T")));
        }
        lab.discard(exact);
    }
    lab.discard(p);
    Err(PipelineError::NoSolution { bound })
}

//! Threshold search for the min-max-min (k-supplier) objective.
//!
//! For a radius `r`, a candidate survives iff every client has an open
//! facility within `r`. The smallest client/facility distance for which some
//! candidate survives is the optimum.

use std::collections::BTreeSet;

use super::decode::{decode_tube, SolutionAssignment};
use super::PipelineError;
use crate::machine::Lab;
use crate::model::{Instance, ShortestPaths};
use crate::symbol::{Label, SymbolSeq};
use crate::tube::Tube;

/// Runs on the phase 3 output (strands with exactly `k` open facilities).
/// Returns the optimal radius and every optimal assignment.
pub fn threshold_search(
    lab: &mut Lab,
    mut p: Tube,
    inst: &Instance,
    sp: &ShortestPaths,
) -> Result<(u64, Vec<SolutionAssignment>), PipelineError> {
    let radii: BTreeSet<u64> = inst
        .clients()
        .iter()
        .flat_map(|&c| inst.facilities().iter().map(move |&f| sp.get(c, f)))
        .collect();
    for &r in &radii {
        let (kept, mut work) = lab.amplify(p, "W");
        p = kept;
        for &c in inst.clients() {
            let mut covered = Tube::empty("S");
            for &f in inst.facilities().iter().filter(|&&f| sp.get(c, f) <= r) {
                let (hit, rest) =
                    lab.separation(work, SymbolSeq::vertex(f, Label::Open).symbols(), "M")?;
                work = rest;
                covered = lab.merge(covered, hit);
            }
            lab.discard(work);
            work = covered.rename("W");
        }
        if lab.detect(&work) {
            lab.discard(p);
            let solutions = decode_tube(&work, inst.n(), inst.k())?;
            return Ok((r, solutions));
        }
        lab.discard(work);
    }
    lab.discard(p);
    Err(PipelineError::NoSolution {
        bound: radii.last().copied().unwrap_or(0),
    })
}

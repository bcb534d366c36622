//! Phases 1–4: build every labeling, keep the valid ones, keep those with
//! exactly `k` open facilities, and tag each with its distance.

use serde::{Deserialize, Serialize};

use super::PipelineError;
use crate::machine::{Lab, TubeError};
use crate::model::{Instance, Library, PairDistance, Vertex};
use crate::symbol::{Label, Symbol, SymbolSeq};
use crate::tube::Tube;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Phase2Mode {
    /// Clients keep label 0, facilities 1 or 2, everything else 2.
    #[default]
    Corrected,
    /// Clients keep label 0, facilities only label 1, others unconstrained.
    PaperLiteral,
}

/// Assembles one strand per labeling of the `n` vertices.
///
/// Seven bio-steps: merge, annealing, denaturation, two boundary
/// separations and two discards.
pub fn phase1_generate(lab: &mut Lab, lib: &Library, n: usize) -> Result<Tube, PipelineError> {
    let expected = 3u128.checked_pow(n as u32).unwrap_or(u128::MAX);
    if expected > lab.max_strands() as u128 {
        return Err(TubeError::StrandExplosion {
            cap: lab.max_strands(),
        }
        .into());
    }
    let n = n as Vertex;
    let p = lab.merge(lib.sense_tube("P"), lib.splint_tube("Q"));
    let p = lab.annealing(p)?;
    let p = lab.denaturation(p);
    let (tmp, rest) = lab.separation(p, &[Symbol::Hash, Symbol::A(1)], "Ttmp")?;
    lab.discard(rest);
    let (p, rest) = lab.separation(tmp, &[Symbol::B(n), Symbol::Hash], "P")?;
    lab.discard(rest);
    Ok(p)
}

fn drop_label(
    lab: &mut Lab,
    p: Tube,
    v: Vertex,
    label: Label,
    scratch: &str,
) -> Result<Tube, PipelineError> {
    let (bad, p) = lab.separation(p, SymbolSeq::vertex(v, label).symbols(), scratch)?;
    lab.discard(bad);
    Ok(p)
}

/// Removes strands whose labeling is not a candidate solution.
pub fn phase2_filter_valid(
    lab: &mut Lab,
    mut p: Tube,
    inst: &Instance,
    mode: Phase2Mode,
) -> Result<Tube, PipelineError> {
    for v in inst.graph().vertices() {
        let forbidden: &[Label] = if inst.is_client(v) {
            &[Label::Open, Label::Rest]
        } else if inst.is_facility(v) {
            match mode {
                Phase2Mode::Corrected => &[Label::Client],
                Phase2Mode::PaperLiteral => &[Label::Client, Label::Rest],
            }
        } else {
            match mode {
                Phase2Mode::Corrected => &[Label::Client, Label::Open],
                Phase2Mode::PaperLiteral => &[],
            }
        };
        for (i, &label) in forbidden.iter().enumerate() {
            p = drop_label(lab, p, v, label, if i == 0 { "T1" } else { "T2" })?;
        }
    }
    Ok(p)
}

/// Appends one `X` per open facility, then keeps the strands with exactly
/// `k` of them.
pub fn phase3_cardinality(
    lab: &mut Lab,
    mut p: Tube,
    inst: &Instance,
) -> Result<Tube, PipelineError> {
    for &f in inst.facilities() {
        let (open, rest) = lab.separation(p, SymbolSeq::vertex(f, Label::Open).symbols(), "T1")?;
        let open = lab.append(open, &[Symbol::X])?;
        p = lab.merge(rest, open);
    }
    let k = inst.k();
    let (too_many, p) = lab.separation(p, SymbolSeq::xs(k + 1).symbols(), "T1")?;
    lab.discard(too_many);
    let (exact, too_few) = lab.separation(p, SymbolSeq::xs(k).symbols(), "P")?;
    lab.discard(too_few);
    Ok(exact)
}

/// Tags each strand with the distance of the first pair, in descending
/// order, whose client is labeled 0 and whose facility is open on it; that
/// is the longest client to open-facility distance of the strand.
pub fn phase4_tag_distance(
    lab: &mut Lab,
    mut p: Tube,
    pairs: &[PairDistance],
    lib: &Library,
) -> Result<Tube, PipelineError> {
    let mut tagged = Tube::empty("T5");
    for pair in pairs {
        let (with_open, rest) = lab.separation(
            p,
            SymbolSeq::vertex(pair.facility, Label::Open).symbols(),
            "T1",
        )?;
        let (hit, miss) = lab.separation(
            with_open,
            SymbolSeq::vertex(pair.client, Label::Client).symbols(),
            "T2",
        )?;
        p = lab.merge(rest, miss);
        let hit = lab.append(hit, lib.tag(pair.client, pair.facility).symbols())?;
        tagged = lab.merge(tagged, hit);
    }
    // Every candidate has a client and an open facility, so nothing is left.
    lab.detect(&p);
    lab.discard(p);
    Ok(tagged.rename("P"))
}

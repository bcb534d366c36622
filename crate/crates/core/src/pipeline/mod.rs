//! The k-supplier solver expressed as tube operations.
//!
//! Phases 1–3 build the candidates (every `k`-subset of the facilities,
//! clients labeled 0). From there two objectives are available:
//!
//! * the *max–max* pipeline (phases 4 and 5) tags each candidate with its
//!   longest client to open-facility distance and extracts the shortest tag;
//! * the *threshold* pipeline finds the smallest radius at which every
//!   client has an open facility nearby, i.e. the k-supplier optimum.

pub mod decode;
pub mod extract;
pub mod phases;
pub mod threshold;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::machine::{Lab, TubeError};
use crate::model::{
    build_library, descending_pairs, Disconnected, Instance, ShortestPaths, Vertex,
};

pub use decode::{decode_strand, decode_tube, open_sets, SolutionAssignment};
pub use extract::{
    phase5_extract_selection, phase5_extract_xsearch, search_bound, tagged_length_mers,
};
pub use phases::{
    phase1_generate, phase2_filter_valid, phase3_cardinality, phase4_tag_distance, Phase2Mode,
};
pub use threshold::threshold_search;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Tube(#[from] TubeError),
    #[error(transparent)]
    Disconnected(#[from] Disconnected),
    #[error("no solution within {bound} distance units")]
    NoSolution { bound: u64 },
    #[error("malformed strand {0}")]
    MalformedStrand(String),
    #[error("extraction variants disagree: selection gave {selection}, x-search gave {xsearch}")]
    ExtractionMismatch { selection: String, xsearch: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum PipelineKind {
    /// Phases 4–5: minimize the longest client to open-facility distance.
    Paper,
    /// Threshold search: minimize the largest client to nearest-open distance.
    Corrected,
    #[default]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Extraction {
    Selection,
    Xsearch,
    #[default]
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct PipelineOptions {
    pub pipeline: PipelineKind,
    pub phase2: Phase2Mode,
    pub extract: Extraction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseCounts {
    pub p1: u64,
    pub p2: u64,
    pub p3: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub p4: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Extractions {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub selection: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub xsearch: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObjectiveOutcome {
    pub objective: u64,
    /// Open sets of the optimal strands, sorted.
    pub subsets: Vec<Vec<Vertex>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub extraction: Option<Extractions>,
}

/// Result of one solver run. `objective` and `subsets` repeat the max–max
/// outcome when that pipeline ran, otherwise the threshold outcome.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineReport {
    pub objective: u64,
    pub subsets: Vec<Vec<Vertex>>,
    pub bio_steps: u64,
    pub phase_counts: PhaseCounts,
    /// Bio-steps per phase; the values sum to `bio_steps`.
    pub phase_steps: BTreeMap<String, u64>,
    pub mode: PipelineOptions,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub paper: Option<ObjectiveOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub corrected: Option<ObjectiveOutcome>,
}

struct StepMeter {
    last: u64,
    per_phase: BTreeMap<String, u64>,
}

impl StepMeter {
    fn new(lab: &Lab) -> Self {
        StepMeter {
            last: lab.steps(),
            per_phase: BTreeMap::new(),
        }
    }

    fn mark(&mut self, lab: &Lab, phase: &str) {
        let now = lab.steps();
        *self.per_phase.entry(phase.to_string()).or_insert(0) += now - self.last;
        self.last = now;
    }
}

/// Runs phases 1–5 and/or the threshold search on `inst`.
pub fn run_pipeline(
    inst: &Instance,
    options: &PipelineOptions,
    lab: &mut Lab,
) -> Result<PipelineReport, PipelineError> {
    let sp = ShortestPaths::compute(inst.graph())?;
    let lib = build_library(inst, &sp);
    let (n, k) = (inst.n(), inst.k());
    let start = lab.steps();
    let mut meter = StepMeter::new(lab);

    let p = phase1_generate(lab, &lib, n)?;
    let p1 = p.size();
    meter.mark(lab, "p1");
    let p = phase2_filter_valid(lab, p, inst, options.phase2)?;
    let p2 = p.size();
    meter.mark(lab, "p2");
    let p = phase3_cardinality(lab, p, inst)?;
    let p3 = p.size();
    meter.mark(lab, "p3");

    let (for_paper, for_threshold) = match options.pipeline {
        PipelineKind::Both => {
            let (a, b) = lab.amplify(p, "P2");
            meter.mark(lab, "split");
            (Some(a), Some(b))
        }
        PipelineKind::Paper => (Some(p), None),
        PipelineKind::Corrected => (None, Some(p)),
    };

    let mut p4 = None;
    let paper = match for_paper {
        Some(p) => {
            let pairs = descending_pairs(&sp, inst);
            let p = phase4_tag_distance(lab, p, &pairs, &lib)?;
            p4 = Some(p.size());
            meter.mark(lab, "p4");
            let bound = search_bound(inst.graph().max_weight(), n);
            let (selection, xsearch) = match options.extract {
                Extraction::Selection => {
                    let r = phase5_extract_selection(lab, p, n, k, bound)?;
                    meter.mark(lab, "p5_selection");
                    (Some(r), None)
                }
                Extraction::Xsearch => {
                    let r = phase5_extract_xsearch(lab, p, k, bound)?;
                    meter.mark(lab, "p5_xsearch");
                    (None, Some(r))
                }
                Extraction::Both => {
                    let (a, b) = lab.amplify(p, "P2");
                    meter.mark(lab, "split");
                    let sel = phase5_extract_selection(lab, a, n, k, bound)?;
                    meter.mark(lab, "p5_selection");
                    let xs = phase5_extract_xsearch(lab, b, k, bound)?;
                    meter.mark(lab, "p5_xsearch");
                    (Some(sel), Some(xs))
                }
            };
            let decode = |t: &crate::tube::Tube| decode_tube(t, n, k).map(|s| open_sets(&s));
            let sel_sets = selection.as_ref().map(|(_, t)| decode(t)).transpose()?;
            let xs_sets = xsearch.as_ref().map(|(_, t)| decode(t)).transpose()?;
            if let (Some((a, _)), Some((b, _))) = (&selection, &xsearch) {
                if a != b || sel_sets != xs_sets {
                    return Err(PipelineError::ExtractionMismatch {
                        selection: format!("{a} {sel_sets:?}"),
                        xsearch: format!("{b} {xs_sets:?}"),
                    });
                }
            }
            let objective = selection
                .as_ref()
                .or(xsearch.as_ref())
                .map(|(o, _)| *o)
                .expect("one variant ran");
            Some(ObjectiveOutcome {
                objective,
                subsets: sel_sets.or(xs_sets).unwrap_or_default(),
                extraction: Some(Extractions {
                    selection: selection.map(|(o, _)| o),
                    xsearch: xsearch.map(|(o, _)| o),
                }),
            })
        }
        None => None,
    };

    let corrected = match for_threshold {
        Some(p) => {
            let (r, solutions) = threshold_search(lab, p, inst, &sp)?;
            meter.mark(lab, "threshold");
            Some(ObjectiveOutcome {
                objective: r,
                subsets: open_sets(&solutions),
                extraction: None,
            })
        }
        None => None,
    };

    let headline = paper
        .as_ref()
        .or(corrected.as_ref())
        .expect("at least one pipeline ran");
    Ok(PipelineReport {
        objective: headline.objective,
        subsets: headline.subsets.clone(),
        bio_steps: lab.steps() - start,
        phase_counts: PhaseCounts { p1, p2, p3, p4 },
        phase_steps: meter.per_phase,
        mode: *options,
        paper,
        corrected,
    })
}

/// Phases 1–3 followed by the threshold search.
pub fn corrected_threshold_pipeline(
    inst: &Instance,
    lab: &mut Lab,
) -> Result<(u64, Vec<SolutionAssignment>), PipelineError> {
    let sp = ShortestPaths::compute(inst.graph())?;
    let lib = build_library(inst, &sp);
    let p = phase1_generate(lab, &lib, inst.n())?;
    let p = phase2_filter_valid(lab, p, inst, Phase2Mode::Corrected)?;
    let p = phase3_cardinality(lab, p, inst)?;
    threshold_search(lab, p, inst, &sp)
}

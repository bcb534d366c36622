//! Adleman–Lipton test-tube simulator and a molecular algorithm for the
//! minimum k-supplier problem built on top of it.
//!
//! * [`machine::Lab`] runs the tube operations (merge, detect, separation,
//!   selection, annealing, denaturation, discard, append, amplify) on
//!   multiset [`Tube`]s and counts one bio-step per operation.
//! * [`model`] holds instances, shortest paths and the oligo library.
//! * [`pipeline`] expresses the five solver phases purely as tube
//!   operations, plus a threshold pipeline for the min-max-min objective.
//! * [`oracle`] is the brute-force ground truth used to check all of it;
//!   [`campaign`] runs it over [`gen`]erated instances and [`complexity`]
//!   fits step counts against linear and quadratic growth.
//! * [`cli`] is the `ksupplier-dna` command line.

mod anneal;
pub mod campaign;
pub mod cli;
pub mod complexity;
pub mod gen;
pub mod machine;
pub mod model;
pub mod oracle;
pub mod pipeline;
pub mod symbol;
pub mod trace;
pub mod tube;

pub use machine::{Lab, TubeError, DEFAULT_MAX_STRANDS};
pub use symbol::{Label, Symbol, SymbolSeq};
pub use trace::{JsonlSink, TraceEvent, TraceSink, VecSink};
pub use tube::{Duplex, Molecule, Polarity, Strand, Tube};

//! The eight test-tube operations, plus amplification, with bio-step
//! accounting.
//!
//! Every operation consumes the tubes it is given and returns new ones, so a
//! discarded or merged-away tube cannot be touched again:
//!
//! ```compile_fail
//! use ksupplier_dna::{Lab, Tube};
//! let mut lab = Lab::new();
//! let t = Tube::empty("T");
//! lab.discard(t);
//! lab.detect(&t);
//! ```

use std::collections::BTreeMap;
use std::io;

use thiserror::Error;

use crate::anneal;
use crate::symbol::{Symbol, SymbolSeq, MERS_PER_SYMBOL};
use crate::trace::{NullSink, TraceEvent, TraceSink};
use crate::tube::{Duplex, Molecule, Strand, Tube};

pub const DEFAULT_MAX_STRANDS: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TubeError {
    #[error("{op}: tube {tube} still holds double strands")]
    DuplexPresent { op: &'static str, tube: String },
    #[error("append: tube {tube} holds antisense strands")]
    AntisensePresent { tube: String },
    #[error("annealing would produce more than {cap} molecules")]
    StrandExplosion { cap: usize },
    #[error("annealing admits unboundedly long products")]
    NonTerminating,
    #[error("{op}: empty pattern")]
    EmptyPattern { op: &'static str },
    #[error("selection: length {0} is not a positive multiple of {MERS_PER_SYMBOL}")]
    BadLength(usize),
}

/// Executes tube operations, counting one bio-step per call and reporting
/// each one to a trace sink.
pub struct Lab {
    steps: u64,
    max_strands: usize,
    sink: Box<dyn TraceSink>,
    sink_error: Option<io::Error>,
}

impl Default for Lab {
    fn default() -> Self {
        Self::new()
    }
}

impl std::fmt::Debug for Lab {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Lab")
            .field("steps", &self.steps)
            .field("max_strands", &self.max_strands)
            .finish_non_exhaustive()
    }
}

impl Lab {
    pub fn new() -> Self {
        Lab {
            steps: 0,
            max_strands: DEFAULT_MAX_STRANDS,
            sink: Box::new(NullSink),
            sink_error: None,
        }
    }

    pub fn with_sink(mut self, sink: Box<dyn TraceSink>) -> Self {
        self.sink = sink;
        self
    }

    pub fn with_max_strands(mut self, cap: usize) -> Self {
        self.max_strands = cap;
        self
    }

    pub fn steps(&self) -> u64 {
        self.steps
    }

    pub fn max_strands(&self) -> usize {
        self.max_strands
    }

    /// Flushes the sink and returns the first write error, if any.
    pub fn finish(mut self) -> io::Result<Box<dyn TraceSink>> {
        if let Some(e) = self.sink_error.take() {
            return Err(e);
        }
        self.sink.flush()?;
        Ok(self.sink)
    }

    fn record(&mut self, op: &str, tubes: &[&str], param: String, matched: u64, residual: u64) {
        self.steps += 1;
        let event = TraceEvent {
            step: self.steps,
            op: op.to_string(),
            tubes: tubes.iter().map(|s| s.to_string()).collect(),
            param,
            matched,
            residual,
        };
        if let Err(e) = self.sink.record(&event) {
            self.sink_error.get_or_insert(e);
        }
    }

    /// Pours `t2` into `t1`. The result keeps `t1`'s name.
    pub fn merge(&mut self, t1: Tube, t2: Tube) -> Tube {
        let moved = t2.size();
        let names = [t1.name().to_string(), t2.name().to_string()];
        let (name, mut contents) = t1.into_parts();
        let (_, other) = t2.into_parts();
        for (m, c) in other {
            *contents.entry(m).or_insert(0) += c;
        }
        let out = Tube::from_parts(name, contents);
        self.record(
            "merge",
            &[&names[0], &names[1]],
            String::new(),
            moved,
            out.size(),
        );
        out
    }

    pub fn detect(&mut self, t: &Tube) -> bool {
        let yes = !t.is_empty();
        self.record("detect", &[t.name()], String::new(), t.size(), t.size());
        yes
    }

    fn extract<F>(source: Tube, matched_name: &str, pick: F) -> (Tube, Tube)
    where
        F: Fn(&Strand) -> bool,
    {
        let (name, contents) = source.into_parts();
        let (hit, miss): (BTreeMap<_, _>, BTreeMap<_, _>) = contents
            .into_iter()
            .partition(|(m, _)| matches!(m, Molecule::Single(s) if pick(s)));
        (
            Tube::from_parts(matched_name.to_string(), hit),
            Tube::from_parts(name, miss),
        )
    }

    /// Pulls every sense strand containing `pattern` out of `source`.
    /// Returns `(matched, residual)`; the residual keeps the source's name.
    pub fn separation(
        &mut self,
        source: Tube,
        pattern: &[Symbol],
        matched_name: &str,
    ) -> Result<(Tube, Tube), TubeError> {
        if pattern.is_empty() {
            return Err(TubeError::EmptyPattern { op: "separation" });
        }
        if source.has_duplexes() {
            return Err(TubeError::DuplexPresent {
                op: "separation",
                tube: source.name().to_string(),
            });
        }
        let src = source.name().to_string();
        let (hit, miss) = Self::extract(source, matched_name, |s| {
            s.is_sense() && s.symbols.contains(pattern)
        });
        self.record(
            "separation",
            &[&src, matched_name],
            SymbolSeq(pattern.to_vec()).to_string(),
            hit.size(),
            miss.size(),
        );
        Ok((hit, miss))
    }

    /// Pulls every single strand of exactly `length_mers` nucleotides out of
    /// `source`. Returns `(matched, residual)`.
    pub fn selection(
        &mut self,
        source: Tube,
        length_mers: usize,
        matched_name: &str,
    ) -> Result<(Tube, Tube), TubeError> {
        if length_mers == 0 || !length_mers.is_multiple_of(MERS_PER_SYMBOL) {
            return Err(TubeError::BadLength(length_mers));
        }
        let src = source.name().to_string();
        let (hit, miss) = Self::extract(source, matched_name, |s| s.length_mers() == length_mers);
        self.record(
            "selection",
            &[&src, matched_name],
            length_mers.to_string(),
            hit.size(),
            miss.size(),
        );
        Ok((hit, miss))
    }

    /// Hybridizes the sense fragments of `t` on its antisense splints and
    /// returns every maximal feasible duplex, one copy each. Duplexes already
    /// in `t` pass through.
    pub fn annealing(&mut self, t: Tube) -> Result<Tube, TubeError> {
        let (name, contents) = t.into_parts();
        let mut fragments = Vec::new();
        let mut splints = Vec::new();
        let mut passthrough = BTreeMap::new();
        for (m, c) in contents {
            match m {
                Molecule::Single(s) if s.is_sense() => fragments.push(s.symbols),
                Molecule::Single(s) => splints.push(s.symbols),
                Molecule::Double(_) => {
                    passthrough.insert(m, c);
                }
            }
        }
        let products = anneal::assemble(&fragments, &splints, self.max_strands)?;
        let made = products.len() as u64;
        let mut out = passthrough;
        for d in products {
            *out.entry(Molecule::Double(d)).or_insert(0) += 1;
        }
        let out = Tube::from_parts(name, out);
        self.record("annealing", &[out.name()], String::new(), made, out.size());
        Ok(out)
    }

    /// Melts every duplex into its sense product and its splints.
    pub fn denaturation(&mut self, t: Tube) -> Tube {
        let (name, contents) = t.into_parts();
        let mut out: BTreeMap<Molecule, u64> = BTreeMap::new();
        let mut melted = 0;
        for (m, c) in contents {
            match m {
                Molecule::Double(Duplex {
                    product,
                    splints_used,
                }) => {
                    melted += c;
                    *out.entry(Strand::sense(product).into()).or_insert(0) += c;
                    for s in splints_used {
                        *out.entry(Strand::antisense(s).into()).or_insert(0) += c;
                    }
                }
                single => *out.entry(single).or_insert(0) += c,
            }
        }
        let out = Tube::from_parts(name, out);
        self.record(
            "denaturation",
            &[out.name()],
            String::new(),
            melted,
            out.size(),
        );
        out
    }

    pub fn discard(&mut self, t: Tube) {
        self.record("discard", &[t.name()], String::new(), t.size(), 0);
    }

    /// Ligates `fragment` onto the 3' end of every strand in `t`.
    pub fn append(&mut self, t: Tube, fragment: &[Symbol]) -> Result<Tube, TubeError> {
        if fragment.is_empty() {
            return Err(TubeError::EmptyPattern { op: "append" });
        }
        if t.has_duplexes() {
            return Err(TubeError::DuplexPresent {
                op: "append",
                tube: t.name().to_string(),
            });
        }
        if t.strands().any(|(s, _)| !s.is_sense()) {
            return Err(TubeError::AntisensePresent {
                tube: t.name().to_string(),
            });
        }
        let (name, contents) = t.into_parts();
        let out: BTreeMap<Molecule, u64> = contents
            .into_iter()
            .map(|(m, c)| match m {
                Molecule::Single(s) => (Strand::sense(s.symbols.concat(fragment)).into(), c),
                Molecule::Double(_) => unreachable!(),
            })
            .collect();
        let out = Tube::from_parts(name, out);
        self.record(
            "append",
            &[out.name()],
            SymbolSeq(fragment.to_vec()).to_string(),
            out.size(),
            out.size(),
        );
        Ok(out)
    }

    /// Copies a tube (PCR-style). The copy is named `copy_name`.
    pub fn amplify(&mut self, t: Tube, copy_name: &str) -> (Tube, Tube) {
        let copy = t.clone().rename(copy_name);
        self.record(
            "amplify",
            &[t.name(), copy_name],
            String::new(),
            t.size(),
            t.size(),
        );
        (t, copy)
    }
}

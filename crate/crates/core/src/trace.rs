//! Per-operation trace records and where they go.

use std::io::{self, Write};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

/// One bio-step. Serialized field names are the JSONL trace format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEvent {
    pub step: u64,
    pub op: String,
    pub tubes: Vec<String>,
    pub param: String,
    /// Molecules selected, moved or produced by the operation.
    pub matched: u64,
    /// Molecules left in the primary output tube.
    pub residual: u64,
}

pub trait TraceSink: Send {
    fn record(&mut self, event: &TraceEvent) -> io::Result<()>;

    fn flush(&mut self) -> io::Result<()> {
        Ok(())
    }
}

#[derive(Debug, Default)]
pub struct NullSink;

impl TraceSink for NullSink {
    fn record(&mut self, _event: &TraceEvent) -> io::Result<()> {
        Ok(())
    }
}

/// Keeps events in memory. Clones share the same buffer, so a handle can be
/// kept while the sink itself is owned by a [`crate::Lab`].
#[derive(Debug, Default, Clone)]
pub struct VecSink {
    events: Arc<Mutex<Vec<TraceEvent>>>,
}

impl VecSink {
    pub fn events(&self) -> Vec<TraceEvent> {
        self.events.lock().expect("trace buffer poisoned").clone()
    }
}

impl TraceSink for VecSink {
    fn record(&mut self, event: &TraceEvent) -> io::Result<()> {
        self.events
            .lock()
            .expect("trace buffer poisoned")
            .push(event.clone());
        Ok(())
    }
}

/// Writes one JSON object per line.
pub struct JsonlSink<W: Write + Send> {
    out: W,
}

impl<W: Write + Send> JsonlSink<W> {
    pub fn new(out: W) -> Self {
        JsonlSink { out }
    }

    pub fn into_inner(self) -> W {
        self.out
    }
}

impl<W: Write + Send> TraceSink for JsonlSink<W> {
    fn record(&mut self, event: &TraceEvent) -> io::Result<()> {
        serde_json::to_writer(&mut self.out, event)?;
        self.out.write_all(b"\n")
    }

    fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}

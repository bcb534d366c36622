use std::collections::{BTreeSet, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex ids are 1-based.
pub type Vertex = u16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Edge {
    pub u: Vertex,
    pub v: Vertex,
    pub weight: u32,
}

/// Undirected, positively weighted, connected graph on vertices `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
}

impl Graph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Largest edge weight (`Y`).
    pub fn max_weight(&self) -> u32 {
        self.edges.iter().map(|e| e.weight).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n as Vertex
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    graph: Graph,
    clients: BTreeSet<Vertex>,
    facilities: BTreeSet<Vertex>,
    k: usize,
}

impl Instance {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n
    }

    pub fn clients(&self) -> &BTreeSet<Vertex> {
        &self.clients
    }

    pub fn facilities(&self) -> &BTreeSet<Vertex> {
        &self.facilities
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_client(&self, v: Vertex) -> bool {
        self.clients.contains(&v)
    }

    pub fn is_facility(&self, v: Vertex) -> bool {
        self.facilities.contains(&v)
    }

    pub fn to_description(&self) -> InstanceDescription {
        InstanceDescription {
            n: self.graph.n as i64,
            edges: self
                .graph
                .edges
                .iter()
                .map(|e| (e.u as i64, e.v as i64, e.weight as f64))
                .collect(),
            clients: self.clients.iter().map(|&v| v as i64).collect(),
            facilities: self.facilities.iter().map(|&v| v as i64).collect(),
            k: self.k as i64,
        }
    }

    pub fn to_json(&self) -> String {
        self.to_description().to_json()
    }
}

/// Unchecked instance as read from an instance file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstanceDescription {
    pub n: i64,
    pub edges: Vec<(i64, i64, f64)>,
    pub clients: Vec<i64>,
    pub facilities: Vec<i64>,
    pub k: i64,
}

impl InstanceDescription {
    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    /// Compact JSON with integer weights, one trailing newline.
    pub fn to_json(&self) -> String {
        let edges: Vec<String> = self
            .edges
            .iter()
            .map(|&(u, v, w)| {
                let w = if w.fract() == 0.0 {
                    format!("{}", w as i64)
                } else {
                    format!("{w}")
                };
                format!("[{u},{v},{w}]")
            })
            .collect();
        let list = |xs: &[i64]| {
            xs.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!(
            "{{\"n\":{},\"edges\":[{}],\"clients\":[{}],\"facilities\":[{}],\"k\":{}}}\n",
            self.n,
            edges.join(","),
            list(&self.clients),
            list(&self.facilities),
            self.k
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ValidationError {
    #[error("vertex count {0} is out of range")]
    BadVertexCount(i64),
    #[error("{role} vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange {
        role: &'static str,
        vertex: i64,
        n: i64,
    },
    #[error("edge ({0},{1}) is a self-loop")]
    SelfLoop(i64, i64),
    #[error("edge ({u},{v}) has weight {weight}, expected a positive integer")]
    NonIntegerWeight { u: i64, v: i64, weight: f64 },
    #[error("edge ({0},{1}) appears more than once")]
    DuplicateEdge(i64, i64),
    #[error("graph is disconnected: vertex {0} is unreachable from vertex 1")]
    Disconnected(i64),
    #[error("{0} set is empty")]
    EmptySet(&'static str),
    #[error("{role} vertex {vertex} is listed twice")]
    RepeatedVertex { role: &'static str, vertex: i64 },
    #[error("vertex {0} is both a client and a facility")]
    OverlappingCF(i64),
    #[error("k = {k} must lie in 1..={facilities}")]
    BadK { k: i64, facilities: usize },
}

impl ValidationError {
    pub fn kind(&self) -> &'static str {
        match self {
            ValidationError::BadVertexCount(_) => "BadVertexCount",
            ValidationError::VertexOutOfRange { .. } => "VertexOutOfRange",
            ValidationError::SelfLoop(..) => "SelfLoop",
            ValidationError::NonIntegerWeight { .. } => "NonIntegerWeight",
            ValidationError::DuplicateEdge(..) => "DuplicateEdge",
            ValidationError::Disconnected(_) => "Disconnected",
            ValidationError::EmptySet(_) => "EmptySet",
            ValidationError::RepeatedVertex { .. } => "RepeatedVertex",
            ValidationError::OverlappingCF(_) => "OverlappingCF",
            ValidationError::BadK { .. } => "BadK",
        }
    }
}

/// All problems found in one description. Never empty.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationErrors(pub Vec<ValidationError>);

impl ValidationErrors {
    pub fn first(&self) -> &ValidationError {
        &self.0[0]
    }

    pub fn contains_kind(&self, kind: &str) -> bool {
        self.0.iter().any(|e| e.kind() == kind)
    }
}

impl fmt::Display for ValidationErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationErrors {}

/// Largest supported vertex count; strands carry one codeword per vertex.
pub const MAX_VERTICES: i64 = u16::MAX as i64;

pub fn validate_instance(raw: &InstanceDescription) -> Result<Instance, ValidationErrors> {
    let mut errs = Vec::new();
    let n = raw.n;
    if !(1..=MAX_VERTICES).contains(&n) {
        return Err(ValidationErrors(vec![ValidationError::BadVertexCount(n)]));
    }
    let in_range = |x: i64| (1..=n).contains(&x);

    let mut edges = Vec::with_capacity(raw.edges.len());
    let mut seen = HashSet::new();
    for &(u, v, w) in &raw.edges {
        let mut ok = true;
        for x in [u, v] {
            if !in_range(x) {
                errs.push(ValidationError::VertexOutOfRange {
                    role: "edge",
                    vertex: x,
                    n,
                });
                ok = false;
            }
        }
        if u == v {
            errs.push(ValidationError::SelfLoop(u, v));
            ok = false;
        }
        if !(w.is_finite() && w.fract() == 0.0 && w >= 1.0 && w <= u32::MAX as f64) {
            errs.push(ValidationError::NonIntegerWeight { u, v, weight: w });
            ok = false;
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            errs.push(ValidationError::DuplicateEdge(key.0, key.1));
            ok = false;
        }
        if ok {
            edges.push(Edge {
                u: key.0 as Vertex,
                v: key.1 as Vertex,
                weight: w as u32,
            });
        }
    }
    edges.sort();

    let collect_set = |role: &'static str, xs: &[i64], errs: &mut Vec<ValidationError>| {
        let mut set = BTreeSet::new();
        if xs.is_empty() {
            errs.push(ValidationError::EmptySet(role));
        }
        for &x in xs {
            if !in_range(x) {
                errs.push(ValidationError::VertexOutOfRange { role, vertex: x, n });
            } else if !set.insert(x as Vertex) {
                errs.push(ValidationError::RepeatedVertex { role, vertex: x });
            }
        }
        set
    };
    let clients = collect_set("client", &raw.clients, &mut errs);
    let facilities = collect_set("facility", &raw.facilities, &mut errs);
    for v in clients.intersection(&facilities) {
        errs.push(ValidationError::OverlappingCF(*v as i64));
    }
    if raw.k < 1 || raw.k as u64 > facilities.len() as u64 {
        errs.push(ValidationError::BadK {
            k: raw.k,
            facilities: facilities.len(),
        });
    }

    let graph = Graph {
        n: n as usize,
        edges,
    };
    if let Some(v) = first_unreachable(&graph) {
        errs.push(ValidationError::Disconnected(v as i64));
    }

    if errs.is_empty() {
        Ok(Instance {
            graph,
            clients,
            facilities,
            k: raw.k as usize,
        })
    } else {
        Err(ValidationErrors(errs))
    }
}

fn first_unreachable(g: &Graph) -> Option<Vertex> {
    let mut adj = vec![Vec::new(); g.n + 1];
    for e in &g.edges {
        adj[e.u as usize].push(e.v as usize);
        adj[e.v as usize].push(e.u as usize);
    }
    let mut seen = vec![false; g.n + 1];
    let mut stack = vec![1];
    seen[1] = true;
    while let Some(x) = stack.pop() {
        for &y in &adj[x] {
            if !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    (1..=g.n).find(|&v| !seen[v]).map(|v| v as Vertex)
}

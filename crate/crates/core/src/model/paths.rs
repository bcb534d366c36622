use std::cmp::Reverse;

use super::instance::{Graph, Instance, Vertex};
use crate::symbol::MERS_PER_SYMBOL;

/// All-pairs shortest path weights, indexed by 1-based vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortestPaths {
    n: usize,
    dist: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("vertices {0} and {1} are not connected")]
pub struct Disconnected(pub Vertex, pub Vertex);

impl ShortestPaths {
    /// Floyd–Warshall over integer weights.
    pub fn compute(g: &Graph) -> Result<Self, Disconnected> {
        let n = g.n();
        let mut dist = vec![u64::MAX; n * n];
        for i in 0..n {
            dist[i * n + i] = 0;
        }
        for e in g.edges() {
            let (a, b) = (e.u as usize - 1, e.v as usize - 1);
            let w = e.weight as u64;
            if w < dist[a * n + b] {
                dist[a * n + b] = w;
                dist[b * n + a] = w;
            }
        }
        for via in 0..n {
            for i in 0..n {
                let d_iv = dist[i * n + via];
                if d_iv == u64::MAX {
                    continue;
                }
                for j in 0..n {
                    let d_vj = dist[via * n + j];
                    if d_vj != u64::MAX && d_iv + d_vj < dist[i * n + j] {
                        dist[i * n + j] = d_iv + d_vj;
                    }
                }
            }
        }
        if let Some(idx) = dist.iter().position(|&d| d == u64::MAX) {
            return Err(Disconnected(
                (idx / n + 1) as Vertex,
                (idx % n + 1) as Vertex,
            ));
        }
        Ok(ShortestPaths { n, dist })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: Vertex, j: Vertex) -> u64 {
        self.dist[(i as usize - 1) * self.n + (j as usize - 1)]
    }

    pub fn max_distance(&self) -> u64 {
        self.dist.iter().copied().max().unwrap_or(0)
    }

    /// Length in mers of the longest distance tag, used for sizing only.
    pub fn max_tag_mers(&self) -> u64 {
        MERS_PER_SYMBOL as u64 * self.max_distance()
    }
}

/// A client/facility pair and its distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairDistance {
    pub client: Vertex,
    pub facility: Vertex,
    pub distance: u64,
}

/// Every client/facility pair, longest first; ties by client then facility.
pub fn descending_pairs(sp: &ShortestPaths, inst: &Instance) -> Vec<PairDistance> {
    let mut pairs: Vec<PairDistance> = inst
        .clients()
        .iter()
        .flat_map(|&c| {
            inst.facilities().iter().map(move |&f| PairDistance {
                client: c,
                facility: f,
                distance: sp.get(c, f),
            })
        })
        .collect();
    pairs.sort_by_key(|p| (Reverse(p.distance), p.client, p.facility));
    pairs
}

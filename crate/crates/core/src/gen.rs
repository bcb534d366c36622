//! Seeded random instances: a random spanning tree plus extra edges.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::InstanceDescription;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenParams {
    pub n: usize,
    /// Probability of each non-tree edge.
    pub density: f64,
    pub max_weight: u32,
    /// Fixed client count; random when absent.
    pub clients: Option<usize>,
    /// Fixed facility count; random in `1..=n - |C|` when absent.
    pub facilities: Option<usize>,
}

impl GenParams {
    pub fn new(n: usize) -> Self {
        GenParams {
            n,
            density: 0.3,
            max_weight: 9,
            clients: None,
            facilities: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("n must lie in 2..=65535, got {0}")]
    BadVertexCount(usize),
    #[error("density must lie in [0, 1], got {0}")]
    BadDensity(f64),
    #[error("max weight must be positive")]
    ZeroWeight,
    #[error("{clients} clients and {facilities} facilities do not fit in {n} vertices")]
    BadCounts {
        n: usize,
        clients: usize,
        facilities: usize,
    },
}

impl GenParams {
    fn check(&self) -> Result<(), GenError> {
        if self.n < 2 || self.n > crate::model::MAX_VERTICES as usize {
            return Err(GenError::BadVertexCount(self.n));
        }
        if !(0.0..=1.0).contains(&self.density) {
            return Err(GenError::BadDensity(self.density));
        }
        if self.max_weight == 0 {
            return Err(GenError::ZeroWeight);
        }
        let c = self.clients.unwrap_or(1);
        let f = self.facilities.unwrap_or(1);
        if c == 0 || f == 0 || c + f > self.n {
            return Err(GenError::BadCounts {
                n: self.n,
                clients: c,
                facilities: f,
            });
        }
        Ok(())
    }
}

/// One instance from `rng`. Vertices are numbered from 1.
pub fn generate_with<R: Rng>(
    params: &GenParams,
    rng: &mut R,
) -> Result<InstanceDescription, GenError> {
    params.check()?;
    let n = params.n;
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(rng);
    let mut tree = BTreeSet::new();
    for i in 1..n {
        let parent = order[rng.gen_range(0..i)];
        let child = order[i];
        tree.insert((parent.min(child), parent.max(child)));
    }
    let mut edges = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            let tree = tree.contains(&(u, v));
            let extra = rng.gen_bool(params.density);
            if tree || extra {
                let w = rng.gen_range(1..=params.max_weight);
                edges.push((u as i64, v as i64, w as f64));
            }
        }
    }

    let c = params
        .clients
        .unwrap_or_else(|| rng.gen_range(1..=n - params.facilities.unwrap_or(1)));
    let f = params
        .facilities
        .unwrap_or_else(|| rng.gen_range(1..=n - c));
    let mut vertices: Vec<i64> = (1..=n as i64).collect();
    vertices.shuffle(rng);
    let mut clients = vertices[..c].to_vec();
    let mut facilities = vertices[c..c + f].to_vec();
    clients.sort_unstable();
    facilities.sort_unstable();
    let k = rng.gen_range(1..=f) as i64;
    Ok(InstanceDescription {
        n: n as i64,
        edges,
        clients,
        facilities,
        k,
    })
}

pub fn generate(params: &GenParams, seed: u64) -> Result<InstanceDescription, GenError> {
    generate_with(params, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// `count` instances, the `i`-th drawn from seed `seed + i`.
pub fn generate_many(
    params: &GenParams,
    count: usize,
    seed: u64,
) -> Result<Vec<InstanceDescription>, GenError> {
    (0..count as u64)
        .map(|i| generate(params, seed.wrapping_add(i)))
        .collect()
}

//! Brute-force ground truth and report checking.

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::model::{Instance, ShortestPaths, Vertex};
use crate::pipeline::PipelineReport;

/// Largest number of subsets the oracle will enumerate.
pub const MAX_SUBSETS: u128 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ObjectiveKind {
    /// `max_{v in C} max_{u in S} d(v, u)`, what the tagging phase measures.
    PaperMaxmax,
    /// `max_{v in C} min_{u in S} d(v, u)`, the k-supplier objective.
    KsupplierMaxmin,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub objective_kind: ObjectiveKind,
    pub value: u64,
    /// Every subset achieving `value`, each sorted, in lexicographic order.
    pub optimal_subsets: Vec<Vec<Vertex>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} subsets exceed the enumeration guard of {MAX_SUBSETS}")]
    SizeGuard(u128),
}

fn binomial(n: u128, k: u128) -> u128 {
    let k = k.min(n - k.min(n));
    (0..k).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Value of one subset under `kind`.
pub fn subset_value(
    inst: &Instance,
    sp: &ShortestPaths,
    subset: &[Vertex],
    kind: ObjectiveKind,
) -> u64 {
    inst.clients()
        .iter()
        .map(|&c| {
            let ds = subset.iter().map(|&u| sp.get(c, u));
            match kind {
                ObjectiveKind::PaperMaxmax => ds.max(),
                ObjectiveKind::KsupplierMaxmin => ds.min(),
            }
            .expect("subset is nonempty")
        })
        .max()
        .expect("client set is nonempty")
}

pub fn oracle_solve(
    inst: &Instance,
    sp: &ShortestPaths,
    kind: ObjectiveKind,
) -> Result<OracleResult, OracleError> {
    let facilities: Vec<Vertex> = inst.facilities().iter().copied().collect();
    let count = binomial(facilities.len() as u128, inst.k() as u128);
    if count > MAX_SUBSETS {
        return Err(OracleError::SizeGuard(count));
    }
    let mut best = u64::MAX;
    let mut optimal = Vec::new();
    for subset in facilities.iter().copied().combinations(inst.k()) {
        let value = subset_value(inst, sp, &subset, kind);
        if value < best {
            best = value;
            optimal.clear();
        }
        if value == best {
            optimal.push(subset);
        }
    }
    optimal.sort();
    Ok(OracleResult {
        objective_kind: kind,
        value: best,
        optimal_subsets: optimal,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub pass: bool,
    pub kind: ObjectiveKind,
    pub expected: u64,
    pub actual: Option<u64>,
    /// Optimal subsets the report did not list.
    pub missing: Vec<Vec<Vertex>>,
    /// Reported subsets that are not optimal.
    pub extra: Vec<Vec<Vertex>>,
}

/// Compares the outcome for `oracle.objective_kind` in `report` with the
/// oracle.
pub fn verify_report(report: &PipelineReport, oracle: &OracleResult) -> Verdict {
    let outcome = match oracle.objective_kind {
        ObjectiveKind::PaperMaxmax => report.paper.as_ref(),
        ObjectiveKind::KsupplierMaxmin => report.corrected.as_ref(),
    };
    let (actual, subsets) = match outcome {
        Some(o) => (Some(o.objective), o.subsets.clone()),
        None => (None, Vec::new()),
    };
    let missing: Vec<_> = oracle
        .optimal_subsets
        .iter()
        .filter(|s| !subsets.contains(s))
        .cloned()
        .collect();
    let extra: Vec<_> = subsets
        .iter()
        .filter(|s| !oracle.optimal_subsets.contains(s))
        .cloned()
        .collect();
    Verdict {
        pass: actual == Some(oracle.value) && missing.is_empty() && extra.is_empty(),
        kind: oracle.objective_kind,
        expected: oracle.value,
        actual,
        missing,
        extra,
    }
}

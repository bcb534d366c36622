//! Randomized verification campaigns: generate, solve, compare with the
//! oracle.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gen::{generate_with, GenError, GenParams};
use crate::machine::{Lab, DEFAULT_MAX_STRANDS};
use crate::model::{validate_instance, ShortestPaths};
use crate::oracle::{oracle_solve, verify_report, ObjectiveKind, Verdict};
use crate::pipeline::{run_pipeline, Extraction, PipelineKind, PipelineOptions};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CampaignConfig {
    pub count: usize,
    pub n_range: RangeInclusive<usize>,
    pub seed: u64,
    pub density: f64,
    pub max_weight: u32,
    pub max_strands: usize,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            count: 100,
            n_range: 2..=8,
            seed: 0,
            density: 0.3,
            max_weight: 9,
            max_strands: DEFAULT_MAX_STRANDS,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignRow {
    pub index: usize,
    pub seed: u64,
    pub n: usize,
    pub k: usize,
    pub paper: Option<Verdict>,
    pub corrected: Option<Verdict>,
    pub extraction_agrees: bool,
    pub bio_steps: u64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub rows: Vec<CampaignRow>,
    pub passed: usize,
    pub failed: usize,
}

impl CampaignSummary {
    pub fn all_pass(&self) -> bool {
        self.failed == 0
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{:>5} {:>20} {:>3} {:>3} {:>13} {:>13} {:>7}  result",
            "#", "seed", "n", "k", "maxmax", "maxmin", "steps"
        )
        .unwrap();
        let show = |v: &Option<Verdict>| match v {
            Some(v) => format!(
                "{}/{}",
                v.actual.map_or("-".to_string(), |a| a.to_string()),
                v.expected
            ),
            None => "-".to_string(),
        };
        for r in &self.rows {
            write!(
                out,
                "{:>5} {:>20} {:>3} {:>3} {:>13} {:>13} {:>7}  {}",
                r.index,
                r.seed,
                r.n,
                r.k,
                show(&r.paper),
                show(&r.corrected),
                r.bio_steps,
                if r.pass { "PASS" } else { "FAIL" }
            )
            .unwrap();
            if let Some(e) = &r.error {
                write!(out, " ({e})").unwrap();
            }
            out.push('\n');
        }
        writeln!(out, "passed {} of {}", self.passed, self.rows.len()).unwrap();
        out
    }
}

/// Seed of instance `index`.
pub fn instance_seed(seed: u64, index: usize) -> u64 {
    seed.wrapping_add(index as u64)
}

fn run_one(config: &CampaignConfig, index: usize) -> Result<CampaignRow, GenError> {
    let seed = instance_seed(config.seed, index);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(config.n_range.clone());
    let params = GenParams {
        density: config.density,
        max_weight: config.max_weight,
        ..GenParams::new(n)
    };
    let raw = generate_with(&params, &mut rng)?;
    let inst = validate_instance(&raw).expect("generated instances are valid");
    let mut row = CampaignRow {
        index,
        seed,
        n,
        k: inst.k(),
        paper: None,
        corrected: None,
        extraction_agrees: false,
        bio_steps: 0,
        error: None,
        pass: false,
    };
    let options = PipelineOptions {
        pipeline: PipelineKind::Both,
        extract: Extraction::Both,
        ..Default::default()
    };
    let mut lab = Lab::new().with_max_strands(config.max_strands);
    let report = match run_pipeline(&inst, &options, &mut lab) {
        Ok(r) => r,
        Err(e) => {
            row.error = Some(e.to_string());
            return Ok(row);
        }
    };
    row.bio_steps = report.bio_steps;
    row.extraction_agrees = report
        .paper
        .as_ref()
        .and_then(|p| p.extraction.as_ref())
        .is_some_and(|x| x.selection.is_some() && x.selection == x.xsearch);
    let sp = ShortestPaths::compute(inst.graph()).expect("validated instances are connected");
    for kind in [ObjectiveKind::PaperMaxmax, ObjectiveKind::KsupplierMaxmin] {
        match oracle_solve(&inst, &sp, kind) {
            Ok(o) => {
                let v = Some(verify_report(&report, &o));
                match kind {
                    ObjectiveKind::PaperMaxmax => row.paper = v,
                    ObjectiveKind::KsupplierMaxmin => row.corrected = v,
                }
            }
            Err(e) => row.error = Some(e.to_string()),
        }
    }
    row.pass = row.error.is_none()
        && row.extraction_agrees
        && row.paper.as_ref().is_some_and(|v| v.pass)
        && row.corrected.as_ref().is_some_and(|v| v.pass);
    Ok(row)
}

/// Runs every instance, in parallel; rows keep instance order.
pub fn run_campaign(config: &CampaignConfig) -> Result<CampaignSummary, GenError> {
    if config.n_range.is_empty() {
        return Err(GenError::BadVertexCount(*config.n_range.start()));
    }
    let rows: Vec<CampaignRow> = (0..config.count)
        .into_par_iter()
        .map(|i| run_one(config, i))
        .collect::<Result<_, _>>()?;
    let passed = rows.iter().filter(|r| r.pass).count();
    Ok(CampaignSummary {
        failed: rows.len() - passed,
        passed,
        rows,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_campaign() {
        let s = run_campaign(&CampaignConfig {
            count: 0,
            ..Default::default()
        })
        .unwrap();
        assert!(s.rows.is_empty());
        assert!(s.all_pass());
        assert_eq!(s.table().lines().count(), 2);
    }

    #[test]
    fn small_campaign_passes_and_repeats() {
        let config = CampaignConfig {
            count: 6,
            n_range: 2..=5,
            seed: 7,
            ..Default::default()
        };
        let a = run_campaign(&config).unwrap();
        assert!(a.all_pass(), "{}", a.table());
        assert_eq!(
            a.rows.iter().map(|r| r.index).collect::<Vec<_>>(),
            (0..6).collect::<Vec<_>>()
        );
        let b = run_campaign(&config).unwrap();
        assert_eq!(a.table(), b.table());
    }

    #[test]
    fn strand_cap_failure_is_reported() {
        let config = CampaignConfig {
            count: 2,
            n_range: 4..=4,
            max_strands: 10,
            ..Default::default()
        };
        let s = run_campaign(&config).unwrap();
        assert_eq!(s.failed, 2);
        assert!(s.rows.iter().all(|r| r.error.is_some()));
    }

    #[test]
    fn bad_range() {
        #[allow(clippy::reversed_empty_ranges)]
        let config = CampaignConfig {
            count: 1,
            n_range: 5..=3,
            ..Default::default()
        };
        assert!(run_campaign(&config).is_err());
    }
}

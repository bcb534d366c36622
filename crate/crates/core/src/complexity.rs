//! Least-squares checks of step growth against `a·n + b` and `c·n² + d`.
//!
//! Phase 5 runs until the optimal tag is found, so its step count varies
//! between instances of one size. Samples that share `n` are averaged before
//! fitting; the fit tests how the expected count grows with `n`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pipeline::PipelineReport;

/// Largest accepted `‖residual‖ / ‖observed‖`.
pub const MAX_RESIDUAL_RATIO: f64 = 0.10;

/// Bio-steps of one run, split into the linear and quadratic phase groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepSample {
    pub n: usize,
    pub phase1: u64,
    /// Phases 2 and 3.
    pub linear: u64,
    /// Phase 4 and phase 5 by length selection.
    pub selection: u64,
    /// Phase 4 and phase 5 by `X`-run search.
    pub xsearch: u64,
}

impl StepSample {
    pub fn from_report(n: usize, report: &PipelineReport) -> Self {
        let get = |k: &str| report.phase_steps.get(k).copied().unwrap_or(0);
        StepSample {
            n,
            phase1: get("p1"),
            linear: get("p2") + get("p3"),
            selection: get("p4") + get("p5_selection"),
            xsearch: get("p4") + get("p5_xsearch"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Fit {
    /// Leading coefficient.
    pub slope: f64,
    pub intercept: f64,
    pub residual_ratio: f64,
}

impl Fit {
    pub fn pass(&self) -> bool {
        self.slope > 0.0 && self.residual_ratio < MAX_RESIDUAL_RATIO
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitReport {
    pub linear: Fit,
    pub selection: Fit,
    pub xsearch: Fit,
    /// Every sample spent the same number of steps in phase 1.
    pub phase1_steps: Option<u64>,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("need samples for at least 3 distinct n, got {0}")]
    InsufficientData(usize),
}

/// Ordinary least squares of `y` on `x` with intercept.
pub fn least_squares(points: &[(f64, f64)]) -> Fit {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = if sxx == 0.0 { 0.0 } else { sxy / sxx };
    let intercept = my - slope * mx;
    let rss: f64 = points
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum();
    let yy: f64 = points.iter().map(|p| p.1 * p.1).sum();
    let residual_ratio = if yy == 0.0 { 0.0 } else { (rss / yy).sqrt() };
    Fit {
        slope,
        intercept,
        residual_ratio,
    }
}

fn fit_means(
    samples: &[StepSample],
    x: impl Fn(usize) -> f64,
    y: impl Fn(&StepSample) -> u64,
) -> Fit {
    let mut sums: BTreeMap<usize, (f64, f64)> = BTreeMap::new();
    for s in samples {
        let e = sums.entry(s.n).or_default();
        e.0 += y(s) as f64;
        e.1 += 1.0;
    }
    let points: Vec<(f64, f64)> = sums.iter().map(|(&n, &(t, c))| (x(n), t / c)).collect();
    least_squares(&points)
}

pub fn check_step_bounds(samples: &[StepSample]) -> Result<FitReport, FitError> {
    let distinct: BTreeSet<usize> = samples.iter().map(|s| s.n).collect();
    if distinct.len() < 3 {
        return Err(FitError::InsufficientData(distinct.len()));
    }
    let linear = fit_means(samples, |n| n as f64, |s| s.linear);
    let selection = fit_means(samples, |n| (n * n) as f64, |s| s.selection);
    let xsearch = fit_means(samples, |n| (n * n) as f64, |s| s.xsearch);
    let p1: BTreeSet<u64> = samples.iter().map(|s| s.phase1).collect();
    let phase1_steps = if p1.len() == 1 {
        p1.first().copied()
    } else {
        None
    };
    Ok(FitReport {
        linear,
        selection,
        xsearch,
        phase1_steps,
        pass: linear.pass() && selection.pass() && xsearch.pass() && phase1_steps.is_some(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample(n: usize, linear: u64, quadratic: u64) -> StepSample {
        StepSample {
            n,
            phase1: 7,
            linear,
            selection: quadratic,
            xsearch: 3 * quadratic,
        }
    }

    #[test]
    fn exact_line() {
        let f = least_squares(&[(1.0, 5.0), (2.0, 7.0), (3.0, 9.0)]);
        assert!((f.slope - 2.0).abs() < 1e-12);
        assert!((f.intercept - 3.0).abs() < 1e-12);
        assert!(f.residual_ratio < 1e-12);
    }

    #[test]
    fn exact_growth_passes() {
        let samples: Vec<_> = (4..=10)
            .map(|n| sample(n, 4 * n as u64 + 3, (2 * n * n + 5) as u64))
            .collect();
        let r = check_step_bounds(&samples).unwrap();
        assert!(r.pass);
        assert_eq!(r.phase1_steps, Some(7));
        assert!((r.selection.slope - 2.0).abs() < 1e-9);
        assert!((r.xsearch.slope - 6.0).abs() < 1e-9);
    }

    #[test]
    fn exponential_growth_fails_linear_fit() {
        let samples: Vec<_> = (4..=10)
            .map(|n| sample(n, 1 << n, (n * n) as u64))
            .collect();
        let r = check_step_bounds(&samples).unwrap();
        assert!(!r.linear.pass());
        assert!(r.selection.pass());
        assert!(!r.pass);
    }

    #[test]
    fn flat_steps_fail_on_slope() {
        let samples: Vec<_> = (4..=10).map(|n| sample(n, 10, 10)).collect();
        assert!(!check_step_bounds(&samples).unwrap().pass);
    }

    #[test]
    fn repeated_sizes_are_averaged() {
        let samples: Vec<_> = (4..=10)
            .flat_map(|n| {
                let q = (n * n) as u64;
                [
                    sample(n, n as u64, q + 10),
                    sample(n, n as u64, q - 10),
                ]
            })
            .collect();
        let r = check_step_bounds(&samples).unwrap();
        assert!(r.selection.residual_ratio < 1e-9);
        assert!(r.pass);
    }

    #[test]
    fn too_few_sizes() {
        let samples = [sample(4, 1, 1), sample(4, 2, 2), sample(5, 3, 3)];
        assert_eq!(
            check_step_bounds(&samples),
            Err(FitError::InsufficientData(2))
        );
    }
}

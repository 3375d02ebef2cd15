//! Batch verification over generated point sets.
//!
//! Trial `t` uses generator kind `kinds[t % kinds.len()]`, size
//! `n_min + 2 * ((t / kinds.len()) % sizes)` (raised to the kind's minimum
//! size when smaller) and seed `seed ^ t`. Trials run in parallel; results are
//! collected in trial order, so the summary does not depend on scheduling
//! apart from the wall-clock timings.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::classify::verify_main_theorem;
use crate::error::{Error, Result};
use crate::generate::{generate, GeneratorKind, GeneratorSpec};
use crate::matching::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentConfig {
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub seed: u64,
    pub kinds: Vec<GeneratorKind>,
    pub radius: i64,
}

impl ExperimentConfig {
    pub fn new(trials: usize, n_min: usize, n_max: usize, seed: u64, kinds: Vec<GeneratorKind>) -> Self {
        ExperimentConfig { trials, n_min, n_max, seed, kinds, radius: GeneratorSpec::DEFAULT_RADIUS }
    }

    /// Generator parameters of trial `t`.
    pub fn trial_spec(&self, t: usize) -> GeneratorSpec {
        let kind = self.kinds[t % self.kinds.len()];
        let sizes = (self.n_max - self.n_min) / 2 + 1;
        let n = (self.n_min + 2 * ((t / self.kinds.len()) % sizes)).max(kind.min_size());
        let mut spec = GeneratorSpec::new(kind, n, self.seed ^ t as u64);
        spec.radius = self.radius;
        spec
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub seed: u64,
    pub n: usize,
    pub kind: GeneratorKind,
    pub check: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize)]
pub struct TimingStats {
    pub min_ms: f64,
    pub mean_ms: f64,
    pub max_ms: f64,
    pub total_ms: f64,
}

impl TimingStats {
    fn from_samples(ms: &[f64]) -> Self {
        if ms.is_empty() {
            return TimingStats::default();
        }
        let total: f64 = ms.iter().sum();
        TimingStats {
            min_ms: ms.iter().copied().fold(f64::INFINITY, f64::min),
            mean_ms: total / ms.len() as f64,
            max_ms: ms.iter().copied().fold(0.0, f64::max),
            total_ms: total,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentSummary {
    pub trials: usize,
    pub n_range: (usize, usize),
    pub failures: Vec<Failure>,
    /// Witnesses that had to come from the exhaustive oracle.
    pub oracle_fallbacks: usize,
    /// Trials whose size exceeded the counting cap.
    pub pm_skipped: usize,
    pub timings: TimingStats,
}

impl ExperimentSummary {
    pub fn is_clean(&self) -> bool {
        self.failures.is_empty()
    }

    /// Same summary with timings zeroed, for reproducibility comparisons.
    pub fn without_timings(&self) -> Self {
        ExperimentSummary { timings: TimingStats::default(), ..self.clone() }
    }
}

struct TrialOutcome {
    failures: Vec<Failure>,
    fallback: bool,
    pm_skipped: bool,
    ms: f64,
}

fn run_trial(spec: &GeneratorSpec, limits: &Limits) -> TrialOutcome {
    let started = Instant::now();
    let fail = |check: String| Failure { seed: spec.seed, n: spec.n, kind: spec.kind, check };
    let mut outcome = TrialOutcome { failures: Vec::new(), fallback: false, pm_skipped: false, ms: 0.0 };
    match generate(spec).and_then(|set| verify_main_theorem(&set, limits)) {
        Ok(report) => {
            outcome.failures.extend(report.failed_checks.iter().map(|c| fail(c.to_string())));
            outcome.fallback = report.oracle_fallback;
            outcome.pm_skipped = report.pm.is_none();
        }
        Err(Error::GenerationExhausted { .. }) => outcome.failures.push(fail("generation_exhausted".into())),
        Err(e) => outcome.failures.push(fail(format!("error: {e}"))),
    }
    outcome.ms = started.elapsed().as_secs_f64() * 1e3;
    outcome
}

pub fn run_experiment(config: &ExperimentConfig, limits: &Limits) -> Result<ExperimentSummary> {
    if config.n_min % 2 == 1 || config.n_max % 2 == 1 {
        return Err(Error::OddSize(if config.n_min % 2 == 1 { config.n_min } else { config.n_max }));
    }
    if config.n_min < 2 || config.n_min > config.n_max {
        return Err(Error::PreconditionViolated(format!("bad size range [{}, {}]", config.n_min, config.n_max)));
    }
    if config.kinds.is_empty() && config.trials > 0 {
        return Err(Error::PreconditionViolated("no generator kinds given".into()));
    }
    let outcomes: Vec<TrialOutcome> =
        (0..config.trials).into_par_iter().map(|t| run_trial(&config.trial_spec(t), limits)).collect();

    let ms: Vec<f64> = outcomes.iter().map(|o| o.ms).collect();
    Ok(ExperimentSummary {
        trials: config.trials,
        n_range: (config.n_min, config.n_max),
        oracle_fallbacks: outcomes.iter().filter(|o| o.fallback).count(),
        pm_skipped: outcomes.iter().filter(|o| o.pm_skipped).count(),
        failures: outcomes.into_iter().flat_map(|o| o.failures).collect(),
        timings: TimingStats::from_samples(&ms),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_run() {
        let s = run_experiment(&ExperimentConfig::new(0, 4, 4, 7, vec![]), &Limits::default()).unwrap();
        assert_eq!(s.trials, 0);
        assert!(s.failures.is_empty());
        assert_eq!(s.timings, TimingStats::default());
    }

    #[test]
    fn exceptional_trial() {
        let s =
            run_experiment(&ExperimentConfig::new(1, 6, 6, 0, vec![GeneratorKind::Exceptional]), &Limits::default())
                .unwrap();
        assert!(s.is_clean(), "{:?}", s.failures);
    }

    #[test]
    fn trial_schedule() {
        let c = ExperimentConfig::new(10, 4, 8, 100, vec![GeneratorKind::RandomDisk, GeneratorKind::ManyInterior]);
        let specs: Vec<_> = (0..6).map(|t| c.trial_spec(t)).collect();
        assert_eq!(specs.iter().map(|s| s.n).collect::<Vec<_>>(), vec![4, 6, 6, 6, 8, 8]);
        assert_eq!(specs[3].seed, 100 ^ 3);
        assert_eq!(specs[3].kind, GeneratorKind::ManyInterior);
    }

    #[test]
    fn bad_ranges() {
        let kinds = vec![GeneratorKind::Convex];
        assert_eq!(
            run_experiment(&ExperimentConfig::new(1, 5, 8, 0, kinds.clone()), &Limits::default()),
            Err(Error::OddSize(5))
        );
        assert!(run_experiment(&ExperimentConfig::new(1, 8, 4, 0, kinds), &Limits::default()).is_err());
        assert!(run_experiment(&ExperimentConfig::new(1, 4, 4, 0, vec![]), &Limits::default()).is_err());
    }

    #[test]
    fn small_mixed_run_is_clean_and_reproducible() {
        let c = ExperimentConfig::new(40, 4, 10, 2024, GeneratorKind::ALL.to_vec());
        let a = run_experiment(&c, &Limits::default()).unwrap();
        let b = run_experiment(&c, &Limits::default()).unwrap();
        assert!(a.is_clean(), "{:?}", a.failures);
        assert_eq!(a.without_timings(), b.without_timings());
    }
}

//! Batch recovery experiments: configuration, per-trial records and the
//! aggregate report.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use anyhow::{bail, ensure, Context};
use gabrec_core::{linalg, lrmr, GabidulinCode, Tower, TowerSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExperimentConfig {
    pub tower_kind: String,
    pub tower_param: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub radicand: Option<i64>,
    pub n: usize,
    pub k: usize,
    pub planted_rank: usize,
    pub trials: usize,
    pub seed: u64,
    pub height_bound: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(tower: &TowerSpec, n: usize, k: usize, planted_rank: usize, trials: usize, seed: u64) -> Self {
        ExperimentConfig {
            tower_kind: tower.kind_name().to_string(),
            tower_param: tower.param(),
            radicand: tower.radicand(),
            n,
            k,
            planted_rank,
            trials,
            seed,
            height_bound: 10,
            output: None,
        }
    }

    pub fn tower_spec(&self) -> anyhow::Result<TowerSpec> {
        Ok(TowerSpec::from_parts(&self.tower_kind, self.tower_param, self.radicand)?)
    }

    pub fn set_tower(&mut self, spec: &TowerSpec) {
        self.tower_kind = spec.kind_name().to_string();
        self.tower_param = spec.param();
        self.radicand = spec.radicand();
    }

    /// Decoding radius `⌊(n−k)/2⌋`.
    pub fn radius(&self) -> usize {
        self.n.saturating_sub(self.k) / 2
    }

    pub fn within_radius(&self) -> bool {
        self.planted_rank <= self.radius()
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serializes")
    }

    /// Builds the code the experiment runs on, rejecting configurations the
    /// measurement pipeline cannot handle.
    pub fn build_code(&self) -> anyhow::Result<GabidulinCode> {
        let tower = Tower::new(self.tower_spec()?)?;
        let m = tower.degree();
        ensure!(self.n == m, "n = {} must equal the extension degree {m} of {}", self.n, tower.spec());
        ensure!(self.k >= 1 && self.k < self.n, "k = {} must satisfy 1 <= k < n = {}", self.k, self.n);
        ensure!(self.planted_rank <= self.n, "planted rank {} exceeds n = {}", self.planted_rank, self.n);
        ensure!(self.trials >= 1, "trials must be at least 1");
        ensure!(self.height_bound >= 1, "height bound must be at least 1");
        Ok(GabidulinCode::new(Arc::new(tower), self.n, self.k, None)?)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    /// Recovered matrix equals the planted one.
    Recovered,
    /// A different matrix of rank at most the radius with the same
    /// measurements.
    Alternative,
    /// Decoding reported failure.
    Failure,
    /// Decoding claimed success but its output does not explain the
    /// measurements. Never expected.
    Inconsistent,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialRecord {
    pub index: usize,
    pub planted_rank: usize,
    pub within_radius: bool,
    pub success: bool,
    pub recovered_equal: bool,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Tally {
    pub trials: usize,
    pub recovered: usize,
    pub alternatives: usize,
    pub failures: usize,
    pub inconsistent: usize,
}

impl Tally {
    fn add(&mut self, outcome: Outcome) {
        self.trials += 1;
        match outcome {
            Outcome::Recovered => self.recovered += 1,
            Outcome::Alternative => self.alternatives += 1,
            Outcome::Failure => self.failures += 1,
            Outcome::Inconsistent => self.inconsistent += 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Environment {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub rng: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub environment: Environment,
    pub measurements: usize,
    pub radius: usize,
    pub success_rate: f64,
    pub within_radius: Tally,
    pub adversarial: Tally,
    pub trials: Vec<TrialRecord>,
}

impl ExperimentReport {
    /// All within-radius trials recovered the planted matrix and no trial
    /// produced an inconsistent success.
    pub fn verified(&self) -> bool {
        self.within_radius.trials == self.within_radius.recovered
            && self.within_radius.inconsistent + self.adversarial.inconsistent == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn summary(&self) -> String {
        let c = &self.config;
        let label = if c.within_radius() { "within-radius" } else { "adversarial" };
        let t = if c.within_radius() { &self.within_radius } else { &self.adversarial };
        format!(
            "{}:{} n={} k={} rank={} ({label}): {}/{} recovered, {} alternatives, {} failures, {} inconsistent",
            c.tower_kind, c.tower_param, c.n, c.k, c.planted_rank, t.recovered, t.trials, t.alternatives, t.failures, t.inconsistent
        )
    }
}

/// Independent random stream for each trial so results do not depend on
/// scheduling.
fn trial_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

fn run_trial(code: &GabidulinCode, config: &ExperimentConfig, index: usize, timings: bool) -> anyhow::Result<TrialRecord> {
    let tower = code.tower();
    let base = tower.base();
    let mut rng = trial_rng(config.seed, index);
    let start = Instant::now();
    let inst = lrmr::random_low_rank(base, tower.degree(), code.n(), config.planted_rank, config.height_bound, &mut rng)?;
    let record = lrmr::measure(code, &inst.matrix)?;
    let (outcome, failure) = match lrmr::recover(code, &record) {
        Ok(x) if x == inst.matrix => (Outcome::Recovered, None),
        Ok(x) => {
            let consistent = lrmr::measure(code, &x)?.y == record.y && linalg::rank(base, &x) <= code.radius();
            (if consistent { Outcome::Alternative } else { Outcome::Inconsistent }, None)
        }
        Err(e) => (Outcome::Failure, Some(e.to_string())),
    };
    let elapsed = start.elapsed();
    Ok(TrialRecord {
        index,
        planted_rank: config.planted_rank,
        within_radius: config.within_radius(),
        success: outcome == Outcome::Recovered,
        recovered_equal: outcome == Outcome::Recovered,
        outcome,
        failure,
        wall_time_ms: timings.then_some(elapsed.as_secs_f64() * 1e3),
    })
}

/// Runs every trial, in parallel, and assembles the report in index order.
/// Unless `timings` is set the report depends only on the config.
pub fn run(config: &ExperimentConfig, timings: bool) -> anyhow::Result<ExperimentReport> {
    let code = config.build_code()?;
    let trials = (0..config.trials)
        .into_par_iter()
        .map(|i| run_trial(&code, config, i, timings))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mut within = Tally::default();
    let mut adversarial = Tally::default();
    for t in &trials {
        if t.within_radius { within.add(t.outcome) } else { adversarial.add(t.outcome) }
    }
    if trials.len() != config.trials {
        bail!("expected {} trial records, got {}", config.trials, trials.len());
    }
    let successes = trials.iter().filter(|t| t.success).count();
    Ok(ExperimentReport {
        config: config.clone(),
        environment: Environment {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: config.seed,
            rng: "ChaCha8, one stream per trial".to_string(),
        },
        measurements: code.n() * (code.n() - code.k()),
        radius: code.radius(),
        success_rate: successes as f64 / config.trials as f64,
        within_radius: within,
        adversarial,
        trials,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(rank: usize, trials: usize) -> ExperimentConfig {
        ExperimentConfig::new(&TowerSpec::Cyclotomic { p: 5 }, 4, 2, rank, trials, 7)
    }

    #[test]
    fn config_round_trips() {
        let mut c = config(1, 3);
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&c.to_json()).unwrap(), c);
        c.set_tower(&TowerSpec::Kummer { n: 8, radicand: 3 });
        c.output = Some("out/report.json".into());
        assert_eq!(serde_json::from_str::<ExperimentConfig>(&c.to_json()).unwrap(), c);
    }

    #[test]
    fn radius_flag() {
        assert!(config(1, 1).within_radius());
        assert!(!config(2, 1).within_radius());
    }

    #[test]
    fn zero_rank_trial_succeeds() {
        let r = run(&config(0, 1), false).unwrap();
        assert_eq!(r.success_rate, 1.0);
        assert!(r.verified());
    }

    #[test]
    fn rejects_bad_configs() {
        let mut c = config(1, 1);
        c.n = 3;
        assert!(c.build_code().is_err());
        let mut c = config(1, 1);
        c.k = 4;
        assert!(c.build_code().is_err());
        let mut c = config(1, 0);
        c.trials = 0;
        assert!(c.build_code().is_err());
    }

    #[test]
    fn deterministic_across_runs() {
        let a = run(&config(1, 8), false).unwrap().to_json();
        let b = run(&config(1, 8), false).unwrap().to_json();
        assert_eq!(a, b);
    }
}

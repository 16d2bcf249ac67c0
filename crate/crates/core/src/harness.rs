//! Ensemble experiments: random graphs × leader counts × instances, with both
//! augmentation algorithms, the addable-edge bound and Kirchhoff indices
//! recorded per trial.
//!
//! Seeds fan out per trial as
//! `derive_seed(master, "{model}|{parameter}|{num_leaders}|{trial}")`, so
//! adding grid points never perturbs existing trials. Within a trial, stream 0
//! of the trial seed draws graphs (resampling reuses the same stream), stream 1
//! draws leaders, and `derive_seed(trial_seed, "randomized")` seeds the
//! randomized algorithm.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use rand::seq::index;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::augmentation::{forbidden_nonedge_upper_bound, intersection_augment, randomized_augment};
use crate::controllability::{kirchhoff_index, pmi_solvers, LeaderSet};
use crate::error::{Error, Result};
use crate::generate::{GenSpec, Model, ModelKind};
use crate::graph::Graph;
use crate::rng;

pub const MAX_RESAMPLES: usize = 1000;
pub const DESK_INSTANCES: usize = 20;
pub const DESK_REPETITIONS: usize = 30;
pub const FULL_INSTANCES: usize = 100;
pub const FULL_REPETITIONS: usize = 150;

fn default_instances() -> usize {
    DESK_INSTANCES
}

fn default_repetitions() -> usize {
    DESK_REPETITIONS
}

fn default_true() -> bool {
    true
}

fn default_solver() -> String {
    "greedy".into()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub model: ModelKind,
    /// Edge probabilities (Erdős–Rényi) or attachment counts (Barabási–Albert).
    pub parameters: Vec<f64>,
    pub n: usize,
    pub leader_counts: Vec<usize>,
    #[serde(default = "default_instances")]
    pub instances: usize,
    /// Repetitions of the randomized algorithm.
    #[serde(default = "default_repetitions")]
    pub c: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_true")]
    pub resample_until_connected: bool,
    #[serde(default)]
    pub output: Option<PathBuf>,
    /// Wall-clock columns are left empty unless set, keeping CSV output a
    /// pure function of the config.
    #[serde(default)]
    pub record_runtimes: bool,
    #[serde(default = "default_solver")]
    pub pmi_solver: String,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Switches to the full-scale protocol: 100 instances, 150 repetitions.
    pub fn full_scale(mut self) -> Self {
        self.instances = FULL_INSTANCES;
        self.c = FULL_REPETITIONS;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.instances == 0 {
            return Err(Error::input("instances must be at least 1"));
        }
        if self.c == 0 {
            return Err(Error::input("c must be at least 1"));
        }
        if self.parameters.is_empty() || self.leader_counts.is_empty() {
            return Err(Error::input("parameter grid and leader counts must be non-empty"));
        }
        if let Some(&bad) = self.leader_counts.iter().find(|&&m| m == 0 || m > self.n) {
            return Err(Error::input(format!("leader count {bad} must lie in 1..={}", self.n)));
        }
        for &p in &self.parameters {
            self.gen_spec(p, 0)?.validate()?;
        }
        pmi_solvers().get(&self.pmi_solver)?;
        Ok(())
    }

    fn gen_spec(&self, parameter: f64, seed: u64) -> Result<GenSpec> {
        let model = match self.model {
            ModelKind::ErdosRenyi => Model::ErdosRenyi { p: parameter },
            ModelKind::BarabasiAlbert => {
                if parameter.fract() != 0.0 || parameter < 0.0 {
                    return Err(Error::input(format!("attachment count {parameter} is not an integer")));
                }
                Model::BarabasiAlbert { gamma: parameter as usize }
            }
        };
        Ok(GenSpec { model, n: self.n, seed })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentRecord {
    pub model: ModelKind,
    pub parameter: f64,
    pub n: usize,
    pub num_leaders: usize,
    pub trial: usize,
    pub seed: u64,
    pub pmi_length: usize,
    pub edges_before: usize,
    pub edges_after_alg1: usize,
    pub edges_after_alg2: usize,
    /// Addable-edge bound, so `edges_after_* <= edges_before + upper_bound`.
    pub upper_bound: usize,
    pub kirchhoff_before: f64,
    pub kirchhoff_after_alg1: f64,
    pub kirchhoff_after_alg2: f64,
    pub runtime_ms_alg1: Option<f64>,
    pub runtime_ms_alg2: Option<f64>,
    /// Disconnected samples discarded before this trial's graph.
    pub resamples: usize,
}

pub const CSV_HEADER: [&str; 17] = [
    "model",
    "parameter",
    "n",
    "num_leaders",
    "trial",
    "seed",
    "pmi_length",
    "edges_before",
    "edges_after_alg1",
    "edges_after_alg2",
    "upper_bound",
    "kirchhoff_before",
    "kirchhoff_after_alg1",
    "kirchhoff_after_alg2",
    "runtime_ms_alg1",
    "runtime_ms_alg2",
    "resamples",
];

impl ExperimentRecord {
    fn csv_row(&self) -> Vec<String> {
        let opt = |x: Option<f64>| x.map(sig6).unwrap_or_default();
        vec![
            self.model.name().to_string(),
            sig6(self.parameter),
            self.n.to_string(),
            self.num_leaders.to_string(),
            self.trial.to_string(),
            self.seed.to_string(),
            self.pmi_length.to_string(),
            self.edges_before.to_string(),
            self.edges_after_alg1.to_string(),
            self.edges_after_alg2.to_string(),
            self.upper_bound.to_string(),
            sig6(self.kirchhoff_before),
            sig6(self.kirchhoff_after_alg1),
            sig6(self.kirchhoff_after_alg2),
            opt(self.runtime_ms_alg1),
            opt(self.runtime_ms_alg2),
            self.resamples.to_string(),
        ]
    }
}

/// Shortest decimal for `x` rounded to six significant digits.
pub fn sig6(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.5e}").parse().expect("formatted float parses");
    rounded.to_string()
}

/// Means over the instances of one `(parameter, num_leaders)` grid point.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PointSummary {
    pub parameter: f64,
    pub num_leaders: usize,
    pub instances: usize,
    pub pmi_length: f64,
    pub edges_before: f64,
    pub edges_after_alg1: f64,
    pub edges_after_alg2: f64,
    pub upper_bound: f64,
    pub kirchhoff_before: f64,
    pub kirchhoff_after_alg1: f64,
    pub kirchhoff_after_alg2: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentOutcome {
    /// Sorted by grid order: parameter, leader count, trial.
    pub records: Vec<ExperimentRecord>,
    pub summary: Vec<PointSummary>,
}

impl ExperimentOutcome {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
        w.write_record(CSV_HEADER)?;
        for r in &self.records {
            w.write_record(r.csv_row())?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_csv(&mut buf)?;
        Ok(String::from_utf8(buf).expect("CSV output is UTF-8"))
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("plain data serializes")
    }
}

pub fn trial_seed(master: u64, model: ModelKind, parameter: f64, num_leaders: usize, trial: usize) -> u64 {
    rng::derive_seed(master, &format!("{model}|{parameter}|{num_leaders}|{trial}"))
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<ExperimentOutcome> {
    config.validate()?;
    let keys: Vec<(f64, usize, usize)> = config
        .parameters
        .iter()
        .flat_map(|&p| {
            config
                .leader_counts
                .iter()
                .flat_map(move |&m| (0..config.instances).map(move |t| (p, m, t)))
        })
        .collect();
    let records = keys
        .par_iter()
        .map(|&(p, m, t)| run_trial(config, p, m, t))
        .collect::<Result<Vec<_>>>()?;
    let summary = summarize(config, &records);
    Ok(ExperimentOutcome { records, summary })
}

fn summarize(config: &ExperimentConfig, records: &[ExperimentRecord]) -> Vec<PointSummary> {
    let mut out = Vec::new();
    for &p in &config.parameters {
        for &m in &config.leader_counts {
            let point: Vec<&ExperimentRecord> =
                records.iter().filter(|r| r.parameter == p && r.num_leaders == m).collect();
            let mean = |f: &dyn Fn(&ExperimentRecord) -> f64| point.iter().map(|r| f(r)).sum::<f64>() / point.len() as f64;
            out.push(PointSummary {
                parameter: p,
                num_leaders: m,
                instances: point.len(),
                pmi_length: mean(&|r| r.pmi_length as f64),
                edges_before: mean(&|r| r.edges_before as f64),
                edges_after_alg1: mean(&|r| r.edges_after_alg1 as f64),
                edges_after_alg2: mean(&|r| r.edges_after_alg2 as f64),
                upper_bound: mean(&|r| r.upper_bound as f64),
                kirchhoff_before: mean(&|r| r.kirchhoff_before),
                kirchhoff_after_alg1: mean(&|r| r.kirchhoff_after_alg1),
                kirchhoff_after_alg2: mean(&|r| r.kirchhoff_after_alg2),
            });
        }
    }
    out
}

fn draw_graph(config: &ExperimentConfig, parameter: f64, seed: u64) -> Result<(Graph, usize)> {
    let spec = config.gen_spec(parameter, seed)?;
    let mut graph_rng = rng::seeded_stream(seed, 0);
    let attempts = if config.resample_until_connected { MAX_RESAMPLES } else { 1 };
    for resamples in 0..attempts {
        let g = spec.sample(&mut graph_rng)?;
        if g.is_connected() {
            return Ok((g, resamples));
        }
    }
    Err(Error::domain(format!(
        "no connected {} sample (n = {}, parameter = {parameter}) in {attempts} attempt(s)",
        config.model, config.n
    )))
}

/// One trial of the grid; pure function of `(config, parameter, num_leaders, trial)`.
pub fn run_trial(
    config: &ExperimentConfig,
    parameter: f64,
    num_leaders: usize,
    trial: usize,
) -> Result<ExperimentRecord> {
    let seed = trial_seed(config.seed, config.model, parameter, num_leaders, trial);
    let (g, resamples) = draw_graph(config, parameter, seed)?;
    let leaders = LeaderSet::new(
        index::sample(&mut rng::seeded_stream(seed, 1), config.n, num_leaders).into_vec(),
        config.n,
    )?;
    let pmi = pmi_solvers().get(&config.pmi_solver)?.solve(&g, &leaders)?;

    let started = Instant::now();
    let alg1 = intersection_augment(&g, &leaders, &pmi)?;
    let t1 = started.elapsed();
    let started = Instant::now();
    let alg2 = randomized_augment(&g, &leaders, &pmi, rng::derive_seed(seed, "randomized"), config.c)?;
    let t2 = started.elapsed();
    let timing = |d: std::time::Duration| config.record_runtimes.then_some(d.as_secs_f64() * 1e3);

    Ok(ExperimentRecord {
        model: config.model,
        parameter,
        n: config.n,
        num_leaders,
        trial,
        seed,
        pmi_length: pmi.len(),
        edges_before: g.edge_count(),
        edges_after_alg1: alg1.edges_after(),
        edges_after_alg2: alg2.edges_after(),
        upper_bound: forbidden_nonedge_upper_bound(&g, &leaders, &pmi)?,
        kirchhoff_before: kirchhoff_index(&g)?,
        kirchhoff_after_alg1: kirchhoff_index(&alg1.augmented)?,
        kirchhoff_after_alg2: kirchhoff_index(&alg2.augmented)?,
        runtime_ms_alg1: timing(t1),
        runtime_ms_alg2: timing(t2),
        resamples,
    })
}

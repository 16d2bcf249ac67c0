use std::time::Duration;

use serde::Serialize;

use crate::graph::{Edge, Graph};

#[derive(Clone, Debug, PartialEq)]
pub struct AugmentationResult {
    pub algorithm: String,
    pub seed: Option<u64>,
    pub repetitions: Option<usize>,
    pub edges_before: usize,
    /// The augmented graph `(V, E')`.
    pub augmented: Graph,
    /// `E' \ E` in ascending order.
    pub added: Vec<Edge>,
    pub upper_bound_addable: usize,
    pub pmi_length: Option<usize>,
    pub runtime: Duration,
}

impl AugmentationResult {
    pub(crate) fn new(algorithm: &str, original: &Graph, augmented: Graph, upper_bound_addable: usize) -> Self {
        let added = augmented.edges().difference(original.edges()).copied().collect();
        AugmentationResult {
            algorithm: algorithm.to_string(),
            seed: None,
            repetitions: None,
            edges_before: original.edge_count(),
            augmented,
            added,
            upper_bound_addable,
            pmi_length: None,
            runtime: Duration::ZERO,
        }
    }

    pub fn edges_after(&self) -> usize {
        self.augmented.edge_count()
    }

    /// Serializable view. With `timing == false` the runtime is emitted as
    /// `null`, which makes the output a pure function of the inputs.
    pub fn report(&self, timing: bool) -> AugmentationReport {
        AugmentationReport {
            algorithm: self.algorithm.clone(),
            seed: self.seed,
            c: self.repetitions,
            edges_before: self.edges_before,
            edges_after: self.edges_after(),
            added_edges: self.added.clone(),
            upper_bound: self.upper_bound_addable,
            pmi_length: self.pmi_length,
            runtime_ms: timing.then_some(self.runtime.as_secs_f64() * 1e3),
        }
    }

    pub fn to_json(&self, timing: bool) -> String {
        serde_json::to_string_pretty(&self.report(timing)).expect("plain data serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AugmentationReport {
    pub algorithm: String,
    pub seed: Option<u64>,
    pub c: Option<usize>,
    pub edges_before: usize,
    pub edges_after: usize,
    pub added_edges: Vec<Edge>,
    pub upper_bound: usize,
    pub pmi_length: Option<usize>,
    pub runtime_ms: Option<f64>,
}

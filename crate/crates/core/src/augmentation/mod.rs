//! Edge augmentation that preserves monitored leader distances.
//!
//! [`dpea_solve`] handles one node pair with a clique chain. The multi-pair
//! algorithms ([`intersection_augment`], [`randomized_augment`]) implement
//! [`Augmenter`] and are looked up by name through [`augmenters`].

mod bound;
mod brute;
mod dpea;
mod intersection;
mod randomized;
mod result;

use std::sync::Arc;

pub use bound::{addable_upper_bound, forbidden_nonedge_upper_bound, success_probability_bound};
pub use brute::{dpea_brute_force, BruteForceOptimum, BRUTE_FORCE_MAX_NODES};
pub use dpea::{
    build_level_partition, classify_nodes, clique_chain, dpea_solve, CliqueChain, DpeaInstance, LevelPartition,
    NodeClass,
};
pub use intersection::{intersection_augment, Intersection};
pub use randomized::{randomized_augment, Randomized};
pub use result::{AugmentationReport, AugmentationResult};

use crate::controllability::{LeaderSet, PmiSequence};
use crate::error::Result;
use crate::graph::{Graph, NodeId};
use crate::registry::{Named, Registry};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AugmentOptions {
    pub seed: u64,
    /// Repetitions for randomized strategies (`c`); ignored by deterministic ones.
    pub repetitions: usize,
}

impl Default for AugmentOptions {
    fn default() -> Self {
        AugmentOptions { seed: 0, repetitions: 30 }
    }
}

pub trait Augmenter: Named + Send + Sync {
    fn augment(
        &self,
        g: &Graph,
        leaders: &LeaderSet,
        pmi: &PmiSequence,
        options: &AugmentOptions,
    ) -> Result<AugmentationResult>;
}

/// Registry with the built-in algorithms: `intersect` and `randomized`.
pub fn augmenters() -> Registry<dyn Augmenter> {
    let mut r: Registry<dyn Augmenter> = Registry::new("augmentation algorithm");
    r.register(Arc::new(Intersection)).register(Arc::new(Randomized));
    r
}

/// `(leader, node)` pairs whose distance must survive augmentation. Pairs
/// where the PMI node is the leader itself are dropped.
pub fn monitored_pairs(leaders: &LeaderSet, pmi: &PmiSequence) -> Vec<(NodeId, NodeId)> {
    leaders
        .as_slice()
        .iter()
        .flat_map(|&l| pmi.nodes().filter(move |&v| v != l).map(move |v| (l, v)))
        .collect()
}

//! Best-of-`c` random scans over the complement.
//!
//! One repetition shuffles `E^c` and walks it once, keeping an edge iff the
//! accumulated graph plus that edge still has every monitored leader
//! distance. Repetition `r` shuffles with stream `r` of the seed, so runs with
//! more repetitions extend runs with fewer.

use std::time::Instant;

use rand::seq::SliceRandom;
use rayon::prelude::*;

use super::{forbidden_nonedge_upper_bound, monitored_pairs, AugmentOptions, AugmentationResult, Augmenter};
use crate::controllability::{validate_pmi, LeaderSet, PmiSequence};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};
use crate::registry::Named;
use crate::rng;

/// Leader distance targets that must not change.
pub(crate) struct Monitor {
    /// `(leader, [(node, distance)])`, leaders without targets omitted.
    targets: Vec<(NodeId, Vec<(NodeId, usize)>)>,
}

impl Monitor {
    pub(crate) fn new(g: &Graph, pairs: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut targets: Vec<(NodeId, Vec<(NodeId, usize)>)> = Vec::new();
        for &(l, v) in pairs {
            let slot = match targets.iter().position(|(x, _)| *x == l) {
                Some(i) => i,
                None => {
                    targets.push((l, Vec::new()));
                    targets.len() - 1
                }
            };
            targets[slot].1.push((v, 0));
        }
        for (l, list) in &mut targets {
            let d = g.bfs_unchecked(*l);
            for (v, t) in list.iter_mut() {
                *t = d[*v].ok_or_else(|| Error::domain(format!("nodes {l} and {v} are not connected")))?;
            }
        }
        Ok(Monitor { targets })
    }

    fn holds(&self, slot: usize, dist: &[Option<usize>]) -> bool {
        self.targets[slot].1.iter().all(|&(v, t)| dist[v] == Some(t))
    }
}

/// Single pass over `order`. Distances from each monitored leader are kept
/// current; an edge whose endpoints are within one hop of each other in every
/// leader's BFS layering cannot change any of those distances and is accepted
/// without a search. Otherwise the affected leaders are re-searched on the
/// tentative graph.
pub(crate) fn scan(g: &Graph, monitor: &Monitor, order: &[Edge]) -> Vec<Edge> {
    let mut h = g.clone();
    let mut dist: Vec<Vec<Option<usize>>> = monitor.targets.iter().map(|(l, _)| h.bfs_unchecked(*l)).collect();
    let mut accepted = Vec::new();
    let mut fresh = Vec::new();
    for &e in order {
        let affected: Vec<usize> = (0..dist.len())
            .filter(|&s| match (dist[s][e.u()], dist[s][e.v()]) {
                (Some(x), Some(y)) => x.abs_diff(y) >= 2,
                _ => true,
            })
            .collect();
        h.insert(e);
        fresh.clear();
        let mut legal = true;
        for &s in &affected {
            let d = h.bfs_unchecked(monitor.targets[s].0);
            if !monitor.holds(s, &d) {
                legal = false;
                break;
            }
            fresh.push((s, d));
        }
        if legal {
            for (s, d) in fresh.drain(..) {
                dist[s] = d;
            }
            accepted.push(e);
        } else {
            h.remove(e);
        }
    }
    accepted
}

pub fn randomized_augment(
    g: &Graph,
    leaders: &LeaderSet,
    pmi: &PmiSequence,
    seed: u64,
    repetitions: usize,
) -> Result<AugmentationResult> {
    let start = Instant::now();
    if repetitions == 0 {
        return Err(Error::input("repetitions must be at least 1"));
    }
    validate_pmi(g, leaders, pmi)?;
    let monitor = Monitor::new(g, &monitored_pairs(leaders, pmi))?;
    let complement: Vec<Edge> = g.complement_edges().into_iter().collect();

    let runs: Vec<Vec<Edge>> = (0..repetitions)
        .into_par_iter()
        .map(|r| {
            let mut order = complement.clone();
            order.shuffle(&mut rng::seeded_stream(seed, r as u64));
            scan(g, &monitor, &order)
        })
        .collect();
    // First repetition with the most accepted edges.
    let best = runs
        .into_iter()
        .reduce(|best, run| if run.len() > best.len() { run } else { best })
        .expect("repetitions >= 1");

    let mut augmented = g.clone();
    for e in best {
        augmented.insert(e);
    }
    let bound = forbidden_nonedge_upper_bound(g, leaders, pmi)?;
    let mut result = AugmentationResult::new("randomized", g, augmented, bound);
    result.seed = Some(seed);
    result.repetitions = Some(repetitions);
    result.pmi_length = Some(pmi.len());
    result.runtime = start.elapsed();
    Ok(result)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Randomized;

impl Named for Randomized {
    fn name(&self) -> &'static str {
        "randomized"
    }
}

impl Augmenter for Randomized {
    fn augment(
        &self,
        g: &Graph,
        leaders: &LeaderSet,
        pmi: &PmiSequence,
        options: &AugmentOptions,
    ) -> Result<AugmentationResult> {
        randomized_augment(g, leaders, pmi, options.seed, options.repetitions)
    }
}

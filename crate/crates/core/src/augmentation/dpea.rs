//! Maximum edge augmentation that preserves the distance of a single pair.
//!
//! With `k = d(a, b) > 1` an optimum is a clique chain: nodes are split into
//! levels `S_0 = {a}, ..., S_k = {b}`, every level is a clique and consecutive
//! levels are completely joined. Levels come from the two BFS passes:
//!
//! * `d(a, v) <= ⌊k/2⌋` puts `v` at level `d(a, v)`;
//! * otherwise `d(b, v) <= ⌈k/2⌉ - 1` puts `v` at level `k - d(b, v)`;
//! * remaining (free) nodes go to level `⌊k/2⌋`.
//!
//! Every original edge joins equal or consecutive levels under this rule, so
//! the chain contains `E`.

use std::collections::BTreeSet;
use std::time::Instant;

use super::bound::addable_upper_bound;
use super::result::AugmentationResult;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};

type Distances = Vec<Option<usize>>;

#[derive(Clone, Copy, Debug)]
pub struct DpeaInstance<'g> {
    g: &'g Graph,
    a: NodeId,
    b: NodeId,
}

impl<'g> DpeaInstance<'g> {
    pub fn new(g: &'g Graph, a: NodeId, b: NodeId) -> Result<Self> {
        g.check_node(a)?;
        g.check_node(b)?;
        if a == b {
            return Err(Error::input(format!("pair endpoints must differ (both {a})")));
        }
        Ok(DpeaInstance { g, a, b })
    }

    pub fn graph(&self) -> &'g Graph {
        self.g
    }

    pub fn a(&self) -> NodeId {
        self.a
    }

    pub fn b(&self) -> NodeId {
        self.b
    }

    /// BFS distances from both endpoints and `k = d(a, b)`.
    fn distances(&self) -> Result<(Distances, Distances, usize)> {
        let from_a = self.g.bfs_unchecked(self.a);
        let k = from_a[self.b]
            .ok_or_else(|| Error::domain(format!("nodes {} and {} are not connected", self.a, self.b)))?;
        let from_b = self.g.bfs_unchecked(self.b);
        Ok((from_a, from_b, k))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NodeClass {
    /// On some shortest `a`-`b` path.
    Fixed,
    Free,
}

pub fn classify_nodes(inst: &DpeaInstance<'_>) -> Result<Vec<NodeClass>> {
    let (from_a, from_b, k) = inst.distances()?;
    Ok(from_a
        .iter()
        .zip(&from_b)
        .map(|pair| match pair {
            (Some(x), Some(y)) if x + y == k => NodeClass::Fixed,
            _ => NodeClass::Free,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPartition {
    levels: Vec<Vec<NodeId>>,
    level_of: Vec<usize>,
}

impl LevelPartition {
    /// Builds a partition from a per-node level map. Levels must be
    /// contiguous from 0 and every level non-empty.
    pub fn from_levels(level_of: Vec<usize>) -> Result<Self> {
        let k = level_of.iter().copied().max().unwrap_or(0);
        let mut levels = vec![Vec::new(); k + 1];
        for (v, &l) in level_of.iter().enumerate() {
            levels[l].push(v);
        }
        if let Some(empty) = levels.iter().position(Vec::is_empty) {
            return Err(Error::input(format!("level {empty} is empty")));
        }
        Ok(LevelPartition { levels, level_of })
    }

    pub fn levels(&self) -> &[Vec<NodeId>] {
        &self.levels
    }

    pub fn level_of(&self, v: NodeId) -> usize {
        self.level_of[v]
    }

    /// Index of the last level, i.e. the preserved distance.
    pub fn k(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }
}

pub fn build_level_partition(inst: &DpeaInstance<'_>) -> Result<LevelPartition> {
    let (from_a, from_b, k) = inst.distances()?;
    if k == 1 && inst.g.n() > 2 {
        return Err(Error::domain(
            "adjacent pair: no level partition with singleton end levels exists (the optimum is the complete graph)",
        ));
    }
    let a_side = k / 2;
    let b_side = k - a_side - 1;
    let mut level_of = Vec::with_capacity(inst.g.n());
    for v in 0..inst.g.n() {
        let level = match (from_a[v], from_b[v]) {
            (Some(x), _) if x <= a_side => x,
            (_, Some(y)) if y <= b_side => k - y,
            (Some(_), Some(_)) => a_side,
            _ => {
                return Err(Error::domain(format!(
                    "node {v} is unreachable from both {} and {}",
                    inst.a, inst.b
                )))
            }
        };
        level_of.push(level);
    }
    LevelPartition::from_levels(level_of)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueChain {
    pub partition: LevelPartition,
    pub edges: BTreeSet<Edge>,
}

impl CliqueChain {
    /// `Σ C(|S_i|, 2) + Σ |S_i| |S_{i+1}|`.
    pub fn expected_edge_count(sizes: &[usize]) -> usize {
        let within: usize = sizes.iter().map(|&s| s * s.saturating_sub(1) / 2).sum();
        let across: usize = sizes.windows(2).map(|w| w[0] * w[1]).sum();
        within + across
    }
}

/// All within-level pairs plus all consecutive-level pairs.
pub fn clique_chain(partition: LevelPartition) -> CliqueChain {
    let mut edges = BTreeSet::new();
    let levels = partition.levels();
    for (i, level) in levels.iter().enumerate() {
        for (x, &u) in level.iter().enumerate() {
            for &v in &level[x + 1..] {
                edges.insert(Edge::ordered(u, v));
            }
            if let Some(next) = levels.get(i + 1) {
                for &v in next {
                    edges.insert(Edge::ordered(u, v));
                }
            }
        }
    }
    CliqueChain { partition, edges }
}

/// `E'` for one pair: the complete edge set when `k = 1`, otherwise the
/// clique chain over the level partition.
pub(crate) fn dpea_edges(inst: &DpeaInstance<'_>) -> Result<BTreeSet<Edge>> {
    let k = inst.distances()?.2;
    if k == 1 {
        return Ok(Graph::complete(inst.g.n())?.edges().clone());
    }
    Ok(clique_chain(build_level_partition(inst)?).edges)
}

pub fn dpea_solve(inst: &DpeaInstance<'_>) -> Result<AugmentationResult> {
    let start = Instant::now();
    let edges = dpea_edges(inst)?;
    let mut augmented = inst.g.clone();
    for e in edges {
        augmented.insert(e);
    }
    let bound = addable_upper_bound(inst.g, &[(inst.a, inst.b)])?;
    let mut result = AugmentationResult::new("dpea", inst.g, augmented, bound);
    result.runtime = start.elapsed();
    Ok(result)
}

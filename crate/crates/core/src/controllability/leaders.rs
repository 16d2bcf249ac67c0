use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

/// Ordered, distinct leader nodes. Position `j` is coordinate `j` of every
/// distance-to-leader vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeaderSet(Vec<NodeId>);

impl LeaderSet {
    pub fn new(leaders: Vec<NodeId>, n: usize) -> Result<Self> {
        if leaders.is_empty() {
            return Err(Error::input("at least one leader is required"));
        }
        if let Some(&bad) = leaders.iter().find(|&&l| l >= n) {
            return Err(Error::input(format!("leader {bad} out of range for n = {n}")));
        }
        let distinct: BTreeSet<_> = leaders.iter().collect();
        if distinct.len() != leaders.len() {
            return Err(Error::input("leaders must be distinct"));
        }
        Ok(LeaderSet(leaders))
    }

    pub fn as_slice(&self) -> &[NodeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, node: NodeId) -> bool {
        self.0.contains(&node)
    }

    pub(crate) fn check_fits(&self, g: &Graph) -> Result<()> {
        match self.0.iter().find(|&&l| l >= g.n()) {
            Some(bad) => Err(Error::input(format!("leader {bad} out of range for n = {}", g.n()))),
            None => Ok(()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceToLeaderVector {
    pub node: NodeId,
    pub distances: Vec<usize>,
}

/// `table[j][v]` is the hop distance from leader `j` to node `v`. Fails on
/// disconnected graphs.
pub fn leader_distance_table(g: &Graph, leaders: &LeaderSet) -> Result<Vec<Vec<usize>>> {
    leaders.check_fits(g)?;
    leaders
        .as_slice()
        .iter()
        .map(|&l| {
            g.bfs_unchecked(l)
                .into_iter()
                .enumerate()
                .map(|(v, d)| {
                    d.ok_or_else(|| {
                        Error::domain(format!("graph is disconnected: node {v} unreachable from leader {l}"))
                    })
                })
                .collect()
        })
        .collect()
}

pub fn distance_to_leader_vectors(g: &Graph, leaders: &LeaderSet) -> Result<Vec<DistanceToLeaderVector>> {
    let table = leader_distance_table(g, leaders)?;
    Ok((0..g.n())
        .map(|v| DistanceToLeaderVector {
            node: v,
            distances: table.iter().map(|row| row[v]).collect(),
        })
        .collect())
}

use std::collections::BTreeSet;
use std::time::Instant;

use super::dpea::{dpea_edges, DpeaInstance};
use super::{forbidden_nonedge_upper_bound, monitored_pairs, AugmentOptions, AugmentationResult, Augmenter};
use crate::controllability::{validate_pmi, LeaderSet, PmiSequence};
use crate::error::Result;
use crate::graph::{Edge, Graph};
use crate::registry::Named;

/// Intersection of the single-pair optima over every `(leader, PMI node)`
/// pair. With no pairs to monitor the result is the complete graph.
pub fn intersection_augment(g: &Graph, leaders: &LeaderSet, pmi: &PmiSequence) -> Result<AugmentationResult> {
    let start = Instant::now();
    validate_pmi(g, leaders, pmi)?;

    let mut common: Option<BTreeSet<Edge>> = None;
    for (l, v) in monitored_pairs(leaders, pmi) {
        let edges = dpea_edges(&DpeaInstance::new(g, l, v)?)?;
        let next = match common {
            None => edges,
            Some(mut acc) => {
                acc.retain(|e| edges.contains(e));
                acc
            }
        };
        // Every pair solution contains E, so once the intersection is E it stays E.
        let done = next.len() == g.edge_count();
        common = Some(next);
        if done {
            break;
        }
    }

    let mut augmented = g.clone();
    match common {
        Some(edges) => edges.into_iter().for_each(|e| {
            augmented.insert(e);
        }),
        None => augmented = Graph::complete(g.n())?,
    }

    let bound = forbidden_nonedge_upper_bound(g, leaders, pmi)?;
    let mut result = AugmentationResult::new("intersect", g, augmented, bound);
    result.pmi_length = Some(pmi.len());
    result.runtime = start.elapsed();
    Ok(result)
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Intersection;

impl Named for Intersection {
    fn name(&self) -> &'static str {
        "intersect"
    }
}

impl Augmenter for Intersection {
    fn augment(
        &self,
        g: &Graph,
        leaders: &LeaderSet,
        pmi: &PmiSequence,
        _options: &AugmentOptions,
    ) -> Result<AugmentationResult> {
        intersection_augment(g, leaders, pmi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::controllability::{pmi_exact, pmi_greedy};

    fn leaders(ls: &[usize], n: usize) -> LeaderSet {
        LeaderSet::new(ls.to_vec(), n).unwrap()
    }

    #[test]
    fn complete_graph_is_unchanged() {
        let g = Graph::complete(6).unwrap();
        let l = leaders(&[0, 3], 6);
        let r = intersection_augment(&g, &l, &pmi_greedy(&g, &l).unwrap()).unwrap();
        assert_eq!(r.augmented, g);
        assert!(r.added.is_empty());
    }

    #[test]
    fn path_is_unchanged() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let l = leaders(&[0], 3);
        let pmi = pmi_exact(&g, &l).unwrap();
        assert_eq!(pmi.len(), 3);
        assert!(intersection_augment(&g, &l, &pmi).unwrap().added.is_empty());
    }

    #[test]
    fn star_with_center_leader_fills_in() {
        let g = Graph::from_edges(6, (1..6).map(|i| (0, i))).unwrap();
        let l = leaders(&[0], 6);
        let pmi = PmiSequence::from_vectors(vec![(0, vec![0]), (3, vec![1])]).unwrap();
        let r = intersection_augment(&g, &l, &pmi).unwrap();
        assert_eq!(r.augmented, Graph::complete(6).unwrap());
        assert_eq!(r.added.len(), 10);
        let d = r.augmented.bfs_distances(0).unwrap();
        assert_eq!(d[3], Some(1));
    }

    #[test]
    fn single_vector_pmi_gives_complete_graph() {
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let l = leaders(&[1], 4);
        let pmi = PmiSequence::from_vectors(vec![(1, vec![0])]).unwrap();
        assert_eq!(intersection_augment(&g, &l, &pmi).unwrap().augmented, Graph::complete(4).unwrap());
    }

    #[test]
    fn rejects_foreign_pmi() {
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let pmi = PmiSequence::from_vectors(vec![(0, vec![0]), (1, vec![2])]).unwrap();
        assert!(intersection_augment(&g, &leaders(&[0], 3), &pmi).is_err());
    }
}

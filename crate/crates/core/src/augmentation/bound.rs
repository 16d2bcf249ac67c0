use std::collections::{BTreeSet, HashMap};

use super::monitored_pairs;
use crate::controllability::{validate_pmi, LeaderSet, PmiSequence};
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};

/// Upper bound on how many non-edges any distance-preserving augmentation can
/// add for the given `(source, target)` pairs.
///
/// A non-edge `{u, v}` is forbidden when both endpoints lie on a shortest
/// `source`-`target` path and their distances from `source` differ by two or
/// more: joining them would shortcut that path. Returns `|E^c|` minus the
/// number of forbidden non-edges.
pub fn addable_upper_bound(g: &Graph, pairs: &[(NodeId, NodeId)]) -> Result<usize> {
    let mut bfs: HashMap<NodeId, Vec<Option<usize>>> = HashMap::new();
    let mut forbidden: BTreeSet<Edge> = BTreeSet::new();
    for &(s, t) in pairs {
        g.check_node(s)?;
        g.check_node(t)?;
        for x in [s, t] {
            bfs.entry(x).or_insert_with(|| g.bfs_unchecked(x));
        }
        let (from_s, from_t) = (&bfs[&s], &bfs[&t]);
        let k = from_s[t].ok_or_else(|| Error::domain(format!("nodes {s} and {t} are not connected")))?;
        let on_geodesic: Vec<(NodeId, usize)> = (0..g.n())
            .filter_map(|v| match (from_s[v], from_t[v]) {
                (Some(x), Some(y)) if x + y == k => Some((v, x)),
                _ => None,
            })
            .collect();
        for (i, &(u, du)) in on_geodesic.iter().enumerate() {
            for &(v, dv) in &on_geodesic[i + 1..] {
                if du.abs_diff(dv) >= 2 {
                    forbidden.insert(Edge::ordered(u, v));
                }
            }
        }
    }
    let n = g.n();
    Ok(n * (n - 1) / 2 - g.edge_count() - forbidden.len())
}

/// [`addable_upper_bound`] over every leader and PMI node.
pub fn forbidden_nonedge_upper_bound(g: &Graph, leaders: &LeaderSet, pmi: &PmiSequence) -> Result<usize> {
    validate_pmi(g, leaders, pmi)?;
    addable_upper_bound(g, &monitored_pairs(leaders, pmi))
}

/// Probability that best-of-`c` randomized runs reach an `alpha`-approximate
/// solution, given `t` individually legal edges and an optimum of `tau`:
/// `1 - exp(-c (tau/t)^⌈alpha·tau⌉)`.
pub fn success_probability_bound(t: usize, tau: usize, alpha: f64, c: usize) -> Result<f64> {
    if tau == 0 || tau > t {
        return Err(Error::input(format!("need 1 <= tau <= T, got tau = {tau}, T = {t}")));
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::input(format!("alpha = {alpha} outside (0, 1]")));
    }
    // Absorb rounding noise so that e.g. 0.75 * 92 stays 69.
    let exponent = (alpha * tau as f64 - 1e-9).ceil();
    let single = (tau as f64 / t as f64).powf(exponent);
    Ok(-(-(c as f64) * single).exp_m1())
}

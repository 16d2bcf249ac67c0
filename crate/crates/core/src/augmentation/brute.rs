//! Exhaustive single-pair optimum for tiny graphs.

use std::collections::BTreeSet;

use super::dpea::DpeaInstance;
use crate::error::{Error, Result};
use crate::graph::Edge;

pub const BRUTE_FORCE_MAX_NODES: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruteForceOptimum {
    /// `|E'|` of the optimum.
    pub edge_count: usize,
    /// One optimal `E'` (original edges included).
    pub edges: BTreeSet<Edge>,
}

/// Branch and bound over subsets of the complement: an edge that shortens
/// `d(a, b)` does so in every superset, so its include-branch is cut.
pub fn dpea_brute_force(inst: &DpeaInstance<'_>) -> Result<BruteForceOptimum> {
    let g = inst.graph();
    let n = g.n();
    if n > BRUTE_FORCE_MAX_NODES {
        return Err(Error::Size(format!(
            "brute force is limited to {BRUTE_FORCE_MAX_NODES} nodes, graph has {n}"
        )));
    }
    let mut adj = [0u16; BRUTE_FORCE_MAX_NODES];
    for e in g.edges() {
        adj[e.u()] |= 1 << e.v();
        adj[e.v()] |= 1 << e.u();
    }
    let (a, b) = (inst.a(), inst.b());
    let k = distance(&adj, a, b)
        .ok_or_else(|| Error::domain(format!("nodes {a} and {b} are not connected")))?;

    let mut search = Search {
        candidates: g.complement_edges().into_iter().collect(),
        a,
        b,
        k,
        chosen: Vec::new(),
        best: None,
    };
    search.run(0, &mut adj);
    let chosen = search.best.expect("the empty augmentation is always feasible");
    let mut edges = g.edges().clone();
    edges.extend(chosen);
    Ok(BruteForceOptimum { edge_count: edges.len(), edges })
}

struct Search {
    candidates: Vec<Edge>,
    a: usize,
    b: usize,
    k: usize,
    chosen: Vec<Edge>,
    best: Option<Vec<Edge>>,
}

impl Search {
    fn run(&mut self, idx: usize, adj: &mut [u16; BRUTE_FORCE_MAX_NODES]) {
        let remaining = self.candidates.len() - idx;
        if let Some(best) = &self.best {
            if self.chosen.len() + remaining <= best.len() {
                return;
            }
        }
        if idx == self.candidates.len() {
            self.best = Some(self.chosen.clone());
            return;
        }
        let e = self.candidates[idx];
        let (u, v) = (e.u(), e.v());
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        if distance(adj, self.a, self.b) == Some(self.k) {
            self.chosen.push(e);
            self.run(idx + 1, adj);
            self.chosen.pop();
        }
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
        self.run(idx + 1, adj);
    }
}

fn distance(adj: &[u16], a: usize, b: usize) -> Option<usize> {
    let target = 1u16 << b;
    let mut seen = 1u16 << a;
    let mut frontier = seen;
    let mut d = 0;
    while frontier != 0 {
        if frontier & target != 0 {
            return Some(d);
        }
        let mut next = 0u16;
        let mut f = frontier;
        while f != 0 {
            let u = f.trailing_zeros() as usize;
            next |= adj[u];
            f &= f - 1;
        }
        next &= !seen;
        seen |= next;
        frontier = next;
        d += 1;
    }
    None
}

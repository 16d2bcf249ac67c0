//! Pseudo-monotonically increasing (PMI) sequences of distance-to-leader
//! vectors.
//!
//! A sequence `D_1, ..., D_L` is PMI when every `D_i` has a witness coordinate
//! `α(i)` with `D_i[α(i)] < D_j[α(i)]` for all `j > i`. Witnesses are 0-based
//! coordinate indices into the leader order.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::leaders::{distance_to_leader_vectors, LeaderSet};
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::registry::{Named, Registry};

/// Distinct-vector limit for [`pmi_exact`].
pub const EXACT_PMI_MAX_DISTINCT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmiEntry {
    pub node: NodeId,
    pub vector: Vec<usize>,
    pub witness: usize,
}

/// Serializes as a JSON array of `{node, vector, witness}` objects.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PmiSequence {
    entries: Vec<PmiEntry>,
}

impl PmiSequence {
    /// Wraps vectors in sequence order, computing witnesses. Fails if the
    /// order is not PMI.
    pub fn from_vectors(items: Vec<(NodeId, Vec<usize>)>) -> Result<Self> {
        let vectors: Vec<Vec<usize>> = items.iter().map(|(_, v)| v.clone()).collect();
        match is_pmi(&vectors)? {
            PmiCheck::Valid { witnesses } => Ok(PmiSequence {
                entries: items
                    .into_iter()
                    .zip(witnesses)
                    .map(|((node, vector), witness)| PmiEntry { node, vector, witness })
                    .collect(),
            }),
            PmiCheck::Violation { position, blocker } => Err(Error::input(format!(
                "not a PMI sequence: entry {position} has no witness (blocked by entry {blocker})"
            ))),
        }
    }

    pub fn entries(&self) -> &[PmiEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.entries.iter().map(|e| e.node)
    }

    pub fn vectors(&self) -> Vec<Vec<usize>> {
        self.entries.iter().map(|e| e.vector.clone()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PmiCheck {
    /// One witness coordinate per position (smallest valid index).
    Valid { witnesses: Vec<usize> },
    /// `position` has no witness; `blocker` is the first later entry that
    /// ties or undercuts it on some coordinate. Both 0-based.
    Violation { position: usize, blocker: usize },
}

impl PmiCheck {
    pub fn is_valid(&self) -> bool {
        matches!(self, PmiCheck::Valid { .. })
    }
}

pub fn is_pmi(seq: &[Vec<usize>]) -> Result<PmiCheck> {
    let Some(first) = seq.first() else {
        return Ok(PmiCheck::Valid { witnesses: vec![] });
    };
    let m = first.len();
    if m == 0 {
        return Err(Error::input("distance-to-leader vectors must have at least one coordinate"));
    }
    if let Some(bad) = seq.iter().position(|v| v.len() != m) {
        return Err(Error::input(format!(
            "ragged PMI candidate: entry {bad} has length {}, expected {m}",
            seq[bad].len()
        )));
    }
    let mut witnesses = Vec::with_capacity(seq.len());
    for (i, d) in seq.iter().enumerate() {
        let later = &seq[i + 1..];
        let witness = (0..m).find(|&c| later.iter().all(|e| d[c] < e[c]));
        match witness {
            Some(c) => witnesses.push(c),
            None => {
                let blocker = later
                    .iter()
                    .position(|e| (0..m).any(|c| e[c] <= d[c]))
                    .expect("a missing witness implies a blocking entry");
                return Ok(PmiCheck::Violation { position: i, blocker: i + 1 + blocker });
            }
        }
    }
    Ok(PmiCheck::Valid { witnesses })
}

/// Checks that `pmi` lists distinct nodes whose stored vectors match their
/// distances in `g` and that the order is PMI.
pub fn validate_pmi(g: &Graph, leaders: &LeaderSet, pmi: &PmiSequence) -> Result<()> {
    if pmi.is_empty() {
        return Err(Error::input("PMI sequence is empty"));
    }
    let vectors = distance_to_leader_vectors(g, leaders)?;
    let mut seen = vec![false; g.n()];
    for e in pmi.entries() {
        g.check_node(e.node)?;
        if std::mem::replace(&mut seen[e.node], true) {
            return Err(Error::input(format!("node {} appears twice in the PMI sequence", e.node)));
        }
        if vectors[e.node].distances != e.vector {
            return Err(Error::input(format!(
                "PMI entry for node {} has vector {:?}, graph gives {:?}",
                e.node, e.vector, vectors[e.node].distances
            )));
        }
    }
    match is_pmi(&pmi.vectors())? {
        PmiCheck::Valid { .. } => Ok(()),
        PmiCheck::Violation { position, blocker } => Err(Error::input(format!(
            "not a PMI sequence: entry {position} has no witness (blocked by entry {blocker})"
        ))),
    }
}

/// Distinct vectors, each represented by its smallest node id.
fn distinct_vectors(g: &Graph, leaders: &LeaderSet) -> Result<Vec<(NodeId, Vec<usize>)>> {
    let mut seen: HashMap<Vec<usize>, NodeId> = HashMap::new();
    let mut out = Vec::new();
    for dv in distance_to_leader_vectors(g, leaders)? {
        if !seen.contains_key(&dv.distances) {
            seen.insert(dv.distances.clone(), dv.node);
            out.push((dv.node, dv.distances));
        }
    }
    Ok(out)
}

/// Greedy PMI construction.
///
/// Keeps one threshold per coordinate (initially below every distance). A
/// vector is admissible while it is strictly above every threshold. Each step
/// takes the admissible `(vector, coordinate)` with the smallest value, ties
/// broken by coordinate index then node id, and raises that coordinate's
/// threshold to the value.
pub fn pmi_greedy(g: &Graph, leaders: &LeaderSet) -> Result<PmiSequence> {
    let vectors = distinct_vectors(g, leaders)?;
    let m = leaders.len();
    let mut threshold: Vec<Option<usize>> = vec![None; m];
    let mut used = vec![false; vectors.len()];
    let mut order = Vec::new();

    loop {
        let mut best: Option<(usize, usize, NodeId, usize)> = None;
        for (idx, (node, v)) in vectors.iter().enumerate() {
            if used[idx] || !v.iter().zip(&threshold).all(|(&x, t)| t.is_none_or(|t| x > t)) {
                continue;
            }
            for (c, &x) in v.iter().enumerate() {
                let key = (x, c, *node, idx);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let Some((value, coord, _, idx)) = best else { break };
        used[idx] = true;
        threshold[coord] = Some(value);
        order.push(vectors[idx].clone());
    }
    PmiSequence::from_vectors(order)
}

/// Longest PMI sequence by exhaustive search.
///
/// Sequences are grown from the back. Prepending `x` to a suffix is legal iff
/// `x` is strictly below the suffix's coordinate-wise minimum somewhere, so the
/// best achievable length depends only on that minimum; the search is
/// memoized on it. Limited to [`EXACT_PMI_MAX_DISTINCT`] distinct vectors.
pub fn pmi_exact(g: &Graph, leaders: &LeaderSet) -> Result<PmiSequence> {
    pmi_exact_with_limit(g, leaders, EXACT_PMI_MAX_DISTINCT)
}

fn pmi_exact_with_limit(g: &Graph, leaders: &LeaderSet, limit: usize) -> Result<PmiSequence> {
    let vectors = distinct_vectors(g, leaders)?;
    if vectors.len() > limit {
        return Err(Error::Size(format!(
            "{} distinct distance-to-leader vectors exceed the exact-search limit of {limit}; use the greedy solver",
            vectors.len()
        )));
    }
    let m = leaders.len();
    let mut memo: HashMap<Vec<usize>, usize> = HashMap::new();
    let start = vec![usize::MAX; m];
    longest_prefix(&start, &vectors, &mut memo);

    let mut reversed = Vec::new();
    let mut floor = start;
    loop {
        let remaining = memo[&floor];
        if remaining == 0 {
            break;
        }
        let (idx, next) = vectors
            .iter()
            .enumerate()
            .filter(|(_, (_, x))| undercuts(x, &floor))
            .map(|(idx, (_, x))| (idx, lower(&floor, x)))
            .find(|(_, next)| memo.get(next).copied() == Some(remaining - 1))
            .expect("memo records an optimal continuation");
        reversed.push(vectors[idx].clone());
        floor = next;
    }
    reversed.reverse();
    PmiSequence::from_vectors(reversed)
}

fn undercuts(x: &[usize], floor: &[usize]) -> bool {
    x.iter().zip(floor).any(|(a, b)| a < b)
}

fn lower(floor: &[usize], x: &[usize]) -> Vec<usize> {
    floor.iter().zip(x).map(|(&a, &b)| a.min(b)).collect()
}

fn longest_prefix(
    floor: &[usize],
    vectors: &[(NodeId, Vec<usize>)],
    memo: &mut HashMap<Vec<usize>, usize>,
) -> usize {
    if let Some(&v) = memo.get(floor) {
        return v;
    }
    let mut best = 0;
    for (_, x) in vectors {
        if undercuts(x, floor) {
            let next = lower(floor, x);
            best = best.max(1 + longest_prefix(&next, vectors, memo));
        }
    }
    memo.insert(floor.to_vec(), best);
    best
}

pub trait PmiSolver: Named + Send + Sync {
    fn solve(&self, g: &Graph, leaders: &LeaderSet) -> Result<PmiSequence>;
}

#[derive(Clone, Copy, Debug, Default)]
pub struct GreedyPmi;

impl Named for GreedyPmi {
    fn name(&self) -> &'static str {
        "greedy"
    }
}

impl PmiSolver for GreedyPmi {
    fn solve(&self, g: &Graph, leaders: &LeaderSet) -> Result<PmiSequence> {
        pmi_greedy(g, leaders)
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ExactPmi {
    pub max_distinct: usize,
}

impl Default for ExactPmi {
    fn default() -> Self {
        ExactPmi { max_distinct: EXACT_PMI_MAX_DISTINCT }
    }
}

impl Named for ExactPmi {
    fn name(&self) -> &'static str {
        "exact"
    }
}

impl PmiSolver for ExactPmi {
    fn solve(&self, g: &Graph, leaders: &LeaderSet) -> Result<PmiSequence> {
        pmi_exact_with_limit(g, leaders, self.max_distinct)
    }
}

/// Registry with the built-in solvers: `greedy` and `exact`.
pub fn pmi_solvers() -> Registry<dyn PmiSolver> {
    let mut r: Registry<dyn PmiSolver> = Registry::new("PMI solver");
    r.register(Arc::new(GreedyPmi)).register(Arc::new(ExactPmi::default()));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::erdos_renyi;
    use proptest::prelude::*;

    fn v(xs: &[&[usize]]) -> Vec<Vec<usize>> {
        xs.iter().map(|x| x.to_vec()).collect()
    }

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
    }

    fn leaders(ls: &[usize], n: usize) -> LeaderSet {
        LeaderSet::new(ls.to_vec(), n).unwrap()
    }

    /// Longest PMI length over every ordered selection of distinct vectors.
    fn brute_force_length(vectors: &[Vec<usize>]) -> usize {
        fn extend(prefix: &mut Vec<Vec<usize>>, rest: &[Vec<usize>], best: &mut usize) {
            if is_pmi(prefix).unwrap().is_valid() {
                *best = (*best).max(prefix.len());
            } else {
                return;
            }
            for (i, x) in rest.iter().enumerate() {
                let mut remaining = rest.to_vec();
                remaining.remove(i);
                prefix.push(x.clone());
                extend(prefix, &remaining, best);
                prefix.pop();
            }
        }
        let mut distinct = vectors.to_vec();
        distinct.sort();
        distinct.dedup();
        let mut best = 0;
        extend(&mut Vec::new(), &distinct, &mut best);
        best
    }

    #[test]
    fn is_pmi_examples() {
        let five = v(&[&[0, 2], &[2, 0], &[1, 2], &[2, 1], &[3, 1]]);
        assert_eq!(is_pmi(&five).unwrap(), PmiCheck::Valid { witnesses: vec![0, 1, 0, 0, 0] });
        assert_eq!(is_pmi(&v(&[&[0], &[0]])).unwrap(), PmiCheck::Violation { position: 0, blocker: 1 });
        assert!(is_pmi(&v(&[&[0, 2], &[2, 0]])).unwrap().is_valid());
        assert!(matches!(is_pmi(&v(&[&[0, 2], &[2]])), Err(Error::Input(_))));
    }

    #[test]
    fn exact_examples() {
        assert_eq!(pmi_exact(&path(4), &leaders(&[0], 4)).unwrap().len(), 4);
        assert_eq!(pmi_exact(&star(4), &leaders(&[0], 5)).unwrap().len(), 2);
        let p = pmi_exact(&path(3), &leaders(&[0, 2], 3)).unwrap();
        assert_eq!(p.len(), 3);
        assert_eq!(brute_force_length(&p.vectors()), 3);
        let mut got = p.vectors();
        got.sort();
        assert_eq!(got, v(&[&[0, 2], &[1, 1], &[2, 0]]));
    }

    #[test]
    fn exact_respects_guard() {
        let g = path(25);
        assert!(matches!(pmi_exact(&g, &leaders(&[0], 25)), Err(Error::Size(_))));
        assert!(ExactPmi { max_distinct: 30 }.solve(&g, &leaders(&[0], 25)).is_ok());
    }

    #[test]
    fn greedy_examples() {
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (0, 3), (3, 4), (4, 5), (2, 5)]).unwrap();
        let p = pmi_greedy(&g, &leaders(&[0], 6)).unwrap();
        let got: Vec<usize> = p.entries().iter().map(|e| e.vector[0]).collect();
        assert_eq!(got, vec![0, 1, 2, 3]);

        assert_eq!(pmi_greedy(&path(3), &leaders(&[0, 2], 3)).unwrap().len(), 3);

        let k5 = Graph::complete(5).unwrap();
        let p = pmi_greedy(&k5, &leaders(&[0, 1], 5)).unwrap();
        assert!(p.len() >= 2);
        assert_eq!(p.nodes().take(2).collect::<Vec<_>>(), vec![0, 1]);
    }

    #[test]
    fn json_shape() {
        let p = pmi_exact(&path(3), &leaders(&[0], 3)).unwrap();
        let value: serde_json::Value = serde_json::from_str(&p.to_json()).unwrap();
        assert_eq!(value[0], serde_json::json!({"node": 0, "vector": [0], "witness": 0}));
        assert_eq!(PmiSequence::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn validate_rejects_tampering() {
        let g = path(4);
        let l = leaders(&[0], 4);
        let good = pmi_exact(&g, &l).unwrap();
        assert!(validate_pmi(&g, &l, &good).is_ok());
        let wrong = PmiSequence::from_vectors(vec![(1, vec![0]), (2, vec![2])]).unwrap();
        assert!(validate_pmi(&g, &l, &wrong).is_err());
        let dup = PmiSequence { entries: vec![good.entries()[0].clone(), good.entries()[0].clone()] };
        assert!(validate_pmi(&g, &l, &dup).is_err());
    }

    fn arb_instance() -> impl Strategy<Value = (Graph, LeaderSet)> {
        (3usize..9, 0.25f64..0.8, any::<u64>(), 1usize..4).prop_filter_map(
            "connected",
            |(n, p, seed, m)| {
                let g = erdos_renyi(n, p, seed).ok()?;
                if !g.is_connected() {
                    return None;
                }
                let m = m.min(n);
                let ls: Vec<usize> = (0..m).map(|j| (seed as usize / (j + 1) + j * 5) % n).collect();
                let mut uniq = ls.clone();
                uniq.sort();
                uniq.dedup();
                if uniq.len() != ls.len() {
                    return None;
                }
                Some((g, LeaderSet::new(ls, n).unwrap()))
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(96))]

        #[test]
        fn solvers_agree_with_brute_force((g, l) in arb_instance()) {
            let greedy = pmi_greedy(&g, &l).unwrap();
            let exact = pmi_exact(&g, &l).unwrap();
            prop_assert!(is_pmi(&greedy.vectors()).unwrap().is_valid());
            prop_assert!(is_pmi(&exact.vectors()).unwrap().is_valid());
            prop_assert!(validate_pmi(&g, &l, &greedy).is_ok());
            prop_assert!(validate_pmi(&g, &l, &exact).is_ok());
            prop_assert!(greedy.len() <= exact.len());
            let all: Vec<Vec<usize>> = distance_to_leader_vectors(&g, &l).unwrap()
                .into_iter().map(|d| d.distances).collect();
            prop_assert_eq!(exact.len(), brute_force_length(&all));
        }

        #[test]
        fn leader_order_does_not_change_length((g, l) in arb_instance()) {
            let mut rev = l.as_slice().to_vec();
            rev.reverse();
            let rev = LeaderSet::new(rev, g.n()).unwrap();
            prop_assert_eq!(pmi_exact(&g, &l).unwrap().len(), pmi_exact(&g, &rev).unwrap().len());
        }

        #[test]
        fn single_leader_counts_distinct_distances((g, l) in arb_instance()) {
            let l = LeaderSet::new(vec![l.as_slice()[0]], g.n()).unwrap();
            let mut d: Vec<usize> = g.bfs_distances(l.as_slice()[0]).unwrap().into_iter().flatten().collect();
            d.sort();
            d.dedup();
            prop_assert_eq!(pmi_greedy(&g, &l).unwrap().len(), d.len());
            prop_assert_eq!(pmi_exact(&g, &l).unwrap().len(), d.len());
        }
    }
}

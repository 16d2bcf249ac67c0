//! Simple undirected graphs on nodes `0..n`.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

pub type NodeId = usize;

/// Unordered node pair stored as `u < v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: NodeId,
    v: NodeId,
}

impl Edge {
    pub fn new(a: NodeId, b: NodeId) -> Result<Self> {
        if a == b {
            return Err(Error::input(format!("self-loop on node {a}")));
        }
        Ok(Self::ordered(a, b))
    }

    /// Caller guarantees `a != b`.
    pub(crate) fn ordered(a: NodeId, b: NodeId) -> Self {
        debug_assert_ne!(a, b);
        if a < b {
            Edge { u: a, v: b }
        } else {
            Edge { u: b, v: a }
        }
    }

    pub fn u(self) -> NodeId {
        self.u
    }

    pub fn v(self) -> NodeId {
        self.v
    }
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        [self.u, self.v].serialize(serializer)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<BTreeSet<NodeId>>,
    edges: BTreeSet<Edge>,
}

impl Graph {
    /// Edgeless graph on `n >= 1` nodes.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::input("graph must have at least one node"));
        }
        Ok(Graph {
            n,
            adjacency: vec![BTreeSet::new(); n],
            edges: BTreeSet::new(),
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for u in 0..n {
            for v in u + 1..n {
                g.insert(Edge::ordered(u, v));
            }
        }
        Ok(g)
    }

    /// Builds a graph from node pairs; duplicate and reversed pairs collapse.
    pub fn from_edges<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (NodeId, NodeId)>,
    {
        let mut g = Graph::empty(n)?;
        for (a, b) in pairs {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Adds `{a, b}`; returns `false` if it was already present.
    pub fn add_edge(&mut self, a: NodeId, b: NodeId) -> Result<bool> {
        self.check_node(a)?;
        self.check_node(b)?;
        Ok(self.insert(Edge::new(a, b)?))
    }

    pub(crate) fn insert(&mut self, e: Edge) -> bool {
        if !self.edges.insert(e) {
            return false;
        }
        self.adjacency[e.u].insert(e.v);
        self.adjacency[e.v].insert(e.u);
        true
    }

    pub(crate) fn remove(&mut self, e: Edge) -> bool {
        if !self.edges.remove(&e) {
            return false;
        }
        self.adjacency[e.u].remove(&e.v);
        self.adjacency[e.v].remove(&e.u);
        true
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn has_edge(&self, a: NodeId, b: NodeId) -> bool {
        a != b && a < self.n && b < self.n && self.edges.contains(&Edge::ordered(a, b))
    }

    pub fn neighbors(&self, u: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.adjacency[u].iter().copied()
    }

    pub fn degree(&self, u: NodeId) -> usize {
        self.adjacency[u].len()
    }

    pub fn check_node(&self, u: NodeId) -> Result<()> {
        if u >= self.n {
            return Err(Error::input(format!("node {u} out of range for n = {}", self.n)));
        }
        Ok(())
    }

    /// Hop distances from `source`; `None` marks unreachable nodes.
    pub fn bfs_distances(&self, source: NodeId) -> Result<Vec<Option<usize>>> {
        self.check_node(source)?;
        Ok(self.bfs_unchecked(source))
    }

    pub(crate) fn bfs_unchecked(&self, source: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::with_capacity(self.n);
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].map(|d| d + 1);
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = next;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_unchecked(0).iter().all(Option::is_some)
    }

    /// Every unordered pair absent from the graph, in ascending order.
    pub fn complement_edges(&self) -> BTreeSet<Edge> {
        let mut out = BTreeSet::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if !self.adjacency[u].contains(&v) {
                    out.insert(Edge::ordered(u, v));
                }
            }
        }
        out
    }

    /// Serializes to the edge-list text format: a header `n <count>` followed by
    /// one `u v` line per edge with `u < v`, in ascending order.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for e in &self.edges {
            let _ = writeln!(out, "{} {}", e.u, e.v);
        }
        out
    }

    /// Parses the edge-list text format. Blank lines are ignored; line numbers
    /// in errors are 1-based.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());

        let parse_err = |line: usize, message: String| Error::Parse { line, message };

        let (header_line, header) = lines
            .next()
            .ok_or_else(|| parse_err(1, "missing header \"n <count>\"".into()))?;
        let mut tokens = header.split_whitespace();
        let n = match (tokens.next(), tokens.next(), tokens.next()) {
            (Some("n"), Some(count), None) => count
                .parse::<usize>()
                .map_err(|_| parse_err(header_line, format!("invalid node count {count:?}")))?,
            _ => return Err(parse_err(header_line, format!("expected \"n <count>\", got {header:?}"))),
        };
        let mut g = Graph::empty(n).map_err(|e| parse_err(header_line, e.to_string()))?;

        for (line, content) in lines {
            let mut tokens = content.split_whitespace();
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => return Err(parse_err(line, format!("expected \"u v\", got {content:?}"))),
            };
            let id = |tok: &str| {
                tok.parse::<usize>()
                    .map_err(|_| parse_err(line, format!("invalid node id {tok:?}")))
            };
            let (a, b) = (id(a)?, id(b)?);
            if a == b {
                return Err(parse_err(line, format!("self-loop on node {a}")));
            }
            if a >= n || b >= n {
                return Err(parse_err(line, format!("node id {} out of range for n = {n}", a.max(b))));
            }
            g.insert(Edge::ordered(a, b));
        }
        Ok(g)
    }
}

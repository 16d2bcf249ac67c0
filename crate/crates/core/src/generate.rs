//! Seeded Erdős–Rényi and Barabási–Albert generators.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng as _;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, NodeId};
use crate::rng::{self, Rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModelKind {
    #[serde(alias = "er")]
    ErdosRenyi,
    #[serde(alias = "ba")]
    BarabasiAlbert,
}

impl ModelKind {
    pub fn name(self) -> &'static str {
        match self {
            ModelKind::ErdosRenyi => "erdos-renyi",
            ModelKind::BarabasiAlbert => "barabasi-albert",
        }
    }
}

impl fmt::Display for ModelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "er" | "erdos-renyi" => Ok(ModelKind::ErdosRenyi),
            "ba" | "barabasi-albert" => Ok(ModelKind::BarabasiAlbert),
            other => Err(Error::input(format!("unknown graph model {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Model {
    /// Each pair present independently with probability `p`.
    ErdosRenyi { p: f64 },
    /// Preferential attachment with `gamma` edges per new node.
    BarabasiAlbert { gamma: usize },
}

impl Model {
    pub fn kind(&self) -> ModelKind {
        match self {
            Model::ErdosRenyi { .. } => ModelKind::ErdosRenyi,
            Model::BarabasiAlbert { .. } => ModelKind::BarabasiAlbert,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GenSpec {
    pub model: Model,
    pub n: usize,
    pub seed: u64,
}

impl GenSpec {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::input("n must be positive"));
        }
        match self.model {
            Model::ErdosRenyi { p } if !(0.0..=1.0).contains(&p) => {
                Err(Error::input(format!("edge probability {p} outside [0, 1]")))
            }
            Model::BarabasiAlbert { gamma } if gamma == 0 || gamma >= self.n => Err(Error::input(
                format!("attachment count {gamma} must satisfy 1 <= gamma < n = {}", self.n),
            )),
            _ => Ok(()),
        }
    }

    /// Draws the graph from stream 0 of `seed`.
    pub fn generate(&self) -> Result<Graph> {
        let mut rng = rng::seeded(self.seed);
        self.sample(&mut rng)
    }

    /// Draws one graph from an existing generator; used for resampling.
    pub fn sample(&self, rng: &mut Rng) -> Result<Graph> {
        self.validate()?;
        match self.model {
            Model::ErdosRenyi { p } => Ok(sample_erdos_renyi(self.n, p, rng)),
            Model::BarabasiAlbert { gamma } => sample_barabasi_albert(self.n, gamma, rng),
        }
    }
}

pub fn erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    GenSpec { model: Model::ErdosRenyi { p }, n, seed }.generate()
}

pub fn barabasi_albert(n: usize, gamma: usize, seed: u64) -> Result<Graph> {
    GenSpec { model: Model::BarabasiAlbert { gamma }, n, seed }.generate()
}

// Pairs are visited in lexicographic order, one uniform draw each.
fn sample_erdos_renyi(n: usize, p: f64, rng: &mut Rng) -> Graph {
    let mut g = Graph::empty(n).expect("n validated");
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.insert(Edge::ordered(u, v));
            }
        }
    }
    g
}

// Seed graph is K_gamma. Node t >= gamma then picks gamma distinct targets
// among 0..t, weighted by degree before t's own edges are added.
fn sample_barabasi_albert(n: usize, gamma: usize, rng: &mut Rng) -> Result<Graph> {
    let mut g = Graph::empty(n)?;
    for u in 0..gamma {
        for v in u + 1..gamma {
            g.insert(Edge::ordered(u, v));
        }
    }
    for t in gamma..n {
        let existing: Vec<NodeId> = (0..t).collect();
        let total: usize = existing.iter().map(|&u| g.degree(u)).sum();
        let targets: Vec<NodeId> = if total == 0 {
            // K_1 seed: the only way to start is uniform.
            existing.choose_multiple(rng, gamma).copied().collect()
        } else {
            existing
                .choose_multiple_weighted(rng, gamma, |&u| g.degree(u) as f64)
                .map_err(|e| Error::domain(format!("preferential attachment failed: {e}")))?
                .copied()
                .collect()
        };
        for u in targets {
            g.insert(Edge::ordered(u, t));
        }
    }
    Ok(g)
}

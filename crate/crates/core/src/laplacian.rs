use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::Rng as _;

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::rng::Rng;

/// Strictly positive weight per edge.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightAssignment(BTreeMap<Edge, f64>);

impl WeightAssignment {
    pub fn new(weights: BTreeMap<Edge, f64>) -> Self {
        WeightAssignment(weights)
    }

    pub fn uniform(g: &Graph, w: f64) -> Self {
        WeightAssignment(g.edges().iter().map(|&e| (e, w)).collect())
    }

    /// Independent log-uniform weights on `[lo, hi]`, drawn in edge order.
    pub fn log_uniform(g: &Graph, lo: f64, hi: f64, rng: &mut Rng) -> Self {
        let (a, b) = (lo.ln(), hi.ln());
        WeightAssignment(
            g.edges()
                .iter()
                .map(|&e| (e, rng.gen_range(a..=b).exp()))
                .collect(),
        )
    }

    pub fn get(&self, e: &Edge) -> Option<f64> {
        self.0.get(e).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Edge, &f64)> {
        self.0.iter()
    }
}

/// Dense `L_w = Δ - A_w`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedLaplacian(DMatrix<f64>);

impl WeightedLaplacian {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.0
    }
}

pub fn weighted_laplacian(g: &Graph, w: &WeightAssignment) -> Result<WeightedLaplacian> {
    if let Some((e, _)) = w.iter().find(|(e, _)| !g.edges().contains(e)) {
        return Err(Error::input(format!("weight given for non-edge {{{}, {}}}", e.u(), e.v())));
    }
    let n = g.n();
    let mut m = DMatrix::zeros(n, n);
    for e in g.edges() {
        let wt = w
            .get(e)
            .ok_or_else(|| Error::input(format!("missing weight for edge {{{}, {}}}", e.u(), e.v())))?;
        if !(wt > 0.0 && wt.is_finite()) {
            return Err(Error::input(format!(
                "weight {wt} on edge {{{}, {}}} is not strictly positive",
                e.u(),
                e.v()
            )));
        }
        let (u, v) = (e.u(), e.v());
        m[(u, v)] = -wt;
        m[(v, u)] = -wt;
        m[(u, u)] += wt;
        m[(v, v)] += wt;
    }
    Ok(WeightedLaplacian(m))
}

pub fn unweighted_laplacian(g: &Graph) -> WeightedLaplacian {
    weighted_laplacian(g, &WeightAssignment::uniform(g, 1.0)).expect("unit weights cover every edge")
}

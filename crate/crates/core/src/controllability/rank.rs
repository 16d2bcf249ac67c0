use nalgebra::DMatrix;
use serde::Serialize;

use super::leaders::LeaderSet;
use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::laplacian::{weighted_laplacian, WeightAssignment, WeightedLaplacian};
use crate::rng;

/// Singular values below `RANK_TOLERANCE * σ_max` count as zero.
pub const RANK_TOLERANCE: f64 = 1e-9;

/// Edge weights for validation are log-uniform on this interval.
pub const WEIGHT_RANGE: (f64, f64) = (0.1, 10.0);

/// `n × m` 0/1 matrix with column `j` selecting leader `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct InputMatrix(DMatrix<f64>);

impl InputMatrix {
    pub fn from_leaders(leaders: &LeaderSet, n: usize) -> Result<Self> {
        let mut b = DMatrix::zeros(n, leaders.len());
        for (j, &l) in leaders.as_slice().iter().enumerate() {
            if l >= n {
                return Err(Error::input(format!("leader {l} out of range for n = {n}")));
            }
            b[(l, j)] = 1.0;
        }
        Ok(InputMatrix(b))
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.0
    }
}

/// `[B, -L B, (-L)^2 B, ..., (-L)^{n-1} B]`.
pub fn controllability_matrix(l: &WeightedLaplacian, b: &InputMatrix) -> Result<DMatrix<f64>> {
    let (lm, bm) = (l.matrix(), b.matrix());
    let n = lm.nrows();
    if bm.nrows() != n {
        return Err(Error::input(format!(
            "input matrix has {} rows, Laplacian is {n}x{n}",
            bm.nrows()
        )));
    }
    let m = bm.ncols();
    let neg_l = -lm;
    let mut gamma = DMatrix::zeros(n, n * m);
    let mut block = bm.clone();
    for k in 0..n {
        gamma.columns_mut(k * m, m).copy_from(&block);
        if k + 1 < n {
            block = &neg_l * block;
        }
    }
    Ok(gamma)
}

/// Rank of the controllability matrix, computed without forming it.
///
/// The explicit Krylov matrix is too ill-conditioned for an SVD threshold at
/// the sizes used here, so the controllable subspace is built as an
/// orthonormal staircase instead: start from an orthonormal basis of `range(B)`,
/// repeatedly map the newest block through `-L`, project out the current basis
/// (twice), and keep the directions whose singular values exceed
/// `tolerance * σ_ref`. `σ_ref` is `σ_max(B)` for the first block and
/// `‖L‖₂` afterwards. In exact arithmetic the result equals `rank(Γ)`.
pub fn controllability_rank(l: &WeightedLaplacian, b: &InputMatrix, tolerance: f64) -> Result<usize> {
    let (lm, bm) = (l.matrix(), b.matrix());
    let n = lm.nrows();
    if bm.nrows() != n || lm.ncols() != n {
        return Err(Error::input(format!(
            "input matrix has {} rows, Laplacian is {}x{}",
            bm.nrows(),
            lm.nrows(),
            lm.ncols()
        )));
    }
    if bm.ncols() == 0 || n == 0 {
        return Ok(0);
    }
    let neg_l = -lm;
    let l_norm = lm.singular_values().max();

    let mut basis = DMatrix::<f64>::zeros(n, 0);
    let Some(mut newest) = significant_directions(bm.clone(), tolerance * bm.singular_values().max()) else {
        return Ok(0);
    };
    loop {
        basis = append_columns(&basis, &newest);
        if basis.ncols() >= n || l_norm == 0.0 {
            break;
        }
        let mut w = &neg_l * &newest;
        for _ in 0..2 {
            let proj = basis.transpose() * &w;
            w -= &basis * proj;
        }
        match significant_directions(w, tolerance * l_norm) {
            Some(next) => newest = next,
            None => break,
        }
    }
    Ok(basis.ncols())
}

/// Left singular vectors of `m` whose singular values exceed `threshold`.
fn significant_directions(m: DMatrix<f64>, threshold: f64) -> Option<DMatrix<f64>> {
    let svd = m.svd(true, false);
    let u = svd.u.expect("requested U");
    let keep: Vec<usize> = (0..svd.singular_values.len())
        .filter(|&i| svd.singular_values[i] > threshold)
        .collect();
    if keep.is_empty() {
        return None;
    }
    Some(u.select_columns(keep.iter()))
}

fn append_columns(a: &DMatrix<f64>, b: &DMatrix<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

/// Singular-value rank of the explicit matrix from [`controllability_matrix`].
/// Reliable only for small, well-conditioned instances; kept as a cross-check.
pub fn explicit_gamma_rank(l: &WeightedLaplacian, b: &InputMatrix, tolerance: f64) -> Result<usize> {
    let gamma = controllability_matrix(l, b)?;
    if gamma.ncols() == 0 {
        return Ok(0);
    }
    let sv = gamma.singular_values();
    let max = sv.max();
    if max == 0.0 {
        return Ok(0);
    }
    Ok(sv.iter().filter(|&&s| s > tolerance * max).count())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ValidationReport {
    pub delta: usize,
    pub trials: usize,
    pub seed: u64,
    pub min_rank: usize,
    pub ranks: Vec<usize>,
    pub pass: bool,
    /// Index of the first trial whose rank fell below `delta`.
    pub failing_trial: Option<usize>,
    /// Weights of that trial, as `[[u, v], w]` pairs.
    pub failing_weights: Option<Vec<(Edge, f64)>>,
}

impl ValidationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

/// Samples `trials` weight assignments and checks that every controllability
/// rank is at least `delta`. Trial `t` draws its weights from stream `t` of
/// `seed`, so the report does not depend on evaluation order.
pub fn validate_ssc_bound(
    g: &Graph,
    leaders: &LeaderSet,
    delta: usize,
    trials: usize,
    seed: u64,
) -> Result<ValidationReport> {
    if delta == 0 {
        return Err(Error::input("claimed bound must be at least 1"));
    }
    if trials == 0 {
        return Err(Error::input("at least one trial is required"));
    }
    leaders.check_fits(g)?;
    if !g.is_connected() {
        return Err(Error::domain("rank validation requires a connected graph"));
    }
    let b = InputMatrix::from_leaders(leaders, g.n())?;
    let (lo, hi) = WEIGHT_RANGE;

    let mut ranks = Vec::with_capacity(trials);
    let mut failing = None;
    for t in 0..trials {
        let mut r = rng::seeded_stream(seed, t as u64);
        let w = WeightAssignment::log_uniform(g, lo, hi, &mut r);
        let rank = controllability_rank(&weighted_laplacian(g, &w)?, &b, RANK_TOLERANCE)?;
        if rank < delta && failing.is_none() {
            failing = Some((t, w.iter().map(|(&e, &x)| (e, x)).collect::<Vec<_>>()));
        }
        ranks.push(rank);
    }
    let min_rank = ranks.iter().copied().min().expect("trials >= 1");
    let (failing_trial, failing_weights) = match failing {
        Some((t, w)) => (Some(t), Some(w)),
        None => (None, None),
    };
    Ok(ValidationReport {
        delta,
        trials,
        seed,
        min_rank,
        ranks,
        pass: failing_trial.is_none(),
        failing_trial,
        failing_weights,
    })
}

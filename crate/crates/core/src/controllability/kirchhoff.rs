use nalgebra::SymmetricEigen;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::laplacian::unweighted_laplacian;

/// `Σ 1/λ` over the nonzero eigenvalues of the unweighted Laplacian (no
/// factor of `n`). Lower is more robust.
pub fn kirchhoff_index(g: &Graph) -> Result<f64> {
    if g.n() == 1 {
        return Ok(0.0);
    }
    let mut eig: Vec<f64> = SymmetricEigen::new(unweighted_laplacian(g).into_inner())
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eig.sort_by(f64::total_cmp);
    let scale = eig.last().copied().unwrap_or(1.0).max(1.0);
    if eig[1] < 1e-9 * scale {
        return Err(Error::domain(format!(
            "graph is disconnected (second Laplacian eigenvalue {:.3e})",
            eig[1]
        )));
    }
    Ok(eig[1..].iter().map(|l| 1.0 / l).sum())
}

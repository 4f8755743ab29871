use nalgebra::DMatrix;

use crate::error::invalid;
use crate::graph::{check_vertex, UndirectedGraph};
use crate::{Error, Result, VertexSet};

/// Submatrices whose estimated condition number exceeds this are treated as
/// singular.
pub const CONDITION_LIMIT: f64 = 1e12;

const SYMMETRY_TOL: f64 = 1e-12;

/// Symmetric `p × p` covariance matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CovarianceMatrix {
    m: DMatrix<f64>,
}

impl CovarianceMatrix {
    pub fn new(m: DMatrix<f64>) -> Result<Self> {
        if !m.is_square() {
            return invalid(format!("covariance must be square, got {}x{}", m.nrows(), m.ncols()));
        }
        crate::graph::check_size(m.nrows())?;
        let scale = m.amax().max(1.0);
        for i in 0..m.nrows() {
            for j in 0..i {
                if (m[(i, j)] - m[(j, i)]).abs() > SYMMETRY_TOL * scale {
                    return invalid(format!("covariance not symmetric at ({i}, {j})"));
                }
            }
        }
        if m.iter().any(|x| !x.is_finite()) {
            return invalid("covariance has non-finite entries");
        }
        Ok(CovarianceMatrix { m })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let p = rows.len();
        if rows.iter().any(|r| r.len() != p) {
            return invalid("covariance rows have inconsistent lengths");
        }
        Self::new(DMatrix::from_fn(p, p, |i, j| rows[i][j]))
    }

    pub fn identity(p: usize) -> Self {
        CovarianceMatrix {
            m: DMatrix::identity(p, p),
        }
    }

    pub fn p(&self) -> usize {
        self.m.nrows()
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.m[(i, j)]
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.m
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.p())
            .map(|i| (0..self.p()).map(|j| self.m[(i, j)]).collect())
            .collect()
    }

    fn submatrix(&self, idx: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(idx.len(), idx.len(), |a, b| self.m[(idx[a], idx[b])])
    }

    /// Lower Cholesky factor of the submatrix on `idx`, guarded by
    /// [`CONDITION_LIMIT`].
    fn guarded_cholesky(&self, idx: &[usize]) -> Result<DMatrix<f64>> {
        let sub = self.submatrix(idx);
        let chol = sub
            .cholesky()
            .ok_or_else(|| Error::Numeric(format!("submatrix on {idx:?} is not positive definite")))?;
        let l = chol.unpack();
        let diag = l.diagonal();
        let (lo, hi) = diag
            .iter()
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), &d| (lo.min(d), hi.max(d)));
        if !(lo > 0.0) || (hi / lo).powi(2) > CONDITION_LIMIT {
            return Err(Error::Numeric(format!(
                "submatrix on {idx:?} is ill-conditioned"
            )));
        }
        Ok(l)
    }
}

/// Partial correlation `ρ(i, j | s)` from a covariance matrix.
///
/// Factors the submatrix on `(s, i, j)` by Cholesky; the trailing `2 × 2`
/// block of the factor carries the conditional covariance of `(i, j)` given
/// `s`, which equals `-Ω_ij / sqrt(Ω_ii Ω_jj)` for `Ω` the inverse of the
/// submatrix.
pub fn partial_correlation(
    sigma: &CovarianceMatrix,
    i: usize,
    j: usize,
    s: VertexSet,
) -> Result<f64> {
    crate::graph::dsep::check_query(sigma.p(), i, j, s)?;
    let mut idx = s.to_vec();
    idx.push(i);
    idx.push(j);
    let l = sigma.guarded_cholesky(&idx)?;
    let m = idx.len();
    let b = l[(m - 1, m - 2)];
    let c = l[(m - 1, m - 1)];
    Ok((b / b.hypot(c)).clamp(-1.0, 1.0))
}

/// Undirected graph on `subset` with an edge wherever the corresponding entry
/// of the inverse submatrix exceeds `threshold` in absolute value.
pub fn precision_moral_edges(
    sigma_hat: &CovarianceMatrix,
    subset: VertexSet,
    threshold: f64,
) -> Result<UndirectedGraph> {
    if !(threshold > 0.0) {
        return invalid(format!("precision threshold must be positive, got {threshold}"));
    }
    if subset.is_empty() {
        return invalid("precision graph over an empty vertex set");
    }
    for v in subset.iter() {
        check_vertex(sigma_hat.p(), v)?;
    }
    let idx = subset.to_vec();
    let l = sigma_hat.guarded_cholesky(&idx)?;
    let precision = nalgebra::linalg::Cholesky::pack_dirty(l).inverse();
    let mut g = UndirectedGraph::empty(sigma_hat.p(), subset);
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            if precision[(a, b)].abs() > threshold {
                g.add_edge(idx[a], idx[b]);
            }
        }
    }
    Ok(g)
}

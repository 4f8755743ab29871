use std::collections::BTreeMap;

use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::ci::{CovarianceMatrix, Dataset};
use crate::error::invalid;
use crate::graph::{Dag, DagJson};
use crate::{Error, Result};

/// Linear SEM `X_v = Σ_{u ∈ pa(v)} β_uv X_u + ε_v` with independent
/// Gaussian errors.
#[derive(Clone, PartialEq, Debug)]
pub struct LinearSem {
    dag: Dag,
    coefficients: BTreeMap<(usize, usize), f64>,
    variances: Vec<f64>,
}

impl LinearSem {
    /// Needs a nonzero finite coefficient for exactly the edges of `dag` and
    /// a positive finite variance per vertex.
    pub fn new(dag: Dag, coefficients: BTreeMap<(usize, usize), f64>, variances: Vec<f64>) -> Result<Self> {
        if variances.len() != dag.p() {
            return invalid(format!("{} variances for {} vertices", variances.len(), dag.p()));
        }
        if variances.iter().any(|&v| !(v > 0.0 && v.is_finite())) {
            return invalid("error variances must be positive and finite");
        }
        let keys: Vec<(usize, usize)> = coefficients.keys().copied().collect();
        if keys != dag.edges() {
            return invalid("coefficients must be given for exactly the edges of the graph");
        }
        if coefficients.values().any(|&b| b == 0.0 || !b.is_finite()) {
            return invalid("edge coefficients must be nonzero and finite");
        }
        Ok(LinearSem {
            dag,
            coefficients,
            variances,
        })
    }

    pub fn dag(&self) -> &Dag {
        &self.dag
    }

    pub fn coefficient(&self, u: usize, v: usize) -> Option<f64> {
        self.coefficients.get(&(u, v)).copied()
    }

    pub fn coefficients(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.coefficients
    }

    pub fn variances(&self) -> &[f64] {
        &self.variances
    }
}

/// `{"graph": ..., "coefficients": [[u, v, beta], ...], "variances": [...]}`
/// with 1-indexed vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SemJson {
    pub graph: DagJson,
    pub coefficients: Vec<(usize, usize, f64)>,
    pub variances: Vec<f64>,
}

impl From<&LinearSem> for SemJson {
    fn from(sem: &LinearSem) -> Self {
        SemJson {
            graph: sem.dag().into(),
            coefficients: sem
                .coefficients
                .iter()
                .map(|(&(u, v), &b)| (u + 1, v + 1, b))
                .collect(),
            variances: sem.variances.clone(),
        }
    }
}

impl TryFrom<SemJson> for LinearSem {
    type Error = Error;

    fn try_from(j: SemJson) -> Result<Self> {
        let dag = Dag::try_from(j.graph)?;
        let mut coefficients = BTreeMap::new();
        for (u, v, b) in j.coefficients {
            if u == 0 || v == 0 || u > dag.p() || v > dag.p() {
                return invalid(format!("coefficient on ({u}, {v}) out of range"));
            }
            coefficients.insert((u - 1, v - 1), b);
        }
        LinearSem::new(dag, coefficients, j.variances)
    }
}

/// Random SEM on `g`: coefficients uniform on `±[coef_lo, coef_hi]`, error
/// variances uniform on `[var_lo, var_hi]`.
pub fn random_linear_sem(
    g: &Dag,
    coef_lo: f64,
    coef_hi: f64,
    var_lo: f64,
    var_hi: f64,
    seed: u64,
) -> Result<LinearSem> {
    if !(0.0 < coef_lo && coef_lo <= coef_hi && coef_hi.is_finite()) {
        return invalid(format!("bad coefficient range [{coef_lo}, {coef_hi}]"));
    }
    if !(0.0 < var_lo && var_lo <= var_hi && var_hi.is_finite()) {
        return invalid(format!("bad variance range [{var_lo}, {var_hi}]"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coefficients = BTreeMap::new();
    for e in g.edges() {
        let magnitude = rng.random_range(coef_lo..=coef_hi);
        let sign = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        coefficients.insert(e, sign * magnitude);
    }
    let variances = (0..g.p()).map(|_| rng.random_range(var_lo..=var_hi)).collect();
    LinearSem::new(g.clone(), coefficients, variances)
}

/// Covariance implied by `sem`, filled in topological order:
/// `Cov(X_v, X_w) = Σ_u β_uv Cov(X_u, X_w)` for earlier `w`, plus the error
/// variance on the diagonal.
pub fn covariance_of(sem: &LinearSem) -> CovarianceMatrix {
    let g = sem.dag();
    let p = g.p();
    let order = g.topological_order().expect("acyclic");
    let mut c = DMatrix::<f64>::zeros(p, p);
    for (k, &v) in order.iter().enumerate() {
        for &w in order[..=k].iter() {
            let mut x: f64 = g
                .parents(v)
                .iter()
                .map(|u| sem.coefficients[&(u, v)] * c[(u, w)])
                .sum();
            if w == v {
                x += sem.variances[v];
            }
            c[(v, w)] = x;
            c[(w, v)] = x;
        }
    }
    CovarianceMatrix::new(c).expect("implied covariance is symmetric")
}

/// `n` independent draws from `sem`, one row each.
pub fn draw_samples(sem: &LinearSem, n: usize, seed: u64) -> Result<Dataset> {
    if n == 0 {
        return invalid("need at least one sample");
    }
    let g = sem.dag();
    let p = g.p();
    let order = g.topological_order().expect("acyclic");
    let noise: Vec<Normal<f64>> = sem
        .variances
        .iter()
        .map(|v| Normal::new(0.0, v.sqrt()).expect("positive variance"))
        .collect();
    let parents: Vec<Vec<(usize, f64)>> = (0..p)
        .map(|v| g.parents(v).iter().map(|u| (u, sem.coefficients[&(u, v)])).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut values = vec![0.0; n * p];
    for row in values.chunks_mut(p) {
        for &v in &order {
            let x = parents[v].iter().map(|&(u, b)| b * row[u]).sum::<f64>() + noise[v].sample(&mut rng);
            row[v] = x;
        }
    }
    Ok(Dataset::from_row_major(n, p, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit_sem(p: usize, edges: &[(usize, usize)]) -> LinearSem {
        let g = Dag::new(p, edges).unwrap();
        let coefficients = edges.iter().map(|&e| (e, 1.0)).collect();
        LinearSem::new(g, coefficients, vec![1.0; p]).unwrap()
    }

    #[test]
    fn covariance_examples() {
        let c = covariance_of(&unit_sem(2, &[(0, 1)]));
        assert_eq!(c.rows(), vec![vec![1.0, 1.0], vec![1.0, 2.0]]);
        let c = covariance_of(&unit_sem(3, &[(0, 1), (1, 2)]));
        assert_eq!(
            c.rows(),
            vec![vec![1.0, 1.0, 1.0], vec![1.0, 2.0, 2.0], vec![1.0, 2.0, 3.0]]
        );
        let g = Dag::empty(2).unwrap();
        let sem = LinearSem::new(g, BTreeMap::new(), vec![1.5, 2.0]).unwrap();
        assert_eq!(covariance_of(&sem).rows(), vec![vec![1.5, 0.0], vec![0.0, 2.0]]);
    }

    #[test]
    fn random_sem_ranges() {
        let g = Dag::new(4, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        let sem = random_linear_sem(&g, 0.3, 1.0, 1.0, 2.0, 9).unwrap();
        assert_eq!(sem.coefficients().len(), 4);
        assert!(sem.coefficients().values().all(|b| (0.3..=1.0).contains(&b.abs())));
        assert!(sem.variances().iter().all(|v| (1.0..=2.0).contains(v)));
        assert!(random_linear_sem(&g, 0.0, 1.0, 1.0, 2.0, 9).is_err());
        assert!(random_linear_sem(&g, 0.3, 1.0, 2.0, 1.0, 9).is_err());
        let empty = random_linear_sem(&Dag::empty(3).unwrap(), 0.3, 1.0, 1.0, 2.0, 9).unwrap();
        assert!(empty.coefficients().is_empty());
    }

    #[test]
    fn sem_validation_and_json() {
        let g = Dag::new(2, &[(0, 1)]).unwrap();
        assert!(LinearSem::new(g.clone(), BTreeMap::new(), vec![1.0, 1.0]).is_err());
        assert!(LinearSem::new(g.clone(), [((0, 1), 0.0)].into(), vec![1.0, 1.0]).is_err());
        assert!(LinearSem::new(g.clone(), [((0, 1), 0.5)].into(), vec![1.0, 0.0]).is_err());
        let sem = LinearSem::new(g, [((0, 1), 0.5)].into(), vec![1.0, 1.5]).unwrap();
        let text = serde_json::to_string(&SemJson::from(&sem)).unwrap();
        assert!(text.contains("[1,2,0.5]"));
        let back: SemJson = serde_json::from_str(&text).unwrap();
        assert_eq!(LinearSem::try_from(back).unwrap(), sem);
    }

    #[test]
    fn samples_shape_and_determinism() {
        let sem = unit_sem(3, &[(0, 1), (1, 2)]);
        let a = draw_samples(&sem, 50, 1).unwrap();
        assert_eq!((a.n(), a.p()), (50, 3));
        assert_eq!(a, draw_samples(&sem, 50, 1).unwrap());
        assert!(draw_samples(&sem, 0, 1).is_err());
    }
}

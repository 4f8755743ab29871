use std::io::{Read, Write};

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::CovarianceMatrix;
use crate::error::invalid;
use crate::{Error, Result};

/// `n × p` observations, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    n: usize,
    p: usize,
    values: Vec<f64>,
}

impl Dataset {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let p = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != p) {
            return invalid("dataset rows have inconsistent lengths");
        }
        Ok(Dataset {
            n: rows.len(),
            p,
            values: rows.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_row_major(n: usize, p: usize, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), n * p);
        Dataset { n, p, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.values[r * self.p..(r + 1) * self.p]
    }

    pub fn column_means(&self) -> Vec<f64> {
        let mut means = vec![0.0; self.p];
        for r in 0..self.n {
            for (m, x) in means.iter_mut().zip(self.row(r)) {
                *m += x;
            }
        }
        means.iter_mut().for_each(|m| *m /= self.n as f64);
        means
    }

    /// Empirical covariance around the sample mean, denominator `n`.
    pub fn covariance(&self) -> Result<CovarianceMatrix> {
        if self.n == 0 {
            return invalid("covariance of an empty dataset");
        }
        let means = self.column_means();
        let centered = DMatrix::from_fn(self.n, self.p, |r, c| self.values[r * self.p + c] - means[c]);
        let mut cov = centered.transpose() * &centered / self.n as f64;
        // exact symmetry
        for i in 0..self.p {
            for j in 0..i {
                cov[(j, i)] = cov[(i, j)];
            }
        }
        CovarianceMatrix::new(cov)
    }

    /// CSV with header `X1..Xp`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        wr.write_record((1..=self.p).map(|i| format!("X{i}")))?;
        for r in 0..self.n {
            wr.write_record(self.row(r).iter().map(|x| format!("{x:?}")))?;
        }
        wr.flush()?;
        Ok(())
    }

    pub fn read_csv<R: Read>(r: R) -> Result<Self> {
        let mut rd = csv::Reader::from_reader(r);
        let p = rd.headers()?.len();
        let mut values = Vec::new();
        let mut n = 0;
        for rec in rd.records() {
            let rec = rec?;
            if rec.len() != p {
                return invalid(format!("row {} has {} fields, expected {p}", n + 1, rec.len()));
            }
            for field in rec.iter() {
                let x: f64 = field.trim().parse().map_err(|_| {
                    Error::InvalidArgument(format!("row {}: cannot parse {field:?}", n + 1))
                })?;
                values.push(x);
            }
            n += 1;
        }
        Ok(Dataset { n, p, values })
    }
}

/// `{"p": int, "matrix": [[...]]}`
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CovarianceJson {
    pub p: usize,
    pub matrix: Vec<Vec<f64>>,
}

impl From<&CovarianceMatrix> for CovarianceJson {
    fn from(c: &CovarianceMatrix) -> Self {
        CovarianceJson {
            p: c.p(),
            matrix: c.rows(),
        }
    }
}

impl TryFrom<CovarianceJson> for CovarianceMatrix {
    type Error = Error;

    fn try_from(j: CovarianceJson) -> Result<Self> {
        if j.matrix.len() != j.p {
            return invalid(format!("covariance has {} rows, expected {}", j.matrix.len(), j.p));
        }
        CovarianceMatrix::from_rows(&j.matrix)
    }
}

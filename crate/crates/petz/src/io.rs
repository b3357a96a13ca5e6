//! JSON wire format for matrices:
//! `{"dim": n, "re": [[...]], "im": [[...]]}`, row-major, with the real and
//! imaginary parts as separate `n x n` grids.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
}

impl MatrixJson {
    pub fn to_matrix<T: Scalar>(&self) -> Result<ComplexMatrix<T>> {
        if self.re.len() != self.dim || self.im.len() != self.dim {
            return Err(Error::InvalidFormat(format!(
                "expected {0} rows, found re: {1}, im: {2}",
                self.dim,
                self.re.len(),
                self.im.len()
            )));
        }
        for (i, row) in self.re.iter().chain(self.im.iter()).enumerate() {
            if row.len() != self.dim {
                return Err(Error::InvalidFormat(format!(
                    "row {} has {} entries, expected {}",
                    i % self.dim,
                    row.len(),
                    self.dim
                )));
            }
        }
        let re: Vec<Vec<T>> = self
            .re
            .iter()
            .map(|row| row.iter().map(|&x| T::from_f64_lossy(x)).collect())
            .collect();
        let im: Vec<Vec<T>> = self
            .im
            .iter()
            .map(|row| row.iter().map(|&x| T::from_f64_lossy(x)).collect())
            .collect();
        ComplexMatrix::from_re_im(&re, &im)
    }

    pub fn from_matrix<T: Scalar>(m: &ComplexMatrix<T>) -> Self {
        let n = m.dim();
        let grid = |f: fn(&num_complex::Complex<T>) -> T| -> Vec<Vec<f64>> {
            (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| f(&m[(i, j)]).to_f64().unwrap_or(f64::NAN))
                        .collect()
                })
                .collect()
        };
        Self { dim: n, re: grid(|z| z.re), im: grid(|z| z.im) }
    }
}

//! Small exact integer matrices: determinants and definiteness tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense square integer matrix, serialized as a list of rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntMatrix {
    rows: Vec<Vec<i64>>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<i64>>) -> Result<IntMatrix> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Matrix("matrix is not square".into()));
        }
        Ok(IntMatrix { rows })
    }

    pub fn zeros(n: usize) -> IntMatrix {
        IntMatrix { rows: vec![vec![0; n]; n] }
    }

    pub fn diagonal(entries: &[i64]) -> IntMatrix {
        let mut m = IntMatrix::zeros(entries.len());
        for (k, &e) in entries.iter().enumerate() {
            m.rows[k][k] = e;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn negated(&self) -> IntMatrix {
        IntMatrix { rows: self.rows.iter().map(|r| r.iter().map(|x| -x).collect()).collect() }
    }

    /// Deletes row and column `k`.
    pub fn minor(&self, k: usize) -> IntMatrix {
        let rows = self
            .rows
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != k).map(|(_, &x)| x).collect())
            .collect();
        IntMatrix { rows }
    }

    /// Leading `k x k` block.
    pub fn leading(&self, k: usize) -> IntMatrix {
        IntMatrix { rows: self.rows[..k].iter().map(|r| r[..k].to_vec()).collect() }
    }

    /// Determinant by fraction-free (Bareiss) elimination. The empty matrix
    /// has determinant 1.
    pub fn determinant(&self) -> BigInt {
        let n = self.dim();
        let mut a: Vec<Vec<BigInt>> = self.rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        if n == 0 {
            return sign;
        }
        sign * &a[n - 1][n - 1]
    }

    /// Leading principal minors `det(A[..1])`, ..., `det(A[..n])`.
    pub fn leading_principal_minors(&self) -> Vec<BigInt> {
        (1..=self.dim()).map(|k| self.leading(k).determinant()).collect()
    }
}

/// Whether a symmetric integer matrix is negative definite.
///
/// Runs symmetric Gaussian elimination over the rationals without row
/// exchanges; the form is negative definite exactly when every pivot is
/// negative.
pub fn is_negative_definite(m: &IntMatrix) -> Result<bool> {
    if !m.is_symmetric() {
        return Err(Error::Matrix("definiteness needs a symmetric matrix".into()));
    }
    let n = m.dim();
    let mut a: Vec<Vec<BigRational>> = m
        .rows()
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    for k in 0..n {
        let pivot = a[k][k].clone();
        if !pivot.is_negative() {
            return Ok(false);
        }
        for i in k + 1..n {
            let factor = &a[i][k] / &pivot;
            if factor.is_zero() {
                continue;
            }
            for j in k..n {
                let v = &a[i][j] - &factor * &a[k][j];
                a[i][j] = v;
            }
        }
    }
    Ok(true)
}

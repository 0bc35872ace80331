//! Dense matrices over arbitrary-precision integers.
//!
//! Determinant and rank use fraction-free (Bareiss) elimination, so every
//! intermediate value is an exact integer and no rational normalization or
//! floating point is involved.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl ExactMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix {
            rows,
            cols,
            entries,
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::invalid("ragged rows"));
        }
        Ok(Self::from_fn(rows.len(), cols, |i, j| rows[i][j].clone().into()))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| BigInt::zero())
    }

    pub fn identity(m: usize) -> Self {
        Self::from_fn(m, m, |i, j| BigInt::from((i == j) as u8))
    }

    pub fn all_ones(m: usize) -> Self {
        Self::from_fn(m, m, |_, _| BigInt::one())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.entries.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn checked_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::invalid(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Self::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum()
        }))
    }

    /// `self * self^T`.
    pub fn gram(&self) -> ExactMatrix {
        Self::from_fn(self.rows, self.rows, |i, j| {
            self.row(i).iter().zip(self.row(j)).map(|(a, b)| a * b).sum()
        })
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        self.checked_mul(rhs).expect("dimension mismatch in matrix product")
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by Bareiss elimination with row pivoting.
pub fn det_exact(a: &ExactMatrix) -> Result<BigInt> {
    if !a.is_square() {
        return Err(Error::invalid(format!(
            "determinant of non-square {}x{} matrix",
            a.rows, a.cols
        )));
    }
    let n = a.rows;
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m: Vec<Vec<BigInt>> = (0..n).map(|i| a.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    Ok(if negate { -d } else { d })
}

/// Exact rank over the rationals by fraction-free elimination with full
/// pivoting.
pub fn rank_exact(a: &ExactMatrix) -> usize {
    let (rows, cols) = (a.rows, a.cols);
    let mut m: Vec<Vec<BigInt>> = (0..rows).map(|i| a.row(i).to_vec()).collect();
    let mut col_order: Vec<usize> = (0..cols).collect();
    let mut prev = BigInt::one();
    let mut rank = 0;
    while rank < rows.min(cols) {
        // Full pivoting: smallest nonzero magnitude in the trailing block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in rank..rows {
            for (jj, &j) in col_order.iter().enumerate().skip(rank) {
                let x = &m[i][j];
                if !x.is_zero()
                    && pivot.is_none_or(|(pi, pj)| x.abs() < m[pi][col_order[pj]].abs())
                {
                    pivot = Some((i, jj));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        m.swap(rank, pi);
        col_order.swap(rank, pj);
        let pc = col_order[rank];
        for i in rank + 1..rows {
            for &j in &col_order[rank + 1..] {
                let v = (&m[i][j] * &m[rank][pc] - &m[i][pc] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][pc] = BigInt::zero();
        }
        prev = m[rank][pc].clone();
        rank += 1;
    }
    rank
}

/// The matrix `theta * J_m + gamma * I_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuredMatrixSpec {
    pub theta: i64,
    pub gamma: i64,
    pub m: usize,
}

impl StructuredMatrixSpec {
    pub fn new(theta: i64, gamma: i64, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("structured matrix needs m >= 1"));
        }
        Ok(StructuredMatrixSpec { theta, gamma, m })
    }

    /// Diagonal `theta + gamma`, off-diagonal `theta`.
    pub fn materialize(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.m, self.m, |i, j| {
            BigInt::from(self.theta) + if i == j { BigInt::from(self.gamma) } else { BigInt::zero() }
        })
    }

    /// Leading principal minor of order `k`: `(gamma + k*theta) * gamma^(k-1)`.
    pub fn leading_minor(&self, k: usize) -> BigInt {
        let gamma = BigInt::from(self.gamma);
        (&gamma + BigInt::from(k) * self.theta) * num_traits::pow(gamma, k - 1)
    }
}

/// Closed-form determinant `(gamma + m*theta) * gamma^(m-1)`.
pub fn structured_det(spec: &StructuredMatrixSpec) -> BigInt {
    spec.leading_minor(spec.m)
}

/// Sylvester's criterion on the closed-form leading minors.
pub fn is_positive_definite_structured(spec: &StructuredMatrixSpec) -> bool {
    (1..=spec.m).all(|k| spec.leading_minor(k).is_positive())
}

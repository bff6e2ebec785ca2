//! Toeplitz, Hankel and diagonal matrices with fast products.
//!
//! Toeplitz products go through a circulant embedding of length at least
//! `2N - 1`, padded to a power of two; Hankel products reverse the input and
//! reuse the Toeplitz path.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use super::DenseMatrix;
use crate::error::{Error, Result};

/// A square linear map that can be applied to a vector.
pub trait LinearOperator {
    fn dim(&self) -> usize;

    /// Applies the operator. `x.len()` must equal `dim()`.
    fn apply(&self, x: &[f64]) -> Vec<f64>;

    fn try_apply(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        Ok(self.apply(x))
    }

    /// Materializes the operator column by column.
    fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        let mut out = DenseMatrix::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            let col = self.apply(&e);
            for (i, v) in col.into_iter().enumerate() {
                out[(i, j)] = v;
            }
            e[j] = 0.0;
        }
        out
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}

/// `entry(i, j) = first_row[j - i]` above the diagonal, `first_col[i - j]` below.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzMatrix {
    first_row: Vec<f64>,
    first_col: Vec<f64>,
}

impl ToeplitzMatrix {
    pub fn new(first_row: Vec<f64>, first_col: Vec<f64>) -> Result<Self> {
        check_dim(first_row.len(), first_col.len())?;
        if first_row.is_empty() {
            return Err(Error::Precondition("empty Toeplitz matrix".into()));
        }
        if first_row[0] != first_col[0] {
            return Err(Error::Precondition(
                "Toeplitz first row and column disagree on the diagonal".into(),
            ));
        }
        Ok(Self { first_row, first_col })
    }

    /// Upper triangular Toeplitz matrix with the given first row.
    pub fn upper(first_row: Vec<f64>) -> Self {
        let mut first_col = vec![0.0; first_row.len()];
        first_col[0] = first_row[0];
        Self { first_row, first_col }
    }

    pub fn first_row(&self) -> &[f64] {
        &self.first_row
    }

    pub fn first_col(&self) -> &[f64] {
        &self.first_col
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        if j >= i {
            self.first_row[j - i]
        } else {
            self.first_col[i - j]
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.first_row.len();
        DenseMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.first_row.len(), x.len())?;
        Ok(toeplitz_fft(&self.first_row, &self.first_col, x))
    }
}

impl LinearOperator for ToeplitzMatrix {
    fn dim(&self) -> usize {
        self.first_row.len()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        toeplitz_fft(&self.first_row, &self.first_col, x)
    }
}

/// `entry(i, j) = anti_diagonals[i + j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct HankelMatrix {
    anti_diagonals: Vec<f64>,
}

impl HankelMatrix {
    pub fn new(anti_diagonals: Vec<f64>) -> Result<Self> {
        if anti_diagonals.len().is_multiple_of(2) {
            return Err(Error::Precondition(format!(
                "Hankel matrix needs 2N - 1 anti-diagonals, got {}",
                anti_diagonals.len()
            )));
        }
        Ok(Self { anti_diagonals })
    }

    pub fn anti_diagonals(&self) -> &[f64] {
        &self.anti_diagonals
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.anti_diagonals[i + j]
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let n = self.dim();
        DenseMatrix::from_fn(n, n, |i, j| self.entry(i, j))
    }

    /// The Toeplitz matrix `T` with `H x = T reverse(x)`.
    pub fn as_exchanged_toeplitz(&self) -> ToeplitzMatrix {
        let n = self.dim();
        let a = &self.anti_diagonals;
        ToeplitzMatrix {
            first_row: (0..n).map(|j| a[n - 1 - j]).collect(),
            first_col: (0..n).map(|i| a[n - 1 + i]).collect(),
        }
    }

    pub fn matvec(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        Ok(self.apply(x))
    }
}

impl LinearOperator for HankelMatrix {
    fn dim(&self) -> usize {
        self.anti_diagonals.len().div_ceil(2)
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let t = self.as_exchanged_toeplitz();
        let reversed: Vec<f64> = x.iter().rev().copied().collect();
        toeplitz_fft(&t.first_row, &t.first_col, &reversed)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagonalMatrix {
    diag: Vec<f64>,
}

impl DiagonalMatrix {
    pub fn new(diag: Vec<f64>) -> Self {
        Self { diag }
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    /// Entrywise reciprocal; fails on a zero diagonal entry.
    pub fn inverse(&self) -> Result<Self> {
        if let Some(pivot) = self.diag.iter().position(|&d| d == 0.0) {
            return Err(Error::Singular { pivot });
        }
        Ok(Self {
            diag: self.diag.iter().map(|d| 1.0 / d).collect(),
        })
    }

    pub fn to_dense(&self) -> DenseMatrix {
        DenseMatrix::diagonal(&self.diag)
    }
}

impl LinearOperator for DiagonalMatrix {
    fn dim(&self) -> usize {
        self.diag.len()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.diag.iter().zip(x).map(|(d, v)| d * v).collect()
    }
}

fn toeplitz_fft(first_row: &[f64], first_col: &[f64], x: &[f64]) -> Vec<f64> {
    let n = x.len();
    if n == 1 {
        return vec![first_row[0] * x[0]];
    }
    let len = (2 * n - 1).next_power_of_two();
    let mut circ = vec![Complex::new(0.0, 0.0); len];
    for k in 0..n {
        circ[k].re = first_col[k];
    }
    for k in 1..n {
        circ[len - k].re = first_row[k];
    }
    let mut padded = vec![Complex::new(0.0, 0.0); len];
    for (p, &v) in padded.iter_mut().zip(x) {
        p.re = v;
    }

    let mut planner = FftPlanner::<f64>::new();
    let forward = planner.plan_fft_forward(len);
    let inverse = planner.plan_fft_inverse(len);
    forward.process(&mut circ);
    forward.process(&mut padded);
    for (p, c) in padded.iter_mut().zip(&circ) {
        *p *= c;
    }
    inverse.process(&mut padded);
    let scale = 1.0 / len as f64;
    padded[..n].iter().map(|c| c.re * scale).collect()
}

//! Combinatorial scalars: binomial coefficients, signed Stirling numbers of
//! the first kind, elementary symmetric functions.
//!
//! Everything is stored as `f64`. Binomials are exact up to row 56 (the
//! largest entries stay below 2^53); Stirling numbers are exact up to row 19.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub const MAX_BINOMIAL_ROW: usize = 64;
pub const MAX_STIRLING_ROW: usize = 32;

/// Pascal triangle `binom(i, j)` for `0 <= j <= i <= max_n`.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    max_n: usize,
    rows: Vec<Vec<f64>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Result<Self> {
        if max_n > MAX_BINOMIAL_ROW {
            return Err(Error::Size {
                value: max_n,
                max: MAX_BINOMIAL_ROW,
            });
        }
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![1.0]);
        for i in 1..=max_n {
            let prev = &rows[i - 1];
            let mut row = vec![1.0; i + 1];
            for j in 1..i {
                row[j] = prev[j - 1] + prev[j];
            }
            rows.push(row);
        }
        Ok(Self { max_n, rows })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    /// `binom(i, j)`, zero when `j > i`. Panics if `i > max_n`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if j > i {
            0.0
        } else {
            self.rows[i][j]
        }
    }
}

fn shared_binomials() -> &'static BinomialTable {
    static TABLE: OnceLock<BinomialTable> = OnceLock::new();
    TABLE.get_or_init(|| BinomialTable::new(MAX_BINOMIAL_ROW).expect("static size"))
}

/// `binom(n, k)` with the convention that it vanishes for `k > n`.
///
/// Rows beyond the shared table fall back to the multiplicative formula.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    if n <= MAX_BINOMIAL_ROW {
        return shared_binomials().get(n, k);
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `binom(n, k)` for a possibly negative lower index (zero outside `0..=n`).
#[inline]
pub fn binomial_signed(n: usize, k: isize) -> f64 {
    if k < 0 {
        0.0
    } else {
        binomial(n, k as usize)
    }
}

pub fn factorial(n: usize) -> f64 {
    (2..=n).fold(1.0, |acc, i| acc * i as f64)
}

/// Signed Stirling numbers of the first kind `s(i, k)`, the coefficients of
/// the falling factorial `y (y - 1) ... (y - i + 1) = sum_k s(i, k) y^k`.
#[derive(Clone, Debug)]
pub struct StirlingTable {
    max_n: usize,
    rows: Vec<Vec<f64>>,
}

impl StirlingTable {
    pub fn new(max_n: usize) -> Result<Self> {
        if max_n > MAX_STIRLING_ROW {
            return Err(Error::Size {
                value: max_n,
                max: MAX_STIRLING_ROW,
            });
        }
        let mut rows: Vec<Vec<f64>> = Vec::with_capacity(max_n + 1);
        rows.push(vec![1.0]);
        for i in 0..max_n {
            // s(i+1, k) = s(i, k-1) - i s(i, k)
            let prev = &rows[i];
            let mut row = vec![0.0; i + 2];
            for k in 1..=i + 1 {
                let lower = prev[k - 1];
                let same = if k <= i { prev[k] } else { 0.0 };
                row[k] = lower - i as f64 * same;
            }
            rows.push(row);
        }
        Ok(Self { max_n, rows })
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    #[inline]
    pub fn get(&self, i: usize, k: usize) -> f64 {
        if k > i {
            0.0
        } else {
            self.rows[i][k]
        }
    }
}

/// Elementary symmetric functions `sigma_0 .. sigma_{len}` of the nodes.
///
/// Built by multiplying in one linear factor at a time, so every update is a
/// sum of same-signed terms when the nodes are nonnegative.
pub fn elementary_symmetric(nodes: &[f64]) -> Vec<f64> {
    let mut sigma = vec![0.0; nodes.len() + 1];
    sigma[0] = 1.0;
    for (count, &x) in nodes.iter().enumerate() {
        for k in (1..=count + 1).rev() {
            sigma[k] += x * sigma[k - 1];
        }
    }
    sigma
}

/// Monomial coefficients of `prod_i (x - x_i)`, lowest degree first.
///
/// Coefficient `k` is `(-1)^(n-k+1) sigma_{n-k+1}` where `n + 1` is the
/// number of nodes.
pub fn node_polynomial_monomial(nodes: &[f64]) -> Vec<f64> {
    let sigma = elementary_symmetric(nodes);
    let top = nodes.len();
    (0..=top)
        .map(|k| {
            let idx = top - k;
            if idx.is_multiple_of(2) {
                sigma[idx]
            } else {
                -sigma[idx]
            }
        })
        .collect()
}

/// Row `n` of the signed Stirling numbers of the first kind in exact integer
/// arithmetic; `None` once an entry leaves the `i128` range.
pub fn stirling_row_exact(n: usize) -> Option<Vec<i128>> {
    let mut row: Vec<i128> = vec![1];
    for i in 0..n {
        let mut next = vec![0i128; i + 2];
        for k in 1..=i + 1 {
            let same = if k <= i { row[k].checked_mul(i as i128)? } else { 0 };
            next[k] = row[k - 1].checked_sub(same)?;
        }
        row = next;
    }
    Some(row)
}

/// `binom(n, k)` in exact integer arithmetic; `None` on overflow.
pub fn binomial_exact(n: usize, k: usize) -> Option<i128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by i + 1 at every step.
        acc = acc.checked_mul((n - i) as i128)? / (i + 1) as i128;
    }
    Some(acc)
}

/// Coefficients, lowest degree first, of `prod_i (a_i + b_i h)`.
pub fn expand_linear_factors(factors: &[(f64, f64)]) -> Vec<f64> {
    let mut poly = vec![1.0];
    for &(a, b) in factors {
        let mut next = vec![0.0; poly.len() + 1];
        for (k, &c) in poly.iter().enumerate() {
            next[k] += a * c;
            next[k + 1] += b * c;
        }
        poly = next;
    }
    poly
}

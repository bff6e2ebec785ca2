//! Bernstein-Vandermonde matrices on the `d`-simplex over the equispaced
//! lattice `{alpha / m : |alpha| = m}`, degree elevation, the block LU
//! factorization induced by the leading multiindex component, and the
//! recursive block solver built on it.
//!
//! Lattices are ordered in contiguous blocks of constant leading component,
//! ascending, and recursively the same way inside each block. With this
//! ordering the `d = 1` matrix coincides with the univariate equispaced
//! Bernstein-Vandermonde matrix, row `i` and column `j` being the indices
//! with leading component `i` and `j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{lu_factor, lu_factor_nopivot, DenseMatrix, LuFactors};
use crate::scalar::binomial;
use crate::vandermonde::BernsteinVandermonde;

/// A multiindex `beta = (beta_0, ..., beta_d)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiIndex(Vec<usize>);

impl MultiIndex {
    pub fn new(parts: Vec<usize>) -> Self {
        MultiIndex(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    /// Spatial dimension `d` (one less than the number of parts).
    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }

    /// `|beta|! / prod_i beta_i!`, accumulated as a product of binomials.
    pub fn multinomial(&self) -> f64 {
        let mut rest = self.order();
        let mut acc = 1.0;
        for &b in &self.0 {
            acc *= binomial(rest, b);
            rest -= b;
        }
        acc
    }

    /// Componentwise `self >= other`.
    pub fn dominates(&self, other: &MultiIndex) -> bool {
        self.0.len() == other.0.len() && self.0.iter().zip(&other.0).all(|(a, b)| a >= b)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Number of multiindices of length `d + 1` and order `n`.
pub fn lattice_size(d: usize, n: usize) -> usize {
    binomial(n + d, d) as usize
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiIndexLattice {
    d: usize,
    n: usize,
    indices: Vec<MultiIndex>,
}

impl MultiIndexLattice {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn indices(&self) -> &[MultiIndex] {
        &self.indices
    }

    /// Position of `beta` in the lattice ordering.
    pub fn rank(&self, beta: &MultiIndex) -> Option<usize> {
        if beta.dim() != self.d || beta.order() != self.n {
            return None;
        }
        Some(rank_in(self.d, self.n, beta.parts()))
    }

    /// Row range of the block with leading component `b0`.
    pub fn block_range(&self, b0: usize) -> std::ops::Range<usize> {
        block_range(self.d, self.n, b0)
    }
}

fn block_offset(d: usize, n: usize, b0: usize) -> usize {
    (0..b0).map(|k| lattice_size(d - 1, n - k)).sum()
}

fn block_range(d: usize, n: usize, b0: usize) -> std::ops::Range<usize> {
    assert!(d >= 1 && b0 <= n);
    let start = block_offset(d, n, b0);
    start..start + lattice_size(d - 1, n - b0)
}

fn rank_in(d: usize, n: usize, parts: &[usize]) -> usize {
    if d == 0 {
        return 0;
    }
    block_offset(d, n, parts[0]) + rank_in(d - 1, n - parts[0], &parts[1..])
}

fn push_lattice(d: usize, n: usize, prefix: &mut Vec<usize>, out: &mut Vec<MultiIndex>) {
    if d == 0 {
        prefix.push(n);
        out.push(MultiIndex(prefix.clone()));
        prefix.pop();
        return;
    }
    for b0 in 0..=n {
        prefix.push(b0);
        push_lattice(d - 1, n - b0, prefix, out);
        prefix.pop();
    }
}

pub fn build_lattice(d: usize, n: usize) -> MultiIndexLattice {
    let mut indices = Vec::with_capacity(lattice_size(d, n));
    push_lattice(d, n, &mut Vec::with_capacity(d + 1), &mut indices);
    MultiIndexLattice { d, n, indices }
}

/// `V^{d,m,n}_{alpha beta} = (n! / beta!) prod_i (alpha_i / m)^{beta_i}`.
#[derive(Clone, Debug)]
pub struct SimplexVandermonde {
    d: usize,
    m: usize,
    n: usize,
    matrix: DenseMatrix,
}

impl SimplexVandermonde {
    pub fn new(d: usize, m: usize, n: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Precondition("simplex dimension must be at least 1".into()));
        }
        if m == 0 && n > 0 {
            return Err(Error::Precondition(
                "a lattice of order 0 cannot carry a positive-degree basis".into(),
            ));
        }
        Ok(Self {
            d,
            m,
            n,
            matrix: vandermonde_dense(d, m, n),
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn lattice_order(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.matrix
    }
}

/// Dense `V^{d,m,n}` for any `d >= 0`. For `m = 0` the lattice point is
/// taken as the origin, so the matrix is `[1]` when `n = 0` and zero
/// otherwise.
pub(crate) fn vandermonde_dense(d: usize, m: usize, n: usize) -> DenseMatrix {
    let rows = build_lattice(d, m);
    let cols = build_lattice(d, n);
    let inv_m = if m == 0 { 0.0 } else { 1.0 / m as f64 };
    let weights: Vec<f64> = cols.indices.iter().map(MultiIndex::multinomial).collect();
    DenseMatrix::from_fn(rows.len(), cols.len(), |i, j| {
        let alpha = rows.indices[i].parts();
        let beta = cols.indices[j].parts();
        alpha
            .iter()
            .zip(beta)
            .map(|(&a, &b)| (a as f64 * inv_m).powi(b as i32))
            .product::<f64>()
            * weights[j]
    })
}

/// Degree elevation `E^{d,n0,n}` stored row-wise; row `gamma` holds
/// `prod_i binom(gamma_i, beta_i) / binom(n, n0)` for every `beta <= gamma`.
#[derive(Clone, Debug)]
pub struct ElevationMatrix {
    d: usize,
    n0: usize,
    n: usize,
    rows: Vec<Vec<(usize, f64)>>,
    cols: usize,
}

impl ElevationMatrix {
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn from_degree(&self) -> usize {
        self.n0
    }

    pub fn to_degree(&self) -> usize {
        self.n
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows.len(), self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn row(&self, i: usize) -> &[(usize, f64)] {
        &self.rows[i]
    }

    pub fn apply(&self, c: &[f64]) -> Result<Vec<f64>> {
        if c.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: c.len(),
            });
        }
        Ok(self
            .rows
            .iter()
            .map(|r| r.iter().map(|&(j, e)| e * c[j]).sum())
            .collect())
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut out = DenseMatrix::zeros(self.rows.len(), self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for &(j, e) in r {
                out[(i, j)] = e;
            }
        }
        out
    }
}

/// Visits every `beta <= gamma` with `|beta| = target`.
fn for_each_dominated(gamma: &[usize], target: usize, prefix: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    let k = prefix.len();
    if k + 1 == gamma.len() {
        if target <= gamma[k] {
            prefix.push(target);
            f(prefix);
            prefix.pop();
        }
        return;
    }
    for b in 0..=gamma[k].min(target) {
        prefix.push(b);
        for_each_dominated(gamma, target - b, prefix, f);
        prefix.pop();
    }
}

pub fn elevation(d: usize, n0: usize, n: usize) -> Result<ElevationMatrix> {
    if n0 > n {
        return Err(Error::Precondition(format!(
            "cannot elevate from degree {n0} down to {n}"
        )));
    }
    let rows_lat = build_lattice(d, n);
    let scale = 1.0 / binomial(n, n0);
    let mut rows = Vec::with_capacity(rows_lat.len());
    let mut prefix = Vec::with_capacity(d + 1);
    for gamma in rows_lat.indices() {
        let g = gamma.parts();
        let mut row = Vec::new();
        for_each_dominated(g, n0, &mut prefix, &mut |beta| {
            let w: f64 = g.iter().zip(beta).map(|(&gi, &bi)| binomial(gi, bi)).product();
            row.push((rank_in(d, n0, beta), w * scale));
        });
        row.sort_by_key(|&(j, _)| j);
        rows.push(row);
    }
    Ok(ElevationMatrix {
        d,
        n0,
        n,
        rows,
        cols: lattice_size(d, n0),
    })
}

/// `m_{a0 b0} = binom(n, b0) (a0/m)^{b0} (1 - a0/m)^{n - b0}`.
pub fn block_scalar(m: usize, n: usize, a0: usize, b0: usize) -> f64 {
    let x = a0 as f64 / m as f64;
    binomial(n, b0) * x.powi(b0 as i32) * (1.0 - x).powi((n - b0) as i32)
}

#[derive(Clone, Debug)]
pub struct BlockReductionReport {
    pub scalar: f64,
    pub block: DenseMatrix,
    pub reduced: DenseMatrix,
    pub max_error: f64,
}

/// Compares block `(a0, b0)` of `V^{d,m,n}` with `m_{a0 b0} V^{d-1, m-a0, n-b0}`.
pub fn block_reduction_check(
    d: usize,
    m: usize,
    n: usize,
    a0: usize,
    b0: usize,
) -> Result<BlockReductionReport> {
    if d < 2 || m == 0 || a0 > m || b0 > n {
        return Err(Error::Precondition(format!(
            "block ({a0}, {b0}) of V^({d},{m},{n}) is not defined"
        )));
    }
    let full = vandermonde_dense(d, m, n);
    let rows: Vec<usize> = block_range(d, m, a0).collect();
    let cols: Vec<usize> = block_range(d, n, b0).collect();
    let block = full.select(&rows, &cols);
    let scalar = block_scalar(m, n, a0, b0);
    let reduced = vandermonde_dense(d - 1, m - a0, n - b0).scale(scalar);
    let max_error = block.max_abs_diff(&reduced);
    Ok(BlockReductionReport {
        scalar,
        block,
        reduced,
        max_error,
    })
}

fn univariate_lu(n: usize) -> Result<LuFactors> {
    lu_factor_nopivot(BernsteinVandermonde::equispaced(n).matrix())
}

/// Assembles the block factors `L^{d,n}` and `U^{d,n}` with
/// `L_{a0 b0} = L^n_{a0 b0} V^{d-1, n-a0, n-b0}` and
/// `U_{a0 b0} = U^n_{a0 b0} E^{d-1, n-b0, n-a0}`.
pub fn block_lu_factors(d: usize, n: usize) -> Result<(DenseMatrix, DenseMatrix)> {
    if d < 2 || n == 0 {
        return Err(Error::Precondition("block factors need d >= 2 and n >= 1".into()));
    }
    let lu = univariate_lu(n)?;
    let size = lattice_size(d, n);
    let mut l = DenseMatrix::zeros(size, size);
    let mut u = DenseMatrix::zeros(size, size);
    for a0 in 0..=n {
        let rows = block_range(d, n, a0);
        for b0 in 0..=n {
            let cols = block_range(d, n, b0);
            if b0 <= a0 {
                let v = vandermonde_dense(d - 1, n - a0, n - b0);
                let s = lu.l(a0, b0);
                for (bi, i) in rows.clone().enumerate() {
                    for (bj, j) in cols.clone().enumerate() {
                        l[(i, j)] = s * v[(bi, bj)];
                    }
                }
            }
            if b0 >= a0 {
                let e = elevation(d - 1, n - b0, n - a0)?;
                let s = lu.u(a0, b0);
                for (bi, i) in rows.clone().enumerate() {
                    for &(bj, val) in e.row(bi) {
                        u[(i, cols.start + bj)] = s * val;
                    }
                }
            }
        }
    }
    Ok((l, u))
}

/// Solves `V^{d,n,n} c = b` by block forward and back substitution with the
/// factors above, recursing on the diagonal blocks of `L`.
pub fn block_lu_solve(d: usize, n: usize, b: &[f64]) -> Result<Vec<f64>> {
    if d == 0 {
        return Err(Error::Precondition("simplex dimension must be at least 1".into()));
    }
    let size = lattice_size(d, n);
    if b.len() != size {
        return Err(Error::DimensionMismatch {
            expected: size,
            found: b.len(),
        });
    }
    if n == 0 {
        return Ok(b.to_vec());
    }
    if d == 1 {
        return lu_factor(BernsteinVandermonde::equispaced(n).matrix())?.solve(b);
    }
    let lu = univariate_lu(n)?;

    let mut y: Vec<Vec<f64>> = Vec::with_capacity(n + 1);
    for a0 in 0..=n {
        let mut rhs = b[block_range(d, n, a0)].to_vec();
        for (g, yg) in y.iter().enumerate() {
            let s = lu.l(a0, g);
            if s == 0.0 {
                continue;
            }
            let t = vandermonde_dense(d - 1, n - a0, n - g).matvec(yg)?;
            for (r, ti) in rhs.iter_mut().zip(t) {
                *r -= s * ti;
            }
        }
        let pivot = lu.l(a0, a0);
        if pivot == 0.0 {
            return Err(Error::Singular { pivot: a0 });
        }
        let mut ya = block_lu_solve(d - 1, n - a0, &rhs)?;
        ya.iter_mut().for_each(|v| *v /= pivot);
        y.push(ya);
    }

    let mut c: Vec<Vec<f64>> = vec![Vec::new(); n + 1];
    for b0 in (0..=n).rev() {
        let mut rhs = y[b0].clone();
        for (g, cg) in c.iter().enumerate().skip(b0 + 1) {
            let s = lu.u(b0, g);
            if s == 0.0 {
                continue;
            }
            let t = elevation(d - 1, n - g, n - b0)?.apply(cg)?;
            for (r, ti) in rhs.iter_mut().zip(t) {
                *r -= s * ti;
            }
        }
        let pivot = lu.u(b0, b0);
        if pivot == 0.0 {
            return Err(Error::Singular { pivot: b0 });
        }
        rhs.iter_mut().for_each(|v| *v /= pivot);
        c[b0] = rhs;
    }
    Ok(c.concat())
}

/// Gram matrix of the degree-`n` Bernstein basis over the reference simplex
/// `{x >= 0, sum x_i <= 1}`:
/// `M_{ab} = (n!/a!) (n!/b!) (a+b)! / (2n+d)!`.
pub fn simplex_mass_matrix(d: usize, n: usize) -> DenseMatrix {
    let lat = build_lattice(d, n);
    let idx = lat.indices();
    let weights: Vec<f64> = idx.iter().map(MultiIndex::multinomial).collect();
    // (a+b)!/(2n+d)! = 1 / ((2n+d)!/(2n)! * multinomial(a+b))
    let rising: f64 = (2 * n + 1..=2 * n + d).map(|k| k as f64).product();
    DenseMatrix::from_fn(lat.len(), lat.len(), |i, j| {
        let sum = MultiIndex(
            idx[i]
                .parts()
                .iter()
                .zip(idx[j].parts())
                .map(|(a, b)| a + b)
                .collect(),
        );
        weights[i] * weights[j] / (sum.multinomial() * rising)
    })
}

/// `sqrt(c^T M c)` with the simplex mass matrix.
pub fn simplex_m_norm(mass: &DenseMatrix, c: &[f64]) -> Result<f64> {
    let mc = mass.matvec(c)?;
    Ok(c.iter().zip(&mc).map(|(a, b)| a * b).sum::<f64>().max(0.0).sqrt())
}

/// Evaluates `sum_beta c_beta B^n_beta(lambda)` at barycentric `lambda`.
pub fn simplex_eval(d: usize, n: usize, coeffs: &[f64], lambda: &[f64]) -> f64 {
    assert_eq!(lambda.len(), d + 1);
    build_lattice(d, n)
        .indices()
        .iter()
        .zip(coeffs)
        .map(|(beta, c)| {
            c * beta.multinomial()
                * beta
                    .parts()
                    .iter()
                    .zip(lambda)
                    .map(|(&b, &l)| l.powi(b as i32))
                    .product::<f64>()
        })
        .sum()
}

//! Univariate polynomial bases on `[0, 1]`: Bernstein, monomial, shifted
//! Legendre and Lagrange, plus the node sets used for interpolation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conditioning::mass_matrix;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::binomial;

/// Strictly increasing interpolation nodes in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct NodeSet(Vec<f64>);

impl NodeSet {
    pub fn new(nodes: Vec<f64>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::InvalidNodes("empty node set".into()));
        }
        if let Some(bad) = nodes.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::InvalidNodes(format!("node {bad} outside [0, 1]")));
        }
        if let Some(i) = nodes.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidNodes(format!(
                "nodes {} and {} are not strictly increasing",
                i,
                i + 1
            )));
        }
        Ok(Self(nodes))
    }

    /// `x_i = i / n` for `i = 0..=n`.
    pub fn equispaced(n: usize) -> Self {
        if n == 0 {
            return Self(vec![0.0]);
        }
        Self((0..=n).map(|i| i as f64 / n as f64).collect())
    }

    /// Node `j` drawn uniformly from `[j/(n+1), (j+1)/(n+1))`.
    pub fn stratified<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let width = 1.0 / (n + 1) as f64;
        Self(
            (0..=n)
                .map(|j| {
                    let lo = j as f64 * width;
                    let hi = (j + 1) as f64 * width;
                    // Guard the half-open interval against rounding up to hi.
                    let x = lo + rng.gen::<f64>() * width;
                    if x >= hi {
                        lo
                    } else {
                        x
                    }
                })
                .collect(),
        )
    }

    /// Stratified nodes from a generator seeded by `(seed, n)`.
    pub fn stratified_seeded(n: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(n as u64);
        Self::stratified(n, &mut rng)
    }

    /// Polynomial degree `n` for `n + 1` nodes.
    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `prod_{i != j} (x_j - x_i)`, the derivative of the node polynomial at `x_j`.
    pub fn node_derivative_products(&self) -> Vec<f64> {
        let x = &self.0;
        (0..x.len())
            .map(|j| {
                x.iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, xi)| x[j] - xi)
                    .product()
            })
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Basis {
    Bernstein,
    Monomial,
    Legendre,
}

/// Coefficients of a polynomial of degree `coeffs.len() - 1` in a given basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CoefficientVector {
    pub basis: Basis,
    pub coeffs: Vec<f64>,
}

impl CoefficientVector {
    pub fn new(basis: Basis, coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::Precondition("empty coefficient vector".into()));
        }
        Ok(Self { basis, coeffs })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: f64) -> f64 {
        match self.basis {
            Basis::Bernstein => bernstein_poly_eval(&self.coeffs, x),
            Basis::Monomial => monomial_eval(&self.coeffs, x),
            Basis::Legendre => self
                .coeffs
                .iter()
                .enumerate()
                .map(|(j, c)| c * legendre_shifted(j, x))
                .sum(),
        }
    }

    /// Rewrites the polynomial in the Bernstein basis of its own degree.
    pub fn to_bernstein(&self) -> CoefficientVector {
        let n = self.degree();
        let coeffs = match self.basis {
            Basis::Bernstein => self.coeffs.clone(),
            Basis::Monomial => monomial_to_bernstein(&self.coeffs, n),
            Basis::Legendre => legendre_to_bernstein(n)
                .matvec(&self.coeffs)
                .expect("square conversion matrix"),
        };
        CoefficientVector {
            basis: Basis::Bernstein,
            coeffs,
        }
    }
}

/// `B^n_j(x) = binom(n, j) x^j (1 - x)^(n - j)`.
pub fn bernstein(n: usize, j: usize, x: f64) -> Result<f64> {
    if j > n {
        return Err(Error::IndexOutOfRange { index: j, degree: n });
    }
    Ok(bernstein_unchecked(n, j, x))
}

#[inline]
pub(crate) fn bernstein_unchecked(n: usize, j: usize, x: f64) -> f64 {
    binomial(n, j) * x.powi(j as i32) * (1.0 - x).powi((n - j) as i32)
}

/// The vector `(B^n_0(x), ..., B^n_n(x))`.
pub fn bernstein_all(n: usize, x: f64) -> Vec<f64> {
    (0..=n).map(|j| bernstein_unchecked(n, j, x)).collect()
}

/// Evaluates a Bernstein-form polynomial by de Casteljau's algorithm.
pub fn bernstein_poly_eval(coeffs: &[f64], x: f64) -> f64 {
    let mut work = coeffs.to_vec();
    let y = 1.0 - x;
    for level in (1..work.len()).rev() {
        for k in 0..level {
            work[k] = y * work[k] + x * work[k + 1];
        }
    }
    work[0]
}

/// Bernstein coefficients (degree `n - 1`) of the derivative of a degree-`n`
/// Bernstein polynomial: `n (c_{k+1} - c_k)`.
pub fn bernstein_derivative(coeffs: &[f64]) -> Vec<f64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return vec![0.0];
    }
    coeffs.windows(2).map(|w| n as f64 * (w[1] - w[0])).collect()
}

/// Horner evaluation of monomial coefficients (lowest degree first).
pub fn monomial_eval(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Converts monomial coefficients to Bernstein coefficients of degree
/// `degree >= mono.len() - 1`:
/// `b_k = binom(N, k)^{-1} sum_{l <= k} binom(N - l, k - l) a_l`.
pub fn monomial_to_bernstein(mono: &[f64], degree: usize) -> Vec<f64> {
    assert!(
        mono.len() <= degree + 1,
        "target degree {degree} below polynomial degree {}",
        mono.len().saturating_sub(1)
    );
    (0..=degree)
        .map(|k| {
            let s: f64 = mono
                .iter()
                .enumerate()
                .take(k + 1)
                .map(|(l, a)| binomial(degree - l, k - l) * a)
                .sum();
            s / binomial(degree, k)
        })
        .collect()
}

/// `P_j(2x - 1)`, the Legendre polynomial shifted to `[0, 1]` with
/// `L^j(1) = 1`.
pub fn legendre_shifted(j: usize, x: f64) -> f64 {
    let y = 2.0 * x - 1.0;
    let (mut prev, mut cur) = (1.0, y);
    if j == 0 {
        return prev;
    }
    for k in 1..j {
        let next = ((2 * k + 1) as f64 * y * cur - k as f64 * prev) / (k + 1) as f64;
        prev = cur;
        cur = next;
    }
    cur
}

/// Monomial coefficients of the shifted Legendre polynomials `L^0 .. L^n`.
pub fn legendre_shifted_monomials(n: usize) -> Vec<Vec<f64>> {
    let mut polys: Vec<Vec<f64>> = vec![vec![1.0]];
    if n >= 1 {
        polys.push(vec![-1.0, 2.0]);
    }
    for k in 1..n {
        // (k+1) L^{k+1} = (2k+1)(2x-1) L^k - k L^{k-1}
        let cur = &polys[k];
        let prev = &polys[k - 1];
        let mut next = vec![0.0; k + 2];
        for (i, &c) in cur.iter().enumerate() {
            next[i] -= (2 * k + 1) as f64 * c;
            next[i + 1] += 2.0 * (2 * k + 1) as f64 * c;
        }
        for (i, &c) in prev.iter().enumerate() {
            next[i] -= k as f64 * c;
        }
        next.iter_mut().for_each(|c| *c /= (k + 1) as f64);
        polys.push(next);
    }
    polys
}

/// The matrix `T^n` whose column `j` holds the degree-`n` Bernstein
/// coefficients of `L^j`.
pub fn legendre_to_bernstein(n: usize) -> DenseMatrix {
    let polys = legendre_shifted_monomials(n);
    let mut t = DenseMatrix::zeros(n + 1, n + 1);
    for (j, mono) in polys.iter().enumerate() {
        for (i, b) in monomial_to_bernstein(mono, n).into_iter().enumerate() {
            t[(i, j)] = b;
        }
    }
    t
}

/// Monomial coefficients of the Lagrange cardinal polynomial `l^{j,n}`.
pub fn lagrange_monomial(nodes: &NodeSet, j: usize) -> Vec<f64> {
    let x = nodes.as_slice();
    let mut poly = vec![1.0];
    for (i, &xi) in x.iter().enumerate() {
        if i == j {
            continue;
        }
        let denom = x[j] - xi;
        let mut next = vec![0.0; poly.len() + 1];
        for (k, &c) in poly.iter().enumerate() {
            next[k + 1] += c / denom;
            next[k] -= xi * c / denom;
        }
        poly = next;
    }
    poly
}

/// `w_j = ||l^{j,n}||_{L^2(0,1)}` via the Bernstein mass matrix.
pub fn lagrange_l2_norms(nodes: &NodeSet) -> Vec<f64> {
    let n = nodes.degree();
    let mass = mass_matrix(n);
    (0..=n)
        .map(|j| {
            let coeffs = monomial_to_bernstein(&lagrange_monomial(nodes, j), n);
            mass.m_norm(&coeffs).expect("matching dimension")
        })
        .collect()
}

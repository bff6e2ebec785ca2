//! Bernstein mass matrix and the `M -> 2` condition number of the
//! Bernstein-Vandermonde matrix.
//!
//! `kappa_{M->2}(V)` measures coefficient perturbations in the `L^2` norm of
//! the polynomial they represent. It equals `kappa_2(V M^{-1/2})`, and since
//! the Legendre coefficient map diagonalizes `M`, also
//! `kappa_2(Vhat diag(sqrt(2j + 1)))` with `Vhat_ij = L^j(x_i)`.

use crate::bases::{lagrange_l2_norms, legendre_shifted, legendre_to_bernstein, NodeSet};
use crate::error::{Error, Result};
use crate::linalg::{condition_number_2, inverse_sqrt_spd, DenseMatrix};
use crate::scalar::binomial;
use crate::vandermonde::BernsteinVandermonde;

/// Gram matrix of the degree-`n` Bernstein basis in `L^2(0, 1)`.
#[derive(Clone, Debug)]
pub struct MassMatrix {
    n: usize,
    matrix: DenseMatrix,
}

impl MassMatrix {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }

    /// `sqrt(p^T M p)`, the `L^2` norm of the polynomial with coefficients `p`.
    pub fn m_norm(&self, p: &[f64]) -> Result<f64> {
        let mp = self.matrix.matvec(p)?;
        let q: f64 = p.iter().zip(&mp).map(|(a, b)| a * b).sum();
        Ok(q.max(0.0).sqrt())
    }
}

/// `M_ij = binom(n, i) binom(n, j) / ((2n + 1) binom(2n, i + j))`.
pub fn mass_matrix(n: usize) -> MassMatrix {
    let scale = 1.0 / (2 * n + 1) as f64;
    let matrix = DenseMatrix::from_fn(n + 1, n + 1, |i, j| {
        binomial(n, i) * binomial(n, j) / binomial(2 * n, i + j) * scale
    });
    MassMatrix { n, matrix }
}

/// Legendre-Vandermonde matrix `Vhat_ij = L^j(x_i)`.
pub fn legendre_vandermonde(nodes: &NodeSet) -> DenseMatrix {
    let x = nodes.as_slice();
    DenseMatrix::from_fn(x.len(), x.len(), |i, j| legendre_shifted(j, x[i]))
}

/// `kappa_{M->2}(V^n(x))`, computed as `kappa_2(Vhat diag(sqrt(2j + 1)))`.
pub fn kappa_m_to_2(nodes: &NodeSet) -> Result<f64> {
    let n = nodes.degree();
    let scale: Vec<f64> = (0..=n).map(|j| ((2 * j + 1) as f64).sqrt()).collect();
    condition_number_2(&legendre_vandermonde(nodes).scale_columns(&scale))
}

/// `kappa_{M->2}(V^n(x))` computed directly as `kappa_2(V M^{-1/2})`, with
/// the inverse square root taken from a Jacobi eigendecomposition of `M`.
pub fn kappa_m_to_2_via_mass(nodes: &NodeSet) -> Result<f64> {
    let v = BernsteinVandermonde::new(nodes.clone())?;
    let m_inv_sqrt = inverse_sqrt_spd(mass_matrix(nodes.degree()).matrix())?;
    condition_number_2(&v.matrix().matmul(&m_inv_sqrt)?)
}

/// Upper bound `(n + 1)^{3/2} ||w||_2` on `kappa_{M->2}`, where `w_j` is the
/// `L^2` norm of the `j`-th Lagrange polynomial.
pub fn kappa_bound(nodes: &NodeSet) -> f64 {
    let n = nodes.degree();
    let w = lagrange_l2_norms(nodes);
    let w_norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
    ((n + 1) as f64).powf(1.5) * w_norm
}

/// One row of the conditioning sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConditioningRow {
    pub n: usize,
    pub kappa_m_to_2: f64,
    pub bound: f64,
    pub kappa_2: f64,
}

pub fn conditioning_row(nodes: &NodeSet) -> Result<ConditioningRow> {
    let v = BernsteinVandermonde::new(nodes.clone())?;
    Ok(ConditioningRow {
        n: nodes.degree(),
        kappa_m_to_2: kappa_m_to_2(nodes)?,
        bound: kappa_bound(nodes),
        kappa_2: condition_number_2(v.matrix())?,
    })
}

/// Outcome of checking `M = Q Lambda Q^T` with `Q = T diag(sqrt((2j+1) lambda_j))`.
#[derive(Clone, Debug)]
pub struct SpectralReport {
    pub eigenvalues: Vec<f64>,
    pub q: DenseMatrix,
    pub orthogonality_error: f64,
    pub reconstruction_error: f64,
}

pub const SPECTRAL_TOLERANCE: f64 = 1e-8;

/// Verifies that the Legendre-to-Bernstein columns diagonalize the mass
/// matrix. Since `t_j^T M t_j = 1 / (2j + 1)` and `t_j` is an eigenvector,
/// `lambda_j = 1 / ((2j + 1) |t_j|^2)`.
pub fn spectral_check(n: usize) -> Result<SpectralReport> {
    let t = legendre_to_bernstein(n);
    let mass = mass_matrix(n);
    let m = mass.matrix();
    let mut eigenvalues = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let norm2: f64 = t.column(j).iter().map(|v| v * v).sum();
        let lambda = 1.0 / ((2 * j + 1) as f64 * norm2);
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::SpectralCheck {
                column: j,
                reason: format!("degenerate column norm {norm2}"),
            });
        }
        eigenvalues.push(lambda);
    }
    let scale: Vec<f64> = eigenvalues
        .iter()
        .enumerate()
        .map(|(j, l)| ((2 * j + 1) as f64 * l).sqrt())
        .collect();
    let q = t.scale_columns(&scale);

    let qtq = q.transpose().matmul(&q)?;
    let mut orthogonality_error = 0.0f64;
    for j in 0..=n {
        let col_err = (0..=n)
            .map(|i| (qtq[(i, j)] - if i == j { 1.0 } else { 0.0 }).abs())
            .fold(0.0, f64::max);
        if col_err > SPECTRAL_TOLERANCE {
            return Err(Error::SpectralCheck {
                column: j,
                reason: format!("Q^T Q deviates from identity by {col_err:e}"),
            });
        }
        orthogonality_error = orthogonality_error.max(col_err);
    }

    let rec = q.scale_columns(&eigenvalues).matmul(&q.transpose())?;
    let reconstruction_error = rec.max_abs_diff(m);
    if reconstruction_error > SPECTRAL_TOLERANCE {
        let column = (0..=n)
            .max_by(|&a, &b| {
                let ea = (0..=n)
                    .map(|i| (rec[(i, a)] - m[(i, a)]).abs())
                    .fold(0.0, f64::max);
                let eb = (0..=n)
                    .map(|i| (rec[(i, b)] - m[(i, b)]).abs())
                    .fold(0.0, f64::max);
                ea.total_cmp(&eb)
            })
            .unwrap_or(0);
        return Err(Error::SpectralCheck {
            column,
            reason: format!("Q Lambda Q^T deviates from M by {reconstruction_error:e}"),
        });
    }
    Ok(SpectralReport {
        eigenvalues,
        q,
        orthogonality_error,
        reconstruction_error,
    })
}

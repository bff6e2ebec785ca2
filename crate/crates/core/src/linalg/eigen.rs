//! Jacobi-type spectral routines for small dense matrices.

use super::DenseMatrix;
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 80;

fn rotation(alpha: f64, beta: f64, gamma: f64) -> (f64, f64) {
    // Annihilates gamma in [[alpha, gamma], [gamma, beta]].
    let zeta = (beta - alpha) / (2.0 * gamma);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, c * t)
}

/// Singular values in descending order, by one-sided (Hestenes) Jacobi.
pub fn singular_values(a: &DenseMatrix) -> Vec<f64> {
    // Work on the columns of `a`, stored as rows of the transpose.
    let mut cols: Vec<Vec<f64>> = (0..a.cols()).map(|j| a.column(j)).collect();
    let n = cols.len();
    let tol = f64::EPSILON;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let (alpha, beta, gamma) = {
                    let (cp, cq) = (&cols[p], &cols[q]);
                    let mut alpha = 0.0;
                    let mut beta = 0.0;
                    let mut gamma = 0.0;
                    for (x, y) in cp.iter().zip(cq) {
                        alpha += x * x;
                        beta += y * y;
                        gamma += x * y;
                    }
                    (alpha, beta, gamma)
                };
                if gamma == 0.0 || gamma.abs() <= tol * (alpha * beta).sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s) = rotation(alpha, beta, gamma);
                let (left, right) = cols.split_at_mut(q);
                for (x, y) in left[p].iter_mut().zip(right[0].iter_mut()) {
                    let (xp, xq) = (*x, *y);
                    *x = c * xp - s * xq;
                    *y = s * xp + c * xq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let mut sv: Vec<f64> = cols
        .iter()
        .map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt())
        .collect();
    sv.sort_by(|x, y| y.total_cmp(x));
    sv
}

/// `sigma_max / sigma_min`; `f64::INFINITY` when the smallest singular value is zero.
pub fn condition_number_2(a: &DenseMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let sv = singular_values(a);
    match (sv.first(), sv.last()) {
        (Some(&max), Some(&min)) if min > 0.0 => Ok(max / min),
        (Some(_), Some(_)) => Ok(f64::INFINITY),
        _ => Ok(1.0),
    }
}

/// Eigenpairs of a symmetric matrix; `vectors` holds eigenvectors as columns,
/// in the same order as `values`.
#[derive(Clone, Debug)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    pub vectors: DenseMatrix,
}

/// Cyclic two-sided Jacobi eigensolver for a symmetric matrix.
pub fn symmetric_eigen(a: &DenseMatrix) -> Result<SymmetricEigen> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        });
    }
    let n = a.rows();
    let mut m = a.clone();
    let mut v = DenseMatrix::identity(n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let gamma = m[(p, q)];
                if gamma == 0.0 || gamma.abs() <= f64::EPSILON * (m[(p, p)] * m[(q, q)]).abs().sqrt() {
                    continue;
                }
                rotated = true;
                let (c, s) = rotation(m[(p, p)], m[(q, q)], gamma);
                for k in 0..n {
                    let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    Ok(SymmetricEigen {
        values: (0..n).map(|i| m[(i, i)]).collect(),
        vectors: v,
    })
}

/// `A^{-1/2}` for a symmetric positive definite `A`.
pub fn inverse_sqrt_spd(a: &DenseMatrix) -> Result<DenseMatrix> {
    let eig = symmetric_eigen(a)?;
    if let Some(pivot) = eig.values.iter().position(|&l| l <= 0.0) {
        return Err(Error::Singular { pivot });
    }
    let scale: Vec<f64> = eig.values.iter().map(|l| 1.0 / l.sqrt()).collect();
    eig.vectors.scale_columns(&scale).matmul(&eig.vectors.transpose())
}

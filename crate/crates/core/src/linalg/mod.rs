//! Dense and structured real matrices.
//!
//! Indices are zero-based and dense storage is row-major throughout.

mod dense;
mod eigen;
mod lu;
mod structured;

pub use dense::DenseMatrix;
pub use eigen::{condition_number_2, inverse_sqrt_spd, singular_values, symmetric_eigen, SymmetricEigen};
pub use lu::{lu_factor, lu_factor_nopivot, LuFactors};
pub use structured::{DiagonalMatrix, HankelMatrix, LinearOperator, ToeplitzMatrix};

pub(crate) fn norm2(x: &[f64]) -> f64 {
    x.iter().map(|v| v * v).sum::<f64>().sqrt()
}

pub(crate) fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

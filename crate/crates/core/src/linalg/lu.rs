use super::DenseMatrix;
use crate::error::{Error, Result};

/// Packed Doolittle factors: unit lower `L` below the diagonal, `U` on and
/// above it, with `P A = L U` where row `i` of `P A` is row `perm[i]` of `A`.
#[derive(Clone, Debug)]
pub struct LuFactors {
    packed: DenseMatrix,
    perm: Vec<usize>,
}

impl LuFactors {
    pub fn dim(&self) -> usize {
        self.packed.rows()
    }

    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn lower(&self) -> DenseMatrix {
        let n = self.dim();
        DenseMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.packed[(i, j)],
            std::cmp::Ordering::Equal => 1.0,
            std::cmp::Ordering::Less => 0.0,
        })
    }

    pub fn upper(&self) -> DenseMatrix {
        let n = self.dim();
        DenseMatrix::from_fn(n, n, |i, j| if j >= i { self.packed[(i, j)] } else { 0.0 })
    }

    /// `L[i][j]` without materializing `L`.
    #[inline]
    pub fn l(&self, i: usize, j: usize) -> f64 {
        match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.packed[(i, j)],
            std::cmp::Ordering::Equal => 1.0,
            std::cmp::Ordering::Less => 0.0,
        }
    }

    #[inline]
    pub fn u(&self, i: usize, j: usize) -> f64 {
        if j >= i {
            self.packed[(i, j)]
        } else {
            0.0
        }
    }

    pub fn solve(&self, b: &[f64]) -> Result<Vec<f64>> {
        let n = self.dim();
        if b.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: b.len(),
            });
        }
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = self.packed.row(i);
            let s: f64 = row[..i].iter().zip(&x[..i]).map(|(a, v)| a * v).sum();
            x[i] -= s;
        }
        for i in (0..n).rev() {
            let row = self.packed.row(i);
            let s: f64 = row[i + 1..].iter().zip(&x[i + 1..]).map(|(a, v)| a * v).sum();
            x[i] = (x[i] - s) / row[i];
        }
        Ok(x)
    }
}

fn check_square(a: &DenseMatrix) -> Result<()> {
    if a.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected: a.rows(),
            found: a.cols(),
        })
    }
}

/// Gaussian elimination with partial (row) pivoting.
pub fn lu_factor(a: &DenseMatrix) -> Result<LuFactors> {
    factor(a, true)
}

/// Gaussian elimination without row exchanges.
pub fn lu_factor_nopivot(a: &DenseMatrix) -> Result<LuFactors> {
    factor(a, false)
}

fn factor(a: &DenseMatrix, pivoting: bool) -> Result<LuFactors> {
    check_square(a)?;
    let n = a.rows();
    let mut m = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    for k in 0..n {
        if pivoting {
            let p = (k..n)
                .max_by(|&x, &y| m[(x, k)].abs().total_cmp(&m[(y, k)].abs()))
                .unwrap_or(k);
            if p != k {
                for j in 0..n {
                    let tmp = m[(k, j)];
                    m[(k, j)] = m[(p, j)];
                    m[(p, j)] = tmp;
                }
                perm.swap(k, p);
            }
        }
        let pivot = m[(k, k)];
        if pivot == 0.0 {
            return Err(Error::Singular { pivot: k });
        }
        for i in k + 1..n {
            let factor = m[(i, k)] / pivot;
            m[(i, k)] = factor;
            if factor == 0.0 {
                continue;
            }
            for j in k + 1..n {
                let ukj = m[(k, j)];
                m[(i, j)] -= factor * ukj;
            }
        }
    }
    Ok(LuFactors { packed: m, perm })
}

//! Bernstein-Bezout matrices.
//!
//! For `v, w` of degree at most `n + 1` in the Bernstein basis, `Bez(v, w)` is
//! the `(n + 1) x (n + 1)` matrix with
//! `(v(s) w(t) - v(t) w(s)) / (s - t) = sum_ij b_ij B^n_i(s) B^n_j(t)`.
//! Three constructions are provided: an `O(n^2)` recurrence, the `O(n^3)`
//! closed form, and a lazy Hankel/Toeplitz factorization applied with FFTs.

use crate::error::{Error, Result};
use crate::linalg::{DenseMatrix, DiagonalMatrix, HankelMatrix, LinearOperator, ToeplitzMatrix};
use crate::scalar::binomial;

#[derive(Clone, Debug, PartialEq)]
pub struct BezoutMatrix {
    n: usize,
    entries: DenseMatrix,
}

impl BezoutMatrix {
    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.entries
    }

    pub fn into_matrix(self) -> DenseMatrix {
        self.entries
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[(i, j)]
    }
}

/// Checks the generator lengths and returns `n` (generators have length `n + 2`).
fn generator_degree(v: &[f64], w: &[f64]) -> Result<usize> {
    if v.len() != w.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            found: w.len(),
        });
    }
    if v.len() < 2 {
        return Err(Error::Precondition(
            "Bezout generators need Bernstein degree at least 1".into(),
        ));
    }
    Ok(v.len() - 2)
}

/// Fills `Bez(v, w)` with
/// `b_ij = [j (n - i) b_{i+1, j-1} + (n+1)^2 (v_{i+1} w_j - v_j w_{i+1})] / ((i + 1)(n - j + 1))`.
///
/// Column `j = 0` and row `i = n` have no predecessor term; every other
/// column only reads the one to its left.
pub fn bezout_recurrence(v: &[f64], w: &[f64]) -> Result<BezoutMatrix> {
    let n = generator_degree(v, w)?;
    let np1_sq = ((n + 1) * (n + 1)) as f64;
    let cross = |i: usize, j: usize| v[i + 1] * w[j] - v[j] * w[i + 1];
    let mut b = DenseMatrix::zeros(n + 1, n + 1);
    for i in 0..=n {
        b[(i, 0)] = np1_sq * cross(i, 0) / ((i + 1) * (n + 1)) as f64;
    }
    for j in 1..=n {
        b[(n, j)] = np1_sq * cross(n, j) / ((n + 1) * (n - j + 1)) as f64;
    }
    for j in 1..=n {
        for i in 0..n {
            let carried = (j * (n - i)) as f64 * b[(i + 1, j - 1)];
            b[(i, j)] = (carried + np1_sq * cross(i, j)) / ((i + 1) * (n - j + 1)) as f64;
        }
    }
    Ok(BezoutMatrix { n, entries: b })
}

/// `b_ij = sum_{k=0}^{min(j, n-i)} binom(n+1, i+k+1) binom(n+1, j-k)
/// (v_{i+k+1} w_{j-k} - v_{j-k} w_{i+k+1}) / (binom(n, i) binom(n, j))`.
pub fn bezout_closed_form(v: &[f64], w: &[f64]) -> Result<BezoutMatrix> {
    let n = generator_degree(v, w)?;
    let b = DenseMatrix::from_fn(n + 1, n + 1, |i, j| {
        let s: f64 = (0..=j.min(n - i))
            .map(|k| {
                let (p, q) = (i + k + 1, j - k);
                binomial(n + 1, p) * binomial(n + 1, q) * (v[p] * w[q] - v[q] * w[p])
            })
            .sum();
        s / (binomial(n, i) * binomial(n, j))
    });
    Ok(BezoutMatrix { n, entries: b })
}

/// `Bez(v, w) = Delta^{-1} [H^v T^w - H^w T^v] Delta^{-1}` kept in factored
/// form, with `Delta = diag(binom(n, j))`,
/// `H^v_ij = binom(n+1, i+j+1) v_{i+j+1}` and `T^v_ij = binom(n+1, j-i) v_{j-i}`.
#[derive(Clone, Debug)]
pub struct BezoutFactored {
    delta_inv: DiagonalMatrix,
    h_v: HankelMatrix,
    t_w: ToeplitzMatrix,
    h_w: HankelMatrix,
    t_v: ToeplitzMatrix,
}

/// Hankel factor `binom(n+1, i+j+1) c_{i+j+1}` (zero past the last coefficient).
pub(crate) fn scaled_hankel(coeffs: &[f64]) -> HankelMatrix {
    let n = coeffs.len() - 2;
    let anti = (0..=2 * n)
        .map(|k| {
            if k < n + 1 {
                binomial(n + 1, k + 1) * coeffs[k + 1]
            } else {
                0.0
            }
        })
        .collect();
    HankelMatrix::new(anti).expect("odd anti-diagonal count")
}

/// Upper triangular Toeplitz factor `binom(n+1, j-i) c_{j-i}`.
pub(crate) fn scaled_toeplitz(coeffs: &[f64]) -> ToeplitzMatrix {
    let n = coeffs.len() - 2;
    ToeplitzMatrix::upper((0..=n).map(|k| binomial(n + 1, k) * coeffs[k]).collect())
}

pub(crate) fn inverse_binomial_diagonal(n: usize) -> DiagonalMatrix {
    DiagonalMatrix::new((0..=n).map(|j| 1.0 / binomial(n, j)).collect())
}

pub fn bezout_factored(v: &[f64], w: &[f64]) -> Result<BezoutFactored> {
    let n = generator_degree(v, w)?;
    Ok(BezoutFactored {
        delta_inv: inverse_binomial_diagonal(n),
        h_v: scaled_hankel(v),
        t_w: scaled_toeplitz(w),
        h_w: scaled_hankel(w),
        t_v: scaled_toeplitz(v),
    })
}

impl BezoutFactored {
    pub fn degree(&self) -> usize {
        self.delta_inv.dim() - 1
    }
}

impl LinearOperator for BezoutFactored {
    fn dim(&self) -> usize {
        self.delta_inv.dim()
    }

    fn apply(&self, x: &[f64]) -> Vec<f64> {
        let y = self.delta_inv.apply(x);
        let left = self.h_v.apply(&self.t_w.apply(&y));
        let right = self.h_w.apply(&self.t_v.apply(&y));
        let diff: Vec<f64> = left.iter().zip(&right).map(|(a, b)| a - b).collect();
        self.delta_inv.apply(&diff)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bases::{bernstein_all, bernstein_poly_eval};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_pair(rng: &mut ChaCha8Rng, n: usize) -> (Vec<f64>, Vec<f64>) {
        let v = (0..n + 2).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let w = (0..n + 2).map(|_| rng.gen_range(-1.0..1.0)).collect();
        (v, w)
    }

    fn bilinear(b: &DenseMatrix, s: f64, t: f64) -> f64 {
        let n = b.rows() - 1;
        let bs = bernstein_all(n, s);
        let bt = bernstein_all(n, t);
        b.matvec(&bt).unwrap().iter().zip(&bs).map(|(x, y)| x * y).sum()
    }

    #[test]
    fn linear_generators() {
        // (v(s)w(t) - v(t)w(s))/(s - t) = v1 w0 - v0 w1 for linear v, w.
        let v = [0.0, 1.0];
        let w = [1.0, 1.0];
        for b in [
            bezout_recurrence(&v, &w).unwrap(),
            bezout_closed_form(&v, &w).unwrap(),
        ] {
            assert_eq!(b.matrix().as_slice(), &[1.0]);
        }
        let f = bezout_factored(&v, &w).unwrap();
        assert!((f.apply(&[1.0])[0] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn equal_generators_vanish() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let (v, _) = random_pair(&mut rng, 5);
        assert!(bezout_recurrence(&v, &v).unwrap().matrix().max_abs() == 0.0);
        assert!(bezout_closed_form(&v, &v).unwrap().matrix().max_abs() == 0.0);
        let f = bezout_factored(&v, &v).unwrap();
        for _ in 0..5 {
            let x: Vec<f64> = (0..6).map(|_| rng.gen_range(-1.0..1.0)).collect();
            assert!(f.apply(&x).iter().all(|y| y.abs() < 1e-12));
        }
    }

    #[test]
    fn recurrence_matches_closed_form() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (v, w) = random_pair(&mut rng, 3);
        let r = bezout_recurrence(&v, &w).unwrap();
        let c = bezout_closed_form(&v, &w).unwrap();
        assert!(r.matrix().max_abs_diff(c.matrix()) <= 1e-13);
    }

    #[test]
    fn antisymmetry_is_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 0..10 {
            let (v, w) = random_pair(&mut rng, n);
            let a = bezout_recurrence(&v, &w).unwrap();
            let b = bezout_recurrence(&w, &v).unwrap();
            assert_eq!(a.matrix(), &b.matrix().scale(-1.0));
        }
    }

    #[test]
    fn factored_matches_dense_operator() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let (v, w) = random_pair(&mut rng, 6);
        let dense = bezout_recurrence(&v, &w).unwrap();
        let f = bezout_factored(&v, &w).unwrap();
        assert_eq!(f.degree(), 6);
        for _ in 0..10 {
            let x: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = f.apply(&x);
            let b = dense.matrix().matvec(&x).unwrap();
            let scale = crate::linalg::norm2(&b);
            assert!(crate::linalg::norm2(&crate::linalg::sub(&a, &b)) <= 1e-12 * scale);
        }
    }

    #[test]
    fn diagonal_identity_against_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let (v, w) = random_pair(&mut rng, 5);
        let b = bezout_closed_form(&v, &w).unwrap();
        let t = 0.3;
        let h = 1e-6;
        let d = |p: &[f64]| (bernstein_poly_eval(p, t + h) - bernstein_poly_eval(p, t - h)) / (2.0 * h);
        let expect = d(&v) * bernstein_poly_eval(&w, t) - bernstein_poly_eval(&v, t) * d(&w);
        assert!((bilinear(b.matrix(), t, t) - expect).abs() <= 1e-5 * expect.abs().max(1.0));
    }

    #[test]
    fn length_errors() {
        assert!(matches!(
            bezout_recurrence(&[1.0, 2.0], &[1.0, 2.0, 3.0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(bezout_closed_form(&[1.0], &[1.0]).is_err());
        assert!(bezout_factored(&[1.0, 2.0, 3.0], &[1.0]).is_err());
    }
}

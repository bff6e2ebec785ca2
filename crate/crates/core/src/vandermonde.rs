//! Univariate Bernstein-Vandermonde matrices `V_ij = B^n_j(x_i)` and three
//! ways of solving `V c = b`: pivoted LU, the exact Bezout inverse, and the
//! Hankel/Toeplitz/diagonal factored inverse applied with FFTs.

use std::fmt;
use std::str::FromStr;

use crate::bases::{
    bernstein_all, bernstein_derivative, bernstein_poly_eval, monomial_to_bernstein, NodeSet,
};
use crate::bezout::{bezout_recurrence, inverse_binomial_diagonal};
use crate::error::{Error, Result};
use crate::linalg::{lu_factor, DenseMatrix, DiagonalMatrix, HankelMatrix, LinearOperator, ToeplitzMatrix};
use crate::scalar::{
    binomial, binomial_exact, expand_linear_factors, factorial, node_polynomial_monomial, stirling_row_exact,
    StirlingTable,
};

#[derive(Clone, Debug)]
pub struct BernsteinVandermonde {
    nodes: NodeSet,
    matrix: DenseMatrix,
}

impl BernsteinVandermonde {
    /// Square matrix of degree `nodes.degree()`.
    pub fn new(nodes: NodeSet) -> Result<Self> {
        let n = nodes.degree();
        Self::with_degree(n, nodes)
    }

    pub fn with_degree(n: usize, nodes: NodeSet) -> Result<Self> {
        if nodes.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: nodes.len(),
            });
        }
        let mut matrix = DenseMatrix::zeros(n + 1, n + 1);
        for (i, &x) in nodes.as_slice().iter().enumerate() {
            for (j, b) in bernstein_all(n, x).into_iter().enumerate() {
                matrix[(i, j)] = b;
            }
        }
        Ok(Self { nodes, matrix })
    }

    pub fn equispaced(n: usize) -> Self {
        Self::new(NodeSet::equispaced(n)).expect("n + 1 equispaced nodes")
    }

    pub fn degree(&self) -> usize {
        self.nodes.degree()
    }

    pub fn nodes(&self) -> &NodeSet {
        &self.nodes
    }

    pub fn matrix(&self) -> &DenseMatrix {
        &self.matrix
    }
}

/// Degree-`n+1` Bernstein coefficients of `v(t) = prod_i (t - x_i)`, obtained
/// from the elementary symmetric functions of the nodes.
pub fn node_polynomial_bernstein(nodes: &NodeSet) -> Vec<f64> {
    monomial_to_bernstein(&node_polynomial_monomial(nodes.as_slice()), nodes.len())
}

/// `V^{-1} = Bez(v, w) V^T diag(1 / (v'(x_j) w(x_j)))` for Bernstein
/// generators `v, w` of degree `n + 1` where `v` vanishes simply at every node
/// and `w` at none.
pub fn inverse_via_bezout_pair(v_mat: &BernsteinVandermonde, v: &[f64], w: &[f64]) -> Result<DenseMatrix> {
    let bez = bezout_recurrence(v, w)?;
    let dv = bernstein_derivative(v);
    let scale: Vec<f64> = v_mat
        .nodes
        .as_slice()
        .iter()
        .map(|&x| 1.0 / (bernstein_poly_eval(&dv, x) * bernstein_poly_eval(w, x)))
        .collect();
    bez.matrix()
        .matmul(&v_mat.matrix.transpose().scale_columns(&scale))
}

/// `V^{-1} = Bez(v, 1) V^T diag(1 / v'(x_j))` with `v` the node polynomial
/// and `v'(x_j) = prod_{i != j} (x_j - x_i)`.
pub fn inverse_via_bezout(v_mat: &BernsteinVandermonde) -> Result<DenseMatrix> {
    let n = v_mat.degree();
    let v = node_polynomial_bernstein(&v_mat.nodes);
    let bez = bezout_recurrence(&v, &vec![1.0; n + 2])?;
    let d = DiagonalMatrix::new(v_mat.nodes.node_derivative_products()).inverse()?;
    bez.matrix()
        .matmul(&v_mat.matrix.transpose().scale_columns(d.diag()))
}

/// `V^{-1} = Delta^{-1} [Ht T - H Tt] Vs^T D^{-1}`.
///
/// `H`, `T` are the Hankel/Toeplitz factors of the constant generator,
/// `Ht`, `Tt` those of the node polynomial, `Vs_ij = x_i^j (1 - x_i)^{n-j}`
/// is the unweighted Bernstein-Vandermonde matrix and
/// `D = diag(prod_{i != j}(x_j - x_i))`.
#[derive(Clone, Debug)]
pub struct FactoredInverse {
    delta_inv: DiagonalMatrix,
    h_tilde: HankelMatrix,
    t: ToeplitzMatrix,
    h: HankelMatrix,
    t_tilde: ToeplitzMatrix,
    v_tilde: DenseMatrix,
    d_inv: DiagonalMatrix,
}

impl FactoredInverse {
    pub fn degree(&self) -> usize {
        self.delta_inv.dim() - 1
    }

    pub fn h_tilde(&self) -> &HankelMatrix {
        &self.h_tilde
    }

    pub fn t_tilde(&self) -> &ToeplitzMatrix {
        &self.t_tilde
    }

    pub fn v_tilde(&self) -> &DenseMatrix {
        &self.v_tilde
    }

    pub fn d_inv(&self) -> &DiagonalMatrix {
        &self.d_inv
    }

    /// `anti` holds the anti-diagonals `0..=n` of `Ht` (the rest vanish) and
    /// `row` the first row of the upper triangular `Tt`.
    fn assemble(anti: Vec<f64>, row: Vec<f64>, v_tilde: DenseMatrix, d: Vec<f64>) -> Result<Self> {
        let n = row.len() - 1;
        let mut anti = anti;
        anti.resize(2 * n + 1, 0.0);
        let ones = vec![1.0; n + 2];
        Ok(Self {
            delta_inv: inverse_binomial_diagonal(n),
            h_tilde: HankelMatrix::new(anti)?,
            t: crate::bezout::scaled_toeplitz(&ones),
            h: crate::bezout::scaled_hankel(&ones),
            t_tilde: ToeplitzMatrix::upper(row),
            v_tilde,
            d_inv: DiagonalMatrix::new(d).inverse()?,
        })
    }

    pub fn apply_checked(&self, b: &[f64]) -> Result<Vec<f64>> {
        self.try_apply(b)
    }
}

impl LinearOperator for FactoredInverse {
    fn dim(&self) -> usize {
        self.delta_inv.dim()
    }

    fn apply(&self, b: &[f64]) -> Vec<f64> {
        let y = self.d_inv.apply(b);
        let y = self
            .v_tilde
            .matvec_transpose(&y)
            .expect("square scaled Vandermonde");
        let left = self.h_tilde.apply(&self.t.apply(&y));
        let right = self.h.apply(&self.t_tilde.apply(&y));
        let diff: Vec<f64> = left.iter().zip(&right).map(|(a, c)| a - c).collect();
        self.delta_inv.apply(&diff)
    }
}

/// `Ht` anti-diagonals and `Tt` first row from the monomial coefficients
/// `a_k` of the node polynomial, summed as written:
/// `Ht_s = sum_{k <= s+1} binom(n+1-k, n-s) a_k`,
/// `Tt_r = sum_{k <= r} binom(n+1-k, r-k) a_k`.
fn hankel_toeplitz_sums(a: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = a.len() - 2;
    let anti = (0..=n)
        .map(|s| (0..=s + 1).map(|k| binomial(n + 1 - k, n - s) * a[k]).sum())
        .collect();
    let row = (0..=n)
        .map(|r| (0..=r).map(|k| binomial(n + 1 - k, r - k) * a[k]).sum())
        .collect();
    (anti, row)
}

/// The same sums as generating-function coefficients:
/// `Ht_s = [h^{n-s}] prod_i ((1 - x_i) - x_i h)` and
/// `Tt_r = [h^r] prod_i ((1 - x_i) h - x_i)`.
/// For nodes in `[0, 1]` each coefficient is a sum of same-signed terms.
fn hankel_toeplitz_products(x: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = x.len() - 1;
    let hank = expand_linear_factors(&x.iter().map(|&xi| (1.0 - xi, -xi)).collect::<Vec<_>>());
    let toep = expand_linear_factors(&x.iter().map(|&xi| (-xi, 1.0 - xi)).collect::<Vec<_>>());
    let anti = (0..=n).map(|s| hank[n - s]).collect();
    (anti, toep[..=n].to_vec())
}

/// Exact integer evaluation of the Stirling-number sums for `x_i = i/n`:
/// `n^{n+1} Ht_s = sum_k binom(n+1-k, n-s) s(n+1, k) n^k`, and likewise for
/// `Tt`. `None` when an intermediate leaves the `i128` range.
fn stirling_sums_exact(n: usize) -> Option<(Vec<f64>, Vec<f64>)> {
    let s = stirling_row_exact(n + 1)?;
    let nn = n as i128;
    let mut weighted = Vec::with_capacity(n + 2);
    let mut p: i128 = 1;
    for &sk in &s {
        weighted.push(sk.checked_mul(p)?);
        p = p.checked_mul(nn)?;
    }
    // p == n^{n+2} here; the common denominator is n^{n+1}.
    let denom = (n as f64).powi((n + 1) as i32);
    let sum = |terms: &mut dyn Iterator<Item = (usize, usize)>| -> Option<f64> {
        let mut acc: i128 = 0;
        for (k, r) in terms {
            acc = acc.checked_add(binomial_exact(n + 1 - k, r)?.checked_mul(weighted[k])?)?;
        }
        Some(acc as f64 / denom)
    };
    let mut anti = Vec::with_capacity(n + 1);
    for sidx in 0..=n {
        anti.push(sum(&mut (0..=sidx + 1).map(|k| (k, n - sidx)))?);
    }
    let mut row = Vec::with_capacity(n + 1);
    for r in 0..=n {
        row.push(sum(&mut (0..=r).map(|k| (k, r - k)))?);
    }
    Some((anti, row))
}

/// Factored inverse for arbitrary distinct nodes.
pub fn factored_inverse(nodes: &NodeSet) -> Result<FactoredInverse> {
    let x = nodes.as_slice();
    let n = nodes.degree();
    let v_tilde = DenseMatrix::from_fn(n + 1, n + 1, |i, j| {
        x[i].powi(j as i32) * (1.0 - x[i]).powi((n - j) as i32)
    });
    let (anti, row) = hankel_toeplitz_products(x);
    FactoredInverse::assemble(anti, row, v_tilde, nodes.node_derivative_products())
}

/// Factored inverse for `x_i = i / n`, built from Stirling numbers and
/// integer-valued diagonal and scaled-Vandermonde factors.
pub fn factored_inverse_equispaced(n: usize) -> Result<FactoredInverse> {
    if n == 0 {
        return Err(Error::Precondition("equispaced inverse needs n >= 1".into()));
    }
    let (anti, row) = match stirling_sums_exact(n) {
        Some(sums) => sums,
        None => {
            // prod_i (x - i/n) = sum_k s(n+1, k) / n^(n-k+1) x^k
            let stirling = StirlingTable::new(n + 1)?;
            let nf = n as f64;
            let a: Vec<f64> = (0..=n + 1)
                .map(|k| stirling.get(n + 1, k) / nf.powi((n + 1 - k) as i32))
                .collect();
            hankel_toeplitz_sums(&a)
        }
    };
    let v_tilde = DenseMatrix::from_fn(n + 1, n + 1, |i, j| {
        (i as f64).powi(j as i32) * ((n - i) as f64).powi((n - j) as i32)
    });
    let d = (0..=n)
        .map(|j| {
            let sign = if (n - j).is_multiple_of(2) { 1.0 } else { -1.0 };
            sign * factorial(j) * factorial(n - j)
        })
        .collect();
    FactoredInverse::assemble(anti, row, v_tilde, d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SolveMethod {
    /// Partially pivoted LU of the assembled matrix.
    Lu,
    /// Multiplication by the exact inverse from the Bezout formula.
    Bezout,
    /// FFT-based application of the factored inverse (general nodes).
    Dft,
    /// FFT-based application of the Stirling-number factored inverse;
    /// valid for equispaced nodes only.
    DftEquispaced,
}

impl SolveMethod {
    pub fn name(self) -> &'static str {
        match self {
            SolveMethod::Lu => "lu",
            SolveMethod::Bezout => "bezout",
            SolveMethod::Dft => "dft",
            SolveMethod::DftEquispaced => "dft-eq",
        }
    }
}

impl fmt::Display for SolveMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SolveMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lu" => Ok(SolveMethod::Lu),
            "bezout" => Ok(SolveMethod::Bezout),
            "dft" => Ok(SolveMethod::Dft),
            "dft-eq" => Ok(SolveMethod::DftEquispaced),
            other => Err(Error::Precondition(format!("unknown solve method `{other}`"))),
        }
    }
}

fn is_equispaced(nodes: &NodeSet) -> bool {
    let n = nodes.degree();
    n >= 1
        && nodes
            .as_slice()
            .iter()
            .enumerate()
            .all(|(i, &x)| x == i as f64 / n as f64)
}

/// Solves `V^n(x) c = b` with the chosen backend.
pub fn solve(method: SolveMethod, v_mat: &BernsteinVandermonde, b: &[f64]) -> Result<Vec<f64>> {
    let n = v_mat.degree();
    if b.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            found: b.len(),
        });
    }
    match method {
        SolveMethod::Lu => lu_factor(v_mat.matrix())?.solve(b),
        SolveMethod::Bezout => inverse_via_bezout(v_mat)?.matvec(b),
        SolveMethod::Dft => Ok(factored_inverse(v_mat.nodes())?.apply(b)),
        SolveMethod::DftEquispaced => {
            if !is_equispaced(v_mat.nodes()) {
                return Err(Error::Precondition(
                    "the equispaced DFT inverse requires nodes i/n".into(),
                ));
            }
            Ok(factored_inverse_equispaced(n)?.apply(b))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezout::bezout_recurrence;
    use crate::linalg::{norm2, sub};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn v2_inverse() -> DenseMatrix {
        DenseMatrix::from_rows(&[vec![1.0, 0.0, 0.0], vec![-0.5, 2.0, -0.5], vec![0.0, 0.0, 1.0]]).unwrap()
    }

    #[test]
    fn assembly_examples() {
        assert_eq!(
            BernsteinVandermonde::equispaced(1).matrix(),
            &DenseMatrix::identity(2)
        );
        let v2 = BernsteinVandermonde::equispaced(2);
        assert_eq!(
            v2.matrix().as_slice(),
            &[1.0, 0.0, 0.0, 0.25, 0.5, 0.25, 0.0, 0.0, 1.0]
        );
        let v = BernsteinVandermonde::new(NodeSet::stratified_seeded(10, 1)).unwrap();
        for i in 0..=10 {
            let s: f64 = v.matrix().row(i).iter().sum();
            assert!((s - 1.0).abs() < 1e-14);
        }
        assert!(BernsteinVandermonde::with_degree(3, NodeSet::equispaced(2)).is_err());
    }

    #[test]
    fn bezout_inverse_examples() {
        let inv1 = inverse_via_bezout(&BernsteinVandermonde::equispaced(1)).unwrap();
        assert!(inv1.max_abs_diff(&DenseMatrix::identity(2)) < 1e-15);
        let inv2 = inverse_via_bezout(&BernsteinVandermonde::equispaced(2)).unwrap();
        assert!(inv2.max_abs_diff(&v2_inverse()) < 1e-14);

        let v = BernsteinVandermonde::new(NodeSet::stratified_seeded(8, 7)).unwrap();
        let inv = inverse_via_bezout(&v).unwrap();
        let kappa = crate::linalg::condition_number_2(v.matrix()).unwrap();
        let err = v
            .matrix()
            .matmul(&inv)
            .unwrap()
            .max_abs_diff(&DenseMatrix::identity(9));
        assert!(err <= 1e3 * f64::EPSILON * kappa, "{err} vs kappa {kappa}");
    }

    #[test]
    fn general_pair_identity() {
        // V Bez(v, w) V^T = diag(v'(x_j) w(x_j)).
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for n in 1..=10 {
            let nodes = NodeSet::stratified_seeded(n, n as u64);
            let vm = BernsteinVandermonde::new(nodes.clone()).unwrap();
            let v = node_polynomial_bernstein(&nodes);
            // w positive on [0, 1]: 1 + t^2 / 2.
            let w_mono = [1.0, 0.0, 0.5];
            let w_nonconst = monomial_to_bernstein(&w_mono, n + 1);
            for w in [vec![1.0; n + 2], w_nonconst] {
                let bez = bezout_recurrence(&v, &w).unwrap();
                let prod = vm
                    .matrix()
                    .matmul(bez.matrix())
                    .unwrap()
                    .matmul(&vm.matrix().transpose())
                    .unwrap();
                let dv = bernstein_derivative(&v);
                for i in 0..=n {
                    let x = nodes.as_slice()[i];
                    let expect = bernstein_poly_eval(&dv, x) * bernstein_poly_eval(&w, x);
                    assert!((prod[(i, i)] - expect).abs() <= 1e-8 * expect.abs(), "n={n}");
                    for j in 0..=n {
                        if i != j {
                            assert!(prod[(i, j)].abs() <= 1e-8 * expect.abs());
                        }
                    }
                }
                let inv = inverse_via_bezout_pair(&vm, &v, &w).unwrap();
                let err = vm
                    .matrix()
                    .matmul(&inv)
                    .unwrap()
                    .max_abs_diff(&DenseMatrix::identity(n + 1));
                assert!(err < 1e-6);
            }
            let _ = rng.gen::<f64>();
        }
    }

    #[test]
    fn factored_inverse_examples() {
        let f1 = factored_inverse(&NodeSet::equispaced(1)).unwrap();
        let y = f1.apply(&[0.3, 0.7]);
        assert!((y[0] - 0.3).abs() < 1e-15 && (y[1] - 0.7).abs() < 1e-15);
        let f2 = factored_inverse(&NodeSet::equispaced(2)).unwrap();
        let y = f2.apply(&[0.0, 1.0, 0.0]);
        assert!(norm2(&sub(&y, &[0.0, 2.0, 0.0])) < 1e-14);
        let e2 = factored_inverse_equispaced(2).unwrap();
        let y = e2.apply(&[0.0, 1.0, 0.0]);
        assert!(norm2(&sub(&y, &[0.0, 2.0, 0.0])) < 1e-14);
        assert!(f2.to_dense().max_abs_diff(&v2_inverse()) < 1e-14);
        assert!(factored_inverse_equispaced(0).is_err());
        assert!(f2.apply_checked(&[1.0]).is_err());
    }

    #[test]
    fn factored_matches_dense_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let nodes = NodeSet::stratified_seeded(10, 4);
        let vm = BernsteinVandermonde::new(nodes.clone()).unwrap();
        let dense = inverse_via_bezout(&vm).unwrap();
        let f = factored_inverse(&nodes).unwrap();
        for _ in 0..10 {
            let b: Vec<f64> = (0..11).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = f.apply(&b);
            let d = dense.matvec(&b).unwrap();
            assert!(norm2(&sub(&a, &d)) <= 1e-9 * norm2(&d));
        }
    }

    #[test]
    fn equispaced_specialization_matches_general() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let eq = factored_inverse_equispaced(12).unwrap();
        let gen = factored_inverse(&NodeSet::equispaced(12)).unwrap();
        for _ in 0..5 {
            let b: Vec<f64> = (0..13).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let a = eq.apply(&b);
            let g = gen.apply(&b);
            assert!(norm2(&sub(&a, &g)) <= 1e-9 * norm2(&g));
        }
        assert!(
            factored_inverse_equispaced(1)
                .unwrap()
                .to_dense()
                .max_abs_diff(&DenseMatrix::identity(2))
                < 1e-15
        );
    }

    #[test]
    fn solve_methods_agree() {
        let v1 = BernsteinVandermonde::equispaced(1);
        for m in [
            SolveMethod::Lu,
            SolveMethod::Bezout,
            SolveMethod::Dft,
            SolveMethod::DftEquispaced,
        ] {
            let c = solve(m, &v1, &[0.3, 0.7]).unwrap();
            assert!((c[0] - 0.3).abs() < 1e-15 && (c[1] - 0.7).abs() < 1e-15, "{m}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        let v6 = BernsteinVandermonde::equispaced(6);
        let b: Vec<f64> = (0..7).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let reference = solve(SolveMethod::Lu, &v6, &b).unwrap();
        for m in [SolveMethod::Bezout, SolveMethod::Dft, SolveMethod::DftEquispaced] {
            let c = solve(m, &v6, &b).unwrap();
            assert!(norm2(&sub(&c, &reference)) <= 1e-8 * norm2(&reference), "{m}");
        }
        let v10 = BernsteinVandermonde::equispaced(10);
        let b: Vec<f64> = (0..11).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let c = solve(SolveMethod::Lu, &v10, &b).unwrap();
        assert!(norm2(&sub(&v10.matrix().matvec(&c).unwrap(), &b)) <= 1e-10);
    }

    #[test]
    fn solve_errors() {
        let v = BernsteinVandermonde::new(NodeSet::stratified_seeded(4, 1)).unwrap();
        assert!(solve(SolveMethod::DftEquispaced, &v, &[0.0; 5]).is_err());
        assert!(solve(SolveMethod::Lu, &v, &[0.0; 3]).is_err());
        assert_eq!("dft".parse::<SolveMethod>().unwrap(), SolveMethod::Dft);
        assert!("newton".parse::<SolveMethod>().is_err());
    }

    #[test]
    fn hankel_toeplitz_routes_agree() {
        for n in 1..=8 {
            let nodes = NodeSet::stratified_seeded(n, 9);
            let mono = node_polynomial_monomial(nodes.as_slice());
            let (a1, r1) = hankel_toeplitz_sums(&mono);
            let (a2, r2) = hankel_toeplitz_products(nodes.as_slice());
            // The plain sums are only accurate relative to their absolute terms.
            let abs: Vec<f64> = mono.iter().map(|v| v.abs()).collect();
            let (sa, sr) = hankel_toeplitz_sums(&abs);
            for ((p, q), m) in a1
                .iter()
                .chain(&r1)
                .zip(a2.iter().chain(&r2))
                .zip(sa.iter().chain(&sr))
            {
                assert!((p - q).abs() <= 1e-14 * m, "n={n} {p} {q}");
            }
            let eq = NodeSet::equispaced(n);
            let (a3, r3) = stirling_sums_exact(n).unwrap();
            let (a4, r4) = hankel_toeplitz_products(eq.as_slice());
            for (p, q) in a3.iter().chain(&r3).zip(a4.iter().chain(&r4)) {
                assert!((p - q).abs() <= 1e-13 * q.abs().max(1e-3), "n={n}");
            }
        }
        assert!(stirling_sums_exact(23).is_some());
        assert!(stirling_sums_exact(30).is_none());
        // Past the exact range the floating-point Stirling sums take over.
        let f = factored_inverse_equispaced(30).unwrap();
        assert_eq!(f.degree(), 30);
    }
}

use proptest::prelude::*;

use bernvand::bases::{
    bernstein_all, bernstein_poly_eval, legendre_shifted, legendre_to_bernstein, monomial_eval,
    monomial_to_bernstein, NodeSet,
};
use bernvand::bezout::bezout_closed_form;
use bernvand::conditioning::{kappa_bound, kappa_m_to_2, legendre_vandermonde};
use bernvand::simplex::{elevation, simplex_eval};
use bernvand::BernsteinVandermonde;

fn coeffs(len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-1.0f64..1.0, len)
}

fn sized_coeffs(max_degree: usize) -> impl Strategy<Value = Vec<f64>> {
    (1..=max_degree).prop_flat_map(|n| coeffs(n + 1))
}

fn bezout_pair(max_degree: usize) -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1..=max_degree).prop_flat_map(|n| (coeffs(n + 2), coeffs(n + 2)))
}

fn barycentric(d: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, d + 1).prop_map(|w| {
        let s: f64 = w.iter().sum();
        w.into_iter().map(|x| x / s).collect()
    })
}

proptest! {
    #[test]
    fn bernstein_partition_of_unity(n in 0usize..40, x in 0.0f64..=1.0) {
        let s: f64 = bernstein_all(n, x).iter().sum();
        prop_assert!((s - 1.0).abs() <= 1e-13);
    }

    #[test]
    fn bernstein_basis_is_nonnegative(n in 0usize..40, x in 0.0f64..=1.0) {
        prop_assert!(bernstein_all(n, x).iter().all(|&b| b >= 0.0));
    }

    #[test]
    fn monomial_to_bernstein_preserves_values(mono in sized_coeffs(10), x in 0.0f64..=1.0) {
        let n = mono.len() - 1;
        let bern = monomial_to_bernstein(&mono, n);
        let expected = monomial_eval(&mono, x);
        prop_assert!((bernstein_poly_eval(&bern, x) - expected).abs() <= 1e-12 * (1.0 + expected.abs()));
    }

    #[test]
    fn degree_raise_by_padding_monomials(mono in sized_coeffs(8), extra in 1usize..4, x in 0.0f64..=1.0) {
        let n = mono.len() - 1;
        let raised = monomial_to_bernstein(&mono, n + extra);
        let base = monomial_to_bernstein(&mono, n);
        prop_assert!((bernstein_poly_eval(&raised, x) - bernstein_poly_eval(&base, x)).abs() <= 1e-12);
    }

    #[test]
    fn shifted_legendre_bounded_on_unit_interval(j in 0usize..60, x in 0.0f64..=1.0) {
        prop_assert!(legendre_shifted(j, x).abs() <= 1.0 + 1e-12);
    }

    #[test]
    fn bezout_is_antisymmetric((v, w) in bezout_pair(10)) {
        let a = bezout_closed_form(&v, &w).unwrap();
        let b = bezout_closed_form(&w, &v).unwrap();
        let scale = 1.0 + a.matrix().max_abs();
        prop_assert!(a.matrix().max_abs_diff(&b.matrix().scale(-1.0)) <= 1e-13 * scale);
    }

    #[test]
    fn bezout_of_pair_with_itself_vanishes(v in sized_coeffs(10)) {
        prop_assume!(v.len() >= 2);
        let b = bezout_closed_form(&v, &v).unwrap();
        prop_assert_eq!(b.matrix().max_abs(), 0.0);
    }

    #[test]
    fn stratified_nodes_increase_within_strata(n in 1usize..30, seed in any::<u64>()) {
        let nodes = NodeSet::stratified_seeded(n, seed);
        let x = nodes.as_slice();
        prop_assert_eq!(x.len(), n + 1);
        let width = 1.0 / (n + 1) as f64;
        for (j, &xj) in x.iter().enumerate() {
            prop_assert!(xj >= j as f64 * width && xj < (j + 1) as f64 * width);
        }
        prop_assert!(x.windows(2).all(|p| p[0] < p[1]));
    }

    #[test]
    fn vandermonde_rows_sum_to_one(n in 1usize..25, seed in any::<u64>()) {
        let v = BernsteinVandermonde::new(NodeSet::stratified_seeded(n, seed)).unwrap();
        for i in 0..=n {
            let s: f64 = v.matrix().row(i).iter().sum();
            prop_assert!((s - 1.0).abs() <= 1e-13);
        }
    }

    #[test]
    fn bernstein_times_conversion_is_legendre_vandermonde(n in 1usize..=20, seed in any::<u64>()) {
        let nodes = NodeSet::stratified_seeded(n, seed);
        let v = BernsteinVandermonde::new(nodes.clone()).unwrap();
        let converted = v.matrix().matmul(&legendre_to_bernstein(n)).unwrap();
        let direct = legendre_vandermonde(&nodes);
        prop_assert!(converted.max_abs_diff(&direct) <= 1e-10 * direct.frobenius_norm());
    }

    #[test]
    fn lagrange_bound_dominates_conditioning(n in 1usize..=10, seed in any::<u64>()) {
        let nodes = NodeSet::stratified_seeded(n, seed);
        let kappa = kappa_m_to_2(&nodes).unwrap();
        prop_assert!(kappa <= kappa_bound(&nodes) * (1.0 + 1e-8));
    }

    #[test]
    fn elevation_preserves_simplex_polynomials(
        (d, n0, c, lambda) in (1usize..=3, 0usize..=4)
            .prop_flat_map(|(d, n0)| {
                let len = bernvand::simplex::lattice_size(d, n0);
                (Just(d), Just(n0), coeffs(len), barycentric(d))
            }),
        raise in 1usize..=3,
    ) {
        let e = elevation(d, n0, n0 + raise).unwrap();
        let raised = e.apply(&c).unwrap();
        let before = simplex_eval(d, n0, &c, &lambda);
        let after = simplex_eval(d, n0 + raise, &raised, &lambda);
        prop_assert!((before - after).abs() <= 1e-12);
    }

    #[test]
    fn elevation_rows_are_convex_weights(d in 1usize..=3, n0 in 0usize..=4, raise in 1usize..=3) {
        let e = elevation(d, n0, n0 + raise).unwrap();
        for i in 0..e.shape().0 {
            let row = e.row(i);
            prop_assert!(row.iter().all(|&(_, w)| w >= 0.0));
            let s: f64 = row.iter().map(|&(_, w)| w).sum();
            prop_assert!((s - 1.0).abs() <= 1e-13);
        }
    }
}

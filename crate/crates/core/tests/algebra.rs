use proptest::prelude::*;
use stiefel_xform::linalg::{cholesky_upper, principal_minors, Matrix, SpdMatrix};
use stiefel_xform::special::{
    composite_gamma, composite_power, reverse_exponent, reverse_matrix, siegel_gamma, CompositeExponent,
};

fn spd(m: usize) -> impl Strategy<Value = SpdMatrix> {
    prop::collection::vec(-1.5f64..1.5, m * m).prop_map(move |xs| {
        let a = Matrix::from_vec(m, m, xs).unwrap();
        let r = a.t_matmul(&a).add(&Matrix::identity(m).scale(0.3));
        SpdMatrix::new(r.symmetrize()).unwrap()
    })
}

fn upper(m: usize) -> impl Strategy<Value = Matrix> {
    (prop::collection::vec(-1.0f64..1.0, m * m), prop::collection::vec(0.2f64..2.0, m)).prop_map(
        move |(xs, d)| Matrix::from_fn(m, m, |i, j| if i == j { d[i] } else if i < j { xs[i * m + j] } else { 0.0 }),
    )
}

fn exponent(m: usize) -> impl Strategy<Value = CompositeExponent> {
    prop::collection::vec(-3.0f64..6.0, m).prop_map(|v| CompositeExponent::new(v).unwrap())
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn case() -> impl Strategy<Value = (SpdMatrix, CompositeExponent, CompositeExponent, Matrix, f64)> {
    (1usize..=4).prop_flat_map(|m| (spd(m), exponent(m), exponent(m), upper(m), 0.5f64..6.0))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn uniform_exponent_is_a_determinant_power((r, _, _, _, a) in case()) {
        let m = r.dim();
        let lhs = composite_power(&r, &CompositeExponent::uniform(m, a)).unwrap();
        prop_assert!(rel(lhs, r.det().powf(a / 2.0)) < 1e-10);
    }

    #[test]
    fn cholesky_form((r, lam, _, _, _) in case()) {
        let t = cholesky_upper(&r);
        let prod: f64 = lam.as_slice().iter().enumerate().map(|(j, l)| t[(j, j)].powf(*l)).product();
        prop_assert!(rel(composite_power(&r, &lam).unwrap(), prod) < 1e-10);
        prop_assert!(t.t_matmul(&t).sub(r.as_matrix()).max_abs() < 1e-10 * r.as_matrix().max_abs());
    }

    #[test]
    fn minors_form((r, lam, _, _, _) in case()) {
        let d = principal_minors(&r);
        let l = lam.as_slice();
        let m = l.len();
        let prod: f64 = (0..m)
            .map(|j| d[j].powf((l[j] - if j + 1 < m { l[j + 1] } else { 0.0 }) / 2.0))
            .product();
        prop_assert!(rel(composite_power(&r, &lam).unwrap(), prod) < 1e-9);
    }

    #[test]
    fn additivity((r, lam, mu, _, a) in case()) {
        let lhs = composite_power(&r, &lam.add(&mu)).unwrap();
        let rhs = composite_power(&r, &lam).unwrap() * composite_power(&r, &mu).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-10);
        let shifted = composite_power(&r, &lam.shift(a)).unwrap();
        prop_assert!(rel(shifted, composite_power(&r, &lam).unwrap() * r.det().powf(a / 2.0)) < 1e-10);
    }

    #[test]
    fn triangular_covariance((r, lam, _, t, _) in case()) {
        let trt = SpdMatrix::new(t.t_matmul(r.as_matrix()).matmul(&t).symmetrize()).unwrap();
        let tt = SpdMatrix::new(t.t_matmul(&t).symmetrize()).unwrap();
        let lhs = composite_power(&trt, &lam).unwrap();
        let rhs = composite_power(&tt, &lam).unwrap() * composite_power(&r, &lam).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-9);
    }

    #[test]
    fn reversal((r, lam, _, _, _) in case()) {
        let lhs = composite_power(&r, &reverse_exponent(&lam)).unwrap();
        let rhs = composite_power(&reverse_matrix(&r.inverse()), &lam.neg()).unwrap();
        prop_assert!(rel(lhs, rhs) < 1e-9);
    }

    #[test]
    fn uniform_composite_gamma_is_siegel(m in 1usize..=4, a in 4.0f64..12.0) {
        let lhs = composite_gamma(&CompositeExponent::uniform(m, a)).unwrap();
        prop_assert!(rel(lhs, siegel_gamma(m, a / 2.0).unwrap()) < 1e-12);
    }

    #[test]
    fn inverse_is_an_inverse(r in (1usize..=4).prop_flat_map(spd)) {
        let id = r.as_matrix().matmul(r.inverse().as_matrix());
        prop_assert!(id.sub(&Matrix::identity(r.dim())).max_abs() < 1e-9);
    }
}

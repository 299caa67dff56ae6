use proptest::prelude::*;
use stiefel_xform::linalg::{frame_completion, gram, polar_decompose, Frame, Matrix};
use stiefel_xform::manifold::{
    bistiefel_compose, gaussian_matrix, sample_fiber, sample_orthogonal, sample_stiefel,
};
use stiefel_xform::mc::{estimate, MCConfig, RandomSource};
use stiefel_xform::special::{stiefel_average, CompositeExponent};

fn within(est: &stiefel_xform::MCEstimate, target: f64, z: f64) -> bool {
    (est.mean - target).abs() <= z * est.se
}

#[test]
fn sphere_second_moment() {
    let est = estimate(&MCConfig::new(100_000, 1), |rng, _| {
        let v = sample_stiefel(3, 1, rng);
        Ok(v.as_matrix()[(0, 0)].powi(2))
    })
    .unwrap();
    assert!(within(&est, 1.0 / 3.0, 4.0), "{est:?}");
}

#[test]
fn determinant_moment_matches_the_average_formula() {
    let u0 = Frame::canonical(4, 2);
    let est = estimate(&MCConfig::new(100_000, 2), |rng, _| {
        let v = sample_stiefel(4, 2, rng);
        Ok(gram(&u0.as_matrix().t_matmul(v.as_matrix())).det())
    })
    .unwrap();
    let closed = stiefel_average(4, 2, 2, &CompositeExponent::uniform(2, 2.0)).unwrap();
    assert!(within(&est, closed, 4.0), "{est:?} vs {closed}");
}

#[test]
fn fiber_is_uniform_on_the_complement_sphere() {
    let u = Frame::new(Matrix::from_rows(&[[0.0], [0.0], [0.0], [1.0]]).unwrap()).unwrap();
    let est = estimate(&MCConfig::new(100_000, 3), |rng, _| {
        let v = sample_fiber(&u, 1, rng)?;
        Ok(v.as_matrix()[(0, 0)].powi(2))
    })
    .unwrap();
    assert!(within(&est, 1.0 / 3.0, 4.0), "{est:?}");
}

#[test]
fn same_source_same_stream() {
    let a = sample_orthogonal(5, &mut RandomSource::new(17, 3).rng());
    let b = sample_orthogonal(5, &mut RandomSource::new(17, 3).rng());
    let c = sample_orthogonal(5, &mut RandomSource::new(17, 4).rng());
    assert_eq!(a, b);
    assert_ne!(a, c);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn samplers_produce_frames(seed in any::<u64>(), n in 1usize..7, m in 1usize..7) {
        prop_assume!(m <= n);
        let mut rng = RandomSource::new(seed, 0).rng();
        let g = sample_orthogonal(n, &mut rng);
        prop_assert!(g.t_matmul(&g).sub(&Matrix::identity(n)).max_abs() < 1e-10);
        let v = sample_stiefel(n, m, &mut rng);
        prop_assert!(v.as_matrix().orthonormality_residual() < 1e-10);
    }

    #[test]
    fn fibers_are_orthogonal(seed in any::<u64>(), n in 2usize..7, k in 1usize..6, m in 1usize..6) {
        prop_assume!(k + m <= n);
        let mut rng = RandomSource::new(seed, 1).rng();
        let u = sample_stiefel(n, k, &mut rng);
        let v = sample_fiber(&u, m, &mut rng).unwrap();
        prop_assert!(u.as_matrix().t_matmul(v.as_matrix()).max_abs() < 1e-10);
        prop_assert!(v.as_matrix().orthonormality_residual() < 1e-10);
    }

    #[test]
    fn completion_carries_the_canonical_frame(seed in any::<u64>(), n in 2usize..7, k in 1usize..6) {
        prop_assume!(k < n);
        let mut rng = RandomSource::new(seed, 2).rng();
        let u = sample_stiefel(n, k, &mut rng);
        let g = frame_completion(&u);
        prop_assert!(g.t_matmul(&g).sub(&Matrix::identity(n)).max_abs() < 1e-10);
        let image = Frame::canonical(n, k).rotate(&g);
        prop_assert!(image.as_matrix().sub(u.as_matrix()).max_abs() < 1e-10);
    }

    #[test]
    fn polar_decomposition_reconstructs(seed in any::<u64>(), n in 1usize..7, m in 1usize..4) {
        prop_assume!(m <= n);
        let mut rng = RandomSource::new(seed, 3).rng();
        let x = gaussian_matrix(n, m, &mut rng);
        let (v, r) = polar_decompose(&x).unwrap();
        let sqrt_r = stiefel_xform::linalg::sym_sqrt(r.as_matrix());
        prop_assert!(v.as_matrix().matmul(&sqrt_r).sub(&x).max_abs() < 1e-8 * x.max_abs().max(1.0));
        prop_assert!(r.as_matrix().sub(&gram(&x)).max_abs() < 1e-8 * x.max_abs().max(1.0).powi(2));
    }

    #[test]
    fn bistiefel_frames(seed in any::<u64>(), k in 1usize..4, m in 1usize..3, extra in 0usize..3) {
        let n = k + m + extra;
        let mut rng = RandomSource::new(seed, 4).rng();
        let v = sample_stiefel(n, m, &mut rng);
        let a = v.as_matrix().block(0, 0, k, m).scale(0.9);
        let u = sample_stiefel(n - k, m, &mut rng);
        let w = bistiefel_compose(&a, &u).unwrap();
        prop_assert!(gram(w.as_matrix()).sub(&Matrix::identity(m)).max_abs() < 1e-9);
        prop_assert!(w.as_matrix().block(0, 0, k, m).sub(&a).max_abs() < 1e-12);
    }
}

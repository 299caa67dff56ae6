//! Haar sampling on `O(n)` and Stiefel manifolds, fiber sampling, and the
//! coordinate maps of the polar and bi-Stiefel decompositions.

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::linalg::{self, gram, thin_qr, Frame, Matrix, SpdMatrix};
use crate::{Error, Result};

pub fn gaussian_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| StandardNormal.sample(rng))
}

/// QR of a Gaussian matrix with the signs fixed so that `R` has a positive diagonal.
fn haar_columns<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Matrix {
    let g = gaussian_matrix(n, m, rng);
    let (mut q, rdiag) = thin_qr(&g);
    for (j, &d) in rdiag.iter().enumerate() {
        if d < 0.0 {
            for i in 0..n {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

/// Haar-distributed orthogonal `n×n` matrix.
pub fn sample_orthogonal<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Matrix {
    assert!(n >= 1);
    haar_columns(n, n, rng)
}

/// Uniform point of `V_{n,m}`.
pub fn sample_stiefel<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Frame {
    assert!(n >= m && m >= 1);
    Frame::from_trusted(haar_columns(n, m, rng))
}

/// Uniform `m`-frame orthogonal to `u`: `v = ũ ω` with `ω` uniform on `V_{n−k,m}`.
pub fn sample_fiber<R: Rng + ?Sized>(u: &Frame, m: usize, rng: &mut R) -> Result<Frame> {
    if u.m() + m > u.n() {
        return Err(Error::Dimension(format!(
            "fiber needs k + m <= n, got k={}, m={m}, n={}",
            u.m(),
            u.n()
        )));
    }
    let complement = linalg::orth_complement_frame(u);
    Ok(sample_in_span(&complement, m, rng))
}

/// Uniform `m`-frame inside the span of `basis`: `basis · ω`.
pub fn sample_in_span<R: Rng + ?Sized>(basis: &Frame, m: usize, rng: &mut R) -> Frame {
    let omega = sample_stiefel(basis.m(), m, rng);
    Frame::from_trusted(basis.as_matrix().matmul(omega.as_matrix()))
}

/// Uniform draw from the box `[−1, 1]^{k×m}`.
pub fn sample_box<R: Rng + ?Sized>(k: usize, m: usize, rng: &mut R) -> Matrix {
    Matrix::from_fn(k, m, |_, _| rng.random_range(-1.0..1.0))
}

/// `I_m − a'a` when it is positive definite.
fn interval_gap(a: &Matrix) -> Result<SpdMatrix> {
    let m = a.cols();
    let gap = Matrix::identity(m).sub(&gram(a));
    SpdMatrix::new(gap).map_err(|_| Error::OutOfRegion)
}

/// `v = [a; u (I_m − a'a)^{1/2}]`.
pub fn bistiefel_compose(a: &Matrix, u: &Frame) -> Result<Frame> {
    if a.cols() != u.m() {
        return Err(Error::Dimension("a and u must have the same number of columns".into()));
    }
    let gap = interval_gap(a)?;
    let lower = u.as_matrix().matmul(&linalg::sym_sqrt(gap.as_matrix()));
    Frame::with_tolerance(Matrix::vstack(a, &lower), 1e-9)
}

/// `det(I_m − a'a)^δ` with `δ = (n−k)/2 − (m+1)/2`.
pub fn bistiefel_weight(a: &Matrix, n: usize, k: usize, m: usize) -> Result<f64> {
    if a.shape() != (k, m) || k >= n {
        return Err(Error::Dimension(format!("a must be {k}x{m} with k < n")));
    }
    let gap = interval_gap(a)?;
    let delta = (n as f64 - k as f64) / 2.0 - (m as f64 + 1.0) / 2.0;
    Ok((delta * gap.ln_det()).exp())
}

/// `2^{−m} det(r)^{(n−m−1)/2}`.
pub fn polar_weight(r: &SpdMatrix, n: usize, m: usize) -> f64 {
    let e = (n as f64 - m as f64 - 1.0) / 2.0;
    (e * r.ln_det() - m as f64 * std::f64::consts::LN_2).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::RandomSource;

    #[test]
    fn orthogonal_samples_are_orthogonal() {
        let mut rng = RandomSource::new(1, 0).rng();
        for n in 1..7 {
            let g = sample_orthogonal(n, &mut rng);
            assert!(g.orthonormality_residual() < 1e-10);
        }
    }

    #[test]
    fn one_dimensional_haar_is_a_fair_sign() {
        let mut rng = RandomSource::new(2, 0).rng();
        let n = 10_000;
        let plus = (0..n).filter(|_| sample_orthogonal(1, &mut rng)[(0, 0)] > 0.0).count();
        let sigma = (n as f64 * 0.25).sqrt();
        assert!((plus as f64 - n as f64 / 2.0).abs() < 3.0 * sigma);
    }

    #[test]
    fn fiber_is_orthogonal() {
        let mut rng = RandomSource::new(3, 0).rng();
        for (n, k, m) in [(4, 1, 2), (5, 2, 3), (6, 3, 3)] {
            let u = sample_stiefel(n, k, &mut rng);
            let v = sample_fiber(&u, m, &mut rng).unwrap();
            assert!(u.as_matrix().t_matmul(v.as_matrix()).max_abs() < 1e-10);
            assert!(v.as_matrix().orthonormality_residual() < 1e-10);
        }
        assert!(sample_fiber(&Frame::canonical(3, 2), 2, &mut rng).is_err());
    }

    #[test]
    fn fiber_in_the_plane_is_two_points() {
        let mut rng = RandomSource::new(4, 0).rng();
        let e1 = Frame::canonical_top(2, 1);
        let n = 10_000;
        let mut plus = 0;
        for _ in 0..n {
            let v = sample_fiber(&e1, 1, &mut rng).unwrap();
            assert!(v.as_matrix()[(0, 0)].abs() < 1e-14);
            assert!((v.as_matrix()[(1, 0)].abs() - 1.0).abs() < 1e-14);
            if v.as_matrix()[(1, 0)] > 0.0 {
                plus += 1;
            }
        }
        assert!((plus as f64 - 5000.0).abs() < 3.0 * 50.0);
    }

    #[test]
    fn bistiefel_examples() {
        let u = Frame::canonical_top(2, 1);
        let a = Matrix::zeros(2, 1);
        let v = bistiefel_compose(&a, &u).unwrap();
        assert_eq!(v.as_matrix().block(2, 0, 2, 1), *u.as_matrix());
        assert_eq!(bistiefel_weight(&a, 4, 2, 1).unwrap(), 1.0);

        let theta: f64 = 0.7;
        let a = Matrix::from_rows(&[[theta.cos()]]).unwrap();
        let minus = Frame::new(Matrix::from_rows(&[[-1.0]]).unwrap()).unwrap();
        let v = bistiefel_compose(&a, &minus).unwrap();
        assert!((v.as_matrix()[(1, 0)] + theta.sin()).abs() < 1e-14);

        // δ = 0 when (n,k,m) = (3,1,1)
        let a = Matrix::from_rows(&[[0.3]]).unwrap();
        assert!((bistiefel_weight(&a, 3, 1, 1).unwrap() - 1.0).abs() < 1e-15);
        // δ = 1/2 when (n,k,m) = (6,2,2)
        let a = Matrix::from_rows(&[[0.2, 0.1], [0.0, 0.3]]).unwrap();
        let d = Matrix::identity(2).sub(&gram(&a)).det();
        assert!((bistiefel_weight(&a, 6, 2, 2).unwrap() - d.sqrt()).abs() < 1e-14);

        let outside = Matrix::from_rows(&[[1.2]]).unwrap();
        assert_eq!(bistiefel_compose(&outside, &minus), Err(Error::OutOfRegion));
    }

    #[test]
    fn random_bistiefel_frames_are_valid() {
        let mut rng = RandomSource::new(5, 0).rng();
        let mut made = 0;
        while made < 50 {
            let a = sample_box(2, 2, &mut rng);
            let u = sample_stiefel(3, 2, &mut rng);
            if let Ok(v) = bistiefel_compose(&a, &u) {
                assert!(gram(v.as_matrix()).sub(&Matrix::identity(2)).max_abs() < 1e-10);
                made += 1;
            }
        }
    }

    #[test]
    fn polar_weight_examples() {
        let r = SpdMatrix::new(Matrix::from_rows(&[[4.0]]).unwrap()).unwrap();
        assert!((polar_weight(&r, 1, 1) - 0.25).abs() < 1e-15);
        assert!((polar_weight(&SpdMatrix::identity(3), 7, 3) - 0.125).abs() < 1e-15);
        let d = SpdMatrix::new(Matrix::diag(&[4.0, 9.0])).unwrap();
        assert!((polar_weight(&d, 5, 2) - 9.0).abs() < 1e-12);
    }
}

//! Small dense real matrices and the factorizations the transforms are built on.
//!
//! Everything here is sized for frames with `n` up to about 8, so the routines
//! favour clarity and robustness (Householder QR, cyclic Jacobi) over blocking.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Default tolerance for `‖v'v − I‖_max` when accepting a frame.
pub const FRAME_TOL: f64 = 1e-10;
/// Default relative tolerance on the smallest singular value in [`polar_decompose`].
pub const RANK_TOL: f64 = 1e-10;
/// Absolute symmetry slack accepted by [`SpdMatrix::new`] (scaled by `max(1, ‖r‖_max)`).
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Dense row-major real matrix.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                write!(f, "{:>12.6} ", self[(i, j)])?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "matrix dimensions must be positive");
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Build from row-major data; fails if the entry count does not match.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 || data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries cannot form a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    /// Build from a slice of equal-length rows.
    pub fn from_rows<R: AsRef<[f64]>>(rows: &[R]) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(nrows * ncols);
        for r in rows {
            let r = r.as_ref();
            if r.len() != ncols {
                return Err(Error::Dimension("ragged rows".into()));
            }
            data.extend_from_slice(r);
        }
        Matrix::from_vec(nrows, ncols, data)
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn diag(values: &[f64]) -> Self {
        let mut m = Matrix::zeros(values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// `self · rhs`.
    pub fn matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matmul shape mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[l * rhs.cols + j];
                }
            }
        }
        out
    }

    /// `self' · rhs` without forming the transpose.
    pub fn t_matmul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.rows, rhs.rows, "t_matmul shape mismatch");
        let mut out = Matrix::zeros(self.cols, rhs.cols);
        for l in 0..self.rows {
            for i in 0..self.cols {
                let a = self[(l, i)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.data[l * rhs.cols + j];
                }
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |acc, x| acc.max(x.abs()))
    }

    pub fn trace(&self) -> f64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn set_column(&mut self, j: usize, col: &[f64]) {
        assert_eq!(col.len(), self.rows);
        for (i, &x) in col.iter().enumerate() {
            self[(i, j)] = x;
        }
    }

    /// Copy of the block starting at `(r0, c0)` with the given shape.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Matrix::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)])
    }

    /// Columns `c0..c0+cols`.
    pub fn columns(&self, c0: usize, cols: usize) -> Matrix {
        self.block(0, c0, self.rows, cols)
    }

    /// Stack `top` above `bottom`.
    pub fn vstack(top: &Matrix, bottom: &Matrix) -> Matrix {
        assert_eq!(top.cols, bottom.cols);
        let mut data = top.data.clone();
        data.extend_from_slice(&bottom.data);
        Matrix {
            rows: top.rows + bottom.rows,
            cols: top.cols,
            data,
        }
    }

    /// Place `left` and `right` side by side.
    pub fn hstack(left: &Matrix, right: &Matrix) -> Matrix {
        assert_eq!(left.rows, right.rows);
        Matrix::from_fn(left.rows, left.cols + right.cols, |i, j| {
            if j < left.cols {
                left[(i, j)]
            } else {
                right[(i, j - left.cols)]
            }
        })
    }

    /// Symmetric part `(a + a')/2`.
    pub fn symmetrize(&self) -> Matrix {
        assert!(self.is_square());
        Matrix::from_fn(self.rows, self.cols, |i, j| 0.5 * (self[(i, j)] + self[(j, i)]))
    }

    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Determinant by LU with partial pivoting.
    pub fn det(&self) -> f64 {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let mut a = self.data.clone();
        let mut det = 1.0;
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&p, &q| a[p * n + col].abs().total_cmp(&a[q * n + col].abs()))
                .unwrap_or(col);
            if a[pivot * n + col] == 0.0 {
                return 0.0;
            }
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = -det;
            }
            let p = a[col * n + col];
            det *= p;
            for i in (col + 1)..n {
                let factor = a[i * n + col] / p;
                if factor != 0.0 {
                    for j in col..n {
                        a[i * n + j] -= factor * a[col * n + j];
                    }
                }
            }
        }
        det
    }

    /// `‖self'self − I‖_max`.
    pub fn orthonormality_residual(&self) -> f64 {
        let g = self.t_matmul(self);
        g.sub(&Matrix::identity(self.cols)).max_abs()
    }
}

/// Point of the Stiefel manifold: an `n×m` matrix with orthonormal columns.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Matrix", into = "Matrix")]
pub struct Frame(Matrix);

impl TryFrom<Matrix> for Frame {
    type Error = Error;
    fn try_from(m: Matrix) -> Result<Self> {
        Frame::new(m)
    }
}

impl From<Frame> for Matrix {
    fn from(f: Frame) -> Matrix {
        f.0
    }
}

impl Frame {
    /// Accept `mat` if its columns are orthonormal to [`FRAME_TOL`].
    pub fn new(mat: Matrix) -> Result<Self> {
        Frame::with_tolerance(mat, FRAME_TOL)
    }

    pub fn with_tolerance(mat: Matrix, tol: f64) -> Result<Self> {
        if mat.rows() < mat.cols() {
            return Err(Error::Dimension(format!(
                "a frame needs n >= m, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let resid = mat.orthonormality_residual();
        if !(resid <= tol) {
            return Err(Error::NotAFrame { residual: resid });
        }
        Ok(Frame(mat))
    }

    /// Re-orthonormalize an (almost) full-rank matrix through its polar factor.
    pub fn reorthonormalize(mat: &Matrix) -> Result<Self> {
        polar_decompose(mat).map(|(v, _)| v)
    }

    /// Caller guarantees orthonormal columns (QR output, products of frames).
    pub(crate) fn from_trusted(mat: Matrix) -> Self {
        debug_assert!(mat.orthonormality_residual() < 1e-8);
        Frame(mat)
    }

    /// `[0; I_m]` in `R^{n×m}`, identity block at the bottom.
    pub fn canonical(n: usize, m: usize) -> Self {
        assert!(m <= n && m >= 1);
        Frame(Matrix::from_fn(n, m, |i, j| if i == n - m + j { 1.0 } else { 0.0 }))
    }

    /// `[I_m; 0]` in `R^{n×m}`, identity block at the top.
    pub fn canonical_top(n: usize, m: usize) -> Self {
        assert!(m <= n && m >= 1);
        Frame(Matrix::from_fn(n, m, |i, j| if i == j { 1.0 } else { 0.0 }))
    }

    pub fn n(&self) -> usize {
        self.0.rows()
    }

    pub fn m(&self) -> usize {
        self.0.cols()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// `g · self` for an orthogonal `g`.
    pub fn rotate(&self, g: &Matrix) -> Frame {
        Frame::from_trusted(g.matmul(&self.0))
    }

    /// `self · gamma` for `gamma ∈ O(m)`.
    pub fn right_act(&self, gamma: &Matrix) -> Frame {
        Frame::from_trusted(self.0.matmul(gamma))
    }
}

/// Symmetric positive-definite `m×m` matrix with its Cholesky factor cached.
#[derive(Clone, Debug, PartialEq)]
pub struct SpdMatrix {
    mat: Matrix,
    chol: Matrix,
}

impl SpdMatrix {
    /// Validate symmetry and positive definiteness (via Cholesky).
    pub fn new(mat: Matrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::Dimension("SPD matrix must be square".into()));
        }
        let slack = SYMMETRY_TOL * mat.max_abs().max(1.0);
        if mat.max_asymmetry() > slack {
            return Err(Error::NotSymmetric {
                asymmetry: mat.max_asymmetry(),
            });
        }
        let chol = cholesky_factor(&mat)?;
        Ok(SpdMatrix { mat, chol })
    }

    pub fn identity(m: usize) -> Self {
        SpdMatrix {
            mat: Matrix::identity(m),
            chol: Matrix::identity(m),
        }
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn as_matrix(&self) -> &Matrix {
        &self.mat
    }

    pub fn into_matrix(self) -> Matrix {
        self.mat
    }

    /// Upper-triangular `t` with positive diagonal and `t't = self`.
    pub fn cholesky(&self) -> &Matrix {
        &self.chol
    }

    pub fn det(&self) -> f64 {
        (0..self.dim()).map(|j| self.chol[(j, j)].powi(2)).product()
    }

    pub fn ln_det(&self) -> f64 {
        (0..self.dim()).map(|j| 2.0 * self.chol[(j, j)].ln()).sum()
    }

    /// Inverse through the cached Cholesky factor.
    pub fn inverse(&self) -> SpdMatrix {
        let m = self.dim();
        let t = &self.chol;
        // t^{-1} is upper triangular; back-substitute column by column.
        let mut tinv = Matrix::zeros(m, m);
        for j in 0..m {
            tinv[(j, j)] = 1.0 / t[(j, j)];
            for i in (0..j).rev() {
                let mut s = 0.0;
                for l in (i + 1)..=j {
                    s += t[(i, l)] * tinv[(l, j)];
                }
                tinv[(i, j)] = -s / t[(i, i)];
            }
        }
        // r^{-1} = t^{-1} t^{-T}
        let inv = tinv.matmul(&tinv.transpose()).symmetrize();
        SpdMatrix::new(inv).expect("inverse of an SPD matrix is SPD")
    }
}

fn cholesky_factor(r: &Matrix) -> Result<Matrix> {
    let m = r.rows();
    let mut t = Matrix::zeros(m, m);
    for j in 0..m {
        let mut d = r[(j, j)];
        for l in 0..j {
            d -= t[(l, j)] * t[(l, j)];
        }
        if !(d > 0.0) || !d.is_finite() {
            return Err(Error::NotPositiveDefinite { pivot: j });
        }
        let tjj = d.sqrt();
        t[(j, j)] = tjj;
        for i in (j + 1)..m {
            let mut s = r[(j, i)];
            for l in 0..j {
                s -= t[(l, j)] * t[(l, i)];
            }
            t[(j, i)] = s / tjj;
        }
    }
    Ok(t)
}

/// `v'v`, made exactly symmetric by averaging the two triangles.
pub fn gram(v: &Matrix) -> Matrix {
    v.t_matmul(v).symmetrize()
}

/// Upper-triangular Cholesky factor `t` with `t't = r`.
pub fn cholesky_upper(r: &SpdMatrix) -> Matrix {
    r.cholesky().clone()
}

/// Leading principal minors `Δ_1(r), …, Δ_m(r)`.
pub fn principal_minors(r: &SpdMatrix) -> Vec<f64> {
    let t = r.cholesky();
    let mut acc = 1.0;
    (0..r.dim())
        .map(|j| {
            acc *= t[(j, j)] * t[(j, j)];
            acc
        })
        .collect()
}

/// Eigen-decomposition `(values, vectors)` of a symmetric matrix by cyclic Jacobi.
/// Eigenvectors are the columns of the returned matrix.
pub fn symmetric_eigen(a: &Matrix) -> (Vec<f64>, Matrix) {
    assert!(a.is_square());
    let n = a.rows();
    let mut a = a.symmetrize();
    let mut v = Matrix::identity(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[(i, j)] * a[(i, j)];
            }
        }
        if off.sqrt() <= 1e-17 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq.abs() <= f64::MIN_POSITIVE {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)]).collect(), v)
}

/// `q · diag(f(λ)) · q'` for the spectral decomposition of a symmetric matrix.
pub fn spectral_map(a: &Matrix, f: impl Fn(f64) -> f64) -> Matrix {
    let (vals, q) = symmetric_eigen(a);
    let n = a.rows();
    let mut out = Matrix::zeros(n, n);
    for (l, &lam) in vals.iter().enumerate() {
        let fl = f(lam);
        for i in 0..n {
            let qi = q[(i, l)] * fl;
            for j in 0..n {
                out[(i, j)] += qi * q[(j, l)];
            }
        }
    }
    out.symmetrize()
}

/// Symmetric square root of a positive semi-definite matrix.
pub fn sym_sqrt(a: &Matrix) -> Matrix {
    spectral_map(a, |l| l.max(0.0).sqrt())
}

/// `x = v·r^{1/2}` with `v` a frame and `r = x'x`.
pub fn polar_decompose(x: &Matrix) -> Result<(Frame, SpdMatrix)> {
    polar_decompose_with(x, RANK_TOL)
}

pub fn polar_decompose_with(x: &Matrix, rank_tol: f64) -> Result<(Frame, SpdMatrix)> {
    let (n, m) = x.shape();
    if n < m {
        return Err(Error::Dimension(format!("polar decomposition needs n >= m, got {n}x{m}")));
    }
    let r = gram(x);
    let (vals, q) = symmetric_eigen(&r);
    let largest = vals.iter().cloned().fold(0.0_f64, f64::max);
    let smallest = vals.iter().cloned().fold(f64::INFINITY, f64::min);
    // singular values are square roots of the Gram eigenvalues
    if !(largest > 0.0) || smallest.max(0.0).sqrt() <= rank_tol * largest.sqrt() {
        return Err(Error::RankDeficient);
    }
    let mut inv_sqrt = Matrix::zeros(m, m);
    for (l, &lam) in vals.iter().enumerate() {
        let w = 1.0 / lam.sqrt();
        for i in 0..m {
            for j in 0..m {
                inv_sqrt[(i, j)] += q[(i, l)] * w * q[(j, l)];
            }
        }
    }
    let v = x.matmul(&inv_sqrt.symmetrize());
    let r = SpdMatrix::new(r)?;
    Ok((Frame::from_trusted(v), r))
}

/// Thin Householder QR of an `n×m` matrix (`n ≥ m`): returns `Q` (`n×m`) with
/// orthonormal columns and the diagonal of `R`.
pub fn thin_qr(a: &Matrix) -> (Matrix, Vec<f64>) {
    let (n, m) = a.shape();
    assert!(n >= m);
    let mut r = a.clone();
    let mut reflectors: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut rdiag = Vec::with_capacity(m);
    for j in 0..m {
        let mut norm = 0.0;
        for i in j..n {
            norm += r[(i, j)] * r[(i, j)];
        }
        let norm = norm.sqrt();
        let alpha = if r[(j, j)] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (j..n).map(|i| r[(i, j)]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 > 0.0 {
            for c in j..m {
                let dot: f64 = (j..n).map(|i| v[i - j] * r[(i, c)]).sum();
                let f = 2.0 * dot / vnorm2;
                for i in j..n {
                    r[(i, c)] -= f * v[i - j];
                }
            }
        }
        rdiag.push(r[(j, j)]);
        reflectors.push(v);
    }
    // accumulate Q = H_0 H_1 ... H_{m-1} applied to the first m columns of I
    let mut q = Matrix::from_fn(n, m, |i, j| if i == j { 1.0 } else { 0.0 });
    for j in (0..m).rev() {
        let v = &reflectors[j];
        let vnorm2: f64 = v.iter().map(|x| x * x).sum();
        if vnorm2 == 0.0 {
            continue;
        }
        for c in 0..m {
            let dot: f64 = (j..n).map(|i| v[i - j] * q[(i, c)]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in j..n {
                q[(i, c)] -= f * v[i - j];
            }
        }
    }
    (q, rdiag)
}

/// Orthogonal `g_u` (`n×n`) whose last `k` columns equal `u`, so `g_u·[0; I_k] = u`.
///
/// The first `n−k` columns come from Gram–Schmidt on the standard basis,
/// always taking next the basis vector with the largest residual after
/// projecting out `u` and the columns already chosen (ties go to the lower
/// index). For `u = [0; I_k]` this returns the identity.
pub fn frame_completion(u: &Frame) -> Matrix {
    let complement = orth_complement_frame(u);
    Matrix::hstack(complement.as_matrix(), u.as_matrix())
}

/// An `(n−k)`-frame spanning `{u}^⊥`; the first `n−k` columns of [`frame_completion`].
pub fn orth_complement_frame(u: &Frame) -> Frame {
    let n = u.n();
    let k = u.m();
    assert!(k < n, "complement of a full frame is empty");
    let um = u.as_matrix();
    let mut basis: Vec<Vec<f64>> = (0..k).map(|j| um.column(j)).collect();
    let mut chosen: Vec<Vec<f64>> = Vec::with_capacity(n - k);
    let mut used = vec![false; n];
    for _ in 0..(n - k) {
        let mut best: Option<(usize, Vec<f64>, f64)> = None;
        for (i, _) in used.iter().enumerate().filter(|(_, &taken)| !taken) {
            let mut e = vec![0.0; n];
            e[i] = 1.0;
            // two passes of modified Gram-Schmidt
            for _ in 0..2 {
                for b in &basis {
                    let d: f64 = b.iter().zip(&e).map(|(x, y)| x * y).sum();
                    for (ei, bi) in e.iter_mut().zip(b) {
                        *ei -= d * bi;
                    }
                }
            }
            let norm = e.iter().map(|x| x * x).sum::<f64>().sqrt();
            if best.as_ref().is_none_or(|(_, _, bn)| norm > *bn + 1e-14) {
                best = Some((i, e, norm));
            }
        }
        let (i, mut e, norm) = best.expect("a residual direction always exists");
        used[i] = true;
        for x in &mut e {
            *x /= norm;
        }
        basis.push(e.clone());
        chosen.push(e);
    }
    let mut out = Matrix::zeros(n, n - k);
    for (j, col) in chosen.iter().enumerate() {
        out.set_column(j, col);
    }
    Frame::from_trusted(out)
}

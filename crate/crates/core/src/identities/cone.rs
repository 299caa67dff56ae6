//! Integrals over the cone of positive definite matrices and over matrix space
//! used as independent oracles by the catalog.

use std::f64::consts::PI;

use rand::Rng as _;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::linalg::{gram, spectral_map, sym_sqrt, symmetric_eigen, Frame, Matrix, SpdMatrix};
use crate::manifold::{polar_weight, sample_stiefel};
use crate::mc::{self, MCConfig, MCEstimate, Rng};
use crate::quadrature;
use crate::special::{
    composite_gamma, composite_power, reverse_exponent, reverse_matrix, siegel_gamma, ConstantKind,
    ConstantSpec, CompositeExponent,
};
use crate::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

/// Proposal on upper-triangular `t` with positive diagonal:
/// `t_jj² ~ Gamma(shape_j, rate)` and `t_ij ~ N(0, sigma²)` above the diagonal.
struct CholeskyProposal {
    shapes: Vec<f64>,
    rate: f64,
    sigma: f64,
    gammas: Vec<Gamma<f64>>,
}

impl CholeskyProposal {
    fn new(shapes: Vec<f64>, rate: f64, sigma: f64) -> Result<Self> {
        let gammas = shapes
            .iter()
            .map(|&a| Gamma::new(a, 1.0 / rate).map_err(|e| Error::Domain(e.to_string())))
            .collect::<Result<Vec<_>>>()?;
        Ok(CholeskyProposal {
            shapes,
            rate,
            sigma,
            gammas,
        })
    }

    /// Draw `t` and return it with `ln q(t)`.
    fn draw(&self, rng: &mut Rng) -> (Matrix, f64) {
        let m = self.shapes.len();
        let mut t = Matrix::zeros(m, m);
        let mut ln_q = 0.0;
        for j in 0..m {
            let a = self.shapes[j];
            let d = self.gammas[j].sample(rng).sqrt();
            t[(j, j)] = d;
            ln_q += 2f64.ln() + a * self.rate.ln() - libm::lgamma(a) + (2.0 * a - 1.0) * d.ln()
                - self.rate * d * d;
            for i in 0..j {
                let z: f64 = StandardNormal.sample(rng);
                let x = self.sigma * z;
                t[(i, j)] = x;
                ln_q += -0.5 * z * z - self.sigma.ln() - LN_SQRT_2PI;
            }
        }
        (t, ln_q)
    }
}

/// `ln` of the Jacobian of `t ↦ t't`: `m ln 2 + Σ_j (m−j+1) ln t_jj`.
fn ln_cholesky_jacobian(t: &Matrix) -> f64 {
    let m = t.rows();
    (0..m)
        .map(|j| (m - j) as f64 * t[(j, j)].ln())
        .sum::<f64>()
        + m as f64 * 2f64.ln()
}

/// `Γ_Ω(λ) (s*)^{−λ*}`, the closed form of the Laplace integral.
pub fn laplace_closed_form(s: &SpdMatrix, lam: &CompositeExponent) -> Result<f64> {
    check_laplace(s, lam)?;
    let g = composite_gamma(lam)?;
    Ok(g * composite_power(&reverse_matrix(s), &reverse_exponent(lam).neg())?)
}

fn check_laplace(s: &SpdMatrix, lam: &CompositeExponent) -> Result<()> {
    if s.dim() != lam.dim() {
        return Err(Error::Dimension("s and lambda must have the same size".into()));
    }
    for (j, &l) in lam.as_slice().iter().enumerate() {
        if l <= j as f64 {
            return Err(Error::Admissibility(format!(
                "the Laplace integral needs lambda_j > j-1; lambda_{} = {l}",
                j + 1
            )));
        }
    }
    Ok(())
}

/// Importance-sampled `∫_Ω e^{−tr(rs)} r^λ d_*r`.
pub fn laplace_importance(s: &SpdMatrix, lam: &CompositeExponent, cfg: &MCConfig) -> Result<MCEstimate> {
    check_laplace(s, lam)?;
    let m = s.dim();
    let (evals, _) = symmetric_eigen(s.as_matrix());
    let lmin = evals.iter().cloned().fold(f64::INFINITY, f64::min);
    let shapes = (0..m).map(|j| (lam.as_slice()[j] - j as f64) / 2.0).collect();
    let proposal = CholeskyProposal::new(shapes, 0.5 * lmin, (1.0 / lmin).sqrt())?;
    let lam = lam.clone();
    let sm = s.as_matrix().clone();
    mc::estimate(cfg, |rng, _| {
        let (t, ln_q) = proposal.draw(rng);
        // d_*r = 2^m Π t_jj^{−j} dt and r^λ = Π t_jj^{λ_j}
        let mut ln_f = m as f64 * 2f64.ln();
        for j in 0..m {
            ln_f += (lam.as_slice()[j] - (j + 1) as f64) * t[(j, j)].ln();
        }
        ln_f -= t.matmul(&sm).matmul(&t.transpose()).trace();
        Ok((ln_f - ln_q).exp())
    })
}

/// `∫_0^∞ e^{−sr} r^{λ/2−1} dr`, the one-dimensional cone integral, by quadrature after `r = x²`.
pub fn laplace_quadrature(s: f64, lam: f64) -> f64 {
    quadrature::integrate_half_line(|x| 2.0 * x.powf(lam - 1.0) * (-s * x * x).exp(), 0.0, 1e-13)
}

/// `B_m(α, β) = Γ_m(α) Γ_m(β) / Γ_m(α+β)`.
pub fn beta_closed_form(m: usize, a: f64, b: f64) -> Result<f64> {
    Ok(siegel_gamma(m, a)? * siegel_gamma(m, b)? / siegel_gamma(m, a + b)?)
}

/// `∫_0^1 r^{α−1}(1−r)^{β−1} dr` by quadrature after `r = sin²θ`.
pub fn beta_quadrature(a: f64, b: f64) -> f64 {
    quadrature::integrate(
        |th| 2.0 * th.sin().powf(2.0 * a - 1.0) * th.cos().powf(2.0 * b - 1.0),
        0.0,
        PI / 2.0,
        1e-13,
    )
}

/// `∫_{0<r<I} |r|^{α−d}|I−r|^{β−d} dr` by uniform sampling of the box
/// `r_ii ∈ (0,1)`, `|r_ij| < 1` and rejection.
pub fn beta_box(m: usize, a: f64, b: f64, cfg: &MCConfig) -> Result<MCEstimate> {
    let d = (m as f64 + 1.0) / 2.0;
    let volume = 2f64.powi((m * (m - 1) / 2) as i32);
    let est = mc::estimate(cfg, |rng, _| {
        let mut r = Matrix::zeros(m, m);
        for i in 0..m {
            r[(i, i)] = rng.random_range(0.0..1.0);
            for j in 0..i {
                let x = rng.random_range(-1.0..1.0);
                r[(i, j)] = x;
                r[(j, i)] = x;
            }
        }
        let lower = match SpdMatrix::new(r.clone()) {
            Ok(s) => s,
            Err(_) => return Ok(0.0),
        };
        let upper = match SpdMatrix::new(Matrix::identity(m).sub(&r)) {
            Ok(s) => s,
            Err(_) => return Ok(0.0),
        };
        Ok(((a - d) * lower.ln_det() + (b - d) * upper.ln_det()).exp())
    })?;
    Ok(est.scale(volume))
}

/// `∫ e^{−tr(x'x)} dx` over `n×m` matrices through polar coordinates
/// `x = v r^{1/2}`: the cone part is importance-sampled and `v` is Haar.
pub fn polar_gaussian(n: usize, m: usize, cfg: &MCConfig) -> Result<MCEstimate> {
    if m == 0 || m > n {
        return Err(Error::Dimension(format!("need 1 <= m <= n, got ({n},{m})")));
    }
    let rate = 0.7;
    let shapes = (0..m).map(|j| (n - j) as f64 / 2.0).collect();
    let proposal = CholeskyProposal::new(shapes, rate, (0.5 / rate).sqrt())?;
    let sigma = crate::special::paper_constant(&ConstantSpec::new(ConstantKind::SigmaNm, n, m, None, None))?;
    let est = mc::estimate(cfg, |rng, _| {
        let (t, ln_q) = proposal.draw(rng);
        let r = SpdMatrix::new(gram(&t)).map_err(|_| Error::NonFiniteSample { index: 0 })?;
        let v = sample_stiefel(n, m, rng);
        let x = v.as_matrix().matmul(&sym_sqrt(r.as_matrix()));
        let g = (-gram(&x).trace()).exp();
        Ok(polar_weight(&r, n, m) * g * (ln_cholesky_jacobian(&t) - ln_q).exp())
    })?;
    Ok(est.scale(sigma))
}

/// The chart `μ(y) = [y; I_m](I_m + y'y)^{−1/2}` from `(n−m)×m` matrices to `V_{n,m}`.
pub fn stiefel_chart(y: &Matrix) -> Frame {
    let m = y.cols();
    let g = Matrix::identity(m).add(&gram(y));
    let root = spectral_map(&g, |x| x.powf(-0.5));
    let stacked = Matrix::vstack(y, &Matrix::identity(m));
    Frame::from_trusted(stacked.matmul(&root))
}

/// Importance-sampled `∫ h(y) dy` over `(n−m)×m` matrices, with independent
/// multivariate Cauchy columns as the proposal.
pub fn matrix_space_integral<H>(n: usize, m: usize, h: H, cfg: &MCConfig) -> Result<MCEstimate>
where
    H: Fn(&Matrix) -> f64 + Sync,
{
    if m == 0 || m >= n {
        return Err(Error::Dimension(format!("need 1 <= m < n, got ({n},{m})")));
    }
    let d = n - m;
    let half = (d as f64 + 1.0) / 2.0;
    let ln_c = libm::lgamma(half) - half * PI.ln();
    mc::estimate(cfg, |rng, _| {
        let mut y = Matrix::zeros(d, m);
        let mut ln_q = 0.0;
        for j in 0..m {
            let g: f64 = StandardNormal.sample(rng);
            let mut norm2 = 0.0;
            for i in 0..d {
                let z: f64 = StandardNormal.sample(rng);
                let x = z / g.abs();
                y[(i, j)] = x;
                norm2 += x * x;
            }
            ln_q += ln_c - half * (1.0 + norm2).ln();
        }
        Ok(h(&y) * (-ln_q).exp())
    })
}

/// `σ_{n−1,1} ∫_0^{π/2} sin^{n−2}θ g(cos θ) dθ`: the matrix-space integral
/// `∫ g((1+|y|²)^{−1/2}) (1+|y|²)^{−n/2} dy` over `R^{n−1}` in polar form.
pub fn radial_chart_integral(n: usize, g: impl Fn(f64) -> f64) -> Result<f64> {
    if n < 2 {
        return Err(Error::Dimension("need n >= 2".into()));
    }
    let area = crate::special::paper_constant(&ConstantSpec::new(ConstantKind::SigmaNm, n - 1, 1, None, None))?;
    let v = quadrature::integrate(
        |th| th.sin().powi(n as i32 - 2) * g(th.cos()),
        0.0,
        PI / 2.0,
        1e-13,
    );
    Ok(area * v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_dimensional_oracles() {
        let q = laplace_quadrature(1.7, 1.5);
        let s = SpdMatrix::new(Matrix::from_rows(&[[1.7]]).unwrap()).unwrap();
        let c = laplace_closed_form(&s, &CompositeExponent::new(vec![1.5]).unwrap()).unwrap();
        assert!((q / c - 1.0).abs() < 1e-9, "{q} {c}");
        let b = beta_quadrature(2.0, 2.5);
        assert!((b / beta_closed_form(1, 2.0, 2.5).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn chart_is_a_frame() {
        let y = Matrix::from_rows(&[[0.3, -1.2], [2.0, 0.1], [0.0, 0.5]]).unwrap();
        let v = stiefel_chart(&y);
        assert!(v.as_matrix().orthonormality_residual() < 1e-12);
    }

    #[test]
    fn cauchy_proposal_is_exact_for_the_sphere_chart() {
        // m = 1, h = (1+|y|²)^{−n/2} matches the proposal, so every weight is equal
        let n = 4;
        let cfg = MCConfig::new(2000, 3);
        let e = matrix_space_integral(
            n,
            1,
            |y| (1.0 + gram(y)[(0, 0)]).powf(-(n as f64) / 2.0),
            &cfg,
        )
        .unwrap();
        assert!(e.se < 1e-12 * e.mean);
        let q = radial_chart_integral(n, |_| 1.0).unwrap();
        assert!((e.mean / q - 1.0).abs() < 1e-9);
    }
}

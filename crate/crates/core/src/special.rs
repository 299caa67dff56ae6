//! Special functions of the cone of positive definite matrices and the
//! registry of closed-form constants used by the identity fixtures.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::linalg::{Matrix, SpdMatrix};
use crate::{Error, Result};

/// Distance to a non-positive integer below which a gamma argument counts as a pole.
pub const POLE_TOL: f64 = 1e-12;
/// Largest log-magnitude a constant may have before [`Error::Overflow`] is raised.
pub const LOG_GUARD: f64 = 700.0;

fn pole_check(arg: f64, factor: usize) -> Result<()> {
    let nearest = arg.round();
    if nearest <= 0.0 && (arg - nearest).abs() <= POLE_TOL {
        return Err(Error::Pole {
            factor,
            argument: arg,
        });
    }
    Ok(())
}

/// `ln|Γ(x)|` and the sign of `Γ(x)`.
fn signed_lgamma(x: f64, factor: usize) -> Result<(f64, f64)> {
    pole_check(x, factor)?;
    let (lg, sign) = libm::lgamma_r(x);
    Ok((lg, if sign < 0 { -1.0 } else { 1.0 }))
}

/// `Γ_m(α) = π^{m(m−1)/4} ∏_{j=0}^{m−1} Γ(α − j/2)`.
pub fn siegel_gamma(m: usize, alpha: f64) -> Result<f64> {
    assert!(m >= 1);
    let mut prod = PI.powf(m as f64 * (m as f64 - 1.0) / 4.0);
    for j in 0..m {
        let arg = alpha - j as f64 / 2.0;
        pole_check(arg, j)?;
        prod *= libm::tgamma(arg);
    }
    if prod.is_finite() {
        Ok(prod)
    } else {
        let (lg, sign) = signed_log_siegel_gamma(m, alpha)?;
        Ok(sign * lg.exp())
    }
}

/// `ln Γ_m(α)` for arguments where every factor `Γ(α − j/2)` has a positive argument.
pub fn log_siegel_gamma(m: usize, alpha: f64) -> Result<f64> {
    assert!(m >= 1);
    for j in 0..m {
        let arg = alpha - j as f64 / 2.0;
        pole_check(arg, j)?;
        if arg <= 0.0 {
            return Err(Error::Domain(format!(
                "factor {j} of the Siegel gamma has argument {arg} <= 0"
            )));
        }
    }
    signed_log_siegel_gamma(m, alpha).map(|(lg, _)| lg)
}

/// `(ln|Γ_m(α)|, sign Γ_m(α))`, valid at every pole-free `α`.
pub fn signed_log_siegel_gamma(m: usize, alpha: f64) -> Result<(f64, f64)> {
    assert!(m >= 1);
    let mut acc = (m as f64) * (m as f64 - 1.0) / 4.0 * PI.ln();
    let mut sign = 1.0;
    for j in 0..m {
        let (lg, s) = signed_lgamma(alpha - j as f64 / 2.0, j)?;
        acc += lg;
        sign *= s;
    }
    Ok((acc, sign))
}

/// A real composite exponent `λ = (λ_1, …, λ_m)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct CompositeExponent(Vec<f64>);

impl TryFrom<Vec<f64>> for CompositeExponent {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        CompositeExponent::new(v)
    }
}

impl From<CompositeExponent> for Vec<f64> {
    fn from(l: CompositeExponent) -> Vec<f64> {
        l.0
    }
}

impl CompositeExponent {
    pub fn new(lam: Vec<f64>) -> Result<Self> {
        if lam.is_empty() {
            return Err(Error::Dimension("composite exponent needs m >= 1 entries".into()));
        }
        if lam.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("composite exponent entries must be finite".into()));
        }
        Ok(CompositeExponent(lam))
    }

    /// `λ_0 = (λ, …, λ)`.
    pub fn uniform(m: usize, lam: f64) -> Self {
        CompositeExponent(vec![lam; m])
    }

    pub fn zeros(m: usize) -> Self {
        CompositeExponent::uniform(m, 0.0)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// `λ + s·(1, …, 1)`.
    pub fn shift(&self, s: f64) -> Self {
        CompositeExponent(self.0.iter().map(|x| x + s).collect())
    }

    pub fn add(&self, other: &CompositeExponent) -> Self {
        assert_eq!(self.dim(), other.dim());
        CompositeExponent(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn neg(&self) -> Self {
        CompositeExponent(self.0.iter().map(|x| -x).collect())
    }

    pub fn is_uniform(&self) -> bool {
        self.0.iter().all(|&x| x == self.0[0])
    }

    /// Whether the gamma integral over the cone converges: `λ_j > j − 1`.
    pub fn gamma_integral_converges(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &l)| l > i as f64)
    }
}

/// `λ* = (λ_m, …, λ_1)`.
pub fn reverse_exponent(lam: &CompositeExponent) -> CompositeExponent {
    let mut v = lam.0.clone();
    v.reverse();
    CompositeExponent(v)
}

/// `r* = ω r ω` with `ω` the anti-diagonal permutation.
pub fn reverse_matrix(r: &SpdMatrix) -> SpdMatrix {
    let m = r.dim();
    let a = r.as_matrix();
    let rev = Matrix::from_fn(m, m, |i, j| a[(m - 1 - i, m - 1 - j)]);
    SpdMatrix::new(rev).expect("a permutation congruence preserves positive definiteness")
}

/// `(ln|Γ_Ω(λ)|, sign)`.
pub fn signed_log_composite_gamma(lam: &CompositeExponent) -> Result<(f64, f64)> {
    let m = lam.dim();
    let mut acc = (m as f64) * (m as f64 - 1.0) / 4.0 * PI.ln();
    let mut sign = 1.0;
    for (i, &l) in lam.as_slice().iter().enumerate() {
        let (lg, s) = signed_lgamma((l - i as f64) / 2.0, i)?;
        acc += lg;
        sign *= s;
    }
    Ok((acc, sign))
}

/// `Γ_Ω(λ) = π^{m(m−1)/4} ∏_{j=1}^m Γ((λ_j − j + 1)/2)`.
pub fn composite_gamma(lam: &CompositeExponent) -> Result<f64> {
    let m = lam.dim();
    let mut prod = PI.powf(m as f64 * (m as f64 - 1.0) / 4.0);
    for (i, &l) in lam.as_slice().iter().enumerate() {
        let arg = (l - i as f64) / 2.0;
        pole_check(arg, i)?;
        prod *= libm::tgamma(arg);
    }
    if prod.is_finite() {
        Ok(prod)
    } else {
        let (lg, sign) = signed_log_composite_gamma(lam)?;
        Ok(sign * lg.exp())
    }
}

/// `ln r^λ = Σ_j λ_j ln t_jj` where `r = t't` with `t` upper triangular.
pub fn ln_composite_power(r: &SpdMatrix, lam: &CompositeExponent) -> Result<f64> {
    if r.dim() != lam.dim() {
        return Err(Error::Dimension(format!(
            "exponent of length {} for a {}x{} matrix",
            lam.dim(),
            r.dim(),
            r.dim()
        )));
    }
    let t = r.cholesky();
    Ok(lam
        .as_slice()
        .iter()
        .enumerate()
        .map(|(j, &l)| l * t[(j, j)].ln())
        .sum())
}

/// Composite power `r^λ = ∏_j Δ_j(r)^{(λ_j − λ_{j+1})/2}` (with `λ_{m+1} = 0`).
pub fn composite_power(r: &SpdMatrix, lam: &CompositeExponent) -> Result<f64> {
    ln_composite_power(r, lam).map(f64::exp)
}

/// `∫ (v'uu'v)^λ d*v` over the normalized Stiefel measure:
/// `Γ_m(n/2) Γ_Ω(λ+k) / (Γ_m(k/2) Γ_Ω(λ+n))`.
pub fn stiefel_average(n: usize, m: usize, k: usize, lam: &CompositeExponent) -> Result<f64> {
    average_with_leading(n, m, k, lam, n as f64 / 2.0)
}

/// The same ratio with `Γ_m(m/2)` in place of `Γ_m(n/2)` in the numerator.
pub fn stiefel_average_printed(n: usize, m: usize, k: usize, lam: &CompositeExponent) -> Result<f64> {
    average_with_leading(n, m, k, lam, m as f64 / 2.0)
}

fn average_with_leading(n: usize, m: usize, k: usize, lam: &CompositeExponent, lead: f64) -> Result<f64> {
    if lam.dim() != m || !(1 <= m && m <= k && k <= n) {
        return Err(Error::Admissibility(format!(
            "need 1 <= m <= k <= n and |λ| = m, got (n,m,k)=({n},{m},{k}), |λ|={}",
            lam.dim()
        )));
    }
    for (i, &l) in lam.as_slice().iter().enumerate() {
        let j = i as f64 + 1.0;
        if l <= j - k as f64 - 1.0 {
            return Err(Error::Admissibility(format!(
                "λ_{} = {l} must exceed j - k - 1 = {}",
                i + 1,
                j - k as f64 - 1.0
            )));
        }
    }
    let (a, sa) = signed_log_siegel_gamma(m, lead)?;
    let (b, sb) = signed_log_composite_gamma(&lam.shift(k as f64))?;
    let (c, sc) = signed_log_siegel_gamma(m, k as f64 / 2.0)?;
    let (d, sd) = signed_log_composite_gamma(&lam.shift(n as f64))?;
    finish(a + b - c - d, sa * sb * sc * sd)
}

fn finish(log: f64, sign: f64) -> Result<f64> {
    if log.abs() > LOG_GUARD {
        return Err(Error::Overflow(log));
    }
    Ok(sign * log.exp())
}

/// Every closed-form constant in the registry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ConstantKind {
    #[serde(rename = "sigma_nm")]
    SigmaNm,
    #[serde(rename = "c1_mass_cos")]
    C1MassCos,
    #[serde(rename = "c2_mass_sin")]
    C2MassSin,
    #[serde(rename = "c_alpha_gty")]
    CAlphaGty,
    #[serde(rename = "ctilde_alpha_gty7")]
    CtildeAlphaGty7,
    #[serde(rename = "c_nkm_782")]
    CNkm782,
    #[serde(rename = "c_nm_782m")]
    CNm782m,
    #[serde(rename = "d_alpha_85b")]
    DAlpha85b,
    #[serde(rename = "dtilde_alpha_85b")]
    DtildeAlpha85b,
    #[serde(rename = "ctilde_arn")]
    CtildeArn,
    #[serde(rename = "kappa_k_ores")]
    KappaKOres,
    #[serde(rename = "delta_nmk")]
    DeltaNmk,
    #[serde(rename = "d_nmk")]
    DNmk,
    #[serde(rename = "delta_nm")]
    DeltaNm,
    #[serde(rename = "d_nm")]
    DNm,
    #[serde(rename = "c_alpha_kja")]
    CAlphaKja,
    #[serde(rename = "mu_k_for1y")]
    MuKFor1y,
}

/// Which parameters a kind reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ParamSchema {
    pub k: bool,
    pub alpha: bool,
}

/// Machine-readable description of one registry entry.
#[derive(Clone, Debug, Serialize)]
pub struct ConstantInfo {
    pub kind: ConstantKind,
    pub name: &'static str,
    pub anchor: &'static str,
    pub formula: &'static str,
    pub admissibility: &'static str,
    pub params: ParamSchema,
}

impl ConstantKind {
    pub const ALL: [ConstantKind; 17] = [
        ConstantKind::SigmaNm,
        ConstantKind::C1MassCos,
        ConstantKind::C2MassSin,
        ConstantKind::CAlphaGty,
        ConstantKind::CtildeAlphaGty7,
        ConstantKind::CNkm782,
        ConstantKind::CNm782m,
        ConstantKind::DAlpha85b,
        ConstantKind::DtildeAlpha85b,
        ConstantKind::CtildeArn,
        ConstantKind::KappaKOres,
        ConstantKind::DeltaNmk,
        ConstantKind::DNmk,
        ConstantKind::DeltaNm,
        ConstantKind::DNm,
        ConstantKind::CAlphaKja,
        ConstantKind::MuKFor1y,
    ];

    pub fn name(self) -> &'static str {
        self.info().name
    }

    pub fn parse(s: &str) -> Option<ConstantKind> {
        ConstantKind::ALL.into_iter().find(|k| k.name() == s)
    }

    pub fn info(self) -> ConstantInfo {
        use ConstantKind::*;
        let (name, anchor, formula, admissibility, k, alpha) = match self {
            SigmaNm => (
                "sigma_nm",
                "total mass of the Stiefel manifold",
                "2^m π^{nm/2} / Γ_m(n/2)",
                "1 <= m <= n",
                false,
                false,
            ),
            C1MassCos => (
                "c1_mass_cos",
                "mass of the cosine transform",
                "Γ_m(n/2) Γ_m(α/2) / (Γ_m(k/2) Γ_m((α+n−k)/2))",
                "1 <= m <= k <= n−1; converges for α > m−1",
                true,
                true,
            ),
            C2MassSin => (
                "c2_mass_sin",
                "mass of the sine transform",
                "Γ_m(n/2) Γ_m(α/2) / (Γ_m((n−k)/2) Γ_m((α+k)/2))",
                "1 <= k, m <= n−k; converges for α > m−1",
                true,
                true,
            ),
            CAlphaGty => (
                "c_alpha_gty",
                "dual cosine of the Funk transform",
                "Γ_m((n−m)/2) Γ_m(α/2) / (Γ_m(k/2) Γ_m((α+n−m−k)/2))",
                "1 <= m <= k <= n−m; converges for α > m−1",
                true,
                true,
            ),
            CtildeAlphaGty7 => (
                "ctilde_alpha_gty7",
                "dual cosine of the Funk transform through M",
                "Γ_m(m/2) Γ_m(α/2) / (Γ_m(k/2) Γ_m((α+m−k)/2))",
                "1 <= m <= k <= n−m, 2m <= n; converges for α > k−1",
                true,
                true,
            ),
            CNkm782 => (
                "c_nkm_782",
                "Funk transform of the M transform",
                "Γ_m((n−k)/2) Γ_m(α/2) / (Γ_m(m/2) Γ_m((α+n−k−m)/2))",
                "1 <= k, k+m <= n; converges for α > m−1",
                true,
                true,
            ),
            CNm782m => (
                "c_nm_782m",
                "square Funk transform of the M transform",
                "Γ_m((n−m)/2) Γ_m(α/2) / (Γ_m(m/2) Γ_m((α+n−2m)/2))",
                "2m <= n; converges for α > m−1",
                false,
                true,
            ),
            DAlpha85b => (
                "d_alpha_85b",
                "Q transform factored through M and the Funk transform",
                "Γ_m(m/2) Γ_m(α/2) / (Γ_m((n−m)/2) Γ_m((α+2m−n)/2))",
                "2m <= n; converges for α > n−m−1",
                false,
                true,
            ),
            DtildeAlpha85b => (
                "dtilde_alpha_85b",
                "cosine transform factored through the complement frame",
                "Γ_m(m/2) Γ_m(α/2) / (Γ_m(k/2) Γ_m((α+m−k)/2))",
                "1 <= m <= k <= n−1; converges for α > k−1",
                true,
                true,
            ),
            CtildeArn => (
                "ctilde_arn",
                "Funk transform followed by its dual (printed form)",
                "2^m π^{(n−m)m/2} Γ_m((n−k)/2) / (Γ_m(n/2) Γ_m((n−k−m)/2))",
                "1 <= m <= k, 2m <= n−k",
                true,
                false,
            ),
            KappaKOres => (
                "kappa_k_ores",
                "normalized dual cosine of the Funk transform",
                "Γ_m((n−m)/2) / Γ_m(k/2)",
                "1 <= m <= k <= n−m",
                true,
                false,
            ),
            DeltaNmk => (
                "delta_nmk",
                "normalizer of the cosine transform",
                "Γ_m(m/2) Γ_m((k−α)/2) / (Γ_m(n/2) Γ_m(α/2))",
                "1 <= m <= k <= n−1; α+m−k ∉ {1,2,…}",
                true,
                true,
            ),
            DNmk => (
                "d_nmk",
                "normalizer of the sine transform",
                "Γ_m(k/2) Γ_m((n−k−α)/2) / (Γ_m(n/2) Γ_m(α/2))",
                "1 <= m <= k <= n−1; α+k+m−n ∉ {1,2,…}",
                true,
                true,
            ),
            DeltaNm => (
                "delta_nm",
                "normalizer of the M transform",
                "Γ_m(m/2) Γ_m((m−α)/2) / (Γ_m(n/2) Γ_m(α/2))",
                "1 <= m <= n; α ∉ {1,2,…}",
                false,
                true,
            ),
            DNm => (
                "d_nm",
                "normalizer of the Q transform",
                "Γ_m(m/2) Γ_m((n−m−α)/2) / (Γ_m(n/2) Γ_m(α/2))",
                "2m <= n; α+2m−n ∉ {1,2,…}",
                false,
                true,
            ),
            CAlphaKja => (
                "c_alpha_kja",
                "dual Funk transform of a minor power",
                "Γ_m((n−m)/2) Γ_m(α/2) / (Γ_m(k/2) Γ_m((α+n−m−k)/2))",
                "1 <= m <= k <= n−m; converges for α > m−1",
                true,
                true,
            ),
            MuKFor1y => (
                "mu_k_for1y",
                "Funk transform as a member of the normalized cosine family",
                "Γ_m(m/2) / Γ_m((n−k)/2)",
                "1 <= m <= k <= n−1",
                true,
                false,
            ),
        };
        ConstantInfo {
            kind: self,
            name,
            anchor,
            formula,
            admissibility,
            params: ParamSchema { k, alpha },
        }
    }
}

/// Registry listing in declaration order.
pub fn registry() -> Vec<ConstantInfo> {
    ConstantKind::ALL.iter().map(|k| k.info()).collect()
}

/// A constant together with the parameters it is evaluated at.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantSpec {
    pub kind: ConstantKind,
    pub n: usize,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
}

impl ConstantSpec {
    pub fn new(kind: ConstantKind, n: usize, m: usize, k: Option<usize>, alpha: Option<f64>) -> Self {
        ConstantSpec { kind, n, m, k, alpha }
    }
}

/// Value of a constant plus advisory notes (for instance, α outside the convergence region).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConstantValue {
    pub value: f64,
    pub advisories: Vec<String>,
}

/// Evaluate `spec`, returning only the value.
pub fn paper_constant(spec: &ConstantSpec) -> Result<f64> {
    evaluate_constant(spec).map(|c| c.value)
}

/// Evaluate `spec` through signed log-gamma ratios.
pub fn evaluate_constant(spec: &ConstantSpec) -> Result<ConstantValue> {
    use ConstantKind::*;
    let info = spec.kind.info();
    let (n, m) = (spec.n, spec.m);
    if m == 0 || m > n {
        return Err(Error::Admissibility(format!("need 1 <= m <= n, got (n,m)=({n},{m})")));
    }
    let k = match (info.params.k, spec.k) {
        (true, Some(k)) => k,
        (true, None) => return Err(Error::Config(format!("{} needs k", info.name))),
        (false, _) => 0,
    };
    let alpha = match (info.params.alpha, spec.alpha) {
        (true, Some(a)) if a.is_finite() => a,
        (true, _) => return Err(Error::Config(format!("{} needs a finite alpha", info.name))),
        (false, _) => 0.0,
    };
    let (nf, mf, kf) = (n as f64, m as f64, k as f64);
    let inadmissible = |what: &str| {
        Err(Error::Admissibility(format!(
            "{}: {what} fails at (n,m,k)=({n},{m},{k})",
            info.name
        )))
    };
    let mut advisories = Vec::new();
    let mut guard = |ok: bool, what: &str| {
        if !ok {
            advisories.push(format!("α = {alpha} violates {what}: the defining integral diverges"));
        }
    };
    let excluded = |shift: f64| -> Result<()> {
        let x = alpha + shift;
        if x >= 1.0 - POLE_TOL && (x - x.round()).abs() <= POLE_TOL {
            return Err(Error::Pole {
                factor: 0,
                argument: x,
            });
        }
        Ok(())
    };
    // numerator and denominator Siegel-gamma arguments
    let (num, den): (Vec<f64>, Vec<f64>) = match spec.kind {
        SigmaNm => {
            let (lg, s) = signed_log_siegel_gamma(m, nf / 2.0)?;
            let log = mf * 2f64.ln() + nf * mf / 2.0 * PI.ln() - lg;
            return Ok(ConstantValue {
                value: finish(log, s)?,
                advisories,
            });
        }
        C1MassCos => {
            if !(m <= k && k < n) {
                return inadmissible("m <= k <= n−1");
            }
            guard(alpha > mf - 1.0, "α > m−1");
            (vec![nf / 2.0, alpha / 2.0], vec![kf / 2.0, (alpha + nf - kf) / 2.0])
        }
        C2MassSin => {
            if !(k >= 1 && m + k <= n) {
                return inadmissible("1 <= k, m <= n−k");
            }
            guard(alpha > mf - 1.0, "α > m−1");
            (vec![nf / 2.0, alpha / 2.0], vec![(nf - kf) / 2.0, (alpha + kf) / 2.0])
        }
        CAlphaGty | CAlphaKja => {
            if !(m <= k && k + m <= n) {
                return inadmissible("m <= k <= n−m");
            }
            guard(alpha > mf - 1.0, "α > m−1");
            (
                vec![(nf - mf) / 2.0, alpha / 2.0],
                vec![kf / 2.0, (alpha + nf - mf - kf) / 2.0],
            )
        }
        CtildeAlphaGty7 => {
            if !(m <= k && k + m <= n && 2 * m <= n) {
                return inadmissible("m <= k <= n−m and 2m <= n");
            }
            guard(alpha > kf - 1.0, "α > k−1");
            (vec![mf / 2.0, alpha / 2.0], vec![kf / 2.0, (alpha + mf - kf) / 2.0])
        }
        CNkm782 => {
            if !(k >= 1 && k + m <= n) {
                return inadmissible("1 <= k <= n−m");
            }
            guard(alpha > mf - 1.0, "α > m−1");
            (
                vec![(nf - kf) / 2.0, alpha / 2.0],
                vec![mf / 2.0, (alpha + nf - kf - mf) / 2.0],
            )
        }
        CNm782m => {
            if 2 * m > n {
                return inadmissible("2m <= n");
            }
            guard(alpha > mf - 1.0, "α > m−1");
            (
                vec![(nf - mf) / 2.0, alpha / 2.0],
                vec![mf / 2.0, (alpha + nf - 2.0 * mf) / 2.0],
            )
        }
        DAlpha85b => {
            if 2 * m > n {
                return inadmissible("2m <= n");
            }
            guard(alpha > nf - mf - 1.0, "α > n−m−1");
            (
                vec![mf / 2.0, alpha / 2.0],
                vec![(nf - mf) / 2.0, (alpha + 2.0 * mf - nf) / 2.0],
            )
        }
        DtildeAlpha85b => {
            if !(m <= k && k < n) {
                return inadmissible("m <= k <= n−1");
            }
            guard(alpha > kf - 1.0, "α > k−1");
            (vec![mf / 2.0, alpha / 2.0], vec![kf / 2.0, (alpha + mf - kf) / 2.0])
        }
        CtildeArn => {
            if !(m <= k && 2 * m + k <= n) {
                return inadmissible("m <= k and 2m <= n−k");
            }
            let (a, sa) = signed_log_siegel_gamma(m, (nf - kf) / 2.0)?;
            let (b, sb) = signed_log_siegel_gamma(m, nf / 2.0)?;
            let (c, sc) = signed_log_siegel_gamma(m, (nf - kf - mf) / 2.0)?;
            let log = mf * 2f64.ln() + (nf - mf) * mf / 2.0 * PI.ln() + a - b - c;
            return Ok(ConstantValue {
                value: finish(log, sa * sb * sc)?,
                advisories,
            });
        }
        KappaKOres => {
            if !(m <= k && k + m <= n) {
                return inadmissible("m <= k <= n−m");
            }
            (vec![(nf - mf) / 2.0], vec![kf / 2.0])
        }
        DeltaNmk => {
            if !(m <= k && k < n) {
                return inadmissible("m <= k <= n−1");
            }
            excluded(mf - kf)?;
            guard(alpha > mf - 1.0, "α > m−1");
            (vec![mf / 2.0, (kf - alpha) / 2.0], vec![nf / 2.0, alpha / 2.0])
        }
        DNmk => {
            if !(m <= k && k < n) {
                return inadmissible("m <= k <= n−1");
            }
            excluded(kf + mf - nf)?;
            guard(alpha > mf - 1.0, "α > m−1");
            (vec![kf / 2.0, (nf - kf - alpha) / 2.0], vec![nf / 2.0, alpha / 2.0])
        }
        DeltaNm => {
            excluded(0.0)?;
            guard(alpha > mf - 1.0, "α > m−1");
            (vec![mf / 2.0, (mf - alpha) / 2.0], vec![nf / 2.0, alpha / 2.0])
        }
        DNm => {
            if 2 * m > n {
                return inadmissible("2m <= n");
            }
            excluded(2.0 * mf - nf)?;
            guard(alpha > mf - 1.0, "α > m−1");
            (vec![mf / 2.0, (nf - mf - alpha) / 2.0], vec![nf / 2.0, alpha / 2.0])
        }
        MuKFor1y => {
            if !(m <= k && k < n) {
                return inadmissible("m <= k <= n−1");
            }
            (vec![mf / 2.0], vec![(nf - kf) / 2.0])
        }
    };
    let mut log = 0.0;
    let mut sign = 1.0;
    for a in num {
        let (lg, s) = signed_log_siegel_gamma(m, a)?;
        log += lg;
        sign *= s;
    }
    for a in den {
        let (lg, s) = signed_log_siegel_gamma(m, a)?;
        log -= lg;
        sign *= s;
    }
    Ok(ConstantValue {
        value: finish(log, sign)?,
        advisories,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
    }

    fn c(kind: ConstantKind, n: usize, m: usize, k: Option<usize>, alpha: Option<f64>) -> f64 {
        paper_constant(&ConstantSpec::new(kind, n, m, k, alpha)).unwrap()
    }

    #[test]
    fn siegel_gamma_examples() {
        assert!(rel(siegel_gamma(1, 2.0).unwrap(), 1.0) < 1e-15);
        assert!(rel(siegel_gamma(2, 2.0).unwrap(), PI / 2.0) < 1e-14);
        assert!(matches!(siegel_gamma(2, 0.5), Err(Error::Pole { factor: 1, .. })));
        assert!(log_siegel_gamma(1, 2.0).unwrap().abs() < 1e-15);
        assert!((log_siegel_gamma(2, 2.0).unwrap() - (PI / 2.0).ln()).abs() < 1e-14);
        let direct = siegel_gamma(2, 10.0).unwrap();
        assert!(rel(log_siegel_gamma(2, 10.0).unwrap().exp(), direct) < 1e-12);
        assert!(matches!(log_siegel_gamma(2, 0.25), Err(Error::Domain(_))));
    }

    #[test]
    fn siegel_gamma_reduces_to_scalar_gamma() {
        for x in [0.3, 1.0, 2.5, 7.25] {
            assert!(rel(siegel_gamma(1, x).unwrap(), libm::tgamma(x)) < 1e-14);
        }
    }

    #[test]
    fn composite_gamma_examples() {
        let g = |v: Vec<f64>| composite_gamma(&CompositeExponent::new(v).unwrap()).unwrap();
        assert!(rel(g(vec![4.0]), 1.0) < 1e-15);
        assert!(rel(g(vec![4.0, 4.0]), PI / 2.0) < 1e-14);
        assert!(rel(g(vec![3.0, 2.0]), PI.powf(1.5) / 2.0) < 1e-14);
        let pole = composite_gamma(&CompositeExponent::new(vec![2.0, 1.0]).unwrap());
        assert!(matches!(pole, Err(Error::Pole { factor: 1, .. })));
    }

    #[test]
    fn composite_power_examples() {
        let d = SpdMatrix::new(Matrix::diag(&[4.0, 9.0])).unwrap();
        let l = |v: Vec<f64>| CompositeExponent::new(v).unwrap();
        assert!(rel(composite_power(&d, &l(vec![2.0, 2.0])).unwrap(), 36.0) < 1e-14);
        assert!(rel(composite_power(&d, &l(vec![2.0, 4.0])).unwrap(), 324.0) < 1e-14);
        assert_eq!(composite_power(&SpdMatrix::identity(3), &l(vec![1.0, -2.0, 0.5])).unwrap(), 1.0);
        assert!(composite_power(&d, &l(vec![1.0])).is_err());
    }

    #[test]
    fn reverses() {
        let l = CompositeExponent::new(vec![1.0, 2.0, 3.0]).unwrap();
        assert_eq!(reverse_exponent(&l).as_slice(), &[3.0, 2.0, 1.0]);
        let d = SpdMatrix::new(Matrix::diag(&[2.0, 5.0])).unwrap();
        assert_eq!(reverse_matrix(&d).as_matrix(), &Matrix::diag(&[5.0, 2.0]));
    }

    #[test]
    fn constant_examples() {
        use ConstantKind::*;
        assert!(rel(c(C1MassCos, 3, 1, Some(1), Some(2.0)), 0.5) < 1e-13);
        assert!(rel(c(C1MassCos, 4, 2, Some(2), Some(3.0)), 1.0 / 3.0) < 1e-13);
        assert!(rel(c(SigmaNm, 4, 1, None, None), 2.0 * PI * PI) < 1e-13);
        assert!(rel(c(C2MassSin, 4, 1, Some(2), Some(2.0)), 1.0) < 1e-13);
        assert!(rel(c(CAlphaGty, 4, 1, Some(1), Some(2.0)), 0.5) < 1e-13);
        assert!(rel(c(C1MassCos, 5, 2, Some(2), Some(3.0)), 0.25) < 1e-13);
        assert!(rel(c(C2MassSin, 5, 2, Some(2), Some(3.0)), 1.0) < 1e-13);
        // printed form at (4,1,1) equals π²
        assert!(rel(c(CtildeArn, 4, 1, Some(1), None), PI * PI) < 1e-13);
        // unit sphere areas: |S^1| = 2π, |S^2| = 4π
        assert!(rel(c(SigmaNm, 2, 1, None, None), 2.0 * PI) < 1e-14);
        assert!(rel(c(SigmaNm, 3, 1, None, None), 4.0 * PI) < 1e-14);
        // O(1) = {±1}
        assert!(rel(c(SigmaNm, 1, 1, None, None), 2.0) < 1e-14);
    }

    #[test]
    fn frozen_constant_values() {
        use ConstantKind::*;
        // independently evaluated with mpmath at 30 digits
        let cases: [(ConstantKind, usize, usize, Option<usize>, Option<f64>, f64); 8] = [
            (CtildeAlphaGty7, 5, 1, Some(2), Some(2.5), 1.3110287771460599),
            (CNkm782, 5, 1, Some(2), Some(2.0), 0.5),
            (DAlpha85b, 4, 1, None, Some(3.0), 1.0),
            (DtildeAlpha85b, 5, 1, Some(2), Some(2.5), 1.3110287771460599),
            (DeltaNmk, 4, 1, Some(1), Some(1.5), -7.089815403622064),
            (DNm, 4, 1, None, Some(3.5), -9.453087204829419),
            (KappaKOres, 4, 1, Some(1), None, 0.5),
            (MuKFor1y, 5, 2, Some(2), None, 2.0),
        ];
        for (kind, n, m, k, a, want) in cases {
            let got = c(kind, n, m, k, a);
            assert!(rel(got, want) < 1e-12, "{kind:?}: {got} vs {want}");
        }
    }

    #[test]
    fn gamma_identities_between_constants() {
        use ConstantKind::*;
        // δ_{n,m,k}(α) c_α = κ_k d_{n,m}(α + n − k − m)
        for (n, m, k, a) in [(4, 1, 1, 1.5), (6, 2, 2, 2.5), (7, 2, 3, 2.2)] {
            let lhs = c(DeltaNmk, n, m, Some(k), Some(a)) * c(CAlphaGty, n, m, Some(k), Some(a));
            let b = a + (n - k - m) as f64;
            let rhs = c(KappaKOres, n, m, Some(k), None) * c(DNm, n, m, None, Some(b));
            assert!(rel(lhs, rhs) < 1e-12, "{n} {m} {k} {a}");
        }
        // d_α = 1 / c_{n,m}(α + 2m − n)
        for (n, m, a) in [(4, 1, 3.0), (6, 2, 4.5)] {
            let b = a + 2.0 * m as f64 - n as f64;
            let prod = c(DAlpha85b, n, m, None, Some(a)) * c(CNm782m, n, m, None, Some(b));
            assert!(rel(prod, 1.0) < 1e-12);
        }
        // the printed ARN constant is σ_{n−m,m} times the normalized one
        let (n, m, k) = (6usize, 1usize, 2usize);
        let normalized = c(KappaKOres, n, m, Some(k), None)
            * siegel_gamma(m, (n - k) as f64 / 2.0).unwrap()
            * siegel_gamma(m, k as f64 / 2.0).unwrap()
            / (siegel_gamma(m, n as f64 / 2.0).unwrap()
                * siegel_gamma(m, (n - k - m) as f64 / 2.0).unwrap());
        let printed = c(CtildeArn, n, m, Some(k), None);
        assert!(rel(printed / normalized, c(SigmaNm, n - m, m, None, None)) < 1e-12);
    }

    #[test]
    fn excluded_sets_raise_poles() {
        use ConstantKind::*;
        let e = paper_constant(&ConstantSpec::new(DeltaNm, 3, 1, None, Some(2.0)));
        assert!(matches!(e, Err(Error::Pole { .. })));
        let e = paper_constant(&ConstantSpec::new(DeltaNmk, 4, 1, Some(1), Some(2.0)));
        assert!(matches!(e, Err(Error::Pole { .. })));
        assert!(paper_constant(&ConstantSpec::new(DNm, 4, 1, None, Some(1.0))).is_ok());
    }

    #[test]
    fn inadmissible_and_advisory() {
        use ConstantKind::*;
        let e = paper_constant(&ConstantSpec::new(C1MassCos, 3, 2, Some(1), Some(2.0)));
        assert!(matches!(e, Err(Error::Admissibility(_))));
        let v = evaluate_constant(&ConstantSpec::new(C1MassCos, 4, 2, Some(2), Some(0.8))).unwrap();
        assert_eq!(v.advisories.len(), 1);
        let e = paper_constant(&ConstantSpec::new(C1MassCos, 4, 2, Some(2), None));
        assert!(matches!(e, Err(Error::Config(_))));
    }

    #[test]
    fn averages() {
        let lam = CompositeExponent::new(vec![1.5, 0.5]).unwrap();
        let corrected = stiefel_average(4, 2, 3, &lam).unwrap();
        let printed = stiefel_average_printed(4, 2, 3, &lam).unwrap();
        assert!(rel(corrected, 0.6947427349925323) < 1e-12);
        // the two forms differ by Γ_2(2)/Γ_2(1) = π/2 / (π^{1/2}·π^{1/2}) = 1/2
        assert!(rel(corrected / printed, 0.5) < 1e-12);
        // diagonal exponent reproduces the cosine mass constant
        let (n, m, k, a) = (5, 2, 3, 3.5);
        let diag = CompositeExponent::uniform(m, a - k as f64);
        let want = c(ConstantKind::C1MassCos, n, m, Some(k), Some(a));
        assert!(rel(stiefel_average(n, m, k, &diag).unwrap(), want) < 1e-12);
        assert!(stiefel_average(4, 2, 3, &CompositeExponent::new(vec![1.0, -2.5]).unwrap()).is_err());
    }

    #[test]
    fn registry_is_complete() {
        let reg = registry();
        assert_eq!(reg.len(), 17);
        for info in &reg {
            assert_eq!(ConstantKind::parse(info.name), Some(info.kind));
            let json = serde_json::to_string(&info.kind).unwrap();
            assert_eq!(json, format!("\"{}\"", info.name));
        }
    }
}

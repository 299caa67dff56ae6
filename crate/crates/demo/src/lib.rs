//! WebAssembly bindings for the browser demo in `www/`.
//!
//! Three operations are exposed: a closed-form constant traced over a range
//! of exponents, a Monte Carlo estimate of the cosine transform, and the
//! cosine-transform profile of a zonal field along a great circle.

use std::f64::consts::PI;

use wasm_bindgen::prelude::*;

use stiefel_xform::fields::ScalarField;
use stiefel_xform::linalg::{Frame, Matrix};
use stiefel_xform::special::{paper_constant, ConstantKind, ConstantSpec};
use stiefel_xform::transforms::Transform;
use stiefel_xform::MCConfig;

fn js(e: stiefel_xform::Error) -> JsError {
    JsError::new(&e.to_string())
}

/// Names of the constants [`constant_curve`] accepts.
#[wasm_bindgen]
pub fn constant_names() -> Vec<String> {
    ConstantKind::ALL.iter().map(|k| k.name().to_string()).collect()
}

/// `steps` values of a constant for `α` evenly spaced in `[alpha_min, alpha_max]`.
/// Poles and inadmissible exponents come back as NaN.
#[wasm_bindgen]
pub fn constant_curve(
    name: &str,
    n: usize,
    m: usize,
    k: usize,
    alpha_min: f64,
    alpha_max: f64,
    steps: usize,
) -> Result<Vec<f64>, JsError> {
    let kind = ConstantKind::parse(name).ok_or_else(|| JsError::new(&format!("unknown constant `{name}`")))?;
    if steps < 2 || !(alpha_max > alpha_min) {
        return Err(JsError::new("need steps >= 2 and alpha_max > alpha_min"));
    }
    Ok((0..steps)
        .map(|i| {
            let a = alpha_min + (alpha_max - alpha_min) * i as f64 / (steps - 1) as f64;
            paper_constant(&ConstantSpec::new(kind, n, m, Some(k), Some(a))).unwrap_or(f64::NAN)
        })
        .collect())
}

/// Cosine transform of a named field at the canonical `k`-frame:
/// `[mean, standard error, normalized mean]`.
#[wasm_bindgen]
pub fn cosine_estimate(
    n: usize,
    m: usize,
    k: usize,
    alpha: f64,
    field: &str,
    samples: u32,
    seed: u32,
) -> Result<Vec<f64>, JsError> {
    let t = Transform::cosine(n, m, k, alpha).map_err(js)?;
    let f = ScalarField::parse(field, n, m).map_err(js)?;
    let cfg = MCConfig::new(samples.into(), seed.into());
    let est = t.apply(&f, &Frame::canonical(n, k), &cfg).map_err(js)?;
    let norm = t.normalizer().unwrap_or(f64::NAN);
    Ok(vec![est.mean, est.se, est.mean / norm])
}

/// Cosine transform on the sphere `S^{n−1}` of `f(v) = |v·e₁|^p`, evaluated
/// at `u(θ) = cos θ e₁ + sin θ e₂` for `points` angles in `[0, π/2]`.
/// Returns the angles followed by the means and then the standard errors.
#[wasm_bindgen]
pub fn sphere_profile(n: usize, alpha: f64, p: f64, points: usize, samples: u32, seed: u32) -> Result<Vec<f64>, JsError> {
    if n < 2 || points < 2 {
        return Err(JsError::new("need n >= 2 and at least two points"));
    }
    let t = Transform::cosine(n, 1, 1, alpha).map_err(js)?;
    let f = ScalarField::new(format!("|v1|^{p}"), n, 1, true, move |v| v.as_matrix()[(0, 0)].abs().powf(p))
        .map_err(js)?;
    let mut thetas = Vec::with_capacity(points);
    let mut means = Vec::with_capacity(points);
    let mut ses = Vec::with_capacity(points);
    for i in 0..points {
        let th = PI / 2.0 * i as f64 / (points - 1) as f64;
        let u = Frame::new(Matrix::from_fn(n, 1, |r, _| match r {
            0 => th.cos(),
            1 => th.sin(),
            _ => 0.0,
        }))
        .map_err(js)?;
        let est = t.apply(&f, &u, &MCConfig::new(samples.into(), seed as u64 + i as u64)).map_err(js)?;
        thetas.push(th);
        means.push(est.mean);
        ses.push(est.se);
    }
    thetas.extend(means);
    thetas.extend(ses);
    Ok(thetas)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn curve_marks_poles_with_nan() {
        let c = constant_curve("c_alpha_gty", 4, 1, 1, 0.0, 2.0, 3).ok().unwrap();
        assert!(c[0].is_nan());
        assert!((c[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sphere_constant() {
        let r = cosine_estimate(3, 1, 1, 2.0, "one", 20_000, 1).ok().unwrap();
        assert!((r[0] - 0.5).abs() < 5.0 * r[1]);
    }

    #[test]
    fn constant_field_profile_is_flat() {
        let r = sphere_profile(3, 2.0, 0.0, 3, 20_000, 2).ok().unwrap();
        for i in 0..3 {
            assert!((r[3 + i] - 0.5).abs() < 5.0 * r[6 + i]);
        }
    }
}

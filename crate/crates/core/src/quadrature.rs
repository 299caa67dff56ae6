//! One-dimensional quadrature oracles (double-exponential rule).

/// `∫_a^b f` for smooth `f`; remove endpoint singularities by substitution first.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    quadrature::double_exponential::integrate(f, a, b, tol).integral
}

/// `∫_a^∞ f` through the substitution `x = a + t/(1−t)`.
pub fn integrate_half_line(f: impl Fn(f64) -> f64, a: f64, tol: f64) -> f64 {
    integrate(
        |t| {
            let s = 1.0 - t;
            f(a + t / s) / (s * s)
        },
        0.0,
        1.0,
        tol,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn smooth_interval() {
        let v = integrate(f64::sin, 0.0, PI, 1e-12);
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn half_line_gamma() {
        // ∫_0^∞ x^{1.5} e^{−x} dx = Γ(2.5)
        let v = integrate_half_line(|x| x.powf(1.5) * (-x).exp(), 0.0, 1e-12);
        assert!((v - libm::tgamma(2.5)).abs() < 1e-9);
    }
}

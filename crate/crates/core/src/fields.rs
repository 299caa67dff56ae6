//! Test functions on Stiefel manifolds and their by-name registry.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::linalg::{gram, Frame, Matrix};
use crate::manifold::{sample_orthogonal, sample_stiefel};
use crate::{Error, Result};

type Eval = Arc<dyn Fn(&Frame) -> f64 + Send + Sync>;

/// Seed of the right-invariance spot check.
const SPOT_CHECK_SEED: u64 = 0x51EF_E1D5;
const SPOT_CHECK_PAIRS: usize = 100;

/// A real function on `V_{n,m}`.
#[derive(Clone)]
pub struct ScalarField {
    name: String,
    n: usize,
    m: usize,
    right_invariant: bool,
    eval: Eval,
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ScalarField")
            .field("name", &self.name)
            .field("n", &self.n)
            .field("m", &self.m)
            .field("right_invariant", &self.right_invariant)
            .finish()
    }
}

impl ScalarField {
    /// Wrap `eval`. If `right_invariant` is set the claim is spot-checked on
    /// 100 random `(v, γ)` pairs.
    pub fn new(
        name: impl Into<String>,
        n: usize,
        m: usize,
        right_invariant: bool,
        eval: impl Fn(&Frame) -> f64 + Send + Sync + 'static,
    ) -> Result<Self> {
        if m == 0 || m > n {
            return Err(Error::Dimension(format!("field shape ({n},{m}) needs 1 <= m <= n")));
        }
        let field = ScalarField {
            name: name.into(),
            n,
            m,
            right_invariant,
            eval: Arc::new(eval),
        };
        if right_invariant {
            field.check_right_invariance()?;
        }
        Ok(field)
    }

    fn check_right_invariance(&self) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
        for _ in 0..SPOT_CHECK_PAIRS {
            let v = sample_stiefel(self.n, self.m, &mut rng);
            let gamma = sample_orthogonal(self.m, &mut rng);
            let a = self.eval(&v);
            let b = self.eval(&v.right_act(&gamma));
            if (a - b).abs() > 1e-9 * a.abs().max(1.0) {
                return Err(Error::Domain(format!(
                    "field `{}` is not right O(m)-invariant: {a} vs {b}",
                    self.name
                )));
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n, self.m)
    }

    pub fn is_right_invariant(&self) -> bool {
        self.right_invariant
    }

    #[inline]
    pub fn eval(&self, v: &Frame) -> f64 {
        debug_assert_eq!((v.n(), v.m()), (self.n, self.m));
        (self.eval)(v)
    }

    /// `f ≡ c`.
    pub fn constant(n: usize, m: usize, c: f64) -> Self {
        ScalarField::new(format!("const:c={c}"), n, m, false, move |_| c)
            .expect("valid shape")
            .mark_invariant()
    }

    fn mark_invariant(mut self) -> Self {
        self.right_invariant = true;
        self
    }

    /// `f(v) = v_{ij}^p` (zero-based indices).
    pub fn monomial(n: usize, m: usize, i: usize, j: usize, p: i32) -> Result<Self> {
        if i >= n || j >= m {
            return Err(Error::Dimension(format!("entry ({i},{j}) outside {n}x{m}")));
        }
        ScalarField::new(format!("monomial:i={i},j={j},p={p}"), n, m, false, move |v| {
            v.as_matrix()[(i, j)].powi(p)
        })
    }

    /// `f(v) = det(w'vv'w)^p` for a fixed frame `w`; right `O(m)`-invariant.
    pub fn minor_power(w: Frame, m: usize, p: f64, label: &str) -> Result<Self> {
        let n = w.n();
        let name = format!("minor-power:p={p},w={label}");
        ScalarField::new(name, n, m, true, move |v| {
            let c = v.as_matrix().t_matmul(w.as_matrix());
            gram(&c).det().max(0.0).powf(p)
        })
    }

    /// `f(v) = tr(v'Av)` for a symmetric `A`; right `O(m)`-invariant.
    pub fn trace_quadratic(a: Matrix, m: usize, label: &str) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::Dimension("trace-quadratic needs a square matrix".into()));
        }
        let a = a.symmetrize();
        let n = a.rows();
        ScalarField::new(format!("trace-quadratic:{label}"), n, m, true, move |v| {
            let av = a.matmul(v.as_matrix());
            v.as_matrix().t_matmul(&av).trace()
        })
    }

    /// Random degree-2 polynomial `c + ⟨B, v⟩ + ⟨v, A v C⟩`, not right-invariant.
    pub fn polynomial(n: usize, m: usize, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut unif = || rng.random_range(-1.0..1.0);
        let c0 = 1.5 + 0.5 * unif();
        let b = Matrix::from_fn(n, m, |_, _| unif());
        let a = Matrix::from_fn(n, n, |_, _| unif()).symmetrize();
        let c = Matrix::from_fn(m, m, |_, _| unif()).symmetrize();
        ScalarField::new(format!("poly:seed={seed}"), n, m, false, move |v| {
            let vm = v.as_matrix();
            let lin: f64 = vm.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x * y).sum();
            let avc = a.matmul(vm).matmul(&c);
            let quad: f64 = vm.as_slice().iter().zip(avc.as_slice()).map(|(x, y)| x * y).sum();
            c0 + lin + quad
        })
    }

    /// `v ↦ f(g v)` for an orthogonal `g`.
    pub fn compose_rotation(&self, g: &Matrix) -> ScalarField {
        assert_eq!(g.shape(), (self.n, self.n));
        let inner = self.eval.clone();
        let g = g.clone();
        ScalarField {
            name: format!("{}∘g", self.name),
            n: self.n,
            m: self.m,
            right_invariant: self.right_invariant,
            eval: Arc::new(move |v| inner(&v.rotate(&g))),
        }
    }

    /// `v ↦ mean_γ f(vγ)` over `count` fixed Haar draws of `γ ∈ O(m)`.
    pub fn right_average(&self, count: usize, seed: u64) -> ScalarField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let gammas: Vec<Matrix> = (0..count).map(|_| sample_orthogonal(self.m, &mut rng)).collect();
        let inner = self.eval.clone();
        ScalarField {
            name: format!("{}~avg{count}", self.name),
            n: self.n,
            m: self.m,
            right_invariant: false,
            eval: Arc::new(move |v| {
                gammas.iter().map(|g| inner(&v.right_act(g))).sum::<f64>() / gammas.len() as f64
            }),
        }
    }

    /// Build a field from a registry spec such as `minor-power:p=0.5,w=canonical`.
    pub fn parse(spec: &str, n: usize, m: usize) -> Result<Self> {
        let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
        let mut kv = Vec::new();
        for part in args.split(',').filter(|s| !s.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::UnknownField(format!("{spec}: expected key=value, got `{part}`")))?;
            kv.push((k.trim(), v.trim()));
        }
        let get = |key: &str| kv.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let num = |key: &str, default: f64| -> Result<f64> {
            match get(key) {
                None => Ok(default),
                Some(s) => s
                    .parse()
                    .map_err(|_| Error::UnknownField(format!("{spec}: `{key}` must be a number"))),
            }
        };
        let int = |key: &str, default: u64| -> Result<u64> {
            match get(key) {
                None => Ok(default),
                Some(s) => s
                    .parse()
                    .map_err(|_| Error::UnknownField(format!("{spec}: `{key}` must be an integer"))),
            }
        };
        if m == 0 || m > n {
            return Err(Error::Dimension(format!("field shape ({n},{m}) needs 1 <= m <= n")));
        }
        match name {
            "one" => Ok(ScalarField::constant(n, m, 1.0)),
            "const" => Ok(ScalarField::constant(n, m, num("c", 1.0)?)),
            "monomial" => ScalarField::monomial(
                n,
                m,
                int("i", 0)? as usize,
                int("j", 0)? as usize,
                int("p", 2)? as i32,
            ),
            "minor-power" => {
                let p = num("p", 1.0)?;
                let label = get("w").unwrap_or("canonical");
                let w = match label {
                    "canonical" => Frame::canonical(n, m),
                    "top" => Frame::canonical_top(n, m),
                    other => {
                        let seed = other
                            .strip_prefix("random")
                            .map(|s| s.trim_start_matches(['-', ':']))
                            .and_then(|s| if s.is_empty() { Some(0) } else { s.parse().ok() })
                            .ok_or_else(|| {
                                Error::UnknownField(format!(
                                    "{spec}: w must be canonical, top or random-SEED"
                                ))
                            })?;
                        sample_stiefel(n, m, &mut ChaCha8Rng::seed_from_u64(seed))
                    }
                };
                ScalarField::minor_power(w, m, p, label)
            }
            "trace-quadratic" => {
                let seed = int("seed", 0)?;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let a = Matrix::from_fn(n, n, |_, _| rng.random_range(-1.0..1.0));
                ScalarField::trace_quadratic(a, m, &format!("seed={seed}"))
            }
            "poly" => ScalarField::polynomial(n, m, int("seed", 0)?),
            _ => Err(Error::UnknownField(spec.to_string())),
        }
    }
}

/// Registry entry describing a named field family.
#[derive(Clone, Debug, Serialize)]
pub struct FieldInfo {
    pub name: &'static str,
    pub params: &'static str,
    pub right_invariant: bool,
    pub example: &'static str,
}

/// All field families accepted by [`ScalarField::parse`].
pub fn field_registry() -> Vec<FieldInfo> {
    vec![
        FieldInfo {
            name: "one",
            params: "",
            right_invariant: true,
            example: "one",
        },
        FieldInfo {
            name: "const",
            params: "c=<real>",
            right_invariant: true,
            example: "const:c=2",
        },
        FieldInfo {
            name: "monomial",
            params: "i=<row>,j=<col>,p=<int>",
            right_invariant: false,
            example: "monomial:i=0,j=0,p=2",
        },
        FieldInfo {
            name: "minor-power",
            params: "p=<real>,w=canonical|top|random-<seed>",
            right_invariant: true,
            example: "minor-power:p=0.5,w=canonical",
        },
        FieldInfo {
            name: "trace-quadratic",
            params: "seed=<int>",
            right_invariant: true,
            example: "trace-quadratic:seed=3",
        },
        FieldInfo {
            name: "poly",
            params: "seed=<int>",
            right_invariant: false,
            example: "poly:seed=5",
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mc::RandomSource;

    #[test]
    fn registry_examples_parse() {
        for info in field_registry() {
            let f = ScalarField::parse(info.example, 5, 2).unwrap();
            assert_eq!(f.is_right_invariant(), info.right_invariant, "{}", info.name);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(ScalarField::parse("nope", 3, 1), Err(Error::UnknownField(_))));
        assert!(ScalarField::parse("minor-power:p=x", 3, 1).is_err());
        assert!(ScalarField::parse("minor-power:w=sideways", 3, 1).is_err());
        assert!(ScalarField::parse("monomial:i=7", 3, 1).is_err());
    }

    #[test]
    fn false_invariance_claim_is_rejected() {
        let bad = ScalarField::new("entry", 3, 2, true, |v| v.as_matrix()[(0, 0)]);
        assert!(matches!(bad, Err(Error::Domain(_))));
    }

    #[test]
    fn minor_power_at_the_base_frame() {
        let f = ScalarField::parse("minor-power:p=0.5,w=canonical", 4, 2).unwrap();
        assert!((f.eval(&Frame::canonical(4, 2)) - 1.0).abs() < 1e-14);
        assert!(f.eval(&Frame::canonical_top(4, 2)).abs() < 1e-14);
    }

    #[test]
    fn rotation_and_average() {
        let mut rng = RandomSource::new(8, 0).rng();
        let f = ScalarField::polynomial(4, 2, 1).unwrap();
        let g = sample_orthogonal(4, &mut rng);
        let fg = f.compose_rotation(&g);
        let v = sample_stiefel(4, 2, &mut rng);
        assert!((fg.eval(&v) - f.eval(&v.rotate(&g))).abs() < 1e-14);
        let avg = f.right_average(32, 3);
        assert!(avg.eval(&v).is_finite());
    }
}

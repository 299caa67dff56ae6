//! Catalog of machine-checkable identities between the transforms.
//!
//! Each fixture estimates both sides of one identity, compares them against
//! the closed-form constant and, in audit mode, fits the constant empirically
//! across several test fields.

pub mod cone;
mod fixtures;

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use rand::SeedableRng;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::mc::{self, MCConfig, MCEstimate};
use crate::{Error, Result};

use fixtures::{Body, Fixture, Outcome};

/// Z threshold used for proportionality and constant-mismatch decisions.
pub const AUDIT_Z: f64 = 5.0;
const BOOTSTRAP_DRAWS: usize = 2000;

/// Fixture parameters. Missing entries are filled from the fixture defaults.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lam: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
}

impl Params {
    pub fn new() -> Self {
        Params::default()
    }

    pub fn with_n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn with_m(mut self, m: usize) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn with_lam(mut self, lam: Vec<f64>) -> Self {
        self.lam = Some(lam);
        self
    }

    pub fn with_beta(mut self, beta: f64) -> Self {
        self.beta = Some(beta);
        self
    }

    pub fn with_field(mut self, field: impl Into<String>) -> Self {
        self.field = Some(field.into());
        self
    }

    /// Keep the parameters named in `schema`, filling gaps from `defaults`.
    fn resolve(&self, defaults: &Params, schema: &[&str]) -> Params {
        let has = |key: &str| schema.contains(&key);
        Params {
            n: if has("n") { self.n.or(defaults.n) } else { None },
            m: if has("m") { self.m.or(defaults.m) } else { None },
            k: if has("k") { self.k.or(defaults.k) } else { None },
            alpha: if has("alpha") { self.alpha.or(defaults.alpha) } else { None },
            lam: if has("lam") { self.lam.clone().or_else(|| defaults.lam.clone()) } else { None },
            beta: if has("beta") { self.beta.or(defaults.beta) } else { None },
            field: if has("field") {
                self.field.clone().or_else(|| defaults.field.clone())
            } else {
                None
            },
        }
    }
}

/// Outcome of a comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    ConstantMismatch,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::ConstantMismatch => "constant-mismatch",
        }
    }
}

/// Per-field data of a constant fit.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldFit {
    pub field: String,
    pub lhs: MCEstimate,
    pub rhs: MCEstimate,
    pub ratio: f64,
    pub ratio_se: f64,
}

/// Least-squares constant `c` in `lhs ≈ c·rhs` across several fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstantFit {
    pub value: f64,
    pub se: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ratio_to_paper: Option<f64>,
    /// Largest pairwise `|ratio_i − ratio_j| / se` across fields.
    pub max_pairwise_z: f64,
    pub proportional: bool,
    pub fields: Vec<FieldFit>,
}

/// Result of [`verify`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub id: String,
    pub params: Params,
    pub lhs: MCEstimate,
    pub rhs: MCEstimate,
    pub constant_paper: Option<f64>,
    pub constant_empirical: Option<ConstantFit>,
    pub z_score: f64,
    pub verdict: Verdict,
    /// Whether the verdict counts towards the exit status.
    pub hard_gate: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extras: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// Catalog entry.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FixtureInfo {
    pub id: &'static str,
    pub anchor: &'static str,
    pub statement: &'static str,
    pub params: Vec<&'static str>,
    pub guards: &'static str,
    /// A documented parameter set the guards reject.
    pub boundary_case: Params,
    pub defaults: Params,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub constant: Option<&'static str>,
    pub fit_fields: Vec<&'static str>,
    pub nested: bool,
    pub audit_by_default: bool,
    pub default_samples: u64,
    pub default_inner: u64,
}

fn info_of(f: &Fixture) -> FixtureInfo {
    FixtureInfo {
        id: f.id,
        anchor: f.anchor,
        statement: f.statement,
        params: f.schema.to_vec(),
        guards: f.guards,
        boundary_case: (f.boundary)(),
        defaults: (f.defaults)(),
        constant: f.constant,
        fit_fields: f.fields.to_vec(),
        nested: f.nested,
        audit_by_default: f.audit,
        default_samples: f.samples,
        default_inner: f.inner,
    }
}

/// All fixtures in catalog order.
pub fn list_identities() -> Vec<FixtureInfo> {
    fixtures::catalog().iter().map(info_of).collect()
}

fn find(id: &str) -> Result<&'static Fixture> {
    fixtures::catalog()
        .iter()
        .find(|f| f.id == id)
        .ok_or_else(|| Error::UnknownIdentity(id.to_string()))
}

/// Catalog entry for `id`.
pub fn fixture_info(id: &str) -> Result<FixtureInfo> {
    find(id).map(info_of)
}

/// Resolved parameters of `id` after filling defaults, checked for admissibility.
pub fn resolve_params(id: &str, params: &Params) -> Result<Params> {
    let f = find(id)?;
    let p = params.resolve(&(f.defaults)(), f.schema);
    (f.check)(&p)?;
    Ok(p)
}

/// Run fixture `id` in its default mode (audit for fixtures flagged so).
pub fn verify(id: &str, params: &Params, cfg: &MCConfig) -> Result<IdentityReport> {
    let f = find(id)?;
    run(f, params, cfg, f.audit)
}

/// Run fixture `id` with the constant fitted across its test fields.
pub fn audit(id: &str, params: &Params, cfg: &MCConfig) -> Result<IdentityReport> {
    let f = find(id)?;
    run(f, params, cfg, true)
}

fn combined_se(lhs: &MCEstimate, rhs: &MCEstimate, c: f64) -> f64 {
    (lhs.se * lhs.se + c * c * rhs.se * rhs.se).sqrt()
}

fn run(f: &Fixture, params: &Params, cfg: &MCConfig, audit: bool) -> Result<IdentityReport> {
    cfg.validate()?;
    let p = params.resolve(&(f.defaults)(), f.schema);
    (f.check)(&p)?;
    let out: Outcome = match f.body {
        Body::Pair(pair) => {
            let field = p.field.clone().unwrap_or_else(|| f.fields[0].to_string());
            pair(&p, &field, cfg)?
        }
        Body::Plain(plain) => plain(&p, cfg)?,
    };
    let c = out.constant.unwrap_or(1.0);
    let diff = out.lhs.mean - c * out.rhs.mean;
    let se = combined_se(&out.lhs, &out.rhs, c);
    let z_eff = cfg.z_tol.max(out.z_floor);
    let tol = cfg.abs_tol.max(out.abs_tol).max(z_eff * se);
    let z = signed_z(diff, se, tol);
    let mut verdict = if diff.abs() <= tol && out.side_checks.iter().all(|&ok| ok) {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    let mut notes = out.notes;
    let mut fit = None;
    if audit {
        let Body::Pair(_) = f.body else {
            return Err(Error::Config(format!("{} has no field-parametric sides to fit", f.id)));
        };
        let cf = fit_fixture(f, &p, cfg, out.constant)?;
        verdict = audit_verdict(&cf, out.constant, cfg.abs_tol);
        if verdict == Verdict::ConstantMismatch {
            notes.push("sides are proportional but the fitted constant differs from the closed form".into());
        }
        fit = Some(cf);
    }
    Ok(IdentityReport {
        id: f.id.to_string(),
        params: p,
        lhs: out.lhs,
        rhs: out.rhs,
        constant_paper: out.constant,
        constant_empirical: fit,
        z_score: z,
        verdict,
        hard_gate: out.hard_gate.unwrap_or(true),
        runtime_ms: None,
        seed: cfg.seed,
        extras: out.extras,
        notes,
    })
}

/// `diff / se`, or `0` / `±f64::MAX` for exact comparisons inside / outside `tol`.
fn signed_z(diff: f64, se: f64, tol: f64) -> f64 {
    if se > 0.0 {
        diff / se
    } else if diff.abs() <= tol {
        0.0
    } else {
        f64::MAX.copysign(diff)
    }
}

fn audit_verdict(fit: &ConstantFit, paper: Option<f64>, abs_tol: f64) -> Verdict {
    if !fit.proportional {
        return Verdict::Fail;
    }
    let target = paper.unwrap_or(1.0);
    let gap = (fit.value - target).abs();
    if gap > abs_tol && gap > AUDIT_Z * fit.se {
        Verdict::ConstantMismatch
    } else {
        Verdict::Pass
    }
}

/// Fit `c` in `lhs ≈ c·rhs` across the fixture's test fields.
pub fn fit_constant(id: &str, params: &Params, cfg: &MCConfig) -> Result<ConstantFit> {
    let f = find(id)?;
    let p = params.resolve(&(f.defaults)(), f.schema);
    (f.check)(&p)?;
    if matches!(f.body, Body::Plain(_)) {
        return Err(Error::Config(format!("{} has no field-parametric sides to fit", f.id)));
    }
    let paper = (f.paper)(&p)?;
    fit_fixture(f, &p, cfg, paper)
}

fn fit_fixture(f: &Fixture, p: &Params, cfg: &MCConfig, paper: Option<f64>) -> Result<ConstantFit> {
    let Body::Pair(pair) = f.body else {
        return Err(Error::Config(format!("{} has no field-parametric sides to fit", f.id)));
    };
    if f.fields.len() < 3 {
        return Err(Error::Config(format!("{} configures fewer than 3 fit fields", f.id)));
    }
    let mut fields = Vec::new();
    for (i, spec) in f.fields.iter().enumerate() {
        let out = pair(p, spec, &cfg.fork(0xF170 + i as u64))?;
        let (l, r) = (out.lhs, out.rhs);
        let ratio = l.mean / r.mean;
        let rel = ((l.se / l.mean).powi(2) + (r.se / r.mean).powi(2)).sqrt();
        fields.push(FieldFit {
            field: spec.to_string(),
            lhs: l,
            rhs: r,
            ratio,
            ratio_se: (ratio * rel).abs(),
        });
    }
    let scale = fields.iter().map(|x| x.rhs.mean.abs()).fold(0.0, f64::max);
    if scale <= cfg.abs_tol || !scale.is_finite() {
        return Err(Error::DegenerateFit);
    }
    let ls = |pairs: &mut dyn Iterator<Item = (f64, f64)>| {
        let (mut num, mut den) = (0.0, 0.0);
        for (l, r) in pairs {
            num += l * r;
            den += r * r;
        }
        num / den
    };
    let value = ls(&mut fields.iter().map(|x| (x.lhs.mean, x.rhs.mean)));
    let mut rng = crate::mc::Rng::seed_from_u64(mc::mix_seed(cfg.seed, 0xB007));
    let mut boots = Vec::with_capacity(BOOTSTRAP_DRAWS);
    let normal = |mean: f64, sd: f64| Normal::new(mean, sd.max(0.0)).expect("finite sd");
    let dists: Vec<_> = fields
        .iter()
        .map(|x| (normal(x.lhs.mean, x.lhs.se), normal(x.rhs.mean, x.rhs.se)))
        .collect();
    for _ in 0..BOOTSTRAP_DRAWS {
        let mut it = dists.iter().map(|(dl, dr)| (dl.sample(&mut rng), dr.sample(&mut rng)));
        boots.push(ls(&mut it));
    }
    let mean = boots.iter().sum::<f64>() / boots.len() as f64;
    let se = (boots.iter().map(|b| (b - mean).powi(2)).sum::<f64>() / (boots.len() - 1) as f64).sqrt();
    boots.sort_by(|a, b| a.total_cmp(b));
    let q = |p: f64| boots[((boots.len() - 1) as f64 * p).round() as usize];
    let mut max_z: f64 = 0.0;
    for i in 0..fields.len() {
        for j in i + 1..fields.len() {
            let d = fields[i].ratio - fields[j].ratio;
            let s = (fields[i].ratio_se.powi(2) + fields[j].ratio_se.powi(2)).sqrt();
            max_z = max_z.max(mc::z_score(d, s).abs());
        }
    }
    Ok(ConstantFit {
        value,
        se,
        ci_low: q(0.025),
        ci_high: q(0.975),
        ratio_to_paper: paper.map(|c| value / c),
        max_pairwise_z: max_z,
        proportional: max_z <= AUDIT_Z,
        fields,
    })
}

/// Budget profiles of [`run_suite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Profile {
    Smoke,
    Full,
}

/// Smoke-profile budgets.
pub const SMOKE_SAMPLES: u64 = 20_000;
pub const SMOKE_OUTER: u64 = 2_000;
pub const SMOKE_INNER: u64 = 100;

/// Monte Carlo configuration of fixture `id` under `profile`.
pub fn profile_config(id: &str, profile: Profile, base: &MCConfig) -> Result<MCConfig> {
    let f = find(id)?;
    let (samples, inner) = match (profile, f.nested) {
        (Profile::Full, _) => (f.samples, f.inner),
        (Profile::Smoke, false) => (SMOKE_SAMPLES, f.inner),
        (Profile::Smoke, true) => (SMOKE_OUTER, SMOKE_INNER),
    };
    Ok(base.clone().with_samples(samples).with_inner(inner))
}

/// One suite entry: a report, or the error that prevented one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteEntry {
    pub id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<IdentityReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl SuiteEntry {
    /// Verdict used for the exit status; errors count as failures.
    pub fn effective_verdict(&self) -> Verdict {
        match &self.report {
            Some(r) if r.hard_gate => r.verdict,
            Some(_) => Verdict::Pass,
            None => Verdict::Fail,
        }
    }
}

/// Run every fixture at its default parameters. `jobs` fixtures run
/// concurrently; entries come back sorted by id regardless.
pub fn run_suite(profile: Profile, base: &MCConfig, jobs: usize) -> Vec<SuiteEntry> {
    let mut ids: Vec<_> = list_identities().iter().map(|f| f.id).collect();
    ids.sort_unstable();
    run_selected(&ids, profile, base, jobs, |_| {})
}

/// [`run_suite`] over a subset of ids, calling `progress` as each fixture finishes.
pub fn run_selected(
    ids: &[&str],
    profile: Profile,
    base: &MCConfig,
    jobs: usize,
    progress: impl Fn(&SuiteEntry) + Sync,
) -> Vec<SuiteEntry> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<SuiteEntry>>> = Mutex::new(vec![None; ids.len()]);
    let work = || loop {
        let i = next.fetch_add(1, Ordering::SeqCst);
        if i >= ids.len() {
            break;
        }
        let id = ids[i];
        let entry = match profile_config(id, profile, base).and_then(|cfg| {
            let start = std::time::Instant::now();
            verify(id, &Params::new(), &cfg).map(|mut r| {
                r.runtime_ms = Some(start.elapsed().as_millis() as u64);
                r
            })
        }) {
            Ok(r) => SuiteEntry {
                id: id.to_string(),
                report: Some(r),
                error: None,
            },
            Err(e) => SuiteEntry {
                id: id.to_string(),
                report: None,
                error: Some(e.to_string()),
            },
        };
        progress(&entry);
        slots.lock().expect("no poisoned workers")[i] = Some(entry);
    };
    let jobs = jobs.clamp(1, ids.len().max(1));
    if jobs == 1 || cfg!(target_arch = "wasm32") {
        work();
    } else {
        std::thread::scope(|s| {
            for _ in 0..jobs {
                s.spawn(work);
            }
        });
    }
    slots
        .into_inner()
        .expect("no poisoned workers")
        .into_iter()
        .map(|e| e.expect("every fixture ran"))
        .collect()
}

/// Exit status for a set of verdicts: 0 all pass, 1 any fail, 2 any
/// constant-mismatch without failures.
pub fn exit_code(verdicts: impl IntoIterator<Item = Verdict>) -> i32 {
    let mut code = 0;
    for v in verdicts {
        match v {
            Verdict::Fail => return 1,
            Verdict::ConstantMismatch => code = 2,
            Verdict::Pass => {}
        }
    }
    code
}

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use stiefel_xform::fields::{field_registry, ScalarField};
use stiefel_xform::identities::{
    self, exit_code, list_identities, IdentityReport, Params, Profile, SuiteEntry, Verdict,
};
use stiefel_xform::linalg::Frame;
use stiefel_xform::manifold::sample_stiefel;
use stiefel_xform::mc::{MCConfig, MCEstimate, RandomSource};
use stiefel_xform::special::{evaluate_constant, registry, ConstantKind, ConstantSpec};
use stiefel_xform::transforms::{Transform, TransformKind};
use stiefel_xform::{CompositeExponent, Error};

const SCHEMA_VERSION: u32 = 1;
const USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "stiefel-xform", version, about = "Monte Carlo transforms on Stiefel manifolds and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the identity fixtures.
    List {
        #[arg(long)]
        json: bool,
    },
    /// List the closed-form constants.
    ListConstants {
        #[arg(long)]
        json: bool,
    },
    /// List the test-field families.
    ListFields {
        #[arg(long)]
        json: bool,
    },
    /// Check one identity at the given parameters.
    Verify(IdentityArgs),
    /// Check one identity and fit its constant across several fields.
    Audit(IdentityArgs),
    /// Estimate a transform of a field at a point.
    Eval(EvalArgs),
    /// Evaluate a closed-form constant.
    Constant(ConstantArgs),
    /// Run every fixture at its default parameters.
    Suite(SuiteArgs),
}

#[derive(Args, Clone, Default)]
struct ParamArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Composite exponent, comma separated.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    lam: Option<Vec<f64>>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long)]
    field: Option<String>,
}

#[derive(Args, Clone)]
struct McArgs {
    #[arg(long)]
    samples: Option<u64>,
    /// Inner budget of nested estimates.
    #[arg(long)]
    inner: Option<u64>,
    #[arg(long, env = "STIEFEL_XFORM_SEED")]
    seed: Option<u64>,
    #[arg(long)]
    shards: Option<usize>,
    #[arg(long)]
    z_tol: Option<f64>,
    /// JSON file holding an MCConfig; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct OutArgs {
    #[arg(long)]
    json: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include timestamp and runtimes (not reproducible).
    #[arg(long)]
    timings: bool,
}

#[derive(Args)]
struct IdentityArgs {
    id: String,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    mc: McArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct EvalArgs {
    /// Transform kind, e.g. cosine or dual-funk.
    kind: String,
    #[command(flatten)]
    params: ParamArgs,
    /// Evaluation point: canonical, top or random-SEED.
    #[arg(long, default_value = "canonical")]
    point: String,
    /// Divide by the normalization coefficient.
    #[arg(long)]
    normalized: bool,
    #[command(flatten)]
    mc: McArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Args)]
struct ConstantArgs {
    /// Registry name, e.g. c_alpha_gty.
    kind: String,
    #[command(flatten)]
    params: ParamArgs,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProfileArg {
    Smoke,
    Full,
}

#[derive(Args)]
struct SuiteArgs {
    #[arg(value_enum)]
    profile: ProfileArg,
    /// Fixtures to run concurrently.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Restrict to these ids, comma separated.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<String>>,
    /// Print one line per finished fixture to stderr.
    #[arg(long)]
    progress: bool,
    #[command(flatten)]
    mc: McArgs,
    #[command(flatten)]
    out: OutArgs,
}

/// Versioned wrapper around every report the tool writes.
#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct ReportEnvelope {
    schema_version: u32,
    tool: String,
    version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    timestamp: Option<String>,
    config: ConfigEcho,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    reports: Vec<IdentityReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    suite: Vec<SuiteEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    estimate: Option<EvalOutput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    constant: Option<ConstantOutput>,
    exit_status: i32,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct ConfigEcho {
    command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    target: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    params: Option<Params>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mc: Option<MCConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    profile: Option<Profile>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct EvalOutput {
    kind: TransformKind,
    field: String,
    point: String,
    normalized: bool,
    estimate: MCEstimate,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
struct ConstantOutput {
    kind: ConstantKind,
    value: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    advisories: Vec<String>,
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NonFiniteSample { .. } | Error::Overflow(_) | Error::DegenerateFit => 1,
            _ => USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: USAGE,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::List { json } => list(json),
        Command::ListConstants { json } => list_constants(json),
        Command::ListFields { json } => list_fields(json),
        Command::Verify(a) => identity("verify", a),
        Command::Audit(a) => identity("audit", a),
        Command::Eval(a) => eval(a),
        Command::Constant(a) => constant(a),
        Command::Suite(a) => suite(a),
    }
}

fn write_stdout(text: &str) -> Result<(), Failure> {
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(usage(format!("cannot write to stdout: {e}"))),
        _ => Ok(()),
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<u8, Failure> {
    write_stdout(&(serde_json::to_string_pretty(value).expect("serializable") + "\n"))?;
    Ok(0)
}

fn list(json: bool) -> Result<u8, Failure> {
    let all = list_identities();
    if json {
        return print_json(&all);
    }
    let mut text = String::new();
    for f in all {
        let nested = if f.nested { " nested" } else { "" };
        let audit = if f.audit_by_default { " audit" } else { "" };
        text += &format!("{:<17} {}{nested}{audit}\n", f.id, f.statement);
        text += &format!("{:<17} params: {}; guards: {}\n", "", f.params.join(","), f.guards);
    }
    write_stdout(&text)?;
    Ok(0)
}

fn list_constants(json: bool) -> Result<u8, Failure> {
    let all = registry();
    if json {
        return print_json(&all);
    }
    let mut text = String::new();
    for c in all {
        text += &format!("{:<14} {}\n", c.name, c.formula);
        text += &format!("{:<14} needs: {}\n", "", c.admissibility);
    }
    write_stdout(&text)?;
    Ok(0)
}

fn list_fields(json: bool) -> Result<u8, Failure> {
    let all = field_registry();
    if json {
        return print_json(&all);
    }
    let mut text = String::new();
    for f in all {
        let inv = if f.right_invariant { " (right invariant)" } else { "" };
        text += &format!("{:<16} {}{inv}  e.g. {}\n", f.name, f.params, f.example);
    }
    write_stdout(&text)?;
    Ok(0)
}

fn to_params(p: &ParamArgs) -> Params {
    Params {
        n: p.n,
        m: p.m,
        k: p.k,
        alpha: p.alpha,
        lam: p.lam.clone(),
        beta: p.beta,
        field: p.field.clone(),
    }
}

/// MCConfig from `--config`, then flags, then the given fallbacks.
fn mc_config(a: &McArgs, samples: u64, inner: u64) -> Result<MCConfig, Failure> {
    let mut cfg = match &a.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
            serde_json::from_str::<MCConfig>(&text)
                .map_err(|e| usage(format!("invalid config {}: {e}", path.display())))?
        }
        None => MCConfig::new(samples, 0).with_inner(inner),
    };
    if let Some(s) = a.samples {
        cfg.samples = s;
    }
    if let Some(s) = a.inner {
        cfg.inner_samples = s;
    }
    if let Some(s) = a.seed {
        cfg.seed = s;
    }
    if let Some(s) = a.shards {
        cfg.shards = s;
    }
    if let Some(z) = a.z_tol {
        cfg.z_tol = z;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn envelope(out: &OutArgs, config: ConfigEcho) -> ReportEnvelope {
    ReportEnvelope {
        schema_version: SCHEMA_VERSION,
        tool: "stiefel-xform".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        timestamp: out.timings.then(|| chrono::Utc::now().to_rfc3339()),
        config,
        reports: Vec::new(),
        suite: Vec::new(),
        estimate: None,
        constant: None,
        exit_status: 0,
    }
}

fn emit(env: &ReportEnvelope, text: String, out: &OutArgs) -> Result<(), Failure> {
    let body = if out.json {
        let mut s = serde_json::to_string_pretty(env).expect("serializable");
        s.push('\n');
        s
    } else {
        text
    };
    match &out.out {
        Some(path) => std::fs::write(path, body).map_err(|e| usage(format!("cannot write {}: {e}", path.display()))),
        None => write_stdout(&body),
    }
}

fn report_text(r: &IdentityReport) -> String {
    let mut s = format!(
        "{} {}\n  lhs {} ± {}\n  rhs {} ± {}\n",
        r.id,
        r.verdict.as_str(),
        r.lhs.mean,
        r.lhs.se,
        r.rhs.mean,
        r.rhs.se
    );
    if let Some(c) = r.constant_paper {
        s += &format!("  constant {c}\n");
    }
    s += &format!("  z_score {}\n", r.z_score);
    if let Some(fit) = &r.constant_empirical {
        s += &format!(
            "  fitted {} ± {} [{}, {}] pairwise_z {} proportional {}\n",
            fit.value, fit.se, fit.ci_low, fit.ci_high, fit.max_pairwise_z, fit.proportional
        );
        if let Some(ratio) = fit.ratio_to_paper {
            s += &format!("  fitted/constant {ratio}\n");
        }
    }
    for (k, v) in &r.extras {
        s += &format!("  {k} {v}\n");
    }
    if !r.hard_gate {
        s += "  (advisory: not counted in the exit status)\n";
    }
    if let Some(ms) = r.runtime_ms {
        s += &format!("  runtime_ms {ms}\n");
    }
    for n in &r.notes {
        s += &format!("  note: {n}\n");
    }
    s
}

fn gated(r: &IdentityReport) -> Verdict {
    if r.hard_gate {
        r.verdict
    } else {
        Verdict::Pass
    }
}

fn identity(command: &str, a: IdentityArgs) -> Result<u8, Failure> {
    let info = identities::fixture_info(&a.id)?;
    let params = identities::resolve_params(&a.id, &to_params(&a.params))?;
    let cfg = mc_config(&a.mc, info.default_samples, info.default_inner)?;
    let start = std::time::Instant::now();
    let mut report = if command == "audit" {
        identities::audit(&a.id, &params, &cfg)?
    } else {
        identities::verify(&a.id, &params, &cfg)?
    };
    report.runtime_ms = a.out.timings.then(|| start.elapsed().as_millis() as u64);
    let code = exit_code([gated(&report)]);
    let mut env = envelope(
        &a.out,
        ConfigEcho {
            command: command.into(),
            target: Some(a.id.clone()),
            params: Some(params),
            mc: Some(cfg),
            profile: None,
        },
    );
    env.exit_status = code;
    let text = report_text(&report);
    env.reports.push(report);
    emit(&env, text, &a.out)?;
    Ok(code as u8)
}

fn frame_for(spec: &str, n: usize, m: usize) -> Result<Frame, Failure> {
    match spec {
        "canonical" => Ok(Frame::canonical(n, m)),
        "top" => Ok(Frame::canonical_top(n, m)),
        s => {
            let seed = s
                .strip_prefix("random-")
                .and_then(|x| x.parse::<u64>().ok())
                .ok_or_else(|| usage(format!("point must be canonical, top or random-SEED, got `{s}`")))?;
            Ok(sample_stiefel(n, m, &mut RandomSource::new(seed, 0).rng()))
        }
    }
}

fn eval(a: EvalArgs) -> Result<u8, Failure> {
    let kind = TransformKind::parse(&a.kind).ok_or_else(|| {
        let names: Vec<_> = TransformKind::ALL.iter().map(|k| k.name()).collect();
        usage(format!("unknown transform `{}`; expected one of {}", a.kind, names.join(", ")))
    })?;
    let p = &a.params;
    let (n, m) = match (p.n, p.m) {
        (Some(n), Some(m)) => (n, m),
        _ => return Err(usage("eval needs --n and --m")),
    };
    let k = match kind {
        TransformKind::Mcos | TransformKind::Qsin => p.k.unwrap_or(m),
        _ => p.k.ok_or_else(|| usage(format!("{kind} needs --k")))?,
    };
    let lam = match &p.lam {
        Some(l) => Some(CompositeExponent::new(l.clone())?),
        None => None,
    };
    let t = Transform::new(kind, n, m, k, p.alpha, lam, false)?;
    let field_spec = p.field.clone().ok_or_else(|| usage("eval needs --field"))?;
    let (fn_, fm) = t.field_shape();
    let field = ScalarField::parse(&field_spec, fn_, fm)?;
    let (pn, pm) = t.point_shape();
    let point = frame_for(&a.point, pn, pm)?;
    let cfg = mc_config(&a.mc, 100_000, 1_000)?;
    let estimate = if a.normalized {
        t.apply_normalized(&field, &point, &cfg)?
    } else {
        t.apply(&field, &point, &cfg)?
    };
    let mut env = envelope(
        &a.out,
        ConfigEcho {
            command: "eval".into(),
            target: Some(kind.name().into()),
            params: Some(to_params(&a.params)),
            mc: Some(cfg),
            profile: None,
        },
    );
    let text = format!("{kind} of {field_spec} at {}: {} ± {}\n", a.point, estimate.mean, estimate.se);
    env.estimate = Some(EvalOutput {
        kind,
        field: field_spec,
        point: a.point.clone(),
        normalized: a.normalized,
        estimate,
    });
    emit(&env, text, &a.out)?;
    Ok(0)
}

fn constant(a: ConstantArgs) -> Result<u8, Failure> {
    let kind = ConstantKind::parse(&a.kind).ok_or_else(|| usage(format!("unknown constant `{}`", a.kind)))?;
    let p = &a.params;
    let (n, m) = match (p.n, p.m) {
        (Some(n), Some(m)) => (n, m),
        _ => return Err(usage("constant needs --n and --m")),
    };
    let value = evaluate_constant(&ConstantSpec::new(kind, n, m, p.k, p.alpha))?;
    let mut env = envelope(
        &a.out,
        ConfigEcho {
            command: "constant".into(),
            target: Some(kind.name().into()),
            params: Some(to_params(p)),
            mc: None,
            profile: None,
        },
    );
    let mut text = format!("{} = {}\n", kind.name(), value.value);
    for adv in &value.advisories {
        text += &format!("  advisory: {adv}\n");
    }
    env.constant = Some(ConstantOutput {
        kind,
        value: value.value,
        advisories: value.advisories,
    });
    emit(&env, text, &a.out)?;
    Ok(0)
}

fn suite(a: SuiteArgs) -> Result<u8, Failure> {
    let profile = match a.profile {
        ProfileArg::Smoke => Profile::Smoke,
        ProfileArg::Full => Profile::Full,
    };
    if a.jobs == 0 {
        return Err(usage("--jobs must be at least 1"));
    }
    if a.mc.samples.is_some() || a.mc.inner.is_some() {
        return Err(usage("suite budgets come from the profile; --samples and --inner are not accepted"));
    }
    let base = mc_config(&a.mc, 100_000, 1_000)?;
    let mut ids: Vec<String> = match &a.only {
        Some(list) => {
            for id in list {
                identities::fixture_info(id)?;
            }
            list.clone()
        }
        None => list_identities().iter().map(|f| f.id.to_string()).collect(),
    };
    ids.sort();
    ids.dedup();
    let refs: Vec<&str> = ids.iter().map(String::as_str).collect();
    let progress = a.progress;
    let mut entries = identities::run_selected(&refs, profile, &base, a.jobs, |e| {
        if progress {
            let status = match &e.report {
                Some(r) => r.verdict.as_str().to_string(),
                None => "error".to_string(),
            };
            eprintln!("{} {status}", e.id);
        }
    });
    if !a.out.timings {
        for e in &mut entries {
            if let Some(r) = e.report.as_mut() {
                r.runtime_ms = None;
            }
        }
    }
    let code = exit_code(entries.iter().map(SuiteEntry::effective_verdict));
    let mut text = String::new();
    for e in &entries {
        match &e.report {
            Some(r) => {
                let gate = if r.hard_gate { "" } else { " (advisory)" };
                text += &format!(
                    "{:<17} {:<17} lhs {} ± {}  rhs {} ± {}  z {}{gate}\n",
                    r.id,
                    r.verdict.as_str(),
                    r.lhs.mean,
                    r.lhs.se,
                    r.rhs.mean,
                    r.rhs.se,
                    r.z_score
                );
            }
            None => text += &format!("{:<17} error: {}\n", e.id, e.error.as_deref().unwrap_or("")),
        }
    }
    let count = |v: Verdict| entries.iter().filter(|e| e.effective_verdict() == v).count();
    text += &format!(
        "{} fixtures: {} pass, {} fail, {} constant-mismatch\n",
        entries.len(),
        count(Verdict::Pass),
        count(Verdict::Fail),
        count(Verdict::ConstantMismatch)
    );
    let mut env = envelope(
        &a.out,
        ConfigEcho {
            command: "suite".into(),
            target: None,
            params: None,
            mc: Some(base),
            profile: Some(profile),
        },
    );
    env.exit_status = code;
    env.suite = entries;
    emit(&env, text, &a.out)?;
    Ok(code as u8)
}

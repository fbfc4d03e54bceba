use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use grasscat::cocycle::{
    check_cocycle, circle_cocycle, clutching_cocycle, cocycle_from_json, cocycle_to_json, glue, moebius_cocycle,
    oplus_cocycle, random_coboundary, s1_orientation_character, s1_orientation_class, s2_clutching_degree,
    tautological_s2_cocycle, abstract_three_patch, BaseTag, CechCocycle, GluedBundle,
};
use grasscat::grassmann::GrPoint;
use grasscat::internal_cat::{MutationSite, Report};
use grasscat::linalg::random_invertible;
use grasscat::mor::MorPoint;
use grasscat::serial::{grpoint_to_json, morpoint_to_json};
use grasscat::suites::{run_suite, Suite, SuiteConfig, Target};
use grasscat::{Complex, Error, Field, Mat, Scalar, Tolerance};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "grasscat", version, about = "Property suites and bundle tools for Grassmannian categories")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a property suite.
    Check(CheckArgs),
    /// Validate, glue or classify a cocycle file.
    Bundle(BundleArgs),
    /// Write a seeded random instance as JSON.
    Generate(GenerateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Category,
    Functor,
    NatTrans,
    Nerve,
    Semiring,
    Stabilization,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Vf,
    Vff,
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Real,
    Complex,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SiteArg {
    Compose,
    Identity,
    Functor,
    Component,
}

#[derive(Args)]
struct Common {
    /// Seed for every sampler.
    #[arg(long, env = "GRASSCAT_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = Tolerance::default().eps_eq)]
    eps_eq: f64,
    #[arg(long, default_value_t = Tolerance::default().eps_rank)]
    eps_rank: f64,
    #[arg(long, default_value_t = Tolerance::default().eps_orth)]
    eps_orth: f64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write the result here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl Common {
    fn tolerance(&self) -> grasscat::Result<Tolerance> {
        Tolerance::new(self.eps_orth, self.eps_rank, self.eps_eq)
    }
}

#[derive(Args)]
struct CheckArgs {
    #[arg(value_enum)]
    suite: SuiteArg,
    #[arg(long, value_enum, default_value_t = TargetArg::Vff)]
    target: TargetArg,
    #[arg(long, value_enum, default_value_t = FieldArg::Real)]
    field: FieldArg,
    #[arg(long, default_value_t = 200)]
    samples: usize,
    #[arg(long, default_value_t = 4)]
    m_max: usize,
    #[arg(long, default_value_t = 2)]
    k_max: usize,
    /// Highest nerve level.
    #[arg(long, default_value_t = 4)]
    level: usize,
    /// Corrupt one site to confirm the checks detect it.
    #[arg(long, value_enum)]
    mutate: Option<SiteArg>,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum BundleAction {
    Validate,
    Glue,
    Classify,
}

#[derive(Args)]
struct BundleArgs {
    #[arg(value_enum)]
    action: BundleAction,
    input: PathBuf,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Grpoint,
    Morpoint,
    Cocycle,
}

#[derive(Clone, Copy, ValueEnum)]
enum BaseArg {
    S1,
    S2,
    Abstract,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientationArg {
    Trivial,
    Moebius,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(value_enum)]
    kind: Kind,
    #[arg(long, value_enum, default_value_t = FieldArg::Real)]
    field: FieldArg,
    /// Ambient dimension of the (source) subspace.
    #[arg(long, default_value_t = 4)]
    m: usize,
    /// Dimension of the (source) subspace.
    #[arg(long, default_value_t = 2)]
    k: usize,
    /// Ambient dimension of the target; defaults to `m`.
    #[arg(long)]
    n: Option<usize>,
    /// Dimension of the target; defaults to `k`.
    #[arg(long)]
    l: Option<usize>,
    #[arg(long, value_enum, default_value_t = BaseArg::S1)]
    base: BaseArg,
    #[arg(long, default_value_t = 1)]
    rank: usize,
    /// Grid size: circle points, equator points, or shared samples.
    #[arg(long)]
    grid: Option<usize>,
    #[arg(long, value_enum, default_value_t = OrientationArg::Trivial)]
    orientation: OrientationArg,
    /// Clutching degree over the sphere.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    degree: i64,
    /// Skip the random coboundary and emit the textbook representative.
    #[arg(long)]
    canonical: bool,
    #[command(flatten)]
    common: Common,
}

/// Errors that reflect a failed property rather than bad input.
fn is_violation(e: &anyhow::Error) -> bool {
    matches!(
        e.downcast_ref::<Error>(),
        Some(Error::CocycleViolation(_) | Error::InconsistentSamples(_) | Error::Discontinuity(_) | Error::UndersampledLoop(_))
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check(a) => cmd_check(&a),
        Command::Bundle(a) => cmd_bundle(&a),
        Command::Generate(a) => cmd_generate(&a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if is_violation(&e) { 1 } else { 2 })
        }
    }
}

fn emit(common: &Common, text: &str) -> anyhow::Result<()> {
    match &common.output {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            writeln!(out, "{text}")?;
            Ok(())
        }
    }
}

fn emit_report(common: &Common, report: &Report) -> anyhow::Result<bool> {
    let text = match common.format {
        Format::Text => report.to_string(),
        Format::Json => serde_json::to_string_pretty(report)?,
    };
    emit(common, &text)?;
    Ok(report.passed())
}

fn field(f: FieldArg) -> Field {
    match f {
        FieldArg::Real => Field::Real,
        FieldArg::Complex => Field::Complex,
    }
}

fn cmd_check(a: &CheckArgs) -> anyhow::Result<bool> {
    let suite = match a.suite {
        SuiteArg::Category => Suite::Category,
        SuiteArg::Functor => Suite::Functor,
        SuiteArg::NatTrans => Suite::NatTrans,
        SuiteArg::Nerve => Suite::Nerve,
        SuiteArg::Semiring => Suite::Semiring,
        SuiteArg::Stabilization => Suite::Stabilization,
    };
    let target = match a.target {
        TargetArg::Vf => Target::Vf,
        TargetArg::Vff => Target::Vff,
        TargetArg::G => Target::G,
    };
    let mutate = a.mutate.map(|s| match s {
        SiteArg::Compose => MutationSite::Compose,
        SiteArg::Identity => MutationSite::Identity,
        SiteArg::Functor => MutationSite::Functor,
        SiteArg::Component => MutationSite::Component,
    });
    let cfg = SuiteConfig {
        samples: a.samples,
        seed: a.common.seed,
        tol: a.common.tolerance()?,
        m_max: a.m_max,
        k_max: a.k_max,
        level: a.level,
        mutate,
    };
    let report = run_suite(suite, target, field(a.field), &cfg)?;
    emit_report(&a.common, &report)
}

fn read_json(path: &Path) -> anyhow::Result<Value> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| anyhow!(Error::Schema(format!("{}: {e}", path.display()))))
}

fn cmd_bundle(a: &BundleArgs) -> anyhow::Result<bool> {
    let v = read_json(&a.input)?;
    let tol = a.common.tolerance()?;
    match v.get("field").and_then(Value::as_str) {
        Some("real") => bundle_typed(a, &cocycle_from_json::<f64>(&v, &tol)?, &tol, real_invariants),
        Some("complex") => bundle_typed(a, &cocycle_from_json::<Complex<f64>>(&v, &tol)?, &tol, complex_invariants),
        other => Err(Error::Schema(format!("field must be \"real\" or \"complex\", found {other:?}")).into()),
    }
}

fn real_invariants(c: &CechCocycle<f64>) -> grasscat::Result<Value> {
    if c.base().tag != BaseTag::IntervalCoverCircle {
        return Ok(json!({}));
    }
    if c.rank() == 1 {
        Ok(json!({ "orientation": s1_orientation_class(c)? }))
    } else {
        Ok(json!({ "orientation_character": s1_orientation_character(c)? }))
    }
}

fn complex_invariants(c: &CechCocycle<Complex<f64>>) -> grasscat::Result<Value> {
    if c.base().tag != BaseTag::TwoDiskSphere || c.rank() != 1 {
        return Ok(json!({}));
    }
    Ok(json!({ "degree": s2_clutching_degree(c)? }))
}

fn invariant_lines(inv: &Value) -> Vec<String> {
    inv.as_object()
        .map(|m| m.iter().map(|(k, v)| format!("{k}: {}", v.as_str().map_or_else(|| v.to_string(), str::to_string))).collect())
        .unwrap_or_default()
}

fn glued_summary<T: Scalar>(g: &GluedBundle<T>, inv: &Value) -> Value {
    let base = g.base();
    json!({
        "field": T::FIELD,
        "fiber_dim": g.fiber_dim(),
        "base": base.tag,
        "patches": base.patches.iter().map(|p| json!({ "id": p.id, "samples": p.samples.len() })).collect::<Vec<_>>(),
        "identifications": (0..base.overlaps.len())
            .map(|o| json!({ "overlap": base.overlap_label(o), "samples": base.overlaps[o].samples.len() }))
            .collect::<Vec<_>>(),
        "invariants": inv,
    })
}

fn bundle_typed<T: Scalar>(
    a: &BundleArgs,
    c: &CechCocycle<T>,
    tol: &Tolerance,
    invariants: fn(&CechCocycle<T>) -> grasscat::Result<Value>,
) -> anyhow::Result<bool> {
    match a.action {
        BundleAction::Validate => emit_report(&a.common, &check_cocycle(c, tol)?),
        BundleAction::Glue => {
            let g = glue(c, tol)?;
            let summary = glued_summary(&g, &invariants(c)?);
            let text = match a.common.format {
                Format::Json => serde_json::to_string_pretty(&summary)?,
                Format::Text => {
                    let mut lines = vec![
                        format!("glued bundle of rank {} over {}", g.fiber_dim(), summary["base"].as_str().unwrap_or("?")),
                        format!("patches: {}", base_ids(&summary["patches"])),
                        format!("identifications: {}", base_ids(&summary["identifications"])),
                    ];
                    lines.extend(invariant_lines(&summary["invariants"]));
                    lines.join("\n")
                }
            };
            emit(&a.common, &text)?;
            Ok(true)
        }
        BundleAction::Classify => {
            let report = check_cocycle(c, tol)?;
            if !report.passed() {
                emit_report(&a.common, &report)?;
                return Ok(false);
            }
            let inv = invariants(c)?;
            if inv.as_object().is_none_or(|m| m.is_empty()) {
                return Err(Error::Config(format!(
                    "no invariant is implemented for a rank {} {} cocycle over {:?}",
                    c.rank(),
                    T::FIELD,
                    c.base().tag
                ))
                .into());
            }
            let text = match a.common.format {
                Format::Json => serde_json::to_string_pretty(&inv)?,
                Format::Text => invariant_lines(&inv).join("\n"),
            };
            emit(&a.common, &text)?;
            Ok(true)
        }
    }
}

fn base_ids(v: &Value) -> String {
    v.as_array()
        .map(|a| {
            a.iter()
                .map(|e| {
                    let name = e.get("id").or_else(|| e.get("overlap")).and_then(Value::as_str).unwrap_or("?");
                    format!("{name} ({} samples)", e["samples"])
                })
                .collect::<Vec<_>>()
                .join(", ")
        })
        .unwrap_or_default()
}

fn cmd_generate(a: &GenerateArgs) -> anyhow::Result<bool> {
    a.common.tolerance()?;
    let mut rng = ChaCha8Rng::seed_from_u64(a.common.seed);
    let value = match (a.kind, a.field) {
        (Kind::Grpoint, FieldArg::Real) => grpoint_to_json(&random_point::<f64>(a.m, a.k, &mut rng)?),
        (Kind::Grpoint, FieldArg::Complex) => grpoint_to_json(&random_point::<Complex<f64>>(a.m, a.k, &mut rng)?),
        (Kind::Morpoint, FieldArg::Real) => morpoint_to_json(&random_mor::<f64>(a, &mut rng)?),
        (Kind::Morpoint, FieldArg::Complex) => morpoint_to_json(&random_mor::<Complex<f64>>(a, &mut rng)?),
        (Kind::Cocycle, _) => generate_cocycle(a, &mut rng)?,
    };
    emit(&a.common, &serde_json::to_string_pretty(&value)?)?;
    Ok(true)
}

fn random_point<T: Scalar>(m: usize, k: usize, rng: &mut ChaCha8Rng) -> grasscat::Result<GrPoint<T>> {
    if m == 0 || k > m {
        return Err(Error::Config(format!("need 0 <= k <= m and m >= 1, got m={m}, k={k}")));
    }
    Ok(GrPoint::random(m, k, rng))
}

fn random_mor<T: Scalar>(a: &GenerateArgs, rng: &mut ChaCha8Rng) -> grasscat::Result<MorPoint<T>> {
    let src = random_point(a.m, a.k, rng)?;
    let dst = random_point(a.n.unwrap_or(a.m), a.l.unwrap_or(a.k), rng)?;
    Ok(MorPoint::random(src, dst, rng))
}

fn twist<T: Scalar>(c: CechCocycle<T>, a: &GenerateArgs, rng: &mut ChaCha8Rng) -> grasscat::Result<CechCocycle<T>> {
    if a.canonical {
        Ok(c)
    } else {
        random_coboundary(&c, rng)
    }
}

fn circle<T: Scalar>(a: &GenerateArgs, rng: &mut ChaCha8Rng) -> grasscat::Result<CechCocycle<T>> {
    let n = a.grid.unwrap_or(40);
    let mut g_b = Mat::<T>::identity(a.rank, a.rank);
    if matches!(a.orientation, OrientationArg::Moebius) {
        g_b[(0, 0)] = -T::one();
    }
    if a.canonical {
        return circle_cocycle(n, &Mat::identity(a.rank, a.rank), &g_b);
    }
    // a random constant frame change on each component keeps the class
    let g_a: Mat<T> = random_invertible(a.rank, rng);
    let g_b = &g_a * g_b * g_a.clone().try_inverse().expect("invertible by construction");
    circle_cocycle(n, &g_a, &g_b)
}

fn generate_cocycle(a: &GenerateArgs, rng: &mut ChaCha8Rng) -> anyhow::Result<Value> {
    if a.rank == 0 {
        return Err(Error::Config("rank must be at least 1".into()).into());
    }
    let out = match (a.base, a.field) {
        (BaseArg::S1, FieldArg::Real) => {
            let c = if a.canonical && a.rank == 1 && matches!(a.orientation, OrientationArg::Moebius) {
                moebius_cocycle(a.grid.unwrap_or(40))?
            } else {
                circle::<f64>(a, rng)?
            };
            cocycle_to_json(&twist(c, a, rng)?)
        }
        (BaseArg::S1, FieldArg::Complex) => cocycle_to_json(&twist(circle::<Complex<f64>>(a, rng)?, a, rng)?),
        (BaseArg::S2, FieldArg::Complex) => {
            let n = a.grid.unwrap_or(64);
            let line = if a.degree == 1 && a.canonical { tautological_s2_cocycle(n)? } else { clutching_cocycle(n, a.degree)? };
            let mut c = line;
            for _ in 1..a.rank {
                c = oplus_cocycle(&c, &clutching_cocycle(n, 0)?)?;
            }
            cocycle_to_json(&twist(c, a, rng)?)
        }
        (BaseArg::S2, FieldArg::Real) => {
            return Err(Error::Config("sphere cocycles are generated over the complex field".into()).into())
        }
        (BaseArg::Abstract, FieldArg::Real) => {
            cocycle_to_json(&abstract_three_patch::<f64, _>(a.grid.unwrap_or(8), a.rank + 1, a.rank, rng)?)
        }
        (BaseArg::Abstract, FieldArg::Complex) => {
            cocycle_to_json(&abstract_three_patch::<Complex<f64>, _>(a.grid.unwrap_or(8), a.rank + 1, a.rank, rng)?)
        }
    };
    Ok(out)
}

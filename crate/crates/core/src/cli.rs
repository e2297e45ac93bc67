//! Command-line front end. [`dispatch`] parses arguments, runs one command and
//! returns the exit code with the rendered output, so the binary only forwards
//! it to the process.
//!
//! Exit codes: 0 verified or ok, 2 hypotheses not met, 3 violated (or a failed
//! identity), 1 usage or input error.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use crate::classify::{self, Connection, FieldSample, FitReport, TorseForm};
use crate::spacetimes::{catalog, sample_points, SpacetimeModel};
use crate::ssmc::{self, SsmcPoint};
use crate::theorems::{self, suite, Check, PointEvidence, TheoremId, TheoremVerdict, Tolerances, Verdict, VerifyOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// model file, or `catalog:NAME` for a built-in model
    #[arg(long)]
    pub model: String,
    /// associated field
    #[arg(long, default_value = "dt")]
    pub xi: String,
    /// covector field used as the torsion recurrence form (fitted when absent)
    #[arg(long = "A")]
    pub a: Option<String>,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "tol-abs", default_value_t = 1e-9)]
    pub tol_abs: f64,
    #[arg(long = "tol-rel", default_value_t = 1e-6)]
    pub tol_rel: f64,
    #[arg(long, default_value_t = 1.0)]
    pub kappa: f64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// write the report here instead of standard output
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Per-point geometry summary and every field classifier
    Analyze(CommonArgs),
    /// Table of structural identities
    Identities {
        #[command(flatten)]
        common: CommonArgs,
        /// flip the sign of one term of the composed curvature
        #[arg(long = "flip-route2")]
        flip_route2: bool,
    },
    /// Conditional theorem verification
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, default_value = "all")]
        theorem: String,
        /// add this amount to every predicted conclusion
        #[arg(long = "inject-fault", default_value_t = 0.0)]
        inject_fault: f64,
    },
    /// Pressure and energy density of the perfect-fluid decomposition (n = 4)
    Eos(CommonArgs),
    /// List built-in models
    Catalog {
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Parser)]
#[command(name = "ssmc", version, about = "Semi-symmetric metric connections on Lorentzian spacetimes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(message: impl std::fmt::Display) -> Self {
        Self {
            exit_code: 1,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

/// A finished report and its exit code.
struct Report {
    json: Value,
    exit_code: i32,
}

/// Runs the command line `argv` (program name first).
pub fn dispatch<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    exit_code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let (result, format, out) = match &cli.command {
        Command::Analyze(c) => (analyze(c), c.format, c.out.clone()),
        Command::Identities { common, flip_route2 } => (identities(common, *flip_route2), common.format, common.out.clone()),
        Command::Verify {
            common,
            theorem,
            inject_fault,
        } => (verify(common, theorem, *inject_fault), common.format, common.out.clone()),
        Command::Eos(c) => (eos(c), c.format, c.out.clone()),
        Command::Catalog { format, out } => (catalog_report(), *format, out.clone()),
    };
    let report = match result {
        Ok(r) => r,
        Err(message) => return Outcome::error(message),
    };
    let rendered = match format {
        Format::Json => canonical_json(&report.json),
        Format::Text => render_text(&report.json),
    };
    match out {
        Some(path) => match std::fs::write(&path, &rendered) {
            Ok(()) => Outcome {
                exit_code: report.exit_code,
                stdout: String::new(),
                stderr: String::new(),
            },
            Err(e) => Outcome::error(format!("cannot write {}: {e}", path.display())),
        },
        None => Outcome {
            exit_code: report.exit_code,
            stdout: rendered,
            stderr: String::new(),
        },
    }
}

/// JSON number, or a string for non-finite values.
fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or_else(
        || {
            Value::String(if x.is_nan() {
                "NaN".into()
            } else if x > 0.0 {
                "inf".into()
            } else {
                "-inf".into()
            })
        },
        Value::Number,
    )
}

fn nums(xs: &[f64]) -> Value {
    Value::Array(xs.iter().copied().map(num).collect())
}

fn obj<const N: usize>(entries: [(&str, Value); N]) -> Value {
    Value::Object(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

/// Sorted keys, two-space indentation, floats with 17 significant digits.
pub fn canonical_json(value: &Value) -> String {
    let mut out = String::new();
    write_json(value, 0, &mut out);
    out.push('\n');
    out
}

fn write_json(value: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize| "  ".repeat(d);
    match value {
        Value::Null => out.push_str("null"),
        Value::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
        Value::Number(n) => {
            if n.is_f64() {
                let _ = write!(out, "{:.16e}", n.as_f64().expect("f64"));
            } else {
                let _ = write!(out, "{n}");
            }
        }
        Value::String(s) => out.push_str(&serde_json::to_string(s).expect("string")),
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str("[]");
                return;
            }
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                write_json(item, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push(']');
        }
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str("{}");
                return;
            }
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (k, key) in keys.iter().enumerate() {
                out.push_str(&pad(depth + 1));
                out.push_str(&serde_json::to_string(key).expect("string"));
                out.push_str(": ");
                write_json(&map[*key], depth + 1, out);
                out.push_str(if k + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&pad(depth));
            out.push('}');
        }
    }
}

/// Indented key/value rendering of a report.
pub fn render_text(value: &Value) -> String {
    let mut out = String::new();
    render_text_into(value, 0, &mut out);
    out
}

fn scalar_text(value: &Value) -> Option<String> {
    match value {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) if n.is_f64() => Some(format!("{:.6e}", n.as_f64().expect("f64"))),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.is_empty() => Some("{}".into()),
        Value::Array(a) if a.is_empty() => Some("[]".into()),
        Value::Array(a) if a.iter().all(|x| x.is_number() || (x.is_string() && a.len() <= 4 && x.as_str().is_some_and(|s| s.len() < 8))) => {
            Some(format!("[{}]", a.iter().filter_map(scalar_text).collect::<Vec<_>>().join(", ")))
        }
        _ => None,
    }
}

fn render_text_into(value: &Value, depth: usize, out: &mut String) {
    let pad = "  ".repeat(depth);
    match value {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            for key in keys {
                match scalar_text(&map[key]) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}{key}: {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}{key}:");
                        render_text_into(&map[key], depth + 1, out);
                    }
                }
            }
        }
        Value::Array(items) => {
            for (k, item) in items.iter().enumerate() {
                match scalar_text(item) {
                    Some(s) => {
                        let _ = writeln!(out, "{pad}- {s}");
                    }
                    None => {
                        let _ = writeln!(out, "{pad}[{k}]");
                        render_text_into(item, depth + 1, out);
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar_text(other).unwrap_or_default());
        }
    }
}

fn load_model(spec: &str) -> Result<SpacetimeModel, String> {
    match spec.strip_prefix("catalog:") {
        Some(name) => catalog::by_name(name).map_err(|e| e.to_string()),
        None => SpacetimeModel::load(spec).map_err(|e| e.to_string()),
    }
}

struct Prepared {
    model: SpacetimeModel,
    points: Vec<Vec<f64>>,
    config: Map<String, Value>,
}

fn prepare(command: &str, c: &CommonArgs) -> Result<Prepared, String> {
    let model = load_model(&c.model)?;
    if !model.has_field(&c.xi) {
        return Err(format!("unknown field `{}` in model `{}`", c.xi, model.name()));
    }
    if let Some(a) = &c.a {
        if !model.has_field(a) {
            return Err(format!("unknown field `{a}` in model `{}`", model.name()));
        }
    }
    if c.samples == 0 {
        return Err("--samples must be positive".into());
    }
    if !(c.tol_abs > 0.0 && c.tol_rel > 0.0) {
        return Err("tolerances must be positive".into());
    }
    if !(c.kappa > 0.0) {
        return Err(format!("--kappa must be positive, got {}", c.kappa));
    }
    let sampling = sample_points(&model, c.samples, c.seed).map_err(|e| e.to_string())?;
    let mut config = Map::new();
    config.insert("command".into(), Value::String(command.into()));
    config.insert("tool_version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    config.insert("model".into(), Value::String(c.model.clone()));
    config.insert("model_name".into(), Value::String(model.name().into()));
    config.insert("model_hash".into(), Value::String(model.hash()));
    config.insert("dimension".into(), Value::from(model.dimension() as u64));
    config.insert("xi".into(), Value::String(c.xi.clone()));
    config.insert("A".into(), c.a.clone().map_or(Value::Null, Value::String));
    config.insert("samples".into(), Value::from(c.samples as u64));
    config.insert("seed".into(), Value::from(c.seed));
    config.insert("tolerances".into(), obj([("abs", num(c.tol_abs)), ("rel", num(c.tol_rel))]));
    config.insert("kappa".into(), num(c.kappa));
    config.insert(
        "format".into(),
        Value::String(match c.format {
            Format::Json => "json".into(),
            Format::Text => "text".into(),
        }),
    );
    config.insert("out".into(), c.out.as_ref().map_or(Value::Null, |p| Value::String(p.display().to_string())));
    config.insert("rejected_samples".into(), Value::from(sampling.rejections as u64));
    config.insert(
        "model_warnings".into(),
        Value::Array(model.warnings().iter().cloned().map(Value::String).collect()),
    );
    Ok(Prepared {
        model,
        points: sampling.points,
        config,
    })
}

fn report(config: Map<String, Value>, per_point: Vec<Value>, aggregates: Value, verdict: &str, notes: Vec<String>) -> Value {
    obj([
        ("config", Value::Object(config)),
        ("per_point", Value::Array(per_point)),
        ("aggregates", aggregates),
        ("verdict", Value::String(verdict.into())),
        ("erratum_notes", Value::Array(notes.into_iter().map(Value::String).collect())),
    ])
}

fn fit_json(fit: Result<FitReport, classify::ClassifyError>) -> Value {
    match fit {
        Ok(f) => {
            let scalars: Map<String, Value> = f.scalars.iter().map(|(k, v)| (k.clone(), num(*v))).collect();
            let mut point_scalars: BTreeMap<String, Vec<f64>> = BTreeMap::new();
            for p in &f.points {
                for (k, v) in &p.scalars {
                    point_scalars.entry(k.clone()).or_default().push(*v);
                }
            }
            obj([
                ("class", Value::String(f.class_name.clone())),
                ("max_residual", num(f.residual)),
                ("scalars", Value::Object(scalars)),
                (
                    "point_scalars",
                    Value::Object(point_scalars.iter().map(|(k, v)| (k.clone(), nums(v))).collect()),
                ),
                ("residuals", nums(&f.points.iter().map(|p| p.residual).collect::<Vec<_>>())),
            ])
        }
        Err(e) => obj([("error", Value::String(e.to_string()))]),
    }
}

fn max_of(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().fold(0.0, |a: f64, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

fn analyze(c: &CommonArgs) -> Result<Report, String> {
    let p = prepare("analyze", c)?;
    let frames: Vec<SsmcPoint> = p
        .points
        .iter()
        .map(|x| SsmcPoint::build(&p.model, x, &c.xi))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let mut columns: BTreeMap<&str, Vec<f64>> = BTreeMap::new();
    let mut per_point = Vec::new();
    for s in &frames {
        let aux = classify::auxiliary_checks_at(s);
        let skew = s.ricci_bar.sub(&s.ricci_bar.permute(&[1, 0]).expect("rank 2")).expect("same shape");
        let row: [(&str, f64); 14] = [
            ("field_norm_squared", s.xi().norm_squared()),
            ("pi_trace", s.pi_trace),
            ("torsion_residual", s.torsion_residual),
            ("metricity_defect", s.metricity_defect),
            ("two_route_relative_residual", s.curvature.relative_residual),
            ("ricci_contraction_residual", s.ricci_residual),
            ("proposition_defect", ssmc::proposition_defect(&s.ricci_bar, s.xi())),
            ("lc_scalar_curvature", s.lc_curvature.scalar),
            ("ssmc_curvature_norm", s.curvature.direct.riemann_dddd.norm()),
            ("ssmc_ricci_skew_norm", skew.norm()),
            ("ricci_eigenvector_defect", aux.eigenvector_defect),
            ("geodesic_defect_lc", aux.geodesic_defect_lc),
            ("geodesic_defect_ssmc", aux.geodesic_defect_ssmc),
            ("closedness_defect", aux.closedness_defect),
        ];
        let mut m = Map::new();
        m.insert("point".into(), nums(&s.point));
        for (k, v) in row {
            m.insert(k.into(), num(v));
            columns.entry(k).or_default().push(v);
        }
        per_point.push(Value::Object(m));
    }
    let maxima: Map<String, Value> = columns.iter().map(|(k, v)| (format!("max_{k}"), num(max_of(v.iter().map(|x| x.abs()))))).collect();

    let mut fits = Map::new();
    for conn in [Connection::LeviCivita, Connection::Ssmc] {
        for (form, label) in [(TorseForm::Unit, "unit"), (TorseForm::General, "general")] {
            fits.insert(
                format!("torse_forming_{}_{label}", conn.name().replace('-', "_")),
                fit_json(classify::torse_forming_fit(&p.model, &c.xi, conn, &p.points, form)),
            );
        }
        let samples: Vec<FieldSample> = frames.iter().map(|s| FieldSample::from_ssmc_point(s, conn)).collect();
        fits.insert(format!("torqued_{}", conn.name().replace('-', "_")), fit_json(classify::torqued_fit(&samples)));
        let pairs: Vec<_> = samples.iter().zip(&frames).map(|(f, s)| (f.dv.clone(), s.lc_curvature.ricci.clone())).collect();
        fits.insert(format!("f_ric_{}", conn.name().replace('-', "_")), fit_json(classify::fric_fit(&pairs)));
    }
    let pf: Vec<Value> = frames
        .iter()
        .map(|s| {
            let x = s.xi();
            let fit = classify::pf_decompose(&s.lc_curvature.ricci, &s.metric.g, &s.metric.g_inv, &x.contravariant, &x.covariant);
            match fit {
                Ok(f) => Value::Object(
                    f.scalars
                        .iter()
                        .map(|(k, v)| (k.clone(), num(*v)))
                        .chain([("residual".to_string(), num(f.residual))])
                        .collect(),
                ),
                Err(e) => obj([("error", Value::String(e.to_string()))]),
            }
        })
        .collect();
    fits.insert("perfect_fluid".into(), Value::Array(pf));
    let aggregates = obj([("maxima", Value::Object(maxima)), ("classifiers", Value::Object(fits))]);
    Ok(Report {
        json: report(p.config, per_point, aggregates, "ok", vec![]),
        exit_code: 0,
    })
}

fn identities(c: &CommonArgs, flip_route2: bool) -> Result<Report, String> {
    let mut p = prepare("identities", c)?;
    p.config.insert("flip_route2".into(), Value::Bool(flip_route2));
    let result = suite::run_identity_suite(&p.model, &c.xi, &p.points, flip_route2).map_err(|e| e.to_string())?;
    let rows: Map<String, Value> = result
        .rows
        .iter()
        .map(|r| {
            (
                r.name.clone(),
                obj([
                    ("max", num(r.max)),
                    ("tolerance", num(r.tolerance)),
                    ("status", Value::String(if r.passed() { "pass" } else { "fail" }.into())),
                ]),
            )
        })
        .collect();
    let per_point = p.points.iter().map(|x| obj([("point", nums(x))])).collect();
    let passed = result.passed();
    Ok(Report {
        json: report(p.config, per_point, obj([("identities", Value::Object(rows))]), if passed { "ok" } else { "failed" }, vec![]),
        exit_code: if passed { 0 } else { 3 },
    })
}

fn check_json(c: &Check) -> Value {
    obj([
        ("max", num(c.max)),
        ("tolerance", num(c.tolerance)),
        ("status", Value::String(c.status.as_str().into())),
    ])
}

fn checks_json(checks: &[Check]) -> Value {
    Value::Object(checks.iter().map(|c| (c.name.clone(), check_json(c))).collect())
}

fn verdict_json(v: &TheoremVerdict) -> Value {
    let scalars: Map<String, Value> = v
        .scalars
        .iter()
        .map(|(k, xs)| {
            let finite: Vec<f64> = xs.iter().copied().filter(|x| x.is_finite()).collect();
            let lo = finite.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = finite.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            (k.clone(), obj([("min", num(lo)), ("max", num(hi))]))
        })
        .collect();
    obj([
        ("verdict", Value::String(v.verdict.as_str().into())),
        ("hypotheses", checks_json(&v.hypotheses)),
        ("conclusions", checks_json(&v.conclusions)),
        ("audits", checks_json(&v.audits)),
        ("scalars", Value::Object(scalars)),
        (
            "labels",
            Value::Object(v.labels.iter().map(|(k, l)| (k.clone(), Value::String(l.clone()))).collect()),
        ),
        ("notes", Value::Array(v.notes.iter().cloned().map(Value::String).collect())),
    ])
}

fn verify(c: &CommonArgs, theorem: &str, fault: f64) -> Result<Report, String> {
    let selected: Vec<TheoremId> = if theorem == "all" {
        TheoremId::ALL.to_vec()
    } else {
        vec![TheoremId::from_code(theorem).ok_or_else(|| {
            format!("unknown theorem `{theorem}`; expected one of prop, thm1.3, thm1.4, thm1.5, thm1.6, thm1.7, all")
        })?]
    };
    let mut p = prepare("verify", c)?;
    p.config.insert("theorem".into(), Value::String(theorem.into()));
    p.config.insert("inject_fault".into(), num(fault));
    let evidence: Vec<PointEvidence> = theorems::collect_evidence(&p.model, &c.xi, c.a.as_deref(), &p.points).map_err(|e| e.to_string())?;
    let opts = VerifyOptions {
        tol: Tolerances {
            abs: c.tol_abs,
            rel: c.tol_rel,
        },
        fault,
        kappa: c.kappa,
    };
    let verdicts: Vec<TheoremVerdict> = selected.iter().map(|t| theorems::verify(*t, &evidence, &opts)).collect();
    let per_point = p
        .points
        .iter()
        .enumerate()
        .map(|(k, x)| {
            let mut m = Map::new();
            m.insert("point".into(), nums(x));
            for v in &verdicts {
                let values: Map<String, Value> = v
                    .hypotheses
                    .iter()
                    .chain(&v.conclusions)
                    .chain(&v.audits)
                    .map(|ch| (ch.name.clone(), num(ch.per_point[k])))
                    .chain(v.scalars.iter().map(|(name, xs)| (name.clone(), num(xs[k]))))
                    .collect();
                m.insert(v.theorem.code().into(), Value::Object(values));
            }
            Value::Object(m)
        })
        .collect();
    let aggregates = Value::Object(verdicts.iter().map(|v| (v.theorem.code().to_string(), verdict_json(v))).collect());
    let overall = Verdict::combine(verdicts.iter().map(|v| v.verdict));
    let mut notes: Vec<String> = Vec::new();
    for v in &verdicts {
        for n in &v.notes {
            if !notes.contains(n) {
                notes.push(n.clone());
            }
        }
    }
    Ok(Report {
        json: report(p.config, per_point, aggregates, overall.as_str(), notes),
        exit_code: overall.exit_code(),
    })
}

fn eos(c: &CommonArgs) -> Result<Report, String> {
    let p = prepare("eos", c)?;
    let n = p.model.dimension();
    if n != 4 {
        return Err(format!("eos needs a four-dimensional model, `{}` has dimension {n}", p.model.name()));
    }
    let mut pairs = Vec::new();
    for x in &p.points {
        let s = SsmcPoint::build(&p.model, x, &c.xi).map_err(|e| e.to_string())?;
        let v = s.xi();
        let fit = classify::pf_decompose(&s.lc_curvature.ricci, &s.metric.g, &s.metric.g_inv, &v.contravariant, &v.covariant)
            .map_err(|e| format!("at point {x:?}: {e}"))?;
        pairs.push((fit.scalar("alpha"), fit.scalar("beta"), fit.residual));
    }
    let ab: Vec<(f64, f64)> = pairs.iter().map(|&(a, b, _)| (a, b)).collect();
    let eos = classify::eos_report(&ab, c.kappa, n).map_err(|e| e.to_string())?;
    let k2 = c.kappa * c.kappa;
    let per_point = p
        .points
        .iter()
        .zip(&pairs)
        .zip(&eos.points)
        .zip(&eos.combination)
        .map(|(((x, &(a, b, r)), e), comb)| {
            obj([
                ("point", nums(x)),
                ("alpha", num(a)),
                ("beta", num(b)),
                ("fluid_residual", num(r)),
                ("pressure", num(e.p)),
                ("energy_density", num(e.sigma)),
                ("kappa2_3p_minus_2sigma", num(*comb)),
                ("kappa2_3p_plus_2sigma", num(k2 * (3.0 * e.p + 2.0 * e.sigma))),
            ])
        })
        .collect();
    let aggregates = obj([
        ("constancy_defect", num(eos.constancy_defect)),
        ("max_fluid_residual", num(max_of(pairs.iter().map(|p| p.2)))),
    ]);
    Ok(Report {
        json: report(p.config, per_point, aggregates, "ok", theorems::erratum_notes(TheoremId::Thm13)),
        exit_code: 0,
    })
}

fn catalog_report() -> Result<Report, String> {
    let models: Vec<Value> = catalog::ENTRIES
        .iter()
        .map(|(name, description)| {
            let m = catalog::by_name(name).expect("catalog entries are valid");
            obj([
                ("name", Value::String((*name).into())),
                ("description", Value::String((*description).into())),
                ("dimension", Value::from(m.dimension() as u64)),
                ("coordinates", Value::Array(m.coordinates().iter().cloned().map(Value::String).collect())),
                ("fields", Value::Array(m.field_names().map(|f| Value::String(f.into())).collect())),
                ("hash", Value::String(m.hash())),
            ])
        })
        .collect();
    let mut config = Map::new();
    config.insert("command".into(), Value::String("catalog".into()));
    config.insert("tool_version".into(), Value::String(env!("CARGO_PKG_VERSION").into()));
    Ok(Report {
        json: report(config, vec![], obj([("models", Value::Array(models))]), "ok", vec![]),
        exit_code: 0,
    })
}

//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to the library and returns the
//! emitted document with an exit status: 0 on success, 1 on a domain error
//! (document `{"error": code, "detail": message}`), 2 on a usage error.

mod plot;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};
use serde_json::{json, Value};
use thiserror::Error;

use crate::accumulation::{
    self, acc2_scan, enumerate_exceptional_pairs, is_rational_accumulation,
    isotropic_witness_sequence, quadric_samples, segment_sign_probe, special_eigenvectors,
    strict_imaginary_neighborhood_probe, tangency_report, tau_orbit, y_pm_avoidance_check,
    AccError, Direction,
};
use crate::candecomp::{canonical_decomposition, CandecompError};
use crate::homext::HomExtError;
use crate::quiver_core::{classify, sym_det, DimVector, Quiver, QuiverError};
use crate::roots::{enumerate_real_roots, normalize, root_classify, Ray, RootError};
use crate::{corpus, QuiverContext};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("unknown corpus quiver {0:?}")]
    UnknownCorpus(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Unsupported(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Root(#[from] RootError),
    #[error(transparent)]
    HomExt(#[from] HomExtError),
    #[error(transparent)]
    Candecomp(#[from] CandecompError),
    #[error(transparent)]
    Acc(#[from] AccError),
}

impl CliError {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::UnknownCorpus(_) => "unknown_corpus_quiver",
            CliError::Io(_) => "io",
            CliError::Unsupported(_) => "unsupported",
            CliError::Quiver(e) => match e {
                QuiverError::CyclicQuiver => "cyclic_quiver",
                QuiverError::BadLabel { .. } => "bad_label",
                QuiverError::Loop(_) => "loop",
                QuiverError::Json(_) => "malformed_quiver",
                _ => "invalid_quiver",
            },
            CliError::Root(e) => root_code(e),
            CliError::HomExt(e) => homext_code(e),
            CliError::Candecomp(e) => match e {
                CandecompError::NotPositive(_) => "not_positive",
                CandecompError::IterationCapExceeded(_) => "iteration_cap_exceeded",
                CandecompError::Verification(_) => "verification_failed",
                CandecompError::Root(e) => root_code(e),
                CandecompError::HomExt(e) => homext_code(e),
                _ => "decomposition_failed",
            },
            CliError::Acc(e) => match e {
                AccError::DynkinInput => "dynkin_input",
                AccError::Disconnected => "disconnected",
                AccError::NoConvergence(_) => "no_convergence",
                AccError::NotRealSchur(_) => "not_real_schur",
                AccError::NotIsotropicSchur(_) => "not_isotropic_schur",
                AccError::NotPositive(_) => "not_positive",
                AccError::NotOnQuadric(_) => "not_on_quadric",
                AccError::PreconditionFailed(_) => "precondition_failed",
                AccError::Root(e) => root_code(e),
                AccError::HomExt(e) => homext_code(e),
                AccError::Candecomp(_) => "decomposition_failed",
            },
        }
    }

    fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

fn root_code(e: &RootError) -> &'static str {
    match e {
        RootError::ZeroVector => "zero_vector",
        RootError::NotARoot(_) => "not_a_root",
        RootError::NotPositive(_) => "not_positive",
        RootError::HomExt(e) => homext_code(e),
    }
}

fn homext_code(e: &HomExtError) -> &'static str {
    match e {
        HomExtError::NegativeEntry(_) => "negative_entry",
        HomExtError::TooLarge(_) => "too_large",
        HomExtError::CapExceeded { .. } => "cap_exceeded",
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "quiver-roots",
    version,
    about = "Root systems, canonical decompositions and accumulation rays of acyclic quivers",
    after_help = "QUIVER is a JSON file {\"vertices\": n, \"arrows\": [[t,h], ...]} (1-based) \
                  or corpus:NAME. Vectors are given as entries, e.g. `3 1` or `3,1`."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the document to FILE instead of standard output.
    #[arg(long, global = true, value_name = "FILE")]
    out: Option<PathBuf>,
    /// Emit CSV instead of JSON (roots, accpoints, converge, simplex-plot).
    #[arg(long, global = true)]
    csv: bool,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Forms, signature and type of the quiver.
    Classify { quiver: String },
    /// Positive real roots up to a height, with the Schur flag.
    Roots {
        quiver: String,
        #[arg(long, default_value_t = 10)]
        height: u64,
    },
    /// Generic hom and ext between two dimension vectors.
    Homext {
        quiver: String,
        /// First vector, comma separated.
        alpha: String,
        /// Second vector, comma separated.
        beta: String,
    },
    /// Root kind and Schur flag of a vector.
    Schur {
        quiver: String,
        #[arg(required = true, num_args = 1..)]
        vector: Vec<String>,
    },
    /// Canonical decomposition of a dimension vector.
    Candecomp {
        quiver: String,
        #[arg(required = true, num_args = 1..)]
        vector: Vec<String>,
    },
    /// Special eigenvectors and the isotropic rays of rank-two subcategories.
    Accpoints {
        quiver: String,
        #[arg(long, default_value_t = 6)]
        height: u64,
    },
    /// τ-orbit of a real Schur root and its distance to y⁺ or y⁻.
    Converge {
        quiver: String,
        #[arg(required = true, num_args = 1..)]
        vector: Vec<String>,
        #[arg(long, default_value_t = 20)]
        steps: usize,
        #[arg(long, value_enum, default_value_t = Dir::Inverse)]
        direction: Dir,
    },
    /// Numerical and exact probes of accumulation statements.
    Probe {
        #[arg(value_enum)]
        kind: ProbeKind,
        quiver: String,
        /// Dimension vector (neighborhood, rational, witnesses).
        vector: Vec<String>,
        /// Height bound for rank-two pairs (segments, avoidance, tangency).
        #[arg(long, default_value_t = 4)]
        height: u64,
        /// Witness count (witnesses).
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value = "1/20", value_parser = parse_radius)]
        radius: BigRational,
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Δ(1) for three vertices as SVG: the conic q = 0, real Schur roots and
    /// accumulation rays.
    SimplexPlot {
        quiver: String,
        #[arg(long, default_value_t = 8)]
        height: u64,
    },
    /// List the shipped quivers, or print one in the quiver file format.
    Corpus { name: Option<String> },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Dir {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ProbeKind {
    Neighborhood,
    Tangency,
    Segments,
    Avoidance,
    Rational,
    Witnesses,
}

fn parse_radius(s: &str) -> Result<BigRational, String> {
    let r = parse_rational(s).ok_or_else(|| format!("{s:?} is not a rational p/q"))?;
    if r.is_negative() {
        return Err("radius must be nonnegative".into());
    }
    Ok(r)
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (
            p.trim().parse::<BigInt>().ok()?,
            q.trim().parse::<BigInt>().ok()?,
        ),
        None => (s.trim().parse::<BigInt>().ok()?, BigInt::from(1)),
    };
    (q != BigInt::from(0)).then(|| BigRational::new(p, q))
}

/// Result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok(doc) => match &cli.out {
            Some(path) => match std::fs::write(path, &doc) {
                Ok(()) => Outcome {
                    code: 0,
                    stdout: String::new(),
                    stderr: String::new(),
                },
                Err(e) => error_outcome(&CliError::Io(format!("{}: {e}", path.display()))),
            },
            None => Outcome {
                code: 0,
                stdout: doc,
                stderr: String::new(),
            },
        },
        Err(e) => error_outcome(&e),
    }
}

fn error_outcome(e: &CliError) -> Outcome {
    let doc = json!({"error": e.code(), "detail": e.to_string()});
    Outcome {
        code: e.exit_code(),
        stdout: format!("{doc}\n"),
        stderr: String::new(),
    }
}

fn load_quiver(source: &str) -> Result<Quiver, CliError> {
    if let Some(name) = source.strip_prefix("corpus:") {
        return corpus::get(name).ok_or_else(|| CliError::UnknownCorpus(name.into()));
    }
    let text =
        std::fs::read_to_string(source).map_err(|e| CliError::Io(format!("{source}: {e}")))?;
    Ok(Quiver::from_json(&text)?)
}

fn parse_vector(parts: &[String], n: usize) -> Result<DimVector, CliError> {
    let mut entries = Vec::new();
    for p in parts {
        for x in p.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let x = x.trim_matches(|c| c == '[' || c == ']' || c == '(' || c == ')');
            entries.push(
                x.parse::<BigInt>()
                    .map_err(|_| CliError::Usage(format!("{x:?} is not an integer")))?,
            );
        }
    }
    if entries.len() != n {
        return Err(CliError::Usage(format!(
            "expected a vector with {n} entries, got {}",
            entries.len()
        )));
    }
    Ok(DimVector::new(entries))
}

fn ray_json(r: &Ray) -> Value {
    match r {
        Ray::Rational(_) => json!(r.to_strings()),
        Ray::Approx { coords, .. } => json!(coords),
    }
}

fn int_json(x: &BigInt) -> Value {
    x.to_i64()
        .map(Value::from)
        .unwrap_or_else(|| Value::String(x.to_string()))
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn no_csv(cli: &Cli, what: &str) -> Result<(), CliError> {
    if cli.csv {
        return Err(CliError::Usage(format!(
            "--csv is not available for {what}"
        )));
    }
    Ok(())
}

fn dispatch(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::Classify { quiver } => {
            no_csv(cli, "classify")?;
            let q = load_quiver(quiver)?;
            Ok(pretty(&classify_json(&q)))
        }
        Command::Roots { quiver, height } => {
            let ctx = QuiverContext::new(load_quiver(quiver)?);
            let mut rows = Vec::new();
            for d in enumerate_real_roots(&ctx, *height) {
                let schur = ctx.homext().is_schur_vector(&d)?;
                rows.push((d, schur));
            }
            if cli.csv {
                let n = ctx.n();
                let mut out = (1..=n)
                    .map(|i| format!("x{i}"))
                    .collect::<Vec<_>>()
                    .join(",");
                out.push_str(",height,schur\n");
                for (d, schur) in &rows {
                    let xs: Vec<String> = d.entries().iter().map(|x| x.to_string()).collect();
                    out.push_str(&format!("{},{},{}\n", xs.join(","), d.height(), schur));
                }
                return Ok(out);
            }
            let roots: Vec<Value> = rows
                .iter()
                .map(|(d, schur)| {
                    json!({"root": d, "height": int_json(&d.height()), "schur": schur})
                })
                .collect();
            Ok(pretty(&json!({"height": height, "real_roots": roots})))
        }
        Command::Homext {
            quiver,
            alpha,
            beta,
        } => {
            no_csv(cli, "homext")?;
            let ctx = QuiverContext::new(load_quiver(quiver)?);
            let a = parse_vector(std::slice::from_ref(alpha), ctx.n())?;
            let b = parse_vector(std::slice::from_ref(beta), ctx.n())?;
            let hom = ctx.homext().hom_generic(&a, &b)?;
            let ext = ctx.homext().ext_generic(&a, &b)?;
            let euler = ctx.forms().euler_form(&a, &b);
            Ok(pretty(
                &json!({"hom": hom, "ext": ext, "euler": int_json(&euler)}),
            ))
        }
        Command::Schur { quiver, vector } => {
            no_csv(cli, "schur")?;
            let ctx = QuiverContext::new(load_quiver(quiver)?);
            let d = parse_vector(vector, ctx.n())?;
            let kind = root_classify(&ctx, &d)?;
            let schur = kind.is_root() && d.is_positive() && ctx.homext().is_schur_vector(&d)?;
            let q = ctx.forms().tits_form(&d);
            Ok(pretty(
                &json!({"input": d, "class": kind, "schur": schur, "q": int_json(&q)}),
            ))
        }
        Command::Candecomp { quiver, vector } => {
            no_csv(cli, "candecomp")?;
            let ctx = QuiverContext::new(load_quiver(quiver)?);
            let d = parse_vector(vector, ctx.n())?;
            // canonical_decomposition fails unless Kac's criterion verifies.
            let dec = canonical_decomposition(&ctx, &d)?;
            Ok(pretty(
                &json!({"input": d, "summands": dec.summands, "verified": true}),
            ))
        }
        Command::Accpoints { quiver, height } => {
            let ctx = QuiverContext::new(load_quiver(quiver)?);
            accpoints(cli, &ctx, *height)
        }
        Command::Converge {
            quiver,
            vector,
            steps,
            direction,
        } => {
            let ctx = QuiverContext::new(load_quiver(quiver)?);
            let d = parse_vector(vector, ctx.n())?;
            let dir = match direction {
                Dir::Forward => Direction::Forward,
                Dir::Inverse => Direction::Inverse,
            };
            let orbit = tau_orbit(&ctx, &d, dir, *steps)?;
            let r = &orbit.report;
            if cli.csv {
                let n = ctx.n();
                let mut out = String::from("step,");
                out.push_str(
                    &(1..=n)
                        .map(|i| format!("y{i}"))
                        .collect::<Vec<_>>()
                        .join(","),
                );
                out.push_str(",distance\n");
                for (k, ray) in orbit.rays.iter().enumerate() {
                    let dist = r
                        .distances
                        .get(k)
                        .map(|x| format!("{x:e}"))
                        .unwrap_or_default();
                    out.push_str(&format!("{k},{},{dist}\n", ray.to_strings().join(",")));
                }
                return Ok(out);
            }
            Ok(pretty(&json!({
                "input": d,
                "direction": dir,
                "target": r.target.as_ref().map(ray_json),
                "vectors": orbit.vectors,
                "rays": orbit.rays.iter().map(ray_json).collect::<Vec<_>>(),
                "distances": r.distances,
                "aborted_at": r.aborted_at,
                "first_within": r.first_within,
                "monotone_from": r.monotone_from,
            })))
        }
        Command::Probe {
            kind,
            quiver,
            vector,
            height,
            steps,
            radius,
            samples,
            seed,
        } => {
            no_csv(cli, "probe")?;
            let ctx = QuiverContext::new(load_quiver(quiver)?);
            let need_vector = matches!(
                kind,
                ProbeKind::Neighborhood | ProbeKind::Rational | ProbeKind::Witnesses
            );
            if need_vector && vector.is_empty() {
                return Err(CliError::Usage(
                    "this probe needs a dimension vector".into(),
                ));
            }
            let doc = match kind {
                ProbeKind::Neighborhood => {
                    let d = parse_vector(vector, ctx.n())?;
                    let r = strict_imaginary_neighborhood_probe(&ctx, &d, radius, *samples, *seed)?;
                    json!({"input": d, "report": r})
                }
                ProbeKind::Rational => {
                    let d = parse_vector(vector, ctx.n())?;
                    json!({"input": d, "answer": is_rational_accumulation(&ctx, &d)?})
                }
                ProbeKind::Witnesses => {
                    let d = parse_vector(vector, ctx.n())?;
                    let w = isotropic_witness_sequence(&ctx, &d, *steps)?;
                    let target = normalize(&d)?;
                    let mut distances = Vec::with_capacity(w.len());
                    for v in &w {
                        distances.push(normalize(v)?.dist_inf(&target));
                    }
                    json!({"input": d, "witnesses": w, "distances": distances})
                }
                ProbeKind::Tangency => tangency_json(&ctx, *height, *samples, *seed)?,
                ProbeKind::Segments => segments_json(&ctx, *height)?,
                ProbeKind::Avoidance => {
                    let pairs = enumerate_exceptional_pairs(&ctx, *height)?;
                    json!({"height": height, "pairs": pairs.len(), "report": y_pm_avoidance_check(&ctx, &pairs)?})
                }
            };
            Ok(pretty(&doc))
        }
        Command::SimplexPlot { quiver, height } => {
            let ctx = QuiverContext::new(load_quiver(quiver)?);
            let data = plot::PlotData::collect(&ctx, *height)?;
            if cli.csv {
                Ok(data.to_csv())
            } else if ctx.n() == 3 {
                Ok(data.to_svg())
            } else {
                Err(CliError::Unsupported(format!(
                    "SVG needs exactly three vertices, the quiver has {}; use --csv",
                    ctx.n()
                )))
            }
        }
        Command::Corpus { name } => {
            no_csv(cli, "corpus")?;
            match name {
                Some(name) => {
                    let q =
                        corpus::get(name).ok_or_else(|| CliError::UnknownCorpus(name.clone()))?;
                    let mut s = q.to_json();
                    s.push('\n');
                    Ok(s)
                }
                None => {
                    let list: Vec<Value> = corpus::all()
                        .into_iter()
                        .map(|(name, q)| {
                            json!({"name": name, "vertices": q.vertex_count(), "arrows": q.to_file().arrows})
                        })
                        .collect();
                    Ok(pretty(&Value::Array(list)))
                }
            }
        }
    }
}

fn classify_json(q: &Quiver) -> Value {
    let c = classify(q);
    let components: Vec<Value> = c
        .components
        .iter()
        .map(|k| {
            json!({
                "vertices": k.vertices.iter().map(|v| v + 1).collect::<Vec<_>>(),
                "base": k.base,
                "signature": k.signature,
            })
        })
        .collect();
    json!({
        "vertices": q.vertex_count(),
        "arrows": q.arrows().len(),
        "base": c.base(),
        "at_most_weakly_hyperbolic": c.at_most_weakly_hyperbolic,
        "weakly_hyperbolic": c.weakly_hyperbolic,
        "connected": c.connected,
        "signature": c.signature,
        "det": int_json(&sym_det(q)),
        "components": components,
    })
}

fn accpoints(cli: &Cli, ctx: &QuiverContext, height: u64) -> Result<String, CliError> {
    let eig = special_eigenvectors(ctx)?;
    let scan = acc2_scan(ctx, height)?;
    if cli.csv {
        let n = ctx.n();
        let mut out = (1..=n)
            .map(|i| format!("y{i}"))
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(",rational,t,alpha,beta\n");
        let join = |d: &DimVector| {
            d.entries()
                .iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(";")
        };
        for e in &scan {
            let coords: Vec<String> = match e.ray.to_ray() {
                r @ Ray::Rational(_) => r.to_strings(),
                Ray::Approx { coords, .. } => coords.iter().map(|x| format!("{x:.15}")).collect(),
            };
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                coords.join(","),
                e.rational(),
                e.t,
                join(&e.alpha),
                join(&e.beta)
            ));
        }
        return Ok(out);
    }
    let acc2: Vec<Value> = scan
        .iter()
        .map(|e| {
            json!({
                "ray": e.ray.to_json(),
                "rational": e.rational(),
                "pair": {"alpha": e.alpha, "beta": e.beta},
                "t": e.t,
                "exact": e.ray.exact_json(),
            })
        })
        .collect();
    Ok(pretty(&json!({
        "y_minus": ray_json(&eig.y_minus),
        "y_plus": ray_json(&eig.y_plus),
        "lambda_plus": eig.lambda_plus,
        "lambda_minus": eig.lambda_minus,
        "euclidean_degenerate": eig.euclidean_degenerate,
        "height": height,
        "acc2": acc2,
    })))
}

fn tangency_json(
    ctx: &QuiverContext,
    height: u64,
    samples: usize,
    seed: u64,
) -> Result<Value, CliError> {
    let forms = ctx.forms();
    let mut eigen = 0;
    let mut tangent = 0;
    let mut bad = 0;
    for v in quadric_samples(forms, samples, seed) {
        let r = tangency_report(forms, &v)?;
        eigen += usize::from(r.is_eigenvector);
        tangent += usize::from(r.is_tangent);
        bad += usize::from(r.is_tangent && !r.is_eigenvector);
    }
    let mut rays = Vec::new();
    for e in acc2_scan(ctx, height)? {
        rays.push(
            json!({"ray": e.ray.to_json(), "report": tangency_report(forms, &e.ray.coords)?}),
        );
    }
    Ok(json!({
        "samples": samples,
        "eigenvector": eigen,
        "tangent": tangent,
        "tangent_not_eigenvector": bad,
        "acc2": rays,
    }))
}

fn segments_json(ctx: &QuiverContext, height: u64) -> Result<Value, CliError> {
    let scan = acc2_scan(ctx, height)?;
    let mut reports = Vec::new();
    let mut max_q = f64::NEG_INFINITY;
    for (i, a) in scan.iter().enumerate() {
        for (j, b) in scan.iter().enumerate().skip(i + 1) {
            let r = segment_sign_probe(ctx.forms(), &a.ray.coords, &b.ray.coords, 64)?;
            max_q = max_q.max(r.max_q);
            reports.push(json!({"i": i, "j": j, "report": r}));
        }
    }
    Ok(json!({
        "rays": scan.iter().map(|e| e.ray.to_json()).collect::<Vec<_>>(),
        "max_q": if reports.is_empty() { Value::Null } else { json!(max_q) },
        "within_tolerance": reports.is_empty() || max_q <= accumulation::MERGE_TOL,
        "segments": reports,
    }))
}

//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure (bad scene, failing check),
//! 2 usage error.

use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use nalgebra::DMatrix;
use serde::Serialize;

use crate::emit::{trace_csv, trace_svg};
use crate::fiber::{validate_pfb, vertical_dimension, PfbSpec};
use crate::finsler::{
    check_minkowski_norm, classify_geometry, generic_directions, kahler_check, named_metric,
    riemann_probe, Lattice, MetricField, MinkowskiCheck, NormCandidate, DEFAULT_STEP,
    HOMOGENEITY_TOL, RIEMANN_TOL,
};
use crate::geodesics::{
    count_local_parallels, detect_smarandache, trace_batch, validate_differential_structure,
    Bounds, Scene, Smoothness,
};
use crate::omega::{is_identity_mapping, OmegaValue, PointClass};
use crate::scene::{load_scene, parse_angle, LoadedScene};
use crate::tangent::{cotangent_space, pairing_matrix, tangent_space};

/// Environment variable overriding the homogeneity and Kähler tolerances.
pub const TOL_ENV: &str = "PSEUDOGEO_TOL";

#[derive(Debug, Parser)]
#[command(name = "pseudogeo", version, about = "Charged-point geometry toolkit")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Trace the rays of a scene file.
    Trace(TraceArgs),
    /// Reduce and classify an omega value.
    Classify(ClassifyArgs),
    /// Decide whether a scene denies the local-parallel axiom.
    Detect(DetectArgs),
    /// Count local parallels at a point along one axis.
    Parallels(ParallelArgs),
    /// Tangent space at a point.
    Tangent(SpaceArgs),
    /// Cotangent space at a point and its pairing with the tangent basis.
    Cotangent(SpaceArgs),
    /// Dimension bookkeeping for a principal fiber bundle.
    Fiber(FiberArgs),
    /// Check a Minkowski norm candidate.
    Normcheck(NormArgs),
    /// Run the Kähler sub-checks on a metric.
    Kahler(KahlerArgs),
}

#[derive(Debug, Args)]
struct TraceArgs {
    #[arg(long)]
    scene: PathBuf,
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long, default_value_t = 64)]
    max_events: usize,
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    /// Comma-separated components, e.g. `1.5pi,2pi,0.3`.
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "scene",
        required_unless_present = "scene"
    )]
    omega: Option<String>,
    #[arg(long)]
    scene: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DetectArgs {
    #[arg(long)]
    scene: PathBuf,
    /// Declared smoothness order: an integer or `inf`.
    #[arg(long)]
    smoothness: Option<String>,
}

#[derive(Debug, Args)]
struct ParallelArgs {
    #[arg(long, allow_hyphen_values = true)]
    omega: String,
    /// 1-based axis of the line.
    #[arg(long)]
    axis: usize,
}

#[derive(Debug, Args)]
struct SpaceArgs {
    #[arg(long, required_unless_present = "omega")]
    n: Option<usize>,
    /// Comma-separated 1-based euclidean axes.
    #[arg(long, conflicts_with = "omega")]
    euclidean: Option<String>,
    /// Derive the point class from an omega value instead.
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
}

#[derive(Debug, Args)]
struct FiberArgs {
    #[arg(long)]
    dim_p: usize,
    #[arg(long)]
    dim_m: usize,
    #[arg(long, default_value_t = 0)]
    group_dim: usize,
    /// Euclidean directions at the point of the total space.
    #[arg(long)]
    lambda: usize,
}

#[derive(Debug, Args)]
struct NormArgs {
    /// `euclidean`, `quartic-mean`, `linear[:axis]` or `quadratic:a,b;c,d`.
    #[arg(long)]
    norm: String,
    #[arg(long, default_value_t = 2)]
    dim: usize,
    #[arg(long, default_value_t = 32)]
    samples: usize,
    #[arg(long, default_value_t = 7)]
    seed: u64,
}

#[derive(Debug, Args)]
struct KahlerArgs {
    /// Constant metric, rows separated by `;`.
    #[arg(
        long,
        conflicts_with = "field",
        required_unless_present = "field",
        allow_hyphen_values = true
    )]
    metric: Option<String>,
    /// Built-in field: `flat`, `conformal`, `fubini-study`.
    #[arg(long)]
    field: Option<String>,
    /// Complex dimension; inferred from `--metric`.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, default_value_t = -1.0, allow_hyphen_values = true)]
    lattice_min: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    lattice_max: f64,
    /// Points per axis.
    #[arg(long, default_value_t = 3)]
    points: usize,
}

struct Failure {
    code: i32,
    message: String,
}

fn usage(message: impl ToString) -> Failure {
    Failure {
        code: 2,
        message: message.to_string(),
    }
}

fn invalid(message: impl ToString) -> Failure {
    Failure {
        code: 1,
        message: message.to_string(),
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Parse `args` (including the program name) and run; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    2
                }
            };
        }
    };
    match dispatch(&cli, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cli: &Cli, out: &mut dyn Write) -> Outcome {
    let mut w = Output {
        out,
        json: cli.json,
    };
    match &cli.command {
        Command::Trace(a) => trace(a, &mut w),
        Command::Classify(a) => classify(a, &mut w),
        Command::Detect(a) => detect(a, &mut w),
        Command::Parallels(a) => parallels(a, &mut w),
        Command::Tangent(a) => tangent(a, false, &mut w),
        Command::Cotangent(a) => tangent(a, true, &mut w),
        Command::Fiber(a) => fiber(a, &mut w),
        Command::Normcheck(a) => normcheck(a, &mut w),
        Command::Kahler(a) => kahler(a, &mut w),
    }
}

struct Output<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

impl Output<'_> {
    fn line(&mut self, s: impl AsRef<str>) -> std::result::Result<(), Failure> {
        writeln!(self.out, "{}", s.as_ref()).map_err(invalid)
    }

    fn json<T: Serialize>(&mut self, v: &T) -> std::result::Result<(), Failure> {
        let s = serde_json::to_string_pretty(v).map_err(invalid)?;
        self.line(s)
    }
}

fn tolerance(default: f64) -> std::result::Result<f64, Failure> {
    match std::env::var(TOL_ENV) {
        Err(_) => Ok(default),
        Ok(s) => match s.trim().parse::<f64>() {
            Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
            _ => Err(usage(format!(
                "{TOL_ENV} must be a positive number, got `{s}`"
            ))),
        },
    }
}

fn parse_omega(text: &str) -> std::result::Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|t| {
            parse_angle(t)
                .ok_or_else(|| usage(format!("cannot parse angle literal `{}`", t.trim())))
        })
        .collect()
}

fn parse_axes(text: &str) -> std::result::Result<Vec<usize>, Failure> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("cannot parse axis `{}`", t.trim())))
        })
        .collect()
}

/// `"1,0;0,4"` as a square matrix.
fn parse_matrix(text: &str) -> std::result::Result<DMatrix<f64>, Failure> {
    let rows: Vec<Vec<f64>> = text
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map_err(|_| usage(format!("cannot parse matrix entry `{}`", x.trim())))
                })
                .collect()
        })
        .collect::<std::result::Result<_, _>>()?;
    let n = rows.len();
    if rows.iter().any(|r| r.len() != n) {
        return Err(usage(format!("matrix `{text}` is not square")));
    }
    Ok(DMatrix::from_fn(n, n, |i, j| rows[i][j]))
}

fn load(path: &PathBuf) -> std::result::Result<LoadedScene, Failure> {
    load_scene(path).map_err(|e| invalid(format!("{}: {e}", path.display())))
}

fn fmt_vec(v: &[f64]) -> String {
    let parts: Vec<String> = v.iter().map(|x| format!("{x:.6}")).collect();
    format!("({})", parts.join(", "))
}

fn trace(a: &TraceArgs, w: &mut Output) -> Outcome {
    let LoadedScene { scene, rays } = load(&a.scene)?;
    let results = trace_batch(&scene, &rays, a.max_events);
    let mut ok = Vec::new();
    let mut failed = Vec::new();
    for (i, r) in results.iter().enumerate() {
        match r {
            Ok(t) => ok.push((i, t)),
            Err(e) => failed.push((i, e.to_string())),
        }
    }

    if let Some(p) = &a.csv {
        fs::write(p, trace_csv(scene.dimension(), &ok))
            .map_err(|e| invalid(format!("{}: {e}", p.display())))?;
    }
    if let Some(p) = &a.svg {
        let svg = trace_svg(&scene, &ok).map_err(invalid)?;
        fs::write(p, svg).map_err(|e| invalid(format!("{}: {e}", p.display())))?;
    }

    if w.json {
        #[derive(Serialize)]
        struct Entry<'a> {
            ray: usize,
            #[serde(skip_serializing_if = "Option::is_none")]
            trace: Option<&'a crate::geodesics::RayTrace>,
            #[serde(skip_serializing_if = "Option::is_none")]
            error: Option<String>,
        }
        let entries: Vec<Entry> = results
            .iter()
            .enumerate()
            .map(|(i, r)| Entry {
                ray: i,
                trace: r.as_ref().ok(),
                error: r.as_ref().err().map(|e| e.to_string()),
            })
            .collect();
        w.json(&entries)?;
    } else {
        for (i, r) in results.iter().enumerate() {
            match r {
                Ok(t) => {
                    w.line(format!(
                        "ray {i}: {} segment(s), {} event(s), {:?}",
                        t.segments(),
                        t.events.len(),
                        t.termination
                    ))?;
                    for e in &t.events {
                        w.line(format!(
                            "  charge {} at {}: theta {} -> {}",
                            e.charge,
                            fmt_vec(&t.vertices[e.vertex]),
                            fmt_vec(e.incoming.angles()),
                            fmt_vec(e.outgoing.angles())
                        ))?;
                    }
                }
                Err(e) => w.line(format!("ray {i}: error: {e}"))?,
            }
        }
    }
    if let Some((i, e)) = failed.first() {
        return Err(invalid(format!("ray {i}: {e}")));
    }
    Ok(0)
}

fn classify(a: &ClassifyArgs, w: &mut Output) -> Outcome {
    #[derive(Serialize)]
    struct Row {
        omega: OmegaValue,
        class: PointClass,
        euclidean: bool,
        identity_mapping: bool,
    }
    let raws: Vec<Vec<f64>> = match (&a.omega, &a.scene) {
        (Some(o), _) => vec![parse_omega(o)?],
        (None, Some(p)) => load(p)?
            .scene
            .charges()
            .iter()
            .map(|c| c.omega.components().to_vec())
            .collect(),
        (None, None) => return Err(usage("one of --omega or --scene is required")),
    };
    let mut rows = Vec::new();
    for raw in raws {
        let omega = OmegaValue::reduce(&raw).map_err(usage)?;
        let identity_mapping = is_identity_mapping(&raw).map_err(usage)?;
        rows.push(Row {
            class: omega.classify(),
            euclidean: omega.is_euclidean(),
            omega,
            identity_mapping,
        });
    }
    if w.json {
        w.json(&rows)?;
    } else {
        for r in &rows {
            w.line(format!("omega = {}", fmt_vec(r.omega.components())))?;
            w.line(format!("class = {}", r.class))?;
            w.line(format!("identity mapping: {}", r.identity_mapping))?;
        }
    }
    Ok(0)
}

fn parse_smoothness(s: &str) -> std::result::Result<Smoothness, Failure> {
    match s.trim() {
        "inf" | "infinity" | "smooth" | "∞" => Ok(Smoothness::Infinite),
        t => t
            .parse::<u32>()
            .map(Smoothness::Finite)
            .map_err(|_| usage(format!("bad smoothness `{s}`"))),
    }
}

fn detect(a: &DetectArgs, w: &mut Output) -> Outcome {
    let scene = load(&a.scene)?.scene;
    match &a.smoothness {
        Some(s) => {
            let report = validate_differential_structure(&scene, parse_smoothness(s)?);
            if w.json {
                w.json(&report)?;
            } else {
                print_detection(&report.detection, w)?;
                w.line(format!(
                    "structure condition: {}",
                    report.structure_condition
                ))?;
                w.line(format!(
                    "omega smoothness ({}): {}",
                    report.smoothness, report.omega_condition_declared
                ))?;
                w.line(format!("denial condition: {}", report.denial_condition))?;
                for warning in &report.warnings {
                    w.line(format!("warning: {warning}"))?;
                }
                w.line(format!("conclusion: {}", report.conclusion))?;
            }
        }
        None => {
            let report = detect_smarandache(&scene);
            if w.json {
                w.json(&report)?;
            } else {
                print_detection(&report, w)?;
            }
        }
    }
    Ok(0)
}

fn print_detection(
    r: &crate::geodesics::DetectionReport,
    w: &mut Output,
) -> std::result::Result<(), Failure> {
    w.line(format!("verdict: {}", r.verdict))?;
    w.line(r.summary.as_str())?;
    for x in &r.witnesses {
        w.line(format!(
            "  witness {} / {} on axis {}: {} ({} vs {})",
            x.first, x.second, x.axis, x.rule, x.behaviour.0, x.behaviour.1
        ))?;
    }
    Ok(())
}

fn parallels(a: &ParallelArgs, w: &mut Output) -> Outcome {
    let omega = OmegaValue::reduce(&parse_omega(&a.omega)?).map_err(usage)?;
    let class = omega.classify();
    let count = count_local_parallels(&class, a.axis).map_err(usage)?;
    if w.json {
        #[derive(Serialize)]
        struct Out {
            class: PointClass,
            axis: usize,
            parallels: crate::geodesics::ParallelCount,
        }
        w.json(&Out {
            class,
            axis: a.axis,
            parallels: count,
        })?;
    } else {
        w.line(format!("class = {class}"))?;
        w.line(format!("axis {}: {count}", a.axis))?;
    }
    Ok(0)
}

fn point_class(a: &SpaceArgs) -> std::result::Result<PointClass, Failure> {
    if let Some(o) = &a.omega {
        let omega = OmegaValue::reduce(&parse_omega(o)?).map_err(usage)?;
        if let Some(n) = a.n.filter(|&n| n != omega.dim()) {
            return Err(usage(format!(
                "--n {n} does not match omega of dimension {}",
                omega.dim()
            )));
        }
        return Ok(omega.classify());
    }
    let n = a.n.ok_or_else(|| usage("--n is required"))?;
    let axes = match &a.euclidean {
        Some(s) => parse_axes(s)?,
        None => Vec::new(),
    };
    PointClass::with_euclidean_axes(n, &axes).map_err(usage)
}

fn braces<T: std::fmt::Display>(items: &[T]) -> String {
    let parts: Vec<String> = items.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

fn tangent(a: &SpaceArgs, co: bool, w: &mut Output) -> Outcome {
    let class = point_class(a)?;
    let t = tangent_space(&class);
    if !co {
        if w.json {
            w.json(&t)?;
        } else {
            w.line(format!("class = {class}"))?;
            w.line(format!("dim = {}", t.dimension()))?;
            w.line(format!("basis = {}", braces(&t.basis)))?;
        }
        return Ok(0);
    }
    let c = cotangent_space(&class);
    let m = pairing_matrix(&c, &t).map_err(invalid)?;
    if w.json {
        #[derive(Serialize)]
        struct Out<'a> {
            cotangent: &'a crate::tangent::CotangentSpaceModel,
            pairing: &'a [Vec<u8>],
        }
        w.json(&Out {
            cotangent: &c,
            pairing: &m,
        })?;
    } else {
        w.line(format!("class = {class}"))?;
        w.line(format!("dim = {}", c.dimension()))?;
        w.line(format!("basis = {}", braces(&c.basis)))?;
        w.line("pairing with tangent basis:")?;
        for row in &m {
            let r: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            w.line(format!("  {}", r.join(" ")))?;
        }
    }
    Ok(0)
}

fn fiber(a: &FiberArgs, w: &mut Output) -> Outcome {
    let spec = PfbSpec {
        dim_p: a.dim_p,
        dim_m: a.dim_m,
        group_dim: a.group_dim,
        lambda_p: a.lambda,
    };
    let valid = match validate_pfb(spec) {
        Ok(v) => v,
        Err(violations) => {
            if w.json {
                w.json(&violations)?;
            } else {
                for v in &violations {
                    w.line(format!("violation: {v}"))?;
                }
            }
            return Err(invalid(format!(
                "{} constraint(s) violated",
                violations.len()
            )));
        }
    };
    let d = vertical_dimension(&valid).map_err(invalid)?;
    if w.json {
        w.json(&d)?;
    } else {
        w.line(format!("mu = {}, lambda_M = {}", d.mu, d.lambda_m))?;
        w.line(format!("dim T_pP = {}", d.total_tangent))?;
        w.line(format!("dim H_p = {}", d.horizontal))?;
        w.line(format!("dim V_p = {}", d.vertical))?;
        w.line(format!("dim P - dim M = {}", a.dim_p - a.dim_m))?;
        w.line(if d.euclidean_point {
            "dim V_p = dim P - dim M: the point is euclidean"
        } else {
            "dim V_p != dim P - dim M: the point is not euclidean"
        })?;
    }
    Ok(0)
}

fn norm_candidate(spec: &str, dim: usize) -> std::result::Result<NormCandidate, Failure> {
    let (name, arg) = match spec.split_once(':') {
        Some((n, a)) => (n, Some(a)),
        None => (spec, None),
    };
    match (name, arg) {
        ("euclidean", None) => Ok(NormCandidate::euclidean(dim)),
        ("quartic-mean", None) => Ok(NormCandidate::quartic_mean(dim)),
        ("linear", a) => {
            let axis = a
                .map(|s| s.trim().parse::<usize>())
                .transpose()
                .map_err(|_| usage("bad linear axis"))?;
            NormCandidate::linear_coordinate(dim, axis.unwrap_or(1)).map_err(usage)
        }
        ("quadratic", Some(m)) => NormCandidate::quadratic(parse_matrix(m)?).map_err(usage),
        _ => Err(usage(format!("unknown norm `{spec}`"))),
    }
}

fn normcheck(a: &NormArgs, w: &mut Output) -> Outcome {
    let norm = norm_candidate(&a.norm, a.dim)?;
    if a.samples == 0 {
        return Err(usage("--samples must be positive"));
    }
    let samples = generic_directions(norm.dimension(), a.samples, a.seed);
    let cfg = MinkowskiCheck::with_tol(tolerance(HOMOGENEITY_TOL)?);
    let report = check_minkowski_norm(&norm, &samples, &cfg).map_err(invalid)?;
    let probe = riemann_probe(&norm, &samples, DEFAULT_STEP, RIEMANN_TOL).map_err(invalid)?;
    let flat = Scene::new(
        norm.dimension().max(2),
        vec![],
        1.0,
        Bounds::new(
            vec![-1.0; norm.dimension().max(2)],
            vec![1.0; norm.dimension().max(2)],
        )
        .map_err(invalid)?,
    )
    .map_err(invalid)?;
    let class = classify_geometry(&detect_smarandache(&flat), &report, &probe, None);

    if w.json {
        #[derive(Serialize)]
        struct Out<'a> {
            minkowski: &'a crate::finsler::MinkowskiReport,
            riemann: &'a crate::finsler::RiemannProbe,
            classification: &'a crate::finsler::Classification,
        }
        w.json(&Out {
            minkowski: &report,
            riemann: &probe,
            classification: &class,
        })?;
    } else {
        w.line(format!(
            "norm: {} (dimension {}, {} samples)",
            report.label,
            norm.dimension(),
            report.samples
        ))?;
        w.line(format!("nonnegative: {}", report.nonnegative))?;
        w.line(format!(
            "homogeneous: {} (max residual {:.3e}, tol {:.1e})",
            report.homogeneous, report.max_homogeneity_residual, cfg.homogeneity_tol
        ))?;
        w.line(format!(
            "positive definite: {} (min eigenvalue {:.6e})",
            report.positive_definite, report.min_eigenvalue
        ))?;
        for f in report.failures.iter().take(5) {
            w.line(format!(
                "  {} fails at {}: {}",
                f.property,
                fmt_vec(&f.sample),
                f.detail
            ))?;
        }
        w.line(format!(
            "minkowski norm: {}",
            if report.passed { "PASS" } else { "FAIL" }
        ))?;
        w.line(format!(
            "g_y independent of y: {} (max variation {:.3e})",
            probe.y_independent, probe.max_variation
        ))?;
        w.line(format!("classification: {}", class.class))?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

fn kahler(a: &KahlerArgs, w: &mut Output) -> Outcome {
    let tol = tolerance(1e-9)?;
    let (metric, n): (MetricField, usize) = match (&a.metric, &a.field) {
        (Some(m), _) => {
            let g = parse_matrix(m)?;
            if g.nrows() % 2 != 0 {
                return Err(usage(format!(
                    "metric must have even size, got {}",
                    g.nrows()
                )));
            }
            let n = g.nrows() / 2;
            if let Some(k) = a.n.filter(|&k| k != n) {
                return Err(usage(format!(
                    "--n {k} does not match a {0}x{0} metric",
                    g.nrows()
                )));
            }
            (Box::new(move |_: &[f64]| g.clone()), n)
        }
        (None, Some(name)) => {
            let n = a.n.unwrap_or(1);
            let f = named_metric(name, n)
                .ok_or_else(|| usage(format!("unknown metric field `{name}`")))?;
            (f, n)
        }
        (None, None) => return Err(usage("one of --metric or --field is required")),
    };
    if n == 0 {
        return Err(usage("complex dimension must be positive"));
    }
    let grid = Lattice::new(
        vec![a.lattice_min; 2 * n],
        vec![a.lattice_max; 2 * n],
        a.points,
    )
    .map_err(usage)?;
    let report = kahler_check(metric, n, &grid, tol).map_err(invalid)?;
    if w.json {
        w.json(&report)?;
    } else {
        w.line(format!(
            "complex dimension {n}, {} lattice point(s)",
            report.points_checked
        ))?;
        for (name, c) in [
            ("positive definite", &report.positive_definite),
            ("J-invariant", &report.j_invariant),
            ("kappa antisymmetric", &report.antisymmetric),
            ("d kappa = 0", &report.closed),
        ] {
            w.line(format!(
                "{name}: {} (max residual {:.3e})",
                c.passed, c.max_residual
            ))?;
            if let Some(f) = &c.failure {
                let at = match &f.witness {
                    Some((u, v)) => format!(" witness ({u}, {v})"),
                    None => String::new(),
                };
                w.line(format!(
                    "  fails at {}{at}: {}",
                    fmt_vec(&f.location),
                    f.detail
                ))?;
            }
        }
        w.line(format!(
            "kahler: {}",
            if report.passed { "PASS" } else { "FAIL" }
        ))?;
        w.line(format!("note: {}", report.note))?;
    }
    Ok(if report.passed { 0 } else { 1 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("pseudogeo").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn help_and_usage() {
        assert_eq!(run_str(&["--help"]).0, 0);
        assert_eq!(run_str(&["--version"]).0, 0);
        assert_eq!(run_str(&[]).0, 2);
        assert_eq!(run_str(&["bogus"]).0, 2);
        assert_eq!(run_str(&["classify", "--omega", "xyz"]).0, 2);
    }

    #[test]
    fn tangent_dim() {
        let (code, out, _) = run_str(&["tangent", "--n", "2", "--euclidean", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("dim = 3"));
        assert!(out.contains("{∂/∂x1, ∂⁻/∂x2, ∂⁺/∂x2}"));
    }

    #[test]
    fn classify_negative_literal() {
        let (code, out, _) = run_str(&["classify", "--omega", "-0.5pi,2pi"]);
        assert_eq!(code, 0, "{out}");
        assert!(out.contains("hyperbolic, euclidean"));
    }

    #[test]
    fn fiber_report() {
        let (code, out, _) = run_str(&["fiber", "--dim-p", "4", "--dim-m", "2", "--lambda", "4"]);
        assert_eq!(code, 0);
        assert!(out.contains("dim V_p = 2"));
        assert!(out.contains("is euclidean"));
        assert_eq!(
            run_str(&["fiber", "--dim-p", "3", "--dim-m", "2", "--lambda", "1"]).0,
            1
        );
    }

    #[test]
    fn norm_and_kahler_exit_codes() {
        assert_eq!(run_str(&["normcheck", "--norm", "euclidean"]).0, 0);
        assert_eq!(run_str(&["normcheck", "--norm", "linear"]).0, 1);
        assert_eq!(run_str(&["normcheck", "--norm", "quadratic:1,0;0,4"]).0, 0);
        assert_eq!(run_str(&["kahler", "--metric", "1,0;0,1"]).0, 0);
        let (code, out, _) = run_str(&["kahler", "--metric", "1,0;0,2"]);
        assert_eq!(code, 1);
        assert!(out.contains("witness (e1, e1)"), "{out}");
    }
}

//! Command-line front end: model files, subcommands, JSON reports and SVG.

pub mod model_file;
pub mod render;
pub mod report_file;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::Value;

use crate::decide::{
    analyze, certify_polytope, decide_theorem1, Agreement, CertCheck, DecideOptions, Decision, NotPolytopeReason, Report,
};
use crate::ifs::{brute_force_vertices, ledger_at, step_hull, EpAddress, IfsModel, VertexLedger};
use crate::numeric::{Scalar, Vector};
use crate::spectral::{compute_bound_k, inverse_spectrum, BoundMode, BoundOutcome};

pub use model_file::{parse_model, AnyModel, InputError, LoadedModel, ModelFile, ModelOptions, RunSettings};
pub use render::{hull_outline, render_svg, write_svg, Overlay, RenderError, MAX_SAMPLES};
pub use report_file::{
    BoundFile, CertificationFile, CheckFile, DecisionFile, EigenFile, NormalFile, ReportFile, SwFile, VertexFile,
    REPORT_VERSION,
};

use model_file::scalar_entry;
use report_file::texts;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_DISAGREE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fractal-hull",
    version,
    about = "Decide whether the convex hull of a self-affine fractal is a polytope"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full decision with certification and the facet-normal cross-check.
    Analyze {
        #[arg(required = true)]
        models: Vec<PathBuf>,
        /// Write the JSON report here (single model only).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Eigenvalues of T^-1, the rational-angle set U and the step bound k.
    Bound { model: PathBuf },
    /// Vertex counts of conv(A_k) for k = 1..steps.
    Iterate {
        model: PathBuf,
        #[arg(long)]
        steps: usize,
    },
    /// Compare the vertex recursion with full enumeration.
    Oracle {
        model: PathBuf,
        #[arg(long)]
        steps: usize,
    },
    /// Certify an externally supplied vertex list.
    Certify {
        model: PathBuf,
        #[arg(long)]
        vertices: PathBuf,
    },
    /// Render sampled attractor points and hull outlines to SVG.
    Render {
        model: PathBuf,
        #[arg(long)]
        steps: usize,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the seed from the model file.
        #[arg(long)]
        seed: Option<u64>,
    },
}

macro_rules! with_model {
    ($any:expr, $m:ident => $body:expr) => {
        match $any {
            AnyModel::Rational($m) => $body,
            AnyModel::Float($m) => $body,
        }
    };
}

/// Output of one command: exit code plus what goes to stdout and stderr.
#[derive(Debug, Default)]
struct Output {
    code: i32,
    out: String,
    err: String,
}

impl Output {
    fn input_error(e: impl std::fmt::Display) -> Self {
        Output {
            code: EXIT_INPUT,
            out: String::new(),
            err: format!("error: {e}\n"),
        }
    }
}

/// Run the CLI on `args` (including the program name), writing to the
/// given streams. Returns the exit code.
pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let result = execute(cli.command);
    let _ = stdout.write_all(result.out.as_bytes());
    let _ = stderr.write_all(result.err.as_bytes());
    result.code
}

/// Run the CLI on the process arguments.
pub fn run() -> i32 {
    run_with(std::env::args_os(), &mut std::io::stdout(), &mut std::io::stderr())
}

fn execute(command: Command) -> Output {
    match command {
        Command::Analyze { models, json } => cmd_analyze(models, json),
        Command::Bound { model } => load_then(&model, |m| with_model!(&m.model, x => cmd_bound(x))),
        Command::Iterate { model, steps } => load_then(&model, |m| with_model!(&m.model, x => cmd_iterate(x, steps))),
        Command::Oracle { model, steps } => {
            load_then(&model, |m| with_model!(&m.model, x => cmd_oracle(x, steps, m.settings.enum_budget)))
        }
        Command::Certify { model, vertices } => load_then(&model, |m| {
            with_model!(&m.model, x => cmd_certify(x, &vertices))
        }),
        Command::Render {
            model,
            steps,
            points,
            out,
            seed,
        } => load_then(&model, |m| {
            let seed = seed.unwrap_or(m.settings.seed);
            let opts = decide_options(&m.settings);
            with_model!(&m.model, x => cmd_render(x, &opts, steps, points, seed, &out))
        }),
    }
}

fn load_then(path: &Path, f: impl FnOnce(&LoadedModel) -> Output) -> Output {
    match parse_model(path) {
        Ok(m) => f(&m),
        Err(e) => Output::input_error(format!("{}: {e}", path.display())),
    }
}

fn decide_options(settings: &RunSettings) -> DecideOptions {
    DecideOptions {
        bound_mode: settings.bound_mode,
        ..DecideOptions::default()
    }
}

fn fmt_point<S: Scalar>(v: &Vector<S>) -> String {
    format!("({})", texts(v).join(", "))
}

/// First line of `analyze` output.
pub fn summary_line<S: Scalar>(model: &IfsModel<S>, report: &Report<S>) -> String {
    let k = report.bound_k().map_or_else(|| "-".to_string(), |k| k.to_string());
    match &report.decision {
        Decision::Polytope {
            vertices,
            stabilization_index,
            certified,
        } => format!(
            "POLYTOPE ({}), {} vertices, i={stabilization_index}, k={k}",
            if *certified { "certified" } else { "numerically consistent" },
            vertices.len()
        ),
        Decision::NotPolytope(NotPolytopeReason::EmptyU) => format!(
            "NOT A POLYTOPE (U empty, denominators ≤ {})",
            model.tolerance().denom_max
        ),
        Decision::NotPolytope(NotPolytopeReason::NoStabilizationWithinBound(k)) => {
            format!("NOT A POLYTOPE (no stabilization within k={k})")
        }
        Decision::Inconclusive { reason } => format!("INCONCLUSIVE ({reason})"),
    }
}

fn cmd_analyze(mut paths: Vec<PathBuf>, json: Option<PathBuf>) -> Output {
    if json.is_some() && paths.len() > 1 {
        return Output::input_error("--json takes a single model");
    }
    paths.sort();
    let results: Vec<Output> = paths
        .par_iter()
        .map(|path| {
            load_then(path, |m| {
                let opts = decide_options(&m.settings);
                with_model!(&m.model, x => analyze_one(x, &opts, json.as_deref()))
            })
        })
        .collect();
    let many = paths.len() > 1;
    let mut total = Output::default();
    for (path, r) in paths.iter().zip(results) {
        if many {
            total.out.push_str(&format!("== {}\n", path.display()));
        }
        total.out.push_str(&r.out);
        total.err.push_str(&r.err);
        total.code = total.code.max(r.code);
    }
    total
}

fn analyze_one<S: Scalar>(model: &IfsModel<S>, opts: &DecideOptions, json: Option<&Path>) -> Output {
    let report = analyze(model, opts);
    let mut o = Output::default();
    o.out.push_str(&summary_line(model, &report));
    o.out.push('\n');
    describe_bound(&mut o.out, &report.bound, report.bound_mode);
    let counts: Vec<String> = report.counts.iter().map(|c| c.count.to_string()).collect();
    if !counts.is_empty() {
        o.out.push_str(&format!("counts #V_1..: {}\n", counts.join(" ")));
    }
    if let Decision::Polytope { vertices, .. } = &report.decision {
        for (addr, v) in vertices {
            o.out.push_str(&format!("  {}  {addr}\n", fmt_point(&model.to_original(v))));
        }
    }
    if let Some(c) = &report.cross_check {
        o.out.push_str(&format!("facet-normal criterion: {:?} ({:?})\n", c.sw.verdict, c.agreement));
        if c.agreement == Agreement::Disagree {
            o.code = EXIT_DISAGREE;
        }
    }
    for w in &report.warnings {
        o.out.push_str(&format!("note: {w}\n"));
    }
    o.err.push_str(&format!("elapsed: {:.3} ms\n", report.elapsed.as_secs_f64() * 1e3));
    if let Some(path) = json {
        let file = ReportFile::from_report(model, &report);
        if let Err(e) = std::fs::write(path, file.to_json()) {
            return Output::input_error(format!("cannot write {}: {e}", path.display()));
        }
    }
    o
}

fn describe_bound(out: &mut String, bound: &BoundOutcome, mode: BoundMode) {
    match bound {
        BoundOutcome::EmptyU => out.push_str("U = {} (no eigenvalue of T^-1 has a rational angle)\n"),
        BoundOutcome::Bound(b) => {
            let members: Vec<String> = b
                .members
                .iter()
                .map(|c| {
                    let r = c.rational_angle.expect("member of U");
                    format!("{:.6}{:+.6}i (pi*{}/{})", c.lambda.re, c.lambda.im, r.p, r.n)
                })
                .collect();
            out.push_str(&format!("U = {{{}}}\n", members.join(", ")));
            out.push_str(&format!("k = {} ({})\n", b.k, mode_name(mode)));
        }
    }
}

fn mode_name(mode: BoundMode) -> &'static str {
    match mode {
        BoundMode::Product => "product",
        BoundMode::Lcm => "lcm",
    }
}

fn cmd_bound<S: Scalar>(model: &IfsModel<S>) -> Output {
    let classes = inverse_spectrum(model.matrix(), model.tolerance());
    let mut o = Output::default();
    o.out.push_str("eigenvalues of T^-1:\n");
    for c in &classes {
        let angle = match c.rational_angle {
            Some(r) => format!("pi*{}/{}", r.p, r.n),
            None => format!("irrational up to denominator {}", model.tolerance().denom_max),
        };
        o.out.push_str(&format!(
            "  {:.6}{:+.6}i  |lambda| = {:.6}  arg = {:.9} ({angle})\n",
            c.lambda.re, c.lambda.im, c.modulus, c.angle
        ));
    }
    for mode in [BoundMode::Product, BoundMode::Lcm] {
        match compute_bound_k(&classes, mode) {
            BoundOutcome::Bound(b) => o.out.push_str(&format!("k = {} ({})\n", b.k, mode_name(mode))),
            BoundOutcome::EmptyU => {
                o.out.push_str("U = {}: not a polytope\n");
                break;
            }
        }
    }
    o
}

fn cmd_iterate<S: Scalar>(model: &IfsModel<S>, steps: usize) -> Output {
    let mut o = Output::default();
    o.out.push_str("k\t#V_k\thausdorff_delta\n");
    let mut ledger = VertexLedger::initial(model);
    for _ in 0..steps {
        let next = step_hull(model, &ledger);
        let delta = crate::hull::hausdorff(ledger.hull(), next.hull());
        o.out.push_str(&format!("{}\t{}\t{delta:.6e}\n", next.step(), next.len()));
        ledger = next;
    }
    o
}

fn sorted_points<S: Scalar>(mut pts: Vec<Vector<S>>) -> Vec<Vector<S>> {
    pts.sort_by(|a, b| a.lex_cmp(b));
    pts
}

fn cmd_oracle<S: Scalar>(model: &IfsModel<S>, steps: usize, budget: u64) -> Output {
    let mut o = Output::default();
    let mut ledger = VertexLedger::initial(model);
    for k in 1..=steps {
        ledger = step_hull(model, &ledger);
        let oracle = match brute_force_vertices(model, k, budget) {
            Ok(p) => p,
            Err(e) => return Output::input_error(e),
        };
        let recursion = sorted_points(ledger.points());
        let full = sorted_points(oracle.vertices().to_vec());
        if recursion != full {
            o.code = EXIT_DISAGREE;
            o.out.push_str(&format!(
                "MISMATCH at step {k}: recursion {} vertices, enumeration {} vertices\n",
                recursion.len(),
                full.len()
            ));
            return o;
        }
    }
    o.out.push_str(&format!("match: {} vertices\n", ledger_at(model, steps).len()));
    o
}

fn parse_vertices<S: Scalar>(model: &IfsModel<S>, text: &str) -> Result<Vec<(EpAddress, Vector<S>)>, String> {
    let doc: Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
    let items = match &doc {
        Value::Array(items) => items,
        Value::Object(map) => match map.get("vertices") {
            Some(Value::Array(items)) => items,
            _ => return Err("expected an array or an object with a \"vertices\" array".into()),
        },
        _ => return Err("expected an array or an object with a \"vertices\" array".into()),
    };
    items
        .iter()
        .map(|item| {
            let v: VertexFile = serde_json::from_value(item.clone()).map_err(|e| e.to_string())?;
            if v.period.is_empty() {
                return Err("empty period".into());
            }
            let coords = v
                .point
                .iter()
                .map(|c| scalar_entry::<S>(&Value::String(c.clone())))
                .collect::<Result<Vec<S>, _>>()?;
            if coords.len() != model.dim() {
                return Err(format!("point of dimension {} in a {}-dimensional model", coords.len(), model.dim()));
            }
            let point = model.from_original(&Vector::new(coords));
            Ok((EpAddress::new(v.prefix, v.period), point))
        })
        .collect()
}

fn cmd_certify<S: Scalar>(model: &IfsModel<S>, path: &Path) -> Output {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Output::input_error(format!("cannot read {}: {e}", path.display())),
    };
    let candidates = match parse_vertices(model, &text) {
        Ok(c) if !c.is_empty() => c,
        Ok(_) => return Output::input_error("no candidate vertices"),
        Err(e) => return Output::input_error(format!("{}: {e}", path.display())),
    };
    let cert = certify_polytope(model, &candidates, None);
    let mut o = Output::default();
    let line = if cert.certified {
        format!("CERTIFIED: {} vertices\n", candidates.len())
    } else if cert.consistent {
        format!("NUMERICALLY CONSISTENT: {} vertices (tolerance {:e})\n", candidates.len(), cert.tolerance)
    } else {
        format!("NOT CERTIFIED: failed {}\n", cert.failed_checks().join(", "))
    };
    o.out.push_str(&line);
    for check in cert.transcript.iter().filter(|c| !c.passed()) {
        let line = match check {
            CertCheck::Evaluation { candidate, evaluated, .. } => format!(
                "candidate {candidate} does not equal its address value {}",
                fmt_point(&model.to_original(evaluated))
            ),
            CertCheck::Extremality { candidate, .. } => format!("candidate {candidate} is not a vertex"),
            CertCheck::Containment {
                candidate, digit, image, ..
            } => format!(
                "map {digit} sends candidate {candidate} to {}, outside the hull",
                fmt_point(&model.to_original(image))
            ),
        };
        o.out.push_str(&format!("  {line}\n"));
    }
    o
}

fn cmd_render<S: Scalar>(
    model: &IfsModel<S>,
    opts: &DecideOptions,
    steps: usize,
    points: usize,
    seed: u64,
    out: &Path,
) -> Output {
    let report = decide_theorem1(model, opts);
    let hull_steps = match &report.decision {
        Decision::Polytope {
            stabilization_index, ..
        } => stabilization_index + 1,
        _ => report.counts.len(),
    }
    .min(steps);
    let mut overlay = Overlay::default();
    let mut ledger = VertexLedger::initial(model);
    for _ in 0..hull_steps {
        ledger = step_hull(model, &ledger);
        overlay.hulls.push(hull_outline(model, &ledger));
    }
    if let Decision::Polytope { vertices, .. } = &report.decision {
        overlay.vertices = vertices
            .iter()
            .map(|(_, v)| {
                let p = model.to_original(v).to_f64();
                [p[0], p.get(1).copied().unwrap_or(0.0)]
            })
            .collect();
    }
    let svg = match render_svg(model, steps, points, seed, &overlay) {
        Ok(s) => s,
        Err(e) => return Output::input_error(e),
    };
    if let Err(e) = write_svg(out, &svg) {
        return Output::input_error(e);
    }
    Output {
        code: EXIT_OK,
        out: format!("wrote {} ({points} points, {hull_steps} hulls)\n", out.display()),
        err: String::new(),
    }
}

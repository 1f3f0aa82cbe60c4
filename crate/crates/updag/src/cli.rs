//! The `updag` command line.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use updag_core::drawing::{verify_drawing, Drawing};
use updag_core::generators::{
    bins_from_values, gen_base, gen_g_ell, gen_gadget, gen_pathwidth2, gen_reduction, route_solution,
    verify_assignment, GadgetKind, GeneratorError, ReductionCase, ThreePartitionInstance,
};
use updag_core::layouts::bandwidth::bandwidth_crossing_bound;
use updag_core::layouts::{draw_bandwidth, draw_fan, draw_outerpath, exact_bandwidth, LayoutError};
use updag_core::outer1p::{oracle_o1p, test_upward_o1p, O1pError, O1pOutcome, Stage, O1P_ORACLE_LIMIT};
use updag_core::upward::{oracle_upward_planar, OracleError, UPWARD_PLANAR_LIMIT};
use updag_core::Dag;

use crate::format::{read_dag, read_drawing, write_drawing, EmbeddingJson, FormatError};
use crate::random;
use crate::svg::{render_svg, SvgOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

/// Largest graph `draw bandwidth` computes an exact bandwidth for.
pub const BANDWIDTH_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub exit_code: i32,
    /// Human-readable report, or the artifact itself when no output file was
    /// given.
    pub report: String,
    pub json: Value,
    /// Whether `--json` was requested.
    pub json_mode: bool,
}

impl CommandResult {
    /// What goes to standard output.
    pub fn stdout(&self) -> String {
        if self.json_mode {
            let mut s = serde_json::to_string_pretty(&self.json).expect("serializable");
            s.push('\n');
            s
        } else {
            self.report.clone()
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "updag", version, about = "Upward k-planar drawings of DAGs")]
struct Cli {
    /// Machine-readable JSON on standard output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DrawAlgorithm {
    Fan,
    Outerpath,
    Bandwidth,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OracleKind {
    O1p,
    UpwardPlanar,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph: g0, fan7, g_ell <l>, pathwidth2 <k>, parallel <b> <q>,
    /// gate <p>, chain <h> <q> <a>, random-dag <n> [p], random-fan <n>,
    /// random-outerpath <n>, random-single-source <n> [extra].
    Gen {
        family: String,
        params: Vec<String>,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Seed for random families (default: UPDAG_SEED, else 0).
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Draw a DAG file; the drawing is verified before it is written.
    Draw {
        algorithm: DrawAlgorithm,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Centre of the fan (default: the unique vertex adjacent to all others).
        #[arg(long)]
        center: Option<usize>,
    },
    /// Check that a drawing is simple, upward and k-planar.
    Verify {
        drawing: PathBuf,
        #[arg(short)]
        k: usize,
    },
    /// Test a single-source DAG for upward outer-1-planarity.
    TestO1p {
        input: PathBuf,
        /// Write the embedding JSON here when accepted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run an exhaustive oracle.
    Oracle {
        kind: OracleKind,
        input: PathBuf,
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Build the hard instance of a 3-Partition instance.
    Reduce {
        instance: PathBuf,
        #[arg(long, default_value_t = 1)]
        case: u8,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Route the paths of G_B through G_A for given bins (one bin per line).
    Route {
        instance: PathBuf,
        bins: PathBuf,
        #[arg(long, default_value_t = 1)]
        case: u8,
    },
    /// Render a drawing as SVG.
    Render {
        drawing: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        mark_crossings: bool,
    },
}

/// A failure with its exit code.
struct Failure {
    code: i32,
    message: String,
}

fn input_error(message: impl ToString) -> Failure {
    Failure { code: EXIT_INPUT, message: message.to_string() }
}

fn internal_error(message: impl ToString) -> Failure {
    Failure { code: EXIT_INTERNAL, message: message.to_string() }
}

impl From<FormatError> for Failure {
    fn from(e: FormatError) -> Self {
        input_error(e)
    }
}

impl From<GeneratorError> for Failure {
    fn from(e: GeneratorError) -> Self {
        input_error(e)
    }
}

impl From<LayoutError> for Failure {
    fn from(e: LayoutError) -> Self {
        if e.is_internal() {
            internal_error(e)
        } else {
            input_error(e)
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        input_error(e)
    }
}

/// Outcome of a subcommand before formatting.
struct Done {
    code: i32,
    report: String,
    json: Value,
}

fn ok(report: String, json: Value) -> Result<Done, Failure> {
    Ok(Done { code: EXIT_OK, report, json })
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn load_dag(path: &Path) -> Result<Dag, Failure> {
    Ok(read_dag(&read(path)?)?)
}

/// Runs the command line `argv` (program name first).
pub fn run<I, T>(argv: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let json_mode = argv.iter().any(|a| a == "--json");
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return CommandResult {
                exit_code: code,
                json: json!({ "ok": code == EXIT_OK, "error": text }),
                report: text,
                json_mode,
            };
        }
    };
    let done = match cli.command {
        Command::Gen { family, params, output, seed } => gen(&family, &params, output.as_deref(), seed),
        Command::Draw { algorithm, input, output, svg, center } => {
            draw(algorithm, &input, output.as_deref(), svg.as_deref(), center)
        }
        Command::Verify { drawing, k } => verify(&drawing, k),
        Command::TestO1p { input, output } => test_o1p(&input, output.as_deref()),
        Command::Oracle { kind, input, limit } => oracle(kind, &input, limit),
        Command::Reduce { instance, case, output } => reduce(&instance, case, output.as_deref()),
        Command::Route { instance, bins, case } => route(&instance, &bins, case),
        Command::Render { drawing, output, mark_crossings } => render(&drawing, output.as_deref(), mark_crossings),
    };
    match done {
        Ok(d) => CommandResult { exit_code: d.code, report: d.report, json: d.json, json_mode: cli.json },
        Err(f) => CommandResult {
            exit_code: f.code,
            json: json!({ "ok": false, "exit_code": f.code, "error": f.message }),
            report: format!("error: {}\n", f.message),
            json_mode: cli.json,
        },
    }
}

fn param<T: std::str::FromStr>(params: &[String], i: usize, name: &str) -> Result<T, Failure> {
    let s = params.get(i).ok_or_else(|| input_error(format!("missing parameter <{name}>")))?;
    s.parse().map_err(|_| input_error(format!("invalid <{name}>: {s:?}")))
}

fn gen(family: &str, params: &[String], output: Option<&Path>, seed: Option<u64>) -> Result<Done, Failure> {
    let seed = seed.unwrap_or_else(|| random::seed_from_env(0));
    let mut rng = random::rng(seed);
    let mut extra = json!({});
    let g = match family {
        "g0" | "fan7" => gen_base(family)?,
        "g_ell" => gen_g_ell(param(params, 0, "l")?)?,
        "pathwidth2" => gen_pathwidth2(param(params, 0, "k")?)?,
        "parallel" => gen_gadget(GadgetKind::Parallel { b: param(params, 0, "b")?, q: param(params, 1, "q")? })?.dag,
        "gate" => gen_gadget(GadgetKind::Gate { p: param(params, 0, "p")? })?.dag,
        "chain" => {
            let kind = GadgetKind::Chain { h: param(params, 0, "h")?, q: param(params, 1, "q")?, a: param(params, 2, "a")? };
            gen_gadget(kind)?.dag
        }
        "random-dag" => {
            let n = param(params, 0, "n")?;
            let p = if params.len() > 1 { param(params, 1, "p")? } else { 0.3 };
            if !(0.0..=1.0).contains(&p) {
                return Err(input_error("p must lie in [0, 1]"));
            }
            random::random_dag(&mut rng, n, p)
        }
        "random-single-source" => {
            let n: usize = param(params, 0, "n")?;
            let e = if params.len() > 1 { param(params, 1, "extra")? } else { n };
            random::random_single_source(&mut rng, n, e)
        }
        "random-fan" => {
            let n: usize = param(params, 0, "n")?;
            if n < 2 {
                return Err(input_error("a fan needs at least 2 vertices"));
            }
            let (f, c) = random::random_fan(&mut rng, n);
            extra = json!({ "center": c });
            f
        }
        "random-outerpath" => {
            let n: usize = param(params, 0, "n")?;
            if n < 3 {
                return Err(input_error("an outerpath needs at least 3 vertices"));
            }
            random::random_outerpath(&mut rng, n)
        }
        _ => return Err(input_error(format!("unknown family {family:?}"))),
    };
    let text = g.to_text();
    let mut json = json!({
        "ok": true, "family": family, "n": g.vertex_count(), "m": g.edge_count(),
        "max_degree": g.max_degree(), "seed": seed,
    });
    if let (Some(o), Some(e)) = (json.as_object_mut(), extra.as_object()) {
        o.extend(e.clone());
    }
    match output {
        Some(p) => {
            write(p, &text)?;
            json["output"] = json!(p.display().to_string());
            ok(format!("{family}: {} vertices, {} edges -> {}\n", g.vertex_count(), g.edge_count(), p.display()), json)
        }
        None => {
            json["dag"] = json!(text);
            ok(text, json)
        }
    }
}

fn fan_center(g: &Dag) -> Result<usize, Failure> {
    let n = g.vertex_count();
    let full: Vec<usize> = (0..n).filter(|&v| g.degree(v) + 1 == n).collect();
    match full.as_slice() {
        [c] => Ok(*c),
        // a triangle or an edge: any of them works as the centre
        [c, ..] if n <= 3 => Ok(*c),
        _ => Err(input_error("cannot infer the fan centre; pass --center")),
    }
}

fn draw(
    alg: DrawAlgorithm,
    input: &Path,
    output: Option<&Path>,
    svg: Option<&Path>,
    center: Option<usize>,
) -> Result<Done, Failure> {
    let g = load_dag(input)?;
    let (d, k, name): (Drawing, usize, &str) = match alg {
        DrawAlgorithm::Fan => {
            let c = match center {
                Some(c) if c < g.vertex_count() => c,
                Some(c) => return Err(input_error(format!("centre {c} out of range"))),
                None => fan_center(&g)?,
            };
            (draw_fan(&g, c)?, 2, "fan")
        }
        DrawAlgorithm::Outerpath => (draw_outerpath(&g)?, 2, "outerpath"),
        DrawAlgorithm::Bandwidth => {
            let lab = exact_bandwidth(&g, BANDWIDTH_LIMIT)?;
            let k = bandwidth_crossing_bound(&g, lab.width);
            (draw_bandwidth(&g, &lab)?, k, "bandwidth")
        }
    };
    let (good, report) = verify_drawing(&d, k).map_err(internal_error)?;
    if !good {
        return Err(internal_error(format!(
            "{name} drawing failed verification: upward={} simple={} max_per_edge={} (k = {k})",
            report.is_upward, report.is_simple, report.max_per_edge
        )));
    }
    let text = write_drawing(&d);
    let svg_text = match svg {
        Some(_) => Some(render_svg(&d, &SvgOptions::default()).map_err(internal_error)?),
        None => None,
    };
    let mut json = json!({
        "ok": true, "algorithm": name, "k": k, "crossings": report.crossing_count(),
        "max_per_edge": report.max_per_edge,
    });
    if let (Some(p), Some(s)) = (svg, &svg_text) {
        write(p, s)?;
        json["svg"] = json!(p.display().to_string());
    }
    match output {
        Some(p) => {
            write(p, &text)?;
            json["output"] = json!(p.display().to_string());
            let msg = format!(
                "{name}: verified upward {k}-planar, {} crossings, max {} per edge -> {}\n",
                report.crossing_count(),
                report.max_per_edge,
                p.display()
            );
            ok(msg, json)
        }
        None => {
            json["drawing"] = serde_json::from_str(&text).expect("own output parses");
            ok(text, json)
        }
    }
}

fn verify(path: &Path, k: usize) -> Result<Done, Failure> {
    let d = read_drawing(&read(path)?)?;
    let (good, r) = verify_drawing(&d, k).map_err(input_error)?;
    let json = json!({
        "ok": good, "k": k, "upward": r.is_upward, "simple": r.is_simple,
        "crossings": r.crossing_count(), "max_per_edge": r.max_per_edge,
        "per_edge": r.per_edge_count, "outer_vertices": r.outer_vertices,
    });
    let report = format!(
        "{}: upward={} simple={} crossings={} max_per_edge={} (k = {k})\n",
        if good { "verified" } else { "not verified" },
        r.is_upward,
        r.is_simple,
        r.crossing_count(),
        r.max_per_edge
    );
    Ok(Done { code: if good { EXIT_OK } else { EXIT_NO }, report, json })
}

fn stage_name(s: Stage) -> &'static str {
    match s {
        Stage::Structure => "structure",
        Stage::Skeleton => "skeleton",
        Stage::Consistency => "consistency",
    }
}

fn test_o1p(input: &Path, output: Option<&Path>) -> Result<Done, Failure> {
    let g = load_dag(input)?;
    let outcome = test_upward_o1p(&g).map_err(|e| match e {
        O1pError::UnsupportedInput(_) => input_error(e),
        O1pError::InconsistentChoice(_) => internal_error(e),
    })?;
    match outcome {
        O1pOutcome::Accepted(e) => {
            let emb = EmbeddingJson::from_embedding(&e);
            let mut json = json!({ "ok": true, "accepted": true, "crossings": e.crossing_count() });
            if let Some(p) = output {
                let mut text = serde_json::to_string_pretty(&emb).expect("serializable");
                text.push('\n');
                write(p, &text)?;
                json["output"] = json!(p.display().to_string());
            } else {
                json["embedding"] = serde_json::to_value(&emb).expect("serializable");
            }
            ok(format!("upward outer-1-planar: {} crossings\n", e.crossing_count()), json)
        }
        O1pOutcome::Rejected(r) => Ok(Done {
            code: EXIT_NO,
            report: format!(
                "not upward outer-1-planar: {} stage, block {}: {}\n",
                stage_name(r.stage),
                r.block,
                r.detail
            ),
            json: json!({
                "ok": false, "accepted": false, "stage": stage_name(r.stage),
                "block": r.block, "detail": r.detail,
            }),
        }),
    }
}

fn oracle(kind: OracleKind, input: &Path, limit: Option<usize>) -> Result<Done, Failure> {
    let g = load_dag(input)?;
    let (answer, name) = match kind {
        OracleKind::O1p => (oracle_o1p(&g, limit.unwrap_or(O1P_ORACLE_LIMIT))?, "upward outer-1-planar"),
        OracleKind::UpwardPlanar => {
            (oracle_upward_planar(&g, limit.unwrap_or(UPWARD_PLANAR_LIMIT))?, "upward planar")
        }
    };
    Ok(Done {
        code: if answer { EXIT_OK } else { EXIT_NO },
        report: format!("{}{name}\n", if answer { "" } else { "not " }),
        json: json!({ "ok": answer, "answer": answer, "property": name }),
    })
}

fn load_instance(path: &Path) -> Result<ThreePartitionInstance, Failure> {
    Ok(ThreePartitionInstance::parse(&read(path)?)?)
}

fn reduction_case(case: u8) -> Result<ReductionCase, Failure> {
    ReductionCase::from_number(case).ok_or_else(|| input_error(format!("case must be 1, 2 or 3, not {case}")))
}

fn reduce(instance: &Path, case: u8, output: Option<&Path>) -> Result<Done, Failure> {
    let inst = load_instance(instance)?;
    let r = gen_reduction(&inst, reduction_case(case)?)?;
    let h = &r.hard_instance;
    let text = h.to_text();
    let mut json = json!({
        "ok": true, "case": case, "b": inst.b, "w": inst.w, "n": h.vertex_count(), "m": h.edge_count(),
        "g_a": { "n": r.g_a.dag.vertex_count(), "m": r.g_a.dag.edge_count() },
        "g_b": { "n": r.g_b.dag.vertex_count(), "m": r.g_b.dag.edge_count() },
        "barriers": r.barriers.len(), "barrier_width": r.barrier_width,
    });
    match output {
        Some(p) => {
            write(p, &text)?;
            json["output"] = json!(p.display().to_string());
            let msg = format!(
                "hard instance (case {case}): {} vertices, {} edges -> {}\n",
                h.vertex_count(),
                h.edge_count(),
                p.display()
            );
            ok(msg, json)
        }
        None => {
            json["dag"] = json!(text);
            ok(text, json)
        }
    }
}

fn parse_bins(text: &str) -> Result<Vec<Vec<u64>>, Failure> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|t| t.parse::<u64>().map_err(|_| input_error(format!("not an integer in bins: {t:?}"))))
                .collect()
        })
        .collect()
}

fn route(instance: &Path, bins: &Path, case: u8) -> Result<Done, Failure> {
    let inst = load_instance(instance)?;
    let values = parse_bins(&read(bins)?)?;
    let r = gen_reduction(&inst, reduction_case(case)?)?;
    let no = |why: String| Done {
        code: EXIT_NO,
        report: format!("not a solution: {why}\n"),
        json: json!({ "ok": false, "valid": false, "issues": [why] }),
    };
    let bins = match bins_from_values(&inst, &values) {
        Ok(b) => b,
        Err(GeneratorError::NotASolution(why)) => return Ok(no(why)),
        Err(e) => return Err(e.into()),
    };
    let a = match route_solution(&r, &bins) {
        Ok(a) => a,
        Err(GeneratorError::NotASolution(why)) => return Ok(no(why)),
        Err(e) => return Err(e.into()),
    };
    let rep = verify_assignment(&r, &a);
    let lengths: Vec<usize> = a.crossings.iter().map(Vec::len).collect();
    let json = json!({ "ok": rep.is_valid(), "valid": rep.is_valid(), "path_crossings": lengths, "issues": rep.issues });
    if rep.is_valid() {
        ok(format!("valid routing: path crossings {lengths:?}\n"), json)
    } else {
        Err(internal_error(format!("routing of a solution failed verification: {:?}", rep.issues)))
    }
}

fn render(path: &Path, output: Option<&Path>, mark_crossings: bool) -> Result<Done, Failure> {
    let d = read_drawing(&read(path)?)?;
    let opts = SvgOptions { mark_crossings, ..SvgOptions::default() };
    let svg = render_svg(&d, &opts).map_err(input_error)?;
    match output {
        Some(p) => {
            write(p, &svg)?;
            ok(format!("rendered -> {}\n", p.display()), json!({ "ok": true, "output": p.display().to_string() }))
        }
        None => {
            let json = json!({ "ok": true, "svg": svg });
            ok(svg, json)
        }
    }
}

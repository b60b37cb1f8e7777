use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use p3pack::clawfree::{pack_2connected_clawfree, pack_chain, pack_clawfree, reduce};
use p3pack::decomposition::block_decomposition;
use p3pack::domination::check_gamma_bounds_capped;
use p3pack::generators::{generate, FamilyRecipe};
use p3pack::harness::{self, run_campaign, Campaign, Extras, InstanceSource};
use p3pack::io::{from_edge_list, read_graph6_lines, to_graph6};
use p3pack::linegraph::{edge_three_factor, lambda_e, LineGraph};
use p3pack::oracle::Oracle;
use p3pack::report::{Status, VerdictReport};
use p3pack::{Edge, Error, Graph, LambdaPacking, PackingConstraint, VertexId};

const EXIT_USAGE: u8 = 1;
const EXIT_COUNTEREXAMPLE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "p3pack", version, about = "Maximum packings of vertex-disjoint 3-vertex paths")]
struct Cli {
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest order handed to the exact Λ solvers.
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Input encoding.
    #[arg(long = "in", global = true, value_enum, default_value_t = InputFormat::Graph6)]
    input_format: InputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Graph6,
    Edgelist,
}

#[derive(Subcommand)]
enum Command {
    /// Generate instances of a family, with a JSON manifest.
    Generate {
        #[arg(long)]
        family: String,
        /// Family parameters as a JSON object, e.g. '{"n":12,"connectivity":2}'.
        #[arg(long, default_value = "{}")]
        params: String,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Block tree, end-blocks and end-chains.
    Decompose { input: Option<PathBuf> },
    /// Exact solvers.
    Oracle {
        #[arg(long, value_enum)]
        mode: OracleMode,
        input: Option<PathBuf>,
    },
    /// Constructive packing.
    Pack {
        #[arg(long, value_enum, default_value_t = Algorithm::Auto)]
        algorithm: Algorithm,
        input: Option<PathBuf>,
    },
    /// Check one statement on every input graph.
    Theorem {
        /// Statement id; `--list` prints them all.
        #[arg(long, required_unless_present = "list")]
        name: Option<String>,
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        list: bool,
        /// Restrict edge quantifiers, e.g. `--edge 0-3`.
        #[arg(long = "edge", value_parser = parse_edge)]
        edges: Vec<Edge>,
        #[arg(long = "vertex")]
        vertices: Vec<u32>,
        /// Restrict path quantifiers, e.g. `--path 1,0,2` (center in the middle).
        #[arg(long = "path", value_parser = parse_path)]
        paths: Vec<[VertexId; 3]>,
        /// Hamiltonian cycle for `Ham`, e.g. `--cycle 0,1,2,3`.
        #[arg(long, value_parser = parse_list)]
        cycle: Option<Vec<VertexId>>,
        #[arg(long)]
        no_cross_check: bool,
    },
    /// Domination bounds.
    Domination {
        #[arg(long, value_enum)]
        check: DominationCheck,
        #[arg(long, value_parser = parse_list)]
        cycle: Option<Vec<VertexId>>,
        input: Option<PathBuf>,
    },
    /// Line-graph operations.
    Linegraph {
        #[arg(long, value_enum)]
        op: LineOp,
        input: Option<PathBuf>,
    },
    /// Batch verification over generated or supplied instances.
    Campaign {
        /// Comma-separated statement ids.
        #[arg(long, value_delimiter = ',', required = true)]
        theorems: Vec<String>,
        /// JSON instance source, e.g. '{"kind":"generated","recipes":[...],"count":10}'.
        #[arg(long, conflicts_with = "input")]
        source: Option<String>,
        /// graph6 file of instances.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Seconds per (statement, instance) pair.
        #[arg(long, default_value_t = harness::DEFAULT_TIMEOUT.as_secs())]
        timeout: u64,
        #[arg(long)]
        no_cross_check: bool,
        /// Write the JSON-lines reports here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleMode {
    Lambda,
    Factor,
    Induced,
    Matching,
    Domination,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algorithm {
    Auto,
    #[value(name = "2conn")]
    TwoConn,
    Chain,
    Reduce,
}

#[derive(Clone, Copy, ValueEnum)]
enum DominationCheck {
    Bounds,
    Ham,
}

#[derive(Clone, Copy, ValueEnum)]
enum LineOp {
    Lg,
    #[value(name = "lambda_e")]
    LambdaE,
    #[value(name = "edge3factor")]
    Edge3Factor,
}

enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Internal(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_list(s: &str) -> Result<Vec<VertexId>, String> {
    s.split(',').map(|t| t.trim().parse::<u32>().map(VertexId).map_err(|e| format!("{t:?}: {e}"))).collect()
}

fn parse_edge(s: &str) -> Result<Edge, String> {
    let (a, b) = s.split_once(['-', ',']).ok_or_else(|| format!("expected u-v, got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    if a == b {
        return Err(format!("loop {s:?}"));
    }
    Ok(Edge::new(a, b))
}

fn parse_path(s: &str) -> Result<[VertexId; 3], String> {
    let v = parse_list(s)?;
    <[VertexId; 3]>::try_from(v).map_err(|_| format!("expected three vertices, got {s:?}"))
}

struct Ctx {
    format: Format,
    input_format: InputFormat,
    oracle: Oracle,
    out: io::StdoutLock<'static>,
}

impl Ctx {
    fn read_graphs(&self, path: Option<&Path>) -> Result<Vec<Graph>, Failure> {
        let text = match path {
            Some(p) => fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?,
            None => {
                let mut s = String::new();
                io::stdin().read_to_string(&mut s)?;
                s
            }
        };
        let gs = match self.input_format {
            InputFormat::Graph6 => read_graph6_lines(&text)?,
            InputFormat::Edgelist => vec![from_edge_list(&text)?],
        };
        if gs.is_empty() {
            return Err(Failure::Usage("no graph in input".into()));
        }
        Ok(gs)
    }

    fn emit(&mut self, value: &Value, text: impl FnOnce() -> String) -> Result<(), Failure> {
        match self.format {
            Format::Json => writeln!(self.out, "{value}")?,
            Format::Text => writeln!(self.out, "{}", text())?,
        }
        Ok(())
    }

    fn emit_report(&mut self, r: &VerdictReport) -> Result<(), Failure> {
        match self.format {
            Format::Json => writeln!(self.out, "{}", r.to_json_line())?,
            Format::Text => writeln!(self.out, "{}", report_line(r))?,
        }
        Ok(())
    }
}

fn report_line(r: &VerdictReport) -> String {
    let status = serde_json::to_value(r.status).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let detail = r.conclusion.as_ref().unwrap_or(&r.hypothesis);
    format!("{} {} {}: {}", r.theorem, r.instance, status, detail.detail)
}

fn paths_text(p: &LambdaPacking) -> String {
    p.paths.iter().map(|[a, b, c]| format!("{a}-{b}-{c}")).collect::<Vec<_>>().join(" ")
}

fn parts_text(parts: &[Vec<Edge>]) -> String {
    parts
        .iter()
        .map(|es| es.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join(" | ")
}

fn exit_for(reports: &[VerdictReport]) -> u8 {
    if reports.iter().any(|r| matches!(r.status, Status::AlgorithmBugCandidate | Status::Error)) {
        EXIT_INTERNAL
    } else if reports.iter().any(|r| r.status == Status::CounterexampleCandidate) {
        EXIT_COUNTEREXAMPLE
    } else {
        0
    }
}

fn cmd_generate(ctx: &mut Ctx, seed: u64, family: &str, params: &str, count: usize, out: &Path) -> Result<u8, Failure> {
    let mut obj: serde_json::Map<String, Value> =
        serde_json::from_str(params).map_err(|e| Failure::Usage(format!("--params: {e}")))?;
    obj.insert("family".into(), Value::String(family.into()));
    let recipe: FamilyRecipe =
        serde_json::from_value(Value::Object(obj)).map_err(|e| Failure::Usage(format!("family {family:?}: {e}")))?;
    fs::create_dir_all(out)?;
    let mut entries = Vec::new();
    for i in 0..count {
        let inst = generate(&recipe.with_seed(seed.wrapping_add(i as u64)))?;
        let file = format!("{}-{i:04}.g6", inst.family);
        fs::write(out.join(&file), format!("{}\n", inst.graph6))?;
        let mut entry = serde_json::to_value(&inst).map_err(|e| Failure::Internal(e.to_string()))?;
        entry["file"] = json!(file);
        entries.push(entry);
    }
    let manifest = json!({ "family": family, "params": recipe, "seed": seed, "count": count, "instances": entries });
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| Failure::Internal(e.to_string()))?;
    fs::write(out.join("manifest.json"), text + "\n")?;
    let summary = json!({ "out": out, "count": count, "manifest": out.join("manifest.json") });
    ctx.emit(&summary, || format!("wrote {count} instances to {}", out.display()))?;
    Ok(0)
}

fn cmd_decompose(ctx: &mut Ctx, input: Option<&Path>) -> Result<u8, Failure> {
    for g in ctx.read_graphs(input)? {
        let d = block_decomposition(&g)?;
        let v = json!({ "instance": to_graph6(&g), "eb": d.eb(), "decomposition": d });
        ctx.emit(&v, || {
            let blocks: Vec<String> = d
                .blocks
                .iter()
                .map(|b| b.vertices.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
                .collect();
            format!("eb {} chain {} cactus {}; blocks {}", d.eb(), d.is_chain(), d.is_cactus(), blocks.join(" | "))
        })?;
    }
    Ok(0)
}

fn cmd_oracle(ctx: &mut Ctx, mode: OracleMode, input: Option<&Path>) -> Result<u8, Failure> {
    for g in ctx.read_graphs(input)? {
        let o = &ctx.oracle;
        let (value, witness, text) = match mode {
            OracleMode::Lambda | OracleMode::Induced => {
                let (n, p) = if matches!(mode, OracleMode::Lambda) { o.lambda(&g)? } else { o.lambda_induced(&g)? };
                (json!(n), json!(p), format!("{n}: {}", paths_text(&p)))
            }
            OracleMode::Factor => match o.factor(&g, &PackingConstraint::none())? {
                Some(p) => (json!(true), json!(p), format!("factor: {}", paths_text(&p))),
                None => (json!(false), Value::Null, "no factor".into()),
            },
            OracleMode::Matching => {
                let (n, m) = o.induced_matching(&g)?;
                let t = m.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(" ");
                (json!(n), json!(m), format!("{n}: {t}"))
            }
            OracleMode::Domination => {
                let (n, s) = o.domination(&g)?;
                let t = s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
                (json!(n), json!(s), format!("{n}: {t}"))
            }
        };
        ctx.emit(&json!({ "instance": to_graph6(&g), "value": value, "witness": witness }), || text)?;
    }
    Ok(0)
}

fn cmd_pack(ctx: &mut Ctx, algorithm: Algorithm, input: Option<&Path>) -> Result<u8, Failure> {
    for g in ctx.read_graphs(input)? {
        let mut extra = serde_json::Map::new();
        let packing = match algorithm {
            Algorithm::Auto => {
                let o = pack_clawfree(&g)?;
                extra.insert("lower_bound".into(), json!(o.lower_bound));
                extra.insert("exact".into(), json!(o.exact));
                o.packing
            }
            Algorithm::TwoConn => pack_2connected_clawfree(&g)?,
            Algorithm::Chain => pack_chain(&g)?,
            Algorithm::Reduce => {
                let trace = reduce(&g)?;
                let o = pack_clawfree(&g)?;
                extra.insert("trace".into(), json!(trace));
                o.packing
            }
        };
        if let Err(e) = packing.validate(&g) {
            return Err(Failure::Internal(format!("packer returned an invalid packing: {e}")));
        }
        let mut v = json!({
            "instance": to_graph6(&g),
            "size": packing.len(),
            "packing": packing,
            "constraint": PackingConstraint::none(),
            "checks_passed": ["disjoint", "paths-in-graph"],
        });
        v.as_object_mut().expect("object").extend(extra);
        ctx.emit(&v, || format!("{}: {}", packing.len(), paths_text(&packing)))?;
    }
    Ok(0)
}

fn cmd_theorem(ctx: &mut Ctx, name: &str, input: Option<&Path>, extras: Extras) -> Result<u8, Failure> {
    let mut reports = Vec::new();
    for g in ctx.read_graphs(input)? {
        let r = harness::check_theorem(name, &g, &extras)?;
        ctx.emit_report(&r)?;
        reports.push(r);
    }
    Ok(exit_for(&reports))
}

fn cmd_list(ctx: &mut Ctx) -> Result<u8, Failure> {
    for t in harness::theorems() {
        let v = serde_json::to_value(t).map_err(|e| Failure::Internal(e.to_string()))?;
        ctx.emit(&v, || format!("{}{}: {}", t.id, if t.open { " (open)" } else { "" }, t.statement))?;
    }
    Ok(0)
}

fn cmd_domination(
    ctx: &mut Ctx,
    check: DominationCheck,
    cycle: Option<Vec<VertexId>>,
    input: Option<&Path>,
) -> Result<u8, Failure> {
    let mut reports = Vec::new();
    for g in ctx.read_graphs(input)? {
        let r = match check {
            DominationCheck::Bounds => check_gamma_bounds_capped(&g, ctx.oracle.domination_cap),
            DominationCheck::Ham => {
                let x = Extras { cycle: cycle.clone(), ..Extras::with_oracle(ctx.oracle) };
                harness::check_theorem("Ham", &g, &x)?
            }
        };
        ctx.emit_report(&r)?;
        reports.push(r);
    }
    Ok(exit_for(&reports))
}

fn cmd_linegraph(ctx: &mut Ctx, op: LineOp, input: Option<&Path>) -> Result<u8, Failure> {
    for g in ctx.read_graphs(input)? {
        let instance = to_graph6(&g);
        match op {
            LineOp::Lg => {
                let lg = LineGraph::new(&g);
                let v = json!({ "instance": instance, "line_graph": to_graph6(&lg.graph), "edge_of": lg.edge_of });
                ctx.emit(&v, || {
                    let map: Vec<String> = lg.edge_of.iter().enumerate().map(|(i, e)| format!("{i}:{e}")).collect();
                    format!("{} {}", to_graph6(&lg.graph), map.join(" "))
                })?;
            }
            LineOp::LambdaE => {
                let le = lambda_e(&g)?;
                let v = json!({ "instance": instance, "value": le.count, "parts": le.packing.parts, "per_component": le.per_component, "aggregated": le.aggregated });
                ctx.emit(&v, || format!("{}: {}", le.count, parts_text(&le.packing.parts)))?;
            }
            LineOp::Edge3Factor => {
                let f = edge_three_factor(&g)?;
                let v = json!({ "instance": instance, "parts": f.parts });
                ctx.emit(&v, || parts_text(&f.parts))?;
            }
        }
    }
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_campaign(
    ctx: &mut Ctx,
    seed: u64,
    jobs: usize,
    theorems: Vec<String>,
    source: Option<String>,
    input: Option<&Path>,
    timeout: u64,
    cross_check: bool,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    let source = match (source, input) {
        (Some(s), _) => serde_json::from_str::<InstanceSource>(&s).map_err(|e| Failure::Usage(format!("--source: {e}")))?,
        (None, Some(p)) => {
            let text = fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            InstanceSource::Graph6 { lines: text.lines().map(str::trim).filter(|l| !l.is_empty()).map(String::from).collect() }
        }
        (None, None) => return Err(Failure::Usage("campaign needs --source or --input".into())),
    };
    let mut c = Campaign::new(theorems, source);
    c.seed = seed;
    c.jobs = jobs;
    c.oracle = ctx.oracle;
    c.timeout = Duration::from_secs(timeout);
    c.cross_check = cross_check;
    let res = run_campaign(&c)?;
    match out {
        Some(p) => fs::write(p, res.to_json_lines())?,
        None => {
            for r in &res.reports {
                ctx.emit_report(r)?;
            }
        }
    }
    let s = &res.summary;
    let line = format!(
        "{} reports: {} confirmed, {} hypothesis unmet, {} skipped, {} none falsifying, {} counterexample candidates, {} algorithm bug candidates, {} errors",
        s.total, s.confirmed, s.hypothesis_unmet, s.skipped, s.none_falsifying, s.counterexample_candidate, s.algorithm_bug_candidate, s.error
    );
    eprintln!("{line}");
    Ok(exit_for(&res.reports))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let mut oracle = Oracle::default();
    if let Some(cap) = cli.cap {
        oracle.cap = cap;
    }
    let mut ctx = Ctx { format: cli.format, input_format: cli.input_format, oracle, out: io::stdout().lock() };
    match cli.command {
        Command::Generate { family, params, count, out } => cmd_generate(&mut ctx, cli.seed, &family, &params, count, &out),
        Command::Decompose { input } => cmd_decompose(&mut ctx, input.as_deref()),
        Command::Oracle { mode, input } => cmd_oracle(&mut ctx, mode, input.as_deref()),
        Command::Pack { algorithm, input } => cmd_pack(&mut ctx, algorithm, input.as_deref()),
        Command::Theorem { list: true, .. } => cmd_list(&mut ctx),
        Command::Theorem { name, input, edges, vertices, paths, cycle, no_cross_check, .. } => {
            let extras = Extras {
                edges,
                vertices: vertices.into_iter().map(VertexId).collect(),
                paths,
                cycle,
                oracle: ctx.oracle,
                cross_check: !no_cross_check,
            };
            cmd_theorem(&mut ctx, name.as_deref().unwrap_or_default(), input.as_deref(), extras)
        }
        Command::Domination { check, cycle, input } => cmd_domination(&mut ctx, check, cycle, input.as_deref()),
        Command::Linegraph { op, input } => cmd_linegraph(&mut ctx, op, input.as_deref()),
        Command::Campaign { theorems, source, input, timeout, no_cross_check, out } => cmd_campaign(
            &mut ctx,
            cli.seed,
            cli.jobs,
            theorems,
            source,
            input.as_deref(),
            timeout,
            !no_cross_check,
            out.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}

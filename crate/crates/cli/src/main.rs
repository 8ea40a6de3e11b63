//! Command-line front end: exact centrality evaluation, improvement
//! solvers, cluster-vertex-deletion, reduction-based instance generation,
//! solution verification, seeded graph generation and a small benchmark
//! harness.
//!
//! Exit codes: 0 success (decision commands: "yes"), 1 malformed input or
//! usage error, 2 solver size-guard violation, 3 a valid "no" decision.
//! All randomness sits behind an explicit `--seed`; identical invocations
//! produce byte-identical stdout. Timing diagnostics go to stderr.

use std::fmt::Write as _;
use std::fs;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use centrality_improve::exact::{greedy, solve_incident, solve_unrestricted, SolverReport};
use centrality_improve::fpt::{
    cluster_vertex_deletion, decomposition_from_vds, minimum_cluster_deletion_set,
    solve_betweenness_fpt, solve_closeness_fpt, ClusterDecomposition,
};
use centrality_improve::gen::{erdos_renyi, planted_cluster};
use centrality_improve::graph::{parse_edge_list, Graph, VertexId};
use centrality_improve::instance::{verify, ImprovementInstance};
use centrality_improve::reductions::{
    ds_to_betweenness, ds_to_closeness, ds_to_closeness_diam4, parse_dominating_set,
    parse_set_cover, sc_to_directed_betweenness, sc_to_directed_closeness,
    sc_to_directed_closeness_diam4, ReductionOutput,
};
use centrality_improve::{
    betweenness, closeness, closeness_reverse, format_rational, parse_rational,
    CentralityKind, Error,
};

const EXIT_OK: u8 = 0;
const EXIT_INPUT: u8 = 1;
const EXIT_GUARD: u8 = 2;
const EXIT_NO: u8 = 3;

#[derive(Parser)]
#[command(
    name = "centrality-improve",
    about = "Raise a vertex's harmonic closeness or betweenness centrality by adding edges",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the exact centrality of a vertex as p/q.
    Centrality(CentralityArgs),
    /// Solve an improvement instance and print the best addition set.
    Improve(ImproveArgs),
    /// Compute a minimum cluster vertex deletion set.
    Cvd(CvdArgs),
    /// Build an improvement instance from a Dominating Set or Set Cover input.
    Reduce(ReduceArgs),
    /// Re-check a solution file against an instance.
    Verify(VerifyArgs),
    /// Generate seeded random graphs or instances.
    Gen(GenArgs),
    /// Run solvers repeatedly and print a work table (timings on stderr).
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    #[value(alias = "c")]
    Closeness,
    #[value(alias = "b")]
    Betweenness,
}

#[derive(Args)]
struct CentralityArgs {
    /// Edge-list file (`directed|undirected <n>` header, `u v` lines).
    #[arg(long)]
    graph: String,
    /// Target vertex.
    #[arg(long)]
    z: VertexId,
    /// Which centrality to evaluate.
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Measure directed closeness with distances *to* z instead of from z.
    #[arg(long)]
    reverse: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Incident,
    Fpt,
    Greedy,
    Oracle,
}

impl SolverArg {
    fn name(self) -> &'static str {
        match self {
            SolverArg::Incident => "incident",
            SolverArg::Fpt => "fpt",
            SolverArg::Greedy => "greedy",
            SolverArg::Oracle => "oracle",
        }
    }
}

#[derive(Args)]
struct ImproveArgs {
    /// Instance file (edge-list block plus z/k/r/kind lines).
    #[arg(long)]
    instance: String,
    #[arg(long, value_enum, default_value = "incident")]
    solver: SolverArg,
    /// Externally supplied cluster deletion set for the fpt solver,
    /// e.g. `--vds 1,2` (skips the branching step).
    #[arg(long, value_delimiter = ',')]
    vds: Option<Vec<VertexId>>,
    /// Write the best addition set to a file verify can re-check.
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct CvdArgs {
    #[arg(long)]
    graph: String,
    /// Target vertex to keep outside the deletion set and the clusters.
    #[arg(long)]
    z: Option<VertexId>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FromArg {
    /// Dominating Set -> closeness (isolated target).
    Ds,
    /// Dominating Set -> closeness, low-diameter gadget.
    DsDiam4,
    /// Dominating Set -> betweenness.
    DsBetw,
    /// Set Cover -> directed closeness (acyclic).
    Sc,
    /// Set Cover -> directed closeness, strongly connected gadget.
    ScDiam4,
    /// Set Cover -> directed betweenness (acyclic).
    ScBetw,
}

#[derive(Args)]
struct ReduceArgs {
    #[arg(long, value_enum)]
    from: FromArg,
    /// Source problem file: edge list + `k` line (ds*), or
    /// `universe`/`set`/`k` lines (sc*).
    #[arg(long)]
    input: String,
    /// Write the instance file here instead of stdout.
    #[arg(long)]
    output: Option<String>,
    /// Write the role map as JSON here.
    #[arg(long)]
    roles: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long)]
    instance: String,
    /// Solution file: one `u v` addition per line, `#` comments allowed.
    #[arg(long)]
    solution: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    model: GenModel,
}

#[derive(Subcommand)]
enum GenModel {
    /// Erdős–Rényi: each pair becomes an edge with probability p.
    Er(GenErArgs),
    /// Disjoint cliques plus randomly attached extra vertices plus z
    /// (always the last vertex).
    Planted(GenPlantedArgs),
}

#[derive(Args)]
struct GenErArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    directed: bool,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    wrap: InstanceWrapArgs,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct GenPlantedArgs {
    /// Comma-separated clique sizes, e.g. `--clusters 3,4,2`.
    #[arg(long, value_delimiter = ',', required = true)]
    clusters: Vec<usize>,
    /// Number of extra vertices outside the cliques (bounds the cluster
    /// deletion distance).
    #[arg(long, default_value_t = 0)]
    extra: usize,
    /// Attachment probability for the extra vertices.
    #[arg(long, default_value_t = 0.5)]
    p: f64,
    /// Attachment probability for z.
    #[arg(long, default_value_t = 0.3)]
    zp: f64,
    #[arg(long)]
    seed: u64,
    #[command(flatten)]
    wrap: InstanceWrapArgs,
    #[arg(long)]
    output: Option<String>,
    #[arg(long)]
    json: bool,
}

/// Optional instance wrapping for `gen`: with `--k`, `--r` and `--kind`
/// the output is a full instance file rather than a bare edge list.
#[derive(Args)]
struct InstanceWrapArgs {
    #[arg(long)]
    k: Option<usize>,
    /// Threshold as `p/q` or an integer.
    #[arg(long)]
    r: Option<String>,
    #[arg(long, value_enum)]
    kind: Option<KindArg>,
    /// Target vertex (defaults to the last vertex).
    #[arg(long)]
    z: Option<VertexId>,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    instance: String,
    /// Comma-separated solvers to run.
    #[arg(long, value_delimiter = ',', default_values_t = vec![SolverArg::Incident, SolverArg::Greedy],
          value_enum)]
    solvers: Vec<SolverArg>,
    /// Repetitions per solver (timings are averaged on stderr).
    #[arg(long, default_value_t = 3)]
    reps: usize,
    #[arg(long)]
    json: bool,
}

/// A failed run: message for stderr plus the process exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::ExhaustiveGuard { .. } | Error::OracleGuard { .. } => EXIT_GUARD,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Let clap render help/version normally; everything else is a
            // usage error with our exit-code contract.
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::from(EXIT_OK);
            }
            let _ = e.print();
            return ExitCode::from(EXIT_INPUT);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Centrality(args) => cmd_centrality(args),
        Command::Improve(args) => cmd_improve(args),
        Command::Cvd(args) => cmd_cvd(args),
        Command::Reduce(args) => cmd_reduce(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Gen(args) => cmd_gen(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn read_file(path: &str) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {path}: {e}")))
}

fn write_file(path: &str, content: &str) -> Result<(), Failure> {
    fs::write(path, content)
        .map_err(|e| Failure::usage(format!("cannot write {path}: {e}")))
}

fn load_graph(path: &str) -> Result<Graph, Failure> {
    Ok(parse_edge_list(&read_file(path)?)?)
}

fn load_instance(path: &str) -> Result<ImprovementInstance, Failure> {
    Ok(ImprovementInstance::parse(&read_file(path)?)?)
}

fn cmd_centrality(args: CentralityArgs) -> Result<u8, Failure> {
    let g = load_graph(&args.graph)?;
    let value = match args.kind {
        KindArg::Closeness if args.reverse => closeness_reverse(&g, args.z)?,
        KindArg::Closeness => closeness(&g, args.z)?,
        KindArg::Betweenness => {
            if args.reverse {
                return Err(Failure::usage("--reverse only applies to closeness"));
            }
            betweenness(&g, args.z)?
        }
    };
    let text = format_rational(&value);
    if args.json {
        let kind = match args.kind {
            KindArg::Closeness => "closeness",
            KindArg::Betweenness => "betweenness",
        };
        println!(
            "{}",
            json!({
                "format": 1,
                "command": "centrality",
                "kind": kind,
                "z": args.z,
                "reverse": args.reverse,
                "value": text,
            })
        );
    } else {
        println!("{text}");
    }
    Ok(EXIT_OK)
}

fn fpt_decomposition(
    inst: &ImprovementInstance,
    vds: &Option<Vec<VertexId>>,
) -> Result<ClusterDecomposition, Failure> {
    match vds {
        Some(vds) => Ok(decomposition_from_vds(&inst.graph, inst.z, vds)?),
        None => Ok(cluster_vertex_deletion(&inst.graph, inst.z)?),
    }
}

fn cmd_improve(args: ImproveArgs) -> Result<u8, Failure> {
    let inst = load_instance(&args.instance)?;
    let mut ell: Option<usize> = None;
    let mut used_vds: Option<Vec<VertexId>> = None;
    let report: SolverReport = match args.solver {
        SolverArg::Incident => solve_incident(&inst),
        SolverArg::Greedy => greedy(&inst),
        SolverArg::Oracle => solve_unrestricted(&inst)?,
        SolverArg::Fpt => {
            let dec = fpt_decomposition(&inst, &args.vds)?;
            ell = Some(dec.ell());
            used_vds = Some(dec.vds.clone());
            match inst.kind.centrality {
                CentralityKind::Closeness => solve_closeness_fpt(&inst, &dec)?,
                CentralityKind::Betweenness => solve_betweenness_fpt(&inst, &dec)?,
            }
        }
    };
    let decision = report.best.achieved >= inst.r;
    if let Some(path) = &args.out {
        let mut sol = String::new();
        for (u, v) in &report.best.additions {
            let _ = writeln!(sol, "{u} {v}");
        }
        write_file(path, &sol)?;
    }
    if args.json {
        let additions: Vec<[VertexId; 2]> =
            report.best.additions.iter().map(|&(u, v)| [u, v]).collect();
        let mut obj = json!({
            "format": 1,
            "command": "improve",
            "solver": args.solver.name(),
            "achieved": format_rational(&report.best.achieved),
            "threshold": format_rational(&inst.r),
            "decision": decision,
            "additions": additions,
            "candidates_evaluated": report.candidates_evaluated,
        });
        if let Some(ell) = ell {
            obj["ell"] = json!(ell);
            obj["vds"] = json!(used_vds.unwrap_or_default());
        }
        println!("{obj}");
    } else {
        println!("solver {}", args.solver.name());
        if let Some(ell) = ell {
            let vds = used_vds.unwrap_or_default();
            println!(
                "ell {ell} vds{}",
                vds.iter().fold(String::new(), |mut s, v| {
                    let _ = write!(s, " {v}");
                    s
                })
            );
        }
        println!("achieved {}", format_rational(&report.best.achieved));
        println!("threshold {}", format_rational(&inst.r));
        println!("decision {}", if decision { "yes" } else { "no" });
        println!("additions {}", report.best.additions.len());
        for (u, v) in &report.best.additions {
            println!("add {u} {v}");
        }
        println!("candidates {}", report.candidates_evaluated);
    }
    Ok(if decision { EXIT_OK } else { EXIT_NO })
}

fn cmd_cvd(args: CvdArgs) -> Result<u8, Failure> {
    let g = load_graph(&args.graph)?;
    let (vds, clusters) = match args.z {
        Some(z) => {
            let dec = cluster_vertex_deletion(&g, z)?;
            (dec.vds.clone(), dec.clusters.clone())
        }
        None => {
            let vds = minimum_cluster_deletion_set(&g, None)?;
            // Components of the remainder, for symmetry with the z form.
            let mut alive = vec![true; g.n()];
            for &v in &vds {
                alive[v] = false;
            }
            let mut seen = vec![false; g.n()];
            let mut clusters: Vec<Vec<VertexId>> = Vec::new();
            for s in 0..g.n() {
                if !alive[s] || seen[s] {
                    continue;
                }
                let mut comp = vec![s];
                seen[s] = true;
                let mut stack = vec![s];
                while let Some(u) = stack.pop() {
                    for &v in g.neighbors(u) {
                        if alive[v] && !seen[v] {
                            seen[v] = true;
                            comp.push(v);
                            stack.push(v);
                        }
                    }
                }
                comp.sort_unstable();
                clusters.push(comp);
            }
            clusters.sort_by_key(|c| c[0]);
            (vds, clusters)
        }
    };
    if args.json {
        println!(
            "{}",
            json!({
                "format": 1,
                "command": "cvd",
                "ell": vds.len(),
                "vds": vds,
                "clusters": clusters,
            })
        );
    } else {
        println!("ell {}", vds.len());
        println!(
            "vds{}",
            vds.iter().fold(String::new(), |mut s, v| {
                let _ = write!(s, " {v}");
                s
            })
        );
        for (i, c) in clusters.iter().enumerate() {
            println!(
                "cluster {i}{}",
                c.iter().fold(String::new(), |mut s, v| {
                    let _ = write!(s, " {v}");
                    s
                })
            );
        }
    }
    Ok(EXIT_OK)
}

fn roles_json(out: &ReductionOutput) -> serde_json::Value {
    let roles: serde_json::Map<String, serde_json::Value> = out
        .roles
        .iter()
        .enumerate()
        .map(|(v, role)| (v.to_string(), json!(role.to_string())))
        .collect();
    json!({
        "format": 1,
        "command": "reduce",
        "n": out.instance.graph.n(),
        "directed": out.instance.graph.is_directed(),
        "z": out.instance.z,
        "k": out.instance.k,
        "r": format_rational(&out.instance.r),
        "kind": out.instance.kind.centrality.as_str(),
        "alpha": out.alpha,
        "roles": roles,
    })
}

fn cmd_reduce(args: ReduceArgs) -> Result<u8, Failure> {
    let input = read_file(&args.input)?;
    let out = match args.from {
        FromArg::Ds => ds_to_closeness(&parse_dominating_set(&input)?),
        FromArg::DsDiam4 => ds_to_closeness_diam4(&parse_dominating_set(&input)?),
        FromArg::DsBetw => ds_to_betweenness(&parse_dominating_set(&input)?)?,
        FromArg::Sc => sc_to_directed_closeness(&parse_set_cover(&input)?),
        FromArg::ScDiam4 => sc_to_directed_closeness_diam4(&parse_set_cover(&input)?),
        FromArg::ScBetw => sc_to_directed_betweenness(&parse_set_cover(&input)?),
    };
    let instance_text = out.instance.to_text();
    if let Some(path) = &args.output {
        write_file(path, &instance_text)?;
    }
    if let Some(path) = &args.roles {
        write_file(path, &format!("{}\n", roles_json(&out)))?;
    }
    if args.json {
        println!("{}", roles_json(&out));
    } else if args.output.is_none() {
        print!("{instance_text}");
    }
    Ok(EXIT_OK)
}

fn parse_solution_file(text: &str) -> Result<Vec<(VertexId, VertexId)>, Failure> {
    let mut additions = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let pair = if tokens.len() == 2 {
            match (tokens[0].parse(), tokens[1].parse()) {
                (Ok(u), Ok(v)) => Some((u, v)),
                _ => None,
            }
        } else {
            None
        };
        match pair {
            Some(p) => additions.push(p),
            None => {
                return Err(Failure::usage(format!(
                    "solution line {}: expected `u v`, got `{line}`",
                    lineno + 1
                )))
            }
        }
    }
    Ok(additions)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, Failure> {
    let inst = load_instance(&args.instance)?;
    let additions = parse_solution_file(&read_file(&args.solution)?)?;
    let (decision, achieved) = verify(&inst, &additions)?;
    if args.json {
        println!(
            "{}",
            json!({
                "format": 1,
                "command": "verify",
                "achieved": format_rational(&achieved),
                "threshold": format_rational(&inst.r),
                "decision": decision,
                "additions": additions.len(),
            })
        );
    } else {
        println!("achieved {}", format_rational(&achieved));
        println!("threshold {}", format_rational(&inst.r));
        println!("decision {}", if decision { "yes" } else { "no" });
    }
    Ok(if decision { EXIT_OK } else { EXIT_NO })
}

fn emit_generated(
    g: Graph,
    wrap: InstanceWrapArgs,
    output: Option<String>,
    json_flag: bool,
    model: serde_json::Value,
) -> Result<u8, Failure> {
    let text = match (&wrap.k, &wrap.r, &wrap.kind) {
        (None, None, None) => g.to_edge_list(),
        (Some(k), Some(r), Some(kind)) => {
            let z = wrap.z.unwrap_or(g.n().saturating_sub(1));
            let r = parse_rational(r)?;
            let centrality = match kind {
                KindArg::Closeness => CentralityKind::Closeness,
                KindArg::Betweenness => CentralityKind::Betweenness,
            };
            let directed = g.is_directed();
            let inst = ImprovementInstance::new(
                g,
                z,
                *k,
                r,
                centrality_improve::ProblemKind {
                    centrality,
                    directed,
                },
            )?;
            inst.to_text()
        }
        _ => {
            return Err(Failure::usage(
                "instance output needs all of --k, --r and --kind",
            ))
        }
    };
    if let Some(path) = &output {
        write_file(path, &text)?;
    }
    if json_flag {
        println!(
            "{}",
            json!({
                "format": 1,
                "command": "gen",
                "model": model,
                "content": text,
            })
        );
    } else if output.is_none() {
        print!("{text}");
    }
    Ok(EXIT_OK)
}

fn cmd_gen(args: GenArgs) -> Result<u8, Failure> {
    match args.model {
        GenModel::Er(a) => {
            let g = erdos_renyi(a.n, a.p, a.directed, a.seed);
            let model = json!({
                "name": "er", "n": a.n, "p": a.p, "directed": a.directed, "seed": a.seed,
            });
            emit_generated(g, a.wrap, a.output, a.json, model)
        }
        GenModel::Planted(a) => {
            let g = planted_cluster(&a.clusters, a.extra, a.p, a.zp, a.seed);
            let model = json!({
                "name": "planted", "clusters": a.clusters, "extra": a.extra,
                "p": a.p, "zp": a.zp, "seed": a.seed,
            });
            emit_generated(g, a.wrap, a.output, a.json, model)
        }
    }
}

fn cmd_bench(args: BenchArgs) -> Result<u8, Failure> {
    let inst = load_instance(&args.instance)?;
    if args.reps == 0 {
        return Err(Failure::usage("--reps must be at least 1"));
    }
    let mut rows: Vec<(String, String, usize, u64)> = Vec::new();
    for solver in &args.solvers {
        let mut last: Option<SolverReport> = None;
        let mut total = std::time::Duration::ZERO;
        for _ in 0..args.reps {
            let report = match solver {
                SolverArg::Incident => solve_incident(&inst),
                SolverArg::Greedy => greedy(&inst),
                SolverArg::Oracle => solve_unrestricted(&inst)?,
                SolverArg::Fpt => {
                    let dec = fpt_decomposition(&inst, &None)?;
                    match inst.kind.centrality {
                        CentralityKind::Closeness => solve_closeness_fpt(&inst, &dec)?,
                        CentralityKind::Betweenness => solve_betweenness_fpt(&inst, &dec)?,
                    }
                }
            };
            total += report.elapsed;
            last = Some(report);
        }
        let report = last.expect("reps >= 1");
        eprintln!(
            "bench {}: {} reps, avg {:?}",
            solver.name(),
            args.reps,
            total / args.reps as u32
        );
        rows.push((
            solver.name().to_string(),
            format_rational(&report.best.achieved),
            report.best.additions.len(),
            report.candidates_evaluated,
        ));
    }
    if args.json {
        let rows: Vec<serde_json::Value> = rows
            .iter()
            .map(|(solver, achieved, additions, candidates)| {
                json!({
                    "solver": solver,
                    "achieved": achieved,
                    "additions": additions,
                    "candidates_evaluated": candidates,
                })
            })
            .collect();
        println!(
            "{}",
            json!({ "format": 1, "command": "bench", "reps": args.reps, "rows": rows })
        );
    } else {
        println!(
            "{:<10} {:>14} {:>10} {:>12}",
            "solver", "achieved", "additions", "candidates"
        );
        for (solver, achieved, additions, candidates) in &rows {
            println!("{solver:<10} {achieved:>14} {additions:>10} {candidates:>12}");
        }
    }
    Ok(EXIT_OK)
}

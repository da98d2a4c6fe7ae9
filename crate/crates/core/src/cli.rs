//! The `linkagelab` command line. JSON reports go to stdout, a short summary
//! to stderr. Exit codes: 0 when every verdict holds, 1 on a failed
//! verification, 2 on usage, parse, envelope and budget errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use crate::benes::{augmented_link, benes_link, degree3_transform, BenesNetwork};
use crate::error::{Error, Result};
use crate::flow::{flow_capacity_certificate, integralize, solve_concurrent_flow, CheckScope};
use crate::format;
use crate::graph::{BlowupVertex, Vertex};
use crate::indsub::{colsub_preprocess, colsub_via_indsub, GraphInvariant};
use crate::linkage::{max_matching_linked_set, CapacityBound, Certification, LinkedSetWitness, Provenance, Router, WitnessStatus};
use crate::random::gnp_experiment;
use crate::ratio;
use crate::reduction::{count_colorful_sub, full_pipeline, PipelineBudget, MAX_COLORING_VERTICES};
use crate::selftest;

#[derive(Debug, Parser)]
#[command(name = "linkagelab", version, about = "Linkage capacity toolkit")]
struct Cli {
    /// Seed for every random choice; reports echo it.
    #[arg(long, global = true, env = "LINKAGELAB_SEED", default_value_t = 0)]
    seed: u64,
    /// Worker threads for trial and enumeration parallelism.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build and route Beneš networks.
    #[command(subcommand)]
    Benes(BenesCmd),
    /// Certify matching-linked sets in blowups.
    #[command(subcommand)]
    Linkage(LinkageCmd),
    /// Run the 3-Coloring to colorful-subgraph reduction.
    #[command(subcommand)]
    Reduce(ReduceCmd),
    /// Solve the concurrent flow LP.
    #[command(subcommand)]
    Flow(FlowCmd),
    /// Linkage experiments on random graphs.
    #[command(subcommand)]
    Random(RandomCmd),
    /// Count colorful subgraphs through an induced-subgraph oracle.
    #[command(subcommand)]
    Indsub(IndsubCmd),
    /// Run the acceptance checks.
    Selftest(SelftestArgs),
}

#[derive(Debug, Subcommand)]
enum BenesCmd {
    /// Emit `B_L` (or `B̌_L`) in the graph format with `io` lines.
    Build {
        #[arg(long)]
        level: u32,
        /// Add the output short-circuit edges.
        #[arg(long)]
        augment: bool,
        /// Split degree-4 vertices so that the maximum degree is 3.
        #[arg(long)]
        degree3: bool,
        /// Write the network here instead of embedding it in the report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Route a matching file. Lines `<i> <j>` join input `i` to output `j`;
    /// with `--augment` they join inputs `i` and `j` of `B̌_L`.
    Route {
        #[arg(long)]
        level: u32,
        #[arg(long)]
        matching: PathBuf,
        #[arg(long)]
        augment: bool,
    },
}

#[derive(Debug, Subcommand)]
enum LinkageCmd {
    /// Check every maximal matching on a set of `H ⊗ J_q` by backtracking.
    Certify {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated vertices `v` or `v:clone`.
        #[arg(long)]
        set: String,
        #[arg(long, default_value_t = 1)]
        blowup: usize,
        /// Search nodes per matching.
        #[arg(long)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
enum ReduceCmd {
    /// Count 3-colorings of an instance through a pattern's linked set.
    Pipeline {
        #[arg(long)]
        instance: PathBuf,
        /// `benes:L`, `grid:L` or `file:H.graph`.
        #[arg(long)]
        pattern: String,
        /// Also count 3-colorings by brute force and require agreement.
        #[arg(long)]
        verify: bool,
        /// Blowup order searched for `file:` patterns.
        #[arg(long, default_value_t = 2)]
        q: usize,
        #[arg(long, default_value_t = PipelineBudget::default().routing)]
        routing_budget: u64,
        #[arg(long, default_value_t = PipelineBudget::default().counting)]
        counting_budget: u64,
    },
}

#[derive(Debug, Subcommand)]
enum FlowCmd {
    /// `ε(H, W)`, the integral scaling `(D, q)` and the capacity bound.
    Eps {
        #[arg(long)]
        graph: PathBuf,
        /// Comma-separated terminal vertices.
        #[arg(long)]
        terminals: String,
        /// Build the flow-derived witness and check its matchings.
        #[arg(long)]
        certify: bool,
    },
}

#[derive(Debug, Subcommand)]
enum RandomCmd {
    /// Route a random perfect matching of `G(k, p)` in `r` random parts.
    Experiment {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        trials: usize,
        /// Search nodes per part.
        #[arg(long, default_value_t = 200_000)]
        budget: u64,
    },
}

#[derive(Debug, Subcommand)]
enum IndsubCmd {
    /// Compare the oracle reduction with a direct colorful count.
    Reduce {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        /// `clique`, `edgeless`, `connected`, `even-edges`, `constant`,
        /// `constant:V` or `table:FILE`.
        #[arg(long)]
        invariant: String,
        /// Bound on `C(n, k)` per oracle call.
        #[arg(long, default_value_t = 1 << 24)]
        budget: u64,
    },
}

#[derive(Debug, Args)]
struct SelftestArgs {
    /// Comma-separated criterion numbers; all by default.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u8>,
}

#[derive(Debug, Serialize)]
struct RunReport {
    command: Vec<String>,
    seed: u64,
    timings: BTreeMap<&'static str, f64>,
    verdicts: BTreeMap<&'static str, bool>,
    artifacts: Vec<String>,
    #[serde(flatten)]
    result: Value,
    #[serde(skip)]
    summary: String,
    /// Ran to completion without a verdict, e.g. out of budget.
    #[serde(skip)]
    inconclusive: bool,
}

impl RunReport {
    fn new(seed: u64) -> Self {
        RunReport {
            command: Vec::new(),
            seed,
            timings: BTreeMap::new(),
            verdicts: BTreeMap::new(),
            artifacts: Vec::new(),
            result: Value::Null,
            summary: String::new(),
            inconclusive: false,
        }
    }

    fn time<T>(&mut self, stage: &'static str, f: impl FnOnce() -> Result<T>) -> Result<T> {
        let start = Instant::now();
        let out = f();
        self.timings.insert(stage, start.elapsed().as_secs_f64());
        out
    }

    fn exit_code(&self) -> i32 {
        if self.verdicts.values().any(|ok| !ok) {
            1
        } else if self.inconclusive {
            2
        } else {
            0
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.jobs.max(1)).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    let mut report = RunReport::new(cli.seed);
    report.command = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    match pool.install(|| dispatch(cli.command, &mut report)) {
        Ok(()) => {
            let json = serde_json::to_string_pretty(&report).expect("reports serialize");
            let _ = writeln!(std::io::stdout().lock(), "{json}");
            if !report.summary.is_empty() {
                eprintln!("{}", report.summary);
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_usage() {
                2
            } else {
                1
            }
        }
    }
}

fn dispatch(command: Command, report: &mut RunReport) -> Result<()> {
    match command {
        Command::Benes(BenesCmd::Build { level, augment, degree3, out }) => benes_build(report, level, augment, degree3, out),
        Command::Benes(BenesCmd::Route { level, matching, augment }) => benes_route(report, level, &matching, augment),
        Command::Linkage(LinkageCmd::Certify { graph, set, blowup, budget }) => {
            linkage_certify(report, &graph, &set, blowup, budget)
        }
        Command::Reduce(ReduceCmd::Pipeline { instance, pattern, verify, q, routing_budget, counting_budget }) => {
            let budget = PipelineBudget { routing: routing_budget, counting: counting_budget };
            reduce_pipeline(report, &instance, &pattern, verify, q, budget)
        }
        Command::Flow(FlowCmd::Eps { graph, terminals, certify }) => flow_eps(report, &graph, &terminals, certify),
        Command::Random(RandomCmd::Experiment { k, p, r, trials, budget }) => {
            random_experiment(report, k, p, r, trials, budget)
        }
        Command::Indsub(IndsubCmd::Reduce { pattern, host, invariant, budget }) => {
            indsub_reduce(report, &pattern, &host, &invariant, budget)
        }
        Command::Selftest(args) => run_selftest(report, &args.only),
    }
}

fn vertex_list(text: &str) -> Result<Vec<Vertex>> {
    text.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|s| s.trim().parse().map_err(|_| Error::invalid(format!("bad vertex {s:?}"))))
        .collect()
}

fn benes_build(report: &mut RunReport, level: u32, augment: bool, degree3: bool, out: Option<PathBuf>) -> Result<()> {
    let mut net = report.time("build", || {
        if augment {
            BenesNetwork::augmented(level)
        } else {
            BenesNetwork::new(level)
        }
    })?;
    if degree3 {
        if net.inputs.iter().chain(&net.outputs).any(|&v| net.graph.degree(v) > 3) {
            return Err(Error::invalid("terminals of degree 4 would be split"));
        }
        net.graph = degree3_transform(&net.graph);
        report.verdicts.insert("max_degree_3", net.graph.max_degree() <= 3);
    }
    let text = format::format_network(&net);
    let mut result = json!({
        "level": level,
        "augmented": augment,
        "degree3": degree3,
        "vertices": net.graph.n(),
        "edges": net.graph.m(),
        "max_degree": net.graph.max_degree(),
    });
    match out {
        Some(path) => {
            std::fs::write(&path, text)?;
            report.artifacts.push(path.display().to_string());
        }
        None => result["network"] = Value::String(text),
    }
    report.summary = format!(
        "{}B_{level}: {} vertices, {} edges, max degree {}",
        if augment { "augmented " } else { "" },
        net.graph.n(),
        net.graph.m(),
        net.graph.max_degree()
    );
    report.result = result;
    Ok(())
}

fn benes_route(report: &mut RunReport, level: u32, path: &Path, augment: bool) -> Result<()> {
    let text = std::fs::read_to_string(path)?;
    let net = if augment { BenesNetwork::augmented(level)? } else { BenesNetwork::new(level)? };
    let s = net.s();
    let (linkage, pairs) = if augment {
        let m = format::parse_matching(&text)?;
        let linkage = report.time("route", || augmented_link(level, &m))?;
        (linkage, m.edges().to_vec())
    } else {
        let perm = permutation(&format::parse_pairs(&text)?, s)?;
        let linkage = report.time("route", || benes_link(level, &perm))?;
        let pairs = (0..s).map(|i| (net.inputs[i], net.outputs[perm[i]])).collect::<Vec<_>>();
        (linkage, pairs)
    };
    let ok = linkage.check(&net.graph, &pairs, 1).is_ok();
    report.verdicts.insert("uncongested", ok);
    report.summary = format!("routed {} pairs in B_{level}: {}", pairs.len(), if ok { "uncongested" } else { "INVALID" });
    report.result = json!({
        "level": level,
        "augmented": augment,
        "paths": linkage.paths().iter().map(|(pair, p)| json!({ "pair": pair, "path": p })).collect::<Vec<_>>(),
    });
    Ok(())
}

/// Completes input→output pairs to a permutation of `0..s`, sending leftover
/// inputs to leftover outputs in ascending order.
fn permutation(pairs: &[(usize, usize)], s: usize) -> Result<Vec<usize>> {
    let mut perm = vec![usize::MAX; s];
    let mut used = vec![false; s];
    for &(i, j) in pairs {
        if i >= s || j >= s {
            return Err(Error::invalid(format!("{i} {j}: indices must be below {s}")));
        }
        if perm[i] != usize::MAX || used[j] {
            return Err(Error::invalid(format!("{i} {j}: input or output used twice")));
        }
        perm[i] = j;
        used[j] = true;
    }
    let mut free = (0..s).filter(|&j| !used[j]);
    for p in perm.iter_mut().filter(|p| **p == usize::MAX) {
        *p = free.next().expect("as many free outputs as free inputs");
    }
    Ok(perm)
}

fn blowup_set(text: &str, n: usize, q: usize) -> Result<Vec<BlowupVertex>> {
    let mut set: Vec<BlowupVertex> = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (base, clone) = item.split_once(':').unwrap_or((item, "0"));
        let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| Error::invalid(format!("bad set element {item:?}")));
        let v = BlowupVertex { base: parse(base)?, clone: parse(clone)? };
        if v.base >= n || v.clone >= q {
            return Err(Error::invalid(format!("{item} is not a vertex of H ⊗ J_{q}")));
        }
        if set.contains(&v) {
            return Err(Error::invalid(format!("{item} listed twice")));
        }
        set.push(v);
    }
    Ok(set)
}

fn linkage_certify(report: &mut RunReport, graph: &Path, set: &str, q: usize, budget: u64) -> Result<()> {
    if q == 0 {
        return Err(Error::invalid("--blowup must be at least 1"));
    }
    let h = format::read_graph(graph)?;
    let set = blowup_set(set, h.n(), q)?;
    let names: Vec<String> = set.iter().map(|v| format!("{}:{}", v.base, v.clone)).collect();
    let mut witness = LinkedSetWitness::new(h, q, set, Router::Backtracking, WitnessStatus::Uncertified);
    let cert = report.time("certify", || witness.certify(budget))?;
    report.summary = match &cert {
        Certification::Certified { matchings_checked } => format!("certified: {matchings_checked} matchings routed"),
        Certification::Refuted { matching, .. } => format!("refuted by {matching:?}"),
        Certification::Inconclusive { over_budget, .. } => format!("inconclusive: {over_budget} matchings over budget"),
    };
    match cert {
        Certification::Certified { .. } => {
            report.verdicts.insert("matching_linked", true);
        }
        Certification::Refuted { .. } => {
            report.verdicts.insert("matching_linked", false);
        }
        Certification::Inconclusive { .. } => report.inconclusive = true,
    }
    let mut result = json!({ "set": names, "q": q });
    merge(&mut result, serde_json::to_value(&cert).expect("serializable"));
    report.result = result;
    Ok(())
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}

fn pattern_witness(pattern: &str, q: usize, budget: u64) -> Result<LinkedSetWitness> {
    let (kind, arg) = pattern
        .split_once(':')
        .ok_or_else(|| Error::invalid(format!("pattern {pattern:?} is not benes:L, grid:L or file:PATH")))?;
    let level = || arg.parse::<u32>().map_err(|_| Error::invalid(format!("bad size {arg:?}")));
    match kind {
        "benes" => LinkedSetWitness::benes(level()?),
        "grid" => LinkedSetWitness::grid(level()? as usize),
        "file" => max_matching_linked_set(&format::read_graph(arg)?, q, budget),
        _ => Err(Error::invalid(format!("unknown pattern kind {kind:?}"))),
    }
}

fn reduce_pipeline(
    report: &mut RunReport,
    instance: &Path,
    pattern: &str,
    verify: bool,
    q: usize,
    budget: PipelineBudget,
) -> Result<()> {
    let g = format::read_graph(instance)?;
    if verify && g.n() > MAX_COLORING_VERTICES {
        return Err(Error::envelope(format!(
            "--verify counts colorings by brute force, which stops at {MAX_COLORING_VERTICES} vertices"
        )));
    }
    let witness = report.time("witness", || pattern_witness(pattern, q, budget.routing))?;
    let r = report.time("pipeline", || full_pipeline(&g, &witness, budget))?;
    report.verdicts.insert("colorful_match", r.colorful_match);
    if verify {
        report.verdicts.insert("colorings_match", r.colorings_match == Some(true));
    }
    let colorings = r.colorings.map_or("-".to_string(), |c| c.to_string());
    report.summary = format!(
        "colorings {colorings} = assignments {} = colorful {} (|V(X)| = {}, t = {})",
        r.assignments, r.colorful, r.x_vertices, r.t
    );
    report.result = json!({ "pattern": pattern, "set_size": witness.set.len(), "report": r });
    Ok(())
}

fn flow_eps(report: &mut RunReport, graph: &Path, terminals: &str, certify: bool) -> Result<()> {
    let h = format::read_graph(graph)?;
    let w = vertex_list(terminals)?;
    let solution = report.time("lp", || solve_concurrent_flow(&h, &w))?;
    report.verdicts.insert("lp_verified", solution.verify(&h).is_ok());
    let clique = report.time("integralize", || integralize(&solution))?;
    report.verdicts.insert("clique_linkage", clique.check().is_ok());
    let raw = &solution.epsilon * ratio::int((w.len() * w.len()) as u64) / ratio::int(108);
    let bound = CapacityBound::new(raw, Provenance::Flow);
    let mut result = json!({
        "terminals": w,
        "epsilon": ratio::to_string(&solution.epsilon),
        "D": clique.d,
        "q": clique.q,
        "bound": bound,
    });
    if certify {
        let cert = report.time("certify", || flow_capacity_certificate(&h, &w))?;
        let (scope, checked) = match cert.scope {
            CheckScope::Exhaustive(n) => ("exhaustive", n),
            CheckScope::Sampled(n) => ("sampled", n),
        };
        result["witness"] = json!({ "set_size": cert.witness.set.len(), "blowup": cert.witness.q, "scope": scope, "matchings": checked });
    }
    report.summary = format!("ε = {}, D = {}, q = {}", ratio::to_string(&solution.epsilon), clique.d, clique.q);
    report.result = result;
    Ok(())
}

fn random_experiment(report: &mut RunReport, k: usize, p: f64, r: usize, trials: usize, budget: u64) -> Result<()> {
    let seed = report.seed;
    let e = report.time("trials", || gnp_experiment(k, p, r, trials, seed, budget))?;
    if e.inconclusive > 0 && e.successes + e.failures == 0 {
        report.inconclusive = true;
    }
    report.summary = format!(
        "{} successes, {} failures, {} inconclusive out of {trials}{}",
        e.successes,
        e.failures,
        e.inconclusive,
        e.wilson.map_or(String::new(), |(lo, hi)| format!("; 95% interval [{lo:.3}, {hi:.3}]"))
    );
    report.result = serde_json::to_value(&e).expect("serializable");
    Ok(())
}

fn indsub_reduce(report: &mut RunReport, pattern: &Path, host: &Path, invariant: &str, budget: u64) -> Result<()> {
    let h = format::read_graph(pattern)?;
    let g = format::read_colored(host)?;
    let phi = match invariant.strip_prefix("table:") {
        Some(file) => format::read_invariant_table(file)?,
        None => GraphInvariant::builtin(invariant, h.n())?,
    };
    if phi.k != h.n() {
        return Err(Error::invalid(format!("the table is for k = {}, H has {} vertices", phi.k, h.n())));
    }
    let g = report.time("preprocess", || colsub_preprocess(&h, &g))?;
    let reduced = report.time("oracle", || colsub_via_indsub(&h, &g, &phi, budget))?;
    let direct = report.time("direct", || count_colorful_sub(&h, &g, u64::MAX))?;
    let ok = reduced.count == direct;
    report.verdicts.insert("match", ok);
    report.summary = format!(
        "Φ̂(H) = {}; oracle count {} vs direct count {direct} after {} calls",
        ratio::to_string(&reduced.phi_hat),
        reduced.count,
        reduced.oracle_calls
    );
    report.result = json!({
        "phi_hat": ratio::to_string(&reduced.phi_hat),
        "reduced_count": reduced.count,
        "direct_count": direct,
        "match": ok,
        "oracle_calls": reduced.oracle_calls,
    });
    Ok(())
}

fn run_selftest(report: &mut RunReport, only: &[u8]) -> Result<()> {
    let seed = report.seed;
    let reports = report.time("selftest", || selftest::run(only, seed))?;
    let mut lines = Vec::new();
    for r in &reports {
        report.verdicts.insert(selftest::CRITERIA[r.id as usize - 1].1, r.passed);
        lines.push(format!(
            "{} criterion {:>2} ({}): {} [{:.2}s]",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.title,
            r.detail,
            r.seconds
        ));
    }
    report.summary = lines.join("\n");
    report.result = json!({ "criteria": reports });
    Ok(())
}

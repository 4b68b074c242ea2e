//! `burnkit`: burning schedules, exact burning numbers and bounds from the command line.
//!
//! Exit codes: 0 success, 1 property failure, 2 input error, 3 budget exceeded.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use burnkit::bounds::{bound_report, branch_number, table1, threshold_closed_form, BoundReport};
use burnkit::exact::{default_round_budget, exact_vertex_cap};
use burnkit::generators::{
    caterpillar_branching, path, random_branching_tree, random_connected_graph, random_tree, spider, star,
};
use burnkit::io::{read_edge_list, write_edge_list, LabelMap};
use burnkit::power::{burn_graph_power, extract_branching_spanning_tree, SpanningSearch};
use burnkit::schedule::{burn_branching_modified, burn_branching_tree, leafstrip_schedule, InnerStrategy};
use burnkit::verify::{run_all, run_suite, SuiteConfig, SuiteReport};
use burnkit::{
    exact_burning_number, exact_modified_burning_number, simulate, BurnSchedule, BurnTrace, Error, Graph,
    ScheduleCertificate, Tree,
};
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "burnkit", version, about = "Graph burning schedules, exact burning numbers and bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay a burning schedule and print the round-by-round table.
    Burn {
        #[command(flatten)]
        input: InputArgs,
        /// Comma-separated sources, as ids or labels.
        #[arg(long, value_delimiter = ',', required = true)]
        sources: Vec<String>,
        /// Vertices burned for free in round 1.
        #[arg(long, value_delimiter = ',')]
        initial: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exact (modified) burning number with a witness schedule.
    Exact {
        #[command(flatten)]
        input: InputArgs,
        /// Largest number of rounds to try [default: 2*ceil(sqrt(n))-1].
        #[arg(long)]
        budget: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        initial: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Constructive schedule for a k⁺-branching tree.
    Schedule {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Strategy::Branching)]
        strategy: Strategy,
        /// Burn this vertex for free in round 1 (branching strategy only).
        #[arg(long)]
        free: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Schedule for the k-th power of a connected graph.
    Power {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Extract a (k+1)⁺-branching spanning tree of the k-th power of a tree.
    Spantree {
        #[command(flatten)]
        input: InputArgs,
        /// Write the extracted tree as an edge list.
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Largest k with a k⁺-branching spanning tree, and the bound it gives.
    Branch {
        #[command(flatten)]
        input: InputArgs,
        /// Vertex cap for the exhaustive search.
        #[arg(long, default_value_t = SpanningSearch::default().max_vertices)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Every closed-form bound for n vertices and branching parameter k.
    Bounds {
        n: usize,
        k: usize,
        /// Also compute the exact burning number of this tree (requires --family or --input).
        #[command(flatten)]
        input: OptionalInput,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Thresholds below which the k⁺-branching bound is at least as good as the leaf-strip bound.
    Table1 {
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Run seeded property suites.
    Verify {
        /// Suite name; all suites when omitted.
        #[arg(long)]
        suite: Option<String>,
        #[arg(long, default_value_t = 100)]
        trees: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Strategy {
    Branching,
    LeafstripExact,
    LeafstripRecursive,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Path,
    Star,
    Spider,
    Complete,
    Caterpillar,
    RandomTree,
    BranchingTree,
    RandomGraph,
}

/// Exactly one of `--input` and `--family`.
#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// Edge-list file (`n <count>` header, then `u v` lines).
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
}

#[derive(Args)]
struct InputArgs {
    #[command(flatten)]
    source: Source,
    #[command(flatten)]
    gen: GenArgs,
    /// Label map with lines `<label> <id>`.
    #[arg(long)]
    labels: Option<PathBuf>,
}

#[derive(Args)]
struct OptionalInput {
    #[arg(long, conflicts_with = "family")]
    input: Option<PathBuf>,
    #[arg(long, value_enum)]
    family: Option<Family>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    m: Option<usize>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Branching parameter (or power exponent for `power` and `spantree`).
    #[arg(long)]
    k: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Edge count for random graphs [default: n + n/2].
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    legs: Option<usize>,
    #[arg(long)]
    leg_len: Option<usize>,
}

/// A failure mapped to an exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExceeded(_) => 3,
            Error::Defect(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn need(v: Option<usize>, flag: &str) -> CliResult<usize> {
    v.ok_or_else(|| input_error(format!("--{flag} is required here")))
}

fn generate(family: Family, gen: &GenArgs) -> CliResult<Graph> {
    let g = match family {
        Family::Spider => spider(need(gen.legs, "legs")?, need(gen.leg_len, "leg-len")?)?.into_graph(),
        Family::Path => path(need(gen.n, "n")?)?.into_graph(),
        Family::Star => star(need(gen.n, "n")?)?.into_graph(),
        Family::Complete => Graph::complete(need(gen.n, "n")?)?,
        Family::Caterpillar => caterpillar_branching(need(gen.n, "n")?, need(gen.k, "k")?, gen.seed)?.into_graph(),
        Family::RandomTree => random_tree(need(gen.n, "n")?, gen.seed)?.into_graph(),
        Family::BranchingTree => random_branching_tree(need(gen.n, "n")?, need(gen.k, "k")?, gen.seed)?.into_graph(),
        Family::RandomGraph => {
            let n = need(gen.n, "n")?;
            random_connected_graph(n, gen.m.unwrap_or(n + n / 2).min(n * n.saturating_sub(1) / 2).max(n.saturating_sub(1)), gen.seed)?
        }
    };
    Ok(g)
}

impl InputArgs {
    fn graph(&self) -> CliResult<Graph> {
        match (&self.source.input, self.source.family) {
            (Some(path), _) => Ok(read_edge_list(path)?),
            (None, Some(family)) => generate(family, &self.gen),
            (None, None) => Err(input_error("one of --input or --family is required")),
        }
    }

    fn tree(&self) -> CliResult<Tree> {
        Ok(Tree::new(self.graph()?)?)
    }

    fn labels(&self) -> CliResult<LabelMap> {
        match &self.labels {
            Some(p) => Ok(LabelMap::read(p)?),
            None => Ok(LabelMap::default()),
        }
    }

    fn k(&self) -> CliResult<usize> {
        need(self.gen.k, "k")
    }
}

fn resolve_all(labels: &LabelMap, tokens: &[String]) -> CliResult<Vec<usize>> {
    Ok(tokens.iter().map(|t| labels.resolve(t.trim())).collect::<burnkit::Result<_>>()?)
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

fn join(labels: &LabelMap, vs: &[usize]) -> String {
    vs.iter().map(|&v| labels.label(v)).collect::<Vec<_>>().join(" ")
}

fn trace_table(labels: &LabelMap, trace: &BurnTrace, format: Format) -> String {
    let mut out = String::new();
    match format {
        Format::Csv => {
            out.push_str("round,source,burned\n");
            for (i, &s) in trace.sources.iter().enumerate() {
                let _ = writeln!(out, "{},{},{}", i + 1, labels.label(s), join(labels, &trace.burned_in_round(i + 1)));
            }
        }
        _ => {
            out.push_str("round  source  burned\n");
            for (i, &s) in trace.sources.iter().enumerate() {
                let _ = writeln!(out, "{:>5}  {:>6}  {}", i + 1, labels.label(s), join(labels, &trace.burned_in_round(i + 1)));
            }
            if trace.is_complete() {
                let _ = writeln!(out, "all {} vertices burned by round {}", trace.burn_round.len(), trace.completion_round().unwrap_or(0));
            } else {
                let _ = writeln!(out, "unburned: {}", join(labels, &trace.unburned()));
            }
        }
    }
    out
}

/// Replays a certificate before anything is printed.
fn revalidate(g: &Graph, cert: &ScheduleCertificate) -> CliResult<BurnTrace> {
    cert.verify(g)?;
    Ok(simulate(g, &cert.schedule)?)
}

fn certificate_text(labels: &LabelMap, cert: &ScheduleCertificate, trace: &BurnTrace) -> String {
    let mut out = format!(
        "rounds: {} (bound {})\nsources: {}\n",
        cert.claimed_rounds,
        cert.bound_value,
        join(labels, cert.schedule.sources())
    );
    if cert.schedule.is_modified() {
        let _ = writeln!(out, "initial: {}", join(labels, cert.schedule.initial_set()));
    }
    if let Some(r) = cert.reference_bound {
        let _ = writeln!(out, "closed-form bound: {r}");
    }
    out.push_str(&trace_table(labels, trace, Format::Text));
    out
}

fn run(cli: Cli) -> CliResult<(String, u8)> {
    let ok = |s: String| Ok((s, 0));
    match cli.command {
        Command::Burn { input, sources, initial, format } => {
            let g = input.graph()?;
            let labels = input.labels()?;
            let schedule = BurnSchedule::modified(resolve_all(&labels, &initial)?, resolve_all(&labels, &sources)?)?;
            let trace = simulate(&g, &schedule)?;
            match format {
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Replay<'a> {
                        schedule: &'a BurnSchedule,
                        trace: &'a BurnTrace,
                    }
                    ok(to_json(&Replay { schedule: &schedule, trace: &trace }))
                }
                f => ok(trace_table(&labels, &trace, f)),
            }
        }
        Command::Exact { input, budget, initial, format } => {
            let g = input.graph()?;
            let labels = input.labels()?;
            let initial = resolve_all(&labels, &initial)?;
            let budget = budget.unwrap_or_else(|| default_round_budget(g.n().max(1)));
            if g.n() > exact_vertex_cap() {
                return Err(input_error(format!("graph has {} vertices, exact cap is {}", g.n(), exact_vertex_cap())));
            }
            let result = if initial.is_empty() {
                exact_burning_number(&g, budget)
            } else {
                exact_modified_burning_number(&g, &initial, budget)
            };
            let result = match result {
                Err(Error::BudgetExceeded(msg)) => {
                    let partial = match format {
                        Format::Json => to_json(&serde_json::json!({ "lower_bound": budget + 1, "exact": false })),
                        Format::Csv => format!("b,exact\n{},false\n", budget + 1),
                        Format::Text => format!("burning number exceeds {budget}\n"),
                    };
                    eprintln!("budget exceeded: {msg}");
                    return Ok((partial, 3));
                }
                r => r?,
            };
            let trace = simulate(&g, &result.witness)?;
            if !trace.is_complete() {
                return Err(Error::Defect("witness failed to replay".into()).into());
            }
            match format {
                Format::Json => ok(to_json(&result)),
                Format::Csv => ok(format!("b,sources\n{},{}\n", result.value, join(&labels, result.witness.sources()))),
                Format::Text => ok(format!(
                    "b = {}\nwitness: {}\n{}",
                    result.value,
                    join(&labels, result.witness.sources()),
                    trace_table(&labels, &trace, Format::Text)
                )),
            }
        }
        Command::Schedule { input, strategy, free, format } => {
            let t = input.tree()?;
            let labels = input.labels()?;
            let k = input.k()?;
            let cert = match (strategy, free) {
                (Strategy::Branching, None) => burn_branching_tree(&t, k)?,
                (Strategy::Branching, Some(y)) => burn_branching_modified(&t, k, labels.resolve(&y)?)?,
                (_, Some(_)) => return Err(input_error("--free only applies to the branching strategy")),
                (Strategy::LeafstripExact, None) => leafstrip_schedule(&t, k, InnerStrategy::Exact)?,
                (Strategy::LeafstripRecursive, None) => leafstrip_schedule(&t, k, InnerStrategy::Recursive)?,
            };
            let trace = revalidate(t.graph(), &cert)?;
            match format {
                Format::Json => ok(to_json(&cert)),
                Format::Csv => ok(trace_table(&labels, &trace, Format::Csv)),
                Format::Text => ok(certificate_text(&labels, &cert, &trace)),
            }
        }
        Command::Power { input, format } => {
            let g = input.graph()?;
            let labels = input.labels()?;
            let k = input.k()?;
            let cert = burn_graph_power(&g, k)?;
            let gk = burnkit::graph_power(&g, k)?;
            let trace = revalidate(&gk, &cert.certificate)?;
            match format {
                Format::Json => ok(to_json(&cert)),
                Format::Csv => ok(trace_table(&labels, &trace, Format::Csv)),
                Format::Text => ok(certificate_text(&labels, &cert.certificate, &trace)),
            }
        }
        Command::Spantree { input, output, format } => {
            let t = input.tree()?;
            let k = input.k()?;
            let (s, log) = extract_branching_spanning_tree(&t, k)?;
            log.verify(&t, k)?;
            if let Some(path) = output {
                std::fs::write(&path, write_edge_list(s.graph())).map_err(Error::from)?;
            }
            match format {
                Format::Json => {
                    #[derive(serde::Serialize)]
                    struct Extracted {
                        edges: Vec<(usize, usize)>,
                        peeling: burnkit::power::PeelingLog,
                    }
                    ok(to_json(&Extracted { edges: s.graph().edges(), peeling: log }))
                }
                Format::Csv => {
                    let mut out = String::from("u,v\n");
                    for (u, v) in s.graph().edges() {
                        let _ = writeln!(out, "{u},{v}");
                    }
                    ok(out)
                }
                Format::Text => ok(write_edge_list(s.graph())),
            }
        }
        Command::Branch { input, budget, format } => {
            let g = input.graph()?;
            let r = branch_number(&g, SpanningSearch { max_vertices: budget })?;
            let out = match format {
                Format::Json => to_json(&r),
                Format::Csv => format!("branch,exact,combined_bound\n{},{},{}\n", r.value, r.exact, r.combined_bound),
                Format::Text => format!(
                    "branch {} {}\ncombined bound {}\n",
                    if r.exact { "=" } else { ">=" },
                    r.value,
                    r.combined_bound
                ),
            };
            Ok((out, if r.exact { 0 } else { 3 }))
        }
        Command::Bounds { n, k, input, format } => {
            let exact = match (&input.input, input.family) {
                (None, None) => None,
                (path, family) => {
                    let args = InputArgs {
                        source: Source { input: path.clone(), family },
                        gen: GenArgs { n: Some(n), k: Some(k), seed: input.seed, m: input.m, legs: None, leg_len: None },
                        labels: None,
                    };
                    let g = args.graph()?;
                    if g.n() != n {
                        return Err(input_error(format!("graph has {} vertices, expected {n}", g.n())));
                    }
                    Some(exact_burning_number(&g, default_round_budget(n))?.value)
                }
            };
            let r = bound_report(n, k, exact)?;
            let code = if r.is_consistent() { 0 } else { 1 };
            Ok((report_out(&r, format), code))
        }
        Command::Table1 { format } => {
            let rows = table1();
            let out = match format {
                Format::Csv => burnkit::bounds::table1_csv(),
                Format::Json => to_json(
                    &rows
                        .iter()
                        .map(|&(k, n)| serde_json::json!({ "k": k, "n": n, "closed_form": threshold_closed_form(k) }))
                        .collect::<Vec<_>>(),
                ),
                Format::Text => {
                    let mut out = format!("{:>4}  {:>5}  {:>10}\n", "k", "n", "closed form");
                    for (k, n) in rows {
                        let _ = writeln!(out, "{k:>4}  {n:>5}  {:>10.3}", threshold_closed_form(k));
                    }
                    out
                }
            };
            ok(out)
        }
        Command::Verify { suite, trees, seed, format } => {
            if trees == 0 {
                return Err(input_error("--trees must be positive"));
            }
            let cfg = SuiteConfig { trees, seed };
            let reports = match suite {
                Some(name) => vec![run_suite(&name, &cfg)?],
                None => run_all(&cfg),
            };
            let code = if reports.iter().all(SuiteReport::passed) { 0 } else { 1 };
            Ok((verify_out(&reports, format), code))
        }
    }
}

fn report_out(r: &BoundReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => format!("{}\n{}\n", BoundReport::CSV_HEADER, r.csv_row()),
        Format::Text => {
            let cell = |v: Option<usize>| v.map_or_else(|| "-".to_string(), |x| x.to_string());
            let mut out = String::new();
            let _ = writeln!(out, "n {}  k {}", r.n, r.k);
            let _ = writeln!(out, "bound_branching {}", cell(r.bound_branching));
            let _ = writeln!(out, "bound_power {}", cell(r.bound_power));
            let _ = writeln!(out, "bound_leafstrip {}", cell(r.bound_leafstrip));
            let _ = writeln!(out, "caterpillar_lb {}", cell(r.caterpillar_lb));
            if let Some(b) = r.exact_b {
                let _ = writeln!(out, "exact_b {b}");
            }
            out
        }
    }
}

fn verify_out(reports: &[SuiteReport], format: Format) -> String {
    match format {
        Format::Json => to_json(&reports),
        Format::Csv => {
            let mut out = String::from("suite,cases,failures\n");
            for r in reports {
                let _ = writeln!(out, "{},{},{}", r.suite, r.cases, r.failures);
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for r in reports {
                let status = if r.passed() { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{status} {} ({} cases, {} failures)", r.suite, r.cases, r.failures);
                for e in &r.examples {
                    let _ = writeln!(out, "    {e}");
                }
            }
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

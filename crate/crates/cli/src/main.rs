use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use kempe_core::coloring::{chromatic_number, is_coloring, is_kempe, unique_optimal_coloring};
use kempe_core::connectivity::vertex_connectivity;
use kempe_core::enumerate::{enumerate_graphs, EnumSpec, Filters};
use kempe_core::generators::{
    apex_augment, grid3k, rotational_tournament, tournament_double_cover, unique_pm_graph,
};
use kempe_core::harness::{c1_campaign, p1_campaign, CampaignReport, Checkpoint, Verdict};
use kempe_core::matching::kotzig_decompose;
use kempe_core::minors::{
    hadwiger_number_with, kempe_clique_minor_k6_with, shallow_minor_rooted, shallow_number_with,
};
use kempe_core::{Budget, CliqueMinor, Coloring, Edge, Error, Graph, Matching, SearchConfig};

const EXIT_USAGE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_VIOLATION: u8 = 3;
const EXIT_INCONCLUSIVE: u8 = 4;

#[derive(Parser)]
#[command(name = "kempe", version, about = "Clique minors from Kempe colorings and unique colorings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Limits {
    /// Largest graph the exhaustive oracles may be run on.
    #[arg(long)]
    oracle_bound: Option<usize>,
    /// Wall-clock limit for the whole command, in seconds.
    #[arg(long)]
    deadline: Option<f64>,
}

impl Limits {
    fn config(&self) -> anyhow::Result<SearchConfig> {
        let mut cfg = SearchConfig::default();
        if let Some(b) = self.oracle_bound {
            cfg.hadwiger_bound = b;
            cfg.shallow_bound = b;
            cfg.rooted_bound = b;
        }
        if let Some(s) = self.deadline {
            if !(s.is_finite() && s >= 0.0) {
                bail!(Error::InvalidInput(format!("deadline must be a nonnegative number, got {s}")));
            }
            cfg.budget = Budget::with_timeout(Duration::from_secs_f64(s));
        }
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Report chromatic number, unique colorability, Kempe status and oracle values.
    Analyze {
        #[arg(long)]
        input: PathBuf,
        /// Coloring to test for the Kempe property instead of the optimal one.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Build traversed shallow clique minors from the unique coloring for every transversal.
    VerifyT4 {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        /// Check only the first N transversals.
        #[arg(long)]
        sample: Option<u128>,
        /// Print the decomposition levels as JSON lines.
        #[arg(long)]
        trace: bool,
    },
    /// Build a clique minor of size k from a Kempe coloring of size k <= 6.
    MinorK6 {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to the "coloring" field of the input file.
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
    /// Write a generated graph (and its coloring or matching) as JSON.
    Generate {
        #[command(subcommand)]
        family: Family,
    },
    /// Run a conjecture-testing campaign.
    Search {
        #[command(subcommand)]
        problem: Problem,
    },
}

#[derive(Subcommand)]
enum Family {
    /// The 3 x k grid family with its minimal Kempe coloring.
    Grid3k {
        #[arg(long)]
        k: usize,
    },
    /// Double cover of the rotational tournament on 2k+1 vertices.
    TournamentCover {
        #[arg(long)]
        k: usize,
    },
    /// Arcs of the rotational tournament on 2k+1 vertices.
    Rotational {
        #[arg(long)]
        k: usize,
    },
    /// Random graph with a unique perfect matching.
    UniquePm {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Add universal vertices to a colored graph.
    Apex {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        coloring: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum Problem {
    /// Balanced sets on all triangle-free graphs with n vertices.
    P1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Traversed clique minors of Kempe colorings, for one graph or all graphs on n vertices.
    C1 {
        #[arg(long, conflicts_with = "n")]
        input: Option<PathBuf>,
        #[arg(long, requires = "input")]
        coloring: Option<PathBuf>,
        #[arg(long, requires = "k")]
        n: Option<usize>,
        /// Coloring size when enumerating graphs.
        #[arg(long)]
        k: Option<usize>,
        /// Comma-separated enumeration filters, e.g. connected,antitriangle-free.
        #[arg(long, default_value = "")]
        filter: String,
        #[arg(long)]
        sample: Option<u128>,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[command(flatten)]
        limits: Limits,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("{}: {e}", path.display())).into())
}

fn load_graph(path: &Path) -> anyhow::Result<Graph> {
    Graph::parse(&read(path)?).with_context(|| format!("reading graph from {}", path.display()))
}

/// Reads a coloring from a JSON list of classes, or from the "coloring" field
/// of a JSON object.
fn load_coloring(path: &Path, g: &Graph) -> anyhow::Result<Coloring> {
    let text = read(path)?;
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    let value = match value {
        Value::Object(mut map) => map
            .remove("coloring")
            .ok_or_else(|| Error::InvalidInput(format!("{}: no \"coloring\" field", path.display())))?,
        v => v,
    };
    let c: Coloring =
        serde_json::from_value(value).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    if !is_coloring(g, &c) {
        bail!(Error::InvalidInput(format!("{}: not a coloring of the graph", path.display())));
    }
    Ok(c)
}

fn coloring_arg(input: &Path, coloring: Option<&Path>, g: &Graph) -> anyhow::Result<Coloring> {
    load_coloring(coloring.unwrap_or(input), g)
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn print_certificate(g: &Graph, k: &CliqueMinor) {
    println!("minor: {}", k.to_json());
    for (i, j, e) in k.adjacency_certificate(g) {
        match e {
            Some(e) => println!("  sets {i} and {j}: edge {}-{}", e.u(), e.v()),
            None => println!("  sets {i} and {j}: not adjacent"),
        }
    }
}

fn oracle_line(name: &str, r: kempe_core::Result<usize>) -> anyhow::Result<()> {
    match r {
        Ok(v) => println!("{name}: {v}"),
        Err(Error::BoundExceeded { n, bound, .. }) => println!("{name}: skipped (n = {n} > bound {bound})"),
        Err(Error::Inconclusive(_)) => println!("{name}: inconclusive (deadline reached)"),
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn analyze(input: &Path, coloring: Option<&Path>, limits: &Limits) -> anyhow::Result<ExitCode> {
    let g = load_graph(input)?;
    let cfg = limits.config()?;
    let (chi, witness) = chromatic_number(&g);
    let unique = unique_optimal_coloring(&g);
    println!("n: {}", g.n());
    println!("edges: {}", g.edge_count());
    println!("chromatic number: {chi}");
    println!("coloring: {}", witness.to_json());
    println!("unique: {}", yes(unique.is_some()));
    let tested = match coloring {
        Some(p) => load_coloring(p, &g)?,
        None => witness,
    };
    println!("kempe: {} (coloring of size {})", yes(is_kempe(&g, &tested)?), tested.len());
    match g.find_antitriangle() {
        Some(t) => println!("antitriangle: {t:?}"),
        None => println!("antitriangle: none"),
    }
    println!("connectivity: {}", vertex_connectivity(&g));
    oracle_line("hadwiger number", hadwiger_number_with(&g, &cfg))?;
    oracle_line("shallow number", shallow_number_with(&g, &cfg))?;
    Ok(ExitCode::SUCCESS)
}

fn verify_t4(input: &Path, coloring: Option<&Path>, sample: Option<u128>, trace: bool) -> anyhow::Result<ExitCode> {
    let g = load_graph(input)?;
    let c = match coloring {
        Some(p) => load_coloring(p, &g)?,
        None => unique_optimal_coloring(&g)
            .ok_or_else(|| Error::InvalidInput("graph has more than one optimal coloring".into()))?,
    };
    if trace {
        let pairs: Vec<Edge> = c
            .classes()
            .iter()
            .filter(|d| d.len() == 2)
            .map(|d| {
                let v = d.to_vec();
                Edge::new(v[0], v[1])
            })
            .collect();
        let support = pairs.iter().fold(kempe_core::VertexSet::EMPTY, |a, e| a | e.vertices());
        let (h, map) = g.complement().induced_subgraph(support)?;
        let local = Matching::new(
            pairs
                .iter()
                .map(|e| {
                    let pos = |v| map.binary_search(&v).unwrap();
                    Edge::new(pos(e.u()), pos(e.v()))
                })
                .collect(),
        )?;
        for step in kotzig_decompose(&h, &local)? {
            println!("{}", json!({ "vertex_map": map, "step": step }));
        }
    }
    let total = c.transversal_count();
    let count = sample.map_or(total, |s| s.min(total));
    for idx in 0..count {
        let t = c.transversal_at(idx).unwrap();
        shallow_minor_rooted(&g, &c, t).with_context(|| format!("transversal {idx}"))?;
    }
    println!("verified {count} of {total} transversals: shallow clique minors of size {} traversed by each", c.len());
    Ok(ExitCode::SUCCESS)
}

fn minor_k6(input: &Path, coloring: Option<&Path>, limits: &Limits) -> anyhow::Result<ExitCode> {
    let g = load_graph(input)?;
    let c = coloring_arg(input, coloring, &g)?;
    let cfg = limits.config()?;
    let k = kempe_clique_minor_k6_with(&g, &c, &cfg)?;
    println!("coloring size: {}", c.len());
    println!("minor size: {}", k.len());
    print_certificate(&g, &k);
    Ok(ExitCode::SUCCESS)
}

fn generate(family: &Family) -> anyhow::Result<ExitCode> {
    let out = match family {
        Family::Grid3k { k } => {
            let (g, c) = grid3k(*k)?;
            json!({ "n": g.n(), "edges": g, "coloring": c })
        }
        Family::TournamentCover { k } => {
            let (g, m) = tournament_double_cover(&rotational_tournament(*k)?)?;
            let classes: Vec<_> = m.edges().iter().map(|e| e.vertices()).collect();
            json!({ "n": g.n(), "edges": g, "matching": m, "complement_coloring": classes })
        }
        Family::Rotational { k } => {
            let t = rotational_tournament(*k)?;
            let arcs: Vec<[usize; 2]> = (0..t.n())
                .flat_map(|u| t.out_neighbors(u).iter().map(move |v| [u, v]))
                .collect();
            json!({ "n": t.n(), "arcs": arcs, "connectivity": t.connectivity() })
        }
        Family::UniquePm { n, density, seed } => {
            let (g, m) = unique_pm_graph(*n, *density, *seed)?;
            json!({ "n": g.n(), "edges": g, "matching": m })
        }
        Family::Apex { input, coloring, count } => {
            let g = load_graph(input)?;
            let c = coloring_arg(input, coloring.as_deref(), &g)?;
            let (h, d) = apex_augment(&g, &c, *count)?;
            json!({ "n": h.n(), "edges": h, "coloring": d })
        }
    };
    // Flatten the nested graph object so the output is itself a graph file.
    let mut out = out;
    if let Some(Value::Object(g)) = out.get("edges").cloned() {
        out["edges"] = g["edges"].clone();
    }
    println!("{out}");
    Ok(ExitCode::SUCCESS)
}

fn report_exit(report: &CampaignReport, what: &str) -> ExitCode {
    println!(
        "{what}: {} found, {} none, {} inconclusive, {} skipped from checkpoint",
        report.found, report.none, report.inconclusive, report.skipped
    );
    for f in report.findings.iter().filter(|f| f.verdict == Verdict::None) {
        println!("none: {} {}", f.key, f.graph.to_json());
    }
    if report.none > 0 {
        ExitCode::from(EXIT_VIOLATION)
    } else if report.inconclusive > 0 {
        ExitCode::from(EXIT_INCONCLUSIVE)
    } else {
        ExitCode::SUCCESS
    }
}

fn search(problem: &Problem) -> anyhow::Result<ExitCode> {
    match problem {
        Problem::P1 { n, checkpoint } => {
            let report = p1_campaign(*n, checkpoint.as_deref())?;
            Ok(report_exit(&report, &format!("p1 n={n}")))
        }
        Problem::C1 { input, coloring, n, k, filter, sample, checkpoint, limits } => {
            let cfg = limits.config()?;
            let mut cp = checkpoint.as_deref().map(Checkpoint::open).transpose()?;
            let mut total = CampaignReport::default();
            let mut merge = |r: CampaignReport| {
                total.found += r.found;
                total.none += r.none;
                total.inconclusive += r.inconclusive;
                total.skipped += r.skipped;
                total.findings.extend(r.findings);
            };
            match (input, n, k) {
                (Some(input), _, _) => {
                    let g = load_graph(input)?;
                    let c = coloring_arg(input, coloring.as_deref(), &g)?;
                    merge(c1_campaign(&g, &c, "0", *sample, &cfg, &mut cp)?);
                }
                (None, Some(n), Some(k)) => {
                    let spec = EnumSpec { n: *n, filters: Filters::parse(filter)?, dedup: true };
                    for g in enumerate_graphs(&spec)? {
                        let colorings = kempe_core::coloring::colorings_of_size(&g, *k, usize::MAX);
                        for (i, c) in colorings.iter().enumerate() {
                            if is_kempe(&g, c)? {
                                merge(c1_campaign(&g, c, &i.to_string(), *sample, &cfg, &mut cp)?);
                            }
                        }
                    }
                }
                _ => bail!(UsageError("search c1 needs --input, or --n with --k".into())),
            }
            Ok(report_exit(&total, "c1"))
        }
    }
}

#[derive(Debug)]
struct UsageError(String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn exit_code(e: &anyhow::Error) -> u8 {
    if e.downcast_ref::<UsageError>().is_some() {
        return EXIT_USAGE;
    }
    match e.downcast_ref::<Error>() {
        Some(Error::TheoremViolation(_)) => EXIT_VIOLATION,
        Some(Error::Inconclusive(_)) | Some(Error::BoundExceeded { .. }) => EXIT_INCONCLUSIVE,
        _ => EXIT_INVALID,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Analyze { input, coloring, limits } => analyze(input, coloring.as_deref(), limits),
        Command::VerifyT4 { input, coloring, sample, trace } => {
            verify_t4(input, coloring.as_deref(), *sample, *trace)
        }
        Command::MinorK6 { input, coloring, limits } => minor_k6(input, coloring.as_deref(), limits),
        Command::Generate { family } => generate(family),
        Command::Search { problem } => search(problem),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use proxrem::bipartite::{self, BipartiteReport};
use proxrem::constructions::ConstructionSpec;
use proxrem::format;
use proxrem::search::{self, Class, Dedup, Predicate, RandomQuery, SearchQuery};
use proxrem::verify::{self, Check, Instance, RadiusFamily, VerificationReport};
use proxrem::{Digraph, Error, MetricsReport};

#[derive(Parser, Debug)]
#[command(name = "proxrem", version, about = "Proximity and remoteness of strong digraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Distance invariants of every digraph in the input.
    Analyze(AnalyzeArgs),
    /// Emit a member of a named family.
    Construct(ConstructArgs),
    /// Run checks on given digraphs, a family member, or a whole class.
    Verify(VerifyArgs),
    /// Enumerate a class and keep the members matching every predicate.
    Search(SearchArgs),
    /// Run checks on every member of a class; exits 1 on any failure.
    ExhaustiveVerify(ExhaustiveArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum InputFormat {
    Digraph6,
    Graph6,
    Edgelist,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum OutputFormat {
    Digraph6,
    Graph6,
    Edgelist,
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Input file; `-` or absent reads standard input.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Input format; inferred from the extension (.d6, .g6, .el) or the content otherwise.
    #[arg(long)]
    format: Option<InputFormat>,
    /// Read edge lists as undirected regardless of their header.
    #[arg(long)]
    undirected: bool,
}

#[derive(Args, Debug)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Add the bipartite-tournament report.
    #[arg(long)]
    bipartite: bool,
    /// Emit CSV rows instead of JSON lines.
    #[arg(long)]
    csv: bool,
}

#[derive(Args, Debug)]
struct ConstructArgs {
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    c: Option<usize>,
    #[arg(long)]
    t: Option<usize>,
    #[arg(long)]
    half: Option<usize>,
    /// Backward arcs for ham_extremal, written `j>i;j>i`.
    #[arg(long)]
    back_arcs: Option<String>,
    #[arg(long, value_enum, default_value = "digraph6")]
    format: OutputFormat,
    /// Check the family's documented invariants; exit 1 if any fails.
    #[arg(long)]
    expect: bool,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Comma-separated check ids, or the groups digraph, tournament, bipartite, all.
    checks: String,
    #[command(flatten)]
    input: InputArgs,
    /// A family member, e.g. `hub_digraph:n=6,c=2`.
    #[arg(long, conflicts_with_all = ["input", "enumerate"])]
    family: Option<String>,
    /// A whole class, e.g. `tournaments,5` or `bipartite_tournaments,3,3`.
    #[arg(long, conflicts_with = "input")]
    enumerate: Option<String>,
    #[arg(long, env = "PROXREM_SHARDS")]
    shards: Option<usize>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ClassName {
    #[value(alias = "all_digraphs")]
    AllDigraphs,
    Tournaments,
    #[value(alias = "bipartite_tournaments")]
    BipartiteTournaments,
    #[value(alias = "symmetric_digraphs")]
    SymmetricDigraphs,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, value_enum)]
    class: Option<ClassName>,
    #[arg(long)]
    n: Option<usize>,
    /// First part size for bipartite tournaments.
    #[arg(long)]
    a: Option<usize>,
    /// Second part size for bipartite tournaments.
    #[arg(long)]
    b: Option<usize>,
    /// Comma-separated predicates, all of which must hold.
    #[arg(long, default_value = "")]
    pred: String,
    #[arg(long, default_value = "none")]
    dedup: String,
    #[arg(long, env = "PROXREM_SHARDS")]
    shards: Option<usize>,
    /// Write matching digraph6 strings here, one per line.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    limit: Option<usize>,
    /// Print the full result, metrics included, as JSON.
    #[arg(long)]
    json: bool,
    /// Sample random graphs with a fixed degree sequence instead of enumerating.
    #[arg(long)]
    random: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 50_000)]
    budget: u64,
    /// Degree sequence for random mode, e.g. `3^6,4^3`.
    #[arg(long)]
    degrees: Option<String>,
    /// Stop once a sample is isomorphic to this family member, e.g. `fig1_graph`.
    #[arg(long)]
    target: Option<String>,
}

#[derive(Args, Debug)]
struct ExhaustiveArgs {
    checks: String,
    #[arg(value_enum)]
    class: ClassName,
    /// `n`, or the two part sizes for bipartite tournaments.
    #[arg(required = true, num_args = 1..=2)]
    sizes: Vec<usize>,
    #[arg(long, env = "PROXREM_SHARDS")]
    shards: Option<usize>,
}

#[derive(Debug)]
enum Failure {
    /// Bad arguments or input; exit 2.
    Usage(String),
    /// A check failed or an expectation did not hold; exit 1.
    Inconsistent,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze(a) => analyze(a),
        Command::Construct(a) => construct(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Search(a) => search_cmd(a),
        Command::ExhaustiveVerify(a) => exhaustive(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Inconsistent) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn default_shards(flag: Option<usize>) -> usize {
    flag.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

fn read_input(path: Option<&Path>) -> io::Result<String> {
    match path {
        Some(p) if p != Path::new("-") => fs::read_to_string(p),
        _ => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn infer_format(path: Option<&Path>, text: &str) -> InputFormat {
    let ext = path.and_then(|p| p.extension()).and_then(|e| e.to_str());
    match ext {
        Some("d6") => return InputFormat::Digraph6,
        Some("g6") => return InputFormat::Graph6,
        Some("el") | Some("edges") => return InputFormat::Edgelist,
        _ => {}
    }
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.starts_with('&') {
        InputFormat::Digraph6
    } else if first.starts_with("n ") {
        InputFormat::Edgelist
    } else {
        InputFormat::Graph6
    }
}

/// Every digraph in the input, one per line for the string formats.
fn load(args: &InputArgs) -> Result<Vec<Digraph>, Failure> {
    let text = read_input(args.input.as_deref())?;
    let fmt = args.format.unwrap_or_else(|| infer_format(args.input.as_deref(), &text));
    let lines = || text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let out = match fmt {
        InputFormat::Digraph6 => lines().map(format::from_digraph6).collect::<Result<Vec<_>, _>>()?,
        InputFormat::Graph6 => lines().map(format::from_graph6).collect::<Result<Vec<_>, _>>()?,
        InputFormat::Edgelist => {
            let parsed = format::parse_edge_list(&text)?;
            if parsed.duplicates > 0 {
                eprintln!("warning: {} repeated pairs ignored", parsed.duplicates);
            }
            let d = if args.undirected && !parsed.undirected {
                let arcs: Vec<_> = parsed.digraph.arcs().collect();
                Digraph::from_undirected_edge_list(parsed.digraph.order(), &arcs)?
            } else {
                parsed.digraph
            };
            vec![d]
        }
    };
    if out.is_empty() {
        return Err(Failure::Usage("no digraph in the input".into()));
    }
    Ok(out)
}

/// The JSON written by `analyze` for one digraph.
#[derive(Serialize)]
struct Analysis {
    digraph6: String,
    metrics: MetricsReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    bipartite: Option<BipartiteReport>,
}

fn analyze(a: AnalyzeArgs) -> CliResult {
    let graphs = load(&a.input)?;
    let mut out = io::stdout().lock();
    if a.csv {
        writeln!(out, "{}", MetricsReport::CSV_HEADER)?;
    }
    for d in &graphs {
        let d6 = format::to_digraph6(d);
        let metrics = MetricsReport::compute(d)?;
        if a.csv {
            writeln!(out, "{}", metrics.csv_row(&d6))?;
            continue;
        }
        let bipartite = if a.bipartite {
            Some(bipartite::check_equality_criterion(d)?)
        } else {
            None
        };
        let report = Analysis {
            digraph6: d6,
            metrics,
            bipartite,
        };
        writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
    }
    Ok(())
}

fn construct(a: ConstructArgs) -> CliResult {
    let mut params: Vec<(&str, String)> = Vec::new();
    for (key, value) in [("n", a.n), ("c", a.c), ("t", a.t), ("half", a.half)] {
        if let Some(v) = value {
            params.push((key, v.to_string()));
        }
    }
    if let Some(arcs) = &a.back_arcs {
        params.push(("back_arcs", arcs.clone()));
    }
    let borrowed: Vec<(&str, &str)> = params.iter().map(|(k, v)| (*k, v.as_str())).collect();
    let spec = ConstructionSpec::from_parts(&a.family, &borrowed)?;
    let d = spec.build()?;
    let text = match a.format {
        OutputFormat::Digraph6 => format::to_digraph6(&d),
        OutputFormat::Graph6 => format::to_graph6(&d)?,
        OutputFormat::Edgelist => format::to_edge_list(&d, d.is_symmetric())?.trim_end().to_string(),
        OutputFormat::Json => {
            let metrics = MetricsReport::compute(&d)?;
            serde_json::to_string(&json!({
                "construction": spec,
                "digraph6": format::to_digraph6(&d),
                "metrics": metrics,
            }))
            .expect("serializable")
        }
        OutputFormat::Csv => {
            let metrics = MetricsReport::compute(&d)?;
            format!("{}\n{}", MetricsReport::CSV_HEADER, metrics.csv_row(&format::to_digraph6(&d)))
        }
    };
    println!("{text}");
    if a.expect {
        let violated = spec.expect(&d)?;
        for v in &violated {
            eprintln!("expectation failed for {spec}: {v}");
        }
        if !violated.is_empty() {
            return Err(Failure::Inconsistent);
        }
    }
    Ok(())
}

fn emit_reports(reports: &[VerificationReport]) -> CliResult {
    let mut out = io::stdout().lock();
    let mut ok = true;
    for r in reports {
        writeln!(out, "{}", serde_json::to_string(r).expect("serializable"))?;
        if !r.passed() {
            ok = false;
            eprintln!(
                "{} failed: {}",
                r.check,
                serde_json::to_string(&r.certificate).expect("serializable")
            );
        }
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Inconsistent)
    }
}

fn verify_cmd(a: VerifyArgs) -> CliResult {
    let checks = Check::parse_list(&a.checks)?;
    if let Some(class) = &a.enumerate {
        let class = Class::parse(class)?;
        return run_exhaustive(&checks, class, default_shards(a.shards));
    }
    if let Some(family) = &a.family {
        let spec: ConstructionSpec = family.parse()?;
        let d = spec.build()?;
        let radius_family = match spec {
            ConstructionSpec::Dicycle { n } => Some(RadiusFamily::Dicycle { n }),
            ConstructionSpec::HubDigraph { n, c } => Some(RadiusFamily::Hub { n, c }),
            _ => None,
        };
        let mut reports = Vec::new();
        for &c in &checks {
            let r = match (c, radius_family) {
                (Check::DigraphRadiusFacts, Some(f)) => verify::verify_radius_family(f)?,
                _ => c.run(&Instance::new(&d))?,
            };
            reports.push(r);
        }
        return emit_reports(&reports);
    }
    let graphs = load(&a.input)?;
    let mut reports = Vec::new();
    for d in &graphs {
        let inst = Instance::new(d);
        for &c in &checks {
            reports.push(c.run(&inst)?);
        }
    }
    emit_reports(&reports)
}

fn run_exhaustive(checks: &[Check], class: Class, shards: usize) -> CliResult {
    let summary = search::exhaustive_verify(checks, class, shards)?;
    println!("{}", serde_json::to_string(&summary).expect("serializable"));
    if summary.passed() {
        Ok(())
    } else {
        for r in &summary.counterexamples {
            eprintln!("{} failed: {}", r.check, serde_json::to_string(&r.certificate).expect("serializable"));
        }
        Err(Failure::Inconsistent)
    }
}

fn build_class(name: ClassName, n: Option<usize>, a: Option<usize>, b: Option<usize>) -> Result<Class, Failure> {
    let need = |v: Option<usize>, flag: &str| v.ok_or_else(|| Failure::Usage(format!("this class needs --{flag}")));
    let class = match name {
        ClassName::AllDigraphs => Class::AllDigraphs { n: need(n, "n")? },
        ClassName::Tournaments => Class::Tournaments { n: need(n, "n")? },
        ClassName::SymmetricDigraphs => Class::SymmetricDigraphs { n: need(n, "n")? },
        ClassName::BipartiteTournaments => Class::BipartiteTournaments {
            a: need(a, "a")?,
            b: need(b, "b")?,
        },
    };
    class.check_ceiling()?;
    Ok(class)
}

fn write_lines(path: &Path, lines: impl Iterator<Item = String>) -> io::Result<()> {
    let mut f = io::BufWriter::new(fs::File::create(path)?);
    for l in lines {
        writeln!(f, "{l}")?;
    }
    f.flush()
}

fn search_cmd(a: SearchArgs) -> CliResult {
    let predicates = Predicate::parse_list(&a.pred)?;
    if a.random {
        let n = a.n.ok_or_else(|| Failure::Usage("random search needs --n".into()))?;
        let degrees = a
            .degrees
            .as_deref()
            .ok_or_else(|| Failure::Usage("random search needs --degrees".into()))?;
        let target = match &a.target {
            Some(t) => Some(t.parse::<ConstructionSpec>()?.build()?),
            None => None,
        };
        let q = RandomQuery {
            n,
            degrees: search::parse_degrees(degrees)?,
            predicates,
            seed: a.seed,
            budget: a.budget,
            target,
        };
        let r = search::random_search(&q)?;
        if let Some(path) = &a.out {
            write_lines(path, r.classes.iter().cloned())?;
        }
        println!("{}", serde_json::to_string(&r).expect("serializable"));
        return Ok(());
    }
    let name = a
        .class
        .ok_or_else(|| Failure::Usage("--class is required unless --random is given".into()))?;
    let q = SearchQuery {
        class: build_class(name, a.n, a.a, a.b)?,
        predicates,
        dedup: a.dedup.parse::<Dedup>()?,
        limit: a.limit,
        shards: default_shards(a.shards),
    };
    let r = search::search(&q)?;
    let lines = r.matches.iter().map(|m| m.digraph6.clone());
    if a.json {
        if let Some(path) = &a.out {
            write_lines(path, lines)?;
        }
        println!("{}", serde_json::to_string(&r).expect("serializable"));
        return Ok(());
    }
    let summary = json!({
        "query": r.query,
        "scanned": r.scanned,
        "matched": r.matched,
        "reported": r.matches.len(),
        "elapsed_ms": r.elapsed_ms,
        "dedup_stats": r.dedup_stats,
    });
    match &a.out {
        Some(path) => {
            write_lines(path, lines)?;
            println!("{summary}");
        }
        None => {
            let mut out = io::stdout().lock();
            for l in lines {
                writeln!(out, "{l}")?;
            }
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn exhaustive(a: ExhaustiveArgs) -> CliResult {
    let checks = Check::parse_list(&a.checks)?;
    let (n, x, y) = match a.sizes.as_slice() {
        [n] => (Some(*n), None, None),
        [x, y] => (None, Some(*x), Some(*y)),
        _ => unreachable!("clap enforces one or two sizes"),
    };
    if (a.class == ClassName::BipartiteTournaments) != n.is_none() {
        return Err(Failure::Usage(
            "bipartite tournaments take two part sizes, other classes one order".into(),
        ));
    }
    let class = build_class(a.class, n, x, y)?;
    run_exhaustive(&checks, class, default_shards(a.shards))
}

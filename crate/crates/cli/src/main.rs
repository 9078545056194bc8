//! `bcont`: analyze graphs, compute b-spectra, certify b-continuity by
//! descent, generate graph families and screen graph6 streams.

mod screen;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bcontinuity::coloring::Coloring;
use bcontinuity::descent::{certify_continuity, certify_from, DescentError, DescentTrace};
use bcontinuity::graph::{
    all_trees, dense_vertices, generate, girth, m_degree, parse_edge_list, parse_graph6, Family, Girth, Graph,
    GraphError, GRAPH6_MAX_ORDER,
};
use bcontinuity::iris::{color_from_witness, find_dilated_iris, find_iris, IrisError, IrisWitness};
use bcontinuity::oracle::{Oracle, OracleError, SpectrumReport, DEFAULT_CAP};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "bcont", version, about = "b-colorings, b-spectra and b-continuity certificates for small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Girth, m(G), dense-vertex table and iris inventory.
    Analyze {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Opts,
        /// Only inspect irises of this size, and try to build the coloring.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Exact b-spectrum by exhaustive search.
    Spectrum {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Opts,
    },
    /// Descent trace from b(G) (or from --coloring) down to the chromatic number.
    Descend {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        opts: Opts,
        /// Start from this b-coloring, e.g. 1,2,3,1,2,3 (no oracle needed above the cap).
        #[arg(long)]
        coloring: Option<String>,
    },
    /// Write graph6 lines for a family; `trees:N` lists every tree on N vertices.
    Generate {
        #[arg(long, value_name = "SPEC")]
        gen: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of graphs for random families (seeds seed, seed+1, ...).
        #[arg(long, default_value_t = 1)]
        count: u64,
    },
    /// Read graph6 lines and report a continuity verdict per graph.
    Screen {
        /// Read from this file instead of standard input.
        #[arg(long, value_name = "FILE")]
        input: Option<PathBuf>,
        #[command(flatten)]
        opts: Opts,
        #[arg(long, value_name = "G")]
        girth_min: Option<usize>,
        #[arg(long)]
        regular: bool,
        #[arg(long)]
        bipartite: bool,
        /// Print the b-coloring witnessing every k of each spectrum.
        #[arg(long)]
        verbose: bool,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Generator spec, e.g. hypercube:3, crown:4, random_girth:20:10:7.
    #[arg(long, value_name = "SPEC")]
    gen: Option<String>,
    /// A graph6 string.
    #[arg(long, value_name = "GRAPH6")]
    g6: Option<String>,
    /// Edge-list file: `n` on the first line, then one `u v` per line.
    #[arg(long, value_name = "FILE")]
    edges: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct Opts {
    /// Largest vertex count the exact oracle accepts.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Directory for instance dumps on internal errors.
    #[arg(long, value_name = "DIR", default_value = ".")]
    dump_dir: PathBuf,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Cap(String),
    Io(String),
    Impossible { message: String, dump: String, graph: String },
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Impossible { .. } => 4,
            Failure::Io(_) => 1,
        }
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::CapExceeded { .. } => Failure::Cap(e.to_string()),
            OracleError::Coloring(c) => Failure::Usage(c.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let dump_dir = match &cli.command {
        Command::Analyze { opts, .. }
        | Command::Spectrum { opts, .. }
        | Command::Descend { opts, .. }
        | Command::Screen { opts, .. } => opts.dump_dir.clone(),
        Command::Generate { .. } => PathBuf::from("."),
    };
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            let code = failure.code();
            match failure {
                Failure::Usage(m) | Failure::Cap(m) | Failure::Io(m) => eprintln!("bcont: {m}"),
                Failure::Impossible { message, dump, graph } => {
                    eprintln!("bcont: internal impossible state: {message}");
                    match write_dump(&dump_dir, &graph, &dump) {
                        Ok(path) => eprintln!("bcont: instance written to {}", path.display()),
                        Err(e) => eprintln!("bcont: could not write instance dump: {e}"),
                    }
                }
            }
            ExitCode::from(code)
        }
    }
}

fn write_dump(dir: &Path, graph: &str, dump: &str) -> std::io::Result<PathBuf> {
    let path = dir.join(format!("bcont-impossible-{graph}.txt"));
    std::fs::write(&path, dump)?;
    Ok(path)
}

fn run(cli: Cli) -> Result<String, Failure> {
    match cli.command {
        Command::Analyze { input, opts, k } => {
            let g = load(&input, opts.seed)?;
            analyze(&g, k, opts.format)
        }
        Command::Spectrum { input, opts } => {
            let g = load(&input, opts.seed)?;
            let report = Oracle::with_cap(opts.cap).b_spectrum(&g)?;
            Ok(render(opts.format, &report, || spectrum_text(&report)))
        }
        Command::Descend { input, opts, coloring } => {
            let g = load(&input, opts.seed)?;
            descend(&g, &opts, coloring.as_deref())
        }
        Command::Generate { gen, seed, count } => generate_lines(&gen, seed, count),
        Command::Screen {
            input,
            opts,
            girth_min,
            regular,
            bipartite,
            verbose,
        } => {
            let text = match &input {
                Some(path) => read(path)?,
                None => std::io::read_to_string(std::io::stdin()).map_err(|e| Failure::Io(e.to_string()))?,
            };
            let filters = screen::Filters {
                girth_min,
                regular,
                bipartite,
            };
            let report = screen::screen(&text, &filters, Oracle::with_cap(opts.cap));
            Ok(render(opts.format, &report.for_output(verbose), || report.text(verbose)))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn load(input: &Input, seed: u64) -> Result<Graph, Failure> {
    if let Some(spec) = &input.gen {
        return Ok(generate(&Family::parse(spec, seed)?)?);
    }
    if let Some(text) = &input.g6 {
        return Ok(parse_graph6(text)?);
    }
    let path = input.edges.as_ref().expect("clap enforces one input");
    Ok(parse_edge_list(&read(path)?)?)
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => text(),
    }
}

fn graph6_of(g: &Graph) -> Option<String> {
    (g.n() <= GRAPH6_MAX_ORDER).then(|| g.to_graph6())
}

fn dump_name(g: &Graph) -> String {
    g.id().to_string()
}

fn impossible(g: &Graph, message: String, context: &str) -> Failure {
    let mut dump = String::new();
    match graph6_of(g) {
        Some(g6) => writeln!(dump, "graph6 {g6}").unwrap(),
        None => writeln!(dump, "n {}", g.n()).unwrap(),
    }
    for (u, v) in g.edges() {
        writeln!(dump, "{u} {v}").unwrap();
    }
    writeln!(dump, "error {message}").unwrap();
    dump.push_str(context);
    Failure::Impossible {
        message,
        dump,
        graph: dump_name(g),
    }
}

#[derive(Serialize)]
struct GraphSummary {
    n: usize,
    edges: usize,
    graph6: Option<String>,
}

#[derive(Serialize)]
struct DenseRow {
    k: usize,
    count: usize,
    vertices: Vec<usize>,
}

#[derive(Serialize)]
struct IrisRow {
    k: usize,
    iris: Option<IrisWitness>,
    dilated: Option<IrisWitness>,
    /// Set when --k asked for a construction.
    #[serde(skip_serializing_if = "Option::is_none")]
    coloring: Option<ConstructionOutcome>,
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum ConstructionOutcome {
    Built(Coloring),
    NotApplicable(String),
}

#[derive(Serialize)]
struct AnalyzeReport {
    graph: GraphSummary,
    girth: Girth,
    max_degree: usize,
    m: usize,
    dense: Vec<DenseRow>,
    irises: Vec<IrisRow>,
}

fn analyze(g: &Graph, only_k: Option<usize>, format: Format) -> Result<String, Failure> {
    let m = m_degree(g);
    let dense = (1..=g.max_degree() + 1)
        .map(|k| {
            let vertices = dense_vertices(g, k);
            DenseRow {
                k,
                count: vertices.len(),
                vertices,
            }
        })
        .collect();
    let ks: Vec<usize> = match only_k {
        Some(k) if k < 2 => return Err(Failure::Usage(format!("--k must be at least 2, got {k}"))),
        Some(k) => vec![k],
        None => (2..=m).collect(),
    };
    let mut irises = Vec::new();
    for k in ks {
        let iris = find_iris(g, k).map_err(|e| Failure::Usage(e.to_string()))?;
        let dilated = find_dilated_iris(g, k).map_err(|e| Failure::Usage(e.to_string()))?;
        let coloring = match only_k {
            Some(_) => Some(construct(g, iris.as_ref().or(dilated.as_ref()))?),
            None => None,
        };
        irises.push(IrisRow {
            k,
            iris,
            dilated,
            coloring,
        });
    }
    let report = AnalyzeReport {
        graph: GraphSummary {
            n: g.n(),
            edges: g.edge_count(),
            graph6: graph6_of(g),
        },
        girth: girth(g),
        max_degree: g.max_degree(),
        m,
        dense,
        irises,
    };
    Ok(render(format, &report, || analyze_text(&report)))
}

fn construct(g: &Graph, witness: Option<&IrisWitness>) -> Result<ConstructionOutcome, Failure> {
    let Some(w) = witness else {
        return Ok(ConstructionOutcome::NotApplicable("no iris".into()));
    };
    match color_from_witness(g, w) {
        Ok(c) => Ok(ConstructionOutcome::Built(c)),
        Err(IrisError::ImpossibleState { stage, detail }) => Err(impossible(
            g,
            format!("iris construction, {stage}: {detail}"),
            &format!("witness {}\n", serde_json::to_string(w).expect("witness serializes")),
        )),
        Err(e) => Ok(ConstructionOutcome::NotApplicable(e.to_string())),
    }
}

fn witness_text(w: &IrisWitness) -> String {
    let mut s = format!("center {} S {:?}", w.center, w.s_set);
    if !w.connectors.is_empty() {
        let conn: Vec<String> = w.connectors.iter().map(|(v, c)| format!("{v}<-{c}")).collect();
        write!(s, " via {}", conn.join(" ")).unwrap();
    }
    s
}

fn analyze_text(r: &AnalyzeReport) -> String {
    let mut out = String::new();
    writeln!(out, "n = {}, edges = {}", r.graph.n, r.graph.edges).unwrap();
    if let Some(g6) = &r.graph.graph6 {
        writeln!(out, "graph6 = {g6}").unwrap();
    }
    writeln!(out, "girth = {}", r.girth).unwrap();
    writeln!(out, "max degree = {}", r.max_degree).unwrap();
    writeln!(out, "m = {}", r.m).unwrap();
    writeln!(out, "dense vertices (degree >= k - 1):").unwrap();
    for row in &r.dense {
        writeln!(out, "  k = {:>2}: {:>3}  {:?}", row.k, row.count, row.vertices).unwrap();
    }
    writeln!(out, "irises:").unwrap();
    for row in &r.irises {
        let iris = row.iris.as_ref().map_or("none".to_string(), witness_text);
        let dilated = row.dilated.as_ref().map_or("none".to_string(), witness_text);
        writeln!(out, "  k = {}: iris {iris}; dilated {dilated}", row.k).unwrap();
        match &row.coloring {
            Some(ConstructionOutcome::Built(c)) => writeln!(out, "    b-coloring {c}").unwrap(),
            Some(ConstructionOutcome::NotApplicable(why)) => writeln!(out, "    no construction: {why}").unwrap(),
            None => {}
        }
    }
    out
}

fn spectrum_text(r: &SpectrumReport) -> String {
    let mut out = String::new();
    writeln!(out, "chi = {}, b = {}, m = {}", r.chi, r.b, r.m).unwrap();
    writeln!(out, "spectrum = {:?}", r.spectrum).unwrap();
    writeln!(out, "continuous = {}", r.is_continuous).unwrap();
    for (k, c) in &r.witnesses {
        writeln!(out, "  k = {k}: {c}").unwrap();
    }
    out
}

fn descend(g: &Graph, opts: &Opts, coloring: Option<&str>) -> Result<String, Failure> {
    let oracle = Oracle::with_cap(opts.cap);
    let trace = match coloring {
        Some(text) => {
            let start = Coloring::parse(g, text).map_err(|e| Failure::Usage(format!("--coloring: {e}")))?;
            certify_from(g, &start, Some(&oracle))
        }
        None => certify_continuity(g, &oracle),
    };
    let trace = trace.map_err(|e| match e {
        DescentError::Oracle(o) => Failure::from(o),
        DescentError::Rejected(r) => Failure::Usage(r.to_string()),
        DescentError::ImpossibleState { .. } | DescentError::Iris(IrisError::ImpossibleState { .. }) => {
            impossible(g, e.to_string(), &format!("start {}\n", coloring.unwrap_or("oracle b(G) witness")))
        }
        other => Failure::Usage(other.to_string()),
    })?;
    Ok(render(opts.format, &trace, || descent_text(&trace)))
}

fn descent_text(t: &DescentTrace) -> String {
    let mut out = String::new();
    writeln!(out, "graph {}: chi = {}, start k = {}", t.graph, t.chi, t.start_k).unwrap();
    for s in &t.steps {
        write!(out, "  {} -> {}: {}", s.before_k, s.after_k, s.mv.tag()).unwrap();
        if let bcontinuity::descent::Move::IrisFallback { witness } = &s.mv {
            write!(out, " ({:?} {})", witness.kind, witness_text(witness)).unwrap();
        }
        write!(out, ", resolved by {:?}", s.resolution).unwrap();
        match &s.resulting {
            Some(c) => writeln!(out, ": {c}").unwrap(),
            None => writeln!(out).unwrap(),
        }
    }
    writeln!(out, "achieved = {:?}", t.achieved).unwrap();
    writeln!(out, "verdict = {:?}", t.verdict).unwrap();
    writeln!(out, "oracle fallbacks = {}", t.oracle_fallbacks).unwrap();
    if !t.gap_exhibits.is_empty() {
        writeln!(out, "gap exhibits = {:?}", t.gap_exhibits).unwrap();
    }
    out
}

fn generate_lines(spec: &str, seed: u64, count: u64) -> Result<String, Failure> {
    let encode = |g: &Graph| {
        graph6_of(g).ok_or_else(|| {
            Failure::Usage(format!("{} vertices exceed the graph6 short form (max {GRAPH6_MAX_ORDER})", g.n()))
        })
    };
    let mut out = String::new();
    if let Some(n) = spec.strip_prefix("trees:") {
        let n: usize = n
            .parse()
            .map_err(|_| Failure::Usage(format!("{spec:?}: {n:?} is not a vertex count")))?;
        for t in all_trees(n) {
            writeln!(out, "{}", encode(&t)?).unwrap();
        }
        return Ok(out);
    }
    let family = Family::parse(spec, seed)?;
    let random = matches!(family, Family::RandomTree { .. } | Family::RandomGirth { .. });
    if count != 1 && !random {
        return Err(Failure::Usage(format!("--count needs a random family, got {family}")));
    }
    for i in 0..count {
        let f = match family {
            Family::RandomTree { n, seed } => Family::RandomTree { n, seed: seed + i },
            Family::RandomGirth { n, girth_min, seed } => Family::RandomGirth {
                n,
                girth_min,
                seed: seed + i,
            },
            other => other,
        };
        writeln!(out, "{}", encode(&generate(&f)?)?).unwrap();
    }
    Ok(out)
}

//! Command-line front end: load or generate graphs, run the twin-vertex
//! transfer analysis, and emit text/JSON reports and CSV/JSON traces.
//!
//! Exit codes: 0 success, 2 parse/usage error, 3 when --strict is set and
//! any reported verdict is inconclusive.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::json;

use twinwalk::dynamics::{check_generalized_fr_at, evolve, sweep_trace, trace_to_csv};
use twinwalk::graph::{
    build_hamiltonian, format_rational, parse_rational, theta_of, twin_sets, Family, MatrixKind,
    WeightedGraph,
};
use twinwalk::numberfield::char_poly;
use twinwalk::report::{render_pair_text, PairReport};
use twinwalk::spectral::{decompose_with, support, Tolerances};
use twinwalk::transfer::{
    analyze_pair_with, analyze_vertex_with, PairAnalysis, PgstStatus, Status,
};

#[derive(Parser)]
#[command(
    name = "twinwalk",
    about = "Continuous-time quantum walk analysis on weighted graphs: twins, periodicity, PST, PGST, and fractional revival",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze transfer phenomena for a pair, a vertex, or all twin pairs.
    Analyze(AnalyzeArgs),
    /// Export a probability trace (t, p_uv, p_uu) over a time range.
    Trace(TraceArgs),
    /// Batch-analyze a family over a parameter range; one row per instance.
    Catalog(CatalogArgs),
    /// List the twin sets of a graph.
    Twins(SourceArgs),
    /// Print the spectral decomposition: eigenvalues, multiplicities, exact
    /// tags, and per-vertex supports.
    Spectrum(SpectrumArgs),
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Graph file (header `n <count>`, lines `e u v w` and `l u w`).
    #[arg(long, conflicts_with = "family")]
    file: Option<PathBuf>,
    /// Family spec: complete, complete_bipartite, complete_multipartite,
    /// cocktail_party, complete_minus_edge, path, cycle, star, figure2,
    /// empty, or a full expression like "join(complete(2),empty(2))".
    #[arg(long)]
    family: Option<String>,
    /// Family size parameter m.
    #[arg(long)]
    m: Option<usize>,
    /// Family size parameter n.
    #[arg(long)]
    n: Option<usize>,
    /// Loop weight omega for weighted complete graphs (rational, e.g. -1/2).
    #[arg(long)]
    omega: Option<String>,
    /// Edge weight eta for weighted complete graphs (rational).
    #[arg(long)]
    eta: Option<String>,
    /// Part sizes for complete_multipartite, e.g. 2,3,4.
    #[arg(long)]
    parts: Option<String>,
}

#[derive(Args, Clone, Copy)]
struct TolArgs {
    /// Numeric verdict tolerance (also scales support/grouping tolerances).
    #[arg(long)]
    tol: Option<f64>,
    /// Denominator bound for rationality probing.
    #[arg(long)]
    qmax: Option<u64>,
    /// Coefficient bound for the PGST relation search.
    #[arg(long)]
    relation_bound: Option<i64>,
}

impl TolArgs {
    fn tolerances(&self) -> Tolerances {
        let mut t = Tolerances::default();
        if let Some(x) = self.tol {
            t.verdict = x;
            t.support = x;
            t.group = x;
        }
        if let Some(q) = self.qmax {
            t.qmax = q;
        }
        if let Some(b) = self.relation_bound {
            t.relation_bound = b;
        }
        t
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Adjacency,
    Laplacian,
    Both,
}

impl KindArg {
    fn kinds(self) -> Vec<MatrixKind> {
        match self {
            KindArg::Adjacency => vec![MatrixKind::Adjacency],
            KindArg::Laplacian => vec![MatrixKind::Laplacian],
            KindArg::Both => vec![MatrixKind::Adjacency, MatrixKind::Laplacian],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    source: SourceArgs,
    /// Hamiltonian: adjacency, laplacian, or both.
    #[arg(long, value_enum, default_value = "adjacency")]
    kind: KindArg,
    /// Analyze one pair of vertices.
    #[arg(long, num_args = 2, value_names = ["U", "V"])]
    pair: Option<Vec<usize>>,
    /// Analyze every twin pair (one representative pair per twin set).
    #[arg(long, conflicts_with = "pair")]
    all_twins: bool,
    /// Analyze periodicity of a single vertex.
    #[arg(long, conflicts_with_all = ["pair", "all_twins"])]
    vertex: Option<usize>,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with code 3 when any verdict is inconclusive.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value = "adjacency")]
    kind: KindArg,
    #[arg(long, num_args = 2, value_names = ["U", "V"], required = true)]
    pair: Vec<usize>,
    #[arg(long, default_value_t = 0.0)]
    t0: f64,
    #[arg(long)]
    t1: f64,
    #[arg(long, default_value_t = 1001)]
    steps: usize,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CatalogArgs {
    /// Family name (complete, cocktail_party, complete_bipartite, ...).
    #[arg(long)]
    family: String,
    /// Which size parameter the range varies.
    #[arg(long, default_value = "m")]
    vary: String,
    #[arg(long)]
    from: usize,
    #[arg(long)]
    to: usize,
    /// Fixed m (when varying n).
    #[arg(long)]
    m: Option<usize>,
    /// Fixed n (when varying m).
    #[arg(long)]
    n: Option<usize>,
    #[arg(long, value_enum, default_value = "adjacency")]
    kind: KindArg,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value = "adjacency")]
    kind: KindArg,
    #[command(flatten)]
    tol: TolArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

struct UsageError(String);

impl From<twinwalk::graph::GraphError> for UsageError {
    fn from(e: twinwalk::graph::GraphError) -> Self {
        UsageError(e.to_string())
    }
}

fn resolve_graph(src: &SourceArgs) -> Result<WeightedGraph, UsageError> {
    if let Some(path) = &src.file {
        let text = std::fs::read_to_string(path)
            .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
        return Ok(WeightedGraph::from_text(&text)?);
    }
    let Some(spec) = &src.family else {
        return Err(UsageError("one of --file or --family is required".into()));
    };
    let family = if spec.contains('(') {
        Family::parse(spec)?
    } else {
        let need_m = || src.m.ok_or_else(|| UsageError("--m is required".into()));
        let need_n = || src.n.ok_or_else(|| UsageError("--n is required".into()));
        match spec.as_str() {
            "complete" => {
                let omega = parse_rational(src.omega.as_deref().unwrap_or("0"))?;
                let eta = parse_rational(src.eta.as_deref().unwrap_or("1"))?;
                Family::Complete {
                    m: need_m()?,
                    omega,
                    eta,
                }
            }
            "complete_bipartite" => Family::CompleteBipartite {
                m: need_m()?,
                n: need_n()?,
            },
            "complete_multipartite" => {
                let parts = src
                    .parts
                    .as_ref()
                    .ok_or_else(|| UsageError("--parts is required".into()))?
                    .split(',')
                    .map(|p| p.trim().parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| UsageError("--parts expects integers like 2,3,4".into()))?;
                Family::CompleteMultipartite { parts }
            }
            "cocktail_party" => Family::CocktailParty { m: need_m()? },
            "complete_minus_edge" => Family::CompleteMinusEdge { m: need_m()? },
            "path" => Family::Path { n: need_n()? },
            "cycle" => Family::Cycle { n: need_n()? },
            "star" => Family::Star { leaves: need_n()? },
            "figure2" => Family::Figure2,
            "empty" => Family::Empty { n: need_n()? },
            other => return Err(UsageError(format!("unknown family `{other}`"))),
        }
    };
    Ok(twinwalk::graph::generate_family(&family)?)
}

fn write_output(out: &Option<PathBuf>, content: &str) -> Result<(), UsageError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| UsageError(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn any_inconclusive(pa: &PairAnalysis) -> bool {
    pa.periodicity.status == Status::Inconclusive
        || pa.pst.status == Status::Inconclusive
        || pa.fr.status == Status::Inconclusive
        || matches!(
            pa.pgst.status,
            PgstStatus::Inconclusive | PgstStatus::ConsistentUpToBound(_)
        )
}

fn run_analyze(args: &AnalyzeArgs) -> Result<ExitCode, UsageError> {
    let g = resolve_graph(&args.source)?;
    let tol = args.tol.tolerances();
    if !g.is_connected() {
        eprintln!(
            "note: input graph is disconnected ({} components); analysis runs per connected component",
            g.components().len()
        );
    }

    // vertex periodicity target
    if let Some(u) = args.vertex {
        let mut text = String::new();
        let mut values = Vec::new();
        for kind in args.kind.kinds() {
            let comps = g.components();
            let comp = comps
                .iter()
                .find(|c| c.contains(&u))
                .ok_or_else(|| UsageError(format!("vertex {u} out of range")))?;
            let sub = g.induced(comp);
            let iu = comp.iter().position(|&x| x == u).unwrap();
            let pa = analyze_vertex_with(&sub, kind, iu, tol)
                .map_err(|e| UsageError(e.to_string()))?;
            text.push_str(&format!(
                "vertex {u} [{kind}]: periodic = {}, rho = {}\n  support: {:?}\n  {}\n",
                pa.status,
                pa.min_period
                    .as_ref()
                    .map(|t| t.to_string())
                    .unwrap_or_else(|| "-".into()),
                pa.support,
                pa.note
            ));
            values.push(json!({
                "vertex": u,
                "kind": kind.to_string(),
                "periodic": pa.status.to_string(),
                "rho": pa.min_period.as_ref().map(|t| json!({
                    "exact": t.exact.as_ref().map(|e| e.to_string()),
                    "numeric": t.numeric,
                })),
                "support": pa.support,
                "confidence": pa.confidence.to_string(),
            }));
        }
        let content = match args.format {
            Format::Json => format!("{:#}\n", json!({ "vertex_reports": values })),
            _ => text,
        };
        write_output(&args.out, &content)?;
        return Ok(ExitCode::SUCCESS);
    }

    // pair targets
    let sets = twin_sets(&g);
    let pairs: Vec<(usize, usize)> = if args.all_twins {
        sets.iter()
            .map(|t| (t.vertices[0], t.vertices[1]))
            .collect()
    } else if let Some(p) = &args.pair {
        vec![(p[0], p[1])]
    } else {
        return Err(UsageError(
            "one of --pair, --all-twins, or --vertex is required".into(),
        ));
    };
    if args.all_twins && pairs.is_empty() {
        write_output(&args.out, "no twin sets found\n")?;
        return Ok(ExitCode::SUCCESS);
    }

    let mut analyses: Vec<PairAnalysis> = Vec::new();
    for kind in args.kind.kinds() {
        for &(u, v) in &pairs {
            analyses.push(
                analyze_pair_with(&g, kind, u, v, tol).map_err(|e| UsageError(e.to_string()))?,
            );
        }
    }

    // generalized FR probe for big twin sets whose complement is one vertex
    let mut gen_fr_notes = Vec::new();
    for ts in &sets {
        if ts.len() < 3 || g.n() != ts.len() + 1 {
            continue;
        }
        let lone = (0..g.n()).find(|x| !ts.contains(*x)).unwrap();
        for kind in args.kind.kinds() {
            if let Ok(pa) = analyze_vertex_with(&g, kind, lone, tol) {
                if let Some(rho) = &pa.min_period {
                    let sd = decompose_with(&build_hamiltonian(&g, kind), tol)
                        .map_err(|e| UsageError(e.to_string()))?;
                    let gen = check_generalized_fr_at(
                        &evolve(&sd, rho.numeric),
                        &ts.vertices,
                        tol.verdict,
                    );
                    if gen.ok {
                        gen_fr_notes.push(format!(
                            "twin set {:?} [{kind}]: generalized FR at t = {} (proper: {})",
                            ts.vertices,
                            rho,
                            if gen.proper { "yes" } else { "no" }
                        ));
                    }
                }
            }
        }
    }

    let inconclusive = analyses.iter().any(any_inconclusive);
    let content = match args.format {
        Format::Json => {
            let reports: Vec<PairReport> =
                analyses.iter().map(PairReport::from_analysis).collect();
            let doc = json!({
                "reports": reports,
                "generalized_fr": gen_fr_notes,
            });
            format!("{doc:#}\n")
        }
        _ => {
            let mut text = String::new();
            for pa in &analyses {
                text.push_str(&render_pair_text(pa));
                text.push('\n');
            }
            for n in &gen_fr_notes {
                text.push_str(&format!("{n}\n"));
            }
            text
        }
    };
    write_output(&args.out, &content)?;
    if args.strict && inconclusive {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_trace(args: &TraceArgs) -> Result<ExitCode, UsageError> {
    let g = resolve_graph(&args.source)?;
    let tol = args.tol.tolerances();
    let kind = *args.kind.kinds().first().unwrap();
    let sd = decompose_with(&build_hamiltonian(&g, kind), tol)
        .map_err(|e| UsageError(e.to_string()))?;
    let (u, v) = (args.pair[0], args.pair[1]);
    if u >= g.n() || v >= g.n() {
        return Err(UsageError(format!("pair ({u},{v}) out of range")));
    }
    let rows = sweep_trace(&sd, u, v, args.t0, args.t1, args.steps)
        .map_err(|e| UsageError(e.to_string()))?;
    let content = match args.format {
        Format::Json => format!("{:#}\n", serde_json::to_value(&rows).unwrap()),
        _ => trace_to_csv(&rows),
    };
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn catalog_instance(
    family: &str,
    vary: &str,
    value: usize,
    args: &CatalogArgs,
) -> Result<Family, UsageError> {
    let m = if vary == "m" { value } else { args.m.unwrap_or(2) };
    let n = if vary == "n" { value } else { args.n.unwrap_or(2) };
    match family {
        "complete" => Ok(Family::Complete {
            m,
            omega: parse_rational("0").unwrap(),
            eta: parse_rational("1").unwrap(),
        }),
        "complete_bipartite" => Ok(Family::CompleteBipartite { m, n }),
        "cocktail_party" => Ok(Family::CocktailParty { m }),
        "complete_minus_edge" => Ok(Family::CompleteMinusEdge { m }),
        "path" => Ok(Family::Path { n: value }),
        "cycle" => Ok(Family::Cycle { n: value }),
        "star" => Ok(Family::Star { leaves: value }),
        other => Err(UsageError(format!(
            "catalog does not support family `{other}`"
        ))),
    }
}

fn run_catalog(args: &CatalogArgs) -> Result<ExitCode, UsageError> {
    if args.from > args.to {
        return Err(UsageError("--from must not exceed --to".into()));
    }
    if args.vary != "m" && args.vary != "n" {
        return Err(UsageError("--vary must be m or n".into()));
    }
    let tol = args.tol.tolerances();
    let values: Vec<usize> = (args.from..=args.to).collect();
    let instances: Vec<(usize, Family)> = values
        .iter()
        .map(|&v| Ok((v, catalog_instance(&args.family, &args.vary, v, args)?)))
        .collect::<Result<Vec<_>, UsageError>>()?;

    // rows computed in parallel, output ordered by instance index
    let rows: Vec<Result<(usize, Vec<PairAnalysis>), String>> = instances
        .par_iter()
        .map(|(value, fam)| {
            let g = twinwalk::graph::generate_family(fam).map_err(|e| e.to_string())?;
            let sets = twin_sets(&g);
            let mut analyses = Vec::new();
            for kind in args.kind.kinds() {
                for ts in &sets {
                    let (u, v) = (ts.vertices[0], ts.vertices[1]);
                    analyses
                        .push(analyze_pair_with(&g, kind, u, v, tol).map_err(|e| e.to_string())?);
                }
            }
            Ok((*value, analyses))
        })
        .collect();

    let mut inconclusive = false;
    let mut text = format!(
        "{:<22} {:<8} {:<26} {:<30} {:<22} {}\n",
        "instance", "pair", "periodic(rho)", "pst(tau)", "pgst", "fr(tau)"
    );
    let mut json_rows = Vec::new();
    for row in rows {
        let (value, analyses) = row.map_err(UsageError)?;
        inconclusive |= analyses.iter().any(any_inconclusive);
        for pa in &analyses {
            let show = |t: &Option<twinwalk::transfer::TimeValue>| {
                t.as_ref()
                    .map(|x| {
                        x.exact
                            .as_ref()
                            .map(|e| e.to_string())
                            .unwrap_or_else(|| format!("{:.6}", x.numeric))
                    })
                    .unwrap_or_else(|| "-".into())
            };
            text.push_str(&format!(
                "{:<22} {:<8} {:<26} {:<30} {:<22} {}\n",
                format!("{} {}={} [{}]", args.family, args.vary, value, pa.kind),
                format!("({},{})", pa.pair.0, pa.pair.1),
                format!(
                    "{} {}",
                    pa.periodicity.status,
                    show(&pa.periodicity.min_period)
                ),
                format!("{} {}", pa.pst.status, show(&pa.pst.tau)),
                pa.pgst.status.to_string(),
                format!("{} {}", pa.fr.status, show(&pa.fr.tau)),
            ));
        }
        json_rows.push(json!({
            "instance": { args.vary.clone(): value },
            "reports": analyses.iter().map(PairReport::from_analysis).collect::<Vec<_>>(),
        }));
    }
    let content = match args.format {
        Format::Json => format!("{:#}\n", json!({ "family": args.family, "rows": json_rows })),
        _ => text,
    };
    write_output(&args.out, &content)?;
    if args.strict && inconclusive {
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn run_twins(src: &SourceArgs) -> Result<ExitCode, UsageError> {
    let g = resolve_graph(src)?;
    let sets = twin_sets(&g);
    if sets.is_empty() {
        println!("no twin sets");
        return Ok(ExitCode::SUCCESS);
    }
    for ts in &sets {
        println!(
            "twin set {:?}: kind = {}, omega = {}, eta = {}, theta_adjacency = {}, theta_laplacian = {}",
            ts.vertices,
            match ts.kind {
                twinwalk::graph::TwinKind::True => "true",
                twinwalk::graph::TwinKind::False => "false",
            },
            format_rational(&ts.omega),
            format_rational(&ts.eta),
            format_rational(&theta_of(ts, &g, MatrixKind::Adjacency)),
            format_rational(&theta_of(ts, &g, MatrixKind::Laplacian)),
        );
    }
    Ok(ExitCode::SUCCESS)
}

fn run_spectrum(args: &SpectrumArgs) -> Result<ExitCode, UsageError> {
    let g = resolve_graph(&args.source)?;
    let tol = args.tol.tolerances();
    let mut text = String::new();
    let mut docs = Vec::new();
    for kind in args.kind.kinds() {
        let h = build_hamiltonian(&g, kind);
        let sd = decompose_with(&h, tol).map_err(|e| UsageError(e.to_string()))?;
        text.push_str(&format!(
            "[{kind}] n = {}, connected = {}\n",
            g.n(),
            g.is_connected()
        ));
        if let Ok(poly) = char_poly(&h) {
            text.push_str(&format!(
                "  characteristic polynomial: {} (integral: {})\n",
                poly,
                poly.is_integral()
            ));
        }
        for j in 0..sd.k() {
            let exact = sd
                .exact
                .as_ref()
                .map(|v| format!("  = {}", v[j]))
                .unwrap_or_default();
            text.push_str(&format!(
                "  lambda_{} = {:.12} (multiplicity {}){}\n",
                j, sd.eigenvalues[j], sd.multiplicities[j], exact
            ));
        }
        for u in 0..g.n() {
            let sup = support(&sd, u).support;
            let vals: Vec<String> = sup
                .iter()
                .map(|&j| format!("{:.9}", sd.eigenvalues[j]))
                .collect();
            text.push_str(&format!("  support({u}) = [{}]\n", vals.join(", ")));
        }
        docs.push(json!({
            "kind": kind.to_string(),
            "eigenvalues": sd.eigenvalues,
            "multiplicities": sd.multiplicities,
            "exact": sd.exact.as_ref().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            "supports": (0..g.n()).map(|u| support(&sd, u).support).collect::<Vec<_>>(),
        }));
    }
    let content = match args.format {
        Format::Json => format!("{:#}\n", json!({ "spectra": docs })),
        _ => text,
    };
    write_output(&args.out, &content)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze(args) => run_analyze(args),
        Command::Trace(args) => run_trace(args),
        Command::Catalog(args) => run_catalog(args),
        Command::Twins(args) => run_twins(args),
        Command::Spectrum(args) => run_spectrum(args),
    };
    match result {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

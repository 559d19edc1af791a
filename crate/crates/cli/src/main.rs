use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use magic_ehrhart_core::budget::DEFAULT_VERTEX_SUBSETS;
use magic_ehrhart_core::geometry::{summarize, PolytopeKind};
use magic_ehrhart_core::graph::{
    complete_bipartite, cycle, make_gn, make_gnp, matching_preclusion_class, path, two_loops, ForcedMaxEdge,
    Graph,
};
use magic_ehrhart_core::io;
use magic_ehrhart_core::labeling::{count_index_k, count_magic_k, index_count_series, magic_count_series};
use magic_ehrhart_core::quasipoly::{ehrhart_analysis, f_n, iterated_difference_of_fn};
use magic_ehrhart_core::semigroup::{
    cf_elements, certify_small_quasiperiod, decompose_over_generators, stanley_decompose,
    verify_completely_fundamental, CfVerdict, SemigroupElement,
};
use magic_ehrhart_core::verify::{run_suite, Context, ReferenceValues, Status};
use magic_ehrhart_core::{Budget, Error};

#[derive(Parser)]
#[command(name = "magic-ehrhart", version, about = "Count and analyze magic edge-labelings of graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,

    /// Maximum number of active-set combinations tried during vertex
    /// enumeration.
    #[arg(long, global = true, env = "MAGIC_BUDGET")]
    budget: Option<u64>,

    /// Maximum number of search nodes visited while enumerating labelings.
    #[arg(long, global = true)]
    node_budget: Option<u64>,

    /// Write output here instead of stdout.
    #[arg(short = 'o', long = "output", global = true)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    #[value(name = "P", alias = "p")]
    P,
    #[value(name = "Q", alias = "q")]
    Q,
}

impl From<Kind> for PolytopeKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::P => PolytopeKind::P,
            Kind::Q => PolytopeKind::Q,
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    /// Graph JSON file.
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct PolytopeArgs {
    #[arg(long, value_enum, default_value = "P")]
    polytope: Kind,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Gn,
    Gnp,
    TwoLoops,
    Path,
    Cycle,
    CompleteBipartite,
}

#[derive(Subcommand)]
enum Command {
    /// M_G(k) for P, or S_G(k) (index exactly k) for Q.
    Count {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(short = 'k')]
        k: u64,
        #[command(flatten)]
        polytope: PolytopeArgs,
    },
    /// M_G(k) for k = 0..=kmax, optionally with S_G(k).
    Series {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long)]
        kmax: u64,
        /// Add the index-exactly-k column.
        #[arg(long)]
        with_index: bool,
    },
    /// Ehrhart quasipolynomial with its minimum quasiperiod and denominator.
    Ehrhart {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        polytope: PolytopeArgs,
    },
    /// Vertices of P_G or Q_G.
    Vertices {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        polytope: PolytopeArgs,
    },
    /// Completely fundamental elements of the semigroup.
    Cf {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        polytope: PolytopeArgs,
        /// Also run the brute-force refutation search on each element.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 3)]
        m_max: u64,
    },
    /// Split a magic labeling into index-1/2 pieces, or with --height
    /// decompose (labeling, height) over the completely fundamental elements.
    Decompose {
        #[command(flatten)]
        graph: GraphArgs,
        /// Labeling JSON file.
        #[arg(long)]
        labeling: PathBuf,
        #[arg(long)]
        height: Option<u64>,
        #[command(flatten)]
        polytope: PolytopeArgs,
    },
    /// Bipartiteness, leaves, matching preclusion and the small-quasiperiod
    /// certificate.
    Check {
        #[command(flatten)]
        graph: GraphArgs,
    },
    /// Write a graph from one of the built-in families.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(short = 'n')]
        n: Option<usize>,
        #[arg(short = 'p')]
        p: Option<usize>,
    },
    /// F_n(k) for k = 0..=kmax, optionally with its i-th difference.
    Fn {
        #[arg(short = 'n')]
        n: u64,
        #[arg(long)]
        kmax: u64,
        #[arg(long)]
        diff: Option<u64>,
    },
    /// Run the reference checks.
    VerifyPaper {
        /// Only checks whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, hide = true, default_value_t = 1, allow_hyphen_values = true)]
        fn_floor_offset: i64,
    },
}

enum Failure {
    Usage(String),
    Verification(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_budget() {
            Failure::Budget(e.to_string())
        } else if matches!(e, Error::Consistency(_)) {
            Failure::Verification(e.to_string())
        } else {
            Failure::Usage(e.to_string())
        }
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Budget(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Verification(m) | Failure::Budget(m) => m,
        }
    }
}

/// Rendered output plus a failure to report after it is written.
struct Report {
    text: String,
    failure: Option<Failure>,
}

impl From<String> for Report {
    fn from(text: String) -> Self {
        Report { text, failure: None }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = Budget {
        vertex_subsets: cli.budget.unwrap_or(DEFAULT_VERTEX_SUBSETS),
        search_nodes: cli.node_budget.unwrap_or(Budget::default().search_nodes),
    };
    let result = run(&cli, &budget).and_then(|report| {
        emit(cli.output.as_deref(), &report.text)?;
        report.failure.map_or(Ok(()), Err)
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Failure::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_graph(args: &GraphArgs) -> Result<Graph, Failure> {
    let text = std::fs::read_to_string(&args.graph)
        .map_err(|e| Failure::Usage(format!("{}: {e}", args.graph.display())))?;
    Ok(io::graph_from_json(&text)?)
}

/// JSON number for a count of any size.
fn big(n: &BigUint) -> Value {
    serde_json::from_str(&n.to_string()).expect("decimal digits parse as a JSON number")
}

fn run(cli: &Cli, budget: &Budget) -> Result<Report, Failure> {
    let fmt = cli.format;
    match &cli.command {
        Command::Count { graph, k, polytope } => {
            let g = load_graph(graph)?;
            let kind: PolytopeKind = polytope.polytope.into();
            let n = match kind {
                PolytopeKind::P => count_magic_k(&g, *k),
                PolytopeKind::Q => count_index_k(&g, *k),
            };
            Ok(match fmt {
                Format::Human => format!("{n}\n"),
                Format::Json => format!("{}\n", json!({"k": k, "polytope": kind.to_string(), "count": big(&n)})),
                Format::Csv => format!("k,count\n{k},{n}\n"),
            }
            .into())
        }
        Command::Series { graph, kmax, with_index } => {
            let g = load_graph(graph)?;
            let magic = magic_count_series(&g, *kmax, budget)?;
            let index = if *with_index {
                Some(index_count_series(&g, *kmax, budget)?)
            } else {
                None
            };
            Ok(render_series(fmt, &magic, index.as_deref()).into())
        }
        Command::Ehrhart { graph, polytope } => {
            let g = load_graph(graph)?;
            let kind: PolytopeKind = polytope.polytope.into();
            let a = ehrhart_analysis(&g, kind, budget)?;
            let q = &a.quasipolynomial;
            Ok(match fmt {
                Format::Human => {
                    let mut s = format!(
                        "polytope {kind}, dimension {}, denominator {}, minimum quasiperiod {}\n",
                        a.summary.dimension,
                        a.summary.denominator,
                        a.minimum_quasiperiod()
                    );
                    for (r, c) in q.constituents().iter().enumerate() {
                        let single = magic_ehrhart_core::Quasipolynomial::polynomial(c.clone());
                        writeln!(s, "t = {r} mod {}: {single}", q.period()).unwrap();
                    }
                    s
                }
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "polytope": kind.to_string(),
                        "dimension": a.summary.dimension,
                        "denominator": big(&a.summary.denominator),
                        "mqp": a.minimum_quasiperiod(),
                        "quasipolynomial": io::quasipolynomial_to_value(q),
                    })
                ),
                Format::Csv => {
                    let mut s = String::from("residue,degree,coefficient\n");
                    for (r, c) in q.constituents().iter().enumerate() {
                        for (i, x) in c.iter().enumerate() {
                            writeln!(s, "{r},{i},{}", io::rational_to_string(x)).unwrap();
                        }
                    }
                    s
                }
            }
            .into())
        }
        Command::Vertices { graph, polytope } => {
            let g = load_graph(graph)?;
            let s = summarize(&g, polytope.polytope.into(), budget)?;
            let rows: Vec<Vec<String>> = s.vertices.iter().map(io::point_to_strings).collect();
            Ok(match fmt {
                Format::Human => {
                    let mut out = format!(
                        "{} vertices, dimension {}, denominator {}\n",
                        rows.len(),
                        s.dimension,
                        s.denominator
                    );
                    for r in &rows {
                        writeln!(out, "({})", r.join(", ")).unwrap();
                    }
                    out
                }
                Format::Json => format!(
                    "{}\n",
                    json!({
                        "polytope": s.kind.to_string(),
                        "dimension": s.dimension,
                        "denominator": big(&s.denominator),
                        "vertices": rows,
                    })
                ),
                Format::Csv => {
                    let mut out = String::from("vertex,edge,value\n");
                    for (i, r) in rows.iter().enumerate() {
                        for (e, x) in r.iter().enumerate() {
                            writeln!(out, "{i},{},{x}", g.edge_name(e)).unwrap();
                        }
                    }
                    out
                }
            }
            .into())
        }
        Command::Cf {
            graph,
            polytope,
            verify,
            m_max,
        } => {
            let g = load_graph(graph)?;
            let kind: PolytopeKind = polytope.polytope.into();
            let elems = cf_elements(&g, kind, budget)?;
            let mut verdicts = Vec::new();
            if *verify {
                for e in &elems {
                    verdicts.push(verify_completely_fundamental(&g, kind, e, *m_max)?);
                }
            }
            let refuted = verdicts.iter().any(CfVerdict::is_refuted);
            let text = render_cf(fmt, kind, &elems, &verdicts);
            Ok(Report {
                text,
                failure: refuted.then(|| Failure::Verification("a vertex element was refuted".into())),
            })
        }
        Command::Decompose {
            graph,
            labeling,
            height,
            polytope,
        } => {
            let g = load_graph(graph)?;
            let text = std::fs::read_to_string(labeling)
                .map_err(|e| Failure::Usage(format!("{}: {e}", labeling.display())))?;
            let l = io::labeling_from_json(&g, &text)?;
            match height {
                None => {
                    let pieces = stanley_decompose(&g, &l)?;
                    Ok(render_pieces(fmt, &g, &pieces).into())
                }
                Some(h) => {
                    let kind: PolytopeKind = polytope.polytope.into();
                    let elem = SemigroupElement::new(&g, kind, l, *h)?;
                    let gens = cf_elements(&g, kind, budget)?;
                    let mult = decompose_over_generators(&elem, &gens)?;
                    Ok(render_multipliers(fmt, &gens, mult.as_deref()))
                }
            }
        }
        Command::Check { graph } => {
            let g = load_graph(graph)?;
            Ok(render_check(fmt, &g).into())
        }
        Command::Gen { family, n, p } => {
            let need = |x: Option<usize>, flag: &str| {
                x.ok_or_else(|| Failure::Usage(format!("this family needs -{flag}")))
            };
            let g = match family {
                Family::Gn => make_gn(need(*n, "n")?)?,
                Family::Gnp => make_gnp(need(*n, "n")?, need(*p, "p")?)?,
                Family::TwoLoops => two_loops(),
                Family::Path => path(need(*n, "n")?),
                Family::Cycle => {
                    let m = need(*n, "n")?;
                    if m < 3 {
                        return Err(Failure::Usage("a cycle needs -n >= 3".into()));
                    }
                    cycle(m)
                }
                Family::CompleteBipartite => complete_bipartite(need(*n, "n")?, need(*p, "p")?),
            };
            Ok(match fmt {
                Format::Human => format!("{}\n", io::graph_to_json_pretty(&g)),
                Format::Json => format!("{}\n", io::graph_to_json(&g)),
                Format::Csv => {
                    let mut s = String::from("u,w\n");
                    for &(u, w) in g.edges() {
                        writeln!(s, "{},{}", g.vertex_name(u), g.vertex_name(w)).unwrap();
                    }
                    s
                }
            }
            .into())
        }
        Command::Fn { n, kmax, diff } => {
            if *n < 1 {
                return Err(Failure::Usage("F_n needs -n >= 1".into()));
            }
            if diff.is_some_and(|i| i > *n) {
                return Err(Failure::Usage(format!("--diff must be at most n = {n}")));
            }
            let mut rows = Vec::new();
            for k in 0..=*kmax {
                let d = diff.map(|i| iterated_difference_of_fn(*n, i, k)).transpose()?;
                rows.push((k, f_n(*n, k)?, d));
            }
            Ok(render_fn(fmt, *diff, &rows).into())
        }
        Command::VerifyPaper {
            filter,
            fn_floor_offset,
        } => {
            let refs = ReferenceValues {
                fn_floor_offset: *fn_floor_offset,
                ..ReferenceValues::default()
            };
            let ctx = Context::new(refs, *budget);
            let outcomes = run_suite(&ctx, filter.as_deref());
            if outcomes.is_empty() {
                return Err(Failure::Usage("no check matches the filter".into()));
            }
            let mut text = String::new();
            for o in &outcomes {
                let status = match o.status {
                    Status::Pass => "pass",
                    Status::Fail => "fail",
                    Status::Budget => "budget",
                };
                match fmt {
                    Format::Human => writeln!(
                        text,
                        "{} [{}] {}: {}",
                        status.to_uppercase(),
                        o.criterion,
                        o.name,
                        o.detail
                    )
                    .unwrap(),
                    Format::Json => writeln!(
                        text,
                        "{}",
                        json!({"name": o.name, "criterion": o.criterion, "status": status, "detail": o.detail})
                    )
                    .unwrap(),
                    Format::Csv => {
                        if text.is_empty() {
                            text.push_str("criterion,name,status\n");
                        }
                        writeln!(text, "{},{},{status}", o.criterion, o.name).unwrap();
                    }
                }
            }
            let failed: Vec<&str> = outcomes.iter().filter(|o| o.status == Status::Fail).map(|o| o.name).collect();
            let starved: Vec<&str> = outcomes.iter().filter(|o| o.status == Status::Budget).map(|o| o.name).collect();
            let failure = if !failed.is_empty() {
                Some(Failure::Verification(format!("failed: {}", failed.join(", "))))
            } else if !starved.is_empty() {
                Some(Failure::Budget(format!("budget exceeded: {}", starved.join(", "))))
            } else {
                None
            };
            Ok(Report { text, failure })
        }
    }
}

fn render_series(fmt: Format, magic: &[BigUint], index: Option<&[BigUint]>) -> String {
    let mut s = String::new();
    match fmt {
        Format::Human => {
            s.push_str(if index.is_some() { "k\tM(k)\tS(k)\n" } else { "k\tM(k)\n" });
            for (k, m) in magic.iter().enumerate() {
                match index {
                    Some(ix) => writeln!(s, "{k}\t{m}\t{}", ix[k]).unwrap(),
                    None => writeln!(s, "{k}\t{m}").unwrap(),
                }
            }
        }
        Format::Json => {
            for (k, m) in magic.iter().enumerate() {
                let row = match index {
                    Some(ix) => json!({"k": k, "magic": big(m), "index": big(&ix[k])}),
                    None => json!({"k": k, "magic": big(m)}),
                };
                writeln!(s, "{row}").unwrap();
            }
        }
        Format::Csv => {
            s.push_str(if index.is_some() { "k,magic,index\n" } else { "k,magic\n" });
            for (k, m) in magic.iter().enumerate() {
                match index {
                    Some(ix) => writeln!(s, "{k},{m},{}", ix[k]).unwrap(),
                    None => writeln!(s, "{k},{m}").unwrap(),
                }
            }
        }
    }
    s
}

fn verdict_text(v: &CfVerdict) -> String {
    match v {
        CfVerdict::UnrefutedUpTo(m) => format!("unrefuted up to m = {m}"),
        CfVerdict::Refuted { m, b, c } => format!(
            "refuted at m = {m}: {:?}@{} + {:?}@{}",
            b.labels(),
            b.height,
            c.labels(),
            c.height
        ),
    }
}

fn verdict_value(v: &CfVerdict) -> Value {
    match v {
        CfVerdict::UnrefutedUpTo(m) => json!({"unrefuted_up_to": m}),
        CfVerdict::Refuted { m, b, c } => json!({
            "refuted": {"m": m, "b": io::element_to_value(b), "c": io::element_to_value(c)}
        }),
    }
}

fn render_cf(fmt: Format, kind: PolytopeKind, elems: &[SemigroupElement], verdicts: &[CfVerdict]) -> String {
    let mut s = String::new();
    match fmt {
        Format::Human => {
            for (i, e) in elems.iter().enumerate() {
                write!(s, "{:?} height {}", e.labels(), e.height).unwrap();
                if let Some(v) = verdicts.get(i) {
                    write!(s, ": {}", verdict_text(v)).unwrap();
                }
                s.push('\n');
            }
        }
        Format::Json => {
            let items: Vec<Value> = elems
                .iter()
                .enumerate()
                .map(|(i, e)| {
                    let mut v = io::element_to_value(e);
                    if let Some(verdict) = verdicts.get(i) {
                        v["verdict"] = verdict_value(verdict);
                    }
                    v
                })
                .collect();
            writeln!(s, "{}", json!({"polytope": kind.to_string(), "elements": items})).unwrap();
        }
        Format::Csv => {
            s.push_str(if verdicts.is_empty() { "labels,height\n" } else { "labels,height,refuted\n" });
            for (i, e) in elems.iter().enumerate() {
                let labels: Vec<String> = e.labels().iter().map(u64::to_string).collect();
                write!(s, "{},{}", labels.join(" "), e.height).unwrap();
                if let Some(v) = verdicts.get(i) {
                    write!(s, ",{}", v.is_refuted()).unwrap();
                }
                s.push('\n');
            }
        }
    }
    s
}

fn render_pieces(fmt: Format, g: &Graph, pieces: &[magic_ehrhart_core::Labeling]) -> String {
    let index = |p: &magic_ehrhart_core::Labeling| p.magic_index(g).unwrap_or(0);
    let mut s = String::new();
    match fmt {
        Format::Human => {
            for p in pieces {
                writeln!(s, "index {}: {:?}", index(p), p.labels()).unwrap();
            }
        }
        Format::Json => {
            let items: Vec<Value> = pieces
                .iter()
                .map(|p| json!({"index": index(p), "labels": p.labels()}))
                .collect();
            writeln!(s, "{}", json!({"pieces": items})).unwrap();
        }
        Format::Csv => {
            s.push_str("piece,index,labels\n");
            for (i, p) in pieces.iter().enumerate() {
                let labels: Vec<String> = p.labels().iter().map(u64::to_string).collect();
                writeln!(s, "{i},{},{}", index(p), labels.join(" ")).unwrap();
            }
        }
    }
    s
}

fn render_multipliers(fmt: Format, gens: &[SemigroupElement], mult: Option<&[u64]>) -> Report {
    let Some(mult) = mult else {
        let text = match fmt {
            Format::Json => format!("{}\n", json!({"decomposition": null})),
            Format::Csv => String::from("multiplier,labels,height\n"),
            Format::Human => String::from("no decomposition\n"),
        };
        return Report {
            text,
            failure: Some(Failure::Verification(
                "element is not a combination of the completely fundamental elements".into(),
            )),
        };
    };
    let used: Vec<(u64, &SemigroupElement)> = mult.iter().copied().zip(gens).filter(|(m, _)| *m > 0).collect();
    let mut s = String::new();
    match fmt {
        Format::Human => {
            for (m, e) in &used {
                writeln!(s, "{m} x {:?} height {}", e.labels(), e.height).unwrap();
            }
        }
        Format::Json => {
            let items: Vec<Value> = used
                .iter()
                .map(|(m, e)| json!({"multiplier": m, "element": io::element_to_value(e)}))
                .collect();
            writeln!(s, "{}", json!({ "decomposition": items })).unwrap();
        }
        Format::Csv => {
            s.push_str("multiplier,labels,height\n");
            for (m, e) in &used {
                let labels: Vec<String> = e.labels().iter().map(u64::to_string).collect();
                writeln!(s, "{m},{},{}", labels.join(" "), e.height).unwrap();
            }
        }
    }
    s.into()
}

fn render_check(fmt: Format, g: &Graph) -> String {
    let bipartite = g.is_bipartite().is_some();
    let leaves: Vec<String> = g.leaves().iter().map(|&(_, e)| g.edge_name(e)).collect();
    let mprec = matching_preclusion_class(g);
    let cert = certify_small_quasiperiod(g);
    let forced = match cert.forced_edge {
        ForcedMaxEdge::Edge(e) => g.edge_name(e),
        ForcedMaxEdge::Vacuous => "vacuous".to_string(),
        ForcedMaxEdge::None => "none".to_string(),
    };
    let mprec_s = serde_json::to_value(mprec).unwrap();
    let mprec_s = mprec_s.as_str().unwrap();
    let verdict = serde_json::to_value(cert.verdict).unwrap();
    let verdict = verdict.as_str().unwrap();
    let rows: Vec<(&str, String)> = vec![
        ("vertices", g.vertex_count().to_string()),
        ("edges", g.edge_count().to_string()),
        ("bipartite", bipartite.to_string()),
        ("leaf_edges", leaves.join(" ")),
        ("matching_preclusion", mprec_s.to_string()),
        ("index2_labelings", cert.index2_labelings.to_string()),
        ("forced_max_edge", forced.clone()),
        ("certificate", verdict.to_string()),
    ];
    match fmt {
        Format::Human => {
            let mut s = String::new();
            for (k, v) in rows {
                let v = if v.is_empty() { "none".to_string() } else { v };
                writeln!(s, "{}: {v}", k.replace('_', " ")).unwrap();
            }
            s
        }
        Format::Json => format!(
            "{}\n",
            json!({
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
                "bipartite": bipartite,
                "leaf_edges": leaves,
                "matching_preclusion": mprec,
                "index2_labelings": cert.index2_labelings,
                "forced_max_edge": forced,
                "certificate": cert.verdict,
            })
        ),
        Format::Csv => {
            let mut s = String::from("property,value\n");
            for (k, v) in rows {
                writeln!(s, "{k},{v}").unwrap();
            }
            s
        }
    }
}

fn render_fn(fmt: Format, diff: Option<u64>, rows: &[(u64, num_bigint::BigInt, Option<num_bigint::BigInt>)]) -> String {
    let mut s = String::new();
    match fmt {
        Format::Human => {
            match diff {
                Some(i) => writeln!(s, "k\tF(k)\tD^{i}F(k)").unwrap(),
                None => s.push_str("k\tF(k)\n"),
            }
            for (k, f, d) in rows {
                match d {
                    Some(d) => writeln!(s, "{k}\t{f}\t{d}").unwrap(),
                    None => writeln!(s, "{k}\t{f}").unwrap(),
                }
            }
        }
        Format::Json => {
            for (k, f, d) in rows {
                let num = |x: &num_bigint::BigInt| -> Value { serde_json::from_str(&x.to_string()).unwrap() };
                let row = match d {
                    Some(d) => json!({"k": k, "f": num(f), "difference": num(d)}),
                    None => json!({"k": k, "f": num(f)}),
                };
                writeln!(s, "{row}").unwrap();
            }
        }
        Format::Csv => {
            s.push_str(if diff.is_some() { "k,f,difference\n" } else { "k,f\n" });
            for (k, f, d) in rows {
                match d {
                    Some(d) => writeln!(s, "{k},{f},{d}").unwrap(),
                    None => writeln!(s, "{k},{f}").unwrap(),
                }
            }
        }
    }
    s
}

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use edgesplit::betti::DEFAULT_BETTI_CAP;
use edgesplit::error::{Error, Result};
use edgesplit::field::FieldSpec;
use edgesplit::graph::Graph;
use edgesplit::harness::{self, output, Family, Format, SplitFilter, SweepConfig};
use edgesplit::monomial::{stretch_ideal, MonomialIdeal};
use edgesplit::report::{invariants_with_table, EngineOptions};
use edgesplit::splitting::{
    cg_set_with_cap, enumerate_splittings, sigma_graph, specialness, stretched_graph, EnumerateOptions, Inequality,
    SpecialFilter, SplittingMap,
};

#[derive(Parser)]
#[command(name = "edgesplit", version, about = "Edge ideals, splitting graphs and the stretching operator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants and Betti tables of the edge ideal of a graph.
    Invariants {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// List the splittings of a graph.
    SplitEnum {
        graph: PathBuf,
        #[arg(long, default_value = "all")]
        filter: SplitFilter,
        /// Identify splittings related by an automorphism of the graph.
        #[arg(long)]
        dedupe: bool,
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Add this many isolated vertices to every splitting graph.
        #[arg(long, default_value_t = 0)]
        pad_isolated: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Compare a graph with its splittings and report violated inequalities.
    Check {
        /// Graph file; omit when --splitting or --replay is given.
        graph: Option<PathBuf>,
        /// Check one splitting given as splitting JSON.
        #[arg(long, conflicts_with_all = ["graph", "replay"])]
        splitting: Option<PathBuf>,
        /// Recompute every witness in a witnesses.jsonl file.
        #[arg(long, conflicts_with = "graph")]
        replay: Option<PathBuf>,
        #[arg(long, default_value = "all")]
        filter: SplitFilter,
        /// Comma separated subset of i,ii,iii,iv,v.
        #[arg(long, default_value = "i,ii,iii,iv,v")]
        inequalities: String,
        #[command(flatten)]
        common: Common,
    },
    /// Apply the t-fold stretching operator to an ideal or a graph.
    Sigma {
        /// Ideal text such as `(x1x2, x2x3)`, ideal JSON, or a graph file.
        input: PathBuf,
        #[arg(long, short, default_value_t = 1)]
        t: u32,
        /// Treat INPUT as the ideal itself rather than a file name.
        #[arg(long)]
        inline: bool,
        #[command(flatten)]
        common: Common,
    },
    /// The set of component counts of σ-stable graphs over all labelings.
    Cg {
        graph: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Sweep a graph family and persist records, witnesses and a manifest.
    Search {
        /// Flat key=value sweep document; flags override it.
        #[arg(long)]
        config: Option<PathBuf>,
        /// file:<path> | paths:<n> | cycles:<n> | all_connected:<m>
        #[arg(long)]
        family: Option<Family>,
        #[arg(long)]
        filter: Option<SplitFilter>,
        #[arg(long)]
        inequalities: Option<String>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Clone)]
struct Common {
    /// gf2 | q | gfp:<p>
    #[arg(long)]
    field: Option<FieldSpec>,
    /// json | csv | text
    #[arg(long)]
    format: Option<Format>,
    /// Vertex cap: Betti tables, or the labeling enumeration for `cg`.
    #[arg(long)]
    cap_n: Option<usize>,
    /// Edge cap for splitting enumeration.
    #[arg(long)]
    cap_edges: Option<usize>,
    /// Cap on raw splitting choices per graph.
    #[arg(long)]
    cap_splittings: Option<u64>,
    /// Output file, or directory for `check` and `search`.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn emit(common: &Common, text: &str) -> Result<()> {
    match &common.out {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn apply_common(cfg: &mut SweepConfig, c: &Common) {
    if let Some(f) = c.field {
        cfg.field = f;
    }
    if let Some(f) = c.format {
        cfg.output.format = f;
    }
    if let Some(n) = c.cap_n {
        cfg.caps.betti_n = n;
    }
    if let Some(m) = c.cap_edges {
        cfg.caps.edges = m;
    }
    if let Some(k) = c.cap_splittings {
        cfg.caps.splittings = k;
    }
    if let Some(p) = &c.out {
        cfg.output.path = Some(p.clone());
    }
}

fn cmd_invariants(path: &Path, c: &Common) -> Result<()> {
    let g = harness::parse_graph(&read(path)?)?;
    let field = c.field.unwrap_or_default();
    let opts = EngineOptions { betti_cap: c.cap_n.unwrap_or(DEFAULT_BETTI_CAP), cache: None };
    let (r, table) = invariants_with_table(&g, field, opts)?;
    let text = match c.format.unwrap_or(Format::Text) {
        Format::Json => {
            let doc = json!({ "report": r, "betti_quotient": table, "betti_ideal": table.to_ideal() });
            format!("{doc}\n")
        }
        Format::Csv => format!(
            "n,pd_quotient,pd_ideal,reg_ideal,reg_quotient,depth,dim,bight,nu,field\n{},{},{},{},{},{},{},{},{},{}\n",
            r.n, r.pd_quotient, r.pd_ideal, r.reg_ideal, r.reg_quotient, r.depth, r.dim, r.bight, r.nu, r.field
        ),
        Format::Text => {
            let mut s = String::new();
            let _ = writeln!(s, "vertices {}  edges {}  field {}", r.n, g.m(), r.field);
            let _ = writeln!(s, "pd(S/I) {}  pd(I) {}", r.pd_quotient, r.pd_ideal);
            let _ = writeln!(s, "reg(S/I) {}  reg(I) {}", r.reg_quotient, r.reg_ideal);
            let _ = writeln!(s, "depth {}  dim {}  bight {}  nu {}", r.depth, r.dim, r.bight, r.nu);
            let _ = writeln!(s, "\ngraded Betti numbers of S/I:");
            s.push_str(&table.render_entries());
            let _ = writeln!(s, "\nBetti diagram of S/I:");
            s.push_str(&table.render_diagram());
            s
        }
    };
    emit(c, &text)
}

fn cmd_split_enum(
    path: &Path,
    filter: SplitFilter,
    dedupe: bool,
    max_vertices: Option<usize>,
    pad_isolated: usize,
    c: &Common,
) -> Result<()> {
    let g = harness::parse_graph(&read(path)?)?;
    let mut cfg = SweepConfig::default();
    apply_common(&mut cfg, c);
    if g.m() > cfg.caps.edges {
        return Err(Error::CapExceeded { cap: "edges", limit: cfg.caps.edges as u64, actual: g.m() as u64 });
    }
    let special = match filter {
        SplitFilter::All => SpecialFilter::All,
        SplitFilter::Special1 => SpecialFilter::Special1,
        SplitFilter::Special2 => SpecialFilter::Special2,
        SplitFilter::Special => SpecialFilter::Special,
        SplitFilter::Sigma => return Err(Error::InvalidSplitting("use the sigma command for the σ-stable graph".into())),
    };
    let opts = EnumerateOptions {
        filter: special,
        dedupe,
        max_source_vertices: max_vertices,
        pad_isolated,
        cap: cfg.caps.splittings,
    };
    let format = c.format.unwrap_or(Format::Text);
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("index,vertices,components,special1,special2\n");
    }
    let mut count = 0usize;
    for (i, s) in enumerate_splittings(&g, &opts)?.enumerate() {
        let sp = specialness(&s)?;
        let comps = s.source.component_count();
        match format {
            Format::Text => {
                let _ = writeln!(
                    out,
                    "{i}: vertices {} components {} special1 {} special2 {}",
                    s.source.n(),
                    comps,
                    sp.condition1,
                    sp.condition2
                );
            }
            Format::Csv => {
                let _ = writeln!(out, "{i},{},{comps},{},{}", s.source.n(), sp.condition1, sp.condition2);
            }
            Format::Json => {
                let doc = json!({ "index": i, "splitting": s, "components": comps, "specialness": sp });
                let _ = writeln!(out, "{doc}");
            }
        }
        count += 1;
    }
    if format == Format::Text {
        let _ = writeln!(out, "total {count}");
    }
    emit(c, &out)
}

fn check_output(res: &harness::SweepResult, format: Format) -> String {
    match format {
        Format::Text => output::render_text(res),
        Format::Csv => output::render_csv(&res.rows),
        Format::Json => {
            let doc = json!({ "summary": res.summary, "witnesses": res.witnesses });
            format!("{doc}\n")
        }
    }
}

fn parse_inequalities(s: &str) -> Result<Vec<Inequality>> {
    let mut cfg = SweepConfig::default();
    cfg.set("inequalities", s, 0)?;
    Ok(cfg.inequalities)
}

fn cmd_check(
    graph: Option<&Path>,
    splitting: Option<&Path>,
    replay: Option<&Path>,
    filter: SplitFilter,
    inequalities: &str,
    c: &Common,
) -> Result<()> {
    let mut cfg = SweepConfig { filter, inequalities: parse_inequalities(inequalities)?, ..Default::default() };
    apply_common(&mut cfg, c);
    cfg.output.format = c.format.unwrap_or(Format::Text);
    if let Some(p) = replay {
        let mut out = String::new();
        let mut mismatches = 0;
        for (k, line) in read(p)?.lines().filter(|l| !l.trim().is_empty()).enumerate() {
            let w = harness::Witness::from_json(line)?;
            let ok = harness::replay(&w, cfg.caps.betti_n)?;
            let tags: Vec<&str> = w.violated.iter().map(|q| q.tag()).collect();
            let _ = writeln!(out, "witness {k}: violates {} replay {}", tags.join(","), if ok { "ok" } else { "MISMATCH" });
            mismatches += usize::from(!ok);
        }
        print!("{out}");
        if mismatches > 0 {
            return Err(Error::Invariant(format!("{mismatches} witnesses did not replay")));
        }
        return Ok(());
    }
    let res = match (graph, splitting) {
        (_, Some(sp)) => harness::run_one(&SplittingMap::from_json(&read(sp)?)?, &cfg)?,
        (Some(gp), None) => harness::run(&[harness::parse_graph(&read(gp)?)?], &cfg)?,
        (None, None) => return Err(Error::Io("check needs a graph file, --splitting or --replay".into())),
    };
    match &cfg.output.path {
        Some(dir) => {
            let m = harness::persist(dir, &cfg, &res)?;
            print!("{}", output::render_summary(&res.summary));
            println!("config hash {}", m.config_hash);
        }
        None => print!("{}", check_output(&res, cfg.output.format)),
    }
    Ok(())
}

enum SigmaInput {
    Ideal(MonomialIdeal),
    Graph(Graph),
}

fn sigma_input(input: &Path, inline: bool) -> Result<SigmaInput> {
    let text = if inline { input.to_string_lossy().into_owned() } else { read(input)? };
    let t = text.trim_start();
    if t.starts_with('{') {
        let v: serde_json::Value = serde_json::from_str(t).map_err(|e| edgesplit::error::ParseError::Json(e.to_string()))?;
        if v.get("gens").is_some() {
            return Ok(SigmaInput::Ideal(MonomialIdeal::from_json(t)?));
        }
        return Ok(SigmaInput::Graph(Graph::from_json(t)?));
    }
    if t.starts_with('(') || t.starts_with('x') {
        return Ok(SigmaInput::Ideal(t.parse()?));
    }
    Ok(SigmaInput::Graph(Graph::parse_edge_list(t)?))
}

fn cmd_sigma(input: &Path, t: u32, inline: bool, c: &Common) -> Result<()> {
    let format = c.format.unwrap_or(Format::Text);
    let text = match sigma_input(input, inline)? {
        SigmaInput::Ideal(i) => {
            let s = stretch_ideal(&i, t)?;
            match format {
                Format::Json => format!("{}\n", s.to_json()),
                _ => format!("{s} in {} variables\n", s.ambient_n()),
            }
        }
        SigmaInput::Graph(g) => {
            let ideal = stretch_ideal(&edgesplit::monomial::edge_ideal(&g), t)?;
            let h = stretched_graph(&g, t)?;
            let map = sigma_graph(&g, t)?;
            match format {
                Format::Json => {
                    let doc = json!({ "ideal": ideal.to_string(), "n": ideal.ambient_n(), "splitting": map });
                    format!("{doc}\n")
                }
                _ => format!(
                    "{ideal} in {} variables\nstretched graph: {} vertices, {} components\n{}\n",
                    ideal.ambient_n(),
                    h.n(),
                    h.component_count(),
                    map.to_json()
                ),
            }
        }
    };
    emit(c, &text)
}

fn cmd_cg(path: &Path, c: &Common) -> Result<()> {
    let g = harness::parse_graph(&read(path)?)?;
    let cg = cg_set_with_cap(&g, c.cap_n.unwrap_or(edgesplit::splitting::sigma::DEFAULT_CG_CAP))?;
    let text = match c.format.unwrap_or(Format::Text) {
        Format::Json => format!("{}\n", serde_json::to_string(&cg).expect("serializable")),
        _ => {
            let vals: Vec<String> = cg.set().iter().map(|v| v.to_string()).collect();
            let mut s = format!("C(G) = {{{}}}\n", vals.join(", "));
            for (k, l) in &cg.values {
                let _ = writeln!(s, "  {k}: labeling {:?}", l.as_slice());
            }
            s
        }
    };
    emit(c, &text)
}

fn cmd_search(
    config: Option<&Path>,
    family: Option<Family>,
    filter: Option<SplitFilter>,
    inequalities: Option<&str>,
    c: &Common,
) -> Result<()> {
    let mut cfg = match config {
        Some(p) => SweepConfig::parse(&read(p)?)?,
        None => SweepConfig::default(),
    };
    if let Some(f) = family {
        cfg.family = f;
    }
    if let Some(f) = filter {
        cfg.filter = f;
    }
    if let Some(q) = inequalities {
        cfg.inequalities = parse_inequalities(q)?;
    }
    apply_common(&mut cfg, c);
    cfg.validate()?;
    let graphs = harness::family_graphs(&cfg.family)?;
    let res = harness::run(&graphs, &cfg)?;
    let dir = cfg.output.path.clone().unwrap_or_else(|| PathBuf::from("search-out"));
    let m = harness::persist(&dir, &cfg, &res)?;
    print!("{}", output::render_summary(&res.summary));
    println!("config hash {}", m.config_hash);
    println!("wrote {}", dir.display());
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Invariants { graph, common } => cmd_invariants(&graph, &common),
        Cmd::SplitEnum { graph, filter, dedupe, max_vertices, pad_isolated, common } => {
            cmd_split_enum(&graph, filter, dedupe, max_vertices, pad_isolated, &common)
        }
        Cmd::Check { graph, splitting, replay, filter, inequalities, common } => cmd_check(
            graph.as_deref(),
            splitting.as_deref(),
            replay.as_deref(),
            filter,
            &inequalities,
            &common,
        ),
        Cmd::Sigma { input, t, inline, common } => cmd_sigma(&input, t, inline, &common),
        Cmd::Cg { graph, common } => cmd_cg(&graph, &common),
        Cmd::Search { config, family, filter, inequalities, common } => {
            cmd_search(config.as_deref(), family, filter, inequalities.as_deref(), &common)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::CapExceeded { .. } => 2,
                Error::Invariant(_) => 3,
                _ => 1,
            })
        }
    }
}

//! Command-line front end: graph files, report rendering and exit codes.

pub mod dot;
pub mod format;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use braces::brace::{classify_edges_thin, classify_edge_thin, EdgeThinness};
use braces::cuts::{analyze_cuts, CutVerdict};
use braces::generate::named_graph;
use braces::verify::{analyze, run_census, AnalysisReport, CensusConfig, CensusReport, CheckSet, FlagStatus};
use braces::{BipartiteGraph, Error, Graph};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "braces", version, about = "Braces, tight cuts and thin edges of small bipartite graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full analysis of one graph.
    Analyze {
        /// BGF or JSON graph file, or the name of a built-in graph.
        file: String,
        #[arg(long)]
        json: bool,
        /// Omit the elapsed time so output is reproducible.
        #[arg(long)]
        no_timing: bool,
        /// Emit Graphviz with thin/nonthin edge attributes.
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Write a built-in graph as BGF.
    Gen {
        /// q3, heawood, path4, c<2k> or k<a>,<b>.
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the JSON graph form instead of BGF.
        #[arg(long)]
        json: bool,
    },
    /// List odd shores whose cuts are tight or separating.
    Cuts {
        file: String,
        #[arg(long, value_enum)]
        kind: CutKind,
        #[arg(long)]
        nontrivial_only: bool,
        #[arg(long)]
        json: bool,
        #[arg(long, conflicts_with = "json")]
        dot: bool,
    },
    /// Classify edges of a brace as thin or not, with their S-cuts.
    Thin {
        file: String,
        /// Restrict to the edge between a-index I and b-index J.
        #[arg(long, num_args = 2, value_names = ["I", "J"])]
        edge: Option<Vec<usize>>,
        #[arg(long)]
        json: bool,
    },
    /// Exhaustive census of braces with both parts of size at most K.
    Sweep {
        #[arg(long, value_name = "K")]
        max_part: usize,
        #[arg(long)]
        planar_only: bool,
        /// Comma-separated: t1,t2,t3,t4,chain,cor,helu2,helu3,prop8,cor1 or all.
        #[arg(long, default_value = "all")]
        checks: String,
        #[arg(long, value_name = "N")]
        jobs: Option<usize>,
        /// Write the JSON report here and a summary to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum CutKind {
    Tight,
    Separating,
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e.to_string())
    }
}

type Outcome = std::result::Result<i32, Failure>;

/// Runs the command line `args` (program name first), writing to the given
/// streams, and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(rendered.as_bytes())
            } else {
                out.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(Failure::Lib(e)) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Resource { .. } => EXIT_RESOURCE,
                _ => EXIT_USAGE,
            }
        }
        Err(Failure::Io(message)) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Analyze {
            file,
            json,
            no_timing,
            dot,
        } => cmd_analyze(&file, json, no_timing, dot, out),
        Command::Gen { name, out: path, json } => {
            let g = named_graph(&name)?;
            let text = if json {
                format::write_graph_json(&g)
            } else {
                format::write_bgf(&g)
            };
            emit(&text, path.as_deref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Cuts {
            file,
            kind,
            nontrivial_only,
            json,
            dot,
        } => cmd_cuts(&file, kind, nontrivial_only, json, dot, out),
        Command::Thin { file, edge, json } => cmd_thin(&file, edge, json, out),
        Command::Sweep {
            max_part,
            planar_only,
            checks,
            jobs,
            out: path,
            no_timing,
        } => cmd_sweep(max_part, planar_only, &checks, jobs, path.as_deref(), no_timing, out),
    }
}

fn emit(text: &str, path: Option<&Path>, out: &mut dyn Write) -> std::io::Result<()> {
    match path {
        Some(path) => std::fs::write(path, text),
        None => out.write_all(text.as_bytes()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialise") + "\n"
}

/// Reads a graph file, falling back to a built-in graph named by the argument
/// (or its file stem) when no such file exists.
pub fn load_graph(arg: &str) -> braces::Result<BipartiteGraph> {
    let path = Path::new(arg);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Input(format!("{arg}: {e}")))?;
        return format::parse_graph(&text);
    }
    let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or(arg);
    named_graph(arg)
        .or_else(|_| named_graph(stem))
        .map_err(|_| Error::Input(format!("{arg}: no such file or built-in graph")))
}

fn flag_exit(report: &AnalysisReport) -> i32 {
    if report.flags.named().iter().any(|(_, f)| f.failed()) {
        EXIT_VIOLATION
    } else if !report.resource_errors.is_empty() {
        EXIT_RESOURCE
    } else {
        EXIT_OK
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn status_word(s: FlagStatus) -> &'static str {
    match s {
        FlagStatus::Pass => "pass",
        FlagStatus::Fail => "FAIL",
        FlagStatus::NotApplicable => "n/a",
    }
}

fn render_analysis(r: &AnalysisReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "graph: {}", r.name.as_deref().unwrap_or("(unnamed)"));
    let _ = writeln!(s, "canonical form: {}", opt(r.canonical_form.as_deref()));
    let _ = writeln!(s, "n = {}, m = {}, parts = {} + {}", r.n, r.m, r.parts[0], r.parts[1]);
    let _ = writeln!(s, "degree: min {}, max {}, cubic vertices {}", r.min_degree, r.max_degree, r.n3);
    let _ = writeln!(s, "matching covered: {}", yes_no(r.matching_covered));
    let b = &r.brace;
    let _ = writeln!(
        s,
        "brace: {} (tight-cut-free {}, two-extendable {}, neighborhood {})",
        yes_no(b.is_brace),
        opt(b.tight_cut_free),
        opt(b.two_extendable),
        opt(b.neighborhood)
    );
    if let Some(d) = &b.disqualifier {
        let _ = writeln!(s, "  reason: {d}");
    }
    let _ = writeln!(
        s,
        "planar: {}, faces {}, euler {}",
        yes_no(r.planar),
        opt(r.face_count),
        opt(r.euler_check.map(|ok| if ok { "pass" } else { "fail" }))
    );
    if let Some(k) = &r.kuratowski {
        let _ = writeln!(s, "  kuratowski subgraph: {k}");
    }
    let _ = writeln!(
        s,
        "edge bound m <= 2n - 4: {}{}",
        opt(r.edge_bound),
        if r.edge_bound_tight { " (equality)" } else { "" }
    );
    if let Some(t) = &r.thin {
        let _ = writeln!(s, "thin edges: {} of {}", t.thin_count, r.m);
        for e in &t.nonthin_edges {
            let _ = writeln!(s, "  nonthin {} ({} S-cuts)", e.edge, e.s_cuts.len());
        }
        let _ = writeln!(
            s,
            "nonthin edges inside S1: {} (forest: {})",
            t.s1_nonthin_edge_count,
            yes_no(t.forest)
        );
    }
    if let Some(v) = &r.helu_bound {
        let _ = writeln!(s, "thin-edge lower bound n - 5/2 n3 + 1 = {}", v.display);
    }
    let _ = writeln!(s, "checks:");
    for (name, f) in r.flags.named() {
        let note = f.note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default();
        let _ = writeln!(s, "  {name}: {}{note}", status_word(f.status));
    }
    for e in &r.resource_errors {
        let _ = writeln!(s, "resource limit: {e}");
    }
    if let Some(ms) = r.elapsed_ms {
        let _ = writeln!(s, "elapsed: {ms:.3} ms");
    }
    s
}

fn cmd_analyze(file: &str, json: bool, no_timing: bool, dot: bool, out: &mut dyn Write) -> Outcome {
    let g = load_graph(file)?;
    let start = std::time::Instant::now();
    let mut report = analyze(&g);
    if !no_timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1000.0);
    }
    let text = if dot {
        let thinness = if report.thin.is_some() {
            classify_edges_thin(&g).ok()
        } else {
            None
        };
        dot::graph_dot(&g, thinness.as_deref())
    } else if json {
        to_json(&report)
    } else {
        render_analysis(&report)
    };
    out.write_all(text.as_bytes())?;
    Ok(flag_exit(&report))
}

#[derive(Serialize)]
struct CutRecord {
    shore: Vec<String>,
    tight: bool,
    separating: bool,
    trivial: bool,
    method_agreement: bool,
}

fn cmd_cuts(file: &str, kind: CutKind, nontrivial_only: bool, json: bool, dot: bool, out: &mut dyn Write) -> Outcome {
    let g = load_graph(file)?;
    let verdicts: Vec<CutVerdict> = analyze_cuts(&g, nontrivial_only)?
        .into_iter()
        .filter(|v| match kind {
            CutKind::Tight => v.tight,
            CutKind::Separating => v.separating,
        })
        .collect();
    let disagreements = verdicts.iter().filter(|v| !v.method_agreement).count();
    let text = if dot {
        let shores: Vec<_> = verdicts.iter().map(|v| v.shore).collect();
        dot::cuts_dot(&g, &shores)
    } else if json {
        let records: Vec<CutRecord> = verdicts
            .iter()
            .map(|v| CutRecord {
                shore: g.vertex_ids(v.shore.members()),
                tight: v.tight,
                separating: v.separating,
                trivial: v.trivial,
                method_agreement: v.method_agreement,
            })
            .collect();
        to_json(&records)
    } else {
        let mut s = String::new();
        for v in &verdicts {
            let _ = writeln!(
                s,
                "{{{}}} tight={} separating={}{}",
                g.vertex_ids(v.shore.members()).join(","),
                v.tight,
                v.separating,
                if v.trivial { " trivial" } else { "" }
            );
        }
        let _ = writeln!(s, "{} cuts", verdicts.len());
        s
    };
    out.write_all(text.as_bytes())?;
    Ok(if disagreements > 0 { EXIT_VIOLATION } else { EXIT_OK })
}

#[derive(Serialize)]
struct ThinRecord {
    edge: String,
    thin: bool,
    s_cuts: Vec<Vec<String>>,
    g_minus_e_matching_covered: bool,
}

fn cmd_thin(file: &str, edge: Option<Vec<usize>>, json: bool, out: &mut dyn Write) -> Outcome {
    let g = load_graph(file)?;
    let rows: Vec<EdgeThinness> = match edge {
        Some(pair) => {
            let e = g
                .edge_index(pair[0], pair[1])
                .ok_or_else(|| Error::Input(format!("no edge between a{} and b{}", pair[0], pair[1])))?;
            vec![classify_edge_thin(&g, e)?]
        }
        None => classify_edges_thin(&g)?,
    };
    let records: Vec<ThinRecord> = rows
        .iter()
        .map(|t| ThinRecord {
            edge: g.edge_label(t.edge),
            thin: t.thin,
            s_cuts: t.s_cuts.iter().map(|x| g.vertex_ids(x.members())).collect(),
            g_minus_e_matching_covered: t.g_minus_e_matching_covered,
        })
        .collect();
    let text = if json {
        to_json(&records)
    } else {
        let mut s = String::new();
        for r in &records {
            let _ = writeln!(s, "{} {}", r.edge, if r.thin { "thin" } else { "nonthin" });
            for x in &r.s_cuts {
                let _ = writeln!(s, "  S-cut {{{}}}", x.join(","));
            }
        }
        let thin = records.iter().filter(|r| r.thin).count();
        let _ = writeln!(s, "{thin} of {} edges thin", records.len());
        s
    };
    out.write_all(text.as_bytes())?;
    Ok(EXIT_OK)
}

fn render_census_summary(r: &CensusReport) -> String {
    let mut s = String::new();
    for c in &r.cells {
        if c.braces > 0 || c.candidates > 0 {
            let _ = writeln!(
                s,
                "{}+{}: {} candidates, {} braces, {} planar",
                c.a, c.b, c.candidates, c.braces, c.planar_braces
            );
        }
    }
    let _ = writeln!(s, "planar braces with n >= 6: {}", r.planar_braces_six_plus.len());
    let _ = writeln!(s, "violations: {}", r.violations.len());
    for v in &r.violations {
        let _ = writeln!(s, "  [{}] {} {}", v.check, v.canonical_form.as_deref().unwrap_or("-"), v.detail);
    }
    s
}

fn cmd_sweep(
    max_part: usize,
    planar_only: bool,
    checks: &str,
    jobs: Option<usize>,
    path: Option<&Path>,
    no_timing: bool,
    out: &mut dyn Write,
) -> Outcome {
    let config = CensusConfig {
        a_max: max_part,
        b_max: max_part,
        checks: CheckSet::parse(checks)?,
        planar_only,
        jobs,
    };
    let mut report = run_census(&config)?;
    if no_timing {
        report.elapsed_ms = None;
    }
    let json = to_json(&report);
    match path {
        Some(path) => {
            std::fs::write(path, &json)?;
            out.write_all(render_census_summary(&report).as_bytes())?;
        }
        None => out.write_all(json.as_bytes())?,
    }
    Ok(if report.violations.is_empty() {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    })
}

//! Per-graph analysis reports and the exhaustive census of small braces.
//!
//! Every flag is recomputed from the graph through the analysis modules and is
//! tri-state: a flag whose hypotheses do not hold is `not_applicable`, with a
//! note naming the failed hypothesis.

use std::collections::BTreeSet;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::brace::{
    classify_edges_thin, co_terminal_s_cut_excess, is_brace, s1_nonthin_subgraph_from, s_cut_identity_holds,
    verify_cor1, BraceMethod, Disqualifier, EdgeThinness, COR1_ORDER_CAP,
};
use crate::error::{Error, Result};
use crate::generate::{canonical_form, enumerate_bipartite_with_stats, GenFilter, DEFAULT_GENERATION_CAP};
use crate::graph::{degree_profile, BipartiteGraph, Graph, Shore, VertexSet};
use crate::matching::is_matching_covered;
use crate::planarity::{bipartite_edge_bound, euler_check, is_planar};

/// `n - (5/2) n3 + 1`, exactly.
pub fn helu_bound(n: i64, n3: i64) -> Ratio<i64> {
    Ratio::new(2 * n - 5 * n3 + 2, 2)
}

/// `n3 < 0.4 n`, i.e. `5 n3 < 2 n`.
pub fn helu_applicable(n: i64, n3: i64) -> bool {
    5 * n3 < 2 * n
}

/// Grid points `(n, n3)` with `n <= n_max` and `8 <= n3 <= n` where the bound
/// value exceeds `n - 19`, plus any `n` where the value at `n3 = 8` differs from `n - 19`.
pub fn thin_bound_ceiling_violations(n_max: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for n in 8..=n_max {
        let ceiling = Ratio::from_integer(n - 19);
        if helu_bound(n, 8) != ceiling {
            out.push((n, 8));
        }
        for n3 in 8..=n {
            if helu_bound(n, n3) > ceiling {
                out.push((n, n3));
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlagStatus {
    Pass,
    Fail,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flag {
    pub status: FlagStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Flag {
    fn pass() -> Self {
        Flag {
            status: FlagStatus::Pass,
            note: None,
        }
    }

    fn pass_with(note: impl Into<String>) -> Self {
        Flag {
            status: FlagStatus::Pass,
            note: Some(note.into()),
        }
    }

    fn fail(note: impl Into<String>) -> Self {
        Flag {
            status: FlagStatus::Fail,
            note: Some(note.into()),
        }
    }

    fn not_applicable(note: impl Into<String>) -> Self {
        Flag {
            status: FlagStatus::NotApplicable,
            note: Some(note.into()),
        }
    }

    fn check(holds: bool, detail: impl FnOnce() -> String) -> Self {
        if holds {
            Self::pass()
        } else {
            Self::fail(detail())
        }
    }

    pub fn failed(&self) -> bool {
        self.status == FlagStatus::Fail
    }
}

/// Theorem and structure checks for one graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremFlags {
    /// Planar brace on at least six vertices: some vertex is cubic.
    pub no_cubic_free_planar_brace: Flag,
    /// Planar brace on at least six vertices: `n3 >= 8`.
    pub planar_brace_cubic_count: Flag,
    /// Planar brace with `n3 < 0.4 n`: thin edges at least `n - 5/2 n3 + 1`.
    pub planar_thin_lower_bound: Flag,
    /// Planar brace with `n3 >= 8`: the value `n - 5/2 n3 + 1` is at most `n - 19`.
    pub thin_bound_ceiling: Flag,
    /// Planar brace on at least six vertices: `4n - n3 <= 2m`.
    pub degree_sum_lower: Flag,
    /// Planar brace on at least six vertices: `2m <= 4n - 8`.
    pub degree_sum_upper: Flag,
    /// Planar brace on at least six vertices: nonthin edges inside `S1` form a forest with at most `n - 9` edges.
    pub nonthin_count_bound: Flag,
    /// Brace on at least six vertices: nonthin edges inside `S1` form a forest.
    pub nonthin_s1_forest: Flag,
    /// Brace with `n3 < 0.4 n`: thin edges at least `n - 5/2 n3 + 1`.
    pub thin_lower_bound: Flag,
    /// Brace on at least six vertices: every S-cut meets the part-count and single-edge identity.
    pub s_cut_identity: Flag,
    /// Brace: the neighbourhood corollary holds for every admissible vertex set.
    pub neighborhood_corollary: Flag,
    /// Brace on at least six vertices: minimum degree at least three.
    pub brace_min_degree: Flag,
}

impl TheoremFlags {
    pub fn named(&self) -> [(&'static str, &Flag); 12] {
        [
            ("no_cubic_free_planar_brace", &self.no_cubic_free_planar_brace),
            ("planar_brace_cubic_count", &self.planar_brace_cubic_count),
            ("planar_thin_lower_bound", &self.planar_thin_lower_bound),
            ("thin_bound_ceiling", &self.thin_bound_ceiling),
            ("degree_sum_lower", &self.degree_sum_lower),
            ("degree_sum_upper", &self.degree_sum_upper),
            ("nonthin_count_bound", &self.nonthin_count_bound),
            ("nonthin_s1_forest", &self.nonthin_s1_forest),
            ("thin_lower_bound", &self.thin_lower_bound),
            ("s_cut_identity", &self.s_cut_identity),
            ("neighborhood_corollary", &self.neighborhood_corollary),
            ("brace_min_degree", &self.brace_min_degree),
        ]
    }
}

/// An exact rational, serialised with its parts and a display string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalValue {
    pub numerator: i64,
    pub denominator: i64,
    pub display: String,
}

impl From<Ratio<i64>> for RationalValue {
    fn from(r: Ratio<i64>) -> Self {
        RationalValue {
            numerator: *r.numer(),
            denominator: *r.denom(),
            display: r.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BraceSummary {
    pub is_brace: bool,
    pub tight_cut_free: Option<bool>,
    pub two_extendable: Option<bool>,
    pub neighborhood: Option<bool>,
    pub methods_agree: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub disqualifier: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonthinEdge {
    pub edge: String,
    /// Each S-cut as the ids of the shore containing the edge's A-end.
    pub s_cuts: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThinSummary {
    pub thin_count: usize,
    pub nonthin_count: usize,
    pub nonthin_edges: Vec<NonthinEdge>,
    /// Edges whose deletion left a graph that is not matching covered.
    pub anomalies: usize,
    pub s1_nonthin_edge_count: usize,
    pub forest: bool,
    /// S-cut pairs at a common vertex of `S1` with more than one vertex outside both (diagnostic).
    pub co_terminal_excess: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub canonical_form: Option<String>,
    pub n: usize,
    pub m: usize,
    pub n3: usize,
    pub parts: [usize; 2],
    pub min_degree: usize,
    pub max_degree: usize,
    pub matching_covered: bool,
    pub uncovered_edges: Vec<String>,
    pub brace: BraceSummary,
    pub planar: bool,
    pub face_count: Option<usize>,
    pub euler_check: Option<bool>,
    /// `m <= 2n - 4`, when the bound's hypotheses hold.
    pub edge_bound: Option<bool>,
    /// `m = 2n - 4`.
    pub edge_bound_tight: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kuratowski: Option<String>,
    pub thin: Option<ThinSummary>,
    /// `n - 5/2 n3 + 1` when `n3 < 0.4 n`.
    pub helu_bound: Option<RationalValue>,
    pub flags: TheoremFlags,
    pub resource_errors: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

fn describe_disqualifier(g: &BipartiteGraph, d: &Disqualifier) -> String {
    let ids = |s: VertexSet| g.vertex_ids(s).join(",");
    match d {
        Disqualifier::PathOfLengthThree => "path of length three".into(),
        Disqualifier::NotMatchingCovered {
            connected,
            has_perfect_matching,
            uncovered_edges,
        } => {
            if !connected {
                "not connected".into()
            } else if !has_perfect_matching {
                "no perfect matching".into()
            } else {
                let labels: Vec<String> = uncovered_edges.iter().map(|&e| g.edge_label(e)).collect();
                format!("edges in no perfect matching: {}", labels.join(" "))
            }
        }
        Disqualifier::NontrivialTightCut(x) => format!("nontrivial tight cut with shore {{{}}}", ids(x.members())),
        Disqualifier::NonExtendablePair(e, f) => {
            format!("edges {} and {} lie in no common perfect matching", g.edge_label(*e), g.edge_label(*f))
        }
        Disqualifier::SmallNeighborhood { set, neighborhood } => format!(
            "N({{{}}}) = {{{}}} is smaller than |X| + 2",
            ids(*set),
            ids(*neighborhood)
        ),
    }
}

fn shore_ids(g: &BipartiteGraph, x: &Shore) -> Vec<String> {
    g.vertex_ids(x.members())
}

/// Analyses one graph. Resource limits hit along the way are recorded in the
/// report and the affected fields left empty.
pub fn analyze(g: &BipartiteGraph) -> AnalysisReport {
    let mut resource_errors = Vec::new();
    let mut note_error = |e: Error| resource_errors.push(e.to_string());

    let n = g.order();
    let m = g.size();
    let profile = degree_profile(g);
    let n3 = profile.n3;
    let canonical = canonical_form(g).map(|c| c.to_hex()).map_err(&mut note_error).ok();
    let coverage = is_matching_covered(g);

    let verdict = is_brace(g, BraceMethod::All).map_err(&mut note_error).ok();
    let brace = match &verdict {
        Some(v) => BraceSummary {
            is_brace: v.is_brace,
            tight_cut_free: v.method_results.tight_cut_free,
            two_extendable: v.method_results.two_extendable,
            neighborhood: v.method_results.neighborhood,
            methods_agree: v.method_results.agree(),
            disqualifier: v.disqualifier.as_ref().map(|d| describe_disqualifier(g, d)),
        },
        None => BraceSummary {
            is_brace: false,
            tight_cut_free: None,
            two_extendable: None,
            neighborhood: None,
            methods_agree: true,
            disqualifier: Some("not decided".into()),
        },
    };
    let is_brace = brace.is_brace;

    let planarity = is_planar(g);
    let euler = if planarity.planar && g.is_connected() {
        euler_check(&planarity, g).ok()
    } else {
        None
    };
    let edge_bound = bipartite_edge_bound(g).ok();

    let thinness: Option<Vec<EdgeThinness>> = if is_brace && n >= 6 {
        classify_edges_thin(g).map_err(&mut note_error).ok()
    } else {
        None
    };
    let thin = thinness.as_ref().map(|t| {
        let s1 = s1_nonthin_subgraph_from(g, t);
        ThinSummary {
            thin_count: t.iter().filter(|e| e.thin).count(),
            nonthin_count: t.iter().filter(|e| !e.thin).count(),
            nonthin_edges: t
                .iter()
                .filter(|e| !e.thin)
                .map(|e| NonthinEdge {
                    edge: g.edge_label(e.edge),
                    s_cuts: e.s_cuts.iter().map(|x| shore_ids(g, x)).collect(),
                })
                .collect(),
            anomalies: t.iter().filter(|e| e.anomaly).count(),
            s1_nonthin_edge_count: s1.edges.len(),
            forest: s1.is_forest,
            co_terminal_excess: co_terminal_s_cut_excess(g, t).len(),
        }
    });

    let cor1 = if is_brace && n <= COR1_ORDER_CAP {
        verify_cor1(g).map_err(&mut note_error).ok()
    } else {
        None
    };

    let (ni, n3i, mi) = (n as i64, n3 as i64, m as i64);
    let bound = helu_applicable(ni, n3i).then(|| helu_bound(ni, n3i));
    let large_brace = is_brace && n >= 6;
    let planar_brace = large_brace && planarity.planar;
    let not_planar_brace = || {
        if !is_brace {
            "not a brace"
        } else if n < 6 {
            "fewer than six vertices"
        } else {
            "not planar"
        }
    };
    let not_large_brace = || if is_brace { "fewer than six vertices" } else { "not a brace" };

    let thin_bound_flag = |applies: bool, why_not: &str| -> Flag {
        if !applies {
            return Flag::not_applicable(why_not);
        }
        if !helu_applicable(ni, n3i) {
            return Flag::not_applicable(format!("n3 = {n3} is not below 0.4 n = {}", Ratio::new(2 * ni, 5)));
        }
        let value = helu_bound(ni, n3i);
        match &thin {
            Some(t) => Flag::check(Ratio::from_integer(t.thin_count as i64) >= value, || {
                format!("{} thin edges, bound {}", t.thin_count, value)
            }),
            None => Flag::not_applicable("thin edges not classified"),
        }
    };

    let flags = TheoremFlags {
        no_cubic_free_planar_brace: if planar_brace {
            Flag::check(n3 >= 1, || "planar brace with no cubic vertex".into())
        } else {
            Flag::not_applicable(not_planar_brace())
        },
        planar_brace_cubic_count: if planar_brace {
            Flag::check(n3 >= 8, || format!("n3 = {n3}"))
        } else {
            Flag::not_applicable(not_planar_brace())
        },
        planar_thin_lower_bound: thin_bound_flag(planar_brace, not_planar_brace()),
        thin_bound_ceiling: if !planar_brace {
            Flag::not_applicable(not_planar_brace())
        } else if n3 < 8 {
            Flag::not_applicable(format!("n3 = {n3} is below 8"))
        } else {
            let value = helu_bound(ni, n3i);
            Flag::check(value <= Ratio::from_integer(ni - 19), || format!("bound value {value} exceeds n - 19"))
        },
        degree_sum_lower: if planar_brace {
            Flag::check(4 * ni - n3i <= 2 * mi, || format!("4n - n3 = {} > 2m = {}", 4 * ni - n3i, 2 * mi))
        } else {
            Flag::not_applicable(not_planar_brace())
        },
        degree_sum_upper: if planar_brace {
            Flag::check(2 * mi <= 4 * ni - 8, || format!("2m = {} > 4n - 8 = {}", 2 * mi, 4 * ni - 8))
        } else {
            Flag::not_applicable(not_planar_brace())
        },
        nonthin_count_bound: match (&thin, planar_brace) {
            (_, false) => Flag::not_applicable(not_planar_brace()),
            (None, true) => Flag::not_applicable("thin edges not classified"),
            (Some(t), true) if !t.forest => Flag::fail("nonthin edges inside S1 contain a cycle"),
            (Some(t), true) if t.s1_nonthin_edge_count == 0 => {
                Flag::pass_with("no nonthin edge inside S1; the n - 9 count is not exercised")
            }
            (Some(t), true) => Flag::check(t.s1_nonthin_edge_count as i64 <= ni - 9, || {
                format!("{} nonthin edges inside S1, n - 9 = {}", t.s1_nonthin_edge_count, ni - 9)
            }),
        },
        nonthin_s1_forest: match (&thin, large_brace) {
            (_, false) => Flag::not_applicable(not_large_brace()),
            (None, true) => Flag::not_applicable("thin edges not classified"),
            (Some(t), true) => Flag::check(t.forest, || "nonthin edges inside S1 contain a cycle".into()),
        },
        thin_lower_bound: thin_bound_flag(large_brace, not_large_brace()),
        s_cut_identity: match (&thinness, large_brace) {
            (_, false) => Flag::not_applicable(not_large_brace()),
            (None, true) => Flag::not_applicable("thin edges not classified"),
            (Some(t), true) => {
                let bad: Vec<String> = t
                    .iter()
                    .flat_map(|e| e.s_cuts.iter().map(move |x| (e.edge, x)))
                    .filter(|(e, x)| !s_cut_identity_holds(g, *e, x))
                    .map(|(e, _)| g.edge_label(e))
                    .collect();
                Flag::check(bad.is_empty(), || format!("identity fails for S-cuts of {}", bad.join(" ")))
            }
        },
        neighborhood_corollary: match cor1 {
            Some(ok) => Flag::check(ok, || "an admissible vertex set violates the corollary".into()),
            None if !is_brace => Flag::not_applicable("not a brace"),
            None => Flag::not_applicable(format!("order {n} above the cap of {COR1_ORDER_CAP}")),
        },
        brace_min_degree: if large_brace {
            Flag::check(profile.min_degree >= 3, || format!("minimum degree {}", profile.min_degree))
        } else {
            Flag::not_applicable(not_large_brace())
        },
    };

    AnalysisReport {
        name: g.name().map(str::to_owned),
        canonical_form: canonical,
        n,
        m,
        n3,
        parts: [g.part_sizes().0, g.part_sizes().1],
        min_degree: profile.min_degree,
        max_degree: profile.max_degree,
        matching_covered: coverage.covered,
        uncovered_edges: if coverage.has_perfect_matching {
            coverage.uncovered_edges.iter().map(|&e| g.edge_label(e)).collect()
        } else {
            Vec::new()
        },
        brace,
        planar: planarity.planar,
        face_count: planarity.face_count,
        euler_check: euler,
        edge_bound,
        edge_bound_tight: n >= 2 && m + 4 == 2 * n,
        kuratowski: planarity.certificate.map(|c| format!("{:?}", c.kind)),
        thin,
        helu_bound: bound.map(RationalValue::from),
        flags,
        resource_errors,
        elapsed_ms: None,
    }
}

/// Which census checks produce violations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSet {
    /// No planar brace without cubic vertices, i.e. none with minimum degree at least 4.
    pub t1: bool,
    /// Planar braces on at least six vertices have `n3 >= 8`.
    pub t2: bool,
    /// Planar braces with `n3 < 0.4 n` meet the thin-edge lower bound.
    pub t3: bool,
    /// The thin-edge bound value never exceeds `n - 19` once `n3 >= 8`.
    pub t4: bool,
    /// `4n - n3 <= 2m <= 4n - 8` for planar braces.
    pub chain: bool,
    /// Nonthin edges inside `S1` of a planar brace: forest, at most `n - 9`.
    pub cor: bool,
    /// Nonthin edges inside `S1` of every brace form a forest.
    pub helu2: bool,
    /// Thin-edge lower bound for every brace with `n3 < 0.4 n`.
    pub helu3: bool,
    /// S-cut identity for every nonthin edge.
    pub prop8: bool,
    /// Neighbourhood corollary on every brace within its cap.
    pub cor1: bool,
}

impl CheckSet {
    pub fn all() -> Self {
        CheckSet {
            t1: true,
            t2: true,
            t3: true,
            t4: true,
            chain: true,
            cor: true,
            helu2: true,
            helu3: true,
            prop8: true,
            cor1: true,
        }
    }

    pub fn none() -> Self {
        CheckSet {
            t1: false,
            t2: false,
            t3: false,
            t4: false,
            chain: false,
            cor: false,
            helu2: false,
            helu3: false,
            prop8: false,
            cor1: false,
        }
    }

    /// Parses a comma-separated list such as `t1,t2,cor` or `all`.
    pub fn parse(list: &str) -> Result<Self> {
        let mut set = Self::none();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item.to_ascii_lowercase().as_str() {
                "all" => set = Self::all(),
                "t1" => set.t1 = true,
                "t2" => set.t2 = true,
                "t3" => set.t3 = true,
                "t4" => set.t4 = true,
                "chain" => set.chain = true,
                "cor" => set.cor = true,
                "helu2" => set.helu2 = true,
                "helu3" => set.helu3 = true,
                "prop8" => set.prop8 = true,
                "cor1" => set.cor1 = true,
                other => return Err(Error::input(format!("unknown check `{other}`"))),
            }
        }
        Ok(set)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusConfig {
    pub a_max: usize,
    pub b_max: usize,
    pub checks: CheckSet,
    pub planar_only: bool,
    pub jobs: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCell {
    pub a: usize,
    pub b: usize,
    /// Connected graphs passing the degree and edge-count prunes.
    pub candidates: usize,
    pub braces: usize,
    pub planar_braces: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub canonical_form: String,
    pub parts: [usize; 2],
    pub n: usize,
    pub m: usize,
    pub n3: usize,
    pub min_degree: usize,
    pub planar: bool,
    pub thin_count: Option<usize>,
    pub nonthin_count: Option<usize>,
    pub s1_nonthin_edge_count: Option<usize>,
    pub forest: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canonical_form: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusDiagnostics {
    /// Edges `e` of census braces with `G - e` not matching covered.
    pub anomalies: usize,
    /// S-cut pairs at a common vertex of `S1` with more than one vertex outside both.
    pub co_terminal_excess: usize,
    /// Braces with an odd number of cubic vertices.
    pub odd_n3: usize,
    pub nonthin_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub a_max: usize,
    pub b_max: usize,
    pub planar_only: bool,
    pub checks: CheckSet,
    pub cells: Vec<CensusCell>,
    pub braces: Vec<CensusRecord>,
    /// Canonical forms of planar braces on at least six vertices.
    pub planar_braces_six_plus: Vec<String>,
    pub violations: Vec<Violation>,
    pub diagnostics: CensusDiagnostics,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

/// Largest `n` of the grid for the bound-ceiling check.
pub const CEILING_GRID_MAX: i64 = 1000;

/// Enumerates braces (or planar braces) per part-size cell, analyses each one
/// and collects violations of the selected checks.
pub fn run_census(config: &CensusConfig) -> Result<CensusReport> {
    Error::check_cap("census part-size sum", config.a_max + config.b_max, DEFAULT_GENERATION_CAP)?;
    if config.a_max == 0 || config.b_max == 0 {
        return Err(Error::input("census part sizes must be positive"));
    }
    let run = || census_body(config);
    match config.jobs {
        Some(threads) => rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build()
            .map_err(|e| Error::input(format!("cannot start worker pool: {e}")))?
            .install(run),
        None => run(),
    }
}

fn census_body(config: &CensusConfig) -> Result<CensusReport> {
    let start = Instant::now();
    let checks = config.checks;
    let mut cells = Vec::new();
    let mut braces = Vec::new();
    let mut planar_forms = Vec::new();
    let mut violations = Vec::new();
    let mut diagnostics = CensusDiagnostics::default();
    let mut seen = BTreeSet::new();

    for a in 1..=config.a_max {
        for b in a..=config.b_max {
            let n = a + b;
            let filter = if config.planar_only {
                GenFilter::planar_braces(n)
            } else {
                GenFilter::braces(n)
            };
            let (graphs, stats) = enumerate_bipartite_with_stats(a, b, filter, None)?;
            let reports: Vec<AnalysisReport> = graphs.par_iter().map(analyze).collect();
            let mut cell = CensusCell {
                a,
                b,
                candidates: stats.candidates,
                braces: 0,
                planar_braces: 0,
            };
            for report in &reports {
                let form = report.canonical_form.clone().unwrap_or_default();
                if !seen.insert(form.clone()) {
                    continue;
                }
                cell.braces += 1;
                cell.planar_braces += usize::from(report.planar);
                if report.planar && n >= 6 {
                    planar_forms.push(form.clone());
                }
                if let Some(t) = &report.thin {
                    diagnostics.anomalies += t.anomalies;
                    diagnostics.co_terminal_excess += t.co_terminal_excess;
                    diagnostics.nonthin_edges += t.nonthin_count;
                }
                diagnostics.odd_n3 += report.n3 % 2;
                collect_violations(report, checks, &mut violations);
                braces.push(CensusRecord {
                    canonical_form: form,
                    parts: report.parts,
                    n: report.n,
                    m: report.m,
                    n3: report.n3,
                    min_degree: report.min_degree,
                    planar: report.planar,
                    thin_count: report.thin.as_ref().map(|t| t.thin_count),
                    nonthin_count: report.thin.as_ref().map(|t| t.nonthin_count),
                    s1_nonthin_edge_count: report.thin.as_ref().map(|t| t.s1_nonthin_edge_count),
                    forest: report.thin.as_ref().map(|t| t.forest),
                });
            }
            cells.push(cell);
        }
    }
    if checks.t4 {
        for (n, n3) in thin_bound_ceiling_violations(CEILING_GRID_MAX) {
            violations.push(Violation {
                check: "t4".into(),
                canonical_form: None,
                detail: format!("bound value {} at n = {n}, n3 = {n3} exceeds n - 19", helu_bound(n, n3)),
            });
        }
    }
    Ok(CensusReport {
        a_max: config.a_max,
        b_max: config.b_max,
        planar_only: config.planar_only,
        checks,
        cells,
        braces,
        planar_braces_six_plus: planar_forms,
        violations,
        diagnostics,
        elapsed_ms: Some(start.elapsed().as_secs_f64() * 1000.0),
    })
}

fn collect_violations(report: &AnalysisReport, checks: CheckSet, out: &mut Vec<Violation>) {
    let form = report.canonical_form.clone();
    let mut push = |check: &str, detail: String| {
        out.push(Violation {
            check: check.into(),
            canonical_form: form.clone(),
            detail,
        })
    };
    let flag = |check: &str, f: &Flag, push: &mut dyn FnMut(&str, String)| {
        if f.failed() {
            push(check, f.note.clone().unwrap_or_default());
        }
    };
    let flags = &report.flags;
    let n = report.n;

    // Structural expectations that hold for every census graph.
    if !report.brace.is_brace {
        push("filter", "emitted graph is not a brace".into());
    }
    if !report.brace.methods_agree {
        push("methods", "brace recognition methods disagree".into());
    }
    if !report.matching_covered {
        push("coverage", "brace is not matching covered".into());
    }
    flag("min_degree", &flags.brace_min_degree, &mut push);
    if report.planar && report.euler_check != Some(true) {
        push("euler", "planar embedding fails n - m + f = 2".into());
    }
    if report.edge_bound == Some(false) && report.planar {
        push("edge_bound", "m > 2n - 4 but reported planar".into());
    }
    if let Some(t) = &report.thin {
        if t.thin_count + t.nonthin_count != report.m {
            push("thin_total", "thin and nonthin counts do not sum to m".into());
        }
        if n <= 8 && t.nonthin_count > 0 {
            push("small_thin", format!("{} nonthin edges on {n} vertices", t.nonthin_count));
        }
    }

    if checks.t1 && report.planar && report.min_degree >= 4 {
        push("t1", format!("planar brace with minimum degree {}", report.min_degree));
    }
    if checks.t1 {
        flag("t1", &flags.no_cubic_free_planar_brace, &mut push);
    }
    if checks.t2 {
        flag("t2", &flags.planar_brace_cubic_count, &mut push);
    }
    if checks.t3 {
        flag("t3", &flags.planar_thin_lower_bound, &mut push);
    }
    if checks.t4 {
        flag("t4", &flags.thin_bound_ceiling, &mut push);
    }
    if checks.chain {
        flag("chain", &flags.degree_sum_lower, &mut push);
        flag("chain", &flags.degree_sum_upper, &mut push);
    }
    if checks.cor {
        flag("cor", &flags.nonthin_count_bound, &mut push);
    }
    if checks.helu2 {
        flag("helu2", &flags.nonthin_s1_forest, &mut push);
    }
    if checks.helu3 {
        flag("helu3", &flags.thin_lower_bound, &mut push);
    }
    if checks.prop8 {
        flag("prop8", &flags.s_cut_identity, &mut push);
    }
    if checks.cor1 {
        flag("cor1", &flags.neighborhood_corollary, &mut push);
    }
    if !report.resource_errors.is_empty() {
        push("resource", report.resource_errors.join("; "));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::named_graph;

    #[test]
    fn bound_values() {
        assert_eq!(helu_bound(16, 0), Ratio::from_integer(17));
        assert_eq!(helu_bound(8, 2), Ratio::from_integer(4));
        assert_eq!(helu_bound(30, 8), Ratio::from_integer(11));
        assert_eq!(helu_bound(10, 1), Ratio::new(17, 2));
        assert!(helu_applicable(8, 0));
        assert!(!helu_applicable(10, 4));
        assert!(thin_bound_ceiling_violations(200).is_empty());
    }

    #[test]
    fn cube_report() {
        let r = analyze(&named_graph("q3").unwrap());
        assert_eq!((r.n, r.m, r.n3), (8, 12, 8));
        assert!(r.brace.is_brace && r.brace.methods_agree);
        assert!(r.planar && r.face_count == Some(6) && r.euler_check == Some(true));
        assert!(r.edge_bound_tight);
        let thin = r.thin.as_ref().unwrap();
        assert_eq!((thin.thin_count, thin.nonthin_count), (12, 0));
        assert_eq!(r.flags.planar_brace_cubic_count.status, FlagStatus::Pass);
        assert_eq!(r.flags.nonthin_count_bound.status, FlagStatus::Pass);
        assert!(r.flags.nonthin_count_bound.note.is_some());
        assert_eq!(r.flags.thin_lower_bound.status, FlagStatus::NotApplicable);
        assert_eq!(r.flags.thin_bound_ceiling.status, FlagStatus::Pass);
        assert!(r.helu_bound.is_none());
    }

    #[test]
    fn k33_report() {
        let r = analyze(&named_graph("k3,3").unwrap());
        assert!(r.brace.is_brace && !r.planar);
        assert_eq!(r.n3, 6);
        assert_eq!(r.thin.as_ref().unwrap().thin_count, 9);
        assert_eq!(r.flags.planar_brace_cubic_count.status, FlagStatus::NotApplicable);
        assert_eq!(r.kuratowski.as_deref(), Some("K33"));
    }

    #[test]
    fn k44_report() {
        let r = analyze(&named_graph("k4,4").unwrap());
        assert_eq!(r.n3, 0);
        assert_eq!(r.thin.as_ref().unwrap().thin_count, 16);
        assert_eq!(r.helu_bound.as_ref().unwrap().display, "9");
        assert_eq!(r.flags.thin_lower_bound.status, FlagStatus::Pass);
    }

    #[test]
    fn non_brace_report() {
        let r = analyze(&named_graph("path4").unwrap());
        assert!(!r.brace.is_brace && !r.matching_covered);
        assert!(r.thin.is_none());
        assert!(r.flags.named().iter().all(|(_, f)| f.status == FlagStatus::NotApplicable));
    }

    #[test]
    fn check_set_parsing() {
        assert_eq!(CheckSet::parse("all").unwrap(), CheckSet::all());
        let s = CheckSet::parse("t1,helu3").unwrap();
        assert!(s.t1 && s.helu3 && !s.t2);
        assert!(CheckSet::parse("t9").is_err());
    }

    #[test]
    fn small_census() {
        let report = run_census(&CensusConfig {
            a_max: 4,
            b_max: 4,
            checks: CheckSet::all(),
            planar_only: true,
            jobs: None,
        })
        .unwrap();
        assert!(report.violations.is_empty(), "{:?}", report.violations);
        let q3 = canonical_form(&named_graph("q3").unwrap()).unwrap().to_hex();
        assert_eq!(report.planar_braces_six_plus, vec![q3]);
    }
}

//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the report is always printed; exits non-zero on any failure.

mod common;

use std::time::{Duration, Instant};

use braces::brace::{
    classify_edges_thin, is_brace, s1_nonthin_subgraph_from, s_cut_identity_holds, verify_cor1, BraceMethod,
};
use braces::cuts::{
    enumerate_odd_shores, find_separating_not_tight, is_separating_contraction, is_separating_matchingwise,
    is_tight_bipartite, is_tight_definitional,
};
use braces::generate::{canonical_form, enumerate_bipartite, named_graph, GenFilter};
use braces::matching::{enumerate_perfect_matchings, is_matching_covered};
use braces::planarity::{bipartite_edge_bound, euler_check, is_planar};
use braces::verify::{analyze, helu_applicable, helu_bound, run_census, CensusConfig, CensusReport, CheckSet};
use braces::{BipartiteGraph, Graph};
use common::{has_kuratowski_subdivision, random_balanced, ryser_permanent};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const Q3_TIME_LIMIT: Duration = Duration::from_secs(1);
const PLANAR_SWEEP_TIME_LIMIT: Duration = Duration::from_secs(5 * 60);
const FOREST_CENSUS_TIME_LIMIT: Duration = Duration::from_secs(30 * 60);
/// Largest part size of the desk-scale census.
const CENSUS_PART: usize = 5;
const CEILING_GRID_MAX: i64 = 1000;
const RYSER_SAMPLES: usize = 50;
const RYSER_SEED: u64 = 0x00c0_ffee;
const ORACLE_ORDER: usize = 8;
const COR1_ORDER: usize = 10;
const WITNESS_ORDER: usize = 6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn q3_form() -> String {
    canonical_form(&named_graph("q3").unwrap()).unwrap().to_hex()
}

/// Braces with both parts of size at most `CENSUS_PART`.
fn census_braces() -> Vec<BipartiteGraph> {
    (1..=CENSUS_PART)
        .flat_map(|h| enumerate_bipartite(h, h, GenFilter::braces(2 * h)).unwrap())
        .collect()
}

/// Connected bipartite graphs on at most `ORACLE_ORDER` vertices, one per class.
fn small_census_graphs(filter: GenFilter) -> Vec<BipartiteGraph> {
    let mut out = Vec::new();
    for a in 1..=ORACLE_ORDER / 2 {
        for b in a..=ORACLE_ORDER - a {
            out.extend(enumerate_bipartite(a, b, filter).unwrap());
        }
    }
    out
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let r = analyze(&named_graph("q3").unwrap());
    let elapsed = start.elapsed();
    let thin = r.thin.as_ref().map(|t| t.thin_count);
    let checks = [
        ("n = 8", r.n == 8),
        ("m = 12", r.m == 12),
        ("n3 = 8", r.n3 == 8),
        ("tight-cut-free", r.brace.tight_cut_free == Some(true)),
        ("two-extendable", r.brace.two_extendable == Some(true)),
        ("neighborhood", r.brace.neighborhood == Some(true)),
        ("planar", r.planar),
        ("f = 6", r.face_count == Some(6)),
        ("euler", r.euler_check == Some(true)),
        ("m = 2n - 4", r.edge_bound_tight),
        ("12 thin", thin == Some(12)),
        ("time", elapsed < Q3_TIME_LIMIT),
    ];
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| *name).collect();
    outcome(
        failed.is_empty(),
        format!("n={} m={} n3={} f={:?} thin={thin:?} in {elapsed:?}; failed: {failed:?}", r.n, r.m, r.n3, r.face_count),
    )
}

fn planar_sweep() -> (CensusReport, Duration) {
    let start = Instant::now();
    let report = run_census(&CensusConfig {
        a_max: 4,
        b_max: 4,
        checks: CheckSet::all(),
        planar_only: true,
        jobs: None,
    })
    .unwrap();
    (report, start.elapsed())
}

fn criterion_2(report: &CensusReport, elapsed: Duration) -> Outcome {
    let six: usize = report.cells.iter().filter(|c| c.a + c.b == 6).map(|c| c.planar_braces).sum();
    let large: Vec<_> = report.braces.iter().filter(|b| b.n >= 6 && b.planar).collect();
    let inequalities = large
        .iter()
        .all(|b| b.n3 >= 8 && 4 * b.n - b.n3 <= 2 * b.m && 2 * b.m + 8 <= 4 * b.n);
    let pass = report.planar_braces_six_plus == vec![q3_form()]
        && six == 0
        && large.len() == 1
        && inequalities
        && report.violations.is_empty()
        && elapsed < PLANAR_SWEEP_TIME_LIMIT;
    outcome(
        pass,
        format!(
            "{} planar braces with n >= 6 (Q3: {}), {six} at n = 6, inequalities {inequalities}, {} violations, {elapsed:?}",
            large.len(),
            report.planar_braces_six_plus == vec![q3_form()],
            report.violations.len()
        ),
    )
}

fn criterion_3(report: &CensusReport) -> Outcome {
    let dense = report.braces.iter().filter(|b| b.planar && b.n >= 6 && b.min_degree >= 4).count();
    outcome(
        dense == 0 && report.violations.is_empty(),
        format!("{dense} planar braces with minimum degree >= 4 among {} braces", report.braces.len()),
    )
}

struct Classified {
    graph: BipartiteGraph,
    thinness: Vec<braces::brace::EdgeThinness>,
}

fn criterion_4(census: &[Classified]) -> Outcome {
    let k33 = named_graph("k3,3").unwrap();
    let k33_thin = classify_edges_thin(&k33).unwrap().iter().filter(|t| t.thin).count();
    let exceptions = census
        .iter()
        .filter(|c| c.graph.order() <= 8)
        .filter(|c| c.thinness.iter().any(|t| !t.thin))
        .count();
    let small = census.iter().filter(|c| c.graph.order() <= 8).count();
    outcome(
        k33_thin == 9 && exceptions == 0,
        format!("K3,3: {k33_thin}/9 thin; {exceptions} of {small} braces with 6 <= n <= 8 have a nonthin edge"),
    )
}

fn criterion_5(census: &[Classified], elapsed: Duration) -> Outcome {
    let cycles = census
        .iter()
        .filter(|c| !s1_nonthin_subgraph_from(&c.graph, &c.thinness).is_forest)
        .count();
    let nonthin: usize = census.iter().map(|c| c.thinness.iter().filter(|t| !t.thin).count()).sum();
    outcome(
        cycles == 0 && elapsed < FOREST_CENSUS_TIME_LIMIT,
        format!(
            "{} braces, {nonthin} nonthin edges, {cycles} with a cycle in S1; classified in {elapsed:?}",
            census.len()
        ),
    )
}

fn criterion_6(census: &[Classified]) -> Outcome {
    let mut applicable = 0;
    let mut violations = Vec::new();
    for c in census {
        let n = c.graph.order() as i64;
        let n3 = braces::graph::degree_profile(&c.graph).n3 as i64;
        if !helu_applicable(n, n3) {
            continue;
        }
        applicable += 1;
        let thin = c.thinness.iter().filter(|t| t.thin).count() as i64;
        if Ratio::from_integer(thin) < helu_bound(n, n3) {
            violations.push(canonical_form(&c.graph).unwrap().to_hex());
        }
    }
    let k44 = named_graph("k4,4").unwrap();
    let k44_thin = classify_edges_thin(&k44).unwrap().iter().filter(|t| t.thin).count() as i64;
    let k44_ok = Ratio::from_integer(k44_thin) >= helu_bound(8, 0) && helu_bound(8, 0) == Ratio::from_integer(9);
    outcome(
        violations.is_empty() && k44_ok && applicable > 0,
        format!("{applicable} braces with n3 < 0.4n, {} violations; K4,4 {k44_thin} >= 9", violations.len()),
    )
}

fn criterion_7() -> Outcome {
    let mut equal = 0;
    let mut bad = Vec::new();
    for n in 8..=CEILING_GRID_MAX {
        let ceiling = Ratio::from_integer(n - 19);
        if helu_bound(n, 8) == ceiling {
            equal += 1;
        } else {
            bad.push((n, 8));
        }
        for n3 in 8..=n {
            if helu_bound(n, n3) > ceiling {
                bad.push((n, n3));
            }
        }
    }
    outcome(
        bad.is_empty(),
        format!("bound(n, 8) = n - 19 for {equal} values of n <= {CEILING_GRID_MAX}; {} grid points above n - 19", bad.len()),
    )
}

fn criterion_8() -> Outcome {
    let filter = GenFilter {
        require_matching_covered: true,
        ..GenFilter::none()
    };
    let graphs: Vec<BipartiteGraph> = (1..=ORACLE_ORDER / 2)
        .flat_map(|h| enumerate_bipartite(h, h, filter).unwrap())
        .collect();
    let (mut shores, mut tight_disagree, mut sep_disagree, mut implication) = (0, 0, 0, 0);
    for g in &graphs {
        for x in enumerate_odd_shores(g).unwrap() {
            shores += 1;
            let tight = is_tight_definitional(g, &x).unwrap();
            let separating = is_separating_contraction(g, &x).unwrap();
            tight_disagree += usize::from(tight != is_tight_bipartite(g, &x).unwrap());
            sep_disagree += usize::from(separating != is_separating_matchingwise(g, &x).unwrap());
            implication += usize::from(tight && !separating);
        }
    }
    outcome(
        tight_disagree + sep_disagree + implication == 0,
        format!(
            "{} graphs, {shores} shores: {tight_disagree} tight, {sep_disagree} separating disagreements, \
             {implication} tight but not separating",
            graphs.len()
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(RYSER_SEED);
    let mut mismatches = 0;
    for _ in 0..RYSER_SAMPLES {
        let half = rng.gen_range(1..=6);
        let p = rng.gen_range(0.25..0.95);
        let g = random_balanced(&mut rng, half, p);
        mismatches += usize::from(enumerate_perfect_matchings(&g).unwrap().len() as i128 != ryser_permanent(&g));
    }
    let named: Vec<(String, usize)> = [("c4", 2), ("k3,3", 6), ("q3", 9)]
        .iter()
        .map(|&(name, _)| (name.to_string(), enumerate_perfect_matchings(&named_graph(name).unwrap()).unwrap().len()))
        .collect();
    let named_ok = named.iter().map(|(_, c)| *c).eq([2, 6, 9]);
    outcome(
        mismatches == 0 && named_ok,
        format!("{RYSER_SAMPLES} random graphs, {mismatches} mismatches; counts {named:?}"),
    )
}

fn criterion_10() -> Outcome {
    let Some(w) = find_separating_not_tight(WITNESS_ORDER).unwrap() else {
        return outcome(false, format!("no witness on at most {WITNESS_ORDER} vertices"));
    };
    let g = &w.host;
    let x = &w.shore;
    let covered = is_matching_covered(g).covered;
    let contraction = is_separating_contraction(g, x).unwrap();
    let matchingwise = is_separating_matchingwise(g, x).unwrap();
    let tight = is_tight_definitional(g, x).unwrap();
    outcome(
        covered && !x.is_trivial() && contraction && matchingwise && !tight,
        format!(
            "host on {} vertices, {} edges, shore {{{}}}: separating {contraction}/{matchingwise}, tight {tight}",
            g.order(),
            g.size(),
            g.vertex_ids(x.members()).join(",")
        ),
    )
}

fn criterion_11(census: &[Classified]) -> Outcome {
    let (mut s_cuts, mut identity_failures) = (0, 0);
    for c in census {
        for t in &c.thinness {
            for x in &t.s_cuts {
                s_cuts += 1;
                identity_failures += usize::from(!s_cut_identity_holds(&c.graph, t.edge, x));
            }
        }
    }
    let mut cor1_checked = 0;
    let mut cor1_failures = 0;
    for c in census.iter().filter(|c| c.graph.order() <= COR1_ORDER) {
        cor1_checked += 1;
        cor1_failures += usize::from(!verify_cor1(&c.graph).unwrap());
    }
    for name in ["c4", "k1,1"] {
        cor1_checked += 1;
        cor1_failures += usize::from(!verify_cor1(&named_graph(name).unwrap()).unwrap());
    }
    outcome(
        identity_failures == 0 && cor1_failures == 0 && s_cuts > 0,
        format!(
            "{s_cuts} S-cuts, {identity_failures} identity failures; neighborhood corollary on {cor1_checked} braces, \
             {cor1_failures} failures"
        ),
    )
}

fn criterion_12() -> Outcome {
    let graphs = small_census_graphs(GenFilter::none());
    let (mut disagreements, mut bound_failures, mut faces) = (0, 0, 0);
    for g in &graphs {
        let verdict = is_planar(g);
        disagreements += usize::from(verdict.planar == has_kuratowski_subdivision(g.order(), g.edge_list()));
        if bipartite_edge_bound(g) == Ok(false) && verdict.planar {
            bound_failures += 1;
        }
        if verdict.planar && euler_check(&verdict, g) != Ok(true) {
            faces += 1;
        }
    }
    outcome(
        disagreements + bound_failures + faces == 0,
        format!(
            "{} graphs: {disagreements} oracle disagreements, {bound_failures} edge-bound failures, {faces} Euler failures",
            graphs.len()
        ),
    )
}

fn main() {
    let start = Instant::now();
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "cube reproduction", criterion_1()));

    let (planar, planar_time) = planar_sweep();
    results.push((2, "planar brace census", criterion_2(&planar, planar_time)));
    results.push((3, "no planar brace of minimum degree four", criterion_3(&planar)));

    let census_start = Instant::now();
    let census: Vec<Classified> = census_braces()
        .into_iter()
        .filter(|g| g.order() >= 6)
        .map(|g| {
            assert!(is_brace(&g, BraceMethod::All).unwrap().is_brace);
            let thinness = classify_edges_thin(&g).unwrap();
            Classified { graph: g, thinness }
        })
        .collect();
    let census_time = census_start.elapsed();

    results.push((4, "small braces are thin", criterion_4(&census)));
    results.push((5, "nonthin edges inside S1 form a forest", criterion_5(&census, census_time)));
    results.push((6, "thin-edge lower bound", criterion_6(&census)));
    results.push((7, "bound value ceiling", criterion_7()));
    results.push((8, "cut test equivalences", criterion_8()));
    results.push((9, "matching counts against permanents", criterion_9()));
    results.push((10, "separating cut that is not tight", criterion_10()));
    results.push((11, "S-cut identity and neighborhood corollary", criterion_11(&census)));
    results.push((12, "planarity against Kuratowski search", criterion_12()));

    let mut failures = 0;
    for (id, name, o) in &results {
        let tag = if o.pass { "PASS" } else { "FAIL" };
        failures += usize::from(!o.pass);
        println!("criterion {id:>2} [{tag}] {name}: {}", o.detail);
    }
    println!(
        "acceptance: {} passed, {failures} failed in {:?}",
        results.len() - failures,
        start.elapsed()
    );
    if failures > 0 {
        std::process::exit(1);
    }
}

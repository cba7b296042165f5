//! Graphviz export. Node attributes carry the part, the degree and, for cut
//! listings, the indices of the listed shores that contain the vertex.

use braces::brace::EdgeThinness;
use braces::{BipartiteGraph, Graph, Shore};

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

fn header(g: &BipartiteGraph, out: &mut String) {
    out.push_str(&format!("graph {} {{\n", quote(g.name().unwrap_or("G"))));
    out.push_str("  node [shape=circle];\n");
}

fn node_line(g: &BipartiteGraph, v: usize, extra: &str) -> String {
    let part = if g.in_part_a(v) { "a" } else { "b" };
    let fill = if g.in_part_a(v) { "white" } else { "gray80" };
    format!(
        "  {} [part={part}, degree={}, style=filled, fillcolor={fill}{extra}];\n",
        quote(g.vertex_id(v)),
        g.degree(v)
    )
}

/// The graph, with `thin` edge attributes when a classification is given.
pub fn graph_dot(g: &BipartiteGraph, thinness: Option<&[EdgeThinness]>) -> String {
    let mut out = String::new();
    header(g, &mut out);
    for v in 0..g.order() {
        out.push_str(&node_line(g, v, ""));
    }
    for (e, &(u, v)) in g.edge_list().iter().enumerate() {
        let attrs = match thinness.and_then(|t| t.iter().find(|x| x.edge == e)) {
            Some(t) if t.thin => " [thin=true]".to_string(),
            Some(t) => format!(" [thin=false, style=dashed, s_cuts={}]", t.s_cuts.len()),
            None => String::new(),
        };
        out.push_str(&format!("  {} -- {}{attrs};\n", quote(g.vertex_id(u)), quote(g.vertex_id(v))));
    }
    out.push_str("}\n");
    out
}

/// The graph with each vertex tagged by the listed shores containing it; a
/// single shore is also drawn as a cluster.
pub fn cuts_dot(g: &BipartiteGraph, shores: &[Shore]) -> String {
    let mut out = String::new();
    header(g, &mut out);
    for (k, x) in shores.iter().enumerate() {
        out.push_str(&format!("  // shore {k}: {{{}}}\n", g.vertex_ids(x.members()).join(", ")));
    }
    for v in 0..g.order() {
        let inside: Vec<String> = shores
            .iter()
            .enumerate()
            .filter(|(_, x)| x.contains(v))
            .map(|(k, _)| k.to_string())
            .collect();
        out.push_str(&node_line(g, v, &format!(", shores={}", quote(&inside.join(" ")))));
    }
    if let [x] = shores {
        out.push_str("  subgraph cluster_shore {\n    label=\"X\";\n");
        for v in x.members().iter() {
            out.push_str(&format!("    {};\n", quote(g.vertex_id(v))));
        }
        out.push_str("  }\n");
    }
    for &(u, v) in g.edge_list() {
        let crossing = shores.len() == 1 && shores[0].contains(u) != shores[0].contains(v);
        let attrs = if crossing { " [cut=true, color=red]" } else { "" };
        out.push_str(&format!("  {} -- {}{attrs};\n", quote(g.vertex_id(u)), quote(g.vertex_id(v))));
    }
    out.push_str("}\n");
    out
}

//! BGF text files and the equivalent JSON graph document.
//!
//! ```text
//! c any comment
//! p bgf <a> <b> <m>
//! e <i> <j>        (m lines, 0 <= i < a, 0 <= j < b)
//! ```
//!
//! The writer adds `c name <name>` and `c ids a|b <id>...` comments when the
//! graph carries a name or non-default vertex ids; the reader honours them so
//! that a written graph reads back identically.

use braces::{BipartiteGraph, Error, Result};
use serde::{Deserialize, Serialize};

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn number(token: &str, what: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("{what} `{token}` is not a non-negative integer")))
}

struct Header {
    a: usize,
    b: usize,
    m: usize,
}

enum IdPart {
    A,
    B,
}

pub fn parse_bgf(text: &str) -> Result<BipartiteGraph> {
    let mut header: Option<Header> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut edge_lines: Vec<(usize, usize, usize)> = Vec::new();
    let mut name = None;
    let mut ids: Vec<(IdPart, Vec<String>, usize)> = Vec::new();
    let mut last_line = 0;

    for (index, raw) in text.split('\n').enumerate() {
        let line = index + 1;
        if raw.ends_with('\r') {
            return Err(parse_error(line, "CR line ending; BGF uses LF"));
        }
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some(&kind) = tokens.first() else {
            continue;
        };
        last_line = line;
        match kind {
            "c" => match tokens.get(1..) {
                Some(["name", rest @ ..]) if !rest.is_empty() => name = Some(rest.join(" ")),
                Some(["ids", "a", rest @ ..]) => ids.push((IdPart::A, rest.iter().map(|s| s.to_string()).collect(), line)),
                Some(["ids", "b", rest @ ..]) => ids.push((IdPart::B, rest.iter().map(|s| s.to_string()).collect(), line)),
                _ => {}
            },
            "p" => {
                if header.is_some() {
                    return Err(parse_error(line, "second header line"));
                }
                if tokens.len() != 5 || tokens[1] != "bgf" {
                    return Err(parse_error(line, "header must read `p bgf <a> <b> <m>`"));
                }
                let a = number(tokens[2], "part size", line)?;
                let b = number(tokens[3], "part size", line)?;
                let m = number(tokens[4], "edge count", line)?;
                Error::check_cap("graph order", a.saturating_add(b), braces::graph::MAX_VERTICES)?;
                if m > a * b {
                    return Err(parse_error(line, format!("{m} edges cannot fit between parts of sizes {a} and {b}")));
                }
                header = Some(Header { a, b, m });
            }
            "e" => {
                let Some(h) = &header else {
                    return Err(parse_error(line, "edge line before the header"));
                };
                if tokens.len() != 3 {
                    return Err(parse_error(line, "edge line must read `e <i> <j>`"));
                }
                let i = number(tokens[1], "endpoint", line)?;
                let j = number(tokens[2], "endpoint", line)?;
                if i >= h.a {
                    return Err(parse_error(line, format!("endpoint {i} out of range for part a of size {}", h.a)));
                }
                if j >= h.b {
                    return Err(parse_error(line, format!("endpoint {j} out of range for part b of size {}", h.b)));
                }
                if let Some(&(_, _, first)) = edge_lines.iter().find(|&&(x, y, _)| (x, y) == (i, j)) {
                    return Err(parse_error(line, format!("duplicate edge {i} {j}, first given on line {first}")));
                }
                if edges.len() == h.m {
                    return Err(parse_error(line, format!("more than the {} edges declared in the header", h.m)));
                }
                edges.push((i, j));
                edge_lines.push((i, j, line));
            }
            other => return Err(parse_error(line, format!("unknown line type `{other}`"))),
        }
    }

    let Some(h) = header else {
        return Err(parse_error(last_line.max(1), "missing `p bgf` header"));
    };
    if edges.len() != h.m {
        return Err(parse_error(
            last_line + 1,
            format!("header declares {} edges, found {}", h.m, edges.len()),
        ));
    }
    let mut a_ids: Vec<String> = (0..h.a).map(|i| format!("a{i}")).collect();
    let mut b_ids: Vec<String> = (0..h.b).map(|j| format!("b{j}")).collect();
    for (part, list, line) in ids {
        let target = match part {
            IdPart::A => &mut a_ids,
            IdPart::B => &mut b_ids,
        };
        if list.len() != target.len() {
            return Err(parse_error(
                line,
                format!("{} vertex ids given for a part of size {}", list.len(), target.len()),
            ));
        }
        *target = list;
    }
    let g = BipartiteGraph::new(a_ids, b_ids, edges)?;
    Ok(match name {
        Some(name) => g.with_name(name),
        None => g,
    })
}

fn default_ids(prefix: char, ids: &[String]) -> bool {
    ids.iter().enumerate().all(|(i, id)| *id == format!("{prefix}{i}"))
}

pub fn write_bgf(g: &BipartiteGraph) -> String {
    let (a, b) = g.part_sizes();
    let mut out = String::new();
    if let Some(name) = g.name() {
        out.push_str(&format!("c name {name}\n"));
    }
    if !default_ids('a', g.part_a_ids()) || !default_ids('b', g.part_b_ids()) {
        out.push_str(&format!("c ids a {}\n", g.part_a_ids().join(" ")));
        out.push_str(&format!("c ids b {}\n", g.part_b_ids().join(" ")));
    }
    out.push_str(&format!("p bgf {a} {b} {}\n", g.edges().len()));
    for &(i, j) in g.edges() {
        out.push_str(&format!("e {i} {j}\n"));
    }
    out
}

/// JSON form of a graph file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub a: usize,
    pub b: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_ids: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_ids: Option<Vec<String>>,
    pub edges: Vec<[usize; 2]>,
}

impl GraphDocument {
    pub fn from_graph(g: &BipartiteGraph) -> Self {
        let (a, b) = g.part_sizes();
        let custom = !default_ids('a', g.part_a_ids()) || !default_ids('b', g.part_b_ids());
        GraphDocument {
            name: g.name().map(str::to_owned),
            a,
            b,
            a_ids: custom.then(|| g.part_a_ids().to_vec()),
            b_ids: custom.then(|| g.part_b_ids().to_vec()),
            edges: g.edges().iter().map(|&(i, j)| [i, j]).collect(),
        }
    }

    pub fn to_graph(&self) -> Result<BipartiteGraph> {
        Error::check_cap("graph order", self.a.saturating_add(self.b), braces::graph::MAX_VERTICES)?;
        let a_ids = self.a_ids.clone().unwrap_or_else(|| (0..self.a).map(|i| format!("a{i}")).collect());
        let b_ids = self.b_ids.clone().unwrap_or_else(|| (0..self.b).map(|j| format!("b{j}")).collect());
        if a_ids.len() != self.a || b_ids.len() != self.b {
            return Err(Error::Input("vertex id lists do not match the part sizes".into()));
        }
        let g = BipartiteGraph::new(a_ids, b_ids, self.edges.iter().map(|e| (e[0], e[1])).collect())?;
        Ok(match &self.name {
            Some(name) => g.with_name(name.clone()),
            None => g,
        })
    }
}

pub fn parse_graph_json(text: &str) -> Result<BipartiteGraph> {
    let doc: GraphDocument = serde_json::from_str(text).map_err(|e| parse_error(e.line(), e.to_string()))?;
    doc.to_graph()
}

pub fn write_graph_json(g: &BipartiteGraph) -> String {
    serde_json::to_string_pretty(&GraphDocument::from_graph(g)).expect("graph documents serialise") + "\n"
}

/// Reads either form, choosing JSON when the first non-blank character is `{`.
pub fn parse_graph(text: &str) -> Result<BipartiteGraph> {
    if text.trim_start().starts_with('{') {
        parse_graph_json(text)
    } else {
        parse_bgf(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use braces::generate::named_graph;
    use braces::Graph;

    fn line_of(r: Result<BipartiteGraph>) -> usize {
        match r {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn c4_and_k33() {
        let c4 = parse_bgf("p bgf 2 2 4\ne 0 0\ne 0 1\ne 1 0\ne 1 1\n").unwrap();
        assert_eq!((c4.order(), c4.size()), (4, 4));
        let mut text = String::from("c complete\np bgf 3 3 9\n");
        for i in 0..3 {
            for j in 0..3 {
                text.push_str(&format!("e {i} {j}\n"));
            }
        }
        let k33 = parse_bgf(&text).unwrap();
        assert_eq!(k33.size(), 9);
        assert!(k33.edges().iter().all(|&(i, j)| i < 3 && j < 3));
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of(parse_bgf("p bgf 4 4 1\ne 0 5\n")), 2);
        assert_eq!(line_of(parse_bgf("p bgf 2 2 2\ne 0 0\ne 0 0\n")), 3);
        assert_eq!(line_of(parse_bgf("c x\np bgf 2\n")), 2);
        assert_eq!(line_of(parse_bgf("e 0 0\n")), 1);
        assert_eq!(line_of(parse_bgf("p bgf 2 2 3\ne 0 0\ne 1 1\n")), 4);
        assert_eq!(line_of(parse_bgf("p bgf 2 2 1\ne 0 0\ne 1 1\n")), 3);
        assert_eq!(line_of(parse_bgf("p bgf 2 2 1\r\ne 0 0\n")), 1);
        assert_eq!(line_of(parse_bgf("p bgf 1 1 1\nx 0 0\n")), 2);
        assert_eq!(line_of(parse_bgf("p bgf 2 2 1\ne 0 -1\n")), 2);
    }

    #[test]
    fn oversized_header_is_a_resource_error() {
        assert!(matches!(parse_bgf("p bgf 40 40 0\n"), Err(Error::Resource { .. })));
    }

    #[test]
    fn named_graphs_round_trip() {
        for name in ["q3", "heawood", "k3,3", "c8", "path4"] {
            let g = named_graph(name).unwrap();
            assert_eq!(parse_bgf(&write_bgf(&g)).unwrap(), g, "{name}");
            assert_eq!(parse_graph_json(&write_graph_json(&g)).unwrap(), g, "{name}");
            assert_eq!(parse_graph(&write_graph_json(&g)).unwrap(), g);
        }
    }

    #[test]
    fn json_rejects_unknown_fields() {
        assert!(parse_graph_json(r#"{"a":1,"b":1,"edges":[[0,0]],"extra":1}"#).is_err());
        assert!(parse_graph_json(r#"{"a":1,"b":1,"edges":[[0,1]]}"#).is_err());
    }
}

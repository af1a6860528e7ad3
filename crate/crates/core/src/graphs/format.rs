//! Line-based text format and DOT export.
//!
//! ```text
//! graph <name> simple|multi
//! v <label>
//! e <label> <label>
//! ```
//!
//! Repeated `e` lines are parallel edges and `e x x` is a self-loop; both are
//! rejected for `simple` graphs. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;

use super::{GraphError, LabeledGraph, MultiGraph, MultiGraphBuilder, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphText {
    Simple { name: String, graph: LabeledGraph },
    Multi { name: String, graph: MultiGraph },
}

fn parse_err(line: usize, msg: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        msg: msg.into(),
    }
}

pub fn parse_text(src: &str) -> Result<GraphText, GraphError> {
    let mut header: Option<(String, bool)> = None;
    let mut vertices: Vec<VertexId> = Vec::new();
    let mut edges: Vec<(VertexId, VertexId)> = Vec::new();

    for (no, raw) in src.lines().enumerate() {
        let line_no = no + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match toks.as_slice() {
            ["graph", name, kind] => {
                if header.is_some() {
                    return Err(parse_err(line_no, "second header"));
                }
                let simple = match *kind {
                    "simple" => true,
                    "multi" => false,
                    other => return Err(parse_err(line_no, format!("unknown kind `{other}`"))),
                };
                header = Some((name.to_string(), simple));
            }
            _ if header.is_none() => {
                return Err(parse_err(line_no, "expected `graph <name> simple|multi`"))
            }
            ["v", label] => vertices.push(VertexId::from(*label)),
            ["e", a, b] => edges.push((VertexId::from(*a), VertexId::from(*b))),
            _ => return Err(parse_err(line_no, format!("cannot parse `{line}`"))),
        }
    }

    let (name, simple) = header.ok_or_else(|| parse_err(0, "missing header"))?;
    if simple {
        let mut all = vertices;
        for (a, b) in &edges {
            for v in [a, b] {
                if !all.contains(v) {
                    all.push(v.clone());
                }
            }
        }
        let graph = LabeledGraph::new(all, edges)?;
        Ok(GraphText::Simple { name, graph })
    } else {
        let mut b = MultiGraphBuilder::new();
        for v in vertices {
            if b.has_vertex(&v) {
                return Err(GraphError::DuplicateVertex(v));
            }
            b.vertex(v);
        }
        for (x, y) in edges {
            b.edge(x, y);
        }
        Ok(GraphText::Multi {
            name,
            graph: b.build(),
        })
    }
}

impl LabeledGraph {
    pub fn to_text(&self, name: &str) -> String {
        let mut out = format!("graph {name} simple\n");
        for v in self.vertices() {
            let _ = writeln!(out, "v {v}");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(out, "e {a} {b}");
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{}\" {{\n", escape(name));
        for v in self.vertices() {
            let _ = writeln!(out, "  \"{}\";", escape(v.as_str()));
        }
        for (a, b) in self.edges() {
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\";",
                escape(a.as_str()),
                escape(b.as_str())
            );
        }
        out.push_str("}\n");
        out
    }
}

impl MultiGraph {
    pub fn to_text(&self, name: &str) -> String {
        let mut out = format!("graph {name} multi\n");
        for v in self.vertices() {
            let _ = writeln!(out, "v {v}");
        }
        for e in self.edge_ids() {
            let (a, b) = self.endpoints(e).expect("own edge");
            let _ = writeln!(out, "e {a} {b}");
        }
        out
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("graph \"{}\" {{\n", escape(name));
        for v in self.vertices() {
            let _ = writeln!(out, "  \"{}\";", escape(v.as_str()));
        }
        for e in self.edge_ids() {
            let (a, b) = self.endpoints(e).expect("own edge");
            let _ = writeln!(
                out,
                "  \"{}\" -- \"{}\" [label=\"{e}\"];",
                escape(a.as_str()),
                escape(b.as_str())
            );
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

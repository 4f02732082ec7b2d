//! Text formats: graph files, ordering lines, rotation-system files, and
//! face listings. All are line-oriented UTF-8 with `#` comments.

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::ordering::EdgeOrdering;
use crate::rotation::{FaceTrace, RotationSystem};

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Tokens of one line with their 1-based starting columns; `#` starts a comment.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        let end = line.find('#').unwrap_or(line.len());
        out.push((s + 1, line[s..end].trim_end()));
    }
    out
}

/// Parses the graph format:
///
/// ```text
/// vertex <label>
/// edge <edge-label> <vertex-label> <vertex-label>
/// ```
///
/// Vertex directives are optional when the vertex appears in an edge.
pub fn parse_graph(text: &str) -> Result<Multigraph> {
    let mut vertices: Vec<String> = Vec::new();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let (col0, directive) = toks[0];
        match directive {
            "vertex" => {
                if toks.len() != 2 {
                    return Err(parse_err(lineno, col0, "expected: vertex <label>"));
                }
                vertices.push(toks[1].1.to_string());
            }
            "edge" => {
                if toks.len() != 4 {
                    return Err(parse_err(
                        lineno,
                        col0,
                        "expected: edge <label> <vertex> <vertex>",
                    ));
                }
                edges.push((
                    toks[1].1.to_string(),
                    toks[2].1.to_string(),
                    toks[3].1.to_string(),
                ));
            }
            other => {
                return Err(parse_err(
                    lineno,
                    col0,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
    }
    Multigraph::with_implied_vertices(vertices, edges)
}

/// Emits a graph in the format `parse_graph` reads; all vertices are written
/// explicitly so the declaration order survives a round trip.
pub fn write_graph(g: &Multigraph) -> String {
    let mut out = String::new();
    for v in g.vertex_labels() {
        out.push_str("vertex ");
        out.push_str(v);
        out.push('\n');
    }
    for e in 0..g.edge_count() {
        let (u, v) = g.endpoints(e);
        out.push_str("edge ");
        out.push_str(g.edge_label(e));
        out.push(' ');
        out.push_str(g.vertex_label(u));
        out.push(' ');
        out.push_str(g.vertex_label(v));
        out.push('\n');
    }
    out
}

/// Parses an ordering file: exactly one `order <e> <e> ...` line.
pub fn parse_ordering(text: &str) -> Result<EdgeOrdering> {
    let mut found: Option<EdgeOrdering> = None;
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let (col0, directive) = toks[0];
        if directive != "order" {
            return Err(parse_err(
                lineno,
                col0,
                format!("unknown directive `{directive}`, expected `order`"),
            ));
        }
        if found.is_some() {
            return Err(parse_err(lineno, col0, "more than one `order` line"));
        }
        found = Some(EdgeOrdering::new(
            toks[1..].iter().map(|&(_, t)| t.to_string()).collect(),
        ));
    }
    found.ok_or_else(|| parse_err(1, 1, "missing `order` line"))
}

pub fn write_ordering(ordering: &EdgeOrdering) -> String {
    format!("{}\n", ordering_line(ordering))
}

/// The `order ...` line without trailing newline.
pub fn ordering_line(ordering: &EdgeOrdering) -> String {
    let mut s = String::from("order");
    for e in ordering.labels() {
        s.push(' ');
        s.push_str(e);
    }
    s
}

/// Parses a rotation-system file: one `rot <vertex>: <e> <e> ...` line per
/// vertex of `g` (any cyclic cut accepted).
pub fn parse_rotation(text: &str, g: &Multigraph) -> Result<RotationSystem> {
    let mut orders: Vec<(String, Vec<String>)> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        let (col0, directive) = toks[0];
        if directive != "rot" {
            return Err(parse_err(
                lineno,
                col0,
                format!("unknown directive `{directive}`, expected `rot`"),
            ));
        }
        if toks.len() < 2 {
            return Err(parse_err(lineno, col0, "expected: rot <vertex>: <e> ..."));
        }
        let (vcol, vtok) = toks[1];
        let vertex = match vtok.strip_suffix(':') {
            Some(v) if !v.is_empty() => v.to_string(),
            _ => {
                return Err(parse_err(lineno, vcol, "vertex must be followed by `:`"));
            }
        };
        orders.push((
            vertex,
            toks[2..].iter().map(|&(_, t)| t.to_string()).collect(),
        ));
    }
    RotationSystem::from_label_orders(g, orders)
}

pub fn write_rotation(g: &Multigraph, rho: &RotationSystem) -> String {
    let mut out = String::new();
    for line in rotation_lines(g, rho) {
        out.push_str(&line);
        out.push('\n');
    }
    out
}

/// One `rot <vertex>: ...` line per vertex, canonical cut.
pub fn rotation_lines(g: &Multigraph, rho: &RotationSystem) -> Vec<String> {
    (0..g.vertex_count())
        .map(|v| {
            let mut s = format!("rot {}:", g.vertex_label(v));
            for &e in rho.rotation(v) {
                s.push(' ');
                s.push_str(g.edge_label(e));
            }
            s
        })
        .collect()
}

/// One `face <k>: (e,u,v) ...` line per face, `k` counting from 1.
pub fn face_lines(g: &Multigraph, trace: &FaceTrace) -> Vec<String> {
    (0..trace.face_count())
        .map(|k| {
            let mut s = format!("face {}:", k + 1);
            for d in trace.face_darts(g, k) {
                s.push(' ');
                s.push_str(&d.to_string());
            }
            s
        })
        .collect()
}

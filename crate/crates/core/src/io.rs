//! Edge-list text files and hopset sidecars.
//!
//! Format: the first non-comment line is `n m`, followed by `m` lines
//! `u v [w]` (a missing weight means 1). Lines starting with `#` and blank
//! lines are ignored. Vertex ids are 0-based decimals.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::edge_set::EdgeSet;
use crate::error::ParseError;
use crate::graph::{Edge, Graph};

/// Parsed contents of an edge-list file, before any normalization.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeList {
    pub n: usize,
    pub edges: Vec<Edge>,
}

pub fn parse_edge_list<R: BufRead>(reader: R) -> Result<EdgeList, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let syntax = |message: String| ParseError::Syntax { line: line_no, message };
        match header {
            None => {
                if fields.len() != 2 {
                    return Err(syntax(format!("expected header \"n m\", got {text:?}")));
                }
                let n = fields[0].parse().map_err(|_| syntax(format!("bad vertex count {:?}", fields[0])))?;
                let m = fields[1].parse().map_err(|_| syntax(format!("bad edge count {:?}", fields[1])))?;
                header = Some((n, m));
            }
            Some((n, _)) => {
                if !(2..=3).contains(&fields.len()) {
                    return Err(syntax(format!("expected \"u v [w]\", got {text:?}")));
                }
                let id = |s: &str| -> Result<usize, ParseError> {
                    s.parse().map_err(|_| syntax(format!("bad vertex id {s:?}")))
                };
                let (u, v) = (id(fields[0])?, id(fields[1])?);
                let w = match fields.get(2) {
                    Some(s) => s.parse::<f64>().map_err(|_| syntax(format!("bad weight {s:?}")))?,
                    None => 1.0,
                };
                for x in [u, v] {
                    if x >= n {
                        return Err(ParseError::Graph {
                            line: line_no,
                            source: crate::error::GraphError::VertexOutOfRange { vertex: x, n },
                        });
                    }
                }
                if !(w >= 0.0) || !w.is_finite() {
                    return Err(ParseError::Graph {
                        line: line_no,
                        source: crate::error::GraphError::InvalidWeight {
                            tail: u,
                            head: v,
                            weight: w,
                        },
                    });
                }
                edges.push(Edge::new(u, v, w));
            }
        }
    }
    let (n, m) = header.ok_or(ParseError::Syntax {
        line: 0,
        message: "missing \"n m\" header".into(),
    })?;
    if edges.len() != m {
        return Err(ParseError::EdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    Ok(EdgeList { n, edges })
}

/// Reads a graph and normalizes it so the lightest nonzero weight is at
/// least 1 (see [`Graph::normalized`]).
pub fn load_graph(path: impl AsRef<Path>) -> Result<Graph, ParseError> {
    let list = parse_edge_list(BufReader::new(File::open(path)?))?;
    let g = Graph::from_edges(list.n, list.edges).map_err(|source| ParseError::Graph { line: 0, source })?;
    Ok(g.normalized())
}

/// Reads an edge-list file as an [`EdgeSet`] without rescaling weights.
pub fn load_edge_set(path: impl AsRef<Path>) -> Result<(usize, EdgeSet), ParseError> {
    let list = parse_edge_list(BufReader::new(File::open(path)?))?;
    Ok((list.n, list.edges.into_iter().collect()))
}

pub fn write_edge_list<W: Write>(mut w: W, n: usize, edges: impl ExactSizeIterator<Item = Edge>) -> std::io::Result<()> {
    writeln!(w, "{} {}", n, edges.len())?;
    for e in edges {
        writeln!(w, "{} {} {}", e.source, e.target, e.weight)?;
    }
    w.flush()
}

pub fn save_graph(path: impl AsRef<Path>, g: &Graph) -> std::io::Result<()> {
    let edges: Vec<Edge> = g.edges().collect();
    write_edge_list(BufWriter::new(File::create(path)?), g.vertex_count(), edges.into_iter())
}

pub fn save_edge_set(path: impl AsRef<Path>, n: usize, h: &EdgeSet) -> std::io::Result<()> {
    let edges: Vec<Edge> = h.iter().collect();
    write_edge_list(BufWriter::new(File::create(path)?), n, edges.into_iter())
}

/// JSON written next to a hopset file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HopsetSidecar {
    pub n: usize,
    pub algorithm: String,
    pub params: serde_json::Value,
    pub seed: u64,
    pub scale_range: (i64, i64),
    pub edge_count: usize,
    /// Factor by which input weights were multiplied during normalization.
    pub weight_scale: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub beta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sweeps: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub scales: Option<usize>,
}

//! graph6 and JSON edge-list encodings.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{EdgeColor, Graph, GraphBuilder, GraphError};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn g6_err(msg: impl Into<String>) -> ParseError {
    ParseError::Graph6(msg.into())
}

fn push_size(out: &mut Vec<u8>, n: usize) {
    if n < 63 {
        out.push(n as u8 + 63);
    } else if n < 258_048 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes the underlying simple graph; edge colours are not representable.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    push_size(&mut out, n);
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = (acc << 1) | g.has_edge(u, v) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

pub fn from_graph6(line: &str) -> Result<Graph, ParseError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(g6_err(format!("invalid byte {:#04x} at offset {pos}", bytes[pos])));
    }
    let digits = |s: &[u8]| s.iter().fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
    let (n, body) = match bytes {
        [] => return Err(g6_err("empty input")),
        [126, 126, rest @ ..] if rest.len() >= 6 => (digits(&rest[..6]), &rest[6..]),
        [126, 126, ..] => return Err(g6_err("truncated size field")),
        [126, rest @ ..] if rest.len() >= 3 => (digits(&rest[..3]), &rest[3..]),
        [126, ..] => return Err(g6_err("truncated size field")),
        [b, rest @ ..] => ((b - 63) as usize, rest),
    };
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(g6_err(format!(
            "expected {expected} adjacency bytes for n={n}, found {}",
            body.len()
        )));
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    let mut b = GraphBuilder::new(n);
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(k) {
                b.add_edge(u, v)?;
            }
            k += 1;
        }
    }
    Ok(b.build())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeListJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub red_edges: Vec<[usize; 2]>,
}

impl EdgeListJson {
    /// `edges` lists every edge; `red_edges` marks the red subset. Red
    /// edges missing from `edges` are accepted as additional edges.
    pub fn to_graph(&self) -> Result<Graph, GraphError> {
        let mut b = GraphBuilder::new(self.n);
        let red: std::collections::BTreeSet<(usize, usize)> =
            self.red_edges.iter().map(|&[u, v]| (u.min(v), u.max(v))).collect();
        for &[u, v] in &self.edges {
            let color = if red.contains(&(u.min(v), u.max(v))) {
                EdgeColor::Red
            } else {
                EdgeColor::Black
            };
            b.add_colored_edge(u, v, color)?;
        }
        for &(u, v) in &red {
            if !b.has_edge(u, v) {
                b.add_colored_edge(u, v, EdgeColor::Red)?;
            }
        }
        Ok(b.build())
    }

    pub fn from_graph(g: &Graph) -> Self {
        EdgeListJson {
            n: g.n(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
            red_edges: g.red_edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

pub fn to_json(g: &Graph) -> String {
    serde_json::to_string(&EdgeListJson::from_graph(g)).expect("edge list serializes")
}

pub fn from_json(text: &str) -> Result<Graph, ParseError> {
    let parsed: EdgeListJson = serde_json::from_str(text)?;
    Ok(parsed.to_graph()?)
}

/// Accepts either a JSON edge list or a single graph6 line.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        from_json(trimmed)
    } else {
        let mut lines = trimmed.lines().filter(|l| !l.trim().is_empty());
        let first = lines.next().ok_or_else(|| g6_err("empty input"))?;
        if lines.next().is_some() {
            return Err(g6_err("expected a single graph6 line"));
        }
        from_graph6(first.trim())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_petersen, gen_random_graph};

    #[test]
    fn known_encodings() {
        // reference strings as produced by nauty's geng/showg
        assert_eq!(to_graph6(&gen_petersen()), "IheA@GUAo");
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(to_graph6(&k4), "C~");
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        assert_eq!(to_graph6(&Graph::empty(1)), "@");
        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(to_graph6(&p3), "Bg");
    }

    #[test]
    fn long_size_prefix() {
        let g = Graph::from_edges(70, &[(0, 69), (3, 4)]).unwrap();
        let s = to_graph6(&g);
        assert!(s.starts_with("~?@E"));
        assert_eq!(from_graph6(&s).unwrap(), g);
    }

    #[test]
    fn header_and_errors() {
        assert_eq!(from_graph6(">>graph6<<C~").unwrap().m(), 6);
        assert!(from_graph6("C").is_err());
        assert!(from_graph6("C~~").is_err());
        assert!(from_graph6("C\u{7f}").is_err());
        assert!(from_graph6("").is_err());
    }

    #[test]
    fn round_trips() {
        for seed in 0..50 {
            let g = gen_random_graph(1 + (seed as usize % 20), 0.3, seed);
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
            assert_eq!(from_json(&to_json(&g)).unwrap(), g);
        }
    }

    #[test]
    fn json_red_edges() {
        let g = from_json(r#"{"n":3,"edges":[[0,1],[1,2]],"red_edges":[[2,1]]}"#).unwrap();
        assert_eq!(g.edge_color(1, 2), Some(EdgeColor::Red));
        assert_eq!(g.edge_color(0, 1), Some(EdgeColor::Black));
        assert_eq!(from_json(&to_json(&g)).unwrap(), g);
        assert!(from_json(r#"{"n":2,"edges":[[0,2]]}"#).is_err());
    }
}

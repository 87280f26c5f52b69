//! Graph file formats: a plain edge-list text format and graph6.
//!
//! The text format is a header line `n <count>` followed by one `u v` pair
//! per line, with 0-based vertices. Blank lines and everything after `#` are
//! ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Text { line: usize, message: String },
    #[error("missing `n <count>` header")]
    MissingHeader,
    #[error("graph6: {0}")]
    Graph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Parses the edge-list text format.
pub fn parse_graph(text: &str) -> Result<Graph, ParseError> {
    let mut n = None;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| ParseError::Text { line: i + 1, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 2 || fields[0] != "n" {
                    return Err(err(format!("expected `n <count>`, found `{line}`")));
                }
                n = Some(fields[1].parse::<usize>().map_err(|e| err(format!("bad vertex count: {e}")))?);
            }
            Some(_) => {
                if fields.len() != 2 {
                    return Err(err(format!("expected `u v`, found `{line}`")));
                }
                let parse = |s: &str| s.parse::<usize>().map_err(|e| err(format!("bad vertex `{s}`: {e}")));
                edges.push((parse(fields[0])?, parse(fields[1])?));
            }
        }
    }
    let n = n.ok_or(ParseError::MissingHeader)?;
    Ok(Graph::from_edges(n, edges)?)
}

/// Renders `g` in the edge-list text format.
pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("writing to a string");
    }
    out
}

/// Parses one graph6 line (graphs up to 62 vertices use the short header).
pub fn parse_graph6(line: &str) -> Result<Graph, ParseError> {
    let bytes = line.trim_end().as_bytes();
    let bad = |m: &str| ParseError::Graph6(m.to_string());
    let (n, body) = match bytes.first() {
        None => return Err(bad("empty line")),
        Some(&126) => {
            if bytes.len() < 4 || bytes[1] == 126 {
                return Err(bad("only graphs below 258048 vertices are supported"));
            }
            let mut n = 0usize;
            for &b in &bytes[1..4] {
                n = n << 6 | sextet(b)?;
            }
            (n, &bytes[4..])
        }
        Some(&b) => (sextet(b)?, &bytes[1..]),
    };
    let pairs = n * n.saturating_sub(1) / 2;
    if body.len() != pairs.div_ceil(6) {
        return Err(bad("body length does not match the vertex count"));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            let word = sextet(body[k / 6])?;
            if word >> (5 - k % 6) & 1 == 1 {
                edges.push((u, v));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges)?)
}

fn sextet(b: u8) -> Result<usize, ParseError> {
    if (63..=126).contains(&b) {
        Ok((b - 63) as usize)
    } else {
        Err(ParseError::Graph6(format!("byte {b} outside the printable range")))
    }
}

/// graph6 encoding of `g`.
pub fn format_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n < 63 {
        out.push(n as u8 + 63);
    } else {
        assert!(n < 258048, "graph6 long form beyond 258047 vertices is not supported");
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut word = 0u8;
    let mut k = 0;
    for v in 1..n {
        for u in 0..v {
            word = word << 1 | g.has_edge(u, v) as u8;
            k += 1;
            if k % 6 == 0 {
                out.push(word + 63);
                word = 0;
            }
        }
    }
    if k % 6 != 0 {
        out.push((word << (6 - k % 6)) + 63);
    }
    String::from_utf8(out).expect("printable ASCII")
}

/// Parses a file of graph6 lines, skipping blank lines.
pub fn parse_graph6_lines(text: &str) -> Result<Vec<Graph>, ParseError> {
    text.lines().filter(|l| !l.trim().is_empty()).map(parse_graph6).collect()
}

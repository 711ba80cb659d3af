//! Text formats: graph6, edge lists and permutation generator files.

use crate::error::ParseError;
use crate::graph::Graph;
use crate::permgrp::Perm;

const HEADER: &str = ">>graph6<<";

fn encode_n(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
}

/// graph6 encoding, without header or trailing newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    encode_n(n, &mut out);
    let mut acc = 0u8;
    let mut bits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.adjacent(i, j) as u8;
            bits += 1;
            if bits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                bits = 0;
            }
        }
    }
    if bits > 0 {
        out.push(((acc << (6 - bits)) + 63) as char);
    }
    out
}

/// Parses one graph6 line; an optional `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let line_no = text.lines().position(|l| !l.trim().is_empty()).map_or(1, |i| i + 1);
    let mut s = text.trim();
    let mut col0 = 1 + text.len() - text.trim_start().len();
    if let Some(rest) = s.strip_prefix(HEADER) {
        s = rest;
        col0 += HEADER.len();
    }
    if s.contains('\n') {
        return Err(ParseError::new(line_no, col0, "expected a single graph6 line"));
    }
    let bytes = s.as_bytes();
    let err = |i: usize, msg: &str| ParseError::new(line_no, col0 + i, msg);
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(i, &format!("byte {b:#04x} is outside the graph6 range 63..=126")));
        }
    }
    let val = |i: usize| -> Result<usize, ParseError> {
        bytes.get(i).map(|&b| (b - 63) as usize).ok_or_else(|| err(i, "input ends inside the vertex count"))
    };
    let (n, pos) = if bytes.first() != Some(&126) {
        (val(0)?, 1)
    } else if bytes.get(1) != Some(&126) {
        ((1..4).try_fold(0, |acc, i| Ok::<_, ParseError>(acc << 6 | val(i)?))?, 4)
    } else {
        ((2..8).try_fold(0, |acc, i| Ok::<_, ParseError>(acc << 6 | val(i)?))?, 8)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let expected = nbits.div_ceil(6);
    if bytes.len() - pos != expected {
        return Err(err(pos, &format!("expected {expected} data bytes for {n} vertices, found {}", bytes.len() - pos)));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = (bytes[pos + k / 6] - 63) as usize;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = (bytes[bytes.len() - 1] - 63) as usize;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(err(bytes.len() - 1, "padding bits must be zero"));
        }
    }
    Ok(Graph::from_edges(n, edges))
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// One `u v` pair per line, 0-based; `#` starts a comment. The vertex count
/// is one more than the largest endpoint, or `n` when given.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    parse_edge_list_with_order(text, None)
}

pub fn parse_edge_list_with_order(text: &str, n: Option<usize>) -> Result<Graph, ParseError> {
    let mut edges = Vec::new();
    let mut max = None;
    for (ln, line) in text.lines().enumerate() {
        let body = strip_comment(line);
        let mut fields = Vec::new();
        let mut col = 1;
        for tok in body.split_whitespace() {
            let start = body[col - 1..].find(tok).unwrap() + col;
            fields.push((start, tok));
            col = start + tok.len();
        }
        if fields.is_empty() {
            continue;
        }
        if fields.len() != 2 {
            return Err(ParseError::new(ln + 1, fields[0].0, format!("expected two vertices, found {} fields", fields.len())));
        }
        let mut ends = [0usize; 2];
        for (slot, &(c, tok)) in ends.iter_mut().zip(&fields) {
            *slot = tok.parse().map_err(|_| ParseError::new(ln + 1, c, format!("{tok:?} is not a vertex number")))?;
        }
        if ends[0] == ends[1] {
            return Err(ParseError::new(ln + 1, fields[0].0, "loops are not allowed"));
        }
        if let Some(n) = n {
            if let Some(&(c, _)) = fields.iter().zip(ends).find(|(_, e)| *e >= n).map(|(f, _)| f) {
                return Err(ParseError::new(ln + 1, c, format!("vertex outside 0..{n}")));
            }
        }
        max = max.max(Some(ends[0].max(ends[1])));
        edges.push((ends[0], ends[1]));
    }
    let order = n.unwrap_or(max.map_or(0, |m| m + 1));
    Ok(Graph::from_edges(order, edges))
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# vertices: {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// A parsed generator file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generators {
    pub degree: usize,
    pub perms: Vec<Perm>,
    /// `# key: value` comment lines, in file order.
    pub metadata: Vec<(String, String)>,
}

/// Line 1 `degree N`; every further non-comment line lists the `N` images
/// of one permutation.
pub fn parse_generators(text: &str) -> Result<Generators, ParseError> {
    let mut degree = None;
    let mut perms = Vec::new();
    let mut metadata = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let ln = ln + 1;
        let trimmed = line.trim_start();
        if let Some(c) = trimmed.strip_prefix('#') {
            if let Some((k, v)) = c.split_once(':') {
                metadata.push((k.trim().to_string(), v.trim().to_string()));
            }
            continue;
        }
        let body = strip_comment(line);
        if body.trim().is_empty() {
            continue;
        }
        let Some(n) = degree else {
            let mut it = body.split_whitespace();
            let (kw, val) = (it.next(), it.next());
            if kw != Some("degree") || it.next().is_some() {
                return Err(ParseError::new(ln, 1, "first line must be \"degree N\""));
            }
            let n = val.and_then(|v| v.parse().ok()).ok_or_else(|| ParseError::new(ln, 8, "degree must be a non-negative integer"))?;
            degree = Some(n);
            continue;
        };
        let mut images = Vec::with_capacity(n);
        let mut col = 0;
        for tok in body.split_whitespace() {
            col = body[col..].find(tok).unwrap() + col;
            let x: usize = tok.parse().map_err(|_| ParseError::new(ln, col + 1, format!("{tok:?} is not a point")))?;
            images.push(x);
            col += tok.len();
        }
        if images.len() != n {
            return Err(ParseError::new(ln, 1, format!("expected {n} images, found {}", images.len())));
        }
        let p = Perm::from_images(images).map_err(|e| ParseError::new(ln, 1, e.to_string()))?;
        perms.push(p);
    }
    let degree = degree.ok_or_else(|| ParseError::new(1, 1, "missing \"degree N\" line"))?;
    Ok(Generators { degree, perms, metadata })
}

pub fn write_generators(degree: usize, perms: &[Perm], metadata: &[(String, String)]) -> String {
    let mut out = String::new();
    for (k, v) in metadata {
        out.push_str(&format!("# {k}: {v}\n"));
    }
    out.push_str(&format!("degree {degree}\n"));
    for p in perms {
        let line: Vec<String> = p.images().map(|x| x.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graph6_known_vector() {
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]);
        assert_eq!(write_graph6(&g), "DQc");
        assert_eq!(parse_graph6(">>graph6<<DQc\n").unwrap(), g);
        assert_eq!(write_graph6(&Graph::empty(0)), "?");
        assert_eq!(parse_graph6("?").unwrap().order(), 0);
    }

    #[test]
    fn graph6_large_order_prefix() {
        let g = Graph::from_edges(100, [(0, 99), (5, 6)]);
        let s = write_graph6(&g);
        assert!(s.starts_with("~?@c"));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn graph6_errors() {
        assert!(parse_graph6("D Qc").is_err());
        assert!(parse_graph6("DQ").is_err());
        assert!(parse_graph6("DQd").is_err());
    }

    #[test]
    fn edge_lists() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.order(), g.edges()), (3, vec![(0, 1), (1, 2)]));
        let g = parse_edge_list("# path\n0 1 # first\n\n1 2\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        let e = parse_edge_list("0 1\n1 x\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 3));
        assert!(parse_edge_list("3 3").is_err());
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn generator_files() {
        let text = "# name: C4\ndegree 4\n1 2 3 0\n3 2 1 0\n";
        let gens = parse_generators(text).unwrap();
        assert_eq!(gens.degree, 4);
        assert_eq!(gens.perms.len(), 2);
        assert_eq!(gens.metadata, vec![("name".to_string(), "C4".to_string())]);
        assert_eq!(parse_generators(&write_generators(4, &gens.perms, &gens.metadata)).unwrap(), gens);
        assert!(parse_generators("degree 3\n0 0 1\n").is_err());
        assert!(parse_generators("degree 3\n0 1\n").is_err());
        assert!(parse_generators("0 1 2\n").is_err());
    }
}

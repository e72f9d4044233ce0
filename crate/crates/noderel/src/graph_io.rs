//! Edge-list file format and graph6 export.
//!
//! Edge-list format: first data line `n m`, then m lines `u v` with
//! 0-indexed endpoints. `#` starts a comment; blank lines are skipped.

use crate::error::{Error, Result};
use crate::graph::Graph;
use std::path::Path;

/// Parses the edge-list text format.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i + 1, line))
        }
    });

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| Error::ParseFile {
            line: 1,
            msg: "missing `n m` header".into(),
        })?;
    let mut it = header.split_whitespace();
    let n: usize = parse_field(it.next(), header_line, "vertex count")?;
    let m: usize = parse_field(it.next(), header_line, "edge count")?;
    if it.next().is_some() {
        return Err(Error::ParseFile {
            line: header_line,
            msg: "header must be exactly `n m`".into(),
        });
    }

    let mut edges = Vec::with_capacity(m);
    let mut last_line = header_line;
    for _ in 0..m {
        let (line_no, line) = lines.next().ok_or_else(|| Error::ParseFile {
            line: last_line,
            msg: format!("expected {m} edge lines, found {}", edges.len()),
        })?;
        last_line = line_no;
        let mut it = line.split_whitespace();
        let u: usize = parse_field(it.next(), line_no, "edge endpoint")?;
        let v: usize = parse_field(it.next(), line_no, "edge endpoint")?;
        if it.next().is_some() {
            return Err(Error::ParseFile {
                line: line_no,
                msg: "edge line must be exactly `u v`".into(),
            });
        }
        edges.push((u, v));
    }
    if let Some((line_no, _)) = lines.next() {
        return Err(Error::ParseFile {
            line: line_no,
            msg: format!("unexpected data after {m} edges"),
        });
    }
    Graph::from_edge_list(n, &edges)
}

fn parse_field<T: std::str::FromStr>(
    field: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T> {
    let text = field.ok_or_else(|| Error::ParseFile {
        line,
        msg: format!("missing {what}"),
    })?;
    text.parse().map_err(|_| Error::ParseFile {
        line,
        msg: format!("invalid {what}: {text:?}"),
    })
}

/// Reads a graph from an edge-list file.
pub fn read_edge_list(path: &Path) -> Result<Graph> {
    parse_edge_list(&std::fs::read_to_string(path)?)
}

/// Renders a graph in the edge-list format.
pub fn edge_list_string(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.order(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

/// Standard graph6 encoding. Orders above 62 use the multi-byte order
/// prefix (`~` + 18 bits, or `~~` + 36 bits).
pub fn graph6_string(g: &Graph) -> String {
    let n = g.order();
    let mut bytes: Vec<u8> = Vec::new();
    if n <= 62 {
        bytes.push(63 + n as u8);
    } else if n <= 258_047 {
        bytes.push(126);
        for shift in [12, 6, 0] {
            bytes.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        bytes.push(126);
        bytes.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            bytes.push(63 + ((n >> shift) & 0x3f) as u8);
        }
    }
    // upper triangle, column by column: bit (i, j) for j = 1..n, i < j
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            nbits += 1;
            if nbits == 6 {
                bytes.push(63 + acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push(63 + (acc << (6 - nbits)));
    }
    String::from_utf8(bytes).expect("graph6 bytes are printable ascii")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic() {
        let g = parse_edge_list("3 2\n0 1\n1 2\n").unwrap();
        assert_eq!(g, Graph::path(3).unwrap());
    }

    #[test]
    fn parse_with_comments_and_blanks() {
        let text = "# a path\n\n5 4  # n m\n0 1\n1 2\n# middle\n2 3\n3 4\n";
        assert_eq!(parse_edge_list(text).unwrap(), Graph::path(5).unwrap());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match parse_edge_list("3 2\n0 1\n1 x\n") {
            Err(Error::ParseFile { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected parse error, got {other:?}"),
        }
        match parse_edge_list("2 1\n0 0\n") {
            Err(Error::SelfLoop(0)) => {}
            other => panic!("expected self-loop error, got {other:?}"),
        }
        match parse_edge_list("3 1\n0 1\n2 1\n") {
            Err(Error::ParseFile { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected trailing-data error, got {other:?}"),
        }
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = parse_edge_list("3 2\n0 1\n1 0\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn round_trip() {
        let g = Graph::from_edge_list(6, &[(0, 3), (1, 2), (2, 5), (4, 5)]).unwrap();
        assert_eq!(parse_edge_list(&edge_list_string(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_known_strings() {
        assert_eq!(graph6_string(&Graph::path(1).unwrap()), "@");
        assert_eq!(graph6_string(&Graph::complete(2).unwrap()), "A_");
        assert_eq!(graph6_string(&Graph::path(3).unwrap()), "Bg");
        assert_eq!(graph6_string(&Graph::complete(4).unwrap()), "C~");
        assert_eq!(graph6_string(&Graph::path(5).unwrap()), "DhC");
        assert_eq!(
            graph6_string(&Graph::path(3).unwrap().lex_product_clique(2)),
            "E~Kw"
        );
    }

    #[test]
    fn graph6_multibyte_order() {
        let s = graph6_string(&Graph::path(70).unwrap());
        assert!(s.starts_with("~?@E"));
        assert_eq!(s.len(), 4 + (70usize * 69 / 2).div_ceil(6));
    }
}

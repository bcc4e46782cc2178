//! Text formats for instances and walks.
//!
//! Instance files start with a header line `n m s t` followed by exactly `m`
//! lines `u v`, one per directed edge. Walk files hold a single line of
//! space-separated vertex ids. In both, lines starting with `#` are comments.

use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{DirectedGraph, GraphError, Instance, Vertex, Walk};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: malformed header, expected `n m s t`")]
    MalformedHeader { line: usize },
    #[error("missing header line")]
    MissingHeader,
    #[error("line {line}: malformed edge, expected `u v`")]
    MalformedEdge { line: usize },
    #[error("header declares {expected} edges but file has {found}")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("line {line}: vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { line: usize, vertex: Vertex, n: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: Vertex },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: Vertex, v: Vertex },
    #[error("line {line}: instance must have at least one vertex")]
    NoVertices { line: usize },
    #[error("line {line}: malformed walk token `{token}`")]
    MalformedWalk { line: usize, token: String },
    #[error("walk file contains no vertices")]
    EmptyWalk,
}

/// Content lines with 1-based line numbers, skipping comments and blank lines.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn parse_fields<const N: usize>(line: &str) -> Option<[usize; N]> {
    let mut out = [0usize; N];
    let mut it = line.split_whitespace();
    for slot in &mut out {
        *slot = it.next()?.parse().ok()?;
    }
    it.next().is_none().then_some(out)
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or(ParseError::MissingHeader)?;
    let [n, m, s, t] =
        parse_fields::<4>(header).ok_or(ParseError::MalformedHeader { line: hline })?;
    if n == 0 {
        return Err(ParseError::NoVertices { line: hline });
    }
    for vertex in [s, t] {
        if vertex >= n {
            return Err(ParseError::VertexOutOfRange { line: hline, vertex, n });
        }
    }

    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    for (line, body) in lines {
        let [u, v] = parse_fields::<2>(body).ok_or(ParseError::MalformedEdge { line })?;
        if edges.len() == m {
            return Err(ParseError::EdgeCountMismatch { expected: m, found: m + 1 });
        }
        for vertex in [u, v] {
            if vertex >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        if !seen.insert((u, v)) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(ParseError::EdgeCountMismatch { expected: m, found: edges.len() });
    }

    let graph = DirectedGraph::new(n, edges).map_err(|e| match e {
        GraphError::Empty => ParseError::NoVertices { line: hline },
        other => unreachable!("edges validated during parsing: {other}"),
    })?;
    Ok(Instance::new(graph, s, t).expect("endpoints validated during parsing"))
}

pub fn serialize_instance(instance: &Instance) -> String {
    serialize_instance_with_comments(instance, &[])
}

/// Serializes with leading `# ...` comment lines (one per entry).
pub fn serialize_instance_with_comments(instance: &Instance, comments: &[String]) -> String {
    let g = instance.graph();
    let mut out = String::new();
    for c in comments {
        writeln!(out, "# {c}").unwrap();
    }
    writeln!(
        out,
        "{} {} {} {}",
        g.vertex_count(),
        g.edge_count(),
        instance.s(),
        instance.t()
    )
    .unwrap();
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn parse_walk(text: &str) -> Result<Walk, ParseError> {
    let mut vertices = Vec::new();
    for (line, body) in content_lines(text) {
        for token in body.split_whitespace() {
            let v = token.parse().map_err(|_| ParseError::MalformedWalk {
                line,
                token: token.to_string(),
            })?;
            vertices.push(v);
        }
    }
    if vertices.is_empty() {
        return Err(ParseError::EmptyWalk);
    }
    Ok(Walk::new(vertices))
}

pub fn serialize_walk(walk: &Walk) -> String {
    format!("{walk}\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_instance() {
        let inst = parse_instance("2 1 0 1\n0 1\n").unwrap();
        assert_eq!(inst.n(), 2);
        assert_eq!(inst.graph().edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!((inst.s(), inst.t()), (0, 1));
    }

    #[test]
    fn trailing_newline_optional_and_comments_ignored() {
        let a = parse_instance("# hello\n2 1 0 1\n# mid\n0 1").unwrap();
        let b = parse_instance("2 1 0 1\n0 1\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn each_defect_has_its_own_error() {
        assert_eq!(
            parse_instance("2 1 0 1\n0 0\n"),
            Err(ParseError::SelfLoop { line: 2, vertex: 0 })
        );
        assert_eq!(
            parse_instance("2 1 0\n0 1\n"),
            Err(ParseError::MalformedHeader { line: 1 })
        );
        assert_eq!(
            parse_instance("2 1 0 1\n0 5\n"),
            Err(ParseError::VertexOutOfRange { line: 2, vertex: 5, n: 2 })
        );
        assert_eq!(
            parse_instance("2 2 0 1\n0 1\n0 1\n"),
            Err(ParseError::DuplicateEdge { line: 3, u: 0, v: 1 })
        );
        assert_eq!(
            parse_instance("2 2 0 1\n0 1\n"),
            Err(ParseError::EdgeCountMismatch { expected: 2, found: 1 })
        );
        assert_eq!(
            parse_instance("2 1 0 1\n0 1\n1 0\n"),
            Err(ParseError::EdgeCountMismatch { expected: 1, found: 2 })
        );
        assert_eq!(
            parse_instance("2 1 0 1\n0 x\n"),
            Err(ParseError::MalformedEdge { line: 2 })
        );
        assert_eq!(
            parse_instance("2 0 0 3\n"),
            Err(ParseError::VertexOutOfRange { line: 1, vertex: 3, n: 2 })
        );
        assert_eq!(parse_instance("0 0 0 0\n"), Err(ParseError::NoVertices { line: 1 }));
        assert_eq!(parse_instance("# only\n"), Err(ParseError::MissingHeader));
    }

    #[test]
    fn walk_format() {
        let w = parse_walk("# witness\n0 1 2 1\n").unwrap();
        assert_eq!(w.vertices(), &[0, 1, 2, 1]);
        assert_eq!(serialize_walk(&w), "0 1 2 1\n");
        assert!(matches!(parse_walk("0 a"), Err(ParseError::MalformedWalk { line: 1, .. })));
        assert_eq!(parse_walk("# nothing\n"), Err(ParseError::EmptyWalk));
    }
}

//! The plain-text graph format and DOT export.
//!
//! ```text
//! # comment lines start with '#'
//! n m
//! u v s      (m lines, 0 <= u < v < n, s is + or -)
//! ```

use std::fmt::{self, Write as _};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Sign, SignedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("missing header line `n m`")]
    MissingHeader,
    #[error("malformed header: {0}")]
    MalformedHeader(String),
    #[error("expected an integer, found `{0}`")]
    BadInteger(String),
    #[error("bad sign token `{0}`, expected + or -")]
    BadSign(String),
    #[error("expected `u v s`, found {0} fields")]
    WrongFieldCount(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("edge endpoints must satisfy u < v, found {0} {1}")]
    UnorderedEndpoints(usize, usize),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(usize, usize),
    #[error("header declares {expected} edges, found {found}")]
    EdgeCount { expected: usize, found: usize },
}

/// A parse failure at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// Whitespace-separated tokens of a line with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn integer(line: usize, (column, tok): (usize, &str)) -> Result<usize, ParseError> {
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(ParseError {
            line,
            column,
            kind: ParseErrorKind::BadInteger(tok.to_string()),
        });
    }
    tok.parse().map_err(|_| ParseError {
        line,
        column,
        kind: ParseErrorKind::BadInteger(tok.to_string()),
    })
}

pub fn parse_graph(text: &str) -> Result<SignedGraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));

    let (header_line, header) = lines.next().ok_or(ParseError {
        line: text.lines().count().max(1),
        column: 1,
        kind: ParseErrorKind::MissingHeader,
    })?;
    let fields = tokens(header);
    if fields.len() != 2 {
        return Err(ParseError {
            line: header_line,
            column: fields.get(2).map_or(1, |f| f.0),
            kind: ParseErrorKind::MalformedHeader(format!(
                "expected `n m`, found {} fields",
                fields.len()
            )),
        });
    }
    let order = integer(header_line, fields[0])?;
    let size = integer(header_line, fields[1])?;

    let mut edges: Vec<(usize, usize, Sign)> = Vec::with_capacity(size);
    let mut seen = std::collections::HashSet::new();
    let mut last_line = header_line;
    for (line, content) in lines {
        last_line = line;
        let fields = tokens(content);
        if edges.len() == size {
            return Err(ParseError {
                line,
                column: fields[0].0,
                kind: ParseErrorKind::EdgeCount {
                    expected: size,
                    found: size + 1,
                },
            });
        }
        if fields.len() != 3 {
            let column = fields.get(3).map_or(1, |f| f.0);
            return Err(ParseError {
                line,
                column,
                kind: ParseErrorKind::WrongFieldCount(fields.len()),
            });
        }
        let u = integer(line, fields[0])?;
        let v = integer(line, fields[1])?;
        let sign = match fields[2].1 {
            "+" => Sign::Positive,
            "-" => Sign::Negative,
            other => {
                return Err(ParseError {
                    line,
                    column: fields[2].0,
                    kind: ParseErrorKind::BadSign(other.to_string()),
                })
            }
        };
        let err = |column, kind| ParseError { line, column, kind };
        if u == v {
            return Err(err(fields[0].0, ParseErrorKind::SelfLoop(u)));
        }
        for (vertex, field) in [(u, fields[0]), (v, fields[1])] {
            if vertex >= order {
                return Err(err(
                    field.0,
                    ParseErrorKind::VertexOutOfRange { vertex, order },
                ));
            }
        }
        if u > v {
            return Err(err(fields[0].0, ParseErrorKind::UnorderedEndpoints(u, v)));
        }
        if !seen.insert((u, v)) {
            return Err(err(fields[0].0, ParseErrorKind::DuplicateEdge(u, v)));
        }
        edges.push((u, v, sign));
    }
    if edges.len() != size {
        return Err(ParseError {
            line: last_line,
            column: 1,
            kind: ParseErrorKind::EdgeCount {
                expected: size,
                found: edges.len(),
            },
        });
    }
    Ok(SignedGraph::new(order, edges).expect("edges were validated"))
}

/// Text form accepted by [`parse_graph`]; edges in sorted order.
pub fn to_graph_file(g: &SignedGraph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.size());
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.sign).unwrap();
    }
    out
}

/// Graphviz rendering: positive edges solid, negative edges dashed.
pub fn to_dot(g: &SignedGraph) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        writeln!(out, "  {v};").unwrap();
    }
    for e in g.edges() {
        let style = if e.sign.is_negative() {
            "dashed"
        } else {
            "solid"
        };
        writeln!(
            out,
            "  {} -- {} [sign=\"{}\", style={}];",
            e.u, e.v, e.sign, style
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

impl fmt::Display for SignedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&to_graph_file(self))
    }
}

impl Serialize for SignedGraph {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&to_graph_file(self))
    }
}

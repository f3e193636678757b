//! Instance file formats.
//!
//! Simple format: an optional run of `#` comment lines, a header line `n m`,
//! then `m` lines `u v` with 1-based vertex ids. Comment lines may appear
//! anywhere.
//!
//! DIMACS-like format: `c` comment lines, one `p edge n m` line (`p col` is
//! accepted too), then `m` lines `e u v`, 1-based.

use std::fmt::Write as _;

use crate::error::{MbvError, Result};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Simple,
    Dimacs,
}

fn one_based(token: &str, n: usize, line: usize, text: &str) -> Result<VertexId> {
    let x: usize = token.parse().map_err(|_| MbvError::BadEdgeLine {
        line,
        text: text.to_string(),
    })?;
    if x == 0 || x > n {
        return Err(MbvError::IndexOutOfRange { index: x, n });
    }
    Ok(x - 1)
}

fn finish(n: usize, m: usize, pairs: Vec<(VertexId, VertexId)>) -> Result<Graph> {
    if pairs.len() != m {
        return Err(MbvError::MalformedHeader(format!(
            "header announces {m} edges but {} were listed",
            pairs.len()
        )));
    }
    Graph::new(n, &pairs)
}

pub fn parse_instance(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match header {
            None => {
                let parsed = match tokens[..] {
                    [a, b] => a.parse().ok().zip(b.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| MbvError::MalformedHeader(line.to_string()))?);
            }
            Some((n, _)) => {
                let [a, b] = tokens[..] else {
                    return Err(MbvError::BadEdgeLine {
                        line: i + 1,
                        text: line.to_string(),
                    });
                };
                pairs.push((one_based(a, n, i + 1, line)?, one_based(b, n, i + 1, line)?));
            }
        }
    }
    let (n, m) = header.ok_or_else(|| MbvError::MalformedHeader("missing `n m` header".into()))?;
    finish(n, m, pairs)
}

pub fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut header: Option<(usize, usize)> = None;
    let mut pairs = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            None | Some(&"c") => continue,
            Some(&"p") => {
                if header.is_some() {
                    return Err(MbvError::MalformedHeader("repeated `p` line".into()));
                }
                let parsed = match tokens[..] {
                    ["p", "edge" | "col", a, b] => a.parse().ok().zip(b.parse().ok()),
                    _ => None,
                };
                header = Some(parsed.ok_or_else(|| MbvError::MalformedHeader(line.to_string()))?);
            }
            Some(&"e") => {
                let Some((n, _)) = header else {
                    return Err(MbvError::MalformedHeader("edge before `p` line".into()));
                };
                let ["e", a, b] = tokens[..] else {
                    return Err(MbvError::BadEdgeLine {
                        line: i + 1,
                        text: line.to_string(),
                    });
                };
                pairs.push((one_based(a, n, i + 1, line)?, one_based(b, n, i + 1, line)?));
            }
            Some(_) => {
                return Err(MbvError::BadEdgeLine {
                    line: i + 1,
                    text: line.to_string(),
                })
            }
        }
    }
    let (n, m) = header.ok_or_else(|| MbvError::MalformedHeader("missing `p edge n m` line".into()))?;
    finish(n, m, pairs)
}

/// Guesses the format from the first line that is neither blank nor a comment.
pub fn detect_format(text: &str) -> Format {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with("c ") && *l != "c");
    match first {
        Some(l) if l.starts_with('p') => Format::Dimacs,
        _ => Format::Simple,
    }
}

pub fn parse_auto(text: &str) -> Result<Graph> {
    match detect_format(text) {
        Format::Simple => parse_instance(text),
        Format::Dimacs => parse_dimacs(text),
    }
}

/// Writes the simple format. `comment` lines are emitted with a `# ` prefix.
pub fn write_instance(g: &Graph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "# {line}");
        }
    }
    let _ = writeln!(out, "{} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "{} {}", e.u + 1, e.v + 1);
    }
    out
}

pub fn write_dimacs(g: &Graph, comment: Option<&str>) -> String {
    let mut out = String::new();
    if let Some(c) = comment {
        for line in c.lines() {
            let _ = writeln!(out, "c {line}");
        }
    }
    let _ = writeln!(out, "p edge {} {}", g.n(), g.m());
    for e in g.edges() {
        let _ = writeln!(out, "e {} {}", e.u + 1, e.v + 1);
    }
    out
}

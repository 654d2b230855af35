//! Line-oriented instance and solution files.
//!
//! Instances:
//!
//! ```text
//! c comment
//! p mtcut <n> <m> <p> [<k>]
//! t <vid>
//! e <u> <v> <w>
//! ```
//!
//! Vertex ids are 1-based in files and 0-based in memory. Terminal lines
//! give `t_1 .. t_p` in order. Solutions are `s SIZE <int>` or
//! `s INFEASIBLE` followed by one `a <vid> <part>` line per vertex, parts
//! numbered from 1 in terminal order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{Vertex, WeightedGraph, MAX_WEIGHT};
use crate::solver::Partition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: terminal {vid} repeated")]
    RepeatedTerminal { line: usize, vid: u64 },
    #[error("line {line}: self-loop on vertex {vid}")]
    SelfLoop { line: usize, vid: u64 },
    #[error("line {line}: vertex id {vid} out of range 1..={n}")]
    OutOfRange { line: usize, vid: u64, n: usize },
    #[error("line {line}: edge weight must lie in 1..=2^32")]
    BadWeight { line: usize },
    #[error("header declares {declared} {what} but the file has {found}")]
    CountMismatch { what: &'static str, declared: usize, found: usize },
    #[error("missing 'p mtcut' header")]
    MissingHeader,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub graph: WeightedGraph,
    pub k: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Parsed {
    pub instance: InstanceFile,
    pub warnings: Vec<String>,
}

fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax { line, msg: msg.into() }
}

fn number(tok: Option<&str>, line: usize, what: &str) -> Result<u64, ParseError> {
    let tok = tok.ok_or_else(|| syntax(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| syntax(line, format!("bad {what} '{tok}'")))
}

struct Header {
    n: usize,
    m: usize,
    p: usize,
    k: Option<u64>,
}

pub fn parse_instance(text: &str) -> Result<Parsed, ParseError> {
    let mut header: Option<Header> = None;
    let mut terminals: Vec<Vertex> = Vec::new();
    let mut edges: BTreeMap<(Vertex, Vertex), u64> = BTreeMap::new();
    let mut edge_lines = 0;
    let mut warnings = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let mut toks = raw.split_whitespace();
        let Some(kind) = toks.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return Err(syntax(line, "second header line"));
                }
                if toks.next() != Some("mtcut") {
                    return Err(syntax(line, "expected 'p mtcut'"));
                }
                let n = number(toks.next(), line, "vertex count")? as usize;
                let m = number(toks.next(), line, "edge count")? as usize;
                let p = number(toks.next(), line, "terminal count")? as usize;
                let k = match toks.next() {
                    Some(tok) => Some(number(Some(tok), line, "budget")?),
                    None => None,
                };
                if p == 0 {
                    return Err(syntax(line, "at least one terminal is required"));
                }
                if p > n {
                    return Err(syntax(line, "more terminals than vertices"));
                }
                header = Some(Header { n, m, p, k });
            }
            "t" | "e" => {
                let h = header.as_ref().ok_or(ParseError::MissingHeader)?;
                let vid = |tok: Option<&str>| -> Result<Vertex, ParseError> {
                    let id = number(tok, line, "vertex id")?;
                    if id == 0 || id > h.n as u64 {
                        return Err(ParseError::OutOfRange { line, vid: id, n: h.n });
                    }
                    Ok(Vertex((id - 1) as u32))
                };
                if kind == "t" {
                    let t = vid(toks.next())?;
                    if terminals.contains(&t) {
                        return Err(ParseError::RepeatedTerminal { line, vid: t.0 as u64 + 1 });
                    }
                    terminals.push(t);
                } else {
                    let u = vid(toks.next())?;
                    let v = vid(toks.next())?;
                    let w = number(toks.next(), line, "weight")?;
                    if u == v {
                        return Err(ParseError::SelfLoop { line, vid: u.0 as u64 + 1 });
                    }
                    if w == 0 || w > MAX_WEIGHT {
                        return Err(ParseError::BadWeight { line });
                    }
                    let key = (u.min(v), u.max(v));
                    if let Some(old) = edges.get_mut(&key) {
                        warnings.push(format!("line {line}: duplicate edge {} {} summed", key.0 .0 + 1, key.1 .0 + 1));
                        *old += w;
                        if *old > MAX_WEIGHT {
                            return Err(ParseError::BadWeight { line });
                        }
                    } else {
                        edges.insert(key, w);
                    }
                    edge_lines += 1;
                }
            }
            other => return Err(syntax(line, format!("unknown line type '{other}'"))),
        }
        if toks.next().is_some() {
            return Err(syntax(line, "trailing tokens"));
        }
    }

    let h = header.ok_or(ParseError::MissingHeader)?;
    if terminals.len() != h.p {
        return Err(ParseError::CountMismatch { what: "terminals", declared: h.p, found: terminals.len() });
    }
    if edge_lines != h.m {
        return Err(ParseError::CountMismatch { what: "edges", declared: h.m, found: edge_lines });
    }
    let graph = WeightedGraph::from_edges(h.n, terminals, edges.into_iter().map(|((u, v), w)| (u, v, w)))
        .expect("validated above");
    Ok(Parsed { instance: InstanceFile { graph, k: h.k }, warnings })
}

/// Writes an instance in canonical form: terminals in order, edges sorted.
/// Requires the graph's vertices to be `0..n`.
pub fn write_instance(inst: &InstanceFile) -> String {
    let g = &inst.graph;
    let mut out = format!("p mtcut {} {} {}", g.num_vertices(), g.num_edges(), g.num_terminals());
    if let Some(k) = inst.k {
        write!(out, " {k}").unwrap();
    }
    out.push('\n');
    for t in g.terminals() {
        writeln!(out, "t {}", t.0 + 1).unwrap();
    }
    for (u, v, w) in g.edges() {
        writeln!(out, "e {} {} {w}", u.0 + 1, v.0 + 1).unwrap();
    }
    out
}

pub fn write_solution(partition: Option<&Partition>) -> String {
    let Some(p) = partition else {
        return "s INFEASIBLE\n".to_string();
    };
    let mut out = format!("s SIZE {}\n", p.size);
    for (v, part) in &p.assignment {
        writeln!(out, "a {} {}", v.0 + 1, part + 1).unwrap();
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    /// `None` for an infeasibility claim.
    pub size: Option<u64>,
    pub assignment: BTreeMap<Vertex, usize>,
}

pub fn parse_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let mut size = None;
    let mut seen_status = false;
    let mut assignment = BTreeMap::new();
    let mut ids = BTreeSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks: Vec<&str> = raw.split_whitespace().collect();
        match toks.as_slice() {
            [] | ["c", ..] => {}
            ["s", "INFEASIBLE"] if !seen_status => seen_status = true,
            ["s", "SIZE", n] if !seen_status => {
                seen_status = true;
                size = Some(number(Some(n), line, "size")?);
            }
            ["a", vid, part] => {
                let vid = number(Some(vid), line, "vertex id")?;
                let part = number(Some(part), line, "part")?;
                if vid == 0 || part == 0 {
                    return Err(syntax(line, "ids and parts start at 1"));
                }
                if !ids.insert(vid) {
                    return Err(syntax(line, format!("vertex {vid} assigned twice")));
                }
                assignment.insert(Vertex((vid - 1) as u32), (part - 1) as usize);
            }
            _ => return Err(syntax(line, format!("unrecognized line '{raw}'"))),
        }
    }
    if !seen_status {
        return Err(syntax(0, "missing status line"));
    }
    Ok(SolutionFile { size, assignment })
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const EXAMPLE_PATH: &str = "c path t1-a-b-t2 with t3 on a and b\n\
        p mtcut 5 5 3 2\n\
        t 1\nt 4\nt 5\n\
        e 1 2 1\ne 2 3 1\ne 3 4 1\ne 5 2 1\ne 5 3 1\n";

    #[test]
    fn parses_example() {
        let parsed = parse_instance(EXAMPLE_PATH).unwrap();
        let g = &parsed.instance.graph;
        assert_eq!((g.num_vertices(), g.num_edges(), g.num_terminals()), (5, 5, 3));
        assert_eq!(parsed.instance.k, Some(2));
        assert!(parsed.warnings.is_empty());
        assert_eq!(g.terminals(), &[Vertex(0), Vertex(3), Vertex(4)]);
    }

    #[test]
    fn diagnostics() {
        let err = parse_instance("p mtcut 3 1 1 0\nt 1\ne 3 3 1\n").unwrap_err();
        assert_eq!(err, ParseError::SelfLoop { line: 3, vid: 3 });
        let err = parse_instance("p mtcut 3 0 2\nt 1\nt 1\n").unwrap_err();
        assert_eq!(err, ParseError::RepeatedTerminal { line: 3, vid: 1 });
        let err = parse_instance("p mtcut 3 1 1\nt 1\ne 1 4 1\n").unwrap_err();
        assert_eq!(err, ParseError::OutOfRange { line: 3, vid: 4, n: 3 });
        let err = parse_instance("p mtcut 3 1 1\nt 1\ne 1 x 1\n").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }));
        let err = parse_instance("p mtcut 3 2 1\nt 1\ne 1 2 1\n").unwrap_err();
        assert!(matches!(err, ParseError::CountMismatch { what: "edges", .. }));
        let err = parse_instance("t 1\n").unwrap_err();
        assert_eq!(err, ParseError::MissingHeader);
        let err = parse_instance("p mtcut 3 1 1\nt 1\ne 1 2 0\n").unwrap_err();
        assert_eq!(err, ParseError::BadWeight { line: 3 });
    }

    #[test]
    fn duplicate_edges_are_summed() {
        let parsed = parse_instance("p mtcut 2 2 1\nt 1\ne 1 2 1\ne 2 1 1\n").unwrap();
        assert_eq!(parsed.instance.graph.weight(Vertex(0), Vertex(1)), Some(2));
        assert_eq!(parsed.instance.graph.num_edges(), 1);
        assert_eq!(parsed.warnings.len(), 1);
    }

    #[test]
    fn solution_format() {
        let mut assignment = BTreeMap::new();
        assignment.insert(Vertex(0), 0);
        assignment.insert(Vertex(1), 1);
        let p = Partition { assignment: assignment.clone(), size: 4 };
        let text = write_solution(Some(&p));
        assert_eq!(text, "s SIZE 4\na 1 1\na 2 2\n");
        assert_eq!(parse_solution(&text).unwrap(), SolutionFile { size: Some(4), assignment });
        assert_eq!(write_solution(None), "s INFEASIBLE\n");
        assert_eq!(parse_solution("s INFEASIBLE\n").unwrap().size, None);
        assert!(parse_solution("a 1 1\n").is_err());
    }
}

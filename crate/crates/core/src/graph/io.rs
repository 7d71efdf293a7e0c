//! Text formats: a `p <n> <m>` edge list and DIMACS max-flow.

use std::fmt::Write as _;

use super::{VertexId, WeightedGraph};
use crate::error::{Error, Result};
use crate::scalar::Weight;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn field<T: std::str::FromStr>(tok: Option<&str>, line: usize, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(line, format!("missing {what}")))?;
    tok.parse().map_err(|_| parse_err(line, format!("bad {what} `{tok}`")))
}

fn weight<W: Weight>(tok: Option<&str>, line: usize) -> Result<W> {
    let raw: u128 = field(tok, line, "weight")?;
    W::from_wide(raw).ok_or_else(|| parse_err(line, format!("weight {raw} does not fit")))
}

/// Parses the edge-list format: `c` comment lines, one `p <n> <m>` header,
/// then `m` lines `u v w` with 0-based vertex ids.
pub fn parse_edge_list<W: Weight>(text: &str) -> Result<WeightedGraph<W>> {
    let mut header: Option<(usize, usize)> = None;
    let mut triples = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let mut toks = line.split_whitespace();
        if line.starts_with('p') {
            toks.next();
            if header.is_some() {
                return Err(parse_err(ln, "duplicate header"));
            }
            header = Some((field(toks.next(), ln, "n")?, field(toks.next(), ln, "m")?));
            continue;
        }
        if header.is_none() {
            return Err(parse_err(ln, "edge before `p` header"));
        }
        let u: VertexId = field(toks.next(), ln, "u")?;
        let v: VertexId = field(toks.next(), ln, "v")?;
        let w: W = weight(toks.next(), ln)?;
        if toks.next().is_some() {
            return Err(parse_err(ln, "trailing tokens"));
        }
        triples.push((u, v, w));
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p` header"))?;
    if triples.len() != m {
        return Err(parse_err(0, format!("header announces {m} edges, found {}", triples.len())));
    }
    WeightedGraph::new(n, triples)
}

/// Writes the canonical edge list (`u < v`, ascending).
pub fn write_edge_list<W: Weight>(g: &WeightedGraph<W>) -> String {
    let mut out = format!("p {} {}\n", g.n(), g.m());
    for e in g.edges() {
        writeln!(out, "{} {} {}", e.u, e.v, e.w).unwrap();
    }
    out
}

/// A DIMACS max-flow instance: the graph plus its designated terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimacsInstance<W> {
    pub graph: WeightedGraph<W>,
    pub source: Option<VertexId>,
    pub sink: Option<VertexId>,
}

/// Parses `p max n m`, `n <id> s|t`, `a u v cap` with 1-based ids. Arcs are
/// read as undirected edges.
pub fn parse_dimacs<W: Weight>(text: &str) -> Result<DimacsInstance<W>> {
    let mut n: Option<usize> = None;
    let (mut source, mut sink) = (None, None);
    let mut triples = Vec::new();
    let one_based = |x: usize, ln: usize| x.checked_sub(1).ok_or_else(|| parse_err(ln, "ids are 1-based"));
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let mut toks = raw.split_whitespace();
        match toks.next() {
            None | Some("c") => continue,
            Some("p") => {
                if toks.next() != Some("max") {
                    return Err(parse_err(ln, "expected `p max`"));
                }
                n = Some(field(toks.next(), ln, "n")?);
                let _m: usize = field(toks.next(), ln, "m")?;
            }
            Some("n") => {
                let id = one_based(field(toks.next(), ln, "node id")?, ln)?;
                match toks.next() {
                    Some("s") => source = Some(id),
                    Some("t") => sink = Some(id),
                    other => return Err(parse_err(ln, format!("bad node designator {other:?}"))),
                }
            }
            Some("a") => {
                let u = one_based(field(toks.next(), ln, "tail")?, ln)?;
                let v = one_based(field(toks.next(), ln, "head")?, ln)?;
                triples.push((u, v, weight::<W>(toks.next(), ln)?));
            }
            Some(tok) if tok.starts_with('c') => continue,
            Some(tok) => return Err(parse_err(ln, format!("unknown line type `{tok}`"))),
        }
    }
    let n = n.ok_or_else(|| parse_err(0, "missing `p max` line"))?;
    let graph = WeightedGraph::new(n, triples)?;
    for x in [source, sink].into_iter().flatten() {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    Ok(DimacsInstance { graph, source, sink })
}

/// Writes one arc per undirected edge, in canonical order.
pub fn write_dimacs<W: Weight>(inst: &DimacsInstance<W>) -> String {
    let g = &inst.graph;
    let mut out = format!("p max {} {}\n", g.n(), g.m());
    if let Some(s) = inst.source {
        writeln!(out, "n {} s", s + 1).unwrap();
    }
    if let Some(t) = inst.sink {
        writeln!(out, "n {} t", t + 1).unwrap();
    }
    for e in g.edges() {
        writeln!(out, "a {} {} {}", e.u + 1, e.v + 1, e.w).unwrap();
    }
    out
}

//! Native text format and JSON output for graphs.
//!
//! ```text
//! ribbon-graph 1
//! halfedges 6
//! vertex 0 : 0 2 4
//! vertex 1 : 1 5 3
//! edge 0 1 len 1/3
//! edge 2 3 len 1/3
//! edge 4 5 len 1/3
//! basepoint 0
//! normalized
//! ```
//!
//! Vertex lines list half-edges in counterclockwise order. Lengths are
//! optional but must then be given on every edge. `normalized` marks a
//! metric whose lengths sum to 1 and should stay that way under splitting.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_traits::Signed;
use serde_json::{json, Value};
use thiserror::Error;

use crate::morse::{Length, MetricRibbonGraph, MorseError};
use crate::ribbon::{EdgeId, GraphError, HalfEdge, PlainGraph, RibbonGraph, VertexId};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("unknown header (expected `ribbon-graph 1` or `plain-graph 1`)")]
    UnknownHeader,
    #[error("unsupported format version {0}")]
    UnsupportedVersion(String),
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("unexpected `{0}`")]
    Unexpected(String),
    #[error("`{0}` is not a valid number")]
    BadNumber(String),
    #[error("`{0}` is not a valid rational p/q")]
    BadRational(String),
    #[error("missing `halfedges` line before graph data")]
    MissingHalfEdgeCount,
    #[error("half-edge {0} is out of range")]
    OutOfRange(HalfEdge),
    #[error("half-edge {0} is listed twice in vertex lines")]
    DuplicateInVertex(HalfEdge),
    #[error("half-edge {0} is listed twice in edge lines")]
    DuplicateInEdge(HalfEdge),
    #[error("half-edge {0} is missing from the vertex lines")]
    MissingFromVertex(HalfEdge),
    #[error("half-edge {0} is missing from the edge lines")]
    MissingFromEdge(HalfEdge),
    #[error("half-edge {0} is paired with itself")]
    SelfPaired(HalfEdge),
    #[error("vertex id {0} is used twice")]
    DuplicateVertex(String),
    #[error("vertex {0} has no half-edges")]
    EmptyVertex(String),
    #[error("missing `basepoint` line")]
    MissingBasepoint,
    #[error("basepoint {0} is not a vertex id")]
    UnknownBasepoint(String),
    #[error("length {0} is not positive")]
    NonPositiveLength(String),
    #[error("lengths must be given on every edge or on none")]
    PartialLengths,
    #[error("plain graphs do not carry lengths")]
    LengthsOnPlain,
    #[error("`normalized` needs lengths that sum to 1")]
    NotNormalized,
    #[error("{0}")]
    Structure(GraphError),
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphValue {
    Ribbon(RibbonGraph),
    Metric(MetricRibbonGraph),
    Plain(PlainGraph),
}

impl GraphValue {
    /// The underlying rotation system (sorted rotations for plain graphs).
    pub fn ribbon(&self) -> &RibbonGraph {
        match self {
            GraphValue::Ribbon(g) => g,
            GraphValue::Metric(m) => m.graph(),
            GraphValue::Plain(p) => p.as_ribbon(),
        }
    }
}

/// A parsed file with the vertex ids it used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub value: GraphValue,
    pub vertex_ids: BTreeMap<String, VertexId>,
}

impl GraphFile {
    pub fn vertex(&self, id: &str) -> Option<VertexId> {
        self.vertex_ids.get(id).copied()
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let body = line.split('#').next().unwrap_or("");
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in body.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &body[s..i],
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &body[s..],
            column: s + 1,
        });
    }
    out
}

/// Parses `p/q` or an integer into a reduced rational.
pub fn parse_rational(text: &str) -> Option<Length> {
    let value: Length = text.parse().ok()?;
    Some(value)
}

pub fn format_rational(x: &Length) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(PartialEq, Eq, Clone, Copy)]
enum Kind {
    Ribbon,
    Plain,
}

pub fn parse_graph_file(text: &str) -> Result<GraphFile, ParseError> {
    let err = |line: usize, column: usize, kind| ParseError { line, column, kind };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, tokens(l)))
        .filter(|(_, t)| !t.is_empty());

    let (hline, header) = lines
        .next()
        .ok_or(err(1, 1, ParseErrorKind::UnknownHeader))?;
    let kind = match header[0].text {
        "ribbon-graph" => Kind::Ribbon,
        "plain-graph" => Kind::Plain,
        _ => return Err(err(hline, header[0].column, ParseErrorKind::UnknownHeader)),
    };
    match header.get(1) {
        Some(t) if t.text == "1" => {}
        Some(t) => {
            return Err(err(
                hline,
                t.column,
                ParseErrorKind::UnsupportedVersion(t.text.to_string()),
            ))
        }
        None => {
            return Err(err(
                hline,
                header[0].column + header[0].text.len(),
                ParseErrorKind::Expected("format version"),
            ))
        }
    }
    if let Some(t) = header.get(2) {
        return Err(err(
            hline,
            t.column,
            ParseErrorKind::Unexpected(t.text.to_string()),
        ));
    }

    let number = |line: usize, t: &Token| -> Result<usize, ParseError> {
        t.text.parse::<usize>().map_err(|_| {
            err(
                line,
                t.column,
                ParseErrorKind::BadNumber(t.text.to_string()),
            )
        })
    };

    let mut count: Option<usize> = None;
    let mut vertex_seen: Vec<Option<(usize, usize)>> = Vec::new();
    let mut edge_seen: Vec<Option<(usize, usize)>> = Vec::new();
    let mut rotations: Vec<Vec<HalfEdge>> = Vec::new();
    let mut vertex_ids: Vec<(String, usize)> = Vec::new();
    let mut pairs: Vec<(HalfEdge, HalfEdge)> = Vec::new();
    let mut lengths: Vec<Option<Length>> = Vec::new();
    let mut basepoint: Option<(String, usize, usize)> = None;
    let mut normalized: Option<(usize, usize)> = None;
    let mut last_line = hline;

    for (ln, toks) in lines {
        last_line = ln;
        let head = &toks[0];
        let need_count = |count: Option<usize>| {
            count.ok_or(err(ln, head.column, ParseErrorKind::MissingHalfEdgeCount))
        };
        match head.text {
            "halfedges" => {
                if count.is_some() {
                    return Err(err(
                        ln,
                        head.column,
                        ParseErrorKind::Unexpected("second halfedges line".into()),
                    ));
                }
                let t = toks.get(1).ok_or(err(
                    ln,
                    head.column,
                    ParseErrorKind::Expected("half-edge count"),
                ))?;
                let n = number(ln, t)?;
                if let Some(t) = toks.get(2) {
                    return Err(err(
                        ln,
                        t.column,
                        ParseErrorKind::Unexpected(t.text.to_string()),
                    ));
                }
                count = Some(n);
                vertex_seen = vec![None; n];
                edge_seen = vec![None; n];
            }
            "vertex" => {
                let n = need_count(count)?;
                let id = toks.get(1).ok_or(err(
                    ln,
                    head.column,
                    ParseErrorKind::Expected("vertex id"),
                ))?;
                number(ln, id)?;
                if vertex_ids.iter().any(|(s, _)| s == id.text) {
                    return Err(err(
                        ln,
                        id.column,
                        ParseErrorKind::DuplicateVertex(id.text.to_string()),
                    ));
                }
                match toks.get(2) {
                    Some(t) if t.text == ":" => {}
                    Some(t) => return Err(err(ln, t.column, ParseErrorKind::Expected("`:`"))),
                    None => return Err(err(ln, id.column, ParseErrorKind::Expected("`:`"))),
                }
                if toks.len() == 3 {
                    return Err(err(
                        ln,
                        toks[2].column,
                        ParseErrorKind::EmptyVertex(id.text.to_string()),
                    ));
                }
                let mut rot = Vec::new();
                for t in &toks[3..] {
                    let h = number(ln, t)?;
                    if h >= n {
                        return Err(err(ln, t.column, ParseErrorKind::OutOfRange(h)));
                    }
                    if vertex_seen[h].is_some() {
                        return Err(err(ln, t.column, ParseErrorKind::DuplicateInVertex(h)));
                    }
                    vertex_seen[h] = Some((ln, t.column));
                    rot.push(h);
                }
                vertex_ids.push((id.text.to_string(), rotations.len()));
                rotations.push(rot);
            }
            "edge" => {
                let n = need_count(count)?;
                let mut ends = Vec::new();
                for i in 1..=2 {
                    let t = toks.get(i).ok_or(err(
                        ln,
                        head.column,
                        ParseErrorKind::Expected("two half-edges"),
                    ))?;
                    let h = number(ln, t)?;
                    if h >= n {
                        return Err(err(ln, t.column, ParseErrorKind::OutOfRange(h)));
                    }
                    if edge_seen[h].is_some() || ends.contains(&h) {
                        let kind = if ends.contains(&h) {
                            ParseErrorKind::SelfPaired(h)
                        } else {
                            ParseErrorKind::DuplicateInEdge(h)
                        };
                        return Err(err(ln, t.column, kind));
                    }
                    ends.push(h);
                }
                for (i, &h) in ends.iter().enumerate() {
                    edge_seen[h] = Some((ln, toks[i + 1].column));
                }
                let length = match toks.get(3) {
                    None => None,
                    Some(t) if t.text == "len" => {
                        let v = toks.get(4).ok_or(err(
                            ln,
                            t.column,
                            ParseErrorKind::Expected("length after `len`"),
                        ))?;
                        let l = parse_rational(v.text).ok_or(err(
                            ln,
                            v.column,
                            ParseErrorKind::BadRational(v.text.to_string()),
                        ))?;
                        if !l.is_positive() {
                            return Err(err(
                                ln,
                                v.column,
                                ParseErrorKind::NonPositiveLength(v.text.to_string()),
                            ));
                        }
                        if let Some(t) = toks.get(5) {
                            return Err(err(
                                ln,
                                t.column,
                                ParseErrorKind::Unexpected(t.text.to_string()),
                            ));
                        }
                        Some(l)
                    }
                    Some(t) => {
                        return Err(err(
                            ln,
                            t.column,
                            ParseErrorKind::Unexpected(t.text.to_string()),
                        ))
                    }
                };
                if kind == Kind::Plain && length.is_some() {
                    return Err(err(ln, toks[3].column, ParseErrorKind::LengthsOnPlain));
                }
                if !lengths.is_empty() && lengths[0].is_some() != length.is_some() {
                    return Err(err(ln, head.column, ParseErrorKind::PartialLengths));
                }
                pairs.push((ends[0], ends[1]));
                lengths.push(length);
            }
            "basepoint" => {
                if basepoint.is_some() {
                    return Err(err(
                        ln,
                        head.column,
                        ParseErrorKind::Unexpected("second basepoint line".into()),
                    ));
                }
                let t = toks.get(1).ok_or(err(
                    ln,
                    head.column,
                    ParseErrorKind::Expected("vertex id"),
                ))?;
                if let Some(extra) = toks.get(2) {
                    return Err(err(
                        ln,
                        extra.column,
                        ParseErrorKind::Unexpected(extra.text.to_string()),
                    ));
                }
                basepoint = Some((t.text.to_string(), ln, t.column));
            }
            "normalized" => {
                if let Some(t) = toks.get(1) {
                    return Err(err(
                        ln,
                        t.column,
                        ParseErrorKind::Unexpected(t.text.to_string()),
                    ));
                }
                normalized = Some((ln, head.column));
            }
            other => {
                return Err(err(
                    ln,
                    head.column,
                    ParseErrorKind::Unexpected(other.to_string()),
                ))
            }
        }
    }

    let n = count.ok_or(err(last_line + 1, 1, ParseErrorKind::MissingHalfEdgeCount))?;
    let end = last_line + 1;
    if let Some(h) = (0..n).find(|&h| vertex_seen[h].is_none()) {
        return Err(err(end, 1, ParseErrorKind::MissingFromVertex(h)));
    }
    if let Some(h) = (0..n).find(|&h| edge_seen[h].is_none()) {
        return Err(err(end, 1, ParseErrorKind::MissingFromEdge(h)));
    }
    let (base_id, bl, bc) = basepoint.ok_or(err(end, 1, ParseErrorKind::MissingBasepoint))?;
    let base_index = vertex_ids
        .iter()
        .find(|(s, _)| *s == base_id)
        .map(|&(_, i)| i)
        .ok_or(err(
            bl,
            bc,
            ParseErrorKind::UnknownBasepoint(base_id.clone()),
        ))?;
    let structure = |e: GraphError| err(end, 1, ParseErrorKind::Structure(e));
    let graph = RibbonGraph::from_rotations(&rotations, &pairs, rotations[base_index][0])
        .map_err(structure)?;
    let ids = vertex_ids
        .into_iter()
        .map(|(s, i)| (s, graph.vertex_of(rotations[i][0])))
        .collect();

    let value = match kind {
        Kind::Plain => {
            if let Some((l, c)) = normalized {
                return Err(err(l, c, ParseErrorKind::LengthsOnPlain));
            }
            GraphValue::Plain(PlainGraph::from_ribbon(&graph))
        }
        Kind::Ribbon if lengths.first().is_some_and(|l| l.is_some()) => {
            let map = pairs
                .iter()
                .zip(lengths)
                .map(|(&(a, b), l)| (EdgeId(a.min(b)), l.expect("all lengths present")))
                .collect();
            match MetricRibbonGraph::new(graph, map, normalized.is_some()) {
                Ok(m) => GraphValue::Metric(m),
                Err(MorseError::NotNormalized(_)) => {
                    let (l, c) = normalized.expect("only checked when flagged");
                    return Err(err(l, c, ParseErrorKind::NotNormalized));
                }
                Err(e) => unreachable!("lengths were checked while parsing: {e}"),
            }
        }
        Kind::Ribbon => {
            if let Some((l, c)) = normalized {
                return Err(err(l, c, ParseErrorKind::NotNormalized));
            }
            GraphValue::Ribbon(graph)
        }
    };
    Ok(GraphFile {
        value,
        vertex_ids: ids,
    })
}

/// Native text. Vertices are listed by id (their smallest half-edge), each
/// rotation starting from that half-edge; edges by their smaller half-edge.
pub fn to_native(value: &GraphValue) -> String {
    let g = value.ribbon();
    let mut out = String::new();
    let header = match value {
        GraphValue::Plain(_) => "plain-graph 1",
        _ => "ribbon-graph 1",
    };
    writeln!(out, "{header}").unwrap();
    writeln!(out, "halfedges {}", g.half_edge_count()).unwrap();
    for v in g.vertices() {
        let rot: Vec<String> = g.rotation(v).iter().map(|h| h.to_string()).collect();
        writeln!(out, "vertex {} : {}", v.0, rot.join(" ")).unwrap();
    }
    for (a, b) in g.edges() {
        match value {
            GraphValue::Metric(m) => writeln!(
                out,
                "edge {a} {b} len {}",
                format_rational(m.length(EdgeId(a)))
            )
            .unwrap(),
            _ => writeln!(out, "edge {a} {b}").unwrap(),
        }
    }
    writeln!(out, "basepoint {}", g.basepoint().0).unwrap();
    if let GraphValue::Metric(m) = value {
        if m.is_normalized() {
            writeln!(out, "normalized").unwrap();
        }
    }
    out
}

pub fn to_json(value: &GraphValue) -> Value {
    let g = value.ribbon();
    let kind = match value {
        GraphValue::Plain(_) => "plain",
        _ => "ribbon",
    };
    let vertices: Vec<Value> = g
        .vertices()
        .into_iter()
        .map(|v| json!({ "id": v.0, "rotation": g.rotation(v) }))
        .collect();
    let edges: Vec<Value> = g
        .edges()
        .into_iter()
        .map(|(a, b)| match value {
            GraphValue::Metric(m) => {
                json!({ "half_edges": [a, b], "length": format_rational(m.length(EdgeId(a))) })
            }
            _ => json!({ "half_edges": [a, b] }),
        })
        .collect();
    let mut out = json!({
        "kind": kind,
        "halfedges": g.half_edge_count(),
        "vertices": vertices,
        "edges": edges,
        "basepoint": g.basepoint().0,
    });
    if let GraphValue::Metric(m) = value {
        out["normalized"] = json!(m.is_normalized());
    }
    out
}

/// Output format selector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Native,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Native => "native",
            Format::Json => "json",
        })
    }
}

pub fn serialize(value: &GraphValue, format: Format) -> String {
    match format {
        Format::Native => to_native(value),
        Format::Json => {
            let mut s =
                serde_json::to_string_pretty(&to_json(value)).expect("json values serialize");
            s.push('\n');
            s
        }
    }
}

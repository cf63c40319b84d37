//! Certificates for `k(G) <= k` claims: a digraph witness, the added
//! isolated vertices, and the derivation tree recording how the witness
//! was assembled. The text format is bit-exact and diffable.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::graph::{Digraph, Edge, Graph, ParseError, ParseErrorKind, VertexId};

/// One node of a derivation tree. `Compose` is the glue step that unions
/// two witnesses over a shared clique; the split kinds record why the
/// decomposition they wrap is sound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Derivation {
    /// Elimination-order witness for a chordal (sub)graph; `prey` is the
    /// fresh isolated vertex, absent for edgeless graphs.
    Chordal {
        clique: Vec<VertexId>,
        prey: Option<VertexId>,
    },
    /// The wrapped composition is justified by removing `edge`, which
    /// admits no avoiding path around its hole.
    EdgeSplit { edge: Edge, inner: Box<Derivation> },
    /// The wrapped composition is justified by the vertex cut `cut`
    /// separating `component`; `pivot` is the suppressed hole edge and
    /// `ear` the short-detour vertex that forced the cut.
    CutSplit {
        cut: Vec<VertexId>,
        component: Vec<VertexId>,
        pivot: (VertexId, VertexId),
        ear: VertexId,
        inner: Box<Derivation>,
    },
    /// Union of two witnesses whose graphs overlap exactly in the clique
    /// `shared`, the right-hand side being a chordal witness.
    Compose {
        shared: Vec<VertexId>,
        left: Box<Derivation>,
        right: Box<Derivation>,
    },
    /// Exhaustive-search witness; `searched_k` is the value it proved.
    Exact { searched_k: usize },
}

impl Derivation {
    pub fn uses_exact(&self) -> bool {
        match self {
            Derivation::Chordal { .. } => false,
            Derivation::Exact { .. } => true,
            Derivation::EdgeSplit { inner, .. } | Derivation::CutSplit { inner, .. } => {
                inner.uses_exact()
            }
            Derivation::Compose { left, right, .. } => left.uses_exact() || right.uses_exact(),
        }
    }
}

/// A checkable proof that `k(target) <= k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub target: Graph,
    pub k: usize,
    pub digraph: Digraph,
    pub isolated: BTreeSet<VertexId>,
    pub derivation: Derivation,
    pub fallback_used: bool,
}

fn id_list(ids: &[VertexId]) -> String {
    if ids.is_empty() {
        "-".to_owned()
    } else {
        ids.iter().map(VertexId::as_str).collect::<Vec<_>>().join(",")
    }
}

fn write_node(out: &mut String, node: &Derivation, depth: usize) {
    let pad = "  ".repeat(depth);
    match node {
        Derivation::Chordal { clique, prey } => {
            let prey = prey.as_ref().map_or("-".to_owned(), ToString::to_string);
            let _ = writeln!(out, "{pad}chordal clique={} prey={prey}", id_list(clique));
        }
        Derivation::EdgeSplit { edge, inner } => {
            let _ = writeln!(out, "{pad}edgesplit edge={},{}", edge.lo(), edge.hi());
            write_node(out, inner, depth + 1);
        }
        Derivation::CutSplit { cut, component, pivot, ear, inner } => {
            let _ = writeln!(
                out,
                "{pad}cutsplit cut={} q={} pivot={},{} ear={ear}",
                id_list(cut),
                id_list(component),
                pivot.0,
                pivot.1,
            );
            write_node(out, inner, depth + 1);
        }
        Derivation::Compose { shared, left, right } => {
            let _ = writeln!(out, "{pad}compose x={}", id_list(shared));
            write_node(out, left, depth + 1);
            write_node(out, right, depth + 1);
        }
        Derivation::Exact { searched_k } => {
            let _ = writeln!(out, "{pad}exact k={searched_k}");
        }
    }
}

impl Certificate {
    /// Renders everything except the target graph, which travels in its
    /// own file.
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "certificate k={} fallback={}\n",
            self.k,
            u8::from(self.fallback_used)
        );
        out.push_str(&self.digraph.to_text());
        out.push_str("isolated");
        for v in &self.isolated {
            let _ = write!(out, " {v}");
        }
        out.push('\n');
        write_node(&mut out, &self.derivation, 0);
        out
    }

    pub fn parse(text: &str, target: Graph) -> Result<Certificate, ParseError> {
        Parser::new(text).parse(target)
    }
}

struct Parser<'a> {
    lines: Vec<(usize, &'a str)>,
    at: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        let lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .collect();
        Parser { lines, at: 0 }
    }

    fn fail<T>(&self, line: usize, content: &str) -> Result<T, ParseError> {
        Err(ParseError { line, kind: ParseErrorKind::Malformed(content.to_owned()) })
    }

    fn parse(mut self, target: Graph) -> Result<Certificate, ParseError> {
        let (line, header) = *self
            .lines
            .first()
            .ok_or(ParseError { line: 1, kind: ParseErrorKind::Malformed(String::new()) })?;
        let rest = match header.strip_prefix("certificate k=") {
            Some(rest) => rest,
            None => return self.fail(line, header),
        };
        let (k, fallback_used) = match rest.split_once(" fallback=") {
            Some((k, f)) => {
                let k = k.parse::<usize>().map_err(|_| ParseError {
                    line,
                    kind: ParseErrorKind::Malformed(header.to_owned()),
                })?;
                let fallback = match f {
                    "0" => false,
                    "1" => true,
                    _ => return self.fail(line, header),
                };
                (k, fallback)
            }
            None => return self.fail(line, header),
        };
        self.at = 1;

        let mut digraph_text = String::new();
        while self.at < self.lines.len() {
            let (_, l) = self.lines[self.at];
            if l.starts_with("v ") || l.starts_with("a ") {
                digraph_text.push_str(l);
                digraph_text.push('\n');
                self.at += 1;
            } else {
                break;
            }
        }
        let digraph = Digraph::parse(&digraph_text).map_err(|e| ParseError {
            line: e.line + 1,
            kind: e.kind,
        })?;

        let (line, l) = *self
            .lines
            .get(self.at)
            .ok_or(ParseError { line: 0, kind: ParseErrorKind::Malformed("eof".into()) })?;
        let isolated = match l.strip_prefix("isolated") {
            Some(rest) => rest
                .split_whitespace()
                .map(|t| {
                    VertexId::new(t).map_err(|e| ParseError { line, kind: e.into() })
                })
                .collect::<Result<BTreeSet<_>, _>>()?,
            None => return self.fail(line, l),
        };
        self.at += 1;

        let derivation = self.parse_node(0)?;
        if self.at != self.lines.len() {
            let (line, l) = self.lines[self.at];
            return self.fail(line, l);
        }
        Ok(Certificate { target, k, digraph, isolated, derivation, fallback_used })
    }

    fn parse_ids(&self, line: usize, field: &str) -> Result<Vec<VertexId>, ParseError> {
        if field == "-" {
            return Ok(Vec::new());
        }
        field
            .split(',')
            .map(|t| VertexId::new(t).map_err(|e| ParseError { line, kind: e.into() }))
            .collect()
    }

    fn take_field<'s>(
        &self,
        line: usize,
        raw: &'s str,
        token: Option<&'s str>,
        key: &str,
    ) -> Result<&'s str, ParseError> {
        token
            .and_then(|t| t.strip_prefix(key))
            .and_then(|t| t.strip_prefix('='))
            .ok_or(ParseError { line, kind: ParseErrorKind::Malformed(raw.to_owned()) })
    }

    fn parse_node(&mut self, depth: usize) -> Result<Derivation, ParseError> {
        let (line, raw) = *self
            .lines
            .get(self.at)
            .ok_or(ParseError { line: 0, kind: ParseErrorKind::Malformed("eof".into()) })?;
        let expected_pad = "  ".repeat(depth);
        let body = match raw.strip_prefix(expected_pad.as_str()) {
            Some(b) if !b.starts_with(' ') => b,
            _ => return self.fail(line, raw),
        };
        self.at += 1;
        let mut tokens = body.split_whitespace();
        match tokens.next() {
            Some("chordal") => {
                let clique = self.take_field(line, raw, tokens.next(), "clique")?;
                let clique = self.parse_ids(line, clique)?;
                let prey = self.take_field(line, raw, tokens.next(), "prey")?;
                let prey = if prey == "-" {
                    None
                } else {
                    Some(VertexId::new(prey).map_err(|e| ParseError { line, kind: e.into() })?)
                };
                Ok(Derivation::Chordal { clique, prey })
            }
            Some("edgesplit") => {
                let edge = self.take_field(line, raw, tokens.next(), "edge")?;
                let ids = self.parse_ids(line, edge)?;
                if ids.len() != 2 {
                    return self.fail(line, raw);
                }
                let edge = Edge::try_new(ids[0].clone(), ids[1].clone())
                    .map_err(|e| ParseError { line, kind: e.into() })?;
                let inner = Box::new(self.parse_node(depth + 1)?);
                Ok(Derivation::EdgeSplit { edge, inner })
            }
            Some("cutsplit") => {
                let cut = self.take_field(line, raw, tokens.next(), "cut")?;
                let cut = self.parse_ids(line, cut)?;
                let q = self.take_field(line, raw, tokens.next(), "q")?;
                let component = self.parse_ids(line, q)?;
                let pivot = self.take_field(line, raw, tokens.next(), "pivot")?;
                let pivot_ids = self.parse_ids(line, pivot)?;
                if pivot_ids.len() != 2 {
                    return self.fail(line, raw);
                }
                let ear = self.take_field(line, raw, tokens.next(), "ear")?;
                let ear = VertexId::new(ear).map_err(|e| ParseError { line, kind: e.into() })?;
                let inner = Box::new(self.parse_node(depth + 1)?);
                Ok(Derivation::CutSplit {
                    cut,
                    component,
                    pivot: (pivot_ids[0].clone(), pivot_ids[1].clone()),
                    ear,
                    inner,
                })
            }
            Some("compose") => {
                let shared = self.take_field(line, raw, tokens.next(), "x")?;
                let shared = self.parse_ids(line, shared)?;
                let left = Box::new(self.parse_node(depth + 1)?);
                let right = Box::new(self.parse_node(depth + 1)?);
                Ok(Derivation::Compose { shared, left, right })
            }
            Some("exact") => {
                let k = self.take_field(line, raw, tokens.next(), "k")?;
                let searched_k = k
                    .parse::<usize>()
                    .map_err(|_| ParseError { line, kind: ParseErrorKind::Malformed(raw.to_owned()) })?;
                Ok(Derivation::Exact { searched_k })
            }
            _ => self.fail(line, raw),
        }
    }
}

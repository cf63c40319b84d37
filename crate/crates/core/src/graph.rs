//! Value-semantic graph and digraph types plus the line-oriented text
//! formats shared by every tool in this workspace.
//!
//! Graph files: `# comment`, `v <id>`, `e <id> <id>`.
//! Digraph files: `# comment`, `v <id>`, `a <id> > <id>`.
//! Serializers emit `v` lines for isolated vertices only, then sorted
//! `e`/`a` lines, so parse∘serialize is the identity on canonical files.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex token must be a nonempty string over [A-Za-z0-9_], got {0:?}")]
    BadToken(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("vertex {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("edge {0} is not in the graph")]
    MissingEdge(Edge),
}

#[derive(Debug, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum ParseErrorKind {
    #[error("malformed line {0:?}")]
    Malformed(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An opaque vertex token: nonempty, over `[A-Za-z0-9_]`, totally ordered
/// by its text rendering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(String);

impl VertexId {
    pub fn new(token: &str) -> Result<Self, GraphError> {
        if token.is_empty() || !token.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_') {
            return Err(GraphError::BadToken(token.to_owned()));
        }
        Ok(VertexId(token.to_owned()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for VertexId {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VertexId::new(s)
    }
}

/// Convenience constructor for tests and fixtures. Panics on a bad token.
pub fn vid(token: &str) -> VertexId {
    VertexId::new(token).expect("valid vertex token")
}

/// An undirected edge; equality ignores orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    lo: VertexId,
    hi: VertexId,
}

impl Edge {
    /// Panics if both endpoints are equal; use [`Edge::try_new`] on
    /// untrusted input.
    pub fn new(u: VertexId, v: VertexId) -> Self {
        Edge::try_new(u, v).expect("edge endpoints must be distinct")
    }

    pub fn try_new(u: VertexId, v: VertexId) -> Result<Self, GraphError> {
        match u.cmp(&v) {
            std::cmp::Ordering::Less => Ok(Edge { lo: u, hi: v }),
            std::cmp::Ordering::Greater => Ok(Edge { lo: v, hi: u }),
            std::cmp::Ordering::Equal => Err(GraphError::SelfLoop(u)),
        }
    }

    pub fn lo(&self) -> &VertexId {
        &self.lo
    }

    pub fn hi(&self) -> &VertexId {
        &self.hi
    }

    pub fn endpoints(&self) -> (&VertexId, &VertexId) {
        (&self.lo, &self.hi)
    }

    /// The endpoint that is not `v`, if `v` is an endpoint at all.
    pub fn other(&self, v: &VertexId) -> Option<&VertexId> {
        if *v == self.lo {
            Some(&self.hi)
        } else if *v == self.hi {
            Some(&self.lo)
        } else {
            None
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.lo, self.hi)
    }
}

/// A finite simple undirected graph. Immutable by convention once built:
/// the structural operations return fresh values.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Graph {
    adj: BTreeMap<VertexId, BTreeSet<VertexId>>,
}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.adj.entry(v).or_default();
    }

    /// Inserts an edge, declaring both endpoints. Duplicate insertions are
    /// idempotent; self-loops are rejected.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj.entry(u.clone()).or_default().insert(v.clone());
        self.adj.entry(v).or_default().insert(u);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.adj.contains_key(v)
    }

    pub fn has_edge(&self, u: &VertexId, v: &VertexId) -> bool {
        self.adj.get(u).is_some_and(|nb| nb.contains(v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.adj.keys()
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.adj.keys().cloned().collect()
    }

    pub fn neighbors(&self, v: &VertexId) -> impl Iterator<Item = &VertexId> {
        self.adj.get(v).into_iter().flatten()
    }

    pub fn degree(&self, v: &VertexId) -> usize {
        self.adj.get(v).map_or(0, BTreeSet::len)
    }

    /// Edges sorted by (lo, hi) endpoint.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, nb) in &self.adj {
            for v in nb.range(u.clone()..).skip_while(|w| *w <= u) {
                out.push(Edge::new(u.clone(), v.clone()));
            }
        }
        out
    }

    /// True when `s` induces a complete subgraph.
    pub fn is_clique(&self, s: &BTreeSet<VertexId>) -> bool {
        let members: Vec<_> = s.iter().collect();
        for (i, u) in members.iter().enumerate() {
            for v in &members[i + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }

    /// The subgraph induced by `s`, which must be a subset of the vertex set.
    pub fn induced_subgraph(&self, s: &BTreeSet<VertexId>) -> Result<Graph, GraphError> {
        let mut g = Graph::new();
        for v in s {
            if !self.has_vertex(v) {
                return Err(GraphError::MissingVertex(v.clone()));
            }
            g.add_vertex(v.clone());
        }
        for v in s {
            for w in self.neighbors(v) {
                if w > v && s.contains(w) {
                    g.add_edge(v.clone(), w.clone())?;
                }
            }
        }
        Ok(g)
    }

    /// Same vertices with `e` removed; errors when `e` is absent.
    pub fn remove_edge(&self, e: &Edge) -> Result<Graph, GraphError> {
        if !self.has_edge(e.lo(), e.hi()) {
            return Err(GraphError::MissingEdge(e.clone()));
        }
        let mut g = self.clone();
        g.adj.get_mut(e.lo()).unwrap().remove(e.hi());
        g.adj.get_mut(e.hi()).unwrap().remove(e.lo());
        Ok(g)
    }

    /// Maximal connected vertex sets, ordered by least member.
    pub fn connected_components(&self) -> Vec<BTreeSet<VertexId>> {
        let mut seen = BTreeSet::new();
        let mut components = Vec::new();
        for start in self.adj.keys() {
            if seen.contains(start) {
                continue;
            }
            let mut comp = BTreeSet::new();
            let mut queue = VecDeque::from([start.clone()]);
            seen.insert(start.clone());
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(&v) {
                    if seen.insert(w.clone()) {
                        queue.push_back(w.clone());
                    }
                }
                comp.insert(v);
            }
            components.push(comp);
        }
        components
    }

    pub fn parse(text: &str) -> Result<Graph, ParseError> {
        let mut g = Graph::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let bad = |_| ParseError {
                line,
                kind: ParseErrorKind::Malformed(raw.to_owned()),
            };
            let mut tokens = raw.split_whitespace();
            match tokens.next() {
                None => continue,
                Some("#") => continue,
                Some(cmd) if cmd.starts_with('#') => continue,
                Some("v") => {
                    let id = tokens.next().ok_or(()).map_err(bad)?;
                    if tokens.next().is_some() {
                        return Err(bad(()));
                    }
                    let id = VertexId::new(id).map_err(|e| ParseError { line, kind: e.into() })?;
                    g.add_vertex(id);
                }
                Some("e") => {
                    let u = tokens.next().ok_or(()).map_err(bad)?;
                    let v = tokens.next().ok_or(()).map_err(bad)?;
                    if tokens.next().is_some() {
                        return Err(bad(()));
                    }
                    let u = VertexId::new(u).map_err(|e| ParseError { line, kind: e.into() })?;
                    let v = VertexId::new(v).map_err(|e| ParseError { line, kind: e.into() })?;
                    g.add_edge(u, v).map_err(|e| ParseError { line, kind: e.into() })?;
                }
                Some(_) => return Err(bad(())),
            }
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, nb) in &self.adj {
            if nb.is_empty() {
                out.push_str(&format!("v {v}\n"));
            }
        }
        for e in self.edges() {
            out.push_str(&format!("e {} {}\n", e.lo(), e.hi()));
        }
        out
    }
}

/// A finite simple directed graph (no loops, no parallel arcs).
/// Acyclicity is a checked property, never an assumption of the type.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Digraph {
    vertices: BTreeSet<VertexId>,
    arcs: BTreeSet<(VertexId, VertexId)>,
}

impl Digraph {
    pub fn new() -> Self {
        Digraph::default()
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_arc(&mut self, from: VertexId, to: VertexId) -> Result<(), GraphError> {
        if from == to {
            return Err(GraphError::SelfLoop(from));
        }
        self.vertices.insert(from.clone());
        self.vertices.insert(to.clone());
        self.arcs.insert((from, to));
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_vertex(&self, v: &VertexId) -> bool {
        self.vertices.contains(v)
    }

    pub fn has_arc(&self, from: &VertexId, to: &VertexId) -> bool {
        self.arcs.contains(&(from.clone(), to.clone()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn arcs(&self) -> impl Iterator<Item = &(VertexId, VertexId)> {
        self.arcs.iter()
    }

    pub fn in_neighbors(&self, v: &VertexId) -> Vec<&VertexId> {
        self.arcs.iter().filter(|(_, t)| t == v).map(|(s, _)| s).collect()
    }

    pub fn out_neighbors(&self, v: &VertexId) -> Vec<&VertexId> {
        let lo = (v.clone(), VertexId(String::new()));
        self.arcs
            .range(lo..)
            .take_while(|(s, _)| s == v)
            .map(|(_, t)| t)
            .collect()
    }

    pub fn in_degree(&self, v: &VertexId) -> usize {
        self.arcs.iter().filter(|(_, t)| t == v).count()
    }

    /// Vertex-and-arc union of two digraphs.
    pub fn union(&self, other: &Digraph) -> Digraph {
        let mut d = self.clone();
        d.vertices.extend(other.vertices.iter().cloned());
        d.arcs.extend(other.arcs.iter().cloned());
        d
    }

    pub fn parse(text: &str) -> Result<Digraph, ParseError> {
        let mut d = Digraph::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let bad = |_| ParseError {
                line,
                kind: ParseErrorKind::Malformed(raw.to_owned()),
            };
            let mut tokens = raw.split_whitespace();
            match tokens.next() {
                None => continue,
                Some(cmd) if cmd.starts_with('#') => continue,
                Some("v") => {
                    let id = tokens.next().ok_or(()).map_err(bad)?;
                    if tokens.next().is_some() {
                        return Err(bad(()));
                    }
                    let id = VertexId::new(id).map_err(|e| ParseError { line, kind: e.into() })?;
                    d.add_vertex(id);
                }
                Some("a") => {
                    let from = tokens.next().ok_or(()).map_err(bad)?;
                    if tokens.next() != Some(">") {
                        return Err(bad(()));
                    }
                    let to = tokens.next().ok_or(()).map_err(bad)?;
                    if tokens.next().is_some() {
                        return Err(bad(()));
                    }
                    let from = VertexId::new(from).map_err(|e| ParseError { line, kind: e.into() })?;
                    let to = VertexId::new(to).map_err(|e| ParseError { line, kind: e.into() })?;
                    d.add_arc(from, to).map_err(|e| ParseError { line, kind: e.into() })?;
                }
                Some(_) => return Err(bad(())),
            }
        }
        Ok(d)
    }

    pub fn to_text(&self) -> String {
        let mut touched = BTreeSet::new();
        for (s, t) in &self.arcs {
            touched.insert(s);
            touched.insert(t);
        }
        let mut out = String::new();
        for v in &self.vertices {
            if !touched.contains(v) {
                out.push_str(&format!("v {v}\n"));
            }
        }
        for (s, t) in &self.arcs {
            out.push_str(&format!("a {s} > {t}\n"));
        }
        out
    }
}

/// Deterministic supply of fresh vertex names: the first token of the
/// sequence `_z0`, `_z1`, ... that collides with nothing seen so far.
#[derive(Debug, Clone)]
pub struct FreshNamer {
    used: BTreeSet<VertexId>,
    next: usize,
}

impl FreshNamer {
    pub fn new() -> Self {
        FreshNamer { used: BTreeSet::new(), next: 0 }
    }

    pub fn for_graph(g: &Graph) -> Self {
        let mut namer = FreshNamer::new();
        namer.reserve_graph(g);
        namer
    }

    pub fn reserve_graph(&mut self, g: &Graph) {
        self.used.extend(g.vertices().cloned());
    }

    pub fn reserve(&mut self, v: &VertexId) {
        self.used.insert(v.clone());
    }

    pub fn fresh(&mut self) -> VertexId {
        loop {
            let candidate = VertexId(format!("_z{}", self.next));
            self.next += 1;
            if self.used.insert(candidate.clone()) {
                return candidate;
            }
        }
    }
}

impl Default for FreshNamer {
    fn default() -> Self {
        FreshNamer::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path3() -> Graph {
        Graph::parse("e a b\ne b c").unwrap()
    }

    #[test]
    fn parse_path() {
        let g = path3();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(&vid("a"), &vid("b")));
        assert!(g.has_edge(&vid("b"), &vid("c")));
        assert!(!g.has_edge(&vid("a"), &vid("c")));
    }

    #[test]
    fn parse_isolated_vertices() {
        let g = Graph::parse("v a\nv b").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn parse_duplicate_edge_is_idempotent() {
        let g = Graph::parse("e a b\ne a b").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parse_rejects_self_loop_with_line_number() {
        let err = Graph::parse("e a b\ne c c").unwrap_err();
        assert_eq!(err.line, 2);
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::SelfLoop(_))));
    }

    #[test]
    fn parse_rejects_malformed_line() {
        let err = Graph::parse("edge a b").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(matches!(err.kind, ParseErrorKind::Malformed(_)));
    }

    #[test]
    fn parse_rejects_bad_token() {
        assert!(Graph::parse("e a b-c").is_err());
        assert!(VertexId::new("").is_err());
        assert!(VertexId::new("ok_1").is_ok());
    }

    #[test]
    fn comments_and_blank_lines_ignored() {
        let g = Graph::parse("# header\n\ne a b\n#trail\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn serializer_sorts_and_round_trips() {
        let g = Graph::parse("e b c\nv z\ne a b").unwrap();
        let text = g.to_text();
        assert_eq!(text, "v z\ne a b\ne b c\n");
        assert_eq!(Graph::parse(&text).unwrap(), g);
    }

    #[test]
    fn induced_subgraph_of_c4() {
        let c4 = Graph::parse("e a b\ne b c\ne c d\ne a d").unwrap();
        let s: BTreeSet<_> = [vid("a"), vid("b"), vid("c")].into();
        let sub = c4.induced_subgraph(&s).unwrap();
        assert_eq!(sub.edge_count(), 2);
        assert!(sub.has_edge(&vid("a"), &vid("b")));
        assert!(sub.has_edge(&vid("b"), &vid("c")));
    }

    #[test]
    fn induced_subgraph_on_empty_set() {
        let g = path3();
        let sub = g.induced_subgraph(&BTreeSet::new()).unwrap();
        assert_eq!(sub.vertex_count(), 0);
        assert_eq!(sub.edge_count(), 0);
    }

    #[test]
    fn induced_subgraph_rejects_foreign_vertex() {
        let g = path3();
        let s: BTreeSet<_> = [vid("a"), vid("q")].into();
        assert!(matches!(g.induced_subgraph(&s), Err(GraphError::MissingVertex(_))));
    }

    #[test]
    fn remove_edge_from_c4_gives_p4() {
        let c4 = Graph::parse("e a b\ne b c\ne c d\ne a d").unwrap();
        let g = c4.remove_edge(&Edge::new(vid("a"), vid("b"))).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(!g.has_edge(&vid("a"), &vid("b")));
    }

    #[test]
    fn remove_edge_from_triangle() {
        let k3 = Graph::parse("e x y\ne y z\ne x z").unwrap();
        let g = k3.remove_edge(&Edge::new(vid("x"), vid("y"))).unwrap();
        assert_eq!(g.edge_count(), 2);
    }

    #[test]
    fn remove_missing_edge_errors() {
        let g = path3();
        assert!(matches!(
            g.remove_edge(&Edge::new(vid("a"), vid("c"))),
            Err(GraphError::MissingEdge(_))
        ));
    }

    #[test]
    fn remove_then_re_add_restores() {
        let c4 = Graph::parse("e a b\ne b c\ne c d\ne a d").unwrap();
        let mut g = c4.remove_edge(&Edge::new(vid("c"), vid("d"))).unwrap();
        g.add_edge(vid("c"), vid("d")).unwrap();
        assert_eq!(g, c4);
    }

    #[test]
    fn components_of_p4() {
        let p4 = Graph::parse("e a b\ne b c\ne c d").unwrap();
        let comps = p4.connected_components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].len(), 4);
    }

    #[test]
    fn components_of_two_disjoint_edges() {
        let g = Graph::parse("e a b\ne c d").unwrap();
        let comps = g.connected_components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0], [vid("a"), vid("b")].into());
        assert_eq!(comps[1], [vid("c"), vid("d")].into());
    }

    #[test]
    fn components_of_domino_minus_cut() {
        // FIX-DOMINO with {b, e} deleted splits into {a, d} and {c, f}.
        let domino = Graph::parse("e a b\ne b c\ne d e\ne e f\ne a d\ne b e\ne c f").unwrap();
        let keep: BTreeSet<_> = [vid("a"), vid("c"), vid("d"), vid("f")].into();
        let g = domino.induced_subgraph(&keep).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps, vec![[vid("a"), vid("d")].into(), [vid("c"), vid("f")].into()]);
    }

    #[test]
    fn digraph_parse_and_arcs() {
        let d = Digraph::parse("a u > w\na v > w").unwrap();
        assert_eq!(d.vertex_count(), 3);
        assert_eq!(d.arc_count(), 2);
        assert!(d.has_arc(&vid("u"), &vid("w")));
        assert_eq!(d.in_degree(&vid("w")), 2);
        assert_eq!(d.in_degree(&vid("u")), 0);
    }

    #[test]
    fn digraph_parse_empty() {
        let d = Digraph::parse("").unwrap();
        assert_eq!(d.vertex_count(), 0);
        assert_eq!(d.arc_count(), 0);
    }

    #[test]
    fn digraph_rejects_loop_arc() {
        let err = Digraph::parse("a u > u").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(matches!(err.kind, ParseErrorKind::Graph(GraphError::SelfLoop(_))));
    }

    #[test]
    fn digraph_serializer_round_trips() {
        let d = Digraph::parse("v q\na u > w\na v > w").unwrap();
        let text = d.to_text();
        assert_eq!(text, "v q\na u > w\na v > w\n");
        assert_eq!(Digraph::parse(&text).unwrap(), d);
    }

    #[test]
    fn fresh_namer_skips_used_tokens() {
        let g = Graph::parse("v _z0\nv _z2").unwrap();
        let mut namer = FreshNamer::for_graph(&g);
        assert_eq!(namer.fresh().as_str(), "_z1");
        assert_eq!(namer.fresh().as_str(), "_z3");
        assert_eq!(namer.fresh().as_str(), "_z4");
    }
}

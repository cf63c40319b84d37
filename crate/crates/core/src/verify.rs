//! Independent certificate checking: competition graphs straight from the
//! definition, acyclicity with witnesses, and the three-clause certificate
//! verdict. This module deliberately shares no code with the construction
//! pipeline; it is the trust anchor.

use std::collections::{BTreeMap, BTreeSet};

use crate::certificate::Certificate;
use crate::graph::{Digraph, Graph, VertexId};

/// The competition graph of `d`: same vertices, an edge between `x` and
/// `y` whenever some vertex is an out-neighbor of both. Derived by
/// iterating over in-neighborhoods and marking all pairs.
pub fn competition_graph(d: &Digraph) -> Graph {
    let mut in_nb: BTreeMap<&VertexId, Vec<&VertexId>> = BTreeMap::new();
    for (from, to) in d.arcs() {
        in_nb.entry(to).or_default().push(from);
    }
    let mut g = Graph::new();
    for v in d.vertices() {
        g.add_vertex(v.clone());
    }
    for preys in in_nb.values() {
        for (i, x) in preys.iter().enumerate() {
            for y in &preys[i + 1..] {
                g.add_edge((*x).clone(), (*y).clone()).expect("arcs have distinct sources");
            }
        }
    }
    g
}

/// Second route to the same graph, kept deliberately naive: for every
/// vertex pair, scan all potential common prey. Used to cross-check the
/// marking implementation.
pub fn competition_graph_pairwise(d: &Digraph) -> Graph {
    let mut g = Graph::new();
    let vertices: Vec<&VertexId> = d.vertices().collect();
    for v in &vertices {
        g.add_vertex((*v).clone());
    }
    for (i, x) in vertices.iter().enumerate() {
        for y in &vertices[i + 1..] {
            let share_prey = vertices
                .iter()
                .any(|p| d.has_arc(x, p) && d.has_arc(y, p));
            if share_prey {
                g.add_edge((*x).clone(), (*y).clone()).expect("distinct by construction");
            }
        }
    }
    g
}

/// Kahn's algorithm with a least-id ready queue. `Ok` carries a
/// deterministic topological order, `Err` a witness cycle.
pub fn is_acyclic(d: &Digraph) -> Result<Vec<VertexId>, Vec<VertexId>> {
    let mut indegree: BTreeMap<&VertexId, usize> =
        d.vertices().map(|v| (v, 0usize)).collect();
    for (_, to) in d.arcs() {
        *indegree.get_mut(to).expect("arc endpoints are vertices") += 1;
    }
    let mut ready: BTreeSet<&VertexId> =
        indegree.iter().filter(|(_, deg)| **deg == 0).map(|(v, _)| *v).collect();
    let mut order = Vec::with_capacity(d.vertex_count());
    while let Some(&v) = ready.iter().next() {
        ready.remove(v);
        order.push(v.clone());
        for w in d.out_neighbors(v) {
            let deg = indegree.get_mut(w).unwrap();
            *deg -= 1;
            if *deg == 0 {
                ready.insert(w);
            }
        }
    }
    if order.len() == d.vertex_count() {
        return Ok(order);
    }

    // Walk forward through the leftover vertices until one repeats.
    let leftover: BTreeSet<&VertexId> = {
        let done: BTreeSet<&VertexId> = order.iter().collect();
        d.vertices().filter(|v| !done.contains(v)).collect()
    };
    let start = *leftover.iter().next().expect("cycle exists");
    let mut seen_at: BTreeMap<&VertexId, usize> = BTreeMap::new();
    let mut walk: Vec<&VertexId> = vec![start];
    loop {
        let cur = walk.last().unwrap();
        if let Some(&first) = seen_at.get(*cur) {
            return Err(walk[first..walk.len() - 1].iter().map(|v| (*v).clone()).collect());
        }
        seen_at.insert(cur, walk.len() - 1);
        let next = d
            .out_neighbors(cur)
            .into_iter()
            .find(|w| leftover.contains(w))
            .expect("every leftover vertex keeps an out-arc into the leftover set");
        walk.push(next);
    }
}

/// Outcome of certificate verification. Rejections name the first failing
/// clause (1: vertex accounting, 2: acyclicity, 3: competition-graph
/// equality) and a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accept,
    Reject { clause: u8, reason: String },
}

impl Verdict {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

fn reject(clause: u8, reason: String) -> Verdict {
    Verdict::Reject { clause, reason }
}

/// Checks that `cert` proves `k(g) <= cert.k`:
/// 1. the witness vertex set is `V(g)` plus exactly `k` fresh isolated
///    vertices;
/// 2. the witness digraph is acyclic;
/// 3. its competition graph equals `g` with the isolated vertices added.
pub fn verify_certificate(g: &Graph, cert: &Certificate) -> Verdict {
    if cert.isolated.len() != cert.k {
        return reject(
            1,
            format!("declared k={} but {} isolated vertices", cert.k, cert.isolated.len()),
        );
    }
    if let Some(v) = cert.isolated.iter().find(|v| g.has_vertex(v)) {
        return reject(1, format!("isolated vertex {v} already occurs in the graph"));
    }
    let mut expected_vertices = g.vertex_set();
    expected_vertices.extend(cert.isolated.iter().cloned());
    if *cert.digraph.vertex_set() != expected_vertices {
        let extra = cert.digraph.vertex_set().difference(&expected_vertices).next();
        let missing = expected_vertices.difference(cert.digraph.vertex_set()).next();
        return reject(
            1,
            match (extra, missing) {
                (Some(v), _) => format!("witness has foreign vertex {v}"),
                (_, Some(v)) => format!("witness is missing vertex {v}"),
                _ => unreachable!("sets differ"),
            },
        );
    }

    if let Err(cycle) = is_acyclic(&cert.digraph) {
        let cycle = cycle.iter().map(VertexId::as_str).collect::<Vec<_>>().join(" ");
        return reject(2, format!("witness digraph has cycle: {cycle}"));
    }

    let mut expected = g.clone();
    for v in &cert.isolated {
        expected.add_vertex(v.clone());
    }
    let actual = competition_graph(&cert.digraph);
    if actual != expected {
        let actual_edges: BTreeSet<_> = actual.edges().into_iter().collect();
        let expected_edges: BTreeSet<_> = expected.edges().into_iter().collect();
        if let Some(e) = actual_edges.difference(&expected_edges).next() {
            return reject(3, format!("competition graph has extra edge {e}"));
        }
        if let Some(e) = expected_edges.difference(&actual_edges).next() {
            return reject(3, format!("competition graph is missing edge {e}"));
        }
        unreachable!("vertex sets already matched");
    }
    Verdict::Accept
}

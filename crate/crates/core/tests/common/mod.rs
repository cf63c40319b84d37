//! Brute-force oracles kept deliberately independent of the library's
//! algorithmic paths: subset enumeration and exhaustive path search only.

// Shared across test binaries; not every binary uses every oracle.
#![allow(dead_code)]

use std::collections::BTreeSet;

use holecert::graph::{Digraph, Graph, VertexId};
use rand::Rng;

/// Every hole of `g` as a vertex set, found by checking each vertex
/// subset of size >= 4 for inducing a cycle (connected, all degrees 2).
/// An induced cycle is determined by its vertex set.
pub fn brute_hole_sets(g: &Graph) -> Vec<BTreeSet<VertexId>> {
    let vertices: Vec<VertexId> = g.vertices().cloned().collect();
    let n = vertices.len();
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        if (mask.count_ones() as usize) < 4 {
            continue;
        }
        let subset: BTreeSet<VertexId> = vertices
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, v)| v.clone())
            .collect();
        let sub = g.induced_subgraph(&subset).unwrap();
        let all_degree_two = subset.iter().all(|v| sub.degree(v) == 2);
        if all_degree_two && sub.connected_components().len() == 1 {
            out.push(subset);
        }
    }
    out
}

pub fn brute_is_chordal(g: &Graph) -> bool {
    brute_hole_sets(g).is_empty()
}

/// All simple paths from `u` to `v` by exhaustive extension.
pub fn all_simple_paths(g: &Graph, u: &VertexId, v: &VertexId) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut path = vec![u.clone()];
    extend_paths(g, v, &mut path, &mut out);
    out
}

fn extend_paths(
    g: &Graph,
    target: &VertexId,
    path: &mut Vec<VertexId>,
    out: &mut Vec<Vec<VertexId>>,
) {
    let last = path.last().unwrap().clone();
    if last == *target {
        out.push(path.clone());
        return;
    }
    let next: Vec<VertexId> = g.neighbors(&last).cloned().collect();
    for w in next {
        if !path.contains(&w) {
            path.push(w);
            extend_paths(g, target, path, out);
            path.pop();
        }
    }
}

/// Shortest avoiding path by exhaustive search, straight from the
/// definition: length >= 2 with interior outside the shield, or a single
/// edge with an endpoint outside it. Ties resolve lexicographically.
pub fn brute_avoiding_path(
    g: &Graph,
    shield: &BTreeSet<VertexId>,
    u: &VertexId,
    v: &VertexId,
) -> Option<Vec<VertexId>> {
    let mut candidates: Vec<Vec<VertexId>> = all_simple_paths(g, u, v)
        .into_iter()
        .filter(|p| {
            if p.len() == 2 {
                !shield.contains(&p[0]) || !shield.contains(&p[1])
            } else {
                p[1..p.len() - 1].iter().all(|x| !shield.contains(x))
            }
        })
        .collect();
    candidates.sort_by_key(|p| (p.len(), p.clone()));
    candidates.into_iter().next()
}

/// A random simple digraph on up to `max_n` vertices.
pub fn random_digraph(rng: &mut impl Rng, max_n: usize) -> Digraph {
    let n = rng.gen_range(1..=max_n);
    let p = rng.gen_range(0.05..0.5);
    let mut d = Digraph::new();
    let ids: Vec<VertexId> = (0..n).map(|i| holecert::vid(&format!("d{i}"))).collect();
    for v in &ids {
        d.add_vertex(v.clone());
    }
    for from in &ids {
        for to in &ids {
            if from != to && rng.gen::<f64>() < p {
                d.add_arc(from.clone(), to.clone()).unwrap();
            }
        }
    }
    d
}

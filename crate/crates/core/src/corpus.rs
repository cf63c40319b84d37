//! Graph generators: the pinned fixtures, named families that exercise
//! each pipeline branch, exhaustive labeled enumerations, and seeded
//! random sampling. Family postconditions are re-checked with the hole
//! enumerator at construction time.

use rand::Rng;

use crate::graph::{vid, Graph, VertexId};
use crate::hole::{c_avoiding_path, enumerate_holes, shared_edge_path, Hole};

/// The handful of graphs whose analysis results are pinned by tests.
pub mod fixtures {
    use super::*;

    /// Two squares glued along one edge: vertices `a..f`, holes `abed`
    /// and `bcfe` sharing the edge `be`.
    pub fn domino() -> Graph {
        Graph::parse("e a b\ne b c\ne d e\ne e f\ne a d\ne b e\ne c f").unwrap()
    }

    /// Square `v0..v3` plus `x` joined to `v0`, `v2`, `v3`: two 4-holes
    /// sharing the two-edge path `v0 v1 v2`.
    pub fn house_x() -> Graph {
        Graph::parse("e v0 v1\ne v1 v2\ne v2 v3\ne v3 v0\ne v2 x\ne x v0\ne v3 x").unwrap()
    }

    /// Five-cycle rim with a hub adjacent to every rim vertex: one hole,
    /// whose full-neighbor set is exactly the hub.
    pub fn wheel5() -> Graph {
        wheel(5)
    }
}

fn vertex(prefix: &str, i: usize) -> VertexId {
    vid(&format!("{prefix}{i}"))
}

/// The cycle `v0 v1 ... v{m-1}`.
pub fn cycle_graph(m: usize) -> Graph {
    assert!(m >= 3);
    let mut g = Graph::new();
    for i in 0..m {
        g.add_edge(vertex("v", i), vertex("v", (i + 1) % m)).unwrap();
    }
    g
}

/// A rim cycle `r0..r{rim-1}` plus a hub adjacent to every rim vertex.
pub fn wheel(rim: usize) -> Graph {
    assert!(rim >= 4);
    let mut g = Graph::new();
    for i in 0..rim {
        g.add_edge(vertex("r", i), vertex("r", (i + 1) % rim)).unwrap();
        g.add_edge(vid("hub"), vertex("r", i)).unwrap();
    }
    let (holes, capped) = enumerate_holes(&g, 3);
    assert!(!capped && holes.len() == 1, "wheel must have exactly the rim hole");
    g
}

fn assert_two_holes(g: &Graph, label: &str) -> (Hole, Hole) {
    let (holes, capped) = enumerate_holes(g, 3);
    assert!(
        !capped && holes.len() == 2,
        "{label}: expected exactly two holes, found {}{}",
        holes.len(),
        if capped { "+" } else { "" }
    );
    let mut it = holes.into_iter();
    (it.next().unwrap(), it.next().unwrap())
}

/// Two cycles of lengths `m` and `m_prime` glued along the single edge
/// `v0 v1`: exactly two holes sharing one edge.
pub fn fused(m: usize, m_prime: usize) -> Graph {
    assert!(m >= 4 && m_prime >= 4);
    let mut g = cycle_graph(m);
    let mut prev = vid("v1");
    for i in 2..m_prime {
        g.add_edge(prev.clone(), vertex("w", i)).unwrap();
        prev = vertex("w", i);
    }
    g.add_edge(prev, vid("v0")).unwrap();
    let (c1, c2) = assert_two_holes(&g, "fused");
    let shared = shared_edge_path(&g, &c1, &c2).unwrap().expect("holes share an edge");
    assert_eq!(shared.edge_count, 1);
    g
}

/// A cycle `v0..v{m-1}` and the second hole `v0 v1 .. v{shared} w`, fused
/// along a path of `shared >= 2` edges; the chords from `w` into the far
/// side of the first cycle close off every other cycle.
pub fn fused_path(m: usize, shared: usize) -> Graph {
    assert!(shared >= 2 && shared + 2 <= m);
    let mut g = cycle_graph(m);
    g.add_edge(vid("w"), vid("v0")).unwrap();
    g.add_edge(vid("w"), vertex("v", shared)).unwrap();
    for j in shared + 1..m {
        g.add_edge(vid("w"), vertex("v", j)).unwrap();
    }
    let (c1, c2) = assert_two_holes(&g, "fused_path");
    let sp = shared_edge_path(&g, &c1, &c2).unwrap().expect("holes share a path");
    assert_eq!(sp.edge_count, shared);
    g
}

fn add_ear(g: &mut Graph, tag: usize, a: VertexId, b: VertexId) {
    let ear = vertex("u", tag);
    g.add_edge(ear.clone(), a).unwrap();
    g.add_edge(ear, b).unwrap();
}

fn assert_all_edges_detour(g: &Graph, c: &Hole, label: &str) {
    for e in c.edges() {
        let detour = c_avoiding_path(g, c, e.lo(), e.hi()).unwrap();
        assert!(detour.is_some(), "{label}: edge {e} has no avoiding path");
    }
}

/// [`fused`] plus one degree-2 ear per edge of the longer hole, so every
/// edge of that hole admits an avoiding path. Ears never create holes:
/// any cycle through one is chorded by the base edge.
pub fn eared_fused(m: usize, m_prime: usize) -> Graph {
    assert!(m >= m_prime);
    let mut g = fused(m, m_prime);
    for i in 0..m {
        add_ear(&mut g, i, vertex("v", i), vertex("v", (i + 1) % m));
    }
    let (c1, c2) = assert_two_holes(&g, "eared_fused");
    let long = if c1.len() >= c2.len() { &c1 } else { &c2 };
    assert_all_edges_detour(&g, long, "eared_fused");
    g
}

/// [`fused_path`] plus ears on the shared edges; the chord vertex `w`
/// already provides detours for the rest of the long hole.
pub fn eared_fused_path(m: usize, shared: usize) -> Graph {
    let mut g = fused_path(m, shared);
    for j in 0..shared {
        add_ear(&mut g, j, vertex("v", j), vertex("v", j + 1));
    }
    let (c1, c2) = assert_two_holes(&g, "eared_fused_path");
    let long = if c1.len() >= c2.len() { &c1 } else { &c2 };
    assert_all_edges_detour(&g, long, "eared_fused_path");
    g
}

/// A cycle with one degree-2 ear per edge: still exactly one hole, but
/// every hole edge admits an avoiding path.
pub fn eared_cycle(m: usize) -> Graph {
    let mut g = cycle_graph(m);
    for i in 0..m {
        add_ear(&mut g, i, vertex("v", i), vertex("v", (i + 1) % m));
    }
    let (holes, capped) = enumerate_holes(&g, 3);
    assert!(!capped && holes.len() == 1, "eared_cycle keeps exactly its base hole");
    assert_all_edges_detour(&g, &holes[0], "eared_cycle");
    g
}

/// Two squares joined by a single bridge edge: two holes sharing no edge,
/// inside one connected component.
pub fn bridged_squares() -> Graph {
    let mut g = cycle_graph(4);
    for i in 0..4 {
        g.add_edge(vertex("w", i), vertex("w", (i + 1) % 4)).unwrap();
    }
    g.add_edge(vid("v0"), vid("w0")).unwrap();
    let (c1, c2) = assert_two_holes(&g, "bridged_squares");
    assert!(shared_edge_path(&g, &c1, &c2).unwrap().is_none());
    g
}

/// Number of vertex pairs, i.e. bits in an edge mask for `n` vertices.
pub fn pair_count(n: usize) -> usize {
    n * (n - 1) / 2
}

/// The labeled graph on `v0..v{n-1}` selected by `mask` over pairs in
/// lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(vertex("v", i));
    }
    let mut bit = 0;
    for i in 0..n {
        for j in i + 1..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(vertex("v", i), vertex("v", j)).unwrap();
            }
            bit += 1;
        }
    }
    g
}

/// Every labeled graph on `n` vertices, in mask order.
pub fn exhaustive_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!(pair_count(n) <= 63, "exhaustive enumeration is for small n");
    (0u64..1 << pair_count(n)).map(move |mask| graph_from_mask(n, mask))
}

/// A draw from G(n, p) on `v0..v{n-1}`.
pub fn random_graph(n: usize, p: f64, rng: &mut impl Rng) -> Graph {
    let mut g = Graph::new();
    for i in 0..n {
        g.add_vertex(vertex("v", i));
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(vertex("v", i), vertex("v", j)).unwrap();
            }
        }
    }
    g
}

/// Rejection-samples G(n, p) until the capped hole count satisfies
/// `accept`; `None` when `tries` draws all miss.
pub fn sample_graph_with_holes(
    n: usize,
    p: f64,
    rng: &mut impl Rng,
    tries: usize,
    accept: impl Fn(usize, bool) -> bool,
) -> Option<Graph> {
    for _ in 0..tries {
        let g = random_graph(n, p, rng);
        let (holes, capped) = enumerate_holes(&g, 3);
        if accept(holes.len(), capped) {
            return Some(g);
        }
    }
    None
}

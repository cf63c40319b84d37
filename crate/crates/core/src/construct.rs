//! The constructive pipeline: elimination-order witnesses for chordal
//! graphs, witness composition over a shared clique, the edge-removal and
//! vertex-cut decompositions, and the recursive certify driver.
//!
//! Nothing here is trusted: every structural conclusion is re-checked at
//! runtime, and any violation degrades to the exact solver instead of
//! risking a wrong certificate.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::certificate::{Certificate, Derivation};
use crate::exact::{exact_k_with_namer, SolveBudget, SolveError};
use crate::graph::{Digraph, Edge, FreshNamer, Graph, VertexId};
use crate::hole::{
    c_avoiding_path, enumerate_holes, peo_with_terminal_clique, shared_edge_path, x_set, Hole,
    HoleError,
};
use crate::verify::{competition_graph, is_acyclic, verify_certificate};

#[derive(Debug, Error)]
pub enum ConstructError {
    #[error("graph is not chordal")]
    NotChordal,
    #[error("{0} is not a clique of the graph")]
    NotAClique(String),
    #[error("composition operands overlap incorrectly: {0}")]
    BadOverlap(String),
    #[error("shared vertex {0} has incoming arcs in the chordal-side witness")]
    SharedIndegree(VertexId),
    #[error("structural check `{clause}` failed: {detail}")]
    StructuralViolation { clause: &'static str, detail: String },
    #[error(transparent)]
    Hole(#[from] HoleError),
}

#[derive(Debug, Error)]
pub enum CertifyError {
    #[error("exact fallback failed: {0}")]
    Fallback(#[from] SolveError),
}

fn violation(clause: &'static str, detail: impl Into<String>) -> ConstructError {
    ConstructError::StructuralViolation { clause, detail: detail.into() }
}

fn set_names(s: &BTreeSet<VertexId>) -> String {
    s.iter().map(VertexId::as_str).collect::<Vec<_>>().join(",")
}

/// Builds an acyclic digraph `D` with `C(D) = g ∪ {a}` for a fresh vertex
/// `a`, in which every vertex of the clique `x` has indegree 0.
///
/// The elimination order puts `x` last. Walking it from the back, each
/// position whose clique (vertex plus later neighbors) covers a
/// still-uncovered edge sends arcs from that whole clique to the previous
/// vertex in the order; the first position feeds `a` instead and fires
/// whenever the graph has any edge at all. Positions strictly inside the
/// terminal clique are skipped: the clique's first position covers their
/// edges with a prey outside `x`.
pub fn chordal_witness(
    g: &Graph,
    x: &BTreeSet<VertexId>,
) -> Result<(Digraph, VertexId), ConstructError> {
    let mut namer = FreshNamer::for_graph(g);
    chordal_witness_with(g, x, &mut namer)
}

/// As [`chordal_witness`], drawing the fresh vertex from a shared pool.
pub fn chordal_witness_with(
    g: &Graph,
    x: &BTreeSet<VertexId>,
    namer: &mut FreshNamer,
) -> Result<(Digraph, VertexId), ConstructError> {
    if x.iter().any(|v| !g.has_vertex(v)) || !g.is_clique(x) {
        return Err(ConstructError::NotAClique(set_names(x)));
    }
    let peo = peo_with_terminal_clique(g, x).ok_or(ConstructError::NotChordal)?;
    let order = peo.order();
    let n = order.len();
    let first_clique_pos = n - x.len();
    let pos: BTreeMap<&VertexId, usize> = order.iter().enumerate().map(|(i, v)| (v, i)).collect();

    let a = namer.fresh();
    let mut d = Digraph::new();
    for v in g.vertices() {
        d.add_vertex(v.clone());
    }
    d.add_vertex(a.clone());

    let mut covered: BTreeSet<Edge> = BTreeSet::new();
    for i in (0..n).rev() {
        if i > first_clique_pos {
            continue;
        }
        let v = &order[i];
        let mut clique: Vec<&VertexId> = vec![v];
        clique.extend(g.neighbors(v).filter(|w| pos[w] > i));
        let mut clique_edges = Vec::new();
        for (s, u) in clique.iter().enumerate() {
            for w in &clique[s + 1..] {
                clique_edges.push(Edge::new((*u).clone(), (*w).clone()));
            }
        }
        let fresh_coverage = clique_edges.iter().any(|e| !covered.contains(e));
        let fire = if i == 0 { g.edge_count() > 0 } else { fresh_coverage };
        if !fire {
            continue;
        }
        let prey = if i == 0 { a.clone() } else { order[i - 1].clone() };
        for u in &clique {
            d.add_arc((*u).clone(), prey.clone()).expect("prey is outside its clique");
        }
        covered.extend(clique_edges);
    }

    debug_assert!(x.iter().all(|v| d.in_degree(v) == 0));
    debug_assert!(is_acyclic(&d).is_ok());
    debug_assert!({
        let mut expected = g.clone();
        expected.add_vertex(a.clone());
        competition_graph(&d) == expected
    });
    Ok((d, a))
}

/// Unions two witnesses: `d1` with isolated set `i_k` for the left graph,
/// `d2` with fresh vertex `a` for a chordal right graph, overlapping
/// exactly in the clique `x`, every vertex of which must have indegree 0
/// in `d2`. The caller re-checks the result against the combined graph.
pub fn compose(
    d1: &Digraph,
    i_k: &BTreeSet<VertexId>,
    d2: &Digraph,
    a: &VertexId,
    x: &BTreeSet<VertexId>,
) -> Result<Digraph, ConstructError> {
    let overlap: BTreeSet<VertexId> =
        d1.vertex_set().intersection(d2.vertex_set()).cloned().collect();
    if overlap != *x {
        return Err(ConstructError::BadOverlap(format!(
            "witness vertex sets meet in {{{}}}, expected {{{}}}",
            set_names(&overlap),
            set_names(x),
        )));
    }
    if !i_k.is_subset(d1.vertex_set()) || i_k.iter().any(|v| d2.has_vertex(v)) {
        return Err(ConstructError::BadOverlap(
            "isolated vertices must live only in the left witness".into(),
        ));
    }
    if d1.has_vertex(a) || !d2.has_vertex(a) || i_k.contains(a) {
        return Err(ConstructError::BadOverlap(format!(
            "fresh vertex {a} must live only in the right witness",
        )));
    }
    if let Some(v) = x.iter().find(|v| d2.in_degree(v) > 0) {
        return Err(ConstructError::SharedIndegree(v.clone()));
    }
    Ok(d1.union(d2))
}

/// The first hole edge (in endpoint order) admitting no avoiding path
/// around `c`, if any.
pub fn find_removable_edge(g: &Graph, c: &Hole) -> Result<Option<Edge>, HoleError> {
    for e in c.edges() {
        if c_avoiding_path(g, c, e.lo(), e.hi())?.is_none() {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

/// Outcome of a vertex-cut decomposition. The union of `g1` and `g2`
/// covers the original edge set; they meet exactly in the clique `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutDecomposition {
    /// Piece containing the separated component plus the cut, minus the
    /// pivot edge.
    pub g1: Graph,
    /// Chordal piece induced on everything outside the component.
    pub g2: Graph,
    /// The cut: the hole's full-neighbor set plus the pivot endpoints.
    pub x: BTreeSet<VertexId>,
    /// Index of the pivot edge along the oriented hole.
    pub j: usize,
    /// Pivot endpoints `(v_j, v_{j+1})`.
    pub pivot: (VertexId, VertexId),
    /// Interior vertex of the length-2 detour around the pivot.
    pub ear: VertexId,
    /// Vertex set of the separated component.
    pub component: BTreeSet<VertexId>,
}

/// Relabels `c` cyclically so that the shared path runs
/// `v_0 v_1 ... v_len` starting from its least endpoint.
fn orient_along(c: &Hole, path: &[VertexId]) -> Vec<VertexId> {
    let cycle = c.cycle();
    let m = cycle.len();
    let start = cycle.iter().position(|v| v == &path[0]).expect("path lies on the hole");
    let forward = cycle[(start + 1) % m] == path[1];
    (0..m)
        .map(|step| {
            let i = if forward {
                (start + step) % m
            } else {
                (start + m - step) % m
            };
            cycle[i].clone()
        })
        .collect()
}

struct CutPlan<'a> {
    g: &'a Graph,
    hole: &'a Hole,
    oriented: Vec<VertexId>,
    j: usize,
    x1: BTreeSet<VertexId>,
}

/// Shared machinery for both cut decompositions: finds the ear at the
/// pivot, forms the cut, separates the component and builds both pieces,
/// verifying every clause that does not depend on the hole count of `g1`.
fn cut_at_pivot(plan: &CutPlan) -> Result<CutDecomposition, ConstructError> {
    let CutPlan { g, hole, oriented, j, x1 } = plan;
    let (g, hole, j) = (*g, *hole, *j);
    let m = oriented.len();
    let vj = oriented[j].clone();
    let vj1 = oriented[(j + 1) % m].clone();

    let detour = c_avoiding_path(g, hole, &vj, &vj1)?
        .ok_or_else(|| violation("pivot detour exists", format!("edge {vj} {vj1}")))?;
    if detour.len() != 3 {
        return Err(violation(
            "pivot detour has length 2",
            format!("found length {}", detour.len() - 1),
        ));
    }
    let ear = detour[1].clone();

    let mut x = x1.clone();
    x.insert(vj.clone());
    x.insert(vj1.clone());

    let rest: BTreeSet<VertexId> =
        g.vertex_set().difference(&x).cloned().collect();
    let components = g.induced_subgraph(&rest).expect("subset of vertices").connected_components();
    let remnant: BTreeSet<VertexId> = hole
        .cycle()
        .iter()
        .filter(|v| **v != vj && **v != vj1)
        .cloned()
        .collect();
    let component = components
        .into_iter()
        .find(|comp| remnant.is_subset(comp))
        .ok_or_else(|| violation("hole remnant stays connected", set_names(&remnant)))?;
    if component.contains(&ear) {
        return Err(violation("ear is separated from the hole remnant", ear.to_string()));
    }

    let outside: BTreeSet<VertexId> =
        g.vertex_set().difference(&component).cloned().collect();
    let g2 = g.induced_subgraph(&outside).expect("subset of vertices");
    let mut g1_vertices = component.clone();
    g1_vertices.extend(x.iter().cloned());
    let g1 = g
        .induced_subgraph(&g1_vertices)
        .expect("subset of vertices")
        .remove_edge(&Edge::new(vj.clone(), vj1.clone()))
        .expect("pivot edge is induced");

    if !g2.is_clique(&x) {
        return Err(violation("cut is a clique of the chordal piece", set_names(&x)));
    }
    let meet: BTreeSet<VertexId> =
        g1.vertex_set().intersection(&g2.vertex_set()).cloned().collect();
    if meet != x {
        return Err(violation("pieces meet exactly in the cut", set_names(&meet)));
    }
    let mut union_edges: BTreeSet<Edge> = g1.edges().into_iter().collect();
    union_edges.extend(g2.edges());
    if union_edges != g.edges().into_iter().collect() {
        return Err(violation("pieces cover the edge set", "edge union mismatch"));
    }

    Ok(CutDecomposition { g1, g2, x, j, pivot: (vj, vj1), ear, component })
}

fn hole_count(g: &Graph, cap: usize) -> (usize, bool) {
    let (holes, capped) = enumerate_holes(g, cap);
    (holes.len(), capped)
}

/// Decomposes a graph with exactly two holes (`c1` at least as long as
/// `c2`, sharing at least one edge, every `c1` edge admitting an avoiding
/// path) into a one-hole piece and a chordal piece meeting in a clique
/// cut. Every conclusion is verified; any failure is reported as a
/// structural violation rather than returned unchecked.
pub fn avoid2_decompose(
    g: &Graph,
    c1: &Hole,
    c2: &Hole,
) -> Result<CutDecomposition, ConstructError> {
    if c1.len() < c2.len() {
        return Err(violation("first hole is at least as long", String::new()));
    }
    let shared = shared_edge_path(g, c1, c2)?
        .ok_or_else(|| violation("holes share an edge", String::new()))?;
    for e in c1.edges() {
        if c_avoiding_path(g, c1, e.lo(), e.hi())?.is_none() {
            return Err(violation("every hole edge has an avoiding path", e.to_string()));
        }
    }

    let oriented = orient_along(c1, &shared.path);
    let j = if shared.edge_count == 1 { 2 } else { 0 };
    let plan = CutPlan { g, hole: c1, oriented, j, x1: x_set(g, c1)? };
    let dec = cut_at_pivot(&plan)?;

    if dec.component.contains(&dec.ear) || c2.contains(&dec.ear) {
        return Err(violation("ear avoids the second hole", dec.ear.to_string()));
    }
    // A single shared edge keeps the second hole alive inside the piece;
    // a longer overlap makes the pivot a shared edge, which kills both
    // holes at once and leaves the piece chordal.
    match hole_count(&dec.g1, 2) {
        (found, false) if found <= 1 => {
            debug_assert_eq!(found == 1, shared.edge_count == 1);
        }
        (found, capped) => {
            return Err(violation(
                "separated piece has at most one hole",
                format!("found {found}{}", if capped { "+" } else { "" }),
            ));
        }
    }
    match crate::hole::chordality(&dec.g2) {
        crate::hole::Chordality::Chordal(_) => {}
        crate::hole::Chordality::HasHole(h) => {
            return Err(violation(
                "outside piece is chordal",
                h.cycle().iter().map(VertexId::as_str).collect::<Vec<_>>().join(" "),
            ));
        }
    }
    Ok(dec)
}

/// One-hole analogue of [`avoid2_decompose`]: with no second hole to pin
/// the pivot, every position is tried in order and the first fully
/// verified decomposition (chordal on both sides once the pivot edge is
/// dropped) wins.
fn one_hole_cut(g: &Graph, c: &Hole) -> Result<CutDecomposition, ConstructError> {
    let x1 = x_set(g, c)?;
    let oriented: Vec<VertexId> = c.cycle().to_vec();
    let mut last_failure = violation("one-hole cut applies", "no pivot attempted");
    for j in 0..oriented.len() {
        let plan = CutPlan { g, hole: c, oriented: oriented.clone(), j, x1: x1.clone() };
        match cut_at_pivot(&plan) {
            Ok(dec) => {
                match hole_count(&dec.g1, 1) {
                    (0, false) => {}
                    (found, capped) => {
                        last_failure = violation(
                            "separated piece is chordal",
                            format!("found {found}{}", if capped { "+" } else { "" }),
                        );
                        continue;
                    }
                }
                match crate::hole::chordality(&dec.g2) {
                    crate::hole::Chordality::Chordal(_) => return Ok(dec),
                    crate::hole::Chordality::HasHole(_) => {
                        last_failure = violation("outside piece is chordal", String::new());
                        continue;
                    }
                }
            }
            Err(e) => last_failure = e,
        }
    }
    Err(last_failure)
}

type Piece = (Digraph, BTreeSet<VertexId>, Derivation);

struct Driver<'a> {
    budget: &'a SolveBudget,
    namer: FreshNamer,
}

impl Driver<'_> {
    fn exact_piece(&mut self, g: &Graph) -> Result<Piece, CertifyError> {
        let witness = exact_k_with_namer(g, self.budget, &mut self.namer)?;
        Ok((witness.digraph, witness.isolated, Derivation::Exact { searched_k: witness.k }))
    }

    fn chordal_piece(&mut self, g: &Graph) -> Result<Option<Piece>, CertifyError> {
        if g.edge_count() == 0 {
            let mut d = Digraph::new();
            for v in g.vertices() {
                d.add_vertex(v.clone());
            }
            let derivation = Derivation::Chordal { clique: vec![], prey: None };
            return Ok(Some((d, BTreeSet::new(), derivation)));
        }
        match chordal_witness_with(g, &BTreeSet::new(), &mut self.namer) {
            Ok((d, a)) => {
                let derivation =
                    Derivation::Chordal { clique: vec![], prey: Some(a.clone()) };
                Ok(Some((d, [a].into(), derivation)))
            }
            Err(_) => Ok(None),
        }
    }

    /// Composes a recursive piece for `g1` with a chordal witness for
    /// `g2` over the clique `x`, re-checking the combined result against
    /// `g`. `None` means some step refused and the caller should try the
    /// next strategy.
    fn composed_piece(
        &mut self,
        g: &Graph,
        left: Piece,
        g2: &Graph,
        x: &BTreeSet<VertexId>,
    ) -> Result<Option<(Piece, VertexId)>, CertifyError> {
        let (d1, i1, deriv1) = left;
        let Ok((d2, a)) = chordal_witness_with(g2, x, &mut self.namer) else {
            return Ok(None);
        };
        let Ok(d) = compose(&d1, &i1, &d2, &a, x) else {
            return Ok(None);
        };
        let mut iso = i1;
        iso.insert(a.clone());
        if !piece_is_valid(g, &d, &iso) {
            return Ok(None);
        }
        let chordal_side = Derivation::Chordal {
            clique: x.iter().cloned().collect(),
            prey: Some(a.clone()),
        };
        let derivation = Derivation::Compose {
            shared: x.iter().cloned().collect(),
            left: Box::new(deriv1),
            right: Box::new(chordal_side),
        };
        Ok(Some(((d, iso, derivation), a)))
    }

    /// Removes `edge`, requires the remainder to have at most
    /// `max_remaining_holes`, certifies it recursively, and glues the
    /// edge back as a two-vertex chordal piece.
    fn edge_split_piece(
        &mut self,
        g: &Graph,
        edge: &Edge,
        max_remaining_holes: usize,
    ) -> Result<Option<Piece>, CertifyError> {
        let rest = g.remove_edge(edge).expect("edge comes from a hole of g");
        let (count, capped) = hole_count(&rest, 2);
        if capped || count > max_remaining_holes {
            return Ok(None);
        }
        let left = self.piece(&rest)?;
        let mut g2 = Graph::new();
        g2.add_edge(edge.lo().clone(), edge.hi().clone()).expect("distinct endpoints");
        let x: BTreeSet<VertexId> = [edge.lo().clone(), edge.hi().clone()].into();
        let Some(((d, iso, inner), _)) = self.composed_piece(g, left, &g2, &x)? else {
            return Ok(None);
        };
        let derivation = Derivation::EdgeSplit { edge: edge.clone(), inner: Box::new(inner) };
        Ok(Some((d, iso, derivation)))
    }

    fn cut_split_piece(
        &mut self,
        g: &Graph,
        dec: &CutDecomposition,
    ) -> Result<Option<Piece>, CertifyError> {
        let left = self.piece(&dec.g1)?;
        let Some(((d, iso, inner), _)) = self.composed_piece(g, left, &dec.g2, &dec.x)? else {
            return Ok(None);
        };
        let derivation = Derivation::CutSplit {
            cut: dec.x.iter().cloned().collect(),
            component: dec.component.iter().cloned().collect(),
            pivot: dec.pivot.clone(),
            ear: dec.ear.clone(),
            inner: Box::new(inner),
        };
        Ok(Some((d, iso, derivation)))
    }

    fn one_hole_piece(&mut self, g: &Graph, c: &Hole) -> Result<Piece, CertifyError> {
        if let Ok(Some(edge)) = find_removable_edge(g, c) {
            // Dropping the unavoidable edge must leave a chordal graph.
            if let Some(piece) = self.edge_split_piece(g, &edge, 0)? {
                return Ok(piece);
            }
        } else if let Ok(dec) = one_hole_cut(g, c) {
            if let Some(piece) = self.cut_split_piece(g, &dec)? {
                return Ok(piece);
            }
        }
        self.exact_piece(g)
    }

    fn two_hole_piece(&mut self, g: &Graph, c1: &Hole, c2: &Hole) -> Result<Piece, CertifyError> {
        let shared = match shared_edge_path(g, c1, c2) {
            Ok(shared) => shared,
            Err(_) => return self.exact_piece(g),
        };
        if shared.is_none() {
            // Edge-disjoint holes: removing an unavoidable edge of either
            // hole leaves at most one hole.
            for c in [c1, c2] {
                if let Ok(Some(edge)) = find_removable_edge(g, c) {
                    if let Some(piece) = self.edge_split_piece(g, &edge, 1)? {
                        return Ok(piece);
                    }
                }
            }
            return self.exact_piece(g);
        }
        if let Ok(Some(edge)) = find_removable_edge(g, c1) {
            if let Some(piece) = self.edge_split_piece(g, &edge, 1)? {
                return Ok(piece);
            }
        } else if let Ok(dec) = avoid2_decompose(g, c1, c2) {
            if let Some(piece) = self.cut_split_piece(g, &dec)? {
                return Ok(piece);
            }
        }
        self.exact_piece(g)
    }

    fn piece(&mut self, g: &Graph) -> Result<Piece, CertifyError> {
        let (holes, capped) = enumerate_holes(g, 3);
        if capped {
            return self.exact_piece(g);
        }
        match holes.as_slice() {
            [] => match self.chordal_piece(g)? {
                Some(piece) => Ok(piece),
                None => self.exact_piece(g),
            },
            [c] => self.one_hole_piece(g, c),
            [a, b] => {
                // The longer hole leads; ties break on canonical order.
                let (c1, c2) = if b.len() > a.len() { (b, a) } else { (a, b) };
                self.two_hole_piece(g, c1, c2)
            }
            _ => self.exact_piece(g),
        }
    }
}

fn piece_is_valid(g: &Graph, d: &Digraph, iso: &BTreeSet<VertexId>) -> bool {
    if is_acyclic(d).is_err() {
        return false;
    }
    let mut expected = g.clone();
    for v in iso {
        expected.add_vertex(v.clone());
    }
    competition_graph(d) == expected
}

/// Certifies `k(g) <= k` by decomposition, falling back to the exact
/// solver whenever a structural step cannot be verified. The returned
/// certificate always passes the independent verifier.
pub fn certify(g: &Graph) -> Result<Certificate, CertifyError> {
    certify_with(g, &SolveBudget::default())
}

pub fn certify_with(g: &Graph, budget: &SolveBudget) -> Result<Certificate, CertifyError> {
    let mut driver = Driver { budget, namer: FreshNamer::for_graph(g) };
    let (digraph, isolated, derivation) = driver.piece(g)?;
    let mut cert = Certificate {
        target: g.clone(),
        k: isolated.len(),
        digraph,
        isolated,
        derivation,
        fallback_used: false,
    };
    cert.fallback_used = cert.derivation.uses_exact();
    if !verify_certificate(g, &cert).is_accept() {
        // Constructed certificates are re-checked at every step, so this
        // is unreachable in practice; degrade to the solver regardless.
        let (digraph, isolated, derivation) = driver.exact_piece(g)?;
        cert = Certificate {
            target: g.clone(),
            k: isolated.len(),
            digraph,
            isolated,
            derivation,
            fallback_used: true,
        };
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{self, fixtures};
    use crate::graph::vid;
    use crate::hole::{chordality, Chordality};

    fn holes_of(g: &Graph) -> Vec<Hole> {
        enumerate_holes(g, 3).0
    }

    #[test]
    fn chordal_witness_on_k3_with_seed_clique() {
        let g = Graph::parse("e x y\ne y z\ne x z").unwrap();
        let x: BTreeSet<_> = [vid("y"), vid("z")].into();
        let (d, a) = chordal_witness(&g, &x).unwrap();
        assert_eq!(d.in_degree(&vid("y")), 0);
        assert_eq!(d.in_degree(&vid("z")), 0);
        let mut expected = g.clone();
        expected.add_vertex(a.clone());
        assert_eq!(competition_graph(&d), expected);
        // The seeded order is x, y, z: everything feeds a, and {y, z}
        // feeds x.
        assert!(d.has_arc(&vid("y"), &vid("x")));
        assert!(d.has_arc(&vid("z"), &vid("x")));
        assert!(d.has_arc(&vid("x"), &a));
    }

    #[test]
    fn chordal_witness_on_edgeless_graph_has_no_arcs() {
        let g = Graph::parse("v a\nv b").unwrap();
        let (d, a) = chordal_witness(&g, &BTreeSet::new()).unwrap();
        assert_eq!(d.arc_count(), 0);
        assert_eq!(d.vertex_count(), 3);
        assert!(d.has_vertex(&a));
    }

    #[test]
    fn chordal_witness_on_p3_with_terminal_vertex() {
        let g = Graph::parse("e a b\ne b c").unwrap();
        let x: BTreeSet<_> = [vid("c")].into();
        let (d, a) = chordal_witness(&g, &x).unwrap();
        assert_eq!(d.in_degree(&vid("c")), 0);
        let mut expected = g.clone();
        expected.add_vertex(a);
        assert_eq!(competition_graph(&d), expected);
        assert!(is_acyclic(&d).is_ok());
    }

    #[test]
    fn chordal_witness_rejects_holes_and_non_cliques() {
        let c4 = Graph::parse("e a b\ne b c\ne c d\ne a d").unwrap();
        assert!(matches!(
            chordal_witness(&c4, &BTreeSet::new()),
            Err(ConstructError::NotChordal)
        ));
        let p3 = Graph::parse("e a b\ne b c").unwrap();
        let not_clique: BTreeSet<_> = [vid("a"), vid("c")].into();
        assert!(matches!(
            chordal_witness(&p3, &not_clique),
            Err(ConstructError::NotAClique(_))
        ));
    }

    #[test]
    fn compose_unions_disjointish_witnesses() {
        // Left: edgeless graph {p} with no isolated vertices. Right: K2 on
        // {p, q} sharing exactly p.
        let mut d1 = Digraph::new();
        d1.add_vertex(vid("p"));
        let g2 = Graph::parse("e p q").unwrap();
        let x: BTreeSet<_> = [vid("p"), vid("q")].into();
        let (d2, a) = chordal_witness(&g2, &x).unwrap();
        let d = compose(&d1, &BTreeSet::new(), &d2, &a, &x);
        // V(d1) ∩ V(d2) = {p} ≠ {p, q}: refused.
        assert!(matches!(d, Err(ConstructError::BadOverlap(_))));

        let x: BTreeSet<_> = [vid("p")].into();
        let g2 = Graph::parse("e p q").unwrap();
        let (d2, a) = chordal_witness(&g2, &x).unwrap();
        let d = compose(&d1, &BTreeSet::new(), &d2, &a, &x).unwrap();
        let mut expected = Graph::parse("e p q").unwrap();
        expected.add_vertex(a);
        assert_eq!(competition_graph(&d), expected);
    }

    #[test]
    fn compose_rejects_incoming_arcs_on_shared_vertices() {
        let mut d1 = Digraph::new();
        d1.add_vertex(vid("p"));
        let mut d2 = Digraph::new();
        d2.add_arc(vid("q"), vid("p")).unwrap();
        d2.add_vertex(vid("_z9"));
        let x: BTreeSet<_> = [vid("p")].into();
        assert!(matches!(
            compose(&d1, &BTreeSet::new(), &d2, &vid("_z9"), &x),
            Err(ConstructError::SharedIndegree(_))
        ));
    }

    #[test]
    fn removable_edge_on_c4_is_least() {
        let g = corpus::cycle_graph(4);
        let holes = holes_of(&g);
        let e = find_removable_edge(&g, &holes[0]).unwrap().unwrap();
        assert_eq!((e.lo().as_str(), e.hi().as_str()), ("v0", "v1"));
    }

    #[test]
    fn removable_edge_on_wheel_rim() {
        let g = fixtures::wheel5();
        let holes = holes_of(&g);
        let e = find_removable_edge(&g, &holes[0]).unwrap().unwrap();
        assert_eq!((e.lo().as_str(), e.hi().as_str()), ("r0", "r1"));
    }

    #[test]
    fn removable_edge_on_domino_hole() {
        let g = fixtures::domino();
        let holes = holes_of(&g);
        let abed = holes.iter().find(|h| h.contains(&vid("a"))).unwrap();
        let e = find_removable_edge(&g, abed).unwrap().unwrap();
        assert_eq!((e.lo().as_str(), e.hi().as_str()), ("a", "b"));
    }

    #[test]
    fn no_removable_edge_on_eared_family() {
        let g = corpus::eared_fused(4, 4);
        let holes = holes_of(&g);
        let long = if holes[0].len() >= holes[1].len() { &holes[0] } else { &holes[1] };
        assert_eq!(find_removable_edge(&g, long).unwrap(), None);
    }

    #[test]
    fn avoid2_refuses_house_x() {
        let g = fixtures::house_x();
        let holes = holes_of(&g);
        let err = avoid2_decompose(&g, &holes[0], &holes[1]).unwrap_err();
        assert!(matches!(err, ConstructError::StructuralViolation { clause, .. }
            if clause == "every hole edge has an avoiding path"));
    }

    #[test]
    fn avoid2_decomposes_eared_single_shared_edge() {
        let g = corpus::eared_fused(4, 4);
        let holes = holes_of(&g);
        let (c1, c2) = if holes[0].len() >= holes[1].len() {
            (&holes[0], &holes[1])
        } else {
            (&holes[1], &holes[0])
        };
        let dec = avoid2_decompose(&g, c1, c2).unwrap();
        assert_eq!(dec.j, 2);
        assert!(matches!(chordality(&dec.g2), Chordality::Chordal(_)));
        assert_eq!(holes_of(&dec.g1).len(), 1);
        let meet: BTreeSet<_> =
            dec.g1.vertex_set().intersection(&dec.g2.vertex_set()).cloned().collect();
        assert_eq!(meet, dec.x);
        // Determinism: same decomposition on re-run.
        assert_eq!(avoid2_decompose(&g, c1, c2).unwrap(), dec);
    }

    #[test]
    fn avoid2_decomposes_eared_long_overlap() {
        for (m, shared) in [(4, 2), (5, 2), (6, 3)] {
            let g = corpus::eared_fused_path(m, shared);
            let holes = holes_of(&g);
            let (c1, c2) = if holes[0].len() >= holes[1].len() {
                (&holes[0], &holes[1])
            } else {
                (&holes[1], &holes[0])
            };
            let dec = avoid2_decompose(&g, c1, c2).unwrap();
            assert_eq!(dec.j, 0, "m={m} shared={shared}");
            assert!(matches!(chordality(&dec.g2), Chordality::Chordal(_)));
            // The suppressed pivot is itself a shared edge here, so both
            // holes die with it and the piece comes out chordal.
            assert_eq!(holes_of(&dec.g1).len(), 0);
        }
    }

    fn assert_certificate(g: &Graph, max_k: usize, expect_fallback: bool) -> Certificate {
        let cert = certify(g).unwrap();
        assert!(verify_certificate(g, &cert).is_accept());
        assert!(cert.k <= max_k, "k={} exceeds {max_k}", cert.k);
        assert_eq!(cert.fallback_used, expect_fallback);
        cert
    }

    #[test]
    fn certify_k3() {
        let g = Graph::parse("e x y\ne y z\ne x z").unwrap();
        let cert = assert_certificate(&g, 1, false);
        assert!(matches!(cert.derivation, Derivation::Chordal { .. }));
        assert_eq!(cert.k, 1);
    }

    #[test]
    fn certify_edgeless() {
        let g = Graph::parse("v a\nv b").unwrap();
        let cert = assert_certificate(&g, 0, false);
        assert_eq!(cert.k, 0);
        assert_eq!(cert.digraph.arc_count(), 0);
    }

    #[test]
    fn certify_c4_via_edge_split() {
        let g = corpus::cycle_graph(4);
        let cert = assert_certificate(&g, 2, false);
        assert_eq!(cert.k, 2);
        match &cert.derivation {
            Derivation::EdgeSplit { edge, .. } => {
                assert_eq!((edge.lo().as_str(), edge.hi().as_str()), ("v0", "v1"));
            }
            other => panic!("expected edge split, got {other:?}"),
        }
    }

    #[test]
    fn certify_domino() {
        let g = fixtures::domino();
        let cert = assert_certificate(&g, 3, false);
        match &cert.derivation {
            Derivation::EdgeSplit { edge, .. } => {
                assert_eq!((edge.lo().as_str(), edge.hi().as_str()), ("a", "b"));
            }
            other => panic!("expected edge split, got {other:?}"),
        }
    }

    #[test]
    fn certify_house_x_stops_at_two() {
        let g = fixtures::house_x();
        let cert = assert_certificate(&g, 2, false);
        assert!(matches!(&cert.derivation, Derivation::EdgeSplit { .. }));
    }

    #[test]
    fn certify_wheel() {
        let g = fixtures::wheel5();
        assert_certificate(&g, 2, false);
    }

    #[test]
    fn certify_eared_families_via_cut_split() {
        let g = corpus::eared_fused(4, 4);
        let cert = assert_certificate(&g, 3, false);
        assert!(matches!(&cert.derivation, Derivation::CutSplit { .. }));
        let g = corpus::eared_fused_path(5, 2);
        let cert = assert_certificate(&g, 3, false);
        assert!(matches!(&cert.derivation, Derivation::CutSplit { .. }));
    }

    #[test]
    fn certify_eared_cycle_uses_one_hole_cut() {
        // Every hole edge has a detour, so the edge-removal branch cannot
        // fire; the cut branch must carry it.
        let g = corpus::eared_cycle(4);
        let cert = assert_certificate(&g, 2, false);
        assert!(matches!(&cert.derivation, Derivation::CutSplit { .. }));
        let g = corpus::eared_cycle(5);
        assert_certificate(&g, 2, false);
    }

    #[test]
    fn certify_bridged_squares_without_shared_edges() {
        let g = corpus::bridged_squares();
        let cert = assert_certificate(&g, 3, false);
        assert!(matches!(&cert.derivation, Derivation::EdgeSplit { .. }));
    }

    #[test]
    fn certify_three_holes_falls_back_to_exact() {
        // K2,3 has three holes; the pipeline certifies nothing there and
        // must hand over to the solver.
        let g = Graph::parse("e a x\ne a y\ne a z\ne b x\ne b y\ne b z").unwrap();
        let cert = certify(&g).unwrap();
        assert!(cert.fallback_used);
        assert!(matches!(&cert.derivation, Derivation::Exact { .. }));
        assert!(verify_certificate(&g, &cert).is_accept());
    }

    #[test]
    fn certify_disconnected_chordal_stays_at_one() {
        let g = Graph::parse("e a b\ne c d").unwrap();
        let cert = assert_certificate(&g, 1, false);
        assert_eq!(cert.k, 1);
    }

    #[test]
    fn certify_two_holes_in_separate_components() {
        let mut g = corpus::cycle_graph(4);
        for (u, v) in [("p", "q"), ("q", "r"), ("r", "s"), ("s", "p")] {
            g.add_edge(vid(u), vid(v)).unwrap();
        }
        let cert = certify(&g).unwrap();
        assert!(verify_certificate(&g, &cert).is_accept());
        assert!(cert.k <= 3);
    }

    #[test]
    fn certificate_k_matches_isolated_count() {
        for g in [fixtures::domino(), fixtures::house_x(), corpus::cycle_graph(5)] {
            let cert = certify(&g).unwrap();
            assert_eq!(cert.k, cert.isolated.len());
        }
    }
}

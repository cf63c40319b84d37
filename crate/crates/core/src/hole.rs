//! Hole (induced cycle) analysis: chordality testing with certified
//! witnesses, hole enumeration, common-neighbor sets, avoiding paths, and
//! the structural validators used by the certification pipeline.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{Edge, Graph, VertexId};

#[derive(Debug, Error)]
pub enum HoleError {
    #[error("cycle {0:?} is not a hole of the graph")]
    NotAHole(Vec<String>),
    #[error("endpoint {0} is not in the graph")]
    MissingVertex(VertexId),
    #[error("avoiding-path endpoints must be distinct, got {0} twice")]
    EqualEndpoints(VertexId),
    #[error("shared edges of the two holes do not form a path: {0}")]
    SharedEdgesNotAPath(String),
}

/// An induced cycle of length at least 4, stored in canonical form: the
/// least vertex first, followed by the lesser of its two cycle neighbors.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hole {
    cycle: Vec<VertexId>,
}

impl Hole {
    /// Validates the hole invariants against `g` and canonicalizes.
    pub fn new(cycle: Vec<VertexId>, g: &Graph) -> Result<Hole, HoleError> {
        if !is_induced_cycle(g, &cycle) {
            let names = cycle.iter().map(|v| v.as_str().to_owned()).collect();
            return Err(HoleError::NotAHole(names));
        }
        Ok(Hole { cycle: canonical_rotation(&cycle) })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn cycle(&self) -> &[VertexId] {
        &self.cycle
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.cycle.contains(v)
    }

    pub fn vertex_set(&self) -> BTreeSet<VertexId> {
        self.cycle.iter().cloned().collect()
    }

    /// The cycle edges, sorted.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out: Vec<Edge> = (0..self.cycle.len())
            .map(|i| {
                Edge::new(
                    self.cycle[i].clone(),
                    self.cycle[(i + 1) % self.cycle.len()].clone(),
                )
            })
            .collect();
        out.sort();
        out
    }

    pub fn edge_set(&self) -> BTreeSet<Edge> {
        self.edges().into_iter().collect()
    }

    /// Whether the stored cycle still satisfies the hole invariants in `g`.
    pub fn is_hole_of(&self, g: &Graph) -> bool {
        is_induced_cycle(g, &self.cycle)
    }

    /// True when `u` and `v` are cyclically consecutive on this hole.
    pub fn consecutive(&self, u: &VertexId, v: &VertexId) -> bool {
        let m = self.cycle.len();
        (0..m).any(|i| {
            (self.cycle[i] == *u && self.cycle[(i + 1) % m] == *v)
                || (self.cycle[i] == *v && self.cycle[(i + 1) % m] == *u)
        })
    }
}

fn is_induced_cycle(g: &Graph, cycle: &[VertexId]) -> bool {
    let m = cycle.len();
    if m < 4 {
        return false;
    }
    let distinct: BTreeSet<_> = cycle.iter().collect();
    if distinct.len() != m || !cycle.iter().all(|v| g.has_vertex(v)) {
        return false;
    }
    for i in 0..m {
        for j in i + 1..m {
            let consecutive = j == i + 1 || (i == 0 && j == m - 1);
            if g.has_edge(&cycle[i], &cycle[j]) != consecutive {
                return false;
            }
        }
    }
    true
}

fn canonical_rotation(cycle: &[VertexId]) -> Vec<VertexId> {
    let m = cycle.len();
    let start = (0..m).min_by_key(|&i| &cycle[i]).unwrap();
    let next = &cycle[(start + 1) % m];
    let prev = &cycle[(start + m - 1) % m];
    let forward = next < prev;
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

/// A perfect elimination ordering: every vertex's later neighbors form a
/// clique. Exists exactly for chordal graphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Peo {
    order: Vec<VertexId>,
}

impl Peo {
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }

    /// Direct check of the defining clique condition, independent of how
    /// the order was produced.
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        if self.order.len() != g.vertex_count() {
            return false;
        }
        let pos: BTreeMap<&VertexId, usize> =
            self.order.iter().enumerate().map(|(i, v)| (v, i)).collect();
        if self.order.iter().any(|v| !g.has_vertex(v)) {
            return false;
        }
        for (i, v) in self.order.iter().enumerate() {
            let later: Vec<&VertexId> =
                g.neighbors(v).filter(|w| pos.get(w).copied().unwrap_or(0) > i).collect();
            for (a, x) in later.iter().enumerate() {
                for y in &later[a + 1..] {
                    if !g.has_edge(x, y) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone)]
pub enum Chordality {
    Chordal(Peo),
    HasHole(Hole),
}

/// Maximum-cardinality search. Vertices in `priority` are selected first
/// (valid whenever `priority` is a clique); ties break on least id.
/// Returns the selection order.
fn mcs_order(g: &Graph, priority: &BTreeSet<VertexId>) -> Vec<VertexId> {
    let ids: Vec<VertexId> = g.vertices().cloned().collect();
    let index: BTreeMap<&VertexId, usize> = ids.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let n = ids.len();
    let mut weight = vec![0usize; n];
    let mut selected = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let pick = (0..n)
            .filter(|&i| !selected[i])
            .max_by_key(|&i| {
                // priority first, then weight; ids ascend so max_by_key's
                // "last wins on ties" is countered by negating the index.
                (priority.contains(&ids[i]), weight[i], std::cmp::Reverse(i))
            })
            .unwrap();
        selected[pick] = true;
        order.push(ids[pick].clone());
        for w in g.neighbors(&ids[pick]) {
            let j = index[w];
            if !selected[j] {
                weight[j] += 1;
            }
        }
    }
    order
}

/// Runs the parent-based elimination check on `order` (front = first
/// eliminated). On success the order is a Peo; on failure returns a
/// violating triple `(v, p, w)` with `p`, `w` non-adjacent later neighbors
/// of `v`.
fn verify_elimination(g: &Graph, order: &[VertexId]) -> Result<(), (VertexId, VertexId, VertexId)> {
    let pos: BTreeMap<&VertexId, usize> = order.iter().enumerate().map(|(i, v)| (v, i)).collect();
    for (i, v) in order.iter().enumerate() {
        let later: Vec<&VertexId> = g.neighbors(v).filter(|w| pos[w] > i).collect();
        let Some(parent) = later.iter().min_by_key(|w| pos[*w]) else {
            continue;
        };
        for w in &later {
            if *w != *parent && !g.has_edge(parent, w) {
                return Err(((*v).clone(), (*parent).clone(), (*w).clone()));
            }
        }
    }
    Ok(())
}

/// Extracts a hole from a violating triple: `p` and `w` are non-adjacent
/// common neighbors of `v`. A shortest `p`-`w` path avoiding the rest of
/// `N[v]` closes through `v` into an induced cycle of length >= 4.
fn hole_from_triple(g: &Graph, v: &VertexId, p: &VertexId, w: &VertexId) -> Option<Hole> {
    let mut blocked: BTreeSet<VertexId> = g.neighbors(v).cloned().collect();
    blocked.insert(v.clone());
    blocked.remove(p);
    blocked.remove(w);

    let mut prev: BTreeMap<VertexId, VertexId> = BTreeMap::new();
    let mut queue = VecDeque::from([p.clone()]);
    let mut seen: BTreeSet<VertexId> = [p.clone()].into();
    while let Some(x) = queue.pop_front() {
        if x == *w {
            break;
        }
        for y in g.neighbors(&x) {
            if !blocked.contains(y) && seen.insert(y.clone()) {
                prev.insert(y.clone(), x.clone());
                queue.push_back(y.clone());
            }
        }
    }
    if !seen.contains(w) {
        return None;
    }
    let mut path = vec![w.clone()];
    while let Some(x) = prev.get(path.last().unwrap()) {
        path.push(x.clone());
    }
    path.push(v.clone());
    Hole::new(path, g).ok()
}

/// Decides chordality. Returns a verified elimination ordering, or else a
/// witness hole satisfying the [`Hole`] invariants.
pub fn chordality(g: &Graph) -> Chordality {
    let selection = mcs_order(g, &BTreeSet::new());
    let order: Vec<VertexId> = selection.into_iter().rev().collect();
    match verify_elimination(g, &order) {
        Ok(()) => Chordality::Chordal(Peo { order }),
        Err((v, p, w)) => {
            let hole = hole_from_triple(g, &v, &p, &w).or_else(|| {
                // The triple extraction is expected to succeed; the
                // enumerator is the backstop.
                enumerate_holes(g, 1).0.into_iter().next()
            });
            match hole {
                Some(h) => Chordality::HasHole(h),
                None => unreachable!("elimination check failed on a graph with no holes"),
            }
        }
    }
}

/// An elimination ordering whose final positions are exactly the clique
/// `x`, or `None` when `g` is not chordal. Used by the witness builder.
pub(crate) fn peo_with_terminal_clique(g: &Graph, x: &BTreeSet<VertexId>) -> Option<Peo> {
    let selection = mcs_order(g, x);
    let order: Vec<VertexId> = selection.into_iter().rev().collect();
    match verify_elimination(g, &order) {
        Ok(()) => Some(Peo { order }),
        Err(_) => None,
    }
}

/// Enumerates holes by depth-first extension of induced paths anchored at
/// the least cycle vertex, stopping once `cap + 1` distinct holes exist.
/// Returns holes sorted by canonical vertex sequence plus the capped flag.
pub fn enumerate_holes(g: &Graph, cap: usize) -> (Vec<Hole>, bool) {
    let ids: Vec<VertexId> = g.vertices().cloned().collect();
    let index: BTreeMap<&VertexId, usize> = ids.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let adj: Vec<Vec<usize>> = ids
        .iter()
        .map(|v| {
            let mut nb: Vec<usize> = g.neighbors(v).map(|w| index[w]).collect();
            nb.sort_unstable();
            nb
        })
        .collect();
    let is_adj = |u: usize, v: usize| adj[u].binary_search(&v).is_ok();

    let mut found: Vec<Vec<usize>> = Vec::new();
    let limit = cap + 1;

    // Iterative DFS over induced paths [p0, ..., pt] with p0 minimal.
    // Closing vertex z: adjacent to p0 and pt only; extension z: adjacent
    // to pt only. Requiring path[1] < z at closure picks one direction.
    'anchors: for p0 in 0..ids.len() {
        let mut path: Vec<usize> = vec![p0];
        let mut iters: Vec<std::slice::Iter<usize>> = vec![adj[p0].iter()];
        while !iters.is_empty() {
            let Some(&z) = iters.last_mut().unwrap().next() else {
                iters.pop();
                path.pop();
                continue;
            };
            if z <= p0 || path.contains(&z) {
                continue;
            }
            let t = path.len();
            let interior_clean = t < 2 || path[1..t - 1].iter().all(|&q| !is_adj(z, q));
            if t >= 3 && is_adj(z, p0) {
                // Candidate closure; never extend through a chord to p0.
                if interior_clean && path[1] < z {
                    let mut cycle = path.clone();
                    cycle.push(z);
                    found.push(cycle);
                    if found.len() >= limit {
                        break 'anchors;
                    }
                }
                continue;
            }
            if t >= 2 && (is_adj(z, p0) || !interior_clean) {
                continue;
            }
            path.push(z);
            iters.push(adj[z].iter());
        }
    }

    let capped = found.len() >= limit;
    let mut holes: Vec<Hole> = found
        .into_iter()
        .map(|cycle| {
            let verts: Vec<VertexId> = cycle.into_iter().map(|i| ids[i].clone()).collect();
            Hole::new(verts, g).expect("enumerated cycle must be a hole")
        })
        .collect();
    holes.sort();
    (holes, capped)
}

fn ensure_hole(g: &Graph, c: &Hole) -> Result<(), HoleError> {
    if c.is_hole_of(g) {
        Ok(())
    } else {
        Err(HoleError::NotAHole(c.cycle().iter().map(|v| v.as_str().to_owned()).collect()))
    }
}

/// The vertices adjacent to every vertex of `c`, always disjoint from `c`.
pub fn x_set(g: &Graph, c: &Hole) -> Result<BTreeSet<VertexId>, HoleError> {
    ensure_hole(g, c)?;
    Ok(g.vertices()
        .filter(|v| !c.contains(v))
        .filter(|v| c.cycle().iter().all(|u| g.has_edge(v, u)))
        .cloned()
        .collect())
}

/// A shortest `c`-avoiding path from `u` to `v`: internal vertices avoid
/// `V(c) ∪ X_c`; a single edge qualifies only when at least one endpoint
/// lies outside that set. Ties break on the lexicographic vertex sequence.
pub fn c_avoiding_path(
    g: &Graph,
    c: &Hole,
    u: &VertexId,
    v: &VertexId,
) -> Result<Option<Vec<VertexId>>, HoleError> {
    ensure_hole(g, c)?;
    for end in [u, v] {
        if !g.has_vertex(end) {
            return Err(HoleError::MissingVertex(end.clone()));
        }
    }
    if u == v {
        return Err(HoleError::EqualEndpoints(u.clone()));
    }

    let mut shielded = c.vertex_set();
    shielded.extend(x_set(g, c)?);

    if g.has_edge(u, v) && (!shielded.contains(u) || !shielded.contains(v)) {
        return Ok(Some(vec![u.clone(), v.clone()]));
    }

    // Distance to v through interior vertices outside the shield.
    let mut dist: BTreeMap<VertexId, usize> = BTreeMap::new();
    dist.insert(v.clone(), 0);
    let mut queue = VecDeque::from([v.clone()]);
    while let Some(x) = queue.pop_front() {
        let d = dist[&x];
        for y in g.neighbors(&x) {
            if !shielded.contains(y) && y != u && !dist.contains_key(y) {
                dist.insert(y.clone(), d + 1);
                queue.push_back(y.clone());
            }
        }
    }

    let total = g
        .neighbors(u)
        .filter(|y| !shielded.contains(*y))
        .filter_map(|y| dist.get(y))
        .min()
        .map(|d| d + 1);
    let Some(total) = total else {
        return Ok(None);
    };

    let mut seq = vec![u.clone()];
    let mut remaining = total;
    let mut cur = u.clone();
    while remaining > 1 {
        let next = g
            .neighbors(&cur)
            .filter(|y| !shielded.contains(*y))
            .find(|y| dist.get(*y) == Some(&(remaining - 1)))
            .expect("BFS distances admit a next hop")
            .clone();
        seq.push(next.clone());
        cur = next;
        remaining -= 1;
    }
    debug_assert!(g.has_edge(&cur, v));
    seq.push(v.clone());
    Ok(Some(seq))
}

/// The edge intersection of two holes rendered as a path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedPath {
    /// Path vertices starting from the least endpoint.
    pub path: Vec<VertexId>,
    pub edge_count: usize,
}

/// Intersects the edge sets of two distinct holes. `None` when disjoint;
/// an error when the shared edges fail to form a simple path (impossible
/// for a graph with exactly two holes, so it signals a violated
/// assumption upstream).
pub fn shared_edge_path(
    g: &Graph,
    c1: &Hole,
    c2: &Hole,
) -> Result<Option<SharedPath>, HoleError> {
    ensure_hole(g, c1)?;
    ensure_hole(g, c2)?;
    let shared: BTreeSet<Edge> =
        c1.edge_set().intersection(&c2.edge_set()).cloned().collect();
    if shared.is_empty() {
        return Ok(None);
    }

    let mut incidence: BTreeMap<VertexId, Vec<VertexId>> = BTreeMap::new();
    for e in &shared {
        incidence.entry(e.lo().clone()).or_default().push(e.hi().clone());
        incidence.entry(e.hi().clone()).or_default().push(e.lo().clone());
    }
    let describe = || {
        shared.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
    };
    let ends: Vec<&VertexId> =
        incidence.iter().filter(|(_, nb)| nb.len() == 1).map(|(v, _)| v).collect();
    if ends.len() != 2 || incidence.values().any(|nb| nb.len() > 2) {
        return Err(HoleError::SharedEdgesNotAPath(describe()));
    }

    let mut path = vec![ends[0].clone()];
    let mut prev: Option<VertexId> = None;
    while path.len() <= shared.len() {
        let cur = path.last().unwrap().clone();
        let next = incidence[&cur]
            .iter()
            .find(|w| Some(*w) != prev.as_ref())
            .cloned()
            .ok_or_else(|| HoleError::SharedEdgesNotAPath(describe()))?;
        prev = Some(cur);
        path.push(next);
    }
    if path.len() != incidence.len() {
        // Connected walk did not reach every endpoint: disconnected pieces.
        return Err(HoleError::SharedEdgesNotAPath(describe()));
    }
    Ok(Some(SharedPath { edge_count: shared.len(), path }))
}

/// Outcomes of the structural validators for a graph with exactly two
/// holes. Every flag is a theorem for such graphs, so any `false` is a
/// diagnostic for an implementation bug rather than a property of `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LemmaFlags {
    /// Both common-neighbor sets induce cliques.
    pub x_cliques: bool,
    /// The two common-neighbor sets coincide when the holes share >= 2 edges.
    pub x_equal: bool,
    /// Any outside vertex adjacent to two non-adjacent hole vertices is
    /// adjacent to the whole hole or rides the other hole across >= 2
    /// shared edges on one side.
    pub dichotomy: bool,
    /// A non-hole vertex pending on a hole edge reaches the rest of the
    /// hole only by detours of length >= 2.
    pub path_length: bool,
}

impl LemmaFlags {
    pub fn all(&self) -> bool {
        self.x_cliques && self.x_equal && self.dichotomy && self.path_length
    }

    pub fn entries(&self) -> [(&'static str, bool); 4] {
        [
            ("x_cliques", self.x_cliques),
            ("x_equal", self.x_equal),
            ("dichotomy", self.dichotomy),
            ("path_length", self.path_length),
        ]
    }
}

fn section_edges(c: &Hole, from: &VertexId, to: &VertexId) -> (BTreeSet<Edge>, BTreeSet<Edge>) {
    let cycle = c.cycle();
    let m = cycle.len();
    let i = cycle.iter().position(|v| v == from).unwrap();
    let j = cycle.iter().position(|v| v == to).unwrap();
    let mut first = BTreeSet::new();
    let mut k = i;
    while k != j {
        first.insert(Edge::new(cycle[k].clone(), cycle[(k + 1) % m].clone()));
        k = (k + 1) % m;
    }
    let second: BTreeSet<Edge> =
        c.edge_set().difference(&first).cloned().collect();
    (first, second)
}

fn dichotomy_holds(
    g: &Graph,
    c: &Hole,
    other: &Hole,
    x_c: &BTreeSet<VertexId>,
) -> bool {
    let shared: BTreeSet<Edge> = c.edge_set().intersection(&other.edge_set()).cloned().collect();
    for z in g.vertices() {
        if c.contains(z) {
            continue;
        }
        let on_c: Vec<&VertexId> = c.cycle().iter().filter(|u| g.has_edge(z, u)).collect();
        for (a, x) in on_c.iter().enumerate() {
            for y in &on_c[a + 1..] {
                if g.has_edge(x, y) {
                    continue;
                }
                let full = x_c.contains(z);
                let rides_other = other.contains(z) && shared.len() >= 2 && {
                    let (s1, s2) = section_edges(c, x, y);
                    shared.is_subset(&s1) != shared.is_subset(&s2)
                };
                if full == rides_other {
                    return false;
                }
            }
        }
    }
    true
}

fn path_length_holds(
    g: &Graph,
    c: &Hole,
    x_c: &BTreeSet<VertexId>,
    hole_vertices: &BTreeSet<VertexId>,
) -> bool {
    for v in g.vertices() {
        if hole_vertices.contains(v) || x_c.contains(v) {
            continue;
        }
        let on_c: Vec<&VertexId> = c.cycle().iter().filter(|u| g.has_edge(v, u)).collect();
        if on_c.len() != 2 || !c.consecutive(on_c[0], on_c[1]) {
            continue;
        }
        for w in c.cycle() {
            if w == on_c[0] || w == on_c[1] {
                continue;
            }
            if let Ok(Some(path)) = c_avoiding_path(g, c, v, w) {
                if path.len() - 1 < 2 {
                    return false;
                }
            }
        }
    }
    true
}

/// Evaluates the two-hole structural lemmas for a graph whose holes are
/// exactly `c1` and `c2`.
pub fn lemma_flags(g: &Graph, c1: &Hole, c2: &Hole) -> Result<LemmaFlags, HoleError> {
    let x1 = x_set(g, c1)?;
    let x2 = x_set(g, c2)?;
    let shared_count =
        c1.edge_set().intersection(&c2.edge_set()).count();
    let hole_vertices: BTreeSet<VertexId> =
        c1.vertex_set().union(&c2.vertex_set()).cloned().collect();
    Ok(LemmaFlags {
        x_cliques: g.is_clique(&x1) && g.is_clique(&x2),
        x_equal: shared_count < 2 || x1 == x2,
        dichotomy: dichotomy_holds(g, c1, c2, &x1) && dichotomy_holds(g, c2, c1, &x2),
        path_length: path_length_holds(g, c1, &x1, &hole_vertices)
            && path_length_holds(g, c2, &x2, &hole_vertices),
    })
}

/// Full structural report for a graph: holes up to a cap, their common
/// neighbors, the shared path and validator flags when exactly two holes
/// exist.
#[derive(Debug, Clone)]
pub struct HoleReport {
    pub holes: Vec<Hole>,
    pub capped: bool,
    pub x_sets: Vec<BTreeSet<VertexId>>,
    pub shared: Option<SharedPath>,
    pub flags: Option<LemmaFlags>,
}

pub fn analyze(g: &Graph, cap: usize) -> Result<HoleReport, HoleError> {
    let (holes, capped) = enumerate_holes(g, cap);
    let x_sets = holes.iter().map(|c| x_set(g, c)).collect::<Result<Vec<_>, _>>()?;
    let (shared, flags) = if holes.len() == 2 && !capped {
        (
            shared_edge_path(g, &holes[0], &holes[1])?,
            Some(lemma_flags(g, &holes[0], &holes[1])?),
        )
    } else {
        (None, None)
    };
    Ok(HoleReport { holes, capped, x_sets, shared, flags })
}

impl HoleReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.capped {
            out.push_str(&format!("holes >{}\n", self.holes.len() - 1));
        } else {
            out.push_str(&format!("holes {}\n", self.holes.len()));
        }
        if self.holes.is_empty() && !self.capped {
            out.push_str("chordal\n");
        }
        for hole in &self.holes {
            out.push_str("hole");
            for v in hole.cycle() {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        for (i, xs) in self.x_sets.iter().enumerate() {
            out.push_str(&format!("xset {i}"));
            for v in xs {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        if let Some(shared) = &self.shared {
            out.push_str("shared");
            for v in &shared.path {
                out.push_str(&format!(" {v}"));
            }
            out.push('\n');
        }
        if let Some(flags) = &self.flags {
            for (name, value) in flags.entries() {
                out.push_str(&format!("flag {name} {value}\n"));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::vid;

    fn parse(text: &str) -> Graph {
        Graph::parse(text).unwrap()
    }

    fn c4() -> Graph {
        parse("e a b\ne b c\ne c d\ne a d")
    }

    fn domino() -> Graph {
        parse("e a b\ne b c\ne d e\ne e f\ne a d\ne b e\ne c f")
    }

    fn house_x() -> Graph {
        parse("e v0 v1\ne v1 v2\ne v2 v3\ne v3 v0\ne v2 x\ne x v0\ne v3 x")
    }

    fn wheel5() -> Graph {
        parse(
            "e r0 r1\ne r1 r2\ne r2 r3\ne r3 r4\ne r4 r0\n\
             e hub r0\ne hub r1\ne hub r2\ne hub r3\ne hub r4",
        )
    }

    fn hole_of(g: &Graph, names: &[&str]) -> Hole {
        Hole::new(names.iter().map(|s| vid(s)).collect(), g).unwrap()
    }

    #[test]
    fn hole_canonical_form() {
        let g = c4();
        let h1 = hole_of(&g, &["c", "d", "a", "b"]);
        let h2 = hole_of(&g, &["b", "a", "d", "c"]);
        assert_eq!(h1, h2);
        assert_eq!(
            h1.cycle().iter().map(VertexId::as_str).collect::<Vec<_>>(),
            ["a", "b", "c", "d"]
        );
    }

    #[test]
    fn hole_rejects_chorded_cycle() {
        let mut g = c4();
        g.add_edge(vid("a"), vid("c")).unwrap();
        assert!(Hole::new(vec![vid("a"), vid("b"), vid("c"), vid("d")], &g).is_err());
    }

    #[test]
    fn hole_rejects_triangle() {
        let g = parse("e a b\ne b c\ne a c");
        assert!(Hole::new(vec![vid("a"), vid("b"), vid("c")], &g).is_err());
    }

    #[test]
    fn chordality_of_k3() {
        let g = parse("e x y\ne y z\ne x z");
        match chordality(&g) {
            Chordality::Chordal(peo) => assert!(peo.is_valid_for(&g)),
            Chordality::HasHole(_) => panic!("K3 is chordal"),
        }
    }

    #[test]
    fn chordality_of_c4_finds_the_hole() {
        match chordality(&c4()) {
            Chordality::Chordal(_) => panic!("C4 has a hole"),
            Chordality::HasHole(h) => {
                assert_eq!(h.vertex_set(), [vid("a"), vid("b"), vid("c"), vid("d")].into());
            }
        }
    }

    #[test]
    fn chordality_of_domino_finds_some_hole() {
        match chordality(&domino()) {
            Chordality::Chordal(_) => panic!("domino has holes"),
            Chordality::HasHole(h) => {
                let verts = h.vertex_set();
                let abed: BTreeSet<_> = [vid("a"), vid("b"), vid("e"), vid("d")].into();
                let bcfe: BTreeSet<_> = [vid("b"), vid("c"), vid("f"), vid("e")].into();
                assert!(verts == abed || verts == bcfe, "got {verts:?}");
            }
        }
    }

    #[test]
    fn degenerate_graphs_are_chordal() {
        for text in ["", "v a", "e a b", "e a b\ne b c"] {
            assert!(matches!(chordality(&parse(text)), Chordality::Chordal(_)));
        }
    }

    #[test]
    fn enumerate_on_k4_is_empty() {
        let k4 = parse("e a b\ne a c\ne a d\ne b c\ne b d\ne c d");
        let (holes, capped) = enumerate_holes(&k4, 3);
        assert!(holes.is_empty());
        assert!(!capped);
    }

    #[test]
    fn enumerate_house_x() {
        let (holes, capped) = enumerate_holes(&house_x(), 3);
        assert!(!capped);
        let g = house_x();
        assert_eq!(
            holes,
            vec![
                hole_of(&g, &["v0", "v1", "v2", "v3"]),
                hole_of(&g, &["v0", "v1", "v2", "x"]),
            ]
        );
    }

    #[test]
    fn enumerate_wheel5_rim_only() {
        let (holes, capped) = enumerate_holes(&wheel5(), 3);
        assert!(!capped);
        let g = wheel5();
        assert_eq!(holes, vec![hole_of(&g, &["r0", "r1", "r2", "r3", "r4"])]);
    }

    #[test]
    fn enumerate_caps_and_reports_overflow() {
        // K2,3 has three 4-holes.
        let g = parse("e a x\ne a y\ne a z\ne b x\ne b y\ne b z");
        let (holes, capped) = enumerate_holes(&g, 2);
        assert!(capped);
        assert_eq!(holes.len(), 3);
        let (holes, capped) = enumerate_holes(&g, 3);
        assert!(!capped);
        assert_eq!(holes.len(), 3);
    }

    #[test]
    fn x_set_of_wheel_rim_is_hub() {
        let g = wheel5();
        let rim = hole_of(&g, &["r0", "r1", "r2", "r3", "r4"]);
        assert_eq!(x_set(&g, &rim).unwrap(), [vid("hub")].into());
    }

    #[test]
    fn x_set_of_domino_hole_is_empty() {
        let g = domino();
        let h = hole_of(&g, &["a", "b", "e", "d"]);
        assert!(x_set(&g, &h).unwrap().is_empty());
    }

    #[test]
    fn x_set_sees_full_common_neighbor() {
        let mut g = c4();
        for rim in ["a", "b", "c", "d"] {
            g.add_edge(vid("q"), vid(rim)).unwrap();
        }
        let h = hole_of(&g, &["a", "b", "c", "d"]);
        assert_eq!(x_set(&g, &h).unwrap(), [vid("q")].into());
    }

    #[test]
    fn x_set_rejects_non_hole() {
        let g = c4();
        let h = hole_of(&g, &["a", "b", "c", "d"]);
        let shrunk = g.remove_edge(&Edge::new(vid("a"), vid("b"))).unwrap();
        assert!(matches!(x_set(&shrunk, &h), Err(HoleError::NotAHole(_))));
    }

    #[test]
    fn avoiding_path_none_on_bare_c4() {
        let g = c4();
        let h = hole_of(&g, &["a", "b", "c", "d"]);
        assert_eq!(c_avoiding_path(&g, &h, &vid("a"), &vid("b")).unwrap(), None);
    }

    #[test]
    fn avoiding_path_blocked_by_hub() {
        let g = wheel5();
        let rim = hole_of(&g, &["r0", "r1", "r2", "r3", "r4"]);
        assert_eq!(c_avoiding_path(&g, &rim, &vid("r0"), &vid("r1")).unwrap(), None);
    }

    #[test]
    fn avoiding_path_through_the_other_square() {
        let g = domino();
        let h = hole_of(&g, &["a", "b", "e", "d"]);
        let path = c_avoiding_path(&g, &h, &vid("b"), &vid("e")).unwrap().unwrap();
        assert_eq!(path, vec![vid("b"), vid("c"), vid("f"), vid("e")]);
    }

    #[test]
    fn avoiding_path_single_edge_needs_outside_endpoint() {
        // v hangs off the hole: the edge from v to the hole is avoiding.
        let mut g = c4();
        g.add_edge(vid("v"), vid("a")).unwrap();
        let h = hole_of(&g, &["a", "b", "c", "d"]);
        let path = c_avoiding_path(&g, &h, &vid("v"), &vid("a")).unwrap().unwrap();
        assert_eq!(path, vec![vid("v"), vid("a")]);
    }

    #[test]
    fn avoiding_path_prefers_lexicographic_tie() {
        // Two interior routes of equal length between a and c: via p or q.
        let g = parse("e a b\ne b c\ne c d\ne a d\ne a p\ne p c\ne a q\ne q c");
        let h = Hole::new(vec![vid("a"), vid("b"), vid("c"), vid("d")], &g).unwrap();
        let path = c_avoiding_path(&g, &h, &vid("a"), &vid("c")).unwrap().unwrap();
        assert_eq!(path, vec![vid("a"), vid("p"), vid("c")]);
    }

    #[test]
    fn avoiding_path_rejects_equal_endpoints() {
        let g = c4();
        let h = hole_of(&g, &["a", "b", "c", "d"]);
        assert!(matches!(
            c_avoiding_path(&g, &h, &vid("a"), &vid("a")),
            Err(HoleError::EqualEndpoints(_))
        ));
    }

    #[test]
    fn shared_path_of_domino() {
        let g = domino();
        let c1 = hole_of(&g, &["a", "b", "e", "d"]);
        let c2 = hole_of(&g, &["b", "c", "f", "e"]);
        let shared = shared_edge_path(&g, &c1, &c2).unwrap().unwrap();
        assert_eq!(shared.edge_count, 1);
        assert_eq!(shared.path, vec![vid("b"), vid("e")]);
    }

    #[test]
    fn shared_path_of_house_x() {
        let g = house_x();
        let c1 = hole_of(&g, &["v0", "v1", "v2", "v3"]);
        let c2 = hole_of(&g, &["v0", "v1", "v2", "x"]);
        let shared = shared_edge_path(&g, &c1, &c2).unwrap().unwrap();
        assert_eq!(shared.edge_count, 2);
        assert_eq!(shared.path, vec![vid("v0"), vid("v1"), vid("v2")]);
    }

    #[test]
    fn shared_path_of_disjoint_squares_is_none() {
        let g = parse("e a b\ne b c\ne c d\ne a d\ne p q\ne q r\ne r s\ne p s");
        let c1 = hole_of(&g, &["a", "b", "c", "d"]);
        let c2 = hole_of(&g, &["p", "q", "r", "s"]);
        assert_eq!(shared_edge_path(&g, &c1, &c2).unwrap(), None);
    }

    #[test]
    fn shared_path_rejects_disconnected_intersection() {
        // Two hexagons sharing the two disjoint edges v0v1 and v3v4.
        let g = parse(
            "e v0 v1\ne v1 v2\ne v2 v3\ne v3 v4\ne v4 v5\ne v5 v0\n\
             e v1 p\ne p v3\ne v4 q\ne q v0",
        );
        let c1 = hole_of(&g, &["v0", "v1", "v2", "v3", "v4", "v5"]);
        let c2 = hole_of(&g, &["v0", "v1", "p", "v3", "v4", "q"]);
        assert!(matches!(
            shared_edge_path(&g, &c1, &c2),
            Err(HoleError::SharedEdgesNotAPath(_))
        ));
    }

    #[test]
    fn lemma_flags_on_domino() {
        let g = domino();
        let c1 = hole_of(&g, &["a", "b", "e", "d"]);
        let c2 = hole_of(&g, &["b", "c", "f", "e"]);
        assert!(lemma_flags(&g, &c1, &c2).unwrap().all());
    }

    #[test]
    fn lemma_flags_on_house_x() {
        let g = house_x();
        let c1 = hole_of(&g, &["v0", "v1", "v2", "v3"]);
        let c2 = hole_of(&g, &["v0", "v1", "v2", "x"]);
        let flags = lemma_flags(&g, &c1, &c2).unwrap();
        assert!(flags.all());
        assert!(x_set(&g, &c1).unwrap().is_empty());
        assert!(x_set(&g, &c2).unwrap().is_empty());
    }

    #[test]
    fn x_clique_flag_with_joined_common_neighbors() {
        // C4 plus adjacent common neighbors x1, x2: three holes total, but
        // the clique check itself is what this exercises.
        let mut g = c4();
        for rim in ["a", "b", "c", "d"] {
            g.add_edge(vid("x1"), vid(rim)).unwrap();
            g.add_edge(vid("x2"), vid(rim)).unwrap();
        }
        g.add_edge(vid("x1"), vid("x2")).unwrap();
        let h = hole_of(&g, &["a", "b", "c", "d"]);
        let xs = x_set(&g, &h).unwrap();
        assert_eq!(xs, [vid("x1"), vid("x2")].into());
        assert!(g.is_clique(&xs));
    }

    #[test]
    fn analyze_renders_domino_report() {
        let report = analyze(&domino(), 3).unwrap();
        assert_eq!(
            report.to_text(),
            "holes 2\n\
             hole a b e d\n\
             hole b c f e\n\
             xset 0\n\
             xset 1\n\
             shared b e\n\
             flag x_cliques true\n\
             flag x_equal true\n\
             flag dichotomy true\n\
             flag path_length true\n"
        );
    }

    #[test]
    fn analyze_renders_chordal_marker() {
        let report = analyze(&parse("e a b\ne b c\ne a c"), 3).unwrap();
        assert_eq!(report.to_text(), "holes 0\nchordal\n");
    }

    #[test]
    fn analyze_renders_capped_count() {
        let g = parse("e a x\ne a y\ne a z\ne b x\ne b y\ne b z");
        let report = analyze(&g, 2).unwrap();
        assert!(report.to_text().starts_with("holes >2\n"));
    }
}

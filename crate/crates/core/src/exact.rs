//! Exhaustive competition-number solver for desk-scale graphs.
//!
//! Feasibility of `k` is decided by searching bottom-up orders of
//! `V(G) ∪ I_k`: each prey taken off the bottom receives an in-neighborhood
//! that is a clique among the still-unplaced vertices, and the union of
//! those cliques' edge sets must come out to exactly `E(G)`. Isolated prey
//! are interchangeable, so only their count is tracked, and a vertex may
//! only be placed once all of its edges are covered (nothing below it
//! could cover them later).

use std::collections::BTreeSet;

use thiserror::Error;

use crate::graph::{Digraph, FreshNamer, Graph, VertexId};
use crate::verify;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("search node limit exhausted after {0} nodes")]
    BudgetExhausted(u64),
    #[error("no feasible k up to max_k={0}")]
    MaxKExceeded(usize),
    #[error("instance too large for the exact solver: {0}")]
    TooLarge(String),
}

/// Limits for the exhaustive search. `time_hint_secs` is advisory only;
/// the node limit is what the search enforces.
#[derive(Debug, Clone)]
pub struct SolveBudget {
    pub max_k: usize,
    pub node_limit: u64,
    pub time_hint_secs: u64,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget { max_k: 8, node_limit: 20_000_000, time_hint_secs: 30 }
    }
}

#[derive(Debug, Clone)]
pub struct ExactWitness {
    pub k: usize,
    pub digraph: Digraph,
    pub isolated: BTreeSet<VertexId>,
}

const MAX_VERTICES: usize = 16;
const MAX_EDGES: usize = 64;

struct Instance {
    ids: Vec<VertexId>,
    /// Clique member masks paired with the edge mask they cover, largest
    /// cliques first.
    cliques: Vec<(u64, u64)>,
    incident: Vec<u64>,
    edge_count: usize,
}

impl Instance {
    fn build(g: &Graph) -> Result<Instance, SolveError> {
        let n = g.vertex_count();
        let m = g.edge_count();
        if n > MAX_VERTICES || m > MAX_EDGES {
            return Err(SolveError::TooLarge(format!("{n} vertices, {m} edges")));
        }
        let ids: Vec<VertexId> = g.vertices().cloned().collect();
        let pos = |v: &VertexId| ids.binary_search(v).expect("vertex present");
        let mut adj = vec![0u64; n];
        for e in g.edges() {
            let (u, v) = (pos(e.lo()), pos(e.hi()));
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        let edges: Vec<(usize, usize)> =
            g.edges().iter().map(|e| (pos(e.lo()), pos(e.hi()))).collect();
        let edge_bit = |u: usize, v: usize| {
            let key = (u.min(v), u.max(v));
            1u64 << edges.binary_search(&key).expect("edge present")
        };
        let mut incident = vec![0u64; n];
        for &(u, v) in &edges {
            incident[u] |= edge_bit(u, v);
            incident[v] |= edge_bit(u, v);
        }

        // All cliques on >= 2 vertices, by ascending-member extension.
        let mut cliques: Vec<(u64, u64)> = Vec::new();
        let mut stack: Vec<(u64, u64, u64)> = Vec::new(); // members, edges, candidates
        for (v, nb) in adj.iter().enumerate() {
            stack.push((1 << v, 0, nb & !((1 << (v + 1)) - 1)));
        }
        while let Some((members, covered, candidates)) = stack.pop() {
            let mut rest = candidates;
            while rest != 0 {
                let w = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let mut new_edges = covered;
                let mut inside = members;
                while inside != 0 {
                    let u = inside.trailing_zeros() as usize;
                    inside &= inside - 1;
                    new_edges |= edge_bit(u, w);
                }
                let new_members = members | (1 << w);
                cliques.push((new_members, new_edges));
                stack.push((new_members, new_edges, candidates & adj[w] & !((1u64 << (w + 1)) - 1)));
            }
        }
        cliques.sort_by_key(|(members, _)| (std::cmp::Reverse(members.count_ones()), *members));
        Ok(Instance { ids, cliques, incident, edge_count: m })
    }
}

enum Prey {
    Iso(usize),
    Placed(usize),
}

struct Search<'a> {
    inst: &'a Instance,
    nodes_left: u64,
    node_limit: u64,
    steps: Vec<(Prey, u64)>,
}

impl Search<'_> {
    fn run(&mut self, r: u64, m: u64, iso_left: usize) -> Result<bool, SolveError> {
        if m == 0 {
            return Ok(true);
        }
        // Any uncovered edge no remaining clique can reach is fatal.
        let mut reachable = 0u64;
        for &(members, edges) in &self.inst.cliques {
            if members & !r == 0 {
                reachable |= edges;
            }
        }
        if m & !reachable != 0 {
            return Ok(false);
        }

        // A vertex with all incident edges covered can always be placed
        // next: anything its in-neighborhood could still cover, the same
        // clique without it covers too.
        let mut cleared = None;
        let mut scan = r;
        while scan != 0 {
            let v = scan.trailing_zeros() as usize;
            scan &= scan - 1;
            if self.inst.incident[v] & m == 0 {
                cleared = Some(v);
                break;
            }
        }

        if let Some(p) = cleared {
            let r_next = r & !(1u64 << p);
            for i in 0..self.inst.cliques.len() {
                let (members, edges) = self.inst.cliques[i];
                if members & !r_next != 0 || edges & m == 0 {
                    continue;
                }
                self.spend()?;
                self.steps.push((Prey::Placed(p), members));
                if self.run(r_next, m & !edges, iso_left)? {
                    return Ok(true);
                }
                self.steps.pop();
            }
            self.spend()?;
            self.steps.push((Prey::Placed(p), 0));
            if self.run(r_next, m, iso_left)? {
                return Ok(true);
            }
            self.steps.pop();
            return Ok(false);
        }

        if iso_left > 0 {
            for i in 0..self.inst.cliques.len() {
                let (members, edges) = self.inst.cliques[i];
                if members & !r != 0 || edges & m == 0 {
                    continue;
                }
                self.spend()?;
                self.steps.push((Prey::Iso(iso_left), members));
                if self.run(r, m & !edges, iso_left - 1)? {
                    return Ok(true);
                }
                self.steps.pop();
            }
        }
        Ok(false)
    }

    fn spend(&mut self) -> Result<(), SolveError> {
        if self.nodes_left == 0 {
            return Err(SolveError::BudgetExhausted(self.node_limit));
        }
        self.nodes_left -= 1;
        Ok(())
    }
}

fn witness_digraph(
    g: &Graph,
    inst: &Instance,
    steps: &[(Prey, u64)],
    iso_names: &[VertexId],
) -> Digraph {
    let mut d = Digraph::new();
    for v in g.vertices() {
        d.add_vertex(v.clone());
    }
    for name in iso_names {
        d.add_vertex(name.clone());
    }
    for (prey, members) in steps {
        let prey_id = match prey {
            Prey::Iso(countdown) => iso_names[iso_names.len() - countdown].clone(),
            Prey::Placed(p) => inst.ids[*p].clone(),
        };
        let mut inside = *members;
        while inside != 0 {
            let u = inside.trailing_zeros() as usize;
            inside &= inside - 1;
            d.add_arc(inst.ids[u].clone(), prey_id.clone()).expect("prey differs from source");
        }
    }
    d
}

/// Searches for an acyclic digraph on `V(g)` plus `k` isolated vertices
/// whose competition graph is exactly `g` with those vertices added.
/// `Ok(None)` means no such digraph exists.
pub fn feasible(g: &Graph, k: usize, budget: &SolveBudget) -> Result<Option<Digraph>, SolveError> {
    let mut namer = FreshNamer::for_graph(g);
    let iso_names: Vec<VertexId> = (0..k).map(|_| namer.fresh()).collect();
    let inst = Instance::build(g)?;
    let mut nodes_left = budget.node_limit;
    feasible_inner(g, &inst, &iso_names, &mut nodes_left, budget.node_limit)
}

fn feasible_inner(
    g: &Graph,
    inst: &Instance,
    iso_names: &[VertexId],
    nodes_left: &mut u64,
    node_limit: u64,
) -> Result<Option<Digraph>, SolveError> {
    let n = g.vertex_count();
    let full_r = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let full_m = if inst.edge_count == 64 {
        u64::MAX
    } else {
        (1u64 << inst.edge_count) - 1
    };
    let mut search = Search { inst, nodes_left: *nodes_left, node_limit, steps: Vec::new() };
    let outcome = search.run(full_r, full_m, iso_names.len());
    *nodes_left = search.nodes_left;
    if outcome? {
        let d = witness_digraph(g, inst, &search.steps, iso_names);
        debug_assert!(verify::is_acyclic(&d).is_ok());
        Ok(Some(d))
    } else {
        Ok(None)
    }
}

/// The smallest `k` for which [`feasible`] succeeds, with its witness.
pub fn exact_k(g: &Graph, budget: &SolveBudget) -> Result<ExactWitness, SolveError> {
    let mut namer = FreshNamer::for_graph(g);
    exact_k_with_namer(g, budget, &mut namer)
}

/// As [`exact_k`], drawing isolated-vertex names from a caller-managed
/// pool so they stay globally fresh across a larger construction.
pub fn exact_k_with_namer(
    g: &Graph,
    budget: &SolveBudget,
    namer: &mut FreshNamer,
) -> Result<ExactWitness, SolveError> {
    let inst = Instance::build(g)?;
    // Node spending is shared across the escalation in k.
    let mut nodes_left = budget.node_limit;
    let mut iso_names: Vec<VertexId> = Vec::new();
    for k in 0..=budget.max_k {
        while iso_names.len() < k {
            iso_names.push(namer.fresh());
        }
        let result = feasible_inner(g, &inst, &iso_names, &mut nodes_left, budget.node_limit)?;
        if let Some(d) = result {
            let witness = ExactWitness {
                k,
                digraph: d,
                isolated: iso_names.iter().cloned().collect(),
            };
            debug_assert!({
                let mut expected = g.clone();
                for v in &witness.isolated {
                    expected.add_vertex(v.clone());
                }
                verify::competition_graph(&witness.digraph) == expected
            });
            return Ok(witness);
        }
    }
    Err(SolveError::MaxKExceeded(budget.max_k))
}

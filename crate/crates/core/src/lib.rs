//! Certified upper bounds on competition numbers of graphs with few holes.
//!
//! The pipeline builds explicit acyclic-digraph witnesses for `k(G) <= k`
//! claims, re-checks every structural step at runtime, and falls back to an
//! exhaustive exact solver whenever a step cannot be validated. A separate
//! verifier module checks finished certificates straight from the
//! competition-graph definition and shares no code with the construction.

#![forbid(unsafe_code)]

pub mod certificate;
pub mod construct;
pub mod corpus;
pub mod exact;
pub mod graph;
pub mod hole;
pub mod scan;
pub mod verify;

pub use certificate::{Certificate, Derivation};
pub use construct::{
    avoid2_decompose, certify, certify_with, chordal_witness, compose, find_removable_edge,
    CertifyError, ConstructError, CutDecomposition,
};
pub use exact::{exact_k, feasible, ExactWitness, SolveBudget, SolveError};
pub use graph::{vid, Digraph, Edge, FreshNamer, Graph, GraphError, ParseError, VertexId};
pub use hole::{
    analyze, c_avoiding_path, chordality, enumerate_holes, lemma_flags, shared_edge_path, x_set,
    Chordality, Hole, HoleError, HoleReport, LemmaFlags, Peo, SharedPath,
};
pub use scan::{run_scan, ScanConfig, ScanError, ScanMode, ScanReport};
pub use verify::{competition_graph, competition_graph_pairwise, is_acyclic, verify_certificate, Verdict};

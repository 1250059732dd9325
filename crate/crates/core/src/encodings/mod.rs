//! Removal-lemma encodings and the pipelines that extract configurations
//! from them.
//!
//! Each pipeline builds a graph (or hypergraph) whose generator triangles
//! (cliques) come straight from the set, looks for one extra triangle, and
//! turns it back into a configuration. At desk scale nothing guarantees an
//! extra triangle exists, so every pipeline may legitimately end in
//! `NotFound`; the [`PipelineTrace`] records the stage where that happened.

mod elso;
mod harmadik;
mod hypergraph;
mod pigeonhole;
mod trace;
mod tripartite;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::ConfigError;
use crate::group::GroupError;

pub use elso::{coset_scopes, elso_from_triangle, find_elso_via_graph, ScopePolicy};
pub use harmadik::{harmadik_pipeline, HSelect};
pub use hypergraph::{
    build_corner_hypergraph, find_corner_via_hypergraph, pigeonhole_block, BlockPolicy, Clique,
    GridBlock, KPartiteHypergraph,
};
pub use pigeonhole::{coset_pair_counts, pigeonhole_coset_pair, CosetPair};
pub use trace::{
    Outcome, OutcomeStatus, PipelineOutcome, PipelineTrace, StageRecord, TRACE_SCHEMA_VERSION,
};
pub use tripartite::{build_stage1_graph, Scope, Triangle, TripartiteGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodingError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("subgroup {0} is not abelian")]
    NotAbelianSubgroup(String),
    #[error("set over a group of order {set} used with a group of order {group}")]
    OrderMismatch { set: usize, group: usize },
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

/// Triangle (or clique) counts of an encoding.
///
/// `total_count = generator_count + non_generator_count` whenever the
/// generators are edge-disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub generator_count: u64,
    pub total_count: u64,
    pub non_generator_count: u64,
    /// Generator triangles pairwise share no edge.
    pub edge_disjoint: bool,
    /// Every edge lies in exactly one triangle.
    pub unique_clique_cover: bool,
}

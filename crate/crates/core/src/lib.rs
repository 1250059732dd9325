//! Roth-type configurations in finite groups.
//!
//! The crate is organised around four layers:
//!
//! - [`group`]: finite groups as Cayley tables, subgroups, cosets, Sylow and
//!   abelian subgroups.
//! - [`config`]: the configurations themselves (Roth triples, the two- and
//!   four-point patterns over `G×G`, arithmetic progressions `b, db, d²b`,
//!   corners in `Gᵈ`, solutions of `xz = y²`) with brute-force finders,
//!   counters and a witness validator.
//! - [`encodings`]: the removal-lemma encodings, which turn a set into a
//!   tripartite graph or a `(d+1)`-partite hypergraph whose extra triangles or
//!   cliques are exactly the configurations.
//! - [`extremal`]: exact and heuristic maximum configuration-free sets and
//!   random density experiments.

mod bits;
pub mod config;
pub mod encodings;
pub mod extremal;
pub mod group;

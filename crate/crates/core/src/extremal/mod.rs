//! Largest configuration-free sets and random density experiments.
//!
//! Both searches work on a precomputed configuration hypergraph: every
//! configuration of the requested kind in the full ground set becomes the
//! set of items (points) it uses. A subset is configuration-free exactly
//! when it contains no such item set.

mod exact;
mod experiment;
mod heuristic;

use std::time::Duration;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::config::{
    all_witnesses, find_config, ConfigError, ConfigKind, ElementSet, GridSet, Ground, PairSet,
    Policy, SetRef,
};
use crate::group::{Elem, FiniteGroup, GroupError, Subgroup};

pub use exact::max_free_exact;
pub use experiment::{density_experiment, ExperimentReport};
pub use heuristic::max_free_heuristic;

/// Version of the [`SearchResult`] and [`ExperimentReport`] JSON layouts.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExtremalError {
    #[error("search budget exhausted after {} nodes; best set so far has size {}", best.nodes, best.size)]
    BudgetExceeded { best: Box<SearchResult> },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    Exact,
    Heuristic,
}

/// Limits on a search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBudget {
    pub node_cap: u64,
    pub time_cap: Duration,
    pub mode: SearchMode,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            node_cap: 100_000_000,
            time_cap: Duration::from_secs(60),
            mode: SearchMode::Exact,
        }
    }
}

impl SearchBudget {
    fn check(&self) -> Result<(), ExtremalError> {
        if self.node_cap == 0 || self.time_cap.is_zero() {
            return Err(ExtremalError::InvalidParameter(
                "search caps must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// What to search: a configuration kind over a group, with its subgroup,
/// policy and (for corners) grid dimension.
#[derive(Debug, Clone, Copy)]
pub struct Instance<'a> {
    pub group: &'a FiniteGroup,
    pub subgroup: &'a Subgroup,
    pub kind: ConfigKind,
    pub policy: Policy,
    /// Grid dimension; only read for corners.
    pub dim: usize,
}

impl<'a> Instance<'a> {
    pub fn new(group: &'a FiniteGroup, subgroup: &'a Subgroup, kind: ConfigKind) -> Self {
        Instance {
            group,
            subgroup,
            kind,
            policy: Policy::default(),
            dim: 2,
        }
    }

    pub fn with_policy(mut self, policy: Policy) -> Self {
        self.policy = policy;
        self
    }

    pub fn with_dim(mut self, dim: usize) -> Self {
        self.dim = dim;
        self
    }

    /// Number of points in the ground set.
    pub fn ground_size(&self) -> Result<usize, ExtremalError> {
        let n = self.group.order();
        Ok(match self.kind.ground() {
            Ground::Elements => n,
            Ground::Pairs => n * n,
            Ground::Grid => GridSet::empty(n, self.dim)?.cells(),
        })
    }

    /// Set of the ground shape holding the given item indices.
    pub fn set_from_items(&self, items: &[usize]) -> Result<OwnedSet, ExtremalError> {
        let n = self.group.order();
        Ok(match self.kind.ground() {
            Ground::Elements => {
                OwnedSet::Elements(ElementSet::from_elements(n, items.iter().copied())?)
            }
            Ground::Pairs => OwnedSet::Pairs(PairSet::from_indices(n, items.iter().copied())),
            Ground::Grid => {
                OwnedSet::Grid(GridSet::from_indices(n, self.dim, items.iter().copied())?)
            }
        })
    }

    /// A uniformly random set of `⌊density·N⌋` items.
    pub fn random_set(
        &self,
        density: f64,
        rng: &mut impl rand::Rng,
    ) -> Result<OwnedSet, ExtremalError> {
        let n = self.group.order();
        Ok(match self.kind.ground() {
            Ground::Elements => OwnedSet::Elements(ElementSet::random(n, density, rng)),
            Ground::Pairs => OwnedSet::Pairs(PairSet::random(n, density, rng)),
            Ground::Grid => OwnedSet::Grid(GridSet::random(n, self.dim, density, rng)?),
        })
    }

    fn item_point(&self, item: usize) -> Vec<Elem> {
        let n = self.group.order();
        match self.kind.ground() {
            Ground::Elements => vec![item],
            Ground::Pairs => vec![item / n, item % n],
            Ground::Grid => {
                let mut p = vec![0; self.dim];
                let mut rest = item;
                for c in (0..self.dim).rev() {
                    p[c] = rest % n;
                    rest /= n;
                }
                p
            }
        }
    }

    fn point_item(&self, p: &[Elem]) -> usize {
        let n = self.group.order();
        p.iter().fold(0, |acc, &x| acc * n + x)
    }

    /// Whether `set` contains a configuration, by the brute-force finder.
    pub fn contains_config(&self, set: &OwnedSet) -> Result<bool, ExtremalError> {
        Ok(find_config(
            self.kind,
            self.group,
            set.as_ref(),
            self.subgroup,
            &self.policy,
        )?
        .is_some())
    }
}

/// A set of any ground shape.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OwnedSet {
    Pairs(PairSet),
    Elements(ElementSet),
    Grid(GridSet),
}

impl OwnedSet {
    pub fn as_ref(&self) -> SetRef<'_> {
        match self {
            OwnedSet::Pairs(s) => SetRef::Pairs(s),
            OwnedSet::Elements(s) => SetRef::Elements(s),
            OwnedSet::Grid(s) => SetRef::Grid(s),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            OwnedSet::Pairs(s) => s.size(),
            OwnedSet::Elements(s) => s.size(),
            OwnedSet::Grid(s) => s.size(),
        }
    }
}

/// A configuration-free set found by a search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub schema_version: u32,
    pub group: String,
    pub subgroup: Vec<Elem>,
    pub kind: ConfigKind,
    pub policy: Policy,
    pub mode: SearchMode,
    pub ground_size: usize,
    pub size: usize,
    /// Proved maximum by an exhausted search tree.
    pub optimal: bool,
    pub nodes: u64,
    /// Members of the set, as points of the ground set.
    pub set: Vec<Vec<Elem>>,
}

impl SearchResult {
    /// Single-row CSV with a header.
    pub fn to_csv(&self) -> Result<String, ExtremalError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let row = |w: &mut csv::Writer<Vec<u8>>, fields: &[String]| {
            w.write_record(fields)
                .map_err(|e| ExtremalError::InvariantViolation(e.to_string()))
        };
        row(
            &mut w,
            &[
                "group",
                "kind",
                "mode",
                "ground_size",
                "size",
                "optimal",
                "nodes",
            ]
            .map(String::from),
        )?;
        row(
            &mut w,
            &[
                self.group.clone(),
                self.kind.as_str().to_string(),
                format!("{:?}", self.mode).to_lowercase(),
                self.ground_size.to_string(),
                self.size.to_string(),
                self.optimal.to_string(),
                self.nodes.to_string(),
            ],
        )?;
        csv_string(w)
    }
}

pub(crate) fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, ExtremalError> {
    let bytes = w
        .into_inner()
        .map_err(|e| ExtremalError::InvariantViolation(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| ExtremalError::InvariantViolation(e.to_string()))
}

/// Every configuration as a sorted list of distinct items, plus, for each
/// item, the configurations whose largest item it is.
pub(crate) struct ConfigHypergraph {
    pub items: usize,
    pub configs: Vec<Vec<usize>>,
    /// Configurations indexed by their largest item.
    pub closing: Vec<Vec<usize>>,
    /// Configurations containing each item.
    pub containing: Vec<Vec<usize>>,
}

impl ConfigHypergraph {
    pub fn build(inst: &Instance<'_>) -> Result<Self, ExtremalError> {
        let items = inst.ground_size()?;
        let full: Vec<usize> = (0..items).collect();
        let set = inst.set_from_items(&full)?;
        let witnesses = all_witnesses(
            inst.kind,
            inst.group,
            set.as_ref(),
            inst.subgroup,
            &inst.policy,
        )?;
        let mut configs: Vec<Vec<usize>> = witnesses
            .iter()
            .map(|w| {
                let mut v: Vec<usize> = w.points.iter().map(|p| inst.point_item(p)).collect();
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect();
        configs.sort();
        configs.dedup();
        let mut closing = vec![Vec::new(); items];
        let mut containing = vec![Vec::new(); items];
        for (c, cfg) in configs.iter().enumerate() {
            closing[*cfg.last().expect("configurations are nonempty")].push(c);
            for &i in cfg {
                containing[i].push(c);
            }
        }
        Ok(ConfigHypergraph {
            items,
            configs,
            closing,
            containing,
        })
    }

    /// Whether adding `item` to `chosen` completes a configuration.
    pub fn completes(&self, chosen: &[bool], item: usize) -> bool {
        self.containing[item]
            .iter()
            .any(|&c| self.configs[c].iter().all(|&j| j == item || chosen[j]))
    }
}

/// Re-checks a claimed configuration-free set with the brute-force finder
/// and packages it.
pub(crate) fn finish(
    inst: &Instance<'_>,
    mode: SearchMode,
    items: &[usize],
    optimal: bool,
    nodes: u64,
) -> Result<SearchResult, ExtremalError> {
    let set = inst.set_from_items(items)?;
    if inst.contains_config(&set)? {
        return Err(ExtremalError::InvariantViolation(format!(
            "search returned a set of size {} that contains a {} configuration",
            items.len(),
            inst.kind
        )));
    }
    Ok(SearchResult {
        schema_version: REPORT_SCHEMA_VERSION,
        group: inst.group.name().to_string(),
        subgroup: inst.subgroup.elements().to_vec(),
        kind: inst.kind,
        policy: inst.policy,
        mode,
        ground_size: inst.ground_size()?,
        size: items.len(),
        optimal,
        nodes,
        set: items.iter().map(|&i| inst.item_point(i)).collect(),
    })
}

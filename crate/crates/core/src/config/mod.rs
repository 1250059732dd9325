//! Configurations and their brute-force oracles.
//!
//! Every configuration the pipelines in [`crate::encodings`] extract is
//! defined here directly by its identities. The finders scan in a fixed
//! lexicographic order and return the least witness; the counters enumerate
//! the same space exhaustively.

mod finders;
mod sets;
mod validate;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::Elem;

pub use finders::*;
pub use sets::{
    parse_set_file, ElementSet, GridSet, PairSet, SetFile, MAX_GRID_CELLS, MAX_GRID_DIM,
};
pub use validate::{validate_witness, SetRef, Validation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigError {
    #[error("witness of kind {kind} cannot be checked against a {context}")]
    KindMismatch {
        kind: ConfigKind,
        context: &'static str,
    },
    #[error("grid dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("grid over a group of order {order} in dimension {dim} exceeds {cap} cells")]
    GridTooLarge {
        order: usize,
        dim: usize,
        cap: usize,
    },
    #[error("point {point:?} is outside a group of order {order}")]
    OutOfRange { point: Vec<Elem>, order: usize },
    #[error("set over a group of order {set} used with a group of order {group}")]
    OrderMismatch { set: usize, group: usize },
    #[error("corners need an abelian group, {0} is not abelian")]
    NotAbelian(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}

/// Which ground set a configuration lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ground {
    Elements,
    Pairs,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigKind {
    /// `(a,b), (ad,b), (a,db)` with `d ∈ H`.
    Elso,
    /// `(a,b), (a,c), (e,f)` with `ab = ec` and `ac = ef`.
    Harmadik,
    /// `(a,b), (a,c), (e,c), (e,f)` with `ab = ec` and `ac = ef`.
    Quadruple,
    /// `(a,b), (a,db), (ad⁻¹,d²b)` with `d ∈ H`.
    Corollary,
    /// `b, db, d²b` with `d ∈ H`.
    Ap3,
    /// A base point of `Gᵈ` and its `d` translates by `δ ∈ H` along each axis.
    Corner,
    /// `x, y, z` with `xz = y²`.
    Ksv,
}

impl ConfigKind {
    pub const ALL: [ConfigKind; 7] = [
        ConfigKind::Elso,
        ConfigKind::Harmadik,
        ConfigKind::Quadruple,
        ConfigKind::Corollary,
        ConfigKind::Ap3,
        ConfigKind::Corner,
        ConfigKind::Ksv,
    ];

    pub fn ground(self) -> Ground {
        match self {
            ConfigKind::Elso
            | ConfigKind::Harmadik
            | ConfigKind::Quadruple
            | ConfigKind::Corollary => Ground::Pairs,
            ConfigKind::Ap3 | ConfigKind::Ksv => Ground::Elements,
            ConfigKind::Corner => Ground::Grid,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            ConfigKind::Elso => "elso",
            ConfigKind::Harmadik => "harmadik",
            ConfigKind::Quadruple => "quadruple",
            ConfigKind::Corollary => "corollary",
            ConfigKind::Ap3 => "ap3",
            ConfigKind::Corner => "corner",
            ConfigKind::Ksv => "ksv",
        }
    }

    /// Whether the configuration's parameter is drawn from a subgroup `H`.
    pub fn uses_subgroup(self) -> bool {
        matches!(
            self,
            ConfigKind::Elso | ConfigKind::Corollary | ConfigKind::Ap3 | ConfigKind::Corner
        )
    }
}

impl fmt::Display for ConfigKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ConfigKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ConfigKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown configuration kind {s:?}"))
    }
}

/// Nondegeneracy flags. The default excludes the trivial instances: `d = e`
/// (or `δ = 0`), `e = a`, and progressions with repeated terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Policy {
    /// Parameter `d`/`δ` must not be the identity.
    pub nontrivial_parameter: bool,
    /// `e ≠ a` in the two- and four-point patterns over `G×G` (and in the
    /// corollary triple, where `e = ad⁻¹`).
    pub distinct_rows: bool,
    /// Parameter `d` must not have order two.
    pub exclude_involutions: bool,
    /// The points of an arithmetic progression (or of a solution to
    /// `xz = y²`) must be pairwise distinct.
    pub distinct_points: bool,
}

impl Default for Policy {
    fn default() -> Self {
        Policy {
            nontrivial_parameter: true,
            distinct_rows: true,
            exclude_involutions: false,
            distinct_points: true,
        }
    }
}

impl Policy {
    /// Accepts every instance, including degenerate ones.
    pub fn permissive() -> Self {
        Policy {
            nontrivial_parameter: false,
            distinct_rows: false,
            exclude_involutions: false,
            distinct_points: false,
        }
    }
}

/// A found configuration. `points` are tuples of element indices: pairs for
/// configurations over `G×G`, 1-tuples for `ap3` and `ksv`, `d`-tuples for
/// corners.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ConfigWitness {
    pub kind: ConfigKind,
    pub points: Vec<Vec<Elem>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parameter: Option<Elem>,
}

impl ConfigWitness {
    pub fn new(kind: ConfigKind, points: Vec<Vec<Elem>>, parameter: Option<Elem>) -> Self {
        ConfigWitness {
            kind,
            points,
            parameter,
        }
    }

    pub(crate) fn pairs(kind: ConfigKind, pairs: &[(Elem, Elem)], parameter: Option<Elem>) -> Self {
        Self::new(
            kind,
            pairs.iter().map(|&(a, b)| vec![a, b]).collect(),
            parameter,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kind_names_round_trip() {
        for k in ConfigKind::ALL {
            assert_eq!(k.as_str().parse::<ConfigKind>().unwrap(), k);
            assert_eq!(serde_json::to_string(&k).unwrap(), format!("\"{k}\""));
        }
        assert!("roth".parse::<ConfigKind>().is_err());
    }

    #[test]
    fn witness_json_shape() {
        let w = ConfigWitness::pairs(ConfigKind::Elso, &[(0, 0), (1, 0), (0, 1)], Some(1));
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"elso","points":[[0,0],[1,0],[0,1]],"parameter":1}"#
        );
        let back: ConfigWitness = serde_json::from_str(&json).unwrap();
        assert_eq!(back, w);
    }
}

//! Finite groups given by dense Cayley tables.
//!
//! Elements are the indices `0..n` and the identity is always `0`. Tables
//! loaded from files are relabelled so that this holds; the named families
//! in [`named`] are built with the identity at `0` directly.

mod cosets;
mod facts;
pub mod library;
pub mod named;
mod parse;
mod subgroup;

use std::fmt;

use thiserror::Error;

pub use cosets::{cosets, left_coset, right_coset, CosetPartition, Side};
pub use facts::{group_facts, GroupFacts};
pub use named::{make_named_group, make_named_group_with_cap, GroupSpec};
pub use parse::{load_cayley_table, parse_cayley_table};
pub use subgroup::{
    all_subgroups, all_subgroups_with_cap, max_abelian_subgroup, max_abelian_subgroup_with_cap,
    sylow_subgroup, sylow_subgroup_with_cap, Subgroup,
};

/// Element of a [`FiniteGroup`], as an index into its Cayley table.
pub type Elem = usize;

/// Default cap on the order of constructed groups.
pub const DEFAULT_ORDER_CAP: usize = 1024;
/// Default cap on the order of groups whose subgroup lattice is enumerated.
pub const DEFAULT_SUBGROUP_CAP: usize = 64;

/// The group axiom that a candidate table violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    Closure,
    Identity,
    Inverse,
    Associativity,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::Closure => "closure",
            Axiom::Identity => "identity",
            Axiom::Inverse => "inverse",
            Axiom::Associativity => "associativity",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("not a group: {axiom} fails at {witness:?}")]
    NotAGroup { axiom: Axiom, witness: Vec<Elem> },
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OverflowGuard { order: usize, cap: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
}

/// A finite group stored as a validated multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    abelian: bool,
    name: String,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("abelian", &self.abelian)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a product function without checking the axioms.
    ///
    /// Only used for the named families, whose constructions are group laws
    /// by definition and whose axioms are verified exhaustively in tests.
    pub(crate) fn from_fn_unchecked(
        name: impl Into<String>,
        order: usize,
        mul: impl Fn(Elem, Elem) -> Elem,
    ) -> Self {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                debug_assert!(c < order);
                table.push(c as u32);
            }
        }
        Self::from_raw(name.into(), order, table)
    }

    fn from_raw(name: String, order: usize, table: Vec<u32>) -> Self {
        let mut inverses = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            if let Some(b) = row.iter().position(|&c| c == 0) {
                inverses[a] = b as u32;
            }
        }
        let abelian = (0..order)
            .all(|a| (a + 1..order).all(|b| table[a * order + b] == table[b * order + a]));
        FiniteGroup {
            order,
            table,
            inverses,
            abelian,
            name,
        }
    }

    /// Validates `rows` as a Cayley table and relabels it so the identity is
    /// element `0`.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<Elem>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::UnsupportedParameter(
                "a group needs at least one element".into(),
            ));
        }
        for (a, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(GroupError::Parse {
                    line: a + 2,
                    message: format!("row {a} has {} entries, expected {n}", row.len()),
                });
            }
            if let Some(b) = row.iter().position(|&c| c >= n) {
                return Err(GroupError::NotAGroup {
                    axiom: Axiom::Closure,
                    witness: vec![a, b],
                });
            }
        }
        let at = |a: Elem, b: Elem| rows[a][b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|a| at(e, a) == a && at(a, e) == a))
            .ok_or(GroupError::NotAGroup {
                axiom: Axiom::Identity,
                witness: vec![],
            })?;

        for a in 0..n {
            if !(0..n).any(|b| at(a, b) == identity && at(b, a) == identity) {
                return Err(GroupError::NotAGroup {
                    axiom: Axiom::Inverse,
                    witness: vec![a],
                });
            }
        }

        for a in 0..n {
            for b in 0..n {
                let ab = at(a, b);
                for c in 0..n {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAGroup {
                            axiom: Axiom::Associativity,
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }

        // swap labels 0 and identity
        let relabel = |x: Elem| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        Ok(Self::from_fn_unchecked(name, n, |a, b| {
            relabel(at(relabel(a), relabel(b)))
        }))
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b] as Elem
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a] as Elem
    }

    /// `a⁻¹ · b`
    #[inline]
    pub fn left_div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.inv(a), b)
    }

    /// `a · b⁻¹`
    #[inline]
    pub fn right_div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, k: usize) -> Elem {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    /// Smallest `k ≥ 1` with `a^k = e`.
    pub fn element_order(&self, a: Elem) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn row(&self, a: Elem) -> impl Iterator<Item = Elem> + '_ {
        self.table[a * self.order..(a + 1) * self.order]
            .iter()
            .map(|&c| c as Elem)
    }

    /// Checks all four axioms exhaustively; associativity costs `n³`.
    pub fn check_axioms(&self) -> Result<(), GroupError> {
        let n = self.order;
        for a in 0..n {
            for b in 0..n {
                if self.table[a * n + b] as usize >= n {
                    return Err(GroupError::NotAGroup {
                        axiom: Axiom::Closure,
                        witness: vec![a, b],
                    });
                }
            }
        }
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(GroupError::NotAGroup {
                    axiom: Axiom::Identity,
                    witness: vec![a],
                });
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(GroupError::NotAGroup {
                    axiom: Axiom::Inverse,
                    witness: vec![a],
                });
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(GroupError::NotAGroup {
                            axiom: Axiom::Associativity,
                            witness: vec![a, b, c],
                        });
                    }
                }
            }
        }
        Ok(())
    }

    /// Serializes the table in the text group file format.
    pub fn to_table_text(&self) -> String {
        let mut out = format!("# {}\n{}\n", self.name, self.order);
        for a in 0..self.order {
            let row: Vec<String> = self.row(a).map(|c| c.to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

pub(crate) fn is_prime(p: usize) -> bool {
    p >= 2
        && (2..)
            .take_while(|d| d * d <= p)
            .all(|d| !p.is_multiple_of(d))
}

/// Prime factorization as `(p, multiplicity)` pairs in increasing order of `p`.
pub(crate) fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relabels_identity_to_zero() {
        // Z2 with identity labelled 1
        let g = FiniteGroup::from_table("z2", &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 1), 0);
        g.check_axioms().unwrap();
    }

    #[test]
    fn idempotent_non_identity_is_rejected() {
        let rows = vec![vec![0, 1, 2], vec![1, 1, 1], vec![2, 1, 0]];
        let err = FiniteGroup::from_table("bad", &rows).unwrap_err();
        assert!(matches!(
            err,
            GroupError::NotAGroup {
                axiom: Axiom::Inverse,
                ..
            }
        ));
    }

    #[test]
    fn non_associative_loop_is_rejected() {
        // a Latin square with identity 0 that is not associative
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table("loop", &rows).unwrap_err();
        assert!(matches!(
            err,
            GroupError::NotAGroup {
                axiom: Axiom::Associativity,
                ..
            }
        ));
    }

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(49), vec![(7, 2)]);
        assert!(is_prime(13) && !is_prime(1) && !is_prime(15));
    }
}

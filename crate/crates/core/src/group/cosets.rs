use serde::{Deserialize, Serialize};

use super::{Elem, FiniteGroup, GroupError, Subgroup};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// Blocks `ℓH`.
    Left,
    /// Blocks `Hr`.
    Right,
}

/// Partition of a group into the left or right cosets of a subgroup.
///
/// Blocks are listed in increasing order of their representative, which is
/// the minimal element of the block.
#[derive(Debug, Clone)]
pub struct CosetPartition {
    pub side: Side,
    pub subgroup: Subgroup,
    pub representatives: Vec<Elem>,
    pub blocks: Vec<Vec<Elem>>,
    block_of: Vec<usize>,
}

impl CosetPartition {
    /// Index of the block containing `x`.
    pub fn block_index(&self, x: Elem) -> usize {
        self.block_of[x]
    }

    /// Representative of the block containing `x`.
    pub fn representative(&self, x: Elem) -> Elem {
        self.representatives[self.block_of[x]]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// `{ x·h : h ∈ H }`, sorted.
pub fn left_coset(g: &FiniteGroup, h: &Subgroup, x: Elem) -> Vec<Elem> {
    let mut v: Vec<Elem> = h.elements().iter().map(|&y| g.mul(x, y)).collect();
    v.sort_unstable();
    v
}

/// `{ h·x : h ∈ H }`, sorted.
pub fn right_coset(g: &FiniteGroup, h: &Subgroup, x: Elem) -> Vec<Elem> {
    let mut v: Vec<Elem> = h.elements().iter().map(|&y| g.mul(y, x)).collect();
    v.sort_unstable();
    v
}

pub fn cosets(g: &FiniteGroup, h: &Subgroup, side: Side) -> Result<CosetPartition, GroupError> {
    h.check_closed(g)?;
    let mut block_of = vec![usize::MAX; g.order()];
    let mut representatives = Vec::with_capacity(h.index());
    let mut blocks = Vec::with_capacity(h.index());
    for x in g.elements() {
        if block_of[x] != usize::MAX {
            continue;
        }
        let block = match side {
            Side::Left => left_coset(g, h, x),
            Side::Right => right_coset(g, h, x),
        };
        for &y in &block {
            block_of[y] = blocks.len();
        }
        // x is the first unassigned element, hence the block minimum
        representatives.push(x);
        blocks.push(block);
    }
    Ok(CosetPartition {
        side,
        subgroup: h.clone(),
        representatives,
        blocks,
        block_of,
    })
}

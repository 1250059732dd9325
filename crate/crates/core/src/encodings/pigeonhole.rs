use serde::{Deserialize, Serialize};

use super::EncodingError;
use crate::config::PairSet;
use crate::group::{cosets, Elem, FiniteGroup, Side, Subgroup};

/// A block `ℓH × Hr` and how much of the set it holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetPair {
    pub l: Elem,
    pub r: Elem,
    pub count: usize,
    /// `⌈|S| / [G:H]²⌉`, which `count` always reaches.
    pub bound: usize,
}

/// `|(ℓH × Hr) ∩ S|` for every pair of coset representatives, in
/// lexicographic order of `(ℓ, r)`.
pub fn coset_pair_counts(
    g: &FiniteGroup,
    s: &PairSet,
    h: &Subgroup,
) -> Result<Vec<(Elem, Elem, usize)>, EncodingError> {
    if s.order() != g.order() {
        return Err(EncodingError::OrderMismatch {
            set: s.order(),
            group: g.order(),
        });
    }
    let left = cosets(g, h, Side::Left)?;
    let right = cosets(g, h, Side::Right)?;
    let k = left.len();
    let mut counts = vec![0usize; k * k];
    for (a, b) in s.iter() {
        counts[left.block_index(a) * k + right.block_index(b)] += 1;
    }
    let mut out = Vec::with_capacity(k * k);
    for (i, &l) in left.representatives.iter().enumerate() {
        for (j, &r) in right.representatives.iter().enumerate() {
            out.push((l, r, counts[i * k + j]));
        }
    }
    Ok(out)
}

/// The densest block `ℓH × Hr`, least `(ℓ, r)` among ties.
pub fn pigeonhole_coset_pair(
    g: &FiniteGroup,
    s: &PairSet,
    h: &Subgroup,
) -> Result<CosetPair, EncodingError> {
    let counts = coset_pair_counts(g, s, h)?;
    let (l, r, count) = counts
        .into_iter()
        .fold(None::<(Elem, Elem, usize)>, |best, cur| match best {
            Some(b) if b.2 >= cur.2 => Some(b),
            _ => Some(cur),
        })
        .expect("at least one coset pair");
    let index = h.index();
    Ok(CosetPair {
        l,
        r,
        count,
        bound: s.size().div_ceil(index * index),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_named_group;

    #[test]
    fn odd_block_in_z6() {
        let g = make_named_group(&"cyclic:6".parse().unwrap()).unwrap();
        let h = Subgroup::from_elements(&g, [0, 2, 4]).unwrap();
        let odd = [1, 3, 5];
        let s = PairSet::from_fn(6, |a, b| odd.contains(&a) && odd.contains(&b));
        let p = pigeonhole_coset_pair(&g, &s, &h).unwrap();
        assert_eq!((p.l, p.r, p.count, p.bound), (1, 1, 9, 3));
    }

    #[test]
    fn empty_and_full() {
        let g = make_named_group(&"dihedral:3".parse().unwrap()).unwrap();
        let h = Subgroup::generated_by(&g, &[3]);
        let p = pigeonhole_coset_pair(&g, &PairSet::empty(6), &h).unwrap();
        assert_eq!((p.l, p.r, p.count, p.bound), (0, 0, 0, 0));
        let p = pigeonhole_coset_pair(&g, &PairSet::full(6), &h).unwrap();
        assert_eq!((p.l, p.r), (0, 0));
        assert_eq!(p.count, h.order() * h.order());
    }
}

use std::collections::HashSet;
use std::fmt;

use super::{factorize, is_prime, Elem, FiniteGroup, GroupError, DEFAULT_SUBGROUP_CAP};

/// A subgroup of a [`FiniteGroup`], stored as its sorted element list plus a
/// membership mask over the parent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: Vec<Elem>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.elements)
    }
}

impl fmt::Display for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Subgroup {
    fn from_sorted_unchecked(parent_order: usize, elements: Vec<Elem>) -> Self {
        let mut mask = vec![false; parent_order];
        for &e in &elements {
            mask[e] = true;
        }
        Subgroup { elements, mask }
    }

    /// Checks that `elements` is a subgroup of `g`.
    pub fn from_elements(
        g: &FiniteGroup,
        elements: impl IntoIterator<Item = Elem>,
    ) -> Result<Self, GroupError> {
        let mut elements: Vec<Elem> = elements.into_iter().collect();
        if let Some(&bad) = elements.iter().find(|&&e| e >= g.order()) {
            return Err(GroupError::NotASubgroup(format!(
                "element {bad} is outside a group of order {}",
                g.order()
            )));
        }
        elements.sort_unstable();
        elements.dedup();
        let h = Self::from_sorted_unchecked(g.order(), elements);
        h.check_closed(g)?;
        Ok(h)
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by(g: &FiniteGroup, gens: &[Elem]) -> Self {
        closure(g, &[g.identity()], gens)
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(g.order(), g.elements().collect())
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(g.order(), vec![g.identity()])
    }

    pub fn check_closed(&self, g: &FiniteGroup) -> Result<(), GroupError> {
        if self.mask.len() != g.order() {
            return Err(GroupError::NotASubgroup(format!(
                "subgroup of a group of order {} used with a group of order {}",
                self.mask.len(),
                g.order()
            )));
        }
        if !self.contains(g.identity()) {
            return Err(GroupError::NotASubgroup("missing the identity".into()));
        }
        for &a in &self.elements {
            if !self.contains(g.inv(a)) {
                return Err(GroupError::NotASubgroup(format!(
                    "inverse of {a} is missing"
                )));
            }
            for &b in &self.elements {
                let ab = g.mul(a, b);
                if !self.contains(ab) {
                    return Err(GroupError::NotASubgroup(format!(
                        "{a}·{b} = {ab} is missing"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn parent_order(&self) -> usize {
        self.mask.len()
    }

    pub fn index(&self) -> usize {
        self.parent_order() / self.order()
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.mask.get(e).copied().unwrap_or(false)
    }

    pub fn is_abelian(&self, g: &FiniteGroup) -> bool {
        self.elements.iter().enumerate().all(|(i, &a)| {
            self.elements[i + 1..]
                .iter()
                .all(|&b| g.mul(a, b) == g.mul(b, a))
        })
    }

    pub fn is_whole(&self) -> bool {
        self.order() == self.parent_order()
    }
}

/// Closure of `start` under right multiplication by `gens`.
fn closure(g: &FiniteGroup, start: &[Elem], gens: &[Elem]) -> Subgroup {
    let mut mask = vec![false; g.order()];
    let mut elements = Vec::with_capacity(start.len() * 2);
    for &e in start.iter().chain(std::iter::once(&g.identity())) {
        if !mask[e] {
            mask[e] = true;
            elements.push(e);
        }
    }
    let mut i = 0;
    while i < elements.len() {
        let x = elements[i];
        for &s in gens {
            let y = g.mul(x, s);
            if !mask[y] {
                mask[y] = true;
                elements.push(y);
            }
        }
        i += 1;
    }
    elements.sort_unstable();
    Subgroup { elements, mask }
}

/// Every subgroup of `g`, sorted by order and then lexicographically by
/// element list. Requires `g.order() ≤ 64`; see [`all_subgroups_with_cap`].
pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<Subgroup>, GroupError> {
    all_subgroups_with_cap(g, DEFAULT_SUBGROUP_CAP)
}

/// Enumerates subgroups by closing cyclic subgroups under joins with further
/// cyclic subgroups until no new subgroup appears.
pub fn all_subgroups_with_cap(g: &FiniteGroup, cap: usize) -> Result<Vec<Subgroup>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::OverflowGuard {
            order: g.order(),
            cap,
        });
    }
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    // (subgroup, generators)
    let mut found: Vec<(Subgroup, Vec<Elem>)> = Vec::new();

    let mut cyclic_gens = Vec::new();
    for x in g.elements() {
        let c = Subgroup::generated_by(g, &[x]);
        if seen.insert(c.elements.clone()) {
            cyclic_gens.push(x);
            found.push((c, if x == 0 { vec![] } else { vec![x] }));
        }
    }

    let mut next = 0;
    while next < found.len() {
        let (h, gens) = found[next].clone();
        next += 1;
        for &x in &cyclic_gens {
            if h.contains(x) {
                continue;
            }
            let mut join_gens = gens.clone();
            join_gens.push(x);
            let j = closure(g, &h.elements, &join_gens);
            if seen.insert(j.elements.clone()) {
                found.push((j, join_gens));
            }
        }
    }

    let mut subgroups: Vec<Subgroup> = found.into_iter().map(|(h, _)| h).collect();
    subgroups.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.elements.cmp(&b.elements))
    });
    Ok(subgroups)
}

/// The lexicographically least Sylow `p`-subgroup of `g`; trivial when `p`
/// does not divide the order.
pub fn sylow_subgroup(g: &FiniteGroup, p: usize) -> Result<Subgroup, GroupError> {
    sylow_subgroup_with_cap(g, p, DEFAULT_SUBGROUP_CAP)
}

pub fn sylow_subgroup_with_cap(
    g: &FiniteGroup,
    p: usize,
    cap: usize,
) -> Result<Subgroup, GroupError> {
    if !is_prime(p) {
        return Err(GroupError::UnsupportedParameter(format!(
            "{p} is not a prime"
        )));
    }
    let p_part = p_part(g.order(), p);
    if p_part == 1 {
        return Ok(Subgroup::trivial(g));
    }
    all_subgroups_with_cap(g, cap)?
        .into_iter()
        .find(|h| h.order() == p_part)
        .ok_or_else(|| {
            GroupError::NotASubgroup(format!("no subgroup of order {p_part} (Sylow violated)"))
        })
}

/// Largest power of `p` dividing `n`.
pub(crate) fn p_part(n: usize, p: usize) -> usize {
    factorize(n)
        .into_iter()
        .find(|&(q, _)| q == p)
        .map_or(1, |(q, k)| q.pow(k))
}

/// An abelian subgroup of maximum order, lexicographically least among ties.
pub fn max_abelian_subgroup(g: &FiniteGroup) -> Result<Subgroup, GroupError> {
    max_abelian_subgroup_with_cap(g, DEFAULT_SUBGROUP_CAP)
}

pub fn max_abelian_subgroup_with_cap(g: &FiniteGroup, cap: usize) -> Result<Subgroup, GroupError> {
    if g.is_abelian() {
        if g.order() > cap {
            return Err(GroupError::OverflowGuard {
                order: g.order(),
                cap,
            });
        }
        return Ok(Subgroup::whole(g));
    }
    let subgroups = all_subgroups_with_cap(g, cap)?;
    let mut best: Option<Subgroup> = None;
    for h in subgroups.into_iter().filter(|h| h.is_abelian(g)) {
        // sorted by order, so a strictly larger order replaces the best
        if best.as_ref().is_none_or(|b| h.order() > b.order()) {
            best = Some(h);
        }
    }
    Ok(best.expect("the trivial subgroup is abelian"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_named_group;

    fn group(s: &str) -> FiniteGroup {
        make_named_group(&s.parse().unwrap()).unwrap()
    }

    fn lists(hs: &[Subgroup]) -> Vec<Vec<Elem>> {
        hs.iter().map(|h| h.elements().to_vec()).collect()
    }

    #[test]
    fn cyclic4_subgroups() {
        let subs = all_subgroups(&group("cyclic:4")).unwrap();
        assert_eq!(lists(&subs), vec![vec![0], vec![0, 2], vec![0, 1, 2, 3]]);
    }

    #[test]
    fn klein_four_has_five_subgroups() {
        assert_eq!(all_subgroups(&group("elemab:2:2")).unwrap().len(), 5);
    }

    /// Independent oracle: close every subset of the group under products and
    /// keep the distinct results. Only feasible for tiny groups.
    fn subgroups_by_subset_closure(g: &FiniteGroup) -> Vec<Vec<Elem>> {
        let n = g.order();
        let mut out: HashSet<Vec<Elem>> = HashSet::new();
        for bits in 0u32..(1 << n) {
            let gens: Vec<Elem> = (0..n).filter(|i| bits >> i & 1 == 1).collect();
            let mut set: Vec<bool> = vec![false; n];
            set[0] = true;
            for &x in &gens {
                set[x] = true;
            }
            loop {
                let cur: Vec<Elem> = (0..n).filter(|&i| set[i]).collect();
                let mut changed = false;
                for &a in &cur {
                    for &b in &cur {
                        let c = g.mul(a, b);
                        if !set[c] {
                            set[c] = true;
                            changed = true;
                        }
                    }
                }
                if !changed {
                    break;
                }
            }
            out.insert((0..n).filter(|&i| set[i]).collect());
        }
        let mut v: Vec<_> = out.into_iter().collect();
        v.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        v
    }

    #[test]
    fn quaternion_subgroups_match_subset_closure() {
        let q = group("quaternion8");
        let subs = all_subgroups(&q).unwrap();
        // {1}, {±1}, {±1,±i}, {±1,±j}, {±1,±k}, Q8
        assert_eq!(
            lists(&subs),
            vec![
                vec![0],
                vec![0, 1],
                vec![0, 1, 2, 3],
                vec![0, 1, 4, 5],
                vec![0, 1, 6, 7],
                vec![0, 1, 2, 3, 4, 5, 6, 7],
            ]
        );
        assert_eq!(lists(&subs), subgroups_by_subset_closure(&q));
    }

    #[test]
    fn small_groups_match_subset_closure() {
        for s in [
            "dihedral:4",
            "symmetric:3",
            "cyclic:12",
            "elemab:2:3",
            "dihedral:5",
        ] {
            let g = group(s);
            assert_eq!(
                lists(&all_subgroups(&g).unwrap()),
                subgroups_by_subset_closure(&g),
                "{s}"
            );
        }
    }

    #[test]
    fn subgroup_cap() {
        assert!(matches!(
            all_subgroups(&group("cyclic:65")),
            Err(GroupError::OverflowGuard { order: 65, cap: 64 })
        ));
        assert_eq!(
            all_subgroups_with_cap(&group("cyclic:65"), 65)
                .unwrap()
                .len(),
            4
        );
    }

    #[test]
    fn sylow_examples() {
        let h = sylow_subgroup(&group("cyclic:12"), 2).unwrap();
        assert_eq!(h.elements(), &[0, 3, 6, 9]);
        let h = sylow_subgroup(&group("dihedral:3"), 3).unwrap();
        assert_eq!(h.elements(), &[0, 1, 2]);
        let h = sylow_subgroup(&group("cyclic:5"), 2).unwrap();
        assert_eq!(h.elements(), &[0]);
        assert!(sylow_subgroup(&group("cyclic:5"), 4).is_err());
    }

    #[test]
    fn max_abelian_examples() {
        assert_eq!(max_abelian_subgroup(&group("cyclic:6")).unwrap().order(), 6);
        let h = max_abelian_subgroup(&group("dihedral:4")).unwrap();
        assert_eq!(h.order(), 4);
        assert!(h.is_abelian(&group("dihedral:4")));
        assert_eq!(
            max_abelian_subgroup(&group("quaternion8")).unwrap().order(),
            4
        );
        // S4: the largest abelian subgroups have order 4
        assert_eq!(
            max_abelian_subgroup(&group("symmetric:4")).unwrap().order(),
            4
        );
    }

    #[test]
    fn subgroup_validation() {
        let g = group("cyclic:6");
        assert!(Subgroup::from_elements(&g, [0, 3]).is_ok());
        assert!(Subgroup::from_elements(&g, [0, 1]).is_err());
        assert!(Subgroup::from_elements(&g, [2, 4]).is_err());
        assert!(Subgroup::from_elements(&g, [0, 9]).is_err());
        assert_eq!(Subgroup::generated_by(&g, &[4]).elements(), &[0, 2, 4]);
    }
}
